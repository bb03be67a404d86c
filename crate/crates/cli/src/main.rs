use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use jetnorm::cli::{run, RunOptions, Subcommand};
use jetnorm::liealg::SpectrumMode;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Command {
    NormalizeVectorfield,
    NormalizeTwist,
    McCheck,
    Cohomology,
    Cocycle,
    Factorize,
    Gpe,
    Replay,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exact,
    Numeric,
}

/// Normal forms of formal vector fields and vertical twists on jet Lie algebras.
#[derive(Debug, Parser)]
#[command(name = "jetnorm", version)]
struct Args {
    command: Command,
    /// Problem file (JSON); for `replay`, a report written by an earlier run.
    spec: PathBuf,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Suppress the human-readable summary.
    #[arg(long)]
    quiet: bool,
    #[arg(long, env = "JETNORM_MAX_DEGREE", hide_env_values = true)]
    max_degree: Option<usize>,
    /// Inverse temperatures for `gpe`, comma separated.
    #[arg(long, value_delimiter = ',')]
    beta: Option<Vec<f64>>,
    /// Hamiltonian dimension for `gpe`.
    #[arg(long)]
    dim: Option<usize>,
    /// Sample count for `gpe`.
    #[arg(long)]
    samples: Option<usize>,
}

fn subcommand(c: Command) -> Subcommand {
    match c {
        Command::NormalizeVectorfield => Subcommand::NormalizeVectorfield,
        Command::NormalizeTwist => Subcommand::NormalizeTwist,
        Command::McCheck => Subcommand::McCheck,
        Command::Cohomology => Subcommand::Cohomology,
        Command::Cocycle => Subcommand::Cocycle,
        Command::Factorize => Subcommand::Factorize,
        Command::Gpe => Subcommand::Gpe,
        Command::Replay => Subcommand::Replay,
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.spec) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("jetnorm: cannot read {}: {e}", args.spec.display());
            return ExitCode::from(1);
        }
    };
    let opts = RunOptions {
        order: args.order,
        mode: args.mode.map(|m| match m {
            Mode::Exact => SpectrumMode::Exact,
            Mode::Numeric => SpectrumMode::Numeric,
        }),
        tolerance: args.tolerance,
        seed: args.seed,
        max_degree: args.max_degree,
        beta: args.beta,
        dim: args.dim,
        samples: args.samples,
    };
    let start = Instant::now();
    let report = match run(subcommand(args.command), &text, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("jetnorm: {e}");
            return ExitCode::from(1);
        }
    };
    let json = report.to_json();
    if let Some(path) = &args.out {
        if let Err(e) = std::fs::write(path, &json) {
            eprintln!("jetnorm: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    if !args.quiet {
        print!("{}", report.human());
        println!("  elapsed {:.3} s", start.elapsed().as_secs_f64());
        if args.out.is_none() {
            print!("{json}");
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
