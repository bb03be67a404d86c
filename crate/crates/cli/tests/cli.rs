use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("jetnorm-cli-{}-{name}", std::process::id()))
}

fn jetnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetnorm")).args(args).env_remove("JETNORM_MAX_DEGREE").output().unwrap()
}

fn run_fixture(cmd: &str, name: &str, extra: &[&str]) -> Output {
    let path = fixture(name);
    let mut args = vec![cmd, path.to_str().unwrap(), "--quiet"];
    args.extend_from_slice(extra);
    jetnorm(&args)
}

fn report(cmd: &str, name: &str, out: &str) -> (i32, String) {
    let path = scratch(out);
    let o = run_fixture(cmd, name, &["--out", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    (o.status.code().unwrap(), text)
}

#[test]
fn fixture_exit_codes() {
    let cases = [
        ("normalize-vectorfield", "vectorfield_resonant.json", 0),
        ("mc-check", "mc_sl2_zero.json", 0),
        ("mc-check", "mc_abelian_obstruction.json", 2),
        ("cohomology", "cohomology_sl2_poly.json", 0),
        ("cocycle", "cocycle_rotation.json", 0),
        ("factorize", "factorize_sl2_full_cone.json", 0),
        ("factorize", "factorize_rotation_cone.json", 2),
        ("factorize", "factorize_two_jets.json", 0),
        ("factorize", "factorize_near_degenerate.json", 2),
        ("gpe", "gpe_default.json", 0),
    ];
    for (cmd, name, code) in cases {
        let o = run_fixture(cmd, name, &[]);
        assert_eq!(o.status.code(), Some(code), "{cmd} {name}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for (cmd, name) in [("gpe", "gpe_default.json"), ("factorize", "factorize_two_jets.json"), ("cohomology", "cohomology_sl2_poly.json")] {
        let (_, a) = report(cmd, name, &format!("{name}.a"));
        let (_, b) = report(cmd, name, &format!("{name}.b"));
        assert_eq!(a, b, "{cmd} {name}");
    }
    let (_, a) = report("gpe", "gpe_default.json", "seed.a");
    let path = scratch("seed.b");
    run_fixture("gpe", "gpe_default.json", &["--seed", "12", "--out", path.to_str().unwrap()]);
    let b = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_ne!(a, b, "the seed is part of the report");
}

#[test]
fn replay_reproduces_the_normal_form() {
    let path = scratch("replay.json");
    let o = run_fixture("normalize-vectorfield", "vectorfield_resonant.json", &["--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = jetnorm(&["replay", path.to_str().unwrap(), "--quiet", "--out", scratch("replayed.json").to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let replayed = std::fs::read_to_string(scratch("replayed.json")).unwrap();
    std::fs::remove_file(scratch("replayed.json")).ok();
    assert!(replayed.contains("\"byte_identical\": true"));
}

#[test]
fn reports_without_transcript_are_not_replayable() {
    let path = scratch("mc.json");
    run_fixture("mc-check", "mc_sl2_zero.json", &["--out", path.to_str().unwrap()]);
    let o = jetnorm(&["replay", path.to_str().unwrap(), "--quiet"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("transcript"));
}

#[test]
fn malformed_inputs_exit_with_one() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{").unwrap();
    let o = jetnorm(&["mc-check", bad.to_str().unwrap(), "--quiet"]);
    assert_eq!(o.status.code(), Some(1));

    std::fs::write(&bad, r#"{"order": 2}"#).unwrap();
    let o = jetnorm(&["mc-check", bad.to_str().unwrap(), "--quiet"]);
    std::fs::remove_file(&bad).ok();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("p: missing"));

    let o = jetnorm(&["mc-check", "/nonexistent/jetnorm.json", "--quiet"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn max_degree_caps_the_order() {
    let path = fixture("vectorfield_resonant.json");
    let o = Command::new(env!("CARGO_BIN_EXE_jetnorm"))
        .args(["normalize-vectorfield", path.to_str().unwrap(), "--order", "5", "--quiet"])
        .env("JETNORM_MAX_DEGREE", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn summary_goes_to_stdout_unless_quiet() {
    let path = fixture("mc_sl2_zero.json");
    let loud = jetnorm(&["mc-check", path.to_str().unwrap()]);
    assert!(!loud.stdout.is_empty());
    let quiet = run_fixture("mc-check", "mc_sl2_zero.json", &[]);
    assert!(quiet.stdout.is_empty());
}

#[test]
fn gpe_flags_override_the_problem_file() {
    let (_, base) = report("gpe", "gpe_default.json", "flags.a");
    let path = scratch("flags.b");
    let o = run_fixture("gpe", "gpe_default.json", &["--beta", "0.5,2", "--dim", "3", "--samples", "50", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_ne!(base, text);
}
