//! Problem files, pipeline dispatch and reports for the `jetnorm` binary.
//!
//! Input and output are JSON. Rationals are strings `"p/q"`, Gaussian
//! rationals are `{"re": "p/q", "im": "r/s"}`, and a truncated series is a
//! list of terms `[[e_1, …, e_d], "coeff"]`. Reports serialize with sorted
//! keys and contain no timing, so equal inputs give equal bytes.

use std::fmt::Write as _;

use serde::Deserialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::cocycle::{admissible_lambda_basis, gram, kernel_n, orient_psd, vanishing_ideal};
use crate::cohomology::{cohomology_dim, PModule};
use crate::error::{JetError, Result};
use crate::factorize::{
    check_pe_factorization, semisimple_pipeline, spectral_factorization, Certificate, FactorizationVerdict, PipelineFlags,
};
use crate::gpe::{check_cs_qpe, gibbs_modular_check, kms_entropy_bound, metaplectic_positivity, CMat, GibbsData, MatrixRep};
use crate::jetlie::{ActionData, FormalDiffeo, JetElement};
use crate::liealg::{Eigenvalue, LieAlgebra, Spectrum, SpectrumMode};
use crate::linalg::{Mat, QMat};
use crate::lp::ConeCertificate;
use crate::normalform::{
    is_resonance_free, mc_obstruction_lift, mc_residual, normalize_twist_oned_equivariant, normalize_twist_semisimple,
    poincare_dulac, LiftOutcome,
};
use crate::rational::{format_q, parse_q, GQ, Q};
use crate::ring::{FormalVectorField, MultiIndex, TruncSeries};

pub const TOOL: &str = "jetnorm";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subcommand {
    NormalizeVectorfield,
    NormalizeTwist,
    McCheck,
    Cohomology,
    Cocycle,
    Factorize,
    Gpe,
    Replay,
}

impl Subcommand {
    pub const ALL: [Subcommand; 8] = [
        Subcommand::NormalizeVectorfield,
        Subcommand::NormalizeTwist,
        Subcommand::McCheck,
        Subcommand::Cohomology,
        Subcommand::Cocycle,
        Subcommand::Factorize,
        Subcommand::Gpe,
        Subcommand::Replay,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::NormalizeVectorfield => "normalize-vectorfield",
            Subcommand::NormalizeTwist => "normalize-twist",
            Subcommand::McCheck => "mc-check",
            Subcommand::Cohomology => "cohomology",
            Subcommand::Cocycle => "cocycle",
            Subcommand::Factorize => "factorize",
            Subcommand::Gpe => "gpe",
            Subcommand::Replay => "replay",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Subcommand::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| JetError::Parse(format!("unknown subcommand `{s}`")))
    }
}

/// Command-line overrides; `None` keeps the value from the problem file.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub order: Option<usize>,
    pub mode: Option<SpectrumMode>,
    pub tolerance: Option<f64>,
    pub seed: Option<u64>,
    /// Upper bound on the truncation order.
    pub max_degree: Option<usize>,
    /// Inverse temperatures for `gpe`.
    pub beta: Option<Vec<f64>>,
    /// Hilbert space dimension of the random `gpe` Hamiltonian.
    pub dim: Option<usize>,
    /// Sample count for `gpe`.
    pub samples: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSpec {
    Named(String),
    Brackets {
        name: Option<String>,
        dim: usize,
        /// `[i, j, [c_0, …]]` for `[e_i, e_j] = Σ c_k e_k`, `i < j`.
        brackets: Vec<(usize, usize, Vec<String>)>,
        #[serde(default)]
        compact: bool,
    },
}

pub type SeriesSpec = Vec<(Vec<u32>, String)>;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    /// Matrices of the linear fields `v_l(e_i)`; rows of rationals.
    #[serde(default)]
    pub linear: Option<Vec<Vec<Vec<String>>>>,
    /// Full fields `v(e_i)`, one series per coordinate; overrides `linear`.
    #[serde(default)]
    pub v: Option<Vec<Vec<SeriesSpec>>>,
    /// Twists `σ(e_i)`, one series per basis element of `k`.
    #[serde(default)]
    pub sigma: Option<Vec<Vec<SeriesSpec>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    /// `adjoint`, `trivial` or `poly_tensor`.
    pub kind: String,
    #[serde(default)]
    pub degree: usize,
    #[serde(default = "one")]
    pub dim: usize,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsSpec {
    #[serde(default)]
    pub simple_noncompact: bool,
    #[serde(default)]
    pub irreducible_nontrivial: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GpeSpec {
    #[serde(default = "default_betas")]
    pub beta: Vec<f64>,
    #[serde(default = "default_gibbs_dim")]
    pub dim: usize,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_levels")]
    pub levels: usize,
    #[serde(default = "default_fock")]
    pub fock_degree: usize,
    #[serde(default = "default_times")]
    pub times: Vec<f64>,
    /// Hamiltonian rows `[re, im]`; random when absent.
    #[serde(default)]
    pub hamiltonian: Option<Vec<Vec<(f64, f64)>>>,
}

fn default_betas() -> Vec<f64> {
    vec![0.5, 1.0, 2.0]
}
fn default_gibbs_dim() -> usize {
    2
}
fn default_samples() -> usize {
    1000
}
fn default_levels() -> usize {
    12
}
fn default_fock() -> usize {
    3
}
fn default_times() -> Vec<f64> {
    vec![0.0, 0.25, -0.7, 1.3]
}

impl Default for GpeSpec {
    fn default() -> Self {
        GpeSpec {
            beta: default_betas(),
            dim: default_gibbs_dim(),
            samples: default_samples(),
            levels: default_levels(),
            fock_degree: default_fock(),
            times: default_times(),
            hamiltonian: None,
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub order: Option<usize>,
    pub dim: Option<usize>,
    pub k: Option<AlgebraSpec>,
    pub p: Option<AlgebraSpec>,
    pub vector_field: Option<Vec<SeriesSpec>>,
    pub action: Option<ActionSpec>,
    pub module: Option<ModuleSpec>,
    pub cohomology_degrees: Option<Vec<usize>>,
    pub lift_degree: Option<usize>,
    /// `pe`, `spectral` or `semisimple`.
    pub factorize: Option<String>,
    pub points: Option<Vec<Vec<String>>>,
    pub bound: Option<usize>,
    pub cone: Option<Vec<Vec<String>>>,
    pub flags: Option<FlagsSpec>,
    pub gpe: Option<GpeSpec>,
    pub mode: Option<SpectrumMode>,
    pub tolerance: Option<f64>,
    pub seed: Option<u64>,
}

/// Settings after merging the file with the command line.
#[derive(Clone, Debug)]
struct Settings {
    order: usize,
    mode: SpectrumMode,
    tolerance: f64,
    seed: u64,
}

fn field_err(path: &str, e: JetError) -> JetError {
    JetError::Parse(format!("{path}: {e}"))
}

fn parse_rat(path: &str, s: &str) -> Result<Q> {
    parse_q(s).map_err(|e| field_err(path, e))
}

fn parse_vec(path: &str, xs: &[String]) -> Result<Vec<Q>> {
    xs.iter().enumerate().map(|(i, s)| parse_rat(&format!("{path}[{i}]"), s)).collect()
}

fn parse_matrix(path: &str, rows: &[Vec<String>]) -> Result<QMat> {
    let parsed: Vec<Vec<Q>> = rows.iter().enumerate().map(|(i, r)| parse_vec(&format!("{path}[{i}]"), r)).collect::<Result<_>>()?;
    let n = parsed.len();
    if parsed.iter().any(|r| r.len() != n) {
        return Err(JetError::Parse(format!("{path}: matrix must be square")));
    }
    Ok(Mat::from_rows(parsed))
}

fn parse_series(path: &str, dim: usize, order: usize, terms: &SeriesSpec) -> Result<TruncSeries> {
    let mut out = Vec::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        if e.len() != dim {
            return Err(JetError::Parse(format!("{path}[{i}]: exponent has length {}, expected {dim}", e.len())));
        }
        out.push((MultiIndex::new(e.clone()), parse_rat(&format!("{path}[{i}]"), c)?));
    }
    TruncSeries::from_terms(dim, order, out).map_err(|e| field_err(path, e))
}

fn parse_algebra(path: &str, a: &AlgebraSpec) -> Result<LieAlgebra> {
    match a {
        AlgebraSpec::Named(n) => LieAlgebra::by_name(n).map_err(|e| field_err(path, e)),
        AlgebraSpec::Brackets { name, dim, brackets, compact } => {
            let mut bs = Vec::new();
            for (idx, (i, j, c)) in brackets.iter().enumerate() {
                if *i >= *dim || *j >= *dim || c.len() != *dim {
                    return Err(JetError::Parse(format!("{path}.brackets[{idx}]: index or length out of range")));
                }
                bs.push((*i, *j, parse_vec(&format!("{path}.brackets[{idx}]"), c)?));
            }
            let alg = LieAlgebra::from_brackets(name.as_deref().unwrap_or("custom"), *dim, &bs);
            if !alg.verify_jacobi() {
                return Err(JetError::Parse(format!("{path}: brackets violate the Jacobi identity")));
            }
            let alg = alg.with_compact_tag(*compact);
            alg.validate_compact_tag().map_err(|e| field_err(path, e))?;
            Ok(alg)
        }
    }
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| JetError::Parse(format!("schema: {e}")))
    }

    fn settings(&self, opts: &RunOptions) -> Result<Settings> {
        let order = opts.order.or(self.order).unwrap_or(3);
        if let Some(cap) = opts.max_degree {
            if order > cap {
                return Err(JetError::DegreeTooLarge { requested: order, order: cap });
            }
        }
        Ok(Settings {
            order,
            mode: opts.mode.or(self.mode).unwrap_or(SpectrumMode::Exact),
            tolerance: opts.tolerance.or(self.tolerance).unwrap_or(1e-9),
            seed: opts.seed.or(self.seed).unwrap_or(0),
        })
    }

    fn algebra(&self, which: &str) -> Result<LieAlgebra> {
        let a = if which == "k" { &self.k } else { &self.p };
        let a = a.as_ref().ok_or_else(|| JetError::Parse(format!("{which}: missing")))?;
        parse_algebra(which, a)
    }

    fn vector_field(&self, order: usize) -> Result<FormalVectorField> {
        let comps = self.vector_field.as_ref().ok_or_else(|| JetError::Parse("vector_field: missing".into()))?;
        let d = self.dim.unwrap_or(comps.len());
        if comps.len() != d {
            return Err(JetError::Parse(format!("vector_field: {} components, expected {d}", comps.len())));
        }
        let series = comps.iter().enumerate().map(|(i, s)| parse_series(&format!("vector_field[{i}]"), d, order, s)).collect::<Result<_>>()?;
        FormalVectorField::new(series).map_err(|e| field_err("vector_field", e))
    }

    fn action(&self, order: usize) -> Result<ActionData> {
        let p = self.algebra("p")?;
        let k = self.algebra("k")?;
        let spec = self.action.clone().unwrap_or_default();
        let v: Vec<FormalVectorField> = if let Some(vs) = &spec.v {
            let d = self.dim.or_else(|| vs.first().map(Vec::len)).unwrap_or(0);
            vs.iter()
                .enumerate()
                .map(|(i, comps)| {
                    let path = format!("action.v[{i}]");
                    if comps.len() != d {
                        return Err(JetError::Parse(format!("{path}: {} components, expected {d}", comps.len())));
                    }
                    let s = comps.iter().enumerate().map(|(j, c)| parse_series(&format!("{path}[{j}]"), d, order, c)).collect::<Result<_>>()?;
                    FormalVectorField::new(s).map_err(|e| field_err(&path, e))
                })
                .collect::<Result<_>>()?
        } else if let Some(ms) = &spec.linear {
            ms.iter()
                .enumerate()
                .map(|(i, m)| Ok(FormalVectorField::linear(&parse_matrix(&format!("action.linear[{i}]"), m)?, order)))
                .collect::<Result<_>>()?
        } else {
            return Err(JetError::Parse("action: needs `linear` or `v`".into()));
        };
        if v.len() != p.dim() {
            return Err(JetError::Parse(format!("action: {} fields, expected dim p = {}", v.len(), p.dim())));
        }
        let d = v.first().map_or(0, FormalVectorField::dim);
        let sigma: Vec<JetElement> = match &spec.sigma {
            Some(ss) => ss
                .iter()
                .enumerate()
                .map(|(i, comps)| {
                    let path = format!("action.sigma[{i}]");
                    if comps.len() != k.dim() {
                        return Err(JetError::Parse(format!("{path}: {} components, expected dim k = {}", comps.len(), k.dim())));
                    }
                    let s = comps.iter().enumerate().map(|(j, c)| parse_series(&format!("{path}[{j}]"), d, order, c)).collect::<Result<_>>()?;
                    JetElement::new(s).map_err(|e| field_err(&path, e))
                })
                .collect::<Result<_>>()?,
            None => vec![JetElement::zero(d, order, k.dim()); p.dim()],
        };
        if sigma.len() != p.dim() {
            return Err(JetError::Parse(format!("action.sigma: {} twists, expected {}", sigma.len(), p.dim())));
        }
        let a = ActionData::new(p, k, v, sigma).map_err(|e| field_err("action", e))?;
        a.check_anti_hom().map_err(|e| field_err("action", e))?;
        Ok(a)
    }

    fn rational_list(&self, path: &str, xs: &Option<Vec<Vec<String>>>) -> Result<Vec<Vec<Q>>> {
        let xs = xs.as_ref().ok_or_else(|| JetError::Parse(format!("{path}: missing")))?;
        xs.iter().enumerate().map(|(i, v)| parse_vec(&format!("{path}[{i}]"), v)).collect()
    }
}

// ---- JSON encoders -------------------------------------------------------

pub fn q_json(x: &Q) -> Value {
    Value::String(format_q(x))
}

pub fn gq_json(z: &GQ) -> Value {
    json!({"re": format_q(&z.re), "im": format_q(&z.im)})
}

pub fn vec_json(xs: &[Q]) -> Value {
    Value::Array(xs.iter().map(q_json).collect())
}

pub fn matrix_json(m: &QMat) -> Value {
    Value::Array((0..m.rows()).map(|i| vec_json(&m.row(i))).collect())
}

pub fn series_json(f: &TruncSeries) -> Value {
    Value::Array(f.terms().map(|(m, c)| json!([m.exps(), format_q(c)])).collect())
}

pub fn field_json(v: &FormalVectorField) -> Value {
    Value::Array(v.comps().iter().map(series_json).collect())
}

pub fn jet_json(x: &JetElement) -> Value {
    Value::Array(x.comps().iter().map(series_json).collect())
}

fn eigen_json(e: &Eigenvalue) -> Value {
    match e {
        Eigenvalue::Exact(z) => json!({"exact": gq_json(z)}),
        Eigenvalue::Approx { center, radius, factor } => json!({
            "center": [center.re, center.im],
            "radius": radius,
            "factor": factor.coeffs().iter().map(format_q).collect::<Vec<_>>(),
        }),
    }
}

fn spectrum_json(s: &Spectrum) -> Value {
    Value::Array(s.entries().iter().map(|(e, m)| json!({"value": eigen_json(e), "multiplicity": m})).collect())
}

fn certificate_json(c: &Certificate) -> Value {
    match c {
        Certificate::Rank { operator, rank, dim } => json!({"kind": "rank", "operator": operator, "rank": rank, "dim": dim}),
        Certificate::Spectrum { name, spectrum } => json!({"kind": "spectrum", "name": name, "spectrum": spectrum_json(spectrum)}),
        Certificate::Disjointness { name, verdict } => json!({"kind": "disjointness", "name": name, "verdict": verdict}),
        Certificate::Cone(ConeCertificate::Pointed { functional }) => json!({"kind": "cone", "pointed": true, "functional": vec_json(functional)}),
        Certificate::Cone(ConeCertificate::ContainsLine { multipliers }) => json!({"kind": "cone", "pointed": false, "multipliers": vec_json(multipliers)}),
        Certificate::Subspace { name, basis } => json!({"kind": "subspace", "name": name, "basis": basis.iter().map(|b| vec_json(b)).collect::<Vec<_>>()}),
    }
}

fn verdict_json(v: &FactorizationVerdict) -> Value {
    json!({
        "theorem": v.theorem,
        "hypotheses": v.hypotheses,
        "conclusion": v.conclusion.label(),
        "center_dim": match v.conclusion { crate::factorize::Conclusion::CenterJets { center_dim } => Some(center_dim), _ => None },
        "kernel_ideal": v.kernel_ideal.as_ref().map(|b| b.iter().map(|x| vec_json(x)).collect::<Vec<_>>()),
        "certificates": v.certificates.iter().map(certificate_json).collect::<Vec<_>>(),
    })
}

// ---- JSON decoders for transcripts ---------------------------------------

fn json_series(path: &str, dim: usize, order: usize, v: &Value) -> Result<TruncSeries> {
    let spec: SeriesSpec = serde_json::from_value(v.clone()).map_err(|e| JetError::Parse(format!("{path}: {e}")))?;
    parse_series(path, dim, order, &spec)
}

fn json_comps(path: &str, dim: usize, order: usize, v: &Value) -> Result<Vec<TruncSeries>> {
    let arr = v.as_array().ok_or_else(|| JetError::Parse(format!("{path}: expected a list")))?;
    arr.iter().enumerate().map(|(i, s)| json_series(&format!("{path}[{i}]"), dim, order, s)).collect()
}

fn get<'a>(v: &'a Value, path: &str, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| JetError::Parse(format!("{path}.{key}: missing")))
}

// ---- Reports --------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Conclusive,
    NoConclusion,
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Conclusive => 0,
            Outcome::NoConclusion => 2,
            Outcome::Error => 1,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Outcome::Conclusive => "ok",
            Outcome::NoConclusion => "no-conclusion",
            Outcome::Error => "error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub subcommand: Subcommand,
    pub outcome: Outcome,
    pub value: Value,
    pub summary: Vec<String>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.value).expect("report values serialize");
        s.push('\n');
        s
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}: {}", TOOL, self.subcommand.name(), self.outcome.label());
        for line in &self.summary {
            let _ = writeln!(out, "  {line}");
        }
        out
    }
}

pub fn input_hash(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

struct Body {
    outcome: Outcome,
    result: Value,
    transcript: Option<Value>,
    summary: Vec<String>,
}

fn envelope(cmd: Subcommand, text: &str, set: Option<&Settings>, input: Value, body: Body) -> Report {
    let mut m = Map::new();
    m.insert("tool".into(), json!(TOOL));
    m.insert("version".into(), json!(VERSION));
    m.insert("subcommand".into(), json!(cmd.name()));
    m.insert("input_hash".into(), json!(input_hash(text)));
    m.insert("status".into(), json!(body.outcome.label()));
    m.insert("exit_code".into(), json!(body.outcome.exit_code()));
    if let Some(s) = set {
        m.insert("order".into(), json!(s.order));
        m.insert("mode".into(), json!(s.mode));
        m.insert("tolerance".into(), json!(s.tolerance));
        m.insert("seed".into(), json!(s.seed));
    }
    m.insert("input".into(), input);
    m.insert("result".into(), body.result);
    if let Some(t) = body.transcript {
        m.insert("transcript".into(), t);
    }
    Report { subcommand: cmd, outcome: body.outcome, value: Value::Object(m), summary: body.summary }
}

/// Runs one pipeline on the text of a problem file (or, for `replay`, a report).
pub fn run(cmd: Subcommand, text: &str, opts: &RunOptions) -> Result<Report> {
    let input: Value = serde_json::from_str(text).map_err(|e| JetError::Parse(format!("json: {e}")))?;
    if cmd == Subcommand::Replay {
        let body = replay(&input)?;
        return Ok(envelope(cmd, text, None, Value::Null, body));
    }
    let mut spec = ProblemSpec::from_json(text)?;
    let set = spec.settings(opts)?;
    if cmd == Subcommand::Gpe {
        let g = spec.gpe.get_or_insert_with(GpeSpec::default);
        if let Some(b) = &opts.beta {
            g.beta = b.clone();
        }
        g.dim = opts.dim.unwrap_or(g.dim);
        g.samples = opts.samples.unwrap_or(g.samples);
    }
    let body = match cmd {
        Subcommand::NormalizeVectorfield => run_vectorfield(&spec, &set)?,
        Subcommand::NormalizeTwist => run_twist(&spec, &set)?,
        Subcommand::McCheck => run_mc(&spec, &set)?,
        Subcommand::Cohomology => run_cohomology(&spec, &set)?,
        Subcommand::Cocycle => run_cocycle(&spec, &set)?,
        Subcommand::Factorize => run_factorize(&spec, &set)?,
        Subcommand::Gpe => run_gpe(&spec, &set)?,
        Subcommand::Replay => unreachable!("handled above"),
    };
    Ok(envelope(cmd, text, Some(&set), input, body))
}

fn run_vectorfield(spec: &ProblemSpec, set: &Settings) -> Result<Body> {
    let v = spec.vector_field(set.order)?;
    let pd = poincare_dulac(&v)?;
    let res = is_resonance_free(&v.linear_part(), set.order);
    let replayed = pd.replay()? == pd.normal_form;
    let linearized = pd.normal_form == v.linear_field();
    let steps: Vec<Value> = pd
        .steps
        .iter()
        .map(|s| json!({"degree": s.degree, "phi": field_json(&s.phi), "removed": vec_json(&s.removed), "kept": vec_json(&s.kept)}))
        .collect();
    let result = json!({
        "normal_form": field_json(&pd.normal_form),
        "semisimple_part": matrix_json(&pd.semisimple_part),
        "resonance": res,
        "linearized": linearized,
        "replay_matches": replayed,
    });
    let summary = vec![
        format!("{} step(s), resonance free: {}", pd.steps.len(), res.resonance_free),
        format!("normal form is linear: {linearized}; replay matches: {replayed}"),
    ];
    Ok(Body { outcome: Outcome::Conclusive, result, transcript: Some(Value::Array(steps)), summary })
}

fn steps_json(steps: &[crate::normalform::GaugeStep]) -> Value {
    Value::Array(steps.iter().map(|s| json!({"degree": s.degree, "xi": jet_json(&s.xi)})).collect())
}

fn run_twist(spec: &ProblemSpec, set: &Settings) -> Result<Body> {
    let a = spec.action(set.order)?;
    if a.p.is_semisimple() {
        let nf = match normalize_twist_semisimple(&a) {
            Ok(nf) => nf,
            Err(e @ (JetError::NonzeroResidual | JetError::Precondition(_))) => return Ok(hypothesis_failure(&e)),
            Err(e) => return Err(e),
        };
        let result = json!({
            "method": "semisimple",
            "sigma": nf.output.sigma.iter().map(jet_json).collect::<Vec<_>>(),
            "sigma0": nf.sigma0.iter().map(|s| vec_json(s)).collect::<Vec<_>>(),
            "gauge": jet_json(&nf.gauge),
            "constant": crate::normalform::twists_are_constant(&nf.output),
        });
        let summary = vec![format!("{} gauge step(s); σ0 = {:?}", nf.steps.len(), nf.sigma0.iter().map(|s| s.iter().map(format_q).collect::<Vec<_>>()).collect::<Vec<_>>())];
        return Ok(Body { outcome: Outcome::Conclusive, result, transcript: Some(steps_json(&nf.steps)), summary });
    }
    if a.p.dim() == 1 {
        let nf = match normalize_twist_oned_equivariant(&a) {
            Ok(nf) => nf,
            Err(e @ (JetError::NotSemisimpleLinearPart | JetError::ResonantDegree { .. })) => return Ok(hypothesis_failure(&e)),
            Err(e) => return Err(e),
        };
        let result = json!({
            "method": "one-dimensional",
            "sigma": nf.output.sigma.iter().map(jet_json).collect::<Vec<_>>(),
            "gauge": jet_json(&nf.gauge),
        });
        let summary = vec![format!("{} gauge step(s)", nf.steps.len())];
        return Ok(Body { outcome: Outcome::Conclusive, result, transcript: Some(steps_json(&nf.steps)), summary });
    }
    Ok(hypothesis_failure(&JetError::NotSemisimple))
}

fn hypothesis_failure(e: &JetError) -> Body {
    Body {
        outcome: Outcome::NoConclusion,
        result: json!({"hypothesis_failure": e.to_string()}),
        transcript: None,
        summary: vec![format!("hypothesis failed: {e}")],
    }
}

fn run_mc(spec: &ProblemSpec, set: &Settings) -> Result<Body> {
    let a = spec.action(set.order)?;
    let r = mc_residual(&a)?;
    let zero = r.is_zero();
    let residual: Vec<Value> = r.values.iter().map(jet_json).collect();
    let mut result = json!({"residual_zero": zero, "valuation": r.valuation(), "residual": residual});
    let mut summary = vec![format!("Maurer–Cartan residual zero: {zero}")];
    let mut outcome = if zero { Outcome::Conclusive } else { Outcome::NoConclusion };
    if let Some(deg) = spec.lift_degree {
        let lift = match mc_obstruction_lift(&a, deg)? {
            LiftOutcome::Lifted { degree, eta, .. } => {
                summary.push(format!("degree {degree} lifted"));
                outcome = Outcome::Conclusive;
                json!({"lifted": true, "degree": degree, "eta": eta.iter().map(jet_json).collect::<Vec<_>>()})
            }
            LiftOutcome::Obstruction { degree, cocycle } => {
                summary.push(format!("obstruction at degree {degree}"));
                outcome = Outcome::NoConclusion;
                json!({"lifted": false, "degree": degree, "cocycle": vec_json(&cocycle)})
            }
        };
        result["lift"] = lift;
    }
    Ok(Body { outcome, result, transcript: None, summary })
}

fn run_cohomology(spec: &ProblemSpec, set: &Settings) -> Result<Body> {
    let m = spec.module.as_ref().ok_or_else(|| JetError::Parse("module: missing".into()))?;
    let module = match m.kind.as_str() {
        "adjoint" => PModule::adjoint(spec.algebra("p")?),
        "trivial" => PModule::trivial(spec.algebra("p")?, m.dim),
        "poly_tensor" => {
            let a = spec.action(set.order)?;
            PModule::poly_tensor(&a.p, a.v_lin(), m.degree, &a.k, a.sigma0())?
        }
        other => return Err(JetError::Parse(format!("module.kind: unknown `{other}`"))),
    };
    module.check_rep()?;
    let pdim = module.algebra().dim();
    let degrees = spec.cohomology_degrees.clone().unwrap_or_else(|| (0..=pdim.min(3)).collect());
    let dims: Vec<Value> = degrees.iter().map(|&k| json!({"degree": k, "dim": cohomology_dim(&module, k)})).collect();
    let summary = vec![format!("module dim {}; H^k dims {:?}", module.dim(), dims.iter().filter_map(|d| d["dim"].as_u64()).collect::<Vec<_>>())];
    Ok(Body { outcome: Outcome::Conclusive, result: json!({"module_dim": module.dim(), "cohomology": dims}), transcript: None, summary })
}

fn run_cocycle(spec: &ProblemSpec, set: &Settings) -> Result<Body> {
    let fields: Vec<FormalVectorField> = if spec.action.is_some() {
        spec.action(set.order)?.v
    } else {
        vec![spec.vector_field(set.order)?]
    };
    let d = fields[0].dim();
    let basis = admissible_lambda_basis(d, set.order, &fields)?;
    let mut entries = Vec::new();
    for l in orient_psd(basis.clone(), &fields[0])? {
        let g = gram(&l, &fields[0])?;
        let mut e = json!({
            "lambda": vec_json(&l.coeffs),
            "gram": matrix_json(&g.matrix),
            "inertia": [g.inertia.positive, g.inertia.negative, g.inertia.zero],
        });
        if g.inertia.is_psd() {
            e["kernel"] = Value::Array(kernel_n(&l, &fields[0])?.iter().map(series_json).collect());
            e["vanishing_ideal"] = Value::Array(vanishing_ideal(&l, &fields[0])?.iter().map(|x| vec_json(x)).collect());
        }
        entries.push(e);
    }
    let summary = vec![format!("admissible functionals: {}", basis.len())];
    Ok(Body { outcome: Outcome::Conclusive, result: json!({"dimension": basis.len(), "functionals": entries}), transcript: None, summary })
}

fn run_factorize(spec: &ProblemSpec, set: &Settings) -> Result<Body> {
    let a = spec.action(set.order)?;
    let which = spec.factorize.as_deref().unwrap_or("spectral");
    let verdict = match which {
        "pe" => {
            let pts = spec.rational_list("points", &spec.points)?;
            let p = pts.first().ok_or_else(|| JetError::Parse("points: empty".into()))?;
            check_pe_factorization(&a, p, set.mode, set.tolerance)?
        }
        "spectral" => {
            let pts = spec.rational_list("points", &spec.points)?;
            spectral_factorization(&a, &pts, spec.bound.unwrap_or(set.order.max(1)), set.mode, set.tolerance)?
        }
        "semisimple" => {
            let cone = spec.rational_list("cone", &spec.cone)?;
            let f = spec.flags.clone().unwrap_or_default();
            let flags = PipelineFlags { simple_noncompact: f.simple_noncompact, irreducible_nontrivial: f.irreducible_nontrivial };
            semisimple_pipeline(&a, &cone, flags, set.mode, set.tolerance)?
        }
        other => return Err(JetError::Parse(format!("factorize: unknown pipeline `{other}`"))),
    };
    let outcome = if verdict.conclusion.is_conclusive() { Outcome::Conclusive } else { Outcome::NoConclusion };
    let summary = vec![format!("{}: {}", verdict.theorem, verdict.conclusion.label())];
    Ok(Body { outcome, result: verdict_json(&verdict), transcript: None, summary })
}

fn random_hamiltonian(dim: usize, seed: u64) -> CMat {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let m = CMat::from_fn(dim, dim, |_, _| num::complex::Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    (&m + m.adjoint()) * num::complex::Complex64::new(0.5, 0.0)
}

fn run_gpe(spec: &ProblemSpec, set: &Settings) -> Result<Body> {
    let g = spec.gpe.clone().unwrap_or_default();
    let osc = MatrixRep::oscillator(g.levels)?;
    let cs = check_cs_qpe(&osc, &[1.0, 0.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0], g.samples, set.seed)?;
    let h = match &g.hamiltonian {
        Some(rows) => CMat::from_fn(rows.len(), rows.len(), |i, j| num::complex::Complex64::new(rows[i][j].0, rows[i][j].1)),
        None => random_hamiltonian(g.dim, set.seed),
    };
    let mut gibbs = Vec::new();
    let mut kms = Vec::new();
    let mut ok = cs.holds;
    for &beta in &g.beta {
        let state = GibbsData::new(h.clone(), beta)?;
        let m = gibbs_modular_check(&state, &g.times, set.seed)?;
        let k = kms_entropy_bound(&state, g.samples, set.seed)?;
        ok &= m.passed && k.holds;
        gibbs.push(serde_json::to_value(m).expect("serializable"));
        kms.push(serde_json::to_value(k).expect("serializable"));
    }
    let meta = metaplectic_positivity(g.fock_degree, g.samples.min(1000), set.seed)?;
    ok &= meta.psd;
    let summary = vec![
        format!("cs-qpe min slack {:.3e}", cs.min_slack),
        format!("metaplectic λ_min {:.3e}", meta.min_eigenvalue),
        format!("all checks hold: {ok}"),
    ];
    let result = json!({"cs_qpe": cs, "gibbs": gibbs, "kms": kms, "metaplectic": meta, "all_hold": ok});
    Ok(Body { outcome: if ok { Outcome::Conclusive } else { Outcome::NoConclusion }, result, transcript: None, summary })
}

/// Re-applies a recorded transcript to the embedded input with the plain
/// group actions and compares the serialized outputs.
fn replay(report: &Value) -> Result<Body> {
    let sub = get(report, "report", "subcommand")?.as_str().unwrap_or_default();
    let input = get(report, "report", "input")?;
    let order = get(report, "report", "order")?.as_u64().ok_or_else(|| JetError::Parse("report.order: not an integer".into()))? as usize;
    let spec: ProblemSpec = serde_json::from_value(input.clone()).map_err(|e| JetError::Parse(format!("report.input: {e}")))?;
    let transcript = get(report, "report", "transcript")?.as_array().ok_or_else(|| JetError::Parse("report.transcript: expected a list".into()))?;
    let result = get(report, "report", "result")?;
    let (reproduced, expected) = match sub {
        "normalize-vectorfield" => {
            let v = spec.vector_field(order)?;
            let d = v.dim();
            let mut h = FormalDiffeo::identity(d, order);
            for (i, s) in transcript.iter().enumerate() {
                let path = format!("transcript[{i}]");
                let phi = FormalVectorField::from_comps(json_comps(&format!("{path}.phi"), d, order, get(s, &path, "phi")?)?)?;
                h = FormalDiffeo::near_identity(&phi).compose(&h)?;
            }
            (field_json(&h.act_field(&v)?), get(result, "result", "normal_form")?.clone())
        }
        "normalize-twist" => {
            let mut a = spec.action(order)?;
            let (d, kd) = (a.dim(), a.k.dim());
            for (i, s) in transcript.iter().enumerate() {
                let path = format!("transcript[{i}]");
                let xi = JetElement::new(json_comps(&format!("{path}.xi"), d, order, get(s, &path, "xi")?)?)?;
                debug_assert_eq!(xi.kdim(), kd);
                a = a.gauge(&xi)?;
            }
            (Value::Array(a.sigma.iter().map(jet_json).collect()), get(result, "result", "sigma")?.clone())
        }
        other => return Err(JetError::Parse(format!("report.subcommand: `{other}` has no transcript"))),
    };
    let a = serde_json::to_string(&reproduced).expect("serializable");
    let b = serde_json::to_string(&expected).expect("serializable");
    let identical = a == b;
    Ok(Body {
        outcome: if identical { Outcome::Conclusive } else { Outcome::Error },
        result: json!({"replayed": sub, "steps": transcript.len(), "byte_identical": identical, "output": reproduced}),
        transcript: None,
        summary: vec![format!("replayed {} step(s) of {sub}: byte-identical {identical}", transcript.len())],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MC_ZERO: &str = r#"{"order": 2, "p": "sl2R", "k": "su2",
        "action": {"linear": [[["1","0"],["0","-1"]], [["0","1"],["0","0"]], [["0","0"],["1","0"]]]}}"#;

    #[test]
    fn mc_check_on_zero_twist() {
        let r = run(Subcommand::McCheck, MC_ZERO, &RunOptions::default()).unwrap();
        assert_eq!(r.exit_code(), 0);
        assert_eq!(r.value["result"]["residual_zero"], json!(true));
    }

    #[test]
    fn degree_cap_is_enforced() {
        let opts = RunOptions { max_degree: Some(1), ..Default::default() };
        assert!(matches!(run(Subcommand::McCheck, MC_ZERO, &opts), Err(JetError::DegreeTooLarge { .. })));
    }

    #[test]
    fn schema_errors_name_the_field() {
        let bad = r#"{"order": 2, "p": "sl2R", "k": "su2", "action": {"linear": [[["x","0"],["0","1"]]]}}"#;
        let e = run(Subcommand::McCheck, bad, &RunOptions::default()).unwrap_err();
        assert!(e.to_string().contains("action.linear[0][0][0]"), "{e}");
        let unknown = r#"{"order": 2, "bogus": 1}"#;
        assert!(run(Subcommand::McCheck, unknown, &RunOptions::default()).unwrap_err().to_string().contains("bogus"));
    }

    #[test]
    fn vectorfield_report_replays() {
        let text = r#"{"order": 3, "vector_field": [[[[1,0],"1"],[[0,2],"1"]], [[[0,1],"2"]]]}"#;
        let r = run(Subcommand::NormalizeVectorfield, text, &RunOptions::default()).unwrap();
        let again = run(Subcommand::NormalizeVectorfield, text, &RunOptions::default()).unwrap();
        assert_eq!(r.to_json(), again.to_json());
        let rep = run(Subcommand::Replay, &r.to_json(), &RunOptions::default()).unwrap();
        assert_eq!(rep.value["result"]["byte_identical"], json!(true));
    }
}
