//! Verdict engines for factorization: spectra and semigroups `Σ_p`, center
//! subspaces `V_c`, kernel ideals, cone pointedness and the pipeline for a
//! semisimple `p`.
//!
//! Every verdict lists its hypotheses with a status and carries the data a
//! reader needs to re-check it: ranks, subspace bases, LP multipliers and
//! eigenvalue enclosures.
//!
//! `V_c(𝔠) = ∩_{p∈𝔠} V_c(p)` is evaluated on the supplied sample points.
//! Since a finite sample can only enlarge the intersection, a conclusion
//! drawn from `V_c(sample) = {0}` remains valid for the whole cone.

use num::{One, Zero};
use serde::Serialize;

use crate::cocycle::{e_subspace_linear, ideal_basis};
use crate::cohomology::kron;
use crate::error::{JetError, Result};
use crate::jetlie::ActionData;
use crate::liealg::{axis_split, disjointness, lin_comb, spectrum, Eigenvalue, Spectrum, SpectrumMode, Verdict3};
use crate::linalg::{annihilator, span_basis, span_contains, span_intersection, span_rank, Mat, QMat};
use crate::lp::{cone_pointed, ConeCertificate};
use crate::normalform::{mc_residual, normalize_twist_semisimple};
use crate::poly::charpoly;
use crate::rational::Q;
use crate::ring::{lie_derivative_matrix_on_degree, monomials_of_degree, monomials_up_to, TruncSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Failed,
    Undecided,
    /// Taken from the caller; not machine-checked.
    Asserted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Hypothesis {
    fn new(name: &str, status: Status, detail: impl Into<String>) -> Self {
        Hypothesis { name: name.into(), status, detail: detail.into() }
    }

    fn check(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        Hypothesis::new(name, if ok { Status::Verified } else { Status::Failed }, detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conclusion {
    TwoJets,
    /// Factors through `ℝ⟦V_c*⟧ ⊗ k` with `dim V_c = center_dim`.
    CenterJets { center_dim: usize },
    FiberOnly,
    NoConclusion,
    Undecided,
}

impl Conclusion {
    pub fn label(&self) -> &'static str {
        match self {
            Conclusion::TwoJets => "2-jets",
            Conclusion::CenterJets { .. } => "ℝ⟦V_c*⟧⊗k",
            Conclusion::FiberOnly => "k",
            Conclusion::NoConclusion => "no conclusion",
            Conclusion::Undecided => "undecided",
        }
    }

    pub fn is_conclusive(&self) -> bool {
        matches!(self, Conclusion::TwoJets | Conclusion::CenterJets { .. } | Conclusion::FiberOnly)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    Rank { operator: String, rank: usize, dim: usize },
    Spectrum { name: String, spectrum: Spectrum },
    Disjointness { name: String, verdict: Verdict3 },
    Cone(ConeCertificate),
    Subspace { name: String, basis: Vec<Vec<Q>> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationVerdict {
    pub theorem: String,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion: Conclusion,
    /// Basis of the scalar part of the kernel ideal (dense on `R_N` or on
    /// `P²(V)⊗k`, depending on the theorem).
    pub kernel_ideal: Option<Vec<Vec<Q>>>,
    pub certificates: Vec<Certificate>,
}

fn spectrum_values(s: &Spectrum) -> Vec<Eigenvalue> {
    s.entries().iter().map(|(e, _)| e.clone()).collect()
}

fn add_eigen(a: &Eigenvalue, b: &Eigenvalue) -> Eigenvalue {
    match (a, b) {
        (Eigenvalue::Exact(x), Eigenvalue::Exact(y)) => Eigenvalue::Exact(x + y),
        _ => Eigenvalue::Approx {
            center: a.approx() + b.approx(),
            radius: a.radius() + b.radius(),
            factor: crate::poly::Poly::zero(),
        },
    }
}

/// All sums of `1..=bound` eigenvalues with repetition; exact sums are deduplicated.
pub fn semigroup_sigma(spec: &Spectrum, bound: usize) -> Result<Vec<Eigenvalue>> {
    if bound == 0 {
        return Err(JetError::Precondition("semigroup bound must be at least 1".into()));
    }
    let values = spectrum_values(spec);
    let mut out: Vec<Eigenvalue> = Vec::new();
    let push = |e: Eigenvalue, out: &mut Vec<Eigenvalue>| {
        if !(e.is_exact() && out.contains(&e)) {
            out.push(e);
        }
    };
    // Multisets as nondecreasing index sequences, grown one element at a time.
    let mut layer: Vec<(usize, Eigenvalue)> = values.iter().cloned().enumerate().collect();
    for _ in 1..=bound {
        for (_, e) in &layer {
            push(e.clone(), &mut out);
        }
        let mut next = Vec::new();
        for (last, e) in &layer {
            for (j, v) in values.iter().enumerate().skip(*last) {
                next.push((j, add_eigen(e, v)));
            }
        }
        layer = next;
    }
    Ok(out)
}

/// `v_l(p)` and `σ0(p)` at coordinates `p`.
fn linear_data(a: &ActionData, p: &[Q]) -> Result<(QMat, Vec<Q>)> {
    if p.len() != a.p.dim() {
        return Err(JetError::DimensionMismatch { expected: a.p.dim(), found: p.len() });
    }
    let d = a.dim();
    let mut vl = Mat::zeros(d, d);
    for (c, m) in p.iter().zip(a.v_lin()) {
        if !c.is_zero() {
            vl = &vl + &m.scale(c);
        }
    }
    Ok((vl, lin_comb(p, a.sigma0(), a.k.dim())))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport {
    pub point: Vec<Q>,
    pub spec_v: Spectrum,
    pub spec_ad: Spectrum,
    pub sigma_p: Vec<Eigenvalue>,
    /// `Spec(ad σ0(p))` against `Spec(v_l(p))`.
    pub pe_verdict: Verdict3,
    /// `Spec(ad σ0(p))` against `Σ_p`.
    pub semigroup_verdict: Verdict3,
    pub exact: bool,
}

pub fn spectral_report(a: &ActionData, p: &[Q], bound: usize, mode: SpectrumMode, tol: f64) -> Result<SpectralReport> {
    let (vl, s0) = linear_data(a, p)?;
    let spec_v = spectrum(&vl, mode, tol)?;
    let spec_ad = spectrum(&a.k.ad_matrix(&s0), mode, tol)?;
    let sigma_p = semigroup_sigma(&spec_v, bound)?;
    let ad = spectrum_values(&spec_ad);
    let pe_verdict = disjointness(&ad, &spectrum_values(&spec_v), tol);
    let semigroup_verdict = disjointness(&ad, &sigma_p, tol);
    let exact = spec_v.is_exact() && spec_ad.is_exact();
    Ok(SpectralReport { point: p.to_vec(), spec_v, spec_ad, sigma_p, pe_verdict, semigroup_verdict, exact })
}

/// Matrix of `−L_{v_l(p)} ⊗ 1 + 1 ⊗ ad σ0(p)` on `Pⁿ(V) ⊗ k`.
pub fn linear_operator_on_degree(a: &ActionData, p: &[Q], n: usize) -> Result<QMat> {
    let (vl, s0) = linear_data(a, p)?;
    let pdim = monomials_of_degree(a.dim(), n).len();
    let l = lie_derivative_matrix_on_degree(&vl, n);
    Ok(&kron(&(-&l), &Mat::identity(a.k.dim())) + &kron(&Mat::identity(pdim), &a.k.ad_matrix(&s0)))
}

/// Factorization through 2-jets when `Spec(ad σ0(p))` misses `Spec(v_l(p))`.
pub fn check_pe_factorization(a: &ActionData, p: &[Q], mode: SpectrumMode, tol: f64) -> Result<FactorizationVerdict> {
    let rep = spectral_report(a, p, 1, mode, tol)?;
    let hyp = match rep.pe_verdict {
        Verdict3::Disjoint => Hypothesis::new("spectra_disjoint", Status::Verified, "Spec(ad σ0(p)) ∩ Spec(v_l(p)) = ∅"),
        Verdict3::Intersects => Hypothesis::new("spectra_disjoint", Status::Failed, "common eigenvalue"),
        Verdict3::Undecided => Hypothesis::new("spectra_disjoint", Status::Undecided, format!("enclosures overlap at tolerance {tol}")),
    };
    let mut certificates = vec![
        Certificate::Spectrum { name: "v_l(p)".into(), spectrum: rep.spec_v.clone() },
        Certificate::Spectrum { name: "ad σ0(p)".into(), spectrum: rep.spec_ad.clone() },
        Certificate::Disjointness { name: "ad σ0(p) vs v_l(p)".into(), verdict: rep.pe_verdict },
    ];
    let (conclusion, kernel_ideal) = match rep.pe_verdict {
        Verdict3::Disjoint => {
            let op = linear_operator_on_degree(a, p, 2)?;
            let image = op.image();
            certificates.push(Certificate::Rank { operator: "−L_{v_l(p)} + ad σ0(p) on P²(V)⊗k".into(), rank: image.len(), dim: op.rows() });
            (Conclusion::TwoJets, Some(image))
        }
        Verdict3::Intersects => (Conclusion::NoConclusion, None),
        Verdict3::Undecided => (Conclusion::Undecided, None),
    };
    Ok(FactorizationVerdict { theorem: "positive-energy 2-jet factorization".into(), hypotheses: vec![hyp], conclusion, kernel_ideal, certificates })
}

/// `V_c`: generalized eigenvectors for eigenvalues on the imaginary axis.
pub fn center_subspace(a: &QMat) -> Result<Vec<Vec<Q>>> {
    let split = axis_split(&charpoly(a));
    if !split.mixed.is_empty() {
        return Err(JetError::Precondition("spectral splitting is not defined over the rationals".into()));
    }
    Ok(split.axis.eval_mat(a).kernel())
}

/// Whether `V_c ⊕ E = V` holds exactly for `a`.
pub fn center_complement_check(a: &QMat) -> Result<bool> {
    let vc = center_subspace(a)?;
    let e = e_subspace_linear(a)?;
    let all: Vec<Vec<Q>> = vc.iter().chain(&e).cloned().collect();
    Ok(vc.len() + e.len() == a.rows() && span_rank(a.rows(), &all) == a.rows())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterFamily {
    pub center: Vec<Vec<Q>>,
    /// `V_c(𝔠)^⊥ ⊆ V*`, computed as the span of the `V_c(p)^⊥`.
    pub annihilator: Vec<Vec<Q>>,
    /// Whether that span equals the annihilator of the intersection.
    pub annihilator_check: bool,
}

pub fn center_subspace_family(points: &[Vec<Q>], a: &ActionData) -> Result<CenterFamily> {
    if points.is_empty() {
        return Err(JetError::Precondition("at least one point is required".into()));
    }
    let d = a.dim();
    let mut center: Vec<Vec<Q>> = (0..d).map(|i| crate::liealg::unit(d, i)).collect();
    let mut perps = Vec::new();
    for p in points {
        let vc = center_subspace(&linear_data(a, p)?.0)?;
        perps.extend(annihilator(d, &vc));
        center = span_intersection(d, &center, &vc);
    }
    let annihilator_span = span_basis(d, &perps);
    let direct = annihilator(d, &center);
    let annihilator_check = annihilator_span.len() == direct.len() && span_contains(d, &annihilator_span, &direct);
    Ok(CenterFamily { center, annihilator: annihilator_span, annihilator_check })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelIdeal {
    /// Basis of `R·V_c^⊥` in `R_N` (dense coordinates); tensor with `k` for the ideal.
    pub basis: Vec<Vec<Q>>,
    pub ideal_dim: usize,
    pub quotient_dim: usize,
    /// `dim V_c`: the quotient is `ℝ⟦V_c*⟧ ⊗ k` truncated at order `N`.
    pub quotient_vars: usize,
    /// Whether `quotient_dim = C(dim V_c + N, N)·dim k`.
    pub dimension_check: bool,
}

pub fn kernel_ideal_from_center(vc_perp: &[Vec<Q>], dim: usize, order: usize, kdim: usize) -> KernelIdeal {
    let gens: Vec<TruncSeries> =
        vc_perp.iter().map(|c| TruncSeries::from_homogeneous(dim, order, 1, c)).filter(|f| !f.is_zero()).collect();
    let basis = if order == 0 { Vec::new() } else { ideal_basis(dim, order, &gens) };
    let rdim = monomials_up_to(dim, order).len();
    let quotient_vars = dim - span_rank(dim, vc_perp);
    let quotient_dim = (rdim - basis.len()) * kdim;
    let expected = monomials_up_to(quotient_vars, order).len() * kdim;
    KernelIdeal { ideal_dim: basis.len() * kdim, basis, quotient_dim, quotient_vars, dimension_check: quotient_dim == expected }
}

/// Combined verdict of `Spec(ad σ0(p)) ∩ Σ_p = ∅` over sample points.
pub fn check_spectral_condition(a: &ActionData, points: &[Vec<Q>], bound: usize, mode: SpectrumMode, tol: f64) -> Result<(Verdict3, Vec<SpectralReport>)> {
    let reports: Vec<SpectralReport> =
        points.iter().map(|p| spectral_report(a, p, bound, mode, tol)).collect::<Result<_>>()?;
    let verdict = if reports.iter().any(|r| r.semigroup_verdict == Verdict3::Intersects) {
        Verdict3::Intersects
    } else if reports.iter().any(|r| r.semigroup_verdict == Verdict3::Undecided) {
        Verdict3::Undecided
    } else {
        Verdict3::Disjoint
    };
    Ok((verdict, reports))
}

/// Factorization through `ℝ⟦V_c(𝔠)*⟧ ⊗ k` under the semigroup condition on
/// the sample points.
pub fn spectral_factorization(a: &ActionData, points: &[Vec<Q>], bound: usize, mode: SpectrumMode, tol: f64) -> Result<FactorizationVerdict> {
    let (verdict, reports) = check_spectral_condition(a, points, bound, mode, tol)?;
    let status = match verdict {
        Verdict3::Disjoint => Status::Verified,
        Verdict3::Intersects => Status::Failed,
        Verdict3::Undecided => Status::Undecided,
    };
    let hyp = Hypothesis::new("semigroup_condition", status, format!("Spec(ad σ0(p)) ∩ Σ_p on {} point(s), bound {bound}", points.len()));
    let mut certificates = Vec::new();
    for (i, r) in reports.iter().enumerate() {
        certificates.push(Certificate::Spectrum { name: format!("v_l(p{i})"), spectrum: r.spec_v.clone() });
        certificates.push(Certificate::Spectrum { name: format!("ad σ0(p{i})"), spectrum: r.spec_ad.clone() });
        certificates.push(Certificate::Disjointness { name: format!("ad σ0(p{i}) vs Σ_p{i}"), verdict: r.semigroup_verdict });
    }
    let (conclusion, kernel_ideal) = match verdict {
        Verdict3::Disjoint => {
            let fam = center_subspace_family(points, a)?;
            let ki = kernel_ideal_from_center(&fam.annihilator, a.dim(), a.order(), a.k.dim());
            certificates.push(Certificate::Subspace { name: "V_c".into(), basis: fam.center.clone() });
            let c = if fam.center.is_empty() { Conclusion::FiberOnly } else { Conclusion::CenterJets { center_dim: fam.center.len() } };
            (c, Some(ki.basis))
        }
        Verdict3::Intersects => (Conclusion::NoConclusion, None),
        Verdict3::Undecided => (Conclusion::Undecided, None),
    };
    Ok(FactorizationVerdict { theorem: "spectral-condition factorization".into(), hypotheses: vec![hyp], conclusion, kernel_ideal, certificates })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PipelineFlags {
    pub simple_noncompact: bool,
    pub irreducible_nontrivial: bool,
}

/// Dimension of the associative algebra generated by `mats` (with identity).
fn generated_algebra_dim(mats: &[QMat], d: usize) -> usize {
    let flat = |m: &QMat| -> Vec<Q> { m.as_slice().to_vec() };
    let mut basis: Vec<QMat> = vec![Mat::identity(d)];
    let mut coords = vec![flat(&basis[0])];
    let mut frontier = basis.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for b in &frontier {
            for m in mats {
                let p = m * b;
                let c = flat(&p);
                let mut trial = coords.clone();
                trial.push(c.clone());
                if span_rank(d * d, &trial) > coords.len() {
                    coords.push(c);
                    basis.push(p.clone());
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    coords.len()
}

/// Best-effort irreducibility test for the linear action: the full matrix
/// algebra confirms, a common kernel or zero action refutes.
fn irreducibility_status(mats: &[QMat], d: usize, asserted: bool) -> Hypothesis {
    let name = "v_l_irreducible_nontrivial";
    if d == 0 || mats.iter().all(Mat::is_zero) {
        return Hypothesis::new(name, Status::Failed, "linear action is trivial");
    }
    let stacked = mats.iter().skip(1).fold(mats[0].clone(), |acc, m| acc.vcat(m));
    if !stacked.kernel().is_empty() {
        return Hypothesis::new(name, Status::Failed, "common kernel is a nonzero invariant subspace");
    }
    if generated_algebra_dim(mats, d) == d * d {
        return Hypothesis::new(name, Status::Verified, "generated algebra is the full matrix algebra");
    }
    if asserted {
        Hypothesis::new(name, Status::Asserted, "not refuted by the invariant-subspace search")
    } else {
        Hypothesis::new(name, Status::Failed, "not asserted and not confirmed")
    }
}

fn has_hyperbolic_eigenvalue(s: &Spectrum) -> bool {
    s.entries().iter().any(|(e, _)| matches!(e, Eigenvalue::Exact(z) if z.im.is_zero() && !z.re.is_zero()))
}

/// Chain for a semisimple `p`: normalize the twist, test the cone for a line
/// and a hyperbolic generator, and conclude factorization through `k`.
pub fn semisimple_pipeline(
    a: &ActionData,
    cone: &[Vec<Q>],
    flags: PipelineFlags,
    mode: SpectrumMode,
    tol: f64,
) -> Result<FactorizationVerdict> {
    let mut hyps = Vec::new();
    let mut certificates = Vec::new();
    if cone.is_empty() || cone.iter().any(|g| g.iter().all(Zero::is_zero)) {
        return Err(JetError::Precondition("cone generators must be nonzero".into()));
    }
    let residual_zero = mc_residual(a)?.is_zero();
    hyps.push(Hypothesis::check("mc_residual_zero", residual_zero, "exact Maurer–Cartan residual"));
    let semisimple = a.p.is_semisimple();
    hyps.push(Hypothesis::check("p_semisimple", semisimple, "Killing form nondegenerate"));
    let compact = a.p.is_compact_semisimple();
    hyps.push(match (flags.simple_noncompact, semisimple && !compact) {
        (true, true) => Hypothesis::new("p_simple_noncompact", Status::Asserted, "noncompactness verified, simplicity asserted"),
        (true, false) => Hypothesis::new("p_simple_noncompact", Status::Failed, "Killing form is definite or degenerate"),
        (false, _) => Hypothesis::new("p_simple_noncompact", Status::Failed, "not asserted"),
    });
    if residual_zero && semisimple {
        let nf = normalize_twist_semisimple(a)?;
        let zero = nf.sigma0.iter().all(|s| s.iter().all(Zero::is_zero));
        let ok = !flags.simple_noncompact || zero;
        hyps.push(Hypothesis::check("twist_normalized", ok, format!("{} gauge step(s); σ0 zero: {zero}", nf.steps.len())));
    }
    hyps.push(irreducibility_status(a.v_lin(), a.dim(), flags.irreducible_nontrivial));

    let cert = cone_pointed(cone);
    hyps.push(Hypothesis::check("cone_not_pointed", !cert.is_pointed(), if cert.is_pointed() { "separating functional found" } else { "line multipliers found" }));
    certificates.push(Certificate::Cone(cert));

    let mut hyperbolic = false;
    for (i, g) in cone.iter().enumerate() {
        let s = spectrum(&linear_data(a, g)?.0, mode, tol)?;
        hyperbolic |= has_hyperbolic_eigenvalue(&s);
        certificates.push(Certificate::Spectrum { name: format!("v_l(g{i})"), spectrum: s });
    }
    hyps.push(Hypothesis::check("hyperbolic_generator", hyperbolic, "real nonzero exact eigenvalue"));
    let fam = center_subspace_family(cone, a)?;
    certificates.push(Certificate::Subspace { name: "V_c(generators)".into(), basis: fam.center.clone() });

    let all_hold = hyps.iter().all(|h| matches!(h.status, Status::Verified | Status::Asserted));
    let (conclusion, kernel_ideal) = if all_hold && fam.center.is_empty() {
        let ki = kernel_ideal_from_center(&fam.annihilator, a.dim(), a.order(), a.k.dim());
        (Conclusion::FiberOnly, Some(ki.basis))
    } else {
        (Conclusion::NoConclusion, None)
    };
    Ok(FactorizationVerdict { theorem: "semisimple cone factorization".into(), hypotheses: hyps, conclusion, kernel_ideal, certificates })
}

/// `sl2(ℝ)` acting on `ℝ²` by its standard representation, zero twist.
pub fn sl2_standard_action(k: crate::liealg::LieAlgebra, order: usize) -> Result<ActionData> {
    let h = Mat::diag(&[Q::one(), -Q::one()]);
    let e = Mat::from_rows(vec![vec![Q::zero(), Q::one()], vec![Q::zero(), Q::zero()]]);
    let f = Mat::from_rows(vec![vec![Q::zero(), Q::zero()], vec![Q::one(), Q::zero()]]);
    // A ↦ v_A is already an anti-homomorphism for the field bracket.
    ActionData::linear(crate::liealg::LieAlgebra::sl2r(), k, &[h, e, f], order)
}
