//! Floating-point checks of operator inequalities on finite-dimensional
//! unitary representations: the Cauchy–Schwarz bound for generalized positive
//! energy, modular data of Gibbs states, the KMS entropy bound and positivity
//! of the rotation generator on a truncated Fock space.
//!
//! Tolerances: skew-hermiticity `1e-12`, bracket compatibility `1e-9`,
//! inequality slack `−1e-8`, modular residuals `1e-8`, Fock positivity `−1e-10`.
//! Every report records its seed.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num::complex::Complex64;
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::cocycle::{cocycle_eval, CocycleFunctional};
use crate::error::{JetError, Result};
use crate::jetlie::JetElement;
use crate::liealg::{unit, LieAlgebra};
use crate::rational::{q, q_to_f64};
use crate::ring::{MultiIndex, TruncSeries};

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub const SKEW_TOL: f64 = 1e-12;
pub const BRACKET_TOL: f64 = 1e-9;
pub const SLACK_TOL: f64 = 1e-8;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn norm(m: &CMat) -> f64 {
    m.norm()
}

/// Hermitian functional calculus `U f(Λ) U†` with eigenvalues sorted ascending.
fn herm_fn(m: &CMat, f: impl Fn(f64) -> Complex64) -> CMat {
    let e = SymmetricEigen::new(m.clone());
    let d = CMat::from_diagonal(&DVector::from_iterator(e.eigenvalues.len(), e.eigenvalues.iter().map(|&x| f(x))));
    &e.eigenvectors * d * e.eigenvectors.adjoint()
}

fn herm_eigenvalues(m: &CMat) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize, support: usize) -> CVec {
    let mut v = CVec::from_fn(dim, |i, _| {
        if i < support {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        } else {
            Complex64::zero()
        }
    });
    let n = v.norm();
    v /= c(n);
    v
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> CMat {
    CMat::from_fn(n, n, |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

fn expect(psi: &CVec, m: &CMat) -> Complex64 {
    psi.dotc(&(m * psi))
}

/// Matrices `π(e_i)` on `ℂ^m`; brackets are required to hold on the first
/// `valid_dim` basis vectors, which is where truncated models are faithful.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub alg: LieAlgebra,
    pub mats: Vec<CMat>,
    pub valid_dim: usize,
    pub central: Option<usize>,
}

impl MatrixRep {
    /// Checks shapes and bracket compatibility, not unitarity.
    pub fn new(alg: LieAlgebra, mats: Vec<CMat>, valid_dim: usize, central: Option<usize>) -> Result<Self> {
        if mats.len() != alg.dim() {
            return Err(JetError::DimensionMismatch { expected: alg.dim(), found: mats.len() });
        }
        let m = mats.first().map_or(0, CMat::nrows);
        if mats.iter().any(|x| x.nrows() != m || x.ncols() != m) || valid_dim > m {
            return Err(JetError::InvalidRepresentation("matrices must be square of a common size".into()));
        }
        let rep = MatrixRep { alg, mats, valid_dim, central };
        let defect = rep.bracket_defect();
        if defect > BRACKET_TOL {
            return Err(JetError::InvalidRepresentation(format!("bracket defect {defect:e}")));
        }
        if let Some(z) = central {
            let dz = norm(&rep.restrict(&(&rep.mats[z] - CMat::identity(m, m) * I)));
            if dz > BRACKET_TOL {
                return Err(JetError::InvalidRepresentation(format!("central element is not i·1 (defect {dz:e})")));
            }
        }
        Ok(rep)
    }

    pub fn size(&self) -> usize {
        self.mats.first().map_or(0, CMat::nrows)
    }

    fn restrict(&self, m: &CMat) -> CMat {
        m.columns(0, self.valid_dim).into_owned()
    }

    pub fn image(&self, x: &[f64]) -> CMat {
        let m = self.size();
        x.iter().zip(&self.mats).fold(CMat::zeros(m, m), |acc, (a, p)| acc + p * c(*a))
    }

    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let n = self.alg.dim();
        let mut out = vec![0.0; n];
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                for (k, cst) in self.alg.basis_bracket(i, j).iter().enumerate() {
                    out[k] += xi * yj * q_to_f64(cst);
                }
            }
        }
        out
    }

    /// Largest `‖(π([e_i,e_j]) − [π(e_i),π(e_j)]) P‖_F` over basis pairs.
    pub fn bracket_defect(&self) -> f64 {
        let n = self.alg.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.image(&self.bracket(&basis_f(n, i), &basis_f(n, j)));
                let rhs = &self.mats[i] * &self.mats[j] - &self.mats[j] * &self.mats[i];
                worst = worst.max(norm(&self.restrict(&(lhs - rhs))));
            }
        }
        worst
    }

    pub fn skew_defect(&self) -> f64 {
        self.mats.iter().map(|m| norm(&(m + m.adjoint()))).fold(0.0, f64::max)
    }

    pub fn is_unitary(&self) -> bool {
        self.skew_defect() <= SKEW_TOL
    }

    /// Oscillator algebra `(ξ, η, ζ, c)` with `[ξ,η] = ζ`, `[ζ,η] = c`,
    /// `[ξ,ζ] = −η` on `levels` Fock levels: `π(ξ) = iN`,
    /// `π(η) = (a†−a)/√2`, `π(ζ) = i(a†+a)/√2`, `π(c) = i`.
    pub fn oscillator(levels: usize) -> Result<Self> {
        if levels < 2 {
            return Err(JetError::Precondition("need at least two levels".into()));
        }
        let alg = LieAlgebra::from_brackets(
            "oscillator",
            4,
            &[(0, 1, vec![q(0), q(0), q(1), q(0)]), (1, 2, vec![q(0), q(0), q(0), q(-1)]), (0, 2, vec![q(0), q(-1), q(0), q(0)])],
        );
        let a = CMat::from_fn(levels, levels, |i, j| if j == i + 1 { c((j as f64).sqrt()) } else { Complex64::zero() });
        let ad = a.adjoint();
        let n = CMat::from_fn(levels, levels, |i, j| if i == j { c(i as f64) } else { Complex64::zero() });
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mats = vec![n * I, (&ad - &a) * c(s), (&ad + &a) * (I * s), CMat::identity(levels, levels) * I];
        MatrixRep::new(alg, mats, levels - 1, Some(3))
    }
}

fn basis_f(n: usize, i: usize) -> Vec<f64> {
    (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CsQpeReport {
    pub seed: u64,
    pub samples: usize,
    /// `λ_min(−iπ(ξ))`, the surrogate for the orbit infimum.
    pub energy_bound: f64,
    pub min_slack: f64,
    /// Largest `LHS / RHS` over samples with positive right-hand side.
    pub max_ratio: f64,
    pub degenerate: bool,
    pub bracket_norm: f64,
    pub holds: bool,
    pub witness: Option<Vec<(f64, f64)>>,
    pub note: String,
}

/// Degenerate case: whether `[[ξ,η],η] = 0` (to `1e-9`) and `‖π([ξ,η])‖` restricted.
pub fn degenerate_case(rep: &MatrixRep, xi: &[f64], eta: &[f64]) -> (bool, f64) {
    let b = rep.bracket(xi, eta);
    let bb = rep.bracket(&b, eta);
    let degenerate = bb.iter().map(|x| x * x).sum::<f64>().sqrt() <= BRACKET_TOL;
    (degenerate, norm(&rep.restrict(&rep.image(&b))))
}

/// `⟨ψ,−iπ([ξ,η])ψ⟩² ≤ 2⟨ψ,−iπ([[ξ,η],η])ψ⟩(⟨ψ,−iπ(ξ)ψ⟩ − λ_min(−iπ(ξ)))`
/// on random unit vectors supported on the valid subspace.
pub fn check_cs_qpe(rep: &MatrixRep, xi: &[f64], eta: &[f64], samples: usize, seed: u64) -> Result<CsQpeReport> {
    if !rep.is_unitary() {
        return Err(JetError::InvalidRepresentation(format!("not skew-hermitian (defect {:e})", rep.skew_defect())));
    }
    let m = rep.size();
    let h_xi = rep.image(xi) * (-I);
    let b = rep.bracket(xi, eta);
    let h_b = rep.image(&b) * (-I);
    let h_bb = rep.image(&rep.bracket(&b, eta)) * (-I);
    let energy_bound = herm_eigenvalues(&h_xi).first().copied().unwrap_or(0.0);
    let (degenerate, bracket_norm) = degenerate_case(rep, xi, eta);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut min_slack, mut max_ratio, mut witness) = (f64::INFINITY, 0.0_f64, None);
    for _ in 0..samples {
        let psi = random_unit(&mut rng, m, rep.valid_dim);
        let lhs = expect(&psi, &h_b).re.powi(2);
        let rhs = 2.0 * expect(&psi, &h_bb).re * (expect(&psi, &h_xi).re - energy_bound);
        let slack = rhs - lhs;
        if rhs > 1e-12 {
            max_ratio = max_ratio.max(lhs / rhs);
        }
        if slack < min_slack {
            min_slack = slack;
            witness = Some(psi.iter().map(|z| (z.re, z.im)).collect());
        }
    }
    let holds = min_slack >= -SLACK_TOL && (!degenerate || bracket_norm <= SLACK_TOL);
    if holds {
        witness = None;
    }
    Ok(CsQpeReport {
        seed,
        samples,
        energy_bound,
        min_slack: if samples == 0 { 0.0 } else { min_slack },
        max_ratio,
        degenerate,
        bracket_norm,
        holds,
        witness,
        note: "energy infimum replaced by the spectral bound; only inner-orbit directions are tested".into(),
    })
}

/// Gibbs state `δ = e^{−βH}/Z` of a hermitian `H`.
#[derive(Clone, Debug)]
pub struct GibbsData {
    pub h: CMat,
    pub beta: f64,
    pub z: f64,
    pub delta: CMat,
}

impl GibbsData {
    pub fn new(h: CMat, beta: f64) -> Result<Self> {
        if !(beta > 0.0) {
            return Err(JetError::Precondition("β must be positive".into()));
        }
        if !h.is_square() || norm(&(&h - h.adjoint())) > SKEW_TOL {
            return Err(JetError::Precondition("hamiltonian must be hermitian".into()));
        }
        let e = herm_fn(&h, |x| c((-beta * x).exp()));
        let z = e.trace().re;
        let delta = e / c(z);
        let min = herm_eigenvalues(&delta)[0];
        if !(min > 0.0) || !z.is_finite() {
            return Err(JetError::Numerical(format!("state density is not positive definite at β = {beta}")));
        }
        Ok(GibbsData { h, beta, z, delta })
    }

    pub fn dim(&self) -> usize {
        self.h.nrows()
    }

    /// `e^{−iβtH} x e^{iβtH}`.
    pub fn flow(&self, x: &CMat, t: f64) -> CMat {
        let u = herm_fn(&self.h, |e| (-I * (self.beta * t * e)).exp());
        &u * x * u.adjoint()
    }
}

/// GNS space of a Gibbs state on `M_n`: vectors are `vec(a)` with row-major
/// index `i·n + j`, and `⟨a,b⟩ = tr(δ a† b)` has Gram matrix `g`.
#[derive(Clone, Debug)]
pub struct GnsSpace {
    pub n: usize,
    pub gram: CMat,
    gram_half: CMat,
    gram_half_inv: CMat,
    /// `G^{1/2} Δ G^{−1/2}`, hermitian.
    pub delta_sym: CMat,
    pub delta: CMat,
    pub hermiticity_defect: f64,
}

fn vec_of(a: &CMat) -> CVec {
    let n = a.nrows();
    CVec::from_fn(n * n, |k, _| a[(k / n, k % n)])
}

fn mat_of(v: &CVec, n: usize) -> CMat {
    CMat::from_fn(n, n, |i, j| v[i * n + j])
}

/// `S(vec a) = vec(a†)`, antilinear.
fn apply_s(v: &CVec, n: usize) -> CVec {
    vec_of(&mat_of(v, n).adjoint())
}

impl GnsSpace {
    pub fn new(g: &GibbsData) -> Result<Self> {
        let n = g.dim();
        let nn = n * n;
        let gram = CMat::from_fn(nn, nn, |r, s| {
            let (i, j, k, l) = (r / n, r % n, s / n, s % n);
            if i == k {
                g.delta[(l, j)]
            } else {
                Complex64::zero()
            }
        });
        let ev = herm_eigenvalues(&gram);
        if ev[0] <= 1e-14 * ev[nn - 1] {
            return Err(JetError::Numerical(format!("GNS Gram matrix is numerically singular at β = {}", g.beta)));
        }
        let gram_half = herm_fn(&gram, |x| c(x.sqrt()));
        let gram_half_inv = herm_fn(&gram, |x| c(1.0 / x.sqrt()));
        let gram_inv = herm_fn(&gram, |x| c(1.0 / x));
        // Transposition of matrix indices as a permutation of vec coordinates.
        let p = CMat::from_fn(nn, nn, |r, s| if s == (r % n) * n + r / n { c(1.0) } else { Complex64::zero() });
        let delta = &gram_inv * p.transpose() * gram.transpose() * &p;
        let k = &gram_half * &delta * &gram_half_inv;
        let hermiticity_defect = norm(&(&k - k.adjoint()));
        let delta_sym = (&k + k.adjoint()) * c(0.5);
        Ok(GnsSpace { n, gram, gram_half, gram_half_inv, delta_sym, delta, hermiticity_defect })
    }

    pub fn inner(&self, a: &CVec, b: &CVec) -> Complex64 {
        a.dotc(&(&self.gram * b))
    }

    /// `Δ^{s}` for complex `s`.
    pub fn delta_pow(&self, s: Complex64) -> CMat {
        let k = herm_fn(&self.delta_sym, |x| (s * x.ln()).exp());
        &self.gram_half_inv * k * &self.gram_half
    }

    /// `H_φ = −log Δ`.
    pub fn modular_hamiltonian(&self) -> CMat {
        let k = herm_fn(&self.delta_sym, |x| c(-x.ln()));
        &self.gram_half_inv * k * &self.gram_half
    }

    /// `J = S Δ^{−1/2}`, returned as the linear part: `J v = conj(j·v)` permuted.
    pub fn apply_j(&self, v: &CVec) -> CVec {
        let w = self.delta_pow(c(-0.5)) * v;
        apply_s(&w, self.n)
    }

    pub fn delta_eigenvalues(&self) -> Vec<f64> {
        herm_eigenvalues(&self.delta_sym)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModularReport {
    pub beta: f64,
    pub seed: u64,
    pub delta_eigenvalues: Vec<f64>,
    /// `‖Δ vec(a) − vec(δ a δ⁻¹)‖` over matrix units.
    pub brute_force_residual: f64,
    /// `‖Δ^{it} vec(x) − vec(e^{−iβtH} x e^{iβtH})‖` over sampled `x` and times.
    pub flow_residual: f64,
    pub j_involution_residual: f64,
    pub j_antiunitary_residual: f64,
    /// `‖J Δ^{1/2} v − S v‖` over sampled vectors.
    pub polar_residual: f64,
    pub hermiticity_defect: f64,
    pub passed: bool,
}

pub const MODULAR_TOL: f64 = 1e-8;

pub fn gibbs_modular_check(g: &GibbsData, times: &[f64], seed: u64) -> Result<ModularReport> {
    let gns = GnsSpace::new(g)?;
    let n = g.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dinv = herm_fn(&g.delta, |x| c(1.0 / x));
    let mut brute: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mut e = CMat::zeros(n, n);
            e[(i, j)] = c(1.0);
            let expect = vec_of(&(&g.delta * &e * &dinv));
            brute = brute.max((&gns.delta * vec_of(&e) - expect).norm());
        }
    }
    let mut flow: f64 = 0.0;
    let (mut jj, mut ja, mut polar): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let half = gns.delta_pow(c(0.5));
    for &t in times {
        let dit = gns.delta_pow(I * t);
        for _ in 0..4 {
            let x = random_matrix(&mut rng, n);
            let x = &x / c(x.norm());
            flow = flow.max((&dit * vec_of(&x) - vec_of(&g.flow(&x, t))).norm());
        }
    }
    for _ in 0..8 {
        let u = vec_of(&random_matrix(&mut rng, n));
        let u = &u / c(u.norm());
        let w = vec_of(&random_matrix(&mut rng, n));
        let w = &w / c(w.norm());
        jj = jj.max((gns.apply_j(&gns.apply_j(&u)) - &u).norm());
        ja = ja.max((gns.inner(&gns.apply_j(&u), &gns.apply_j(&w)) - gns.inner(&u, &w).conj()).norm());
        polar = polar.max((gns.apply_j(&(&half * &u)) - apply_s(&u, n)).norm());
    }
    let evs = gns.delta_eigenvalues();
    let passed = evs[0] > 0.0 && [brute, flow, jj, ja, polar].iter().all(|&r| r <= MODULAR_TOL);
    Ok(ModularReport {
        beta: g.beta,
        seed,
        delta_eigenvalues: evs,
        brute_force_residual: brute,
        flow_residual: flow,
        j_involution_residual: jj,
        j_antiunitary_residual: ja,
        polar_residual: polar,
        hermiticity_defect: gns.hermiticity_defect,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct KmsReport {
    pub beta: f64,
    pub seed: u64,
    pub samples: usize,
    /// `min ⟨ψ,H_φψ⟩/‖ψ‖² + log(‖Sψ‖²/‖ψ‖²)`.
    pub min_entropy_slack: f64,
    /// `min −log(‖Sψ‖²/‖ψ‖²) + log(‖x‖²/‖ψ‖²)`.
    pub min_norm_slack: f64,
    pub holds: bool,
}

fn operator_norm(x: &CMat) -> f64 {
    x.clone().svd(false, false).singular_values.max()
}

/// Both slacks for `ψ = x·Ω`.
pub fn kms_slacks(gns: &GnsSpace, hphi: &CMat, x: &CMat) -> (f64, f64) {
    let psi = vec_of(x);
    let n2 = gns.inner(&psi, &psi).re;
    let energy = gns.inner(&psi, &(hphi * &psi)).re / n2;
    let s = apply_s(&psi, gns.n);
    let ratio = gns.inner(&s, &s).re / n2;
    let opn = operator_norm(x);
    (energy + ratio.ln(), -ratio.ln() + (opn * opn / n2).ln())
}

/// Samples random `x` of unit operator norm, plus the identity.
pub fn kms_entropy_bound(g: &GibbsData, samples: usize, seed: u64) -> Result<KmsReport> {
    let gns = GnsSpace::new(g)?;
    let hphi = gns.modular_hamiltonian();
    let n = g.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut e_min, mut n_min) = kms_slacks(&gns, &hphi, &CMat::identity(n, n));
    for _ in 0..samples {
        let x = random_matrix(&mut rng, n);
        let x = &x / c(operator_norm(&x));
        let (a, b) = kms_slacks(&gns, &hphi, &x);
        e_min = e_min.min(a);
        n_min = n_min.min(b);
    }
    Ok(KmsReport { beta: g.beta, seed, samples, min_entropy_slack: e_min, min_norm_slack: n_min, holds: e_min >= -SLACK_TOL && n_min >= -SLACK_TOL })
}

#[derive(Clone, Debug, Serialize)]
pub struct MetaplecticReport {
    pub fock_degree: usize,
    pub seed: u64,
    /// `ω(Jξ, ξ)` on the real basis `x⊗e_a, y⊗e_a`.
    pub basis_values: Vec<f64>,
    pub min_random_value: f64,
    pub gram_min_eigenvalue: f64,
    pub spectrum: Vec<f64>,
    pub min_eigenvalue: f64,
    pub psd: bool,
}

pub const FOCK_TOL: f64 = 1e-10;

/// Multisets of size `n` from `0..m` as nondecreasing sequences.
fn multisets(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i, m, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, n, &mut Vec::new(), &mut out);
    out
}

/// Permanent of a small square matrix by Ryser's formula.
fn permanent(a: &CMat) -> Complex64 {
    let n = a.nrows();
    if n == 0 {
        return c(1.0);
    }
    let mut total = Complex64::zero();
    for mask in 1u32..(1 << n) {
        let mut prod = c(1.0);
        for i in 0..n {
            let s: Complex64 = (0..n).filter(|j| mask & (1 << j) != 0).map(|j| a[(i, j)]).sum();
            prod *= s;
        }
        let sign = if (n - mask.count_ones() as usize).is_multiple_of(2) { 1.0 } else { -1.0 };
        total += prod * sign;
    }
    total
}

/// Rotation example on `W = V* ⊗ su2` with `J = D(p₀)`, `p₀` the rotation
/// generator with `L_v x = y`, `L_v y = −x`, twist zero.
///
/// The one-particle space is the `+i` eigenspace `L_+ = span{(x+iy)⊗e_a}` of
/// `J` with `h(u,w) = −i ω(ū, w)`; the generator is the second quantization
/// of `−iJ|_{L_+}` on `⊕_{n≤M} Symⁿ L_+`, with the permanent inner product.
pub fn metaplectic_positivity(fock_degree: usize, samples: usize, seed: u64) -> Result<MetaplecticReport> {
    let k = LieAlgebra::su2();
    let lambda = {
        let mut l = CocycleFunctional::zero(2, 1);
        // λ(y dx) = 1, λ(x dy) = −1.
        let y = MultiIndex::new(vec![0, 1]);
        let x = MultiIndex::new(vec![1, 0]);
        let mons = crate::ring::monomials_up_to(2, 1);
        let iy = mons.iter().position(|m| *m == y).expect("degree-one monomial");
        let ix = mons.iter().position(|m| *m == x).expect("degree-one monomial");
        l.coeffs[iy * 2] = q(1);
        l.coeffs[ix * 2 + 1] = q(-1);
        l
    };
    // Real basis index 2a + f with f = 0 for x, 1 for y.
    let fns = [TruncSeries::var(2, 1, 0), TruncSeries::var(2, 1, 1)];
    let elem = |i: usize| JetElement::simple(&fns[i % 2], &unit(3, i / 2));
    let omega = DMatrix::<f64>::from_fn(6, 6, |i, j| q_to_f64(&cocycle_eval(&lambda, &k, &elem(i), &elem(j))));
    // J(x⊗X) = −y⊗X, J(y⊗X) = x⊗X.
    let j = DMatrix::<f64>::from_fn(6, 6, |r, s| {
        if r / 2 != s / 2 {
            0.0
        } else {
            match (r % 2, s % 2) {
                (1, 0) => -1.0,
                (0, 1) => 1.0,
                _ => 0.0,
            }
        }
    });
    let form = |xi: &DVector<f64>| (j.clone() * xi).dot(&(&omega * xi));
    let basis_values: Vec<f64> = (0..6).map(|i| form(&DVector::from_fn(6, |r, _| if r == i { 1.0 } else { 0.0 }))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_random_value = f64::INFINITY;
    for _ in 0..samples {
        let xi = DVector::from_fn(6, |_, _| rng.sample::<f64, _>(StandardNormal));
        min_random_value = min_random_value.min(form(&xi) / xi.norm_squared());
    }

    // L_+ basis u_a = (x + i y)⊗e_a in the complexified real basis.
    let u: Vec<CVec> = (0..3)
        .map(|a| CVec::from_fn(6, |r, _| if r == 2 * a { c(1.0) } else if r == 2 * a + 1 { I } else { Complex64::zero() }))
        .collect();
    let omega_c = omega.map(c);
    let jc = j.map(c);
    for v in &u {
        if (&jc * v - v * I).norm() > 1e-12 {
            return Err(JetError::Numerical("L_+ is not the +i eigenspace".into()));
        }
    }
    let h1 = CMat::from_fn(3, 3, |a, b| -I * u[a].conjugate().dot(&(&omega_c * &u[b])));
    // −iJ on L_+ in the basis u_a.
    let gen1 = CMat::from_fn(3, 3, |a, b| {
        let w = (&jc * &u[b]) * (-I);
        // Coordinates along u_a: entries 2a and 2a+1 are (c, c·i).
        w[2 * a]
    });

    let mut spectrum = Vec::new();
    let mut gram_min = f64::INFINITY;
    for n in 0..=fock_degree {
        let basis = multisets(3, n);
        let dim = basis.len();
        let gram = CMat::from_fn(dim, dim, |r, s| {
            permanent(&CMat::from_fn(n, n, |i, jdx| h1[(basis[r][i], basis[s][jdx])]))
        });
        let gev = herm_eigenvalues(&gram);
        gram_min = gram_min.min(gev.first().copied().unwrap_or(1.0));
        if gev.first().is_some_and(|&m| m <= 1e-12) {
            return Err(JetError::Numerical(format!("truncated Fock Gram matrix is not positive definite at degree {n}")));
        }
        // dΓ(gen1) on monomials u_{α_1}⋯u_{α_n}.
        let mut t = CMat::zeros(dim, dim);
        for (s, mono) in basis.iter().enumerate() {
            for pos in 0..n {
                for target in 0..3 {
                    let coef = gen1[(target, mono[pos])];
                    if coef.norm() == 0.0 {
                        continue;
                    }
                    let mut m2 = mono.clone();
                    m2[pos] = target;
                    m2.sort_unstable();
                    let r = basis.iter().position(|b| *b == m2).expect("multiset basis is closed");
                    t[(r, s)] += coef;
                }
            }
        }
        let ghalf_inv = herm_fn(&gram, |x| c(1.0 / x.sqrt()));
        let ghalf = herm_fn(&gram, |x| c(x.sqrt()));
        let sym = &ghalf * &t * &ghalf_inv;
        let sym = (&sym + sym.adjoint()) * c(0.5);
        spectrum.extend(herm_eigenvalues(&sym));
    }
    spectrum.sort_by(f64::total_cmp);
    let min_eigenvalue = spectrum.first().copied().unwrap_or(0.0);
    Ok(MetaplecticReport {
        fock_degree,
        seed,
        basis_values,
        min_random_value,
        gram_min_eigenvalue: gram_min,
        psd: min_eigenvalue >= -FOCK_TOL,
        min_eigenvalue,
        spectrum,
    })
}

/// A non-unitary pair with `[[ξ,η],η] = 0` and `π([ξ,η]) ≠ 0`: the
/// two-dimensional nonabelian algebra `[ξ,η] = η` on `ℂ²`.
pub fn nonunitary_control() -> Result<MatrixRep> {
    let alg = LieAlgebra::from_brackets("aff1", 2, &[(0, 1, vec![q(0), q(1)])]);
    let xi = CMat::from_fn(2, 2, |i, j| if i == 0 && j == 0 { c(1.0) } else { Complex64::zero() });
    let eta = CMat::from_fn(2, 2, |i, j| if i == 0 && j == 1 { c(1.0) } else { Complex64::zero() });
    MatrixRep::new(alg, vec![xi, eta], 2, None)
}
