//! Normal forms: Poincaré–Dulac for a single formal vector field, the
//! Maurer–Cartan residual of a lift, obstruction lifting, and degree-by-degree
//! gauge normalization of vertical twists.
//!
//! A gauge `ξ` of pure degree `n` changes the degree-`n` part of every twist
//! by `−D₀ξ`, where `D₀(p) = −L_{v_l(p)} + ad σ₀(p)` is the action of `p` on
//! `Pⁿ(V) ⊗ k`, and leaves lower degrees alone. Each normalization step
//! therefore solves one linear system on `Pⁿ(V) ⊗ k`. Per-degree gauges are
//! composed by BCH with the newest factor on the left, so the total gauge of
//! steps `ξ₁, …, ξ_N` is `log(e^{ξ_N} ⋯ e^{ξ₁})`.

use num::{One, Zero};
use serde::Serialize;

use crate::cohomology::{cochain_dim, solve_coboundary, subsets, PModule};
use crate::error::{JetError, Result};
use crate::jetlie::{bch, ActionData, FormalDiffeo, JetElement};
use crate::liealg::{chevalley_jordan, is_semisimple_matrix, spectrum, CartanData, LieAlgebra, SpectrumMode};
use crate::linalg::{annihilator, coordinates, span_basis, Mat, QMat};
use crate::rational::Q;
use crate::ring::{monomials_of_degree, FormalVectorField};

/// Alternating `k`-cochain on `p` with values in `g_N`, stored on the
/// increasing index subsets of the basis of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGLAElement {
    pub degree: usize,
    pub pdim: usize,
    pub values: Vec<JetElement>,
}

impl DGLAElement {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(JetElement::is_zero)
    }

    /// Value on `(e_i, e_j)` for `i < j` when `degree = 2`.
    pub fn pair(&self, i: usize, j: usize) -> &JetElement {
        let idx = subsets(self.pdim, self.degree).iter().position(|s| s == &[i, j]).expect("valid pair");
        &self.values[idx]
    }

    /// Homogeneous part of every value.
    pub fn homogeneous(&self, n: usize) -> Self {
        DGLAElement { degree: self.degree, pdim: self.pdim, values: self.values.iter().map(|v| v.homogeneous(n)).collect() }
    }

    pub fn valuation(&self) -> Option<usize> {
        self.values.iter().filter_map(JetElement::valuation).min()
    }
}

/// `(p₁,p₂) ↦ −L_{v(p₁)}σ(p₂) + L_{v(p₂)}σ(p₁) − σ([p₁,p₂]) + [σ(p₁),σ(p₂)]`.
pub fn mc_residual(a: &ActionData) -> Result<DGLAElement> {
    let n = a.p.dim();
    let mut values = Vec::new();
    for s in subsets(n, 2) {
        let (i, j) = (s[0], s[1]);
        let t1 = a.sigma[j].lie_derivative(&a.v[i])?.neg();
        let t2 = a.sigma[i].lie_derivative(&a.v[j])?;
        let t3 = a.sigma_at(a.p.basis_bracket(i, j)).neg();
        let t4 = a.sigma[i].bracket(&a.sigma[j], &a.k)?;
        values.push(t1.add(&t2).add(&t3).add(&t4));
    }
    Ok(DGLAElement { degree: 2, pdim: n, values })
}

/// Matrix of a linear map on homogeneous fields of degree `n`, in the basis
/// `(monomial, i)` of `Pⁿ(V) ⊗ V`.
fn field_operator(d: usize, n: usize, f: impl Fn(&FormalVectorField) -> FormalVectorField) -> QMat {
    let dim = monomials_of_degree(d, n).len() * d;
    let cols: Vec<Vec<Q>> = (0..dim)
        .map(|j| {
            let mut e = vec![Q::zero(); dim];
            e[j] = Q::one();
            f(&FormalVectorField::from_homogeneous_coords(d, n, n, &e)).homogeneous_coords(n)
        })
        .collect();
    Mat::from_cols(dim, &cols)
}

/// Matrix of `u ↦ [v_A, u]` on `Pⁿ(V) ⊗ V`.
pub fn homological_operator(a: &QMat, n: usize) -> QMat {
    let d = a.rows();
    let lin = FormalVectorField::linear(a, n);
    field_operator(d, n, |u| lin.bracket(u).expect("shapes agree"))
}

/// One degree of a Poincaré–Dulac normalization: the conjugating map is
/// `x ↦ x + φ(x)` with `φ` homogeneous of degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdStep {
    pub degree: usize,
    pub phi: FormalVectorField,
    /// Coordinates of the removed component (image of `ad S`).
    pub removed: Vec<Q>,
    /// Coordinates of the kept resonant component (kernel of `ad S`).
    pub kept: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareDulac {
    pub input: FormalVectorField,
    pub normal_form: FormalVectorField,
    pub diffeo: FormalDiffeo,
    pub semisimple_part: QMat,
    pub steps: Vec<PdStep>,
}

impl PoincareDulac {
    /// Recomposes the conjugating map from the steps and conjugates the input.
    pub fn replay(&self) -> Result<FormalVectorField> {
        let mut h = FormalDiffeo::identity(self.input.dim(), self.input.order());
        for s in &self.steps {
            h = FormalDiffeo::near_identity(&s.phi).compose(&h)?;
        }
        h.act_field(&self.input)
    }
}

/// Conjugates `v` so that its nonlinear part commutes with the semisimple
/// part `S` of the linear part.
///
/// At degree `k`, the defect `w_k` is split along `im(ad S) ⊕ ker(ad S)`.
/// The homological operator `ad v_l` is invertible on `im(ad S)`, and the
/// map `x ↦ x + φ` with `ad v_l(φ) = −(image part)` removes it.
pub fn poincare_dulac(v: &FormalVectorField) -> Result<PoincareDulac> {
    let (d, order) = (v.dim(), v.order());
    let a = v.linear_part();
    let (s, _) = chevalley_jordan(&a);
    let mut w = v.clone();
    let mut h = FormalDiffeo::identity(d, order);
    let mut steps = Vec::new();
    for k in 2..=order {
        let ml = homological_operator(&a, k);
        let ms = homological_operator(&s, k);
        let (img, ker) = ms.image_and_kernel();
        let dim = ml.rows();
        let target = w.homogeneous_coords(k);
        let basis: Vec<Vec<Q>> = img.iter().chain(&ker).cloned().collect();
        let c = coordinates(dim, &basis, &target).expect("image and kernel of a semisimple operator are complementary");
        let (ci, ck) = c.split_at(img.len());
        let removed = combo(dim, &img, ci);
        let kept = combo(dim, &ker, ck);
        if removed.iter().all(Zero::is_zero) {
            steps.push(PdStep { degree: k, phi: FormalVectorField::zero(d, order), removed, kept });
            continue;
        }
        let b = Mat::from_cols(dim, &img);
        let lb = &ml * &b;
        let rhs: Vec<Q> = removed.iter().map(|x| -x.clone()).collect();
        let y = lb.solve(&rhs).expect("ad(v_l) is invertible on the image of ad(S)");
        let phi_c = b.mul_vec(&y);
        let phi = FormalVectorField::from_homogeneous_coords(d, order, k, &phi_c);
        let hk = FormalDiffeo::near_identity(&phi);
        w = hk.act_field(&w)?;
        h = hk.compose(&h)?;
        steps.push(PdStep { degree: k, phi, removed, kept });
    }
    Ok(PoincareDulac { input: v.clone(), normal_form: w, diffeo: h, semisimple_part: s, steps })
}

fn combo(dim: usize, basis: &[Vec<Q>], c: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); dim];
    for (b, ci) in basis.iter().zip(c) {
        if ci.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o += ci * x;
        }
    }
    out
}

/// Whether `[v_S, w − j¹w] = 0` exactly.
pub fn commutes_with_semisimple_part(w: &FormalVectorField) -> Result<bool> {
    let (s, _) = chevalley_jordan(&w.linear_part());
    let vs = FormalVectorField::linear(&s, w.order());
    Ok(vs.bracket(&w.higher_order())?.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResonanceReport {
    pub resonance_free: bool,
    pub first_resonant_degree: Option<usize>,
    /// Rank and size of the homological operator per degree `2..=N`.
    pub ranks: Vec<(usize, usize, usize)>,
}

/// Surjectivity of `ad v_l` on `Pᵏ(V) ⊗ V` for `k = 2..=N`, by exact rank.
pub fn is_resonance_free(a: &QMat, order: usize) -> ResonanceReport {
    let mut ranks = Vec::new();
    let mut first = None;
    for k in 2..=order {
        let m = homological_operator(a, k);
        let r = m.rank();
        if r < m.rows() && first.is_none() {
            first = Some(k);
        }
        ranks.push((k, r, m.rows()));
    }
    ResonanceReport { resonance_free: first.is_none(), first_resonant_degree: first, ranks }
}

/// Module `Pⁿ(V) ⊗_χ k` for the twists of `a` at `χ = σ₀`.
pub fn degree_module(a: &ActionData, n: usize) -> Result<PModule> {
    PModule::poly_tensor(&a.p, a.v_lin(), n, &a.k, a.sigma0())
}

/// Degree-`n` parts of the twists as a 1-cochain on `Pⁿ(V) ⊗ k`.
fn twist_cochain(sigma: &[JetElement], n: usize) -> Vec<Q> {
    sigma.iter().flat_map(|s| s.homogeneous_coords(n)).collect()
}

/// Degree-`n` part of the Maurer–Cartan residual as a 2-cochain.
fn residual_cochain(res: &DGLAElement, n: usize) -> Vec<Q> {
    res.values.iter().flat_map(|s| s.homogeneous_coords(n)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftOutcome {
    /// Twist corrected at degree `degree` by `eta`; residual now vanishes through that degree.
    Lifted { degree: usize, eta: Vec<JetElement>, action: ActionData },
    /// Nonzero class: the degree-`degree` residual is not a coboundary.
    Obstruction { degree: usize, cocycle: Vec<Q> },
}

/// Tries to correct the degree-`degree` part of the twists so that the
/// Maurer–Cartan residual vanishes through that degree.
pub fn mc_obstruction_lift(a: &ActionData, degree: usize) -> Result<LiftOutcome> {
    if degree > a.order() {
        return Err(JetError::DegreeTooLarge { requested: degree, order: a.order() });
    }
    if degree == 0 {
        return Err(JetError::Precondition("lifting starts at degree 1".into()));
    }
    let res = mc_residual(a)?;
    if let Some(val) = res.valuation() {
        if val < degree {
            return Err(JetError::Precondition(format!("residual is nonzero in degree {val} < {degree}")));
        }
    }
    if !a.p.is_homomorphism_to(&a.k, a.sigma0()) {
        return Err(JetError::Precondition("constant part of the twist is not a homomorphism".into()));
    }
    let h = residual_cochain(&res, degree);
    let module = degree_module(a, degree)?;
    let neg_h: Vec<Q> = h.iter().map(|x| -x.clone()).collect();
    match solve_coboundary(&module, 2, &neg_h)? {
        None => Ok(LiftOutcome::Obstruction { degree, cocycle: h }),
        Some(eta) => {
            let m = module.dim();
            let (d, order, kd) = (a.dim(), a.order(), a.k.dim());
            let eta: Vec<JetElement> = (0..a.p.dim())
                .map(|i| JetElement::from_homogeneous_coords(d, order, kd, degree, &eta[i * m..(i + 1) * m]))
                .collect();
            let sigma = a.sigma.iter().zip(&eta).map(|(s, e)| s.add(e)).collect();
            Ok(LiftOutcome::Lifted { degree, eta, action: a.with_sigma(sigma)? })
        }
    }
}

/// A degree-`degree` gauge `ξ` (log coordinate).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeStep {
    pub degree: usize,
    pub xi: JetElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistNormalForm {
    pub input: ActionData,
    pub output: ActionData,
    /// BCH composite of the steps, newest on the left.
    pub gauge: JetElement,
    pub steps: Vec<GaugeStep>,
    pub sigma0: Vec<Vec<Q>>,
}

impl TwistNormalForm {
    /// Applies the recorded steps in order to the input.
    pub fn replay(&self) -> Result<ActionData> {
        let mut a = self.input.clone();
        for s in &self.steps {
            a = a.gauge(&s.xi)?;
        }
        Ok(a)
    }

    /// Applies the composite gauge in one shot.
    pub fn replay_composite(&self) -> Result<ActionData> {
        self.input.gauge(&self.gauge)
    }
}

fn compose_steps(k: &LieAlgebra, a: &ActionData, steps: &[GaugeStep]) -> Result<JetElement> {
    let mut g = JetElement::zero(a.dim(), a.order(), k.dim());
    for s in steps {
        g = bch(k, &s.xi, &g)?;
    }
    Ok(g)
}

/// Gauges the twists of a lift of a semisimple `p` to their constant parts.
pub fn normalize_twist_semisimple(a: &ActionData) -> Result<TwistNormalForm> {
    if !a.p.is_semisimple() {
        return Err(JetError::NotSemisimple);
    }
    if !mc_residual(a)?.is_zero() {
        return Err(JetError::NonzeroResidual);
    }
    let (d, order, kd) = (a.dim(), a.order(), a.k.dim());
    let mut cur = a.clone();
    let mut steps = Vec::new();
    for n in 1..=order {
        let module = degree_module(a, n)?;
        let c = twist_cochain(&cur.sigma, n);
        if c.iter().all(Zero::is_zero) {
            continue;
        }
        let xi = solve_coboundary(&module, 1, &c)?
            .ok_or_else(|| JetError::Precondition(format!("degree {n} twist is not a coboundary")))?;
        let xi = JetElement::from_homogeneous_coords(d, order, kd, n, &xi);
        cur = cur.gauge(&xi)?;
        debug_assert!(twist_cochain(&cur.sigma, n).iter().all(Zero::is_zero));
        steps.push(GaugeStep { degree: n, xi });
    }
    let gauge = compose_steps(&a.k, a, &steps)?;
    let sigma0 = a.sigma0().to_vec();
    if !a.p.is_homomorphism_to(&a.k, &sigma0) {
        return Err(JetError::Precondition("constant part of the twist is not a homomorphism".into()));
    }
    Ok(TwistNormalForm { input: a.clone(), output: cur, gauge, steps, sigma0 })
}

/// Whether every twist is constant in the series variables.
pub fn twists_are_constant(a: &ActionData) -> bool {
    a.sigma.iter().all(|s| s.tail_from(1).is_zero())
}

/// Conjugation by `x ↦ x + φ` of a lift, recorded per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizationStep {
    pub degree: usize,
    pub phi: FormalVectorField,
}

/// Linearizes the vector fields of a lift of a semisimple `p` degree by
/// degree: `x ↦ x + φ` changes `v(p)_n` by `[v_l(p), φ]`, and the
/// obstruction lives in `H¹(p, Pⁿ(V) ⊗ V)` with `p·u = −[v_l(p), u]`.
pub fn linearize_semisimple(a: &ActionData) -> Result<(FormalDiffeo, ActionData, Vec<LinearizationStep>)> {
    if !a.p.is_semisimple() {
        return Err(JetError::NotSemisimple);
    }
    a.check_anti_hom()?;
    let (d, order) = (a.dim(), a.order());
    let mut cur = a.clone();
    let mut h = FormalDiffeo::identity(d, order);
    let mut steps = Vec::new();
    for n in 2..=order {
        let rho: Vec<QMat> = a
            .v_lin()
            .iter()
            .map(|m| {
                let lin = FormalVectorField::linear(m, n);
                field_operator(d, n, |u| lin.bracket(u).expect("shapes agree").scale(&-Q::one()))
            })
            .collect();
        let dim = rho[0].rows();
        let module = PModule::new(a.p.clone(), dim, rho)?;
        let c: Vec<Q> = cur.v.iter().flat_map(|f| f.homogeneous_coords(n)).collect();
        if c.iter().all(Zero::is_zero) {
            continue;
        }
        let phi =
            solve_coboundary(&module, 1, &c)?.ok_or_else(|| JetError::Precondition(format!("degree {n} is obstructed")))?;
        let phi = FormalVectorField::from_homogeneous_coords(d, order, n, &phi);
        let hn = FormalDiffeo::near_identity(&phi);
        cur = hn.act_action(&cur)?;
        h = hn.compose(&h)?;
        steps.push(LinearizationStep { degree: n, phi });
    }
    Ok((h, cur, steps))
}

/// Normal form of the twist of a one-parameter action (`p = ℝ`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneDimNormalForm {
    pub input: ActionData,
    pub output: ActionData,
    pub gauge: JetElement,
    pub steps: Vec<GaugeStep>,
}

impl OneDimNormalForm {
    pub fn replay(&self) -> Result<ActionData> {
        let mut a = self.input.clone();
        for s in &self.steps {
            a = a.gauge(&s.xi)?;
        }
        Ok(a)
    }

    pub fn twist(&self) -> &JetElement {
        &self.output.sigma[0]
    }
}

fn require_one_dim(a: &ActionData) -> Result<()> {
    if a.p.dim() != 1 {
        return Err(JetError::Precondition("the acting algebra must be one-dimensional".into()));
    }
    Ok(())
}

/// Killing-orthogonal complement of `t` in `k`.
pub fn torus_complement(k: &LieAlgebra, torus: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let kappa = k.killing_matrix();
    let forms: Vec<Vec<Q>> = torus.iter().map(|t| kappa.mul_vec(t)).collect();
    annihilator(k.dim(), &forms)
}

/// Basis of `Pⁿ(V) ⊗ W` for a subspace `W ⊆ k`, as coordinate vectors on `Pⁿ(V) ⊗ k`.
fn tensor_basis(d: usize, n: usize, kd: usize, w: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let pm = monomials_of_degree(d, n).len();
    let mut out = Vec::new();
    for m in 0..pm {
        for b in w {
            let mut v = vec![Q::zero(); pm * kd];
            v[m * kd..(m + 1) * kd].clone_from_slice(b);
            out.push(v);
        }
    }
    out
}

/// Gauges the twist of a one-parameter action into `R ⊗ t`, provided that
/// `−L_{v_l} + ad σ₀` is invertible on `Pⁿ(V) ⊗ t^⊥` for `n = 1..=N`.
pub fn normalize_twist_oned_torus(a: &ActionData, cartan: &CartanData) -> Result<OneDimNormalForm> {
    require_one_dim(a)?;
    let k = &a.k;
    let (d, order, kd) = (a.dim(), a.order(), k.dim());
    let torus = &cartan.torus;
    let s0 = &a.sigma0()[0];
    let t_span = span_basis(kd, torus);
    if !crate::linalg::span_contains(kd, &t_span, std::slice::from_ref(s0)) {
        return Err(JetError::Precondition("constant part of the twist is not in the torus".into()));
    }
    let comp = torus_complement(k, torus);
    let mut cur = a.clone();
    let mut steps = Vec::new();
    for n in 1..=order {
        let module = degree_module(a, n)?;
        let op = &module.action()[0];
        let bt = tensor_basis(d, n, kd, &t_span);
        let bc = tensor_basis(d, n, kd, &comp);
        let dim = module.dim();
        let bcm = Mat::from_cols(dim, &bc);
        let opc = op * &bcm;
        if opc.rank() < bc.len() {
            return Err(JetError::ResonantDegree { degree: n });
        }
        let target = cur.sigma[0].homogeneous_coords(n);
        let basis: Vec<Vec<Q>> = bt.iter().chain(&bc).cloned().collect();
        let c = coordinates(dim, &basis, &target).expect("t and its complement span k");
        let perp = combo(dim, &bc, &c[bt.len()..]);
        if perp.iter().all(Zero::is_zero) {
            continue;
        }
        // σ_n − D₀ξ keeps only the torus part when D₀ξ equals the complement part.
        let y = opc.solve(&perp).expect("operator preserves the complement and is invertible there");
        let xi = JetElement::from_homogeneous_coords(d, order, kd, n, &bcm.mul_vec(&y));
        cur = cur.gauge(&xi)?;
        steps.push(GaugeStep { degree: n, xi });
    }
    let gauge = compose_steps(k, a, &steps)?;
    Ok(OneDimNormalForm { input: a.clone(), output: cur, gauge, steps })
}

/// Whether every homogeneous part of `xi` lies in `R ⊗ W`.
pub fn jet_in_subalgebra(xi: &JetElement, w: &[Vec<Q>]) -> bool {
    let kd = xi.kdim();
    (0..=xi.order()).all(|n| {
        let c = xi.homogeneous_coords(n);
        c.chunks(kd).all(|chunk| crate::linalg::span_contains(kd, w, &[chunk.to_vec()]))
    })
}

/// Gauges the twist so that `−L_{v_l}ν + [σ₀, ν] = 0`, by splitting each
/// degree along the image and kernel of the semisimple operator `D₀`.
pub fn normalize_twist_oned_equivariant(a: &ActionData) -> Result<OneDimNormalForm> {
    require_one_dim(a)?;
    if !is_semisimple_matrix(&a.v_lin()[0]) {
        return Err(JetError::NotSemisimpleLinearPart);
    }
    let (d, order, kd) = (a.dim(), a.order(), a.k.dim());
    let mut cur = a.clone();
    let mut steps = Vec::new();
    for n in 1..=order {
        let module = degree_module(a, n)?;
        let op = &module.action()[0];
        if !is_semisimple_matrix(op) {
            return Err(JetError::Precondition(format!("−L_v + ad σ0 is not semisimple in degree {n}")));
        }
        let dim = module.dim();
        let (img, ker) = op.image_and_kernel();
        let target = cur.sigma[0].homogeneous_coords(n);
        let basis: Vec<Vec<Q>> = img.iter().chain(&ker).cloned().collect();
        let c = coordinates(dim, &basis, &target).expect("semisimple operator splits its domain");
        let removed = combo(dim, &img, &c[..img.len()]);
        if removed.iter().all(Zero::is_zero) {
            continue;
        }
        let xi = op.solve(&removed).expect("removed part lies in the image");
        let xi = JetElement::from_homogeneous_coords(d, order, kd, n, &xi);
        cur = cur.gauge(&xi)?;
        steps.push(GaugeStep { degree: n, xi });
    }
    let gauge = compose_steps(&a.k, a, &steps)?;
    Ok(OneDimNormalForm { input: a.clone(), output: cur, gauge, steps })
}

/// `−L_{v_l}ν + [σ₀, ν]` for a one-parameter lift.
pub fn equivariance_defect(a: &ActionData, nu: &JetElement) -> Result<JetElement> {
    let vl = FormalVectorField::linear(&a.v_lin()[0], a.order());
    let s0 = JetElement::constant(a.dim(), a.order(), &a.sigma0()[0]);
    Ok(nu.lie_derivative(&vl)?.neg().add(&s0.bracket(nu, &a.k)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusReduction {
    pub reduces_to_constant: bool,
    /// Degrees `n ≥ 1` whose component of `ν` is nonzero (hence not central).
    pub offending_degrees: Vec<usize>,
    /// `Some(true)` when all eigenvalues of `v_l` and `ad σ₀` are exact
    /// elements of `iℤ`, `Some(false)` when some exact eigenvalue is not,
    /// `None` when a spectrum is not exact.
    pub spectra_in_i_z: Option<bool>,
}

/// Checks whether an equivariant twist reduces to its constant part. In a
/// centerless `k`, `[f⊗X, ·] = 0` on `g_n` forces `f⊗X = 0`, so centrality of
/// `j^nν − σ₀` is the vanishing of the higher components.
pub fn torus_reduction_check(a: &ActionData, nu: &JetElement) -> Result<TorusReduction> {
    require_one_dim(a)?;
    let offending: Vec<usize> = (1..=nu.order()).filter(|&n| !nu.homogeneous(n).is_zero()).collect();
    let in_iz = |m: &QMat| -> Option<bool> {
        let s = spectrum(m, SpectrumMode::Exact, 0.0).ok()?;
        Some(s.exact_values()?.iter().all(|z| z.re.is_zero() && z.im.is_integer()))
    };
    let ad = a.k.ad_matrix(&a.sigma0()[0]);
    let spectra = match (in_iz(&a.v_lin()[0]), in_iz(&ad)) {
        (Some(x), Some(y)) => Some(x && y),
        _ => None,
    };
    Ok(TorusReduction { reduces_to_constant: offending.is_empty(), offending_degrees: offending, spectra_in_i_z: spectra })
}

/// Dimension of the 2-cochain space of the degree-`n` module, for reports.
pub fn obstruction_space_dim(a: &ActionData, n: usize) -> Result<usize> {
    Ok(cochain_dim(&degree_module(a, n)?, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::unit;
    use crate::ring::TruncSeries;
    use crate::rational::q;

    fn x(d: usize, n: usize, i: usize) -> TruncSeries {
        TruncSeries::var(d, n, i)
    }

    #[test]
    fn pd_removes_nonresonant_terms() {
        let t = x(1, 3, 0);
        let v = FormalVectorField::new(vec![t.scale(&q(2)).add(&t.pow(2))]).unwrap();
        let pd = poincare_dulac(&v).unwrap();
        assert_eq!(pd.normal_form, v.linear_field());
        assert_eq!(pd.diffeo.act_field(&v).unwrap(), pd.normal_form);
    }

    #[test]
    fn pd_keeps_resonant_terms() {
        let (xx, yy) = (x(2, 3, 0), x(2, 3, 1));
        let v = FormalVectorField::new(vec![xx.clone(), yy.scale(&q(2)).add(&xx.pow(2))]).unwrap();
        let pd = poincare_dulac(&v).unwrap();
        assert_eq!(pd.normal_form, v);
        assert!(commutes_with_semisimple_part(&pd.normal_form).unwrap());
    }

    #[test]
    fn resonance_detection() {
        assert!(!is_resonance_free(&Mat::diag(&[q(1), q(3)]), 3).resonance_free);
        assert_eq!(is_resonance_free(&Mat::diag(&[q(1), q(3)]), 3).first_resonant_degree, Some(3));
        assert_eq!(is_resonance_free(&Mat::zeros(2, 2), 3).first_resonant_degree, Some(2));
        assert_eq!(is_resonance_free(&Mat::diag(&[q(1), q(-1)]), 3).first_resonant_degree, Some(3));
        assert!(is_resonance_free(&Mat::diag(&[q(2), q(3)]), 2).resonance_free);
    }

    #[test]
    fn constant_homomorphism_twist_has_zero_residual() {
        let su2 = LieAlgebra::su2();
        let mut a = ActionData::linear(su2.clone(), su2.clone(), &vec![Mat::zeros(2, 2); 3], 2).unwrap();
        let ident: Vec<JetElement> = (0..3).map(|i| JetElement::constant(2, 2, &unit(3, i))).collect();
        a = a.with_sigma(ident).unwrap();
        assert!(mc_residual(&a).unwrap().is_zero());
        // e1 ↦ e1, e2 ↦ e1, e3 ↦ 0 is not a homomorphism.
        let bad = vec![
            JetElement::constant(2, 2, &unit(3, 0)),
            JetElement::constant(2, 2, &unit(3, 0)),
            JetElement::zero(2, 2, 3),
        ];
        let res = mc_residual(&a.with_sigma(bad).unwrap()).unwrap();
        // −σ([e1,e2]) + [σ(e1),σ(e2)] = −σ(e3) + [e1,e1] = 0; −σ([e2,e3]) = −e1.
        assert!(res.pair(0, 1).is_zero());
        assert_eq!(res.pair(1, 2), &JetElement::constant(2, 2, &unit(3, 0)).neg());
    }

    #[test]
    fn abelian_obstruction() {
        let p = LieAlgebra::abelian(2);
        let k = LieAlgebra::su2();
        let a = ActionData::linear(p, k, &[Mat::zeros(1, 1), Mat::zeros(1, 1)], 2).unwrap();
        let t = x(1, 2, 0);
        let a = a.with_sigma(vec![JetElement::simple(&t, &unit(3, 0)), JetElement::simple(&t, &unit(3, 1))]).unwrap();
        match mc_obstruction_lift(&a, 2).unwrap() {
            LiftOutcome::Obstruction { degree, cocycle } => {
                assert_eq!(degree, 2);
                assert!(cocycle.iter().any(|c| !c.is_zero()));
            }
            other => panic!("expected obstruction, got {other:?}"),
        }
    }

    #[test]
    fn oned_torus_removes_root_components() {
        let k = LieAlgebra::su2();
        let a = ActionData::linear(LieAlgebra::abelian(1), k.clone(), &[Mat::identity(1)], 3).unwrap();
        let a = a.with_sigma(vec![JetElement::simple(&x(1, 3, 0), &unit(3, 1))]).unwrap();
        let cd = k.cartan_data(&k.default_torus().unwrap()).unwrap();
        let nf = normalize_twist_oned_torus(&a, &cd).unwrap();
        assert!(nf.twist().is_zero());
        assert_eq!(nf.replay().unwrap(), nf.output);
    }

    #[test]
    fn oned_torus_detects_resonance() {
        let k = LieAlgebra::su2();
        let rot = Mat::from_rows(vec![vec![q(0), q(1)], vec![q(-1), q(0)]]);
        let a = ActionData::linear(LieAlgebra::abelian(1), k.clone(), &[rot], 2).unwrap();
        let a = a.with_sigma(vec![JetElement::constant(2, 2, &unit(3, 0))]).unwrap();
        let cd = k.cartan_data(&k.default_torus().unwrap()).unwrap();
        assert_eq!(normalize_twist_oned_torus(&a, &cd), Err(JetError::ResonantDegree { degree: 1 }));
    }
}
