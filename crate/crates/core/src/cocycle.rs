//! Functionals `λ` on `Ω¹_{R_N}`, the cocycles `ω(ξ,η) = λ(κ(ξ, dη))` they
//! induce on `g_N`, and the quadratic form `q(f) = λ(L_v f · df)`.
//!
//! `λ` is a dense coefficient vector on the basis `(m, μ) ↦ m·dx_μ`, with
//! monomials `m` of degree `≤ N` in graded order and `μ` varying fastest.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num::{Integer, One, Signed, Zero};

use crate::error::{JetError, Result};
use crate::jetlie::JetElement;
use crate::liealg::{axis_split, chevalley_jordan, LieAlgebra};
use crate::linalg::{annihilator, inertia, negative_direction, span_basis, span_contains, span_rank, Inertia, Mat, QMat};
use crate::lp::feasible_point;
use crate::poly::charpoly;
use crate::rational::{lcm_of_denominators, q_to_f64, Q};
use crate::ring::{lie_derivative_matrix_on_degree, monomials_up_to, FormalVectorField, MultiIndex, OneForm, TruncSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleFunctional {
    pub dim: usize,
    pub order: usize,
    pub coeffs: Vec<Q>,
}

/// Number of basis one-forms of `Ω¹_{R_N}`.
pub fn form_space_dim(dim: usize, order: usize) -> usize {
    monomials_up_to(dim, order).len() * dim
}

/// `d(m)` truncated at order `N`, for a monomial of degree up to `N+1`.
fn d_monomial(dim: usize, order: usize, m: &MultiIndex) -> OneForm {
    let f = TruncSeries::monomial(dim, order + 1, m.clone(), Q::one());
    f.exterior_d().jet_project(order).expect("order + 1 > order")
}

/// All basis one-forms `m·dx_μ` in index order.
fn basis_forms(dim: usize, order: usize) -> Vec<OneForm> {
    let mut out = Vec::new();
    for m in monomials_up_to(dim, order) {
        for mu in 0..dim {
            out.push(OneForm::basic(TruncSeries::monomial(dim, order, m.clone(), Q::one()), mu));
        }
    }
    out
}

/// Rows `λ ↦ λ(df)` for monomials `f` of degree `1..=N+1`.
fn closedness_rows(dim: usize, order: usize) -> Vec<Vec<Q>> {
    monomials_up_to(dim, order + 1)
        .into_iter()
        .filter(|m| m.degree() > 0)
        .map(|m| d_monomial(dim, order, &m).dense_coords())
        .collect()
}

/// Rows `λ ↦ λ(L_v α)` for basis forms `α`.
fn invariance_rows(v: &FormalVectorField) -> Result<Vec<Vec<Q>>> {
    basis_forms(v.dim(), v.order())
        .iter()
        .map(|a| Ok(v.lie_derivative_form(a)?.dense_coords()))
        .collect()
}

impl CocycleFunctional {
    pub fn new(dim: usize, order: usize, coeffs: Vec<Q>) -> Result<Self> {
        let n = form_space_dim(dim, order);
        if coeffs.len() != n {
            return Err(JetError::DimensionMismatch { expected: n, found: coeffs.len() });
        }
        Ok(CocycleFunctional { dim, order, coeffs })
    }

    pub fn zero(dim: usize, order: usize) -> Self {
        CocycleFunctional { dim, order, coeffs: vec![Q::zero(); form_space_dim(dim, order)] }
    }

    /// `λ(m·dx_μ)`.
    pub fn value_on(&self, m: &MultiIndex, mu: usize) -> Q {
        let idx = monomials_up_to(self.dim, self.order).iter().position(|x| x == m);
        idx.map_or_else(Q::zero, |i| self.coeffs[i * self.dim + mu].clone())
    }

    pub fn eval(&self, alpha: &OneForm) -> Q {
        alpha.dense_coords().iter().zip(&self.coeffs).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, c: &Q) -> Self {
        CocycleFunctional { coeffs: self.coeffs.iter().map(|x| x * c).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        CocycleFunctional { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `λ(df) = 0` for all `f` (checked on monomials of degree `≤ N+1`).
    pub fn is_closed(&self) -> bool {
        closedness_rows(self.dim, self.order).iter().all(|r| dot(r, &self.coeffs).is_zero())
    }

    /// First basis form `α` with `λ(L_v α) ≠ 0`, if any.
    pub fn invariance_witness(&self, v: &FormalVectorField) -> Result<Option<usize>> {
        Ok(invariance_rows(v)?.iter().position(|r| !dot(r, &self.coeffs).is_zero()))
    }

    pub fn is_invariant(&self, v: &FormalVectorField) -> Result<bool> {
        Ok(self.invariance_witness(v)?.is_none())
    }
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Basis of the closed functionals invariant under every field in `fields`.
pub fn admissible_lambda_basis(dim: usize, order: usize, fields: &[FormalVectorField]) -> Result<Vec<CocycleFunctional>> {
    let mut rows = closedness_rows(dim, order);
    for v in fields {
        if v.dim() != dim {
            return Err(JetError::DimensionMismatch { expected: dim, found: v.dim() });
        }
        if v.order() != order {
            return Err(JetError::OrderMismatch { expected: order, found: v.order() });
        }
        rows.extend(invariance_rows(v)?);
    }
    let n = form_space_dim(dim, order);
    let m = if rows.is_empty() { Mat::zeros(0, n) } else { Mat::from_rows(rows) };
    Ok(m.kernel().into_iter().map(|c| CocycleFunctional { dim, order, coeffs: c }).collect())
}

/// Flips each basis element whose Gram matrix is negative semidefinite and
/// nonzero, so that `q ≥ 0` wherever an orientation makes it so.
pub fn orient_psd(basis: Vec<CocycleFunctional>, v: &FormalVectorField) -> Result<Vec<CocycleFunctional>> {
    basis
        .into_iter()
        .map(|l| {
            let g = gram(&l, v)?;
            let i = inertia(&g.matrix);
            Ok(if i.positive == 0 && i.negative > 0 { l.scale(&-Q::one()) } else { l })
        })
        .collect()
}

/// `ω(ξ, η) = λ(Σ_{a,b} κ_ab ξ_a dη_b)`.
pub fn cocycle_eval(lambda: &CocycleFunctional, k: &LieAlgebra, xi: &JetElement, eta: &JetElement) -> Q {
    let kappa = k.killing_matrix();
    let mut acc = Q::zero();
    for (a, xa) in xi.comps().iter().enumerate() {
        if xa.is_zero() {
            continue;
        }
        for (b, eb) in eta.comps().iter().enumerate() {
            let kab = &kappa[(a, b)];
            if kab.is_zero() || eb.is_zero() {
                continue;
            }
            acc += kab * lambda.eval(&OneForm::f_dg(xa, eb));
        }
    }
    acc
}

/// `q(f) = λ(L_v f · df)`.
pub fn quadratic_form(lambda: &CocycleFunctional, v: &FormalVectorField, f: &TruncSeries) -> Result<Q> {
    Ok(lambda.eval(&OneForm::f_dg(&v.lie_derivative_fn(f)?, f)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticFormData {
    /// `β(m_i, m_j) = λ(L_v(m_i) d m_j)` on the monomial basis of `R_N`.
    pub matrix: QMat,
    pub basis: Vec<MultiIndex>,
    pub inertia: Inertia,
}

/// Gram matrix of `β_q`; fails with the first asymmetric pair.
pub fn gram(lambda: &CocycleFunctional, v: &FormalVectorField) -> Result<QuadraticFormData> {
    let basis = monomials_up_to(lambda.dim, lambda.order);
    let (d, n) = (lambda.dim, lambda.order);
    let mons: Vec<TruncSeries> = basis.iter().map(|m| TruncSeries::monomial(d, n, m.clone(), Q::one())).collect();
    let lv: Vec<TruncSeries> = mons.iter().map(|f| v.lie_derivative_fn(f)).collect::<Result<_>>()?;
    let dm: Vec<OneForm> = mons.iter().map(TruncSeries::exterior_d).collect();
    let size = basis.len();
    let matrix = Mat::from_fn(size, size, |i, j| lambda.eval(&dm[j].mul_fn(&lv[i])));
    for i in 0..size {
        for j in i + 1..size {
            if matrix[(i, j)] != matrix[(j, i)] {
                return Err(JetError::AsymmetricForm(i, j));
            }
        }
    }
    let inertia = inertia(&matrix);
    Ok(QuadraticFormData { matrix, basis, inertia })
}

/// Radical `𝒩` of `β_q`, as series; requires a positive semidefinite Gram matrix.
pub fn kernel_n(lambda: &CocycleFunctional, v: &FormalVectorField) -> Result<Vec<TruncSeries>> {
    let g = gram(lambda, v)?;
    if !g.inertia.is_psd() {
        return Err(JetError::IndefiniteForm);
    }
    Ok(g.matrix.kernel().iter().map(|c| TruncSeries::from_dense(lambda.dim, lambda.order, c)).collect())
}

/// Whether products of radical elements stay in the radical (truncated).
pub fn kernel_is_subalgebra(kernel: &[TruncSeries]) -> bool {
    if kernel.is_empty() {
        return true;
    }
    let coords: Vec<Vec<Q>> = kernel.iter().map(TruncSeries::dense_coords).collect();
    let n = coords[0].len();
    let prods: Vec<Vec<Q>> = kernel
        .iter()
        .flat_map(|a| kernel.iter().map(move |b| a.mul(b).dense_coords()))
        .collect();
    span_contains(n, &coords, &prods)
}

/// Basis of the ideal generated by `gens` in `R_N` (dense coordinates).
pub fn ideal_basis(dim: usize, order: usize, gens: &[TruncSeries]) -> Vec<Vec<Q>> {
    let n = monomials_up_to(dim, order).len();
    let mut vs = Vec::new();
    for m in monomials_up_to(dim, order) {
        let mon = TruncSeries::monomial(dim, order, m, Q::one());
        for g in gens {
            let p = mon.mul(g);
            if !p.is_zero() {
                vs.push(p.dense_coords());
            }
        }
    }
    span_basis(n, &vs)
}

/// `J = R·L_v(𝒩)`, truncated.
pub fn vanishing_ideal(lambda: &CocycleFunctional, v: &FormalVectorField) -> Result<Vec<Vec<Q>>> {
    let kernel = kernel_n(lambda, v)?;
    let gens: Vec<TruncSeries> = kernel.iter().map(|f| v.lie_derivative_fn(f)).collect::<Result<_>>()?;
    Ok(ideal_basis(lambda.dim, lambda.order, &gens))
}

/// Real subspace `E ⊆ V` of generalized eigenvectors of `a` whose
/// eigenvalues have nonzero real part.
pub fn e_subspace_linear(a: &QMat) -> Result<Vec<Vec<Q>>> {
    let split = axis_split(&charpoly(a));
    if !split.mixed.is_empty() {
        return Err(JetError::Precondition("spectral splitting is not defined over the rationals".into()));
    }
    Ok(split.off_axis.eval_mat(a).kernel())
}

/// Graded pieces `Eⁿ ⊆ Pⁿ(V)` for `n = 1..=N` (index `n−1`), from the
/// operator `L_{v_l}` on homogeneous polynomials.
pub fn e_subspace_graded(a: &QMat, order: usize) -> Result<Vec<Vec<Vec<Q>>>> {
    (1..=order).map(|n| e_subspace_linear(&lie_derivative_matrix_on_degree(a, n))).collect()
}

/// `E` as series in `R_N`.
pub fn e_subspace_series(a: &QMat, order: usize) -> Result<Vec<TruncSeries>> {
    let d = a.rows();
    let graded = e_subspace_graded(a, order)?;
    Ok(graded
        .iter()
        .enumerate()
        .flat_map(|(i, basis)| basis.iter().map(move |c| TruncSeries::from_homogeneous(d, order, i + 1, c)))
        .collect())
}

/// Whether `λ(L_{v_S} α) = 0` for all basis forms, with a witness index otherwise.
pub fn lambda_ss_check(lambda: &CocycleFunctional, v: &FormalVectorField) -> Result<(bool, Option<usize>)> {
    let (s, _) = chevalley_jordan(&v.linear_part());
    let vs = FormalVectorField::linear(&s, v.order());
    let w = lambda.invariance_witness(&vs)?;
    Ok((w.is_none(), w))
}

/// Whether the span of `sub` lies in the span of `sup` (dense coordinates on `R_N`).
pub fn series_span_contains(sup: &[TruncSeries], sub: &[TruncSeries]) -> bool {
    if sub.is_empty() {
        return true;
    }
    let n = sub[0].dense_coords().len();
    let a: Vec<Vec<Q>> = sup.iter().map(TruncSeries::dense_coords).collect();
    let b: Vec<Vec<Q>> = sub.iter().map(TruncSeries::dense_coords).collect();
    span_contains(n, &a, &b)
}

/// Bound on the cutting-plane rounds of [`find_psd_lambda`].
pub const PSD_SEARCH_ROUNDS: usize = 64;

/// Cuts wider than this many bits end the cutting-plane search.
const PSD_CUT_BITS: u64 = 1024;

/// Outcome of [`find_psd_lambda`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsdSearch {
    Found(CocycleFunctional),
    /// No combination has a nonzero PSD Gram matrix (LP certificate).
    Infeasible,
    /// The search stopped without a verdict.
    Undecided,
}

impl PsdSearch {
    pub fn found(self) -> Option<CocycleFunctional> {
        match self {
            PsdSearch::Found(l) => Some(l),
            _ => None,
        }
    }
}

/// An admissible `λ` in the span of `basis` with positive semidefinite,
/// nonzero Gram matrix.
///
/// Candidates come from rounding the numeric minimizer of `ε` subject to
/// `G(c) + εI ≻ 0`, `tr G(c) = 1`, and are verified exactly. Failing that,
/// exact cutting planes run: an LP finds `c` with `tr G(c) = 1` and
/// `xᵀ G(c) x ≥ 0` on the cuts so far, and each indefinite candidate adds the
/// cut of a negative direction. An infeasible LP proves that no such `λ`
/// exists. The search is undecided after [`PSD_SEARCH_ROUNDS`] rounds or once
/// the cuts outgrow [`PSD_CUT_BITS`].
pub fn find_psd_lambda(basis: &[CocycleFunctional], v: &FormalVectorField) -> Result<PsdSearch> {
    let grams: Vec<QMat> = basis.iter().map(|l| gram(l, v).map(|g| g.matrix)).collect::<Result<_>>()?;
    let Some(n) = grams.first().map(QMat::rows) else { return Ok(PsdSearch::Infeasible) };
    let support: Vec<usize> = (0..n).filter(|&i| grams.iter().any(|g| (0..n).any(|j| !g[(i, j)].is_zero()))).collect();
    // Functionals with linearly independent Grams; the rest add nothing to q.
    let mut picked: Vec<usize> = Vec::new();
    let mut flat: Vec<Vec<Q>> = Vec::new();
    for (i, g) in grams.iter().enumerate() {
        let row: Vec<Q> = support.iter().flat_map(|&a| support.iter().map(move |&b| g[(a, b)].clone())).collect();
        flat.push(row);
        if span_rank(flat[0].len(), &flat) > picked.len() {
            picked.push(i);
        } else {
            flat.pop();
        }
    }
    let grams: Vec<QMat> = picked.iter().map(|&i| grams[i].submatrix(&support, &support)).collect();
    let trace: Vec<Q> = grams.iter().map(QMat::trace).collect();
    if trace.iter().all(Zero::is_zero) {
        // A nonzero PSD matrix has positive trace.
        return Ok(PsdSearch::Infeasible);
    }
    let combine = |c: &[Q]| -> QMat {
        let mut m = QMat::zeros(support.len(), support.len());
        for (g, ci) in grams.iter().zip(c) {
            if !ci.is_zero() {
                m = &m + &g.scale(ci);
            }
        }
        m
    };
    let lambda = |c: &[Q]| -> CocycleFunctional {
        let mut out = basis[picked[0]].scale(&c[0]);
        for (&i, ci) in picked.iter().zip(c).skip(1) {
            out = out.add(&basis[i].scale(ci));
        }
        out
    };
    if let Some(center) = barrier_center(&grams, &trace) {
        for c in roundings(&center) {
            let m = combine(&c);
            if !m.is_zero() && negative_direction(&m).is_none() {
                return Ok(PsdSearch::Found(lambda(&c)));
            }
        }
    }

    let r = grams.len();
    let form = |x: &[Q]| -> Vec<Q> {
        grams.iter().map(|g| g.mul_vec(x).iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    };
    let mut cuts: Vec<Vec<Q>> = (0..support.len()).map(|j| primitive(grams.iter().map(|g| g[(j, j)].clone()).collect())).collect();
    for _ in 0..PSD_SEARCH_ROUNDS {
        // Variables: c⁺ (r), c⁻ (r), one slack per cut.
        let k = cuts.len();
        let mut a = QMat::zeros(k + 1, 2 * r + k);
        let mut b = vec![Q::zero(); k + 1];
        for (row, coeffs) in std::iter::once(&trace).chain(&cuts).enumerate() {
            for (i, x) in coeffs.iter().enumerate() {
                a[(row, i)] = x.clone();
                a[(row, r + i)] = -x.clone();
            }
            if row > 0 {
                a[(row, 2 * r + row - 1)] = -Q::one();
            }
        }
        b[0] = Q::one();
        let Some(sol) = feasible_point(&a, &b) else { return Ok(PsdSearch::Infeasible) };
        let c: Vec<Q> = (0..r).map(|i| &sol[i] - &sol[r + i]).collect();
        match negative_direction(&combine(&c)) {
            None => return Ok(PsdSearch::Found(lambda(&c))),
            Some(x) => {
                let cut = primitive(form(&x));
                if cut.iter().any(|x| x.numer().bits() > PSD_CUT_BITS) {
                    break;
                }
                cuts.push(cut);
            }
        }
    }
    Ok(PsdSearch::Undecided)
}

/// `xs` scaled to coprime integers.
fn primitive(xs: Vec<Q>) -> Vec<Q> {
    let l = Q::from_integer(lcm_of_denominators(&xs));
    let ints: Vec<Q> = xs.iter().map(|x| x * &l).collect();
    let g = ints.iter().fold(num::BigInt::zero(), |g, x| g.gcd(x.numer()));
    if g.is_zero() {
        return ints;
    }
    let g = Q::from_integer(g);
    ints.iter().map(|x| x / &g).collect()
}

/// Numeric minimizer `c` of `ε` subject to `Σ c_i G_i + εI ≻ 0` and
/// `Σ c_i tr G_i = 1`, by a log-det barrier with Newton steps.
fn barrier_center(grams: &[QMat], trace: &[Q]) -> Option<Vec<f64>> {
    let n = grams[0].rows();
    let to_f = |m: &QMat| DMatrix::from_fn(n, n, |i, j| q_to_f64(&m[(i, j)]));
    let gf: Vec<DMatrix<f64>> = grams.iter().map(to_f).collect();
    let tf: Vec<f64> = trace.iter().map(q_to_f64).collect();
    let tt: f64 = tf.iter().map(|x| x * x).sum();
    let c0: Vec<f64> = tf.iter().map(|x| x / tt).collect();
    let dirs: Vec<Vec<f64>> = annihilator(trace.len(), &[trace.to_vec()]).iter().map(|d| d.iter().map(q_to_f64).collect()).collect();
    let pencil = |c: &[f64]| gf.iter().zip(c).fold(DMatrix::zeros(n, n), |acc, (g, ci)| acc + g * *ci);
    // Directions: one per trace-zero direction of c, then ε.
    let mut dmats: Vec<DMatrix<f64>> = dirs.iter().map(|d| pencil(d)).collect();
    dmats.push(DMatrix::identity(n, n));
    let m = dmats.len();
    let g0 = pencil(&c0);
    let lmin = SymmetricEigen::new(g0.clone()).eigenvalues.min();
    let mut z = vec![0.0; m];
    z[m - 1] = (-lmin).max(0.0) + 1.0;
    let at = |z: &[f64]| dmats.iter().zip(z).fold(g0.clone(), |acc, (d, zi)| acc + d * *zi);
    let value = |z: &[f64], tau: f64| -> Option<f64> {
        let chol = nalgebra::Cholesky::new(at(z))?;
        let logdet: f64 = chol.l().diagonal().iter().map(|x| 2.0 * x.ln()).sum();
        Some(tau * z[m - 1] - logdet)
    };
    let mut tau = 1.0;
    while (n as f64) / tau > 1e-11 {
        for _ in 0..100 {
            let minv = nalgebra::Cholesky::new(at(&z))?.inverse();
            let prods: Vec<DMatrix<f64>> = dmats.iter().map(|d| &minv * d).collect();
            let mut grad = DVector::from_fn(m, |k, _| -prods[k].trace());
            grad[m - 1] += tau;
            let hess = DMatrix::from_fn(m, m, |k, l| (&prods[k] * &prods[l]).trace());
            let step = hess.lu().solve(&(-&grad))?;
            let decrement = -grad.dot(&step);
            if decrement < 1e-12 {
                break;
            }
            let f = value(&z, tau)?;
            let mut alpha = 1.0;
            loop {
                let trial: Vec<f64> = z.iter().zip(step.iter()).map(|(a, b)| a + alpha * b).collect();
                if value(&trial, tau).is_some_and(|ft| ft <= f - 0.25 * alpha * decrement) {
                    z = trial;
                    break;
                }
                alpha /= 2.0;
                if alpha < 1e-12 {
                    return None;
                }
            }
        }
        tau *= 8.0;
    }
    let mut c = c0;
    for (d, zi) in dirs.iter().zip(&z) {
        for (ci, di) in c.iter_mut().zip(d) {
            *ci += zi * di;
        }
    }
    Some(c)
}

/// Rational approximations of `c`, scaled to unit max norm, by increasing
/// denominator.
fn roundings(c: &[f64]) -> Vec<Vec<Q>> {
    let scale = c.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if !(scale > 0.0) || !scale.is_finite() {
        return Vec::new();
    }
    let dens = (1..=64).chain((3..=9).map(|e| 10i64.pow(e)));
    let mut out: Vec<Vec<Q>> = Vec::new();
    for den in dens {
        let cand: Vec<Q> = c.iter().map(|x| Q::new(num::BigInt::from(((x / scale) * den as f64).round() as i64), den.into())).collect();
        if cand.iter().any(|x| !x.is_zero()) && out.last() != Some(&cand) {
            out.push(cand);
        }
    }
    out
}

/// Sign of `q` on a basis: `(min, max)` of the diagonal, for reports.
pub fn diagonal_range(g: &QuadraticFormData) -> Option<(Q, Q)> {
    let diag: Vec<Q> = (0..g.matrix.rows()).map(|i| g.matrix[(i, i)].clone()).collect();
    let min = diag.iter().min()?.clone();
    let max = diag.iter().max()?.clone();
    debug_assert!(!min.is_positive() || !max.is_negative());
    Some((min, max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::unit;
    use crate::rational::q;

    fn rotation(order: usize) -> FormalVectorField {
        let (x, y) = (TruncSeries::var(2, order, 0), TruncSeries::var(2, order, 1));
        FormalVectorField::new(vec![y, x.neg()]).unwrap()
    }

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    #[test]
    fn rotation_admits_one_functional_in_degree_one() {
        let basis = admissible_lambda_basis(2, 1, &[rotation(1)]).unwrap();
        assert_eq!(basis.len(), 1);
        let l = &basis[0];
        assert_eq!(l.value_on(&mi(&[0, 1]), 0), q(1));
        assert_eq!(l.value_on(&mi(&[1, 0]), 1), q(-1));
        assert!(l.is_closed());
    }

    #[test]
    fn closedness_counts() {
        assert!(admissible_lambda_basis(2, 0, &[]).unwrap().is_empty());
        assert_eq!(admissible_lambda_basis(3, 1, &[]).unwrap().len(), 3);
        let euler = FormalVectorField::linear(&Mat::identity(1), 2);
        assert!(admissible_lambda_basis(1, 2, &[euler]).unwrap().is_empty());
    }

    #[test]
    fn quadratic_form_of_the_rotation() {
        let v = rotation(1);
        let l = admissible_lambda_basis(2, 1, std::slice::from_ref(&v)).unwrap().remove(0);
        let (x, y) = (TruncSeries::var(2, 1, 0), TruncSeries::var(2, 1, 1));
        for (a, b) in [(1, 0), (0, 1), (2, -3), (5, 7)] {
            let f = x.scale(&q(a)).add(&y.scale(&q(b)));
            assert_eq!(quadratic_form(&l, &v, &f).unwrap(), q(a * a + b * b));
        }
        assert!(quadratic_form(&l, &v, &TruncSeries::one(2, 1)).unwrap().is_zero());
        let kernel = kernel_n(&l, &v).unwrap();
        assert_eq!(kernel.len(), 1);
        assert!(kernel_is_subalgebra(&kernel));
    }

    #[test]
    fn cocycle_value_on_the_rotation_example() {
        let v = rotation(1);
        let l = admissible_lambda_basis(2, 1, &[v]).unwrap().remove(0);
        let k = LieAlgebra::su2();
        let xi = JetElement::simple(&TruncSeries::var(2, 1, 0), &unit(3, 0));
        let eta = JetElement::simple(&TruncSeries::var(2, 1, 1), &unit(3, 0));
        assert_eq!(cocycle_eval(&l, &k, &xi, &eta), q(2));
        assert_eq!(cocycle_eval(&l, &k, &xi, &xi), q(0));
    }

    #[test]
    fn vanishing_ideal_of_euler_field() {
        let v = FormalVectorField::linear(&Mat::identity(1), 3);
        let j = vanishing_ideal(&CocycleFunctional::zero(1, 3), &v).unwrap();
        let x = TruncSeries::var(1, 3, 0);
        let expected = ideal_basis(1, 3, &[x]);
        assert_eq!(j.len(), expected.len());
        assert!(span_contains(4, &j, &expected));
    }

    #[test]
    fn e_subspaces() {
        assert_eq!(e_subspace_linear(&Mat::diag(&[q(1), q(-1)])).unwrap().len(), 2);
        let rot = Mat::from_rows(vec![vec![q(0), q(-1)], vec![q(1), q(0)]]);
        assert!(e_subspace_linear(&rot).unwrap().is_empty());
        assert_eq!(e_subspace_linear(&Mat::diag(&[q(1), q(0)])).unwrap(), vec![vec![q(1), q(0)]]);
    }

    #[test]
    fn non_invariant_functionals_fail_the_semisimple_check() {
        let v = rotation(1);
        let mut l = CocycleFunctional::zero(2, 1);
        assert_eq!(lambda_ss_check(&l, &v).unwrap(), (true, None));
        l.coeffs[1] = q(1); // λ(dy) = 1, and L_v(dx) = dy.
        let (ok, w) = lambda_ss_check(&l, &v).unwrap();
        assert!(!ok);
        assert!(w.is_some());
    }

    #[test]
    fn psd_search_outcomes() {
        let hyper = FormalVectorField::linear(&Mat::diag(&[q(1), q(-1)]), 1);
        let basis = admissible_lambda_basis(2, 1, std::slice::from_ref(&hyper)).unwrap();
        assert_eq!(find_psd_lambda(&basis, &hyper).unwrap(), PsdSearch::Infeasible);

        let mut a = Mat::zeros(4, 4);
        a[(0, 1)] = q(-1);
        a[(1, 0)] = q(1);
        a[(2, 2)] = q(2);
        a[(3, 3)] = q(-2);
        let v = FormalVectorField::linear(&a, 1);
        let basis = admissible_lambda_basis(4, 1, std::slice::from_ref(&v)).unwrap();
        assert_eq!(basis.len(), 2);
        let l = find_psd_lambda(&basis, &v).unwrap().found().unwrap();
        let g = gram(&l, &v).unwrap();
        assert!(g.inertia.is_psd() && g.inertia.positive > 0);
    }
}
