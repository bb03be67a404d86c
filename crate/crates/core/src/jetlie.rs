//! The jet Lie algebra `g_N = R_N ⊗ k`, lifts `D(p) = −L_{v(p)} + ad σ(p)`,
//! gauge transformations and formal diffeomorphisms.
//!
//! Conventions:
//!
//! * `v` is an anti-homomorphism into vector fields,
//!   `v([p,q]) = −[v(p), v(q)]`, so that `p ↦ −L_{v(p)}` is a homomorphism.
//!   A linear field `x ↦ Ax` satisfies `[v_A, v_B] = −v_{[A,B]}`, hence a
//!   matrix representation `p ↦ A(p)` gives a valid `p ↦ v_{A(p)}`.
//! * A gauge transformation with log coordinate `ξ ∈ I ⊗ k` conjugates
//!   `D(p)` by `e^{ad ξ}`; the new twist is
//!   `e^{ad ξ}σ + F(ad ξ)(−L_v ξ)` with `F(w) = −Σ_{m≥0} wᵐ/(m+1)!`.
//! * Formal diffeomorphisms act on series by `f ↦ f∘h⁻¹` and on vector
//!   fields by push-forward.
//!
//! All exponential-type series terminate: `ad ξ` raises the order of
//! vanishing by at least one, so at most `N` terms are nonzero.

use num::{One, Zero};

use crate::error::{JetError, Result};
use crate::liealg::LieAlgebra;
use crate::linalg::{Mat, QMat};
use crate::rational::{factorial, q, Q};
use crate::ring::{monomials_of_degree, FormalVectorField, MultiIndex, TruncSeries};

/// Element `Σ_a ξ_a ⊗ e_a` of `R_N ⊗ k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct JetElement {
    comps: Vec<TruncSeries>,
}

impl JetElement {
    pub fn new(comps: Vec<TruncSeries>) -> Result<Self> {
        if let Some(first) = comps.first() {
            for c in &comps {
                if c.dim() != first.dim() {
                    return Err(JetError::DimensionMismatch { expected: first.dim(), found: c.dim() });
                }
                if c.order() != first.order() {
                    return Err(JetError::OrderMismatch { expected: first.order(), found: c.order() });
                }
            }
        }
        Ok(JetElement { comps })
    }

    pub fn zero(dim: usize, order: usize, kdim: usize) -> Self {
        JetElement { comps: vec![TruncSeries::zero(dim, order); kdim] }
    }

    /// Constant element `1 ⊗ X`.
    pub fn constant(dim: usize, order: usize, x: &[Q]) -> Self {
        JetElement { comps: x.iter().map(|c| TruncSeries::constant(dim, order, c.clone())).collect() }
    }

    /// `f ⊗ X`.
    pub fn simple(f: &TruncSeries, x: &[Q]) -> Self {
        JetElement { comps: x.iter().map(|c| f.scale(c)).collect() }
    }

    pub fn comps(&self) -> &[TruncSeries] {
        &self.comps
    }

    pub fn kdim(&self) -> usize {
        self.comps.len()
    }

    pub fn dim(&self) -> usize {
        self.comps[0].dim()
    }

    pub fn order(&self) -> usize {
        self.comps[0].order()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(TruncSeries::is_zero)
    }

    pub fn ev0(&self) -> Vec<Q> {
        self.comps.iter().map(TruncSeries::ev0).collect()
    }

    pub fn has_constant_term(&self) -> bool {
        self.comps.iter().any(|c| !c.ev0().is_zero())
    }

    pub fn valuation(&self) -> Option<usize> {
        self.comps.iter().filter_map(TruncSeries::valuation).min()
    }

    fn map(&self, f: impl Fn(&TruncSeries) -> TruncSeries) -> Self {
        JetElement { comps: self.comps.iter().map(f).collect() }
    }

    fn zip(&self, other: &Self, f: impl Fn(&TruncSeries, &TruncSeries) -> TruncSeries) -> Self {
        JetElement { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, TruncSeries::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, TruncSeries::sub)
    }

    pub fn neg(&self) -> Self {
        self.map(TruncSeries::neg)
    }

    pub fn scale(&self, a: &Q) -> Self {
        self.map(|c| c.scale(a))
    }

    /// `f·ξ`.
    pub fn mul_fn(&self, f: &TruncSeries) -> Self {
        self.map(|c| c.mul(f))
    }

    pub fn homogeneous(&self, n: usize) -> Self {
        self.map(|c| c.homogeneous(n))
    }

    pub fn tail_from(&self, n: usize) -> Self {
        self.map(|c| c.tail_from(n))
    }

    pub fn with_order(&self, order: usize) -> Self {
        self.map(|c| c.with_order(order))
    }

    pub fn jet_project(&self, k: usize) -> Result<Self> {
        Ok(JetElement { comps: self.comps.iter().map(|c| c.jet_project(k)).collect::<Result<_>>()? })
    }

    /// Componentwise `L_v`.
    pub fn lie_derivative(&self, v: &FormalVectorField) -> Result<Self> {
        Ok(JetElement { comps: self.comps.iter().map(|c| v.lie_derivative_fn(c)).collect::<Result<_>>()? })
    }

    /// `[f⊗X, g⊗Y] = fg ⊗ [X,Y]`, extended bilinearly.
    pub fn bracket(&self, other: &Self, k: &LieAlgebra) -> Result<Self> {
        if self.kdim() != k.dim() || other.kdim() != k.dim() {
            return Err(JetError::DimensionMismatch { expected: k.dim(), found: other.kdim() });
        }
        if self.dim() != other.dim() {
            return Err(JetError::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        if self.order() != other.order() {
            return Err(JetError::OrderMismatch { expected: self.order(), found: other.order() });
        }
        let mut out = JetElement::zero(self.dim(), self.order(), k.dim());
        for (a, xa) in self.comps.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in other.comps.iter().enumerate() {
                if b == a || yb.is_zero() {
                    continue;
                }
                let c = k.basis_bracket(a, b);
                if c.iter().all(Zero::is_zero) {
                    continue;
                }
                let prod = xa.mul(yb);
                for (l, cl) in c.iter().enumerate() {
                    if !cl.is_zero() {
                        out.comps[l] = out.comps[l].add(&prod.scale(cl));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Coordinates of the degree-`n` part on the basis `(monomial, a)` of
    /// `Pⁿ(V) ⊗ k`, with `a` varying fastest.
    pub fn homogeneous_coords(&self, n: usize) -> Vec<Q> {
        let basis = monomials_of_degree(self.dim(), n);
        let mut out = Vec::with_capacity(basis.len() * self.kdim());
        for m in &basis {
            for c in &self.comps {
                out.push(c.coeff(m));
            }
        }
        out
    }

    pub fn from_homogeneous_coords(dim: usize, order: usize, kdim: usize, n: usize, coords: &[Q]) -> Self {
        let basis = monomials_of_degree(dim, n);
        assert_eq!(coords.len(), basis.len() * kdim);
        let mut out = JetElement::zero(dim, order, kdim);
        for (i, m) in basis.iter().enumerate() {
            for (a, comp) in out.comps.iter_mut().enumerate() {
                comp.add_term(m.clone(), coords[i * kdim + a].clone());
            }
        }
        out
    }
}

/// `Σ_{m≥0} c_m ad_ξᵐ(η)`, stopping when the iterate vanishes or the
/// coefficients run out.
fn ad_series(k: &LieAlgebra, xi: &JetElement, eta: &JetElement, coeff: impl Fn(usize) -> Q) -> Result<JetElement> {
    let mut term = eta.clone();
    let mut out = JetElement::zero(eta.dim(), eta.order(), eta.kdim());
    let mut m = 0;
    while !term.is_zero() {
        out = out.add(&term.scale(&coeff(m)));
        term = xi.bracket(&term, k)?;
        m += 1;
        if m > eta.order() + 1 {
            break;
        }
    }
    Ok(out)
}

fn require_nilpotent(xi: &JetElement) -> Result<()> {
    if xi.has_constant_term() {
        Err(JetError::NonzeroConstantTerm)
    } else {
        Ok(())
    }
}

/// `e^{ad ξ}(η)` for `ξ ∈ I ⊗ k`.
pub fn gauge_apply(k: &LieAlgebra, xi: &JetElement, eta: &JetElement) -> Result<JetElement> {
    require_nilpotent(xi)?;
    ad_series(k, xi, eta, |m| Q::new(1.into(), factorial(m)))
}

/// `F(ad ξ)(η)` with `F(w) = −Σ wᵐ/(m+1)!`.
pub fn gauge_f(k: &LieAlgebra, xi: &JetElement, eta: &JetElement) -> Result<JetElement> {
    require_nilpotent(xi)?;
    ad_series(k, xi, eta, |m| -Q::new(1.into(), factorial(m + 1)))
}

/// Twist transformed by the gauge `e^{ad ξ}`: `e^{ad ξ}σ + F(ad ξ)(−L_v ξ)`.
pub fn gauge_twist(k: &LieAlgebra, xi: &JetElement, v: &FormalVectorField, sigma: &JetElement) -> Result<JetElement> {
    let lv = xi.lie_derivative(v)?.neg();
    Ok(gauge_apply(k, xi, sigma)?.add(&gauge_f(k, xi, &lv)?))
}

/// Dynkin coefficients of `log(e^X e^Y)` on right-nested words.
///
/// Word `w` (bit `i` set = letter `Y` at position `i`) contributes
/// `c(w)·[w₀,[w₁,…,w_{L−1}]]`.
pub fn dynkin_coefficients(max_len: usize) -> Vec<(Vec<bool>, Q)> {
    let fact = |n: usize| Q::new(factorial(n), 1.into());
    let mut out = Vec::new();
    for len in 1..=max_len {
        for bits in 0u64..(1u64 << len) {
            let word: Vec<bool> = (0..len).map(|i| bits >> i & 1 == 1).collect();
            // dp[pos][n]: sum over splittings of word[..pos] into n blocks X^r Y^s of Π 1/(r! s!).
            let mut dp = vec![vec![Q::zero(); len + 1]; len + 1];
            dp[0][0] = Q::one();
            for start in 0..len {
                for n in 0..len {
                    if dp[start][n].is_zero() {
                        continue;
                    }
                    let mut r = 0;
                    let mut s = 0;
                    for end in start..len {
                        if word[end] {
                            s += 1;
                        } else if s == 0 {
                            r += 1;
                        } else {
                            break;
                        }
                        let w = dp[start][n].clone() / (fact(r) * fact(s));
                        dp[end + 1][n + 1] += w;
                    }
                }
            }
            let mut c = Q::zero();
            for (n, val) in dp[len].iter().enumerate().skip(1) {
                let sign = if n % 2 == 1 { Q::one() } else { -Q::one() };
                c += sign * val / q(n as i64);
            }
            c /= q(len as i64);
            if !c.is_zero() {
                out.push((word, c));
            }
        }
    }
    out
}

/// `log(e^ξ e^η)` truncated at order `N` (exact on `I ⊗ k`).
pub fn bch(k: &LieAlgebra, xi: &JetElement, eta: &JetElement) -> Result<JetElement> {
    require_nilpotent(xi)?;
    require_nilpotent(eta)?;
    let n = xi.order();
    let mut out = JetElement::zero(xi.dim(), n, xi.kdim());
    let mut memo: std::collections::HashMap<Vec<bool>, JetElement> = std::collections::HashMap::new();
    for (word, c) in dynkin_coefficients(n) {
        let val = nested(k, xi, eta, &word, &mut memo)?;
        if !val.is_zero() {
            out = out.add(&val.scale(&c));
        }
    }
    Ok(out)
}

fn nested(
    k: &LieAlgebra,
    x: &JetElement,
    y: &JetElement,
    word: &[bool],
    memo: &mut std::collections::HashMap<Vec<bool>, JetElement>,
) -> Result<JetElement> {
    if let Some(v) = memo.get(word) {
        return Ok(v.clone());
    }
    let letter = if word[0] { y } else { x };
    let val = if word.len() == 1 {
        letter.clone()
    } else {
        let inner = nested(k, x, y, &word[1..], memo)?;
        if inner.is_zero() {
            inner
        } else {
            letter.bracket(&inner, k)?
        }
    };
    memo.insert(word.to_vec(), val.clone());
    Ok(val)
}

/// Formal diffeomorphism `x ↦ h(x)` fixing the origin.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormalDiffeo {
    comps: Vec<TruncSeries>,
}

impl FormalDiffeo {
    pub fn new(comps: Vec<TruncSeries>) -> Result<Self> {
        let d = comps.len();
        for c in &comps {
            if c.dim() != d {
                return Err(JetError::DimensionMismatch { expected: d, found: c.dim() });
            }
            if !c.ev0().is_zero() {
                return Err(JetError::NonzeroConstantTerm);
            }
        }
        let h = FormalDiffeo { comps };
        if h.linear_part().det().is_zero() {
            return Err(JetError::NotInvertible);
        }
        Ok(h)
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        FormalDiffeo { comps: (0..dim).map(|i| TruncSeries::var(dim, order, i)).collect() }
    }

    pub fn linear(a: &QMat, order: usize) -> Result<Self> {
        let v = FormalVectorField::linear(a, order);
        FormalDiffeo::new(v.comps().to_vec())
    }

    /// `x + p(x)` for a homogeneous polynomial map of degree `≥ 2`.
    pub fn near_identity(p: &FormalVectorField) -> Self {
        let id = FormalDiffeo::identity(p.dim(), p.order());
        FormalDiffeo { comps: id.comps.iter().zip(p.comps()).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn comps(&self) -> &[TruncSeries] {
        &self.comps
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn order(&self) -> usize {
        self.comps[0].order()
    }

    pub fn linear_part(&self) -> QMat {
        let d = self.dim();
        Mat::from_fn(d, d, |i, j| self.comps[i].coeff(&MultiIndex::unit(d, j)))
    }

    /// `h₁ ∘ h₂`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let comps = self.comps.iter().map(|c| c.compose(&other.comps)).collect::<Result<_>>()?;
        Ok(FormalDiffeo { comps })
    }

    /// Compositional inverse, one order of accuracy per Newton-free fixed-point step.
    pub fn invert(&self) -> Result<Self> {
        let (d, n) = (self.dim(), self.order());
        let ainv = self.linear_part().inverse().ok_or(JetError::NotInvertible)?;
        let mut g = FormalDiffeo::linear(&ainv, n)?;
        let id = FormalDiffeo::identity(d, n);
        for _ in 1..n {
            let hg = self.compose(&g)?;
            let defect: Vec<TruncSeries> = hg.comps.iter().zip(&id.comps).map(|(a, b)| a.sub(b)).collect();
            if defect.iter().all(TruncSeries::is_zero) {
                break;
            }
            let corr = apply_matrix(&ainv, &defect);
            g = FormalDiffeo { comps: g.comps.iter().zip(&corr).map(|(a, b)| a.sub(b)).collect() };
        }
        Ok(g)
    }

    /// `f ∘ h⁻¹`.
    pub fn act_series(&self, f: &TruncSeries) -> Result<TruncSeries> {
        f.compose(&self.invert()?.comps)
    }

    pub fn act_jet(&self, xi: &JetElement) -> Result<JetElement> {
        let g = self.invert()?;
        JetElement::new(xi.comps.iter().map(|c| c.compose(&g.comps)).collect::<Result<_>>()?)
    }

    /// Push-forward `(h.v)_i = Σ_j (∂_j h_i ∘ h⁻¹)(v_j ∘ h⁻¹)`.
    pub fn act_field(&self, v: &FormalVectorField) -> Result<FormalVectorField> {
        let g = self.invert()?;
        self.push_with_inverse(v, &g)
    }

    /// `(h.v)(y) = (Dh·v)(h⁻¹(y))`.
    fn push_with_inverse(&self, v: &FormalVectorField, g: &FormalDiffeo) -> Result<FormalVectorField> {
        let d = self.dim();
        let comps = (0..d)
            .map(|i| {
                let mut acc = TruncSeries::zero(d, self.order());
                for (j, vj) in v.comps().iter().enumerate() {
                    if !vj.is_zero() {
                        acc = acc.add(&self.comps[i].partial(j).mul(vj));
                    }
                }
                acc.compose(&g.comps)
            })
            .collect::<Result<_>>()?;
        FormalVectorField::new(comps)
    }

    /// Horizontal automorphism applied to a lift: `v ↦ h.v`, `σ ↦ h.σ`.
    pub fn act_action(&self, a: &ActionData) -> Result<ActionData> {
        let g = self.invert()?;
        let v = a.v.iter().map(|x| self.push_with_inverse(x, &g)).collect::<Result<Vec<_>>>()?;
        let sigma = a
            .sigma
            .iter()
            .map(|s| JetElement::new(s.comps.iter().map(|c| c.compose(&g.comps)).collect::<Result<_>>()?))
            .collect::<Result<Vec<_>>>()?;
        ActionData::new(a.p.clone(), a.k.clone(), v, sigma)
    }
}

fn apply_matrix(a: &QMat, xs: &[TruncSeries]) -> Vec<TruncSeries> {
    (0..a.rows())
        .map(|i| {
            let mut acc = TruncSeries::zero(xs[0].dim(), xs[0].order());
            for (j, x) in xs.iter().enumerate() {
                if !a[(i, j)].is_zero() {
                    acc = acc.add(&x.scale(&a[(i, j)]));
                }
            }
            acc
        })
        .collect()
}

/// A lift of a `p`-action: `v(e_i)` and `σ(e_i)` for the basis of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionData {
    pub p: LieAlgebra,
    pub k: LieAlgebra,
    pub v: Vec<FormalVectorField>,
    pub sigma: Vec<JetElement>,
    sigma0: Vec<Vec<Q>>,
    v_lin: Vec<QMat>,
}

impl ActionData {
    /// Shape checks only; the anti-homomorphism and Maurer–Cartan conditions
    /// are separate checks.
    pub fn new(p: LieAlgebra, k: LieAlgebra, v: Vec<FormalVectorField>, sigma: Vec<JetElement>) -> Result<Self> {
        if v.len() != p.dim() || sigma.len() != p.dim() {
            return Err(JetError::DimensionMismatch { expected: p.dim(), found: v.len().min(sigma.len()) });
        }
        let (d, n) = match v.first() {
            Some(f) => (f.dim(), f.order()),
            None => return Err(JetError::Precondition("p must be nonzero".into())),
        };
        for (f, s) in v.iter().zip(&sigma) {
            if f.dim() != d || s.dim() != d {
                return Err(JetError::DimensionMismatch { expected: d, found: s.dim() });
            }
            if f.order() != n || s.order() != n {
                return Err(JetError::OrderMismatch { expected: n, found: s.order() });
            }
            if s.kdim() != k.dim() {
                return Err(JetError::DimensionMismatch { expected: k.dim(), found: s.kdim() });
            }
        }
        let sigma0 = sigma.iter().map(JetElement::ev0).collect();
        let v_lin = v.iter().map(FormalVectorField::linear_part).collect();
        Ok(ActionData { p, k, v, sigma, sigma0, v_lin })
    }

    /// Linear action from a matrix representation of `p` with zero twist.
    pub fn linear(p: LieAlgebra, k: LieAlgebra, mats: &[QMat], order: usize) -> Result<Self> {
        let d = mats.first().map_or(0, Mat::rows);
        let v = mats.iter().map(|a| FormalVectorField::linear(a, order)).collect();
        let sigma = vec![JetElement::zero(d, order, k.dim()); mats.len()];
        ActionData::new(p, k, v, sigma)
    }

    pub fn dim(&self) -> usize {
        self.v[0].dim()
    }

    pub fn order(&self) -> usize {
        self.v[0].order()
    }

    pub fn sigma0(&self) -> &[Vec<Q>] {
        &self.sigma0
    }

    pub fn v_lin(&self) -> &[QMat] {
        &self.v_lin
    }

    pub fn with_sigma(&self, sigma: Vec<JetElement>) -> Result<Self> {
        ActionData::new(self.p.clone(), self.k.clone(), self.v.clone(), sigma)
    }

    /// `v(p)` for `p = Σ c_i e_i`.
    pub fn field_at(&self, c: &[Q]) -> FormalVectorField {
        let mut out = FormalVectorField::zero(self.dim(), self.order());
        for (ci, f) in c.iter().zip(&self.v) {
            if !ci.is_zero() {
                out = out.add(&f.scale(ci));
            }
        }
        out
    }

    pub fn sigma_at(&self, c: &[Q]) -> JetElement {
        let mut out = JetElement::zero(self.dim(), self.order(), self.k.dim());
        for (ci, s) in c.iter().zip(&self.sigma) {
            if !ci.is_zero() {
                out = out.add(&s.scale(ci));
            }
        }
        out
    }

    /// `D(p)ξ = −L_{v(p)}ξ + [σ(p), ξ]`.
    pub fn apply_derivation(&self, c: &[Q], xi: &JetElement) -> Result<JetElement> {
        let v = self.field_at(c);
        let s = self.sigma_at(c);
        Ok(xi.lie_derivative(&v)?.neg().add(&s.bracket(xi, &self.k)?))
    }

    /// `[v(e_i), v(e_j)] = −v([e_i, e_j])` for all basis pairs.
    pub fn check_anti_hom(&self) -> Result<()> {
        for i in 0..self.p.dim() {
            for j in i + 1..self.p.dim() {
                let lhs = self.v[i].bracket(&self.v[j])?;
                let rhs = self.field_at(self.p.basis_bracket(i, j)).scale(&-Q::one());
                if lhs != rhs {
                    return Err(JetError::InvalidRepresentation(format!(
                        "vector fields violate the anti-homomorphism relation at ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Gauge transformation `e^{ad ξ}` applied to every twist.
    pub fn gauge(&self, xi: &JetElement) -> Result<Self> {
        let sigma = self
            .v
            .iter()
            .zip(&self.sigma)
            .map(|(v, s)| gauge_twist(&self.k, xi, v, s))
            .collect::<Result<Vec<_>>>()?;
        self.with_sigma(sigma)
    }
}

/// `e^{ad ξ}` on each twist of `a`.
pub fn gauge_on_twist(xi: &JetElement, a: &ActionData) -> Result<ActionData> {
    a.gauge(xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;
    use crate::liealg::unit;

    fn x(d: usize, n: usize, i: usize) -> TruncSeries {
        TruncSeries::var(d, n, i)
    }

    #[test]
    fn brackets_in_su2() {
        let k = LieAlgebra::su2();
        let a = JetElement::simple(&x(2, 2, 0), &unit(3, 0));
        let b = JetElement::simple(&x(2, 2, 1), &unit(3, 1));
        let xy = x(2, 2, 0).mul(&x(2, 2, 1));
        assert_eq!(a.bracket(&b, &k).unwrap(), JetElement::simple(&xy, &unit(3, 2)));
        let c = JetElement::simple(&x(2, 2, 1), &unit(3, 0));
        assert!(a.bracket(&c, &k).unwrap().is_zero());
    }

    #[test]
    fn derivation_examples() {
        let (p, k) = (LieAlgebra::abelian(1), LieAlgebra::su2());
        let a = ActionData::linear(p, k, &[Mat::identity(1)], 3).unwrap();
        let xi = JetElement::simple(&x(1, 3, 0), &unit(3, 0));
        assert_eq!(a.apply_derivation(&[q(1)], &xi).unwrap(), xi.neg());
        let c = JetElement::constant(1, 3, &unit(3, 1));
        assert!(a.apply_derivation(&[q(1)], &c).unwrap().is_zero());
    }

    #[test]
    fn dynkin_low_order_terms() {
        let c = dynkin_coefficients(3);
        let get = |w: &[bool]| c.iter().find(|(v, _)| v == w).map(|(_, c)| c.clone()).unwrap_or_default();
        let (xl, yl) = (false, true);
        assert_eq!(get(&[xl]), q(1));
        assert_eq!(get(&[yl]), q(1));
        // Hall basis coefficients: ½[X,Y], (1/12)[X,[X,Y]], (1/12)[Y,[Y,X]].
        assert_eq!(get(&[xl, yl]) - get(&[yl, xl]), qf(1, 2));
        assert_eq!(get(&[xl, xl, yl]) - get(&[xl, yl, xl]), qf(1, 12));
        assert_eq!(get(&[yl, yl, xl]) - get(&[yl, xl, yl]), qf(1, 12));
    }

    #[test]
    fn bch_of_commuting_elements_is_the_sum() {
        let k = LieAlgebra::su2();
        let a = JetElement::simple(&x(1, 3, 0), &unit(3, 0));
        let b = JetElement::simple(&x(1, 3, 0).pow(2), &unit(3, 0));
        assert_eq!(bch(&k, &a, &b).unwrap(), a.add(&b));
        let z = JetElement::zero(1, 3, 3);
        assert_eq!(bch(&k, &a, &z).unwrap(), a);
        assert_eq!(bch(&k, &JetElement::constant(1, 3, &unit(3, 0)), &z), Err(JetError::NonzeroConstantTerm));
    }

    #[test]
    fn diffeo_examples() {
        let twice = FormalDiffeo::linear(&Mat::diag(&[q(2)]), 3).unwrap();
        let t = x(1, 3, 0);
        assert_eq!(twice.act_series(&t.mul(&t)).unwrap(), t.mul(&t).scale(&qf(1, 4)));
        assert_eq!(twice.invert().unwrap(), FormalDiffeo::linear(&Mat::diag(&[qf(1, 2)]), 3).unwrap());
        let h = FormalDiffeo::new(vec![t.add(&t.mul(&t))]).unwrap();
        let inv = h.invert().unwrap();
        let expected = t.sub(&t.pow(2)).add(&t.pow(3).scale(&q(2)));
        assert_eq!(inv.comps()[0], expected);
        assert_eq!(h.compose(&inv).unwrap(), FormalDiffeo::identity(1, 3));
        assert_eq!(h.compose(&FormalDiffeo::identity(1, 3)).unwrap(), h);
        assert_eq!(FormalDiffeo::new(vec![t.pow(2)]), Err(JetError::NotInvertible));
    }
}
