//! Truncated power series `R_N = ℝ⟦V*⟧ / I^{N+1}` with exact rational
//! coefficients, one-forms `Ω¹_{R_N} = R_N ⊗ V*`, and formal vector fields
//! vanishing at the origin.
//!
//! Monomials are ordered graded-lexicographically: lower total degree first,
//! and within a degree `x₀` dominates `x₁` and so on, so `x > y` and
//! `x² > xy > y²`. Every stored coefficient is nonzero and every stored
//! monomial has degree at most `N`.
//!
//! Vector fields of order `N` are read as polynomial fields: coefficients of
//! degree above `N` are zero rather than unknown. This matters only for the
//! Lie derivative of one-forms, whose top-degree term involves one more
//! derivative of the field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::error::{JetError, Result};
use crate::linalg::{Mat, QMat};
use crate::rational::{format_q, q, Q};

/// Exponent vector of a monomial `x^n = x₀^{n₀} ⋯ x_{d−1}^{n_{d−1}}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Self {
        MultiIndex(exps)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// The exponent vector of `x_i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `⟨n, μ⟩` for a weight vector `μ`.
    pub fn pair(&self, mu: &[Q]) -> Q {
        self.0.iter().zip(mu).map(|(&e, m)| q(e as i64) * m).sum()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All monomials of exact degree `n` in `dim` variables, in graded order.
pub fn monomials_of_degree(dim: usize, n: usize) -> Vec<MultiIndex> {
    fn rec(dim: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == dim {
            prefix.push(left);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(dim, left - e, prefix, out);
            prefix.pop();
        }
    }
    if dim == 0 {
        return if n == 0 { vec![MultiIndex(Vec::new())] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(dim, n as u32, &mut Vec::new(), &mut out);
    out
}

/// All monomials of degree `≤ n`, in graded order.
pub fn monomials_up_to(dim: usize, n: usize) -> Vec<MultiIndex> {
    (0..=n).flat_map(|k| monomials_of_degree(dim, k)).collect()
}

/// Element of `R_N` in `dim` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    dim: usize,
    order: usize,
    coeffs: BTreeMap<MultiIndex, Q>,
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> =
            self.coeffs.iter().map(|(m, c)| format!("{}·x{:?}", format_q(c), m)).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl TruncSeries {
    pub fn zero(dim: usize, order: usize) -> Self {
        TruncSeries { dim, order, coeffs: BTreeMap::new() }
    }

    pub fn constant(dim: usize, order: usize, c: Q) -> Self {
        Self::monomial(dim, order, MultiIndex::zero(dim), c)
    }

    pub fn one(dim: usize, order: usize) -> Self {
        Self::constant(dim, order, Q::one())
    }

    /// The coordinate function `x_i`.
    pub fn var(dim: usize, order: usize, i: usize) -> Self {
        Self::monomial(dim, order, MultiIndex::unit(dim, i), Q::one())
    }

    pub fn monomial(dim: usize, order: usize, m: MultiIndex, c: Q) -> Self {
        assert_eq!(m.dim(), dim);
        let mut s = Self::zero(dim, order);
        if m.degree() <= order && !c.is_zero() {
            s.coeffs.insert(m, c);
        }
        s
    }

    /// Builds a series from terms, summing repeats and dropping degrees above `order`.
    pub fn from_terms(dim: usize, order: usize, terms: impl IntoIterator<Item = (MultiIndex, Q)>) -> Result<Self> {
        let mut s = Self::zero(dim, order);
        for (m, c) in terms {
            if m.dim() != dim {
                return Err(JetError::DimensionMismatch { expected: dim, found: m.dim() });
            }
            s.add_term(m, c);
        }
        Ok(s)
    }

    /// Homogeneous polynomial of degree `n` from coordinates in the monomial basis.
    pub fn from_homogeneous(dim: usize, order: usize, n: usize, coords: &[Q]) -> Self {
        let basis = monomials_of_degree(dim, n);
        assert_eq!(basis.len(), coords.len());
        let mut s = Self::zero(dim, order);
        for (m, c) in basis.into_iter().zip(coords) {
            s.add_term(m, c.clone());
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Q)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, m: &MultiIndex) -> Q {
        self.coeffs.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.keys().next().map(MultiIndex::degree)
    }

    pub fn add_term(&mut self, m: MultiIndex, c: Q) {
        if m.degree() > self.order || c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.coeffs.remove(&m);
                }
            }
            None => {
                self.coeffs.insert(m, c);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(JetError::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self.order != other.order {
            return Err(JetError::OrderMismatch { expected: self.order, found: other.order });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    /// Sum; panics on shape mismatch (use [`TruncSeries::try_add`] for checked input).
    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(self.check(other).is_ok());
        let mut s = self.clone();
        for (m, c) in &other.coeffs {
            s.add_term(m.clone(), c.clone());
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert!(self.check(other).is_ok());
        let mut s = self.clone();
        for (m, c) in &other.coeffs {
            s.add_term(m.clone(), -c.clone());
        }
        s
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            dim: self.dim,
            order: self.order,
            coeffs: self.coeffs.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, a: &Q) -> Self {
        if a.is_zero() {
            return Self::zero(self.dim, self.order);
        }
        TruncSeries {
            dim: self.dim,
            order: self.order,
            coeffs: self.coeffs.iter().map(|(m, c)| (m.clone(), c * a)).collect(),
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert!(self.check(other).is_ok());
        let mut s = Self::zero(self.dim, self.order);
        for (ma, ca) in &self.coeffs {
            let da = ma.degree();
            for (mb, cb) in &other.coeffs {
                if da + mb.degree() > self.order {
                    // Monomials of `other` are sorted by degree.
                    break;
                }
                s.add_term(ma.add(mb), ca * cb);
            }
        }
        s
    }

    /// Product computed at `order + extra` from operands of order `order`.
    fn mul_extended(&self, other: &Self, extra: usize) -> Self {
        self.with_order(self.order + extra).mul(&other.with_order(self.order + extra))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.dim, self.order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `∂f/∂x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut s = Self::zero(self.dim, self.order);
        for (m, c) in &self.coeffs {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            s.add_term(MultiIndex(exps), c * q(e as i64));
        }
        s
    }

    pub fn exterior_d(&self) -> OneForm {
        OneForm { comps: (0..self.dim).map(|i| self.partial(i)).collect() }
    }

    pub fn ev0(&self) -> Q {
        self.coeff(&MultiIndex::zero(self.dim))
    }

    /// `j^k f` as an element of `R_k`.
    pub fn jet_project(&self, k: usize) -> Result<Self> {
        if k > self.order {
            return Err(JetError::DegreeTooLarge { requested: k, order: self.order });
        }
        Ok(self.with_order(k))
    }

    /// Re-reads the series at another order: drops terms above a lower order,
    /// pads with zero coefficients for a higher one.
    pub fn with_order(&self, order: usize) -> Self {
        TruncSeries {
            dim: self.dim,
            order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| m.degree() <= order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous component of degree `n`.
    pub fn homogeneous(&self, n: usize) -> Self {
        TruncSeries {
            dim: self.dim,
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| m.degree() == n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms of degree `≥ n`.
    pub fn tail_from(&self, n: usize) -> Self {
        TruncSeries {
            dim: self.dim,
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| m.degree() >= n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coordinates of the degree-`n` component in the monomial basis.
    pub fn homogeneous_coords(&self, n: usize) -> Vec<Q> {
        monomials_of_degree(self.dim, n).iter().map(|m| self.coeff(m)).collect()
    }

    /// Coordinates in the basis `monomials_up_to(dim, order)`.
    pub fn dense_coords(&self) -> Vec<Q> {
        monomials_up_to(self.dim, self.order).iter().map(|m| self.coeff(m)).collect()
    }

    pub fn from_dense(dim: usize, order: usize, coords: &[Q]) -> Self {
        let basis = monomials_up_to(dim, order);
        assert_eq!(basis.len(), coords.len());
        let mut s = Self::zero(dim, order);
        for (m, c) in basis.into_iter().zip(coords) {
            s.add_term(m, c.clone());
        }
        s
    }

    /// Substitution `f(g₀, …, g_{d−1})` for series `g_i` without constant term.
    pub fn compose(&self, subs: &[TruncSeries]) -> Result<Self> {
        if subs.len() != self.dim {
            return Err(JetError::DimensionMismatch { expected: self.dim, found: subs.len() });
        }
        let (dim, order) = (subs[0].dim, subs[0].order);
        for g in subs {
            if g.dim != dim || g.order != order {
                return Err(JetError::OrderMismatch { expected: order, found: g.order });
            }
            if !g.ev0().is_zero() {
                return Err(JetError::NonzeroConstantTerm);
            }
        }
        let mut powers: Vec<Vec<TruncSeries>> = subs.iter().map(|g| vec![TruncSeries::one(dim, order), g.clone()]).collect();
        let mut out = TruncSeries::zero(dim, order);
        for (m, c) in &self.coeffs {
            if m.degree() > order {
                continue;
            }
            let mut term = TruncSeries::constant(dim, order, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&subs[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize]);
                if term.is_zero() {
                    break;
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    pub fn lie_derivative(&self, v: &FormalVectorField) -> Result<Self> {
        v.lie_derivative_fn(self)
    }
}

/// Element of `Ω¹_{R_N}`, stored by `dx_μ` components.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OneForm {
    comps: Vec<TruncSeries>,
}

impl OneForm {
    pub fn new(comps: Vec<TruncSeries>) -> Result<Self> {
        let d = comps.len();
        let order = comps.first().map_or(0, TruncSeries::order);
        for c in &comps {
            if c.dim() != d {
                return Err(JetError::DimensionMismatch { expected: d, found: c.dim() });
            }
            if c.order() != order {
                return Err(JetError::OrderMismatch { expected: order, found: c.order() });
            }
        }
        Ok(OneForm { comps })
    }

    pub fn zero(dim: usize, order: usize) -> Self {
        OneForm { comps: vec![TruncSeries::zero(dim, order); dim] }
    }

    /// `f·dx_μ`.
    pub fn basic(f: TruncSeries, mu: usize) -> Self {
        let mut w = Self::zero(f.dim(), f.order());
        w.comps[mu] = f;
        w
    }

    pub fn comps(&self) -> &[TruncSeries] {
        &self.comps
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn order(&self) -> usize {
        self.comps.first().map_or(0, TruncSeries::order)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(TruncSeries::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        OneForm { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        OneForm { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, a: &Q) -> Self {
        OneForm { comps: self.comps.iter().map(|c| c.scale(a)).collect() }
    }

    /// `f·α`.
    pub fn mul_fn(&self, f: &TruncSeries) -> Self {
        OneForm { comps: self.comps.iter().map(|c| c.mul(f)).collect() }
    }

    pub fn jet_project(&self, k: usize) -> Result<Self> {
        Ok(OneForm { comps: self.comps.iter().map(|c| c.jet_project(k)).collect::<Result<_>>()? })
    }

    /// Coordinates in the basis `(m, μ)` with monomials `m` of degree `≤ N`
    /// in graded order and `μ` varying fastest.
    pub fn dense_coords(&self) -> Vec<Q> {
        let basis = monomials_up_to(self.dim(), self.order());
        let mut out = Vec::with_capacity(basis.len() * self.dim());
        for m in &basis {
            for c in &self.comps {
                out.push(c.coeff(m));
            }
        }
        out
    }

    /// `f·dg`, computed with the product taken before truncation so that it
    /// equals `j^N(f·dg)` for polynomial representatives of order `N`.
    pub fn f_dg(f: &TruncSeries, g: &TruncSeries) -> Self {
        let dg = g.exterior_d();
        dg.mul_fn(f)
    }
}

/// Formal vector field `Σ v_i ∂_i` with `v_i ∈ I` (no constant terms).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FormalVectorField {
    comps: Vec<TruncSeries>,
}

impl FormalVectorField {
    pub fn new(comps: Vec<TruncSeries>) -> Result<Self> {
        let d = comps.len();
        let order = comps.first().map_or(0, TruncSeries::order);
        for (i, c) in comps.iter().enumerate() {
            if c.dim() != d {
                return Err(JetError::DimensionMismatch { expected: d, found: c.dim() });
            }
            if c.order() != order {
                return Err(JetError::OrderMismatch { expected: order, found: c.order() });
            }
            if !c.ev0().is_zero() {
                return Err(JetError::AffineField { component: i });
            }
        }
        Ok(FormalVectorField { comps })
    }

    pub fn zero(dim: usize, order: usize) -> Self {
        FormalVectorField { comps: vec![TruncSeries::zero(dim, order); dim] }
    }

    /// Linear field `x ↦ A x`, i.e. `v_i = Σ_j A_ij x_j`.
    pub fn linear(a: &QMat, order: usize) -> Self {
        assert!(a.is_square());
        let d = a.rows();
        let comps = (0..d)
            .map(|i| {
                let mut s = TruncSeries::zero(d, order);
                for j in 0..d {
                    s.add_term(MultiIndex::unit(d, j), a[(i, j)].clone());
                }
                s
            })
            .collect();
        FormalVectorField { comps }
    }

    pub fn comps(&self) -> &[TruncSeries] {
        &self.comps
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn order(&self) -> usize {
        self.comps.first().map_or(0, TruncSeries::order)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(TruncSeries::is_zero)
    }

    /// Matrix `A` of the linear part, `j¹v = A x`.
    pub fn linear_part(&self) -> QMat {
        let d = self.dim();
        Mat::from_fn(d, d, |i, j| self.comps[i].coeff(&MultiIndex::unit(d, j)))
    }

    pub fn linear_field(&self) -> Self {
        Self::linear(&self.linear_part(), self.order())
    }

    /// Terms of degree `≥ 2`.
    pub fn higher_order(&self) -> Self {
        FormalVectorField { comps: self.comps.iter().map(|c| c.tail_from(2)).collect() }
    }

    pub fn homogeneous(&self, n: usize) -> Self {
        FormalVectorField { comps: self.comps.iter().map(|c| c.homogeneous(n)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        FormalVectorField { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        FormalVectorField { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, a: &Q) -> Self {
        FormalVectorField { comps: self.comps.iter().map(|c| c.scale(a)).collect() }
    }

    pub fn with_order(&self, order: usize) -> Self {
        FormalVectorField { comps: self.comps.iter().map(|c| c.with_order(order)).collect() }
    }

    pub fn jet_project(&self, k: usize) -> Result<Self> {
        Ok(FormalVectorField { comps: self.comps.iter().map(|c| c.jet_project(k)).collect::<Result<_>>()? })
    }

    fn check(&self, dim: usize, order: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(JetError::DimensionMismatch { expected: self.dim(), found: dim });
        }
        if self.order() != order {
            return Err(JetError::OrderMismatch { expected: self.order(), found: order });
        }
        Ok(())
    }

    /// `L_v f = Σ_μ v_μ ∂_μ f`; exact at order `N` since `v` has no constant term.
    pub fn lie_derivative_fn(&self, f: &TruncSeries) -> Result<TruncSeries> {
        self.check(f.dim(), f.order())?;
        let mut out = TruncSeries::zero(f.dim(), f.order());
        for (mu, vm) in self.comps.iter().enumerate() {
            if vm.is_zero() {
                continue;
            }
            out = out.add(&vm.mul(&f.partial(mu)));
        }
        Ok(out)
    }

    /// Cartan rule on the generators `α_μ dx_μ`:
    /// `L_v(α_μ dx_μ) = (L_v α_μ) dx_μ + α_μ d(v_μ)`.
    pub fn lie_derivative_form(&self, alpha: &OneForm) -> Result<OneForm> {
        self.check(alpha.dim(), alpha.order())?;
        let d = alpha.dim();
        let mut out = OneForm::zero(d, alpha.order());
        for (mu, a) in alpha.comps.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let la = self.lie_derivative_fn(a)?;
            out.comps[mu] = out.comps[mu].add(&la);
            let dv = self.comps[mu].exterior_d();
            out = out.add(&dv.mul_fn(a));
        }
        Ok(out)
    }

    /// Vector-field bracket `[v, w]_i = v(w_i) − w(v_i)`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        other.check(self.dim(), self.order())?;
        let comps = (0..self.dim())
            .map(|i| {
                let a = self.lie_derivative_fn(&other.comps[i])?;
                let b = other.lie_derivative_fn(&self.comps[i])?;
                Ok(a.sub(&b))
            })
            .collect::<Result<_>>()?;
        Ok(FormalVectorField { comps })
    }

    /// Field with the given components, validating the vanishing condition.
    pub fn from_comps(comps: Vec<TruncSeries>) -> Result<Self> {
        Self::new(comps)
    }

    /// Coordinates of the degree-`n` part in the basis `(m, i)` of `Pⁿ(V) ⊗ V`
    /// with `i` varying fastest.
    pub fn homogeneous_coords(&self, n: usize) -> Vec<Q> {
        let basis = monomials_of_degree(self.dim(), n);
        let mut out = Vec::with_capacity(basis.len() * self.dim());
        for m in &basis {
            for c in &self.comps {
                out.push(c.coeff(m));
            }
        }
        out
    }

    pub fn from_homogeneous_coords(dim: usize, order: usize, n: usize, coords: &[Q]) -> Self {
        let basis = monomials_of_degree(dim, n);
        assert_eq!(coords.len(), basis.len() * dim);
        let mut comps = vec![TruncSeries::zero(dim, order); dim];
        for (k, m) in basis.iter().enumerate() {
            for (i, comp) in comps.iter_mut().enumerate() {
                comp.add_term(m.clone(), coords[k * dim + i].clone());
            }
        }
        FormalVectorField { comps }
    }
}

/// Product of two series at one order higher than their own order, then
/// truncated back: used where a derivative lowers degree by one.
pub fn product_below(a: &TruncSeries, b: &TruncSeries) -> TruncSeries {
    a.mul_extended(b, 1).with_order(a.order())
}

/// Matrix of `L_v` (for a linear field `v = Ax`) on `Pⁿ(V)` in the monomial basis.
pub fn lie_derivative_matrix_on_degree(a: &QMat, n: usize) -> QMat {
    let d = a.rows();
    let basis = monomials_of_degree(d, n);
    let v = FormalVectorField::linear(a, n.max(1));
    let cols: Vec<Vec<Q>> = basis
        .iter()
        .map(|m| {
            let f = TruncSeries::monomial(d, n.max(1), m.clone(), Q::one());
            v.lie_derivative_fn(&f).expect("shapes agree").homogeneous_coords(n)
        })
        .collect();
    Mat::from_cols(basis.len(), &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn x(d: usize, n: usize, i: usize) -> TruncSeries {
        TruncSeries::var(d, n, i)
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let m = monomials_of_degree(2, 2);
        assert_eq!(m, vec![MultiIndex::new(vec![2, 0]), MultiIndex::new(vec![1, 1]), MultiIndex::new(vec![0, 2])]);
        assert_eq!(monomials_up_to(3, 2).len(), 10);
    }

    #[test]
    fn products_truncate() {
        let (xx, yy) = (x(2, 2, 0), x(2, 2, 1));
        let xy = xx.mul(&yy);
        assert_eq!(xy.coeff(&MultiIndex::new(vec![1, 1])), q(1));
        let one = TruncSeries::one(1, 1);
        let a = one.add(&x(1, 1, 0));
        let b = one.sub(&x(1, 1, 0));
        assert_eq!(a.mul(&b), one);
        let x1 = x(1, 2, 0);
        assert!(x1.mul(&x1).mul(&x1).is_zero());
    }

    #[test]
    fn exterior_derivative_examples() {
        let xx = x(2, 2, 0);
        let d = xx.mul(&xx).exterior_d();
        assert_eq!(d.comps()[0], xx.scale(&q(2)));
        assert!(d.comps()[1].is_zero());
        assert!(TruncSeries::one(2, 2).exterior_d().is_zero());
        let xy = xx.mul(&x(2, 2, 1));
        let d = xy.exterior_d();
        assert_eq!(d.comps()[0], x(2, 2, 1));
        assert_eq!(d.comps()[1], xx);
    }

    #[test]
    fn lie_derivative_examples() {
        let xx = x(1, 2, 0);
        let v = FormalVectorField::new(vec![xx.clone()]).unwrap();
        assert_eq!(v.lie_derivative_fn(&xx.mul(&xx)).unwrap(), xx.mul(&xx).scale(&q(2)));
        assert!(v.lie_derivative_fn(&TruncSeries::one(1, 2)).unwrap().is_zero());
        let v2 = FormalVectorField::new(vec![xx.mul(&xx)]).unwrap();
        assert_eq!(v2.lie_derivative_fn(&xx).unwrap(), xx.mul(&xx));
    }

    #[test]
    fn affine_fields_are_rejected() {
        let err = FormalVectorField::new(vec![TruncSeries::one(1, 2)]).unwrap_err();
        assert_eq!(err, JetError::AffineField { component: 0 });
    }

    #[test]
    fn jets_and_evaluation() {
        let f = TruncSeries::constant(1, 2, qf(3, 2)).add(&x(1, 2, 0));
        assert_eq!(f.ev0(), qf(3, 2));
        let g = x(1, 2, 0).add(&x(1, 2, 0).mul(&x(1, 2, 0)));
        assert_eq!(g.jet_project(1).unwrap(), x(1, 1, 0));
        assert_eq!(g.jet_project(2).unwrap(), g);
        assert!(g.jet_project(3).is_err());
    }

    #[test]
    fn composition_substitutes() {
        let t = x(1, 3, 0);
        let f = t.mul(&t);
        let g = t.scale(&qf(1, 2));
        assert_eq!(f.compose(&[g]).unwrap(), f.scale(&qf(1, 4)));
    }

    #[test]
    fn linear_field_matrix_on_degree_two() {
        let a = Mat::diag(&[q(1), q(2)]);
        let m = lie_derivative_matrix_on_degree(&a, 2);
        // x², xy, y² have weights 2, 3, 4.
        assert_eq!(m, Mat::diag(&[q(2), q(3), q(4)]));
    }
}
