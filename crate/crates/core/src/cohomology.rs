//! Chevalley–Eilenberg cochains `Λᵏ p* ⊗ W` of a finite-dimensional module.
//!
//! Cochains are coordinate vectors on the basis `e^S ⊗ w_a`, where `S` runs
//! over the increasing `k`-subsets of `{0, …, n−1}` in lexicographic order
//! and the module index `a` varies fastest. With 0-based arguments,
//!
//! ```text
//! δα(t₀,…,t_k) = Σ_i (−1)^i ρ(t_i) α(…t̂_i…)
//!              + Σ_{i<j} (−1)^{i+j} α([t_i,t_j], …t̂_i…t̂_j…).
//! ```

use std::collections::HashMap;

use num::{One, Zero};

use crate::error::{JetError, Result};
use crate::liealg::LieAlgebra;
use crate::linalg::{Mat, QMat};
use crate::rational::Q;
use crate::ring::{lie_derivative_matrix_on_degree, monomials_of_degree};

/// Representation `ρ` of `p` on `ℚ^m`, given on the basis of `p`.
#[derive(Clone, Debug)]
pub struct PModule {
    alg: LieAlgebra,
    m: usize,
    rho: Vec<QMat>,
}

impl PModule {
    /// Wraps the action matrices without checking the bracket relations; see
    /// [`PModule::check_rep`].
    pub fn new(alg: LieAlgebra, m: usize, rho: Vec<QMat>) -> Result<Self> {
        if rho.len() != alg.dim() {
            return Err(JetError::DimensionMismatch { expected: alg.dim(), found: rho.len() });
        }
        for r in &rho {
            if r.rows() != m || r.cols() != m {
                return Err(JetError::DimensionMismatch { expected: m, found: r.rows() });
            }
        }
        Ok(PModule { alg, m, rho })
    }

    pub fn trivial(alg: LieAlgebra, m: usize) -> Self {
        let rho = vec![Mat::zeros(m, m); alg.dim()];
        PModule { alg, m, rho }
    }

    pub fn adjoint(alg: LieAlgebra) -> Self {
        let rho = (0..alg.dim()).map(|i| alg.ad_basis(i)).collect();
        PModule { m: alg.dim(), alg, rho }
    }

    /// `Pⁿ(V) ⊗_χ k` with `p·(f⊗X) = −L_{v_l(p)}f ⊗ X + f ⊗ [χ(p), X]`.
    ///
    /// `lin[i]` is the matrix of the linear field `v_l(e_i)` and `chi[i]`
    /// the coordinates of `χ(e_i)` in `k`. The module basis is
    /// `(monomial, a)` with index `monomial·dim k + a`.
    pub fn poly_tensor(p: &LieAlgebra, lin: &[QMat], n: usize, k: &LieAlgebra, chi: &[Vec<Q>]) -> Result<Self> {
        if lin.len() != p.dim() || chi.len() != p.dim() {
            return Err(JetError::DimensionMismatch { expected: p.dim(), found: lin.len().min(chi.len()) });
        }
        let d = lin.first().map_or(0, Mat::rows);
        let pdim = monomials_of_degree(d, n).len();
        let kd = k.dim();
        let id_k: QMat = Mat::identity(kd);
        let id_p: QMat = Mat::identity(pdim);
        let rho = lin
            .iter()
            .zip(chi)
            .map(|(a, c)| {
                let l = lie_derivative_matrix_on_degree(a, n);
                &kron(&(-&l), &id_k) + &kron(&id_p, &k.ad_matrix(c))
            })
            .collect();
        PModule::new(p.clone(), pdim * kd, rho)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn action(&self) -> &[QMat] {
        &self.rho
    }

    /// Exact check of `ρ([x,y]) = [ρ(x), ρ(y)]` on basis pairs.
    pub fn check_rep(&self) -> Result<()> {
        if self.alg.is_representation(&self.rho) {
            Ok(())
        } else {
            Err(JetError::InvalidRepresentation("action matrices violate the bracket relations".into()))
        }
    }
}

/// Kronecker product `a ⊗ b`, with the index of `b` varying fastest.
pub fn kron(a: &QMat, b: &QMat) -> QMat {
    Mat::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        a[(i / b.rows(), j / b.cols())].clone() * b[(i % b.rows(), j % b.cols())].clone()
    })
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Dimension of `Λᵏ p* ⊗ W`.
pub fn cochain_dim(module: &PModule, k: usize) -> usize {
    subsets(module.alg.dim(), k).len() * module.m
}

/// Matrix of `δ: Cᵏ → Cᵏ⁺¹`.
pub fn ce_differential(module: &PModule, k: usize) -> QMat {
    let n = module.alg.dim();
    let m = module.m;
    let src = subsets(n, k);
    let dst = subsets(n, k + 1);
    let index: HashMap<Vec<usize>, usize> = src.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut out = Mat::zeros(dst.len() * m, src.len() * m);
    for (ti, t) in dst.iter().enumerate() {
        for i in 0..t.len() {
            let rest: Vec<usize> = t.iter().enumerate().filter(|&(a, _)| a != i).map(|(_, &x)| x).collect();
            let si = index[&rest];
            let sign = if i % 2 == 0 { Q::one() } else { -Q::one() };
            let r = &module.rho[t[i]];
            for u in 0..m {
                for w in 0..m {
                    let v = &r[(u, w)];
                    if !v.is_zero() {
                        out[(ti * m + u, si * m + w)] += &sign * v;
                    }
                }
            }
        }
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let rest: Vec<usize> =
                    t.iter().enumerate().filter(|&(a, _)| a != i && a != j).map(|(_, &x)| x).collect();
                let base = if (i + j) % 2 == 0 { Q::one() } else { -Q::one() };
                for (l, c) in module.alg.basis_bracket(t[i], t[j]).iter().enumerate() {
                    if c.is_zero() || rest.contains(&l) {
                        continue;
                    }
                    let pos = rest.iter().filter(|&&x| x < l).count();
                    let mut sorted = rest.clone();
                    sorted.insert(pos, l);
                    let si = index[&sorted];
                    let coef = if pos % 2 == 0 { &base * c } else { -(&base * c) };
                    for u in 0..m {
                        out[(ti * m + u, si * m + u)] += &coef;
                    }
                }
            }
        }
    }
    out
}

/// `dim Hᵏ = dim ker δ_k − rank δ_{k−1}`.
pub fn cohomology_dim(module: &PModule, k: usize) -> usize {
    let dk = ce_differential(module, k);
    let ker = cochain_dim(module, k) - dk.rank();
    let im = if k == 0 { 0 } else { ce_differential(module, k - 1).rank() };
    ker - im
}

/// Some `η ∈ Cᵏ⁻¹` with `δη = h`, or `None` when `[h] ≠ 0`.
///
/// Fails with [`JetError::NotClosed`] if `δh ≠ 0`.
pub fn solve_coboundary(module: &PModule, k: usize, h: &[Q]) -> Result<Option<Vec<Q>>> {
    if h.len() != cochain_dim(module, k) {
        return Err(JetError::DimensionMismatch { expected: cochain_dim(module, k), found: h.len() });
    }
    if ce_differential(module, k).mul_vec(h).iter().any(|c| !c.is_zero()) {
        return Err(JetError::NotClosed);
    }
    if k == 0 {
        return Ok(if h.iter().all(Zero::is_zero) { Some(Vec::new()) } else { None });
    }
    Ok(ce_differential(module, k - 1).solve(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn abelian_line_with_trivial_coefficients() {
        let m = PModule::trivial(LieAlgebra::abelian(1), 1);
        assert!(ce_differential(&m, 0).is_zero());
        assert_eq!(cohomology_dim(&m, 0), 1);
        assert_eq!(cohomology_dim(&m, 1), 1);
        assert_eq!(solve_coboundary(&m, 1, &[q(1)]).unwrap(), None);
        assert_eq!(solve_coboundary(&m, 1, &[q(0)]).unwrap(), Some(vec![q(0)]));
    }

    #[test]
    fn sl2_adjoint_and_trivial() {
        let adj = PModule::adjoint(LieAlgebra::sl2r());
        adj.check_rep().unwrap();
        assert_eq!(ce_differential(&adj, 0).rank(), 3);
        assert_eq!(cohomology_dim(&adj, 0), 0);
        assert_eq!(cohomology_dim(&adj, 1), 0);
        let triv = PModule::trivial(LieAlgebra::sl2r(), 1);
        assert_eq!(cohomology_dim(&triv, 2), 0);
        assert_eq!(cohomology_dim(&triv, 3), 1);
        assert!(ce_differential(&triv, 3).rows() == 0);
    }

    #[test]
    fn differential_squares_to_zero() {
        let adj = PModule::adjoint(LieAlgebra::su3());
        for k in 0..3 {
            let d2 = &ce_differential(&adj, k + 1) * &ce_differential(&adj, k);
            assert!(d2.is_zero());
        }
    }

    #[test]
    fn non_closed_cochains_are_rejected() {
        let adj = PModule::adjoint(LieAlgebra::sl2r());
        let mut h = vec![q(0); cochain_dim(&adj, 1)];
        h[0] = q(1);
        assert_eq!(solve_coboundary(&adj, 1, &h), Err(JetError::NotClosed));
    }
}
