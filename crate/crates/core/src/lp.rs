//! Exact feasibility for `{x ≥ 0 : A x = b}` by two-phase simplex with
//! Bland's rule, and the cone pointedness test built on it.

use num::{One, Signed, Zero};

use crate::linalg::QMat;
use crate::rational::Q;

/// A point of `{x ≥ 0 : A x = b}`, or `None` if the set is empty.
pub fn feasible_point(a: &QMat, b: &[Q]) -> Option<Vec<Q>> {
    let (m, n) = (a.rows(), a.cols());
    assert_eq!(b.len(), m, "right-hand side length");
    // Tableau columns: n originals, m artificials, then the right-hand side.
    let width = n + m + 1;
    let mut t: Vec<Vec<Q>> = (0..m)
        .map(|i| {
            let flip = b[i].is_negative();
            let mut row = vec![Q::zero(); width];
            for j in 0..n {
                row[j] = if flip { -a[(i, j)].clone() } else { a[(i, j)].clone() };
            }
            row[n + i] = Q::one();
            row[width - 1] = b[i].abs();
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Phase-one objective row: reduced costs of minimizing the artificial sum.
    let mut obj = vec![Q::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    loop {
        let Some(enter) = (0..n + m).find(|&j| obj[j].is_negative()) else { break };
        let mut leave: Option<(usize, Q)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else { break };
        pivot(&mut t, &mut obj, r, enter);
        basis[r] = enter;
    }
    if !obj[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Q>], obj: &mut [Q], r: usize, c: usize) {
    let p = t[r][c].clone();
    for v in t[r].iter_mut() {
        *v /= &p;
    }
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r && !row[c].is_zero() {
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
        }
    }
    if !obj[c].is_zero() {
        let f = obj[c].clone();
        for (v, pv) in obj.iter_mut().zip(&pivot_row) {
            *v -= &f * pv;
        }
    }
}

/// Outcome of the pointedness test with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeCertificate {
    /// `f` with `f(g_i) ≥ 1` for every generator.
    Pointed { functional: Vec<Q> },
    /// `λ ≥ 0` with `Σλ_i = 1` and `Σ λ_i g_i = 0`.
    ContainsLine { multipliers: Vec<Q> },
}

impl ConeCertificate {
    pub fn is_pointed(&self) -> bool {
        matches!(self, ConeCertificate::Pointed { .. })
    }

    /// Re-checks the certificate against the generators.
    pub fn verify(&self, gens: &[Vec<Q>]) -> bool {
        match self {
            ConeCertificate::Pointed { functional } => gens
                .iter()
                .all(|g| g.iter().zip(functional).map(|(a, b)| a * b).sum::<Q>() >= Q::one()),
            ConeCertificate::ContainsLine { multipliers } => {
                let dim = gens.first().map_or(0, Vec::len);
                multipliers.iter().all(|l| !l.is_negative())
                    && multipliers.iter().sum::<Q>() == Q::one()
                    && (0..dim).all(|c| gens.iter().zip(multipliers).map(|(g, l)| &g[c] * l).sum::<Q>().is_zero())
            }
        }
    }
}

/// Whether the convex cone spanned by nonzero `gens` contains no line.
///
/// The two systems are alternatives (Gordan), so exactly one is feasible;
/// the function panics if neither is, which would be a solver fault.
pub fn cone_pointed(gens: &[Vec<Q>]) -> ConeCertificate {
    let r = gens.len();
    let dim = gens.first().map_or(0, Vec::len);
    let mut a = QMat::zeros(dim + 1, r);
    let mut b = vec![Q::zero(); dim + 1];
    for (j, g) in gens.iter().enumerate() {
        for (i, x) in g.iter().enumerate() {
            a[(i, j)] = x.clone();
        }
        a[(dim, j)] = Q::one();
    }
    b[dim] = Q::one();
    if let Some(l) = feasible_point(&a, &b) {
        return ConeCertificate::ContainsLine { multipliers: l };
    }
    // f = f⁺ − f⁻, slack s ≥ 0: Σ_c g_c (f⁺_c − f⁻_c) − s = 1.
    let mut a = QMat::zeros(r, 2 * dim + r);
    for (i, g) in gens.iter().enumerate() {
        for (c, x) in g.iter().enumerate() {
            a[(i, c)] = x.clone();
            a[(i, dim + c)] = -x.clone();
        }
        a[(i, 2 * dim + i)] = -Q::one();
    }
    let x = feasible_point(&a, &vec![Q::one(); r]).expect("Gordan alternative has a feasible side");
    let functional = (0..dim).map(|c| &x[c] - &x[dim + c]).collect();
    ConeCertificate::Pointed { functional }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Mat;
    use crate::rational::q;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn feasibility_basics() {
        let a = Mat::from_rows(vec![v(&[1, 1])]);
        let x = feasible_point(&a, &v(&[3])).unwrap();
        assert_eq!(&x[0] + &x[1], q(3));
        assert!(feasible_point(&a, &v(&[-1])).is_none());
        let a = Mat::from_rows(vec![v(&[1, -1]), v(&[1, 1])]);
        assert_eq!(feasible_point(&a, &v(&[0, 2])).unwrap(), v(&[1, 1]));
    }

    #[test]
    fn listed_cones() {
        let c = cone_pointed(&[v(&[1, 0]), v(&[0, 1])]);
        assert!(c.is_pointed());
        assert!(c.verify(&[v(&[1, 0]), v(&[0, 1])]));
        assert!(!cone_pointed(&[v(&[1, 0]), v(&[-1, 0])]).is_pointed());
        let gens = [v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])];
        let c = cone_pointed(&gens);
        assert!(!c.is_pointed());
        assert!(c.verify(&gens));
    }
}
