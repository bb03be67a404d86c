//! Dense exact matrices.
//!
//! Rational row reduction runs fraction-free: rows are scaled to integer
//! vectors, eliminated by cross-multiplication and divided by their content
//! after every step. Gaussian-rational matrices use plain Gauss–Jordan.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::rational::{lcm_of_denominators, Q, GQ};

/// Scalar field usable in [`Mat`].
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Row reduction to reduced echelon form; returns pivot columns.
    fn reduce(m: &mut Mat<Self>) -> Vec<usize>;
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type QMat = Mat<Q>;

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(rows: usize, cols: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn diag(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    /// Entries in row-major order.
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    let a = &self.data[i * self.cols + j];
                    if !a.is_zero() && !v[j].is_zero() {
                        acc = acc + a.clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        (0..self.rows).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn pow(&self, e: usize) -> Self {
        assert!(self.is_square());
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vcat(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let piv = T::reduce(&mut m);
        (m, piv)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space; the vector for free column `f` has a 1 in
    /// position `f` and zeros in the other free positions.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        self.image_and_kernel().1
    }

    /// `(image(), kernel())` from a single reduction.
    pub fn image_and_kernel(&self) -> (Vec<Vec<T>>, Vec<Vec<T>>) {
        let (r, piv) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &piv {
            is_pivot[p] = true;
        }
        let kernel = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (i, &p) in piv.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect();
        (piv.iter().map(|&j| self.col(j)).collect(), kernel)
    }

    /// Linearly independent columns spanning the column space.
    pub fn image(&self) -> Vec<Vec<T>> {
        let (_, piv) = self.rref();
        piv.into_iter().map(|j| self.col(j)).collect()
    }

    /// Deterministic solution of `self·x = b` with all free variables zero.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hcat(&Mat::from_cols(self.rows, &[b.to_vec()]));
        let (r, piv) = aug.rref();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (i, &p) in piv.iter().enumerate() {
            x[p] = r[(i, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let (r, piv) = self.hcat(&Self::identity(n)).rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    pub fn det(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[(r, c)].is_zero()) else {
                return T::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det = det * pivot.clone();
            for r in c + 1..n {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = m[(r, c)].clone() / pivot.clone();
                for k in c..n {
                    let v = m[(c, k)].clone() * f.clone();
                    m[(r, k)] = m[(r, k)].clone() - v;
                }
            }
        }
        det
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mul for &Mat<T> {
    type Output = Mat<T>;
    fn mul(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out: Mat<T> = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }
}

impl<T: Scalar> Add for &Mat<T> {
    type Output = Mat<T>;
    fn add(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<T: Scalar> Sub for &Mat<T> {
    type Output = Mat<T>;
    fn sub(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<T: Scalar> Neg for &Mat<T> {
    type Output = Mat<T>;
    fn neg(self) -> Mat<T> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a.clone()).collect() }
    }
}

fn content(row: &[BigInt]) -> BigInt {
    row.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn normalize_row(row: &mut [BigInt]) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

impl Scalar for Q {
    fn reduce(m: &mut Mat<Q>) -> Vec<usize> {
        let (rows, cols) = (m.rows, m.cols);
        let mut ints: Vec<Vec<BigInt>> = (0..rows)
            .map(|i| {
                let row = &m.data[i * cols..(i + 1) * cols];
                let l = lcm_of_denominators(row.iter());
                let mut r: Vec<BigInt> =
                    row.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
                normalize_row(&mut r);
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..cols {
            if lead == rows {
                break;
            }
            let Some(p) = (lead..rows).find(|&r| !ints[r][c].is_zero()) else {
                continue;
            };
            ints.swap(lead, p);
            let prow = ints[lead].clone();
            let pv = prow[c].clone();
            for (r, row) in ints.iter_mut().enumerate() {
                if r == lead || row[c].is_zero() {
                    continue;
                }
                let a = row[c].clone();
                // Entries of `prow` left of `c` are zero.
                for k in 0..cols {
                    if k < c || prow[k].is_zero() {
                        if !row[k].is_zero() {
                            row[k] = &pv * &row[k];
                        }
                    } else {
                        row[k] = &pv * &row[k] - &a * &prow[k];
                    }
                }
                normalize_row(row);
            }
            pivots.push(c);
            lead += 1;
        }
        for (i, row) in ints.iter().enumerate() {
            let piv = pivots.get(i).map(|&c| row[c].clone());
            for k in 0..cols {
                m.data[i * cols + k] = match &piv {
                    Some(p) => Q::new(row[k].clone(), p.clone()),
                    None => Q::zero(),
                };
            }
        }
        pivots
    }
}

impl Scalar for GQ {
    fn reduce(m: &mut Mat<GQ>) -> Vec<usize> {
        gauss_jordan(m)
    }
}

fn gauss_jordan<T: Scalar>(m: &mut Mat<T>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut lead = 0;
    for c in 0..cols {
        if lead == rows {
            break;
        }
        let Some(p) = (lead..rows).find(|&r| !m[(r, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(lead, p);
        let inv = T::one() / m[(lead, c)].clone();
        for k in 0..cols {
            m[(lead, k)] = m[(lead, k)].clone() * inv.clone();
        }
        for r in 0..rows {
            if r == lead || m[(r, c)].is_zero() {
                continue;
            }
            let f = m[(r, c)].clone();
            for k in 0..cols {
                let v = m[(lead, k)].clone() * f.clone();
                m[(r, k)] = m[(r, k)].clone() - v;
            }
        }
        pivots.push(c);
        lead += 1;
    }
    pivots
}

/// Rank of the span of a list of vectors of common length `n`.
pub fn span_rank<T: Scalar>(n: usize, vs: &[Vec<T>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    Mat::from_cols(n, vs).rank()
}

/// Reduced basis (rows of the RREF) of the span of `vs`.
pub fn span_basis<T: Scalar>(n: usize, vs: &[Vec<T>]) -> Vec<Vec<T>> {
    if vs.is_empty() {
        return Vec::new();
    }
    debug_assert!(vs.iter().all(|v| v.len() == n));
    let (r, piv) = Mat::from_rows(vs.to_vec()).rref();
    (0..piv.len()).map(|i| r.row(i)).collect()
}

/// Whether every vector of `sub` lies in the span of `sup`.
pub fn span_contains<T: Scalar>(n: usize, sup: &[Vec<T>], sub: &[Vec<T>]) -> bool {
    let r = span_rank(n, sup);
    let mut all = sup.to_vec();
    all.extend(sub.iter().cloned());
    span_rank(n, &all) == r
}

/// Basis of the intersection of two subspaces given by spanning sets.
pub fn span_intersection<T: Scalar>(n: usize, a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve Σ α_i a_i − Σ β_j b_j = 0 and map α back.
    let mut cols = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
    let ker = Mat::from_cols(n, &cols).kernel();
    let vs: Vec<Vec<T>> = ker
        .iter()
        .map(|k| {
            let mut v = vec![T::zero(); n];
            for (i, ai) in a.iter().enumerate() {
                if k[i].is_zero() {
                    continue;
                }
                for (t, x) in ai.iter().enumerate() {
                    v[t] = v[t].clone() + x.clone() * k[i].clone();
                }
            }
            v
        })
        .collect();
    span_basis(n, &vs)
}

/// Annihilator of a subspace: all functionals vanishing on it.
pub fn annihilator<T: Scalar>(n: usize, vs: &[Vec<T>]) -> Vec<Vec<T>> {
    if vs.is_empty() {
        return (0..n)
            .map(|i| {
                let mut e = vec![T::zero(); n];
                e[i] = T::one();
                e
            })
            .collect();
    }
    Mat::from_rows(vs.to_vec()).kernel()
}

/// Coordinates of `v` in the basis `basis` (columns), if it lies in the span.
pub fn coordinates<T: Scalar>(n: usize, basis: &[Vec<T>], v: &[T]) -> Option<Vec<T>> {
    if basis.is_empty() {
        return v.iter().all(Zero::is_zero).then(Vec::new);
    }
    Mat::from_cols(n, basis).solve(v)
}

/// Sign-definiteness data from an exact symmetric `LDLᵀ` with symmetric pivoting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn is_psd(&self) -> bool {
        self.negative == 0
    }

    pub fn is_nsd(&self) -> bool {
        self.positive == 0
    }
}

/// Inertia of a symmetric rational matrix via congruence diagonalization.
pub fn inertia(m: &QMat) -> Inertia {
    assert!(m.is_square());
    let n = m.rows();
    let mut a = m.clone();
    let mut diag = Vec::new();
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        if let Some(&p) = active.iter().find(|&&i| !a[(i, i)].is_zero()) {
            let d = a[(p, p)].clone();
            let others: Vec<usize> = active.iter().copied().filter(|&i| i != p).collect();
            for &i in &others {
                let f = a[(i, p)].clone() / d.clone();
                if f.is_zero() {
                    continue;
                }
                for &j in &others {
                    let v = f.clone() * a[(p, j)].clone();
                    a[(i, j)] = a[(i, j)].clone() - v;
                }
            }
            diag.push(d);
            active = others;
            continue;
        }
        // All remaining diagonal entries vanish; use an off-diagonal pair.
        let pair = active.iter().enumerate().find_map(|(s, &i)| {
            active[s + 1..].iter().find(|&&j| !a[(i, j)].is_zero()).map(|&j| (i, j))
        });
        match pair {
            None => {
                diag.extend(std::iter::repeat_n(Q::zero(), active.len()));
                break;
            }
            Some((i, j)) => {
                // Replace row/column i by i + j, which creates a nonzero diagonal entry.
                for &k in &active {
                    let v = a[(j, k)].clone();
                    a[(i, k)] = a[(i, k)].clone() + v;
                }
                for &k in &active {
                    let v = a[(k, j)].clone();
                    a[(k, i)] = a[(k, i)].clone() + v;
                }
            }
        }
    }
    let positive = diag.iter().filter(|d| d.is_positive()).count();
    let negative = diag.iter().filter(|d| d.is_negative()).count();
    Inertia { positive, negative, zero: n - positive - negative }
}

/// A rational `x` with `xᵀ m x < 0`, or `None` when `m` is positive semidefinite.
pub fn negative_direction(m: &QMat) -> Option<Vec<Q>> {
    assert!(m.is_square());
    let n = m.rows();
    let mut a = m.clone();
    // Row `i` of `basis` is the vector whose form values `a` currently tracks.
    let mut basis: Vec<Vec<Q>> = (0..n).map(|i| crate::liealg::unit(n, i)).collect();
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        if let Some(&p) = active.iter().find(|&&i| !a[(i, i)].is_zero()) {
            let d = a[(p, p)].clone();
            if d.is_negative() {
                return Some(basis[p].clone());
            }
            let others: Vec<usize> = active.iter().copied().filter(|&i| i != p).collect();
            for &i in &others {
                let f = a[(i, p)].clone() / d.clone();
                if f.is_zero() {
                    continue;
                }
                for &j in &others {
                    let v = f.clone() * a[(p, j)].clone();
                    a[(i, j)] = a[(i, j)].clone() - v;
                }
                let bp = basis[p].clone();
                for (x, y) in basis[i].iter_mut().zip(&bp) {
                    *x -= &f * y;
                }
            }
            active = others;
            continue;
        }
        let pair = active.iter().enumerate().find_map(|(s, &i)| {
            active[s + 1..].iter().find(|&&j| !a[(i, j)].is_zero()).map(|&j| (i, j))
        });
        let (i, j) = pair?;
        // Zero diagonal: (b_i + t b_j) has value 2t·a_ij.
        let t = if a[(i, j)].is_positive() { -Q::one() } else { Q::one() };
        return Some(basis[i].iter().zip(&basis[j]).map(|(x, y)| x + &t * y).collect());
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn qm(rows: &[&[i64]]) -> QMat {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn negative_directions() {
        assert!(negative_direction(&qm(&[&[2, 1], &[1, 1]])).is_none());
        for m in [qm(&[&[1, 2], &[2, 1]]), qm(&[&[0, 1], &[1, 0]]), qm(&[&[0, 0, 0], &[0, 1, 3], &[0, 3, 4]])] {
            let x = negative_direction(&m).unwrap();
            let mx = m.mul_vec(&x);
            assert!(x.iter().zip(&mx).map(|(a, b)| a * b).sum::<Q>().is_negative());
        }
    }

    #[test]
    fn rank_kernel_and_solve() {
        let a = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(Zero::is_zero));
        let b = vec![q(6), q(12), q(2)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        assert!(a.solve(&[q(1), q(0), q(0)]).is_none());
    }

    #[test]
    fn inverse_and_determinant() {
        let a = qm(&[&[2, 1], &[7, 4]]);
        assert_eq!(a.det(), q(1));
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Mat::identity(2));
        assert!(qm(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn rref_is_reduced() {
        let a = Mat::from_rows(vec![
            vec![qf(1, 2), qf(1, 3), q(1)],
            vec![qf(1, 4), qf(-1, 3), q(0)],
        ]);
        let (r, piv) = a.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r[(0, 0)], q(1));
        assert_eq!(r[(1, 1)], q(1));
        assert_eq!(r[(0, 1)], q(0));
    }

    #[test]
    fn inertia_of_indefinite_forms() {
        let h = qm(&[&[0, 1], &[1, 0]]);
        assert_eq!(inertia(&h), Inertia { positive: 1, negative: 1, zero: 0 });
        let p = qm(&[&[2, 1, 0], &[1, 2, 0], &[0, 0, 0]]);
        assert_eq!(inertia(&p), Inertia { positive: 2, negative: 0, zero: 1 });
    }

    #[test]
    fn subspace_operations() {
        let e1 = vec![q(1), q(0), q(0)];
        let e2 = vec![q(0), q(1), q(0)];
        let e3 = vec![q(0), q(0), q(1)];
        let a = vec![e1.clone(), e2.clone()];
        let b = vec![e2.clone(), e3.clone()];
        let i = span_intersection(3, &a, &b);
        assert_eq!(i.len(), 1);
        assert!(span_contains(3, std::slice::from_ref(&e2), &i));
        assert_eq!(annihilator(3, &a), vec![e3.clone()]);
    }
}
