//! Univariate polynomials over ℚ: arithmetic, squarefree decomposition,
//! Sturm counting, factorization, characteristic and minimal polynomials,
//! and certified numeric roots.

use num::bigint::BigInt;
use num::{Complex, Integer, One, Signed, ToPrimitive, Zero};

use crate::linalg::{Mat, QMat};
use crate::rational::{f64_to_q, lcm_of_denominators, q, q_to_f64, Q, GQ};

/// Dense polynomial, coefficients from low to high degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    c: Vec<Q>,
}

impl Poly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { c: vec![Q::one()] }
    }

    pub fn x() -> Self {
        Poly { c: vec![Q::zero(), Q::one()] }
    }

    pub fn constant(a: Q) -> Self {
        Self::new(vec![a])
    }

    /// `x − a`.
    pub fn linear_root(a: Q) -> Self {
        Self::new(vec![-a, Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.c.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        Poly { c: self.c.iter().map(|x| x / &l).collect() }
    }

    pub fn scale(&self, a: &Q) -> Self {
        Self::new(self.c.iter().map(|x| x * a).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division `self = quot·d + rem`.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.c.clone();
        let dl = d.lead();
        let dd = d.degree();
        if self.is_zero() || self.degree() < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let coef = &rem[k + dd] / &dl;
            if !coef.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    rem[k + j] -= &coef * b;
                }
            }
            quot[k] = coef;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.divrem(self).1.is_zero()
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.c.iter().enumerate().skip(1).map(|(i, a)| a * q(i as i64)).collect())
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.c.iter().rev().fold(Q::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_gq(&self, z: &GQ) -> GQ {
        self.c
            .iter()
            .rev()
            .fold(GQ::zero(), |acc, a| acc * z.clone() + Complex::new(a.clone(), Q::zero()))
    }

    pub fn eval_c64(&self, z: Complex<f64>) -> Complex<f64> {
        self.c.iter().rev().fold(Complex::new(0.0, 0.0), |acc, a| acc * z + q_to_f64(a))
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_mat(&self, a: &QMat) -> QMat {
        let n = a.rows();
        let mut acc = Mat::zeros(n, n);
        for c in self.c.iter().rev() {
            acc = &(&acc * a) + &Mat::identity(n).scale(c);
        }
        acc
    }

    /// `p(−x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .map(|(i, a)| if i % 2 == 1 { -a.clone() } else { a.clone() })
                .collect(),
        )
    }

    /// For an even polynomial `p(x) = h(x²)` returns `h`.
    pub fn even_part_in_square(&self) -> Option<Self> {
        if self.c.iter().enumerate().any(|(i, a)| i % 2 == 1 && !a.is_zero()) {
            return None;
        }
        Some(Self::new(self.c.iter().step_by(2).cloned().collect()))
    }

    /// Squarefree part (product of the distinct irreducible factors), monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree() == 0 {
            return Self::one();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Yun decomposition `p = lead · Π a_i^i` with `a_i` squarefree, coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.divrem(&a).0;
        let c = fp.divrem(&a).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree() > 0 {
            let g = b.gcd(&d);
            if g.degree() > 0 {
                out.push((g.clone(), i));
            }
            b = b.divrem(&g).0;
            let c = d.divrem(&g).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Primitive integer polynomial proportional to `self`, positive leading term.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let l = lcm_of_denominators(self.c.iter());
        let mut ints: Vec<BigInt> =
            self.c.iter().map(|a| (a * Q::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if !g.is_zero() {
            for x in ints.iter_mut() {
                *x = &*x / &g;
            }
        }
        if ints.last().is_some_and(Signed::is_negative) {
            for x in ints.iter_mut() {
                *x = -&*x;
            }
        }
        ints
    }

    /// Sturm sequence of a squarefree polynomial.
    fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].divrem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&q(-1)));
        }
        seq
    }

    /// Number of distinct real roots in the open interval `(−∞, 0)`.
    pub fn count_negative_real_roots(&self) -> usize {
        let mut p = self.squarefree_part();
        if p.coeff(0).is_zero() && !p.is_zero() {
            p = p.divrem(&Poly::x()).0;
        }
        if p.degree() == 0 {
            return 0;
        }
        let seq = p.sturm_sequence();
        let var = |signs: Vec<i32>| {
            let s: Vec<i32> = signs.into_iter().filter(|&x| x != 0).collect();
            s.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let sgn = |x: &Q| {
            if x.is_positive() {
                1
            } else if x.is_negative() {
                -1
            } else {
                0
            }
        };
        let at_minus_inf = var(seq
            .iter()
            .map(|s| {
                let l = sgn(&s.lead());
                if s.degree() % 2 == 1 {
                    -l
                } else {
                    l
                }
            })
            .collect());
        let at_zero = var(seq.iter().map(|s| sgn(&s.coeff(0))).collect());
        at_minus_inf.saturating_sub(at_zero)
    }

    /// Distinct rational roots.
    pub fn rational_roots(&self) -> Vec<Q> {
        if self.is_zero() {
            return Vec::new();
        }
        let ints = self.primitive_integer();
        let mut roots = Vec::new();
        if ints[0].is_zero() {
            roots.push(Q::zero());
        }
        let low = ints.iter().position(|x| !x.is_zero()).unwrap_or(0);
        let a0 = ints[low].abs();
        let an = ints.last().unwrap().abs();
        let (Some(dp), Some(dq)) = (divisors(&a0), divisors(&an)) else {
            return roots;
        };
        let mut cands: Vec<Q> = Vec::new();
        for p in &dp {
            for qq in &dq {
                let r = Q::new(p.clone(), qq.clone());
                cands.push(r.clone());
                cands.push(-r);
            }
        }
        cands.sort();
        cands.dedup();
        for r in cands {
            if self.eval(&r).is_zero() && !roots.contains(&r) {
                roots.push(r);
            }
        }
        roots.sort();
        roots
    }

    /// Factorization into monic irreducible factors with multiplicities.
    /// The flag is false when some factor was too large for exhaustive search
    /// and is returned unsplit.
    pub fn factor(&self) -> (Vec<(Poly, usize)>, bool) {
        let mut out = Vec::new();
        let mut complete = true;
        for (sf, mult) in self.squarefree_decomposition() {
            let (facs, ok) = factor_squarefree(&sf);
            complete &= ok;
            out.extend(facs.into_iter().map(|f| (f, mult)));
        }
        out.sort_by(|a, b| (a.0.degree(), &a.0.c).cmp(&(b.0.degree(), &b.0.c)));
        (out, complete)
    }

    /// Approximate roots of a squarefree polynomial, each with a radius `r`
    /// such that the disc of radius `r` around it contains a root.
    pub fn certified_roots(&self) -> Vec<(Complex<f64>, f64)> {
        let n = self.degree();
        if n == 0 {
            return Vec::new();
        }
        let p = self.monic();
        let dp = p.derivative();
        let approx = aberth(&p);
        approx
            .into_iter()
            .map(|z| {
                let zq: GQ = Complex::new(f64_to_q(z.re), f64_to_q(z.im));
                let pv = p.eval_gq(&zq);
                let dv = dp.eval_gq(&zq);
                let pn = q_to_f64(&(pv.re.clone() * pv.re.clone() + pv.im.clone() * pv.im.clone())).sqrt();
                let dn = q_to_f64(&(dv.re.clone() * dv.re.clone() + dv.im.clone() * dv.im.clone())).sqrt();
                let r = if pn == 0.0 {
                    0.0
                } else if dn == 0.0 {
                    f64::INFINITY
                } else {
                    (n as f64) * pn / dn * (1.0 + 1e-9)
                };
                (z, r.max(f64::MIN_POSITIVE))
            })
            .collect()
    }
}

/// Positive divisors of `n`, or `None` when `n` is too large to factor by
/// trial division.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Some(vec![BigInt::one()]);
    }
    let v = n.to_u64().filter(|&v| v <= 1_000_000_000_000)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            small.push(BigInt::from(d));
            if d * d != v {
                large.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

const KRONECKER_BUDGET: usize = 400_000;

fn factor_squarefree(p: &Poly) -> (Vec<Poly>, bool) {
    let mut factors = Vec::new();
    let mut rest = p.monic();
    for r in rest.rational_roots() {
        let lin = Poly::linear_root(r);
        rest = rest.divrem(&lin).0;
        factors.push(lin);
    }
    let mut complete = true;
    let mut stack = vec![rest];
    while let Some(f) = stack.pop() {
        if f.degree() == 0 {
            continue;
        }
        if f.degree() <= 3 {
            // No rational roots remain, so degree ≤ 3 is irreducible.
            factors.push(f.monic());
            continue;
        }
        match kronecker_split(&f) {
            Some(Some(g)) => {
                let h = f.divrem(&g).0;
                stack.push(g);
                stack.push(h);
            }
            Some(None) => factors.push(f.monic()),
            None => {
                complete = false;
                factors.push(f.monic());
            }
        }
    }
    (factors, complete)
}

/// Searches for a proper factor of degree ≤ deg/2. `Some(None)` certifies
/// irreducibility, `None` means the search budget was exceeded.
fn kronecker_split(f: &Poly) -> Option<Option<Poly>> {
    let n = f.degree();
    let fi = Poly::new(f.primitive_integer().into_iter().map(Q::from_integer).collect());
    let mut points: Vec<(Q, Vec<BigInt>)> = Vec::new();
    let mut t: i64 = 0;
    while points.len() <= n / 2 {
        let a = q(t);
        let v = fi.eval(&a);
        if !v.is_zero() {
            let divs = divisors(&v.to_integer())?;
            points.push((a, divs));
        }
        t = if t > 0 { -t } else { -t + 1 };
    }
    for e in 2..=n / 2 {
        let pts = &points[..=e];
        let mut budget: usize = 1;
        for (_, d) in pts {
            budget = budget.saturating_mul(2 * d.len());
        }
        if budget / 2 > KRONECKER_BUDGET {
            return None;
        }
        let mut idx = vec![0usize; e + 1];
        loop {
            let vals: Vec<Q> = idx
                .iter()
                .enumerate()
                .map(|(i, &k)| {
                    let d = &pts[i].1[k / 2];
                    let v = Q::from_integer(d.clone());
                    if k % 2 == 1 {
                        -v
                    } else {
                        v
                    }
                })
                .collect();
            if let Some(g) = interpolate(pts, &vals) {
                if g.degree() == e && g.c.iter().all(|c| c.is_integer()) && g.divides(&fi) {
                    return Some(Some(g.monic()));
                }
            }
            // Odometer over (divisor, sign); the first point keeps a positive sign.
            let mut pos = 0;
            loop {
                if pos > e {
                    break;
                }
                let limit = if pos == 0 { pts[0].1.len() * 2 } else { pts[pos].1.len() * 2 };
                let step = if pos == 0 { 2 } else { 1 };
                idx[pos] += step;
                if idx[pos] < limit {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos > e {
                break;
            }
        }
    }
    Some(None)
}

fn interpolate(pts: &[(Q, Vec<BigInt>)], vals: &[Q]) -> Option<Poly> {
    let mut acc = Poly::zero();
    for (i, (xi, _)) in pts.iter().enumerate() {
        let mut basis = Poly::one();
        let mut denom = Q::one();
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i != j {
                basis = basis.mul(&Poly::linear_root(xj.clone()));
                denom *= xi - xj;
            }
        }
        acc = acc.add(&basis.scale(&(&vals[i] / denom)));
    }
    Some(acc)
}

fn aberth(p: &Poly) -> Vec<Complex<f64>> {
    let n = p.degree();
    let coeffs: Vec<f64> = p.c.iter().map(q_to_f64).collect();
    let eval = |z: Complex<f64>| {
        let mut v = Complex::new(0.0, 0.0);
        let mut d = Complex::new(0.0, 0.0);
        for a in coeffs.iter().rev() {
            d = d * z + v;
            v = v * z + a;
        }
        (v, d)
    };
    let bound = 1.0 + coeffs[..n].iter().map(|a| a.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex<f64>> = (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex::from_polar(bound * 0.5 + 0.1, th)
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (v, d) = eval(z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let s: Complex<f64> = (0..n)
                .filter(|&j| j != k)
                .map(|j| Complex::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let w = ratio / (Complex::new(1.0, 0.0) - ratio * s);
            z[k] -= w;
            moved = moved.max(w.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (v, d) = eval(*zk);
            if d.norm() > 0.0 {
                *zk -= v / d;
            }
        }
        if zk.im.abs() < 1e-300 {
            zk.im = 0.0;
        }
    }
    z.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap_or(std::cmp::Ordering::Equal));
    z
}

/// Characteristic polynomial `det(x·I − A)` by Faddeev–LeVerrier.
pub fn charpoly(a: &QMat) -> Poly {
    assert!(a.is_square());
    let n = a.rows();
    let mut c = vec![Q::zero(); n + 1];
    c[n] = Q::one();
    let mut m = Mat::zeros(n, n);
    for k in 1..=n {
        m = &(a * &m) + &Mat::identity(n).scale(&c[n - k + 1]);
        let am = a * &m;
        c[n - k] = -am.trace() / q(k as i64);
    }
    Poly::new(c)
}

/// Minimal polynomial via the first linear dependency among `I, A, A², …`.
pub fn minpoly(a: &QMat) -> Poly {
    assert!(a.is_square());
    let n = a.rows();
    let flatten = |m: &QMat| -> Vec<Q> { (0..n * n).map(|k| m[(k / n, k % n)].clone()).collect() };
    let mut powers = vec![flatten(&Mat::identity(n))];
    let mut cur = Mat::identity(n);
    loop {
        cur = &cur * a;
        let v = flatten(&cur);
        let basis = Mat::from_cols(n * n, &powers);
        if let Some(coef) = basis.solve(&v) {
            let mut c: Vec<Q> = coef.into_iter().map(|x| -x).collect();
            c.push(Q::one());
            return Poly::new(c);
        }
        powers.push(v);
    }
}
