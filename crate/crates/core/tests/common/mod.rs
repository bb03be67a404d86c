//! Seeded generators and small oracles shared by the integration tests.
#![allow(dead_code)]

use jetnorm::jetlie::{ActionData, FormalDiffeo, JetElement};
use jetnorm::liealg::LieAlgebra;
use jetnorm::linalg::{Mat, QMat};
use jetnorm::rational::{q, qf, Q};
use jetnorm::ring::{monomials_of_degree, FormalVectorField, MultiIndex, TruncSeries};
use num::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Small rational with numerator in `−3..=3` and denominator in `1..=3`.
pub fn small_q(r: &mut ChaCha8Rng) -> Q {
    qf(r.gen_range(-3..=3), r.gen_range(1..=3))
}

pub fn nonzero_q(r: &mut ChaCha8Rng) -> Q {
    loop {
        let x = small_q(r);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_matrix(r: &mut ChaCha8Rng, d: usize) -> QMat {
    Mat::from_fn(d, d, |_, _| small_q(r))
}

pub fn random_invertible(r: &mut ChaCha8Rng, d: usize) -> QMat {
    loop {
        let m = random_matrix(r, d);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Random homogeneous polynomial of degree `n` with about `density` of the
/// monomials present.
pub fn random_homogeneous(r: &mut ChaCha8Rng, d: usize, order: usize, n: usize, density: f64) -> TruncSeries {
    let mut f = TruncSeries::zero(d, order);
    for m in monomials_of_degree(d, n) {
        if r.gen_bool(density) {
            f.add_term(m, small_q(r));
        }
    }
    f
}

/// Random series with terms in degrees `lo..=order`.
pub fn random_series(r: &mut ChaCha8Rng, d: usize, order: usize, lo: usize, density: f64) -> TruncSeries {
    (lo..=order).fold(TruncSeries::zero(d, order), |acc, n| acc.add(&random_homogeneous(r, d, order, n, density)))
}

/// Random element of `I ⊗ k` (no constant term).
pub fn random_jet(r: &mut ChaCha8Rng, d: usize, order: usize, kdim: usize, density: f64) -> JetElement {
    JetElement::new((0..kdim).map(|_| random_series(r, d, order, 1, density)).collect()).unwrap()
}

pub fn random_constant_jet(r: &mut ChaCha8Rng, d: usize, order: usize, kdim: usize, density: f64) -> JetElement {
    JetElement::new((0..kdim).map(|_| random_series(r, d, order, 0, density)).collect()).unwrap()
}

pub fn random_field(r: &mut ChaCha8Rng, lin: &QMat, order: usize, density: f64) -> FormalVectorField {
    let d = lin.rows();
    let higher: Vec<TruncSeries> = (0..d).map(|_| random_series(r, d, order, 2, density)).collect();
    FormalVectorField::linear(lin, order).add(&FormalVectorField::new(higher).unwrap())
}

pub fn rotation() -> QMat {
    Mat::from_rows(vec![vec![q(0), q(-1)], vec![q(1), q(0)]])
}

/// Matrices `H, E, F` of the standard `sl2(ℝ)` action on `ℝ²`.
pub fn sl2_standard_mats() -> Vec<QMat> {
    let h = Mat::diag(&[q(1), q(-1)]);
    let e = Mat::from_rows(vec![vec![q(0), q(1)], vec![q(0), q(0)]]);
    let f = Mat::from_rows(vec![vec![q(0), q(0)], vec![q(1), q(0)]]);
    vec![h, e, f]
}

pub fn sl2_action(order: usize) -> ActionData {
    ActionData::linear(LieAlgebra::sl2r(), LieAlgebra::su2(), &sl2_standard_mats(), order).unwrap()
}

/// `su2` acting trivially on `ℝ²` with constant twist `σ0 = id`.
pub fn su2_identity_twist(order: usize) -> ActionData {
    let k = LieAlgebra::su2();
    let a = ActionData::linear(LieAlgebra::su2(), k.clone(), &vec![Mat::zeros(2, 2); 3], order).unwrap();
    let sigma = (0..3).map(|i| JetElement::constant(2, order, &jetnorm::liealg::unit(3, i))).collect();
    a.with_sigma(sigma).unwrap()
}

/// Independent push-forward check: `w(h(x)) = Dh(x)·v(x)` modulo degree `N+1`.
pub fn pushforward_oracle(h: &FormalDiffeo, v: &FormalVectorField, w: &FormalVectorField) -> bool {
    let d = v.dim();
    for i in 0..d {
        let lhs = w.comps()[i].compose(h.comps()).unwrap();
        let mut rhs = TruncSeries::zero(d, v.order());
        for j in 0..d {
            rhs = rhs.add(&h.comps()[i].partial(j).mul(&v.comps()[j]));
        }
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// `[v_S, w]_i = v_S(w_i) − w((Sx)_i)` computed from partial derivatives.
pub fn linear_bracket_oracle(s: &QMat, w: &FormalVectorField) -> FormalVectorField {
    let (d, n) = (w.dim(), w.order());
    let sx: Vec<TruncSeries> = (0..d)
        .map(|i| (0..d).fold(TruncSeries::zero(d, n), |acc, k| acc.add(&TruncSeries::var(d, n, k).scale(&s[(i, k)]))))
        .collect();
    let apply = |field: &[TruncSeries], f: &TruncSeries| {
        (0..d).fold(TruncSeries::zero(d, n), |acc, j| acc.add(&field[j].mul(&f.partial(j))))
    };
    let comps = (0..d).map(|i| apply(&sx, &w.comps()[i]).sub(&apply(w.comps(), &sx[i]))).collect();
    FormalVectorField::from_comps(comps).unwrap()
}

pub fn monomial(d: usize, order: usize, e: &[u32], c: Q) -> TruncSeries {
    TruncSeries::monomial(d, order, MultiIndex::new(e.to_vec()), c)
}

pub fn one() -> Q {
    Q::one()
}
