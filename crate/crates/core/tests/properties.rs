//! Randomized invariants, driven by proptest seeds through the shared
//! generators.

mod common;

use common::*;
use jetnorm::cocycle::{admissible_lambda_basis, cocycle_eval, gram};
use jetnorm::cohomology::{ce_differential, cochain_dim, PModule};
use jetnorm::factorize::{center_complement_check, center_subspace};
use jetnorm::jetlie::{bch, gauge_apply, FormalDiffeo, JetElement};
use jetnorm::liealg::{chevalley_jordan, is_semisimple_matrix, LieAlgebra};
use jetnorm::linalg::{annihilator, span_basis, span_contains, span_intersection, Mat, QMat};
use jetnorm::lp::cone_pointed;
use jetnorm::normalform::{commutes_with_semisimple_part, mc_residual, poincare_dulac};
use jetnorm::rational::Q;
use jetnorm::ring::{FormalVectorField, TruncSeries};
use num::Zero;
use proptest::prelude::*;
use rand::Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn random_vectors(r: &mut rand_chacha::ChaCha8Rng, n: usize, count: usize) -> Vec<Vec<Q>> {
    (0..count).map(|_| (0..n).map(|_| small_q(r)).collect()).collect()
}

fn field_jacobi_defect(u: &FormalVectorField, v: &FormalVectorField, w: &FormalVectorField) -> FormalVectorField {
    let a = u.bracket(&v.bracket(w).unwrap()).unwrap();
    let b = v.bracket(&w.bracket(u).unwrap()).unwrap();
    let c = w.bracket(&u.bracket(v).unwrap()).unwrap();
    a.add(&b).add(&c)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn ring_axioms(seed in any::<u64>(), d in 1usize..=3, order in 0usize..=4) {
        let mut r = rng(seed);
        let [f, g, h] = [(); 3].map(|_| random_series(&mut r, d, order, 0, 0.5));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert_eq!(f.mul(&TruncSeries::one(d, order)), f.clone());
    }

    #[test]
    fn exterior_d_is_leibniz_below_top_degree(seed in any::<u64>(), d in 1usize..=3, order in 1usize..=4) {
        let mut r = rng(seed);
        let (f, g) = (random_series(&mut r, d, order, 0, 0.5), random_series(&mut r, d, order, 0, 0.5));
        let lhs = f.mul(&g).exterior_d().jet_project(order - 1).unwrap();
        let rhs = g.exterior_d().mul_fn(&f).add(&f.exterior_d().mul_fn(&g)).jet_project(order - 1).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_derivative_is_a_derivation(seed in any::<u64>(), d in 1usize..=3, order in 1usize..=4) {
        let mut r = rng(seed);
        let lin = random_matrix(&mut r, d);
        let v = random_field(&mut r, &lin, order, 0.4);
        let (f, g) = (random_series(&mut r, d, order, 0, 0.5), random_series(&mut r, d, order, 0, 0.5));
        let lhs = v.lie_derivative_fn(&f.mul(&g)).unwrap();
        let rhs = v.lie_derivative_fn(&f).unwrap().mul(&g).add(&f.mul(&v.lie_derivative_fn(&g).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jet_projection_commutes_with_products_and_d(seed in any::<u64>(), d in 1usize..=3, order in 2usize..=4) {
        let mut r = rng(seed);
        let k = r.gen_range(1..order);
        let (f, g) = (random_series(&mut r, d, order, 0, 0.5), random_series(&mut r, d, order, 0, 0.5));
        let (fk, gk) = (f.jet_project(k).unwrap(), g.jet_project(k).unwrap());
        prop_assert_eq!(f.mul(&g).jet_project(k).unwrap(), fk.mul(&gk));
        prop_assert_eq!(fk.exterior_d().jet_project(k - 1).unwrap(), f.exterior_d().jet_project(k - 1).unwrap());
    }

    #[test]
    fn chevalley_jordan_decomposition(seed in any::<u64>(), d in 1usize..=4) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, d);
        let (s, n) = chevalley_jordan(&a);
        prop_assert_eq!(&s + &n, a);
        prop_assert_eq!(&s * &n, &n * &s);
        prop_assert!(n.pow(d).is_zero());
        prop_assert!(is_semisimple_matrix(&s));
    }

    #[test]
    fn killing_form_is_ad_invariant(seed in any::<u64>(), which in 0usize..4) {
        let mut r = rng(seed);
        let alg = [LieAlgebra::su2(), LieAlgebra::so3(), LieAlgebra::sl2r(), LieAlgebra::su3()][which].clone();
        let [x, y, z] = [(); 3].map(|_| random_vectors(&mut r, alg.dim(), 1).remove(0));
        let lhs = alg.killing(&alg.bracket(&x, &y), &z) + alg.killing(&y, &alg.bracket(&x, &z));
        prop_assert!(lhs.is_zero());
    }

    #[test]
    fn center_and_hyperbolic_parts_split_v(seed in any::<u64>(), d in 1usize..=4) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, d);
        prop_assume!(center_subspace(&a).is_ok());
        prop_assert!(center_complement_check(&a).unwrap());
    }

    #[test]
    fn annihilator_of_intersection(seed in any::<u64>(), n in 1usize..=5) {
        let mut r = rng(seed);
        let (ka, kb) = (r.gen_range(0..=n), r.gen_range(0..=n));
        let (a, b) = (random_vectors(&mut r, n, ka), random_vectors(&mut r, n, kb));
        let sum: Vec<Vec<Q>> = annihilator(n, &a).into_iter().chain(annihilator(n, &b)).collect();
        let ann_cap = annihilator(n, &span_intersection(n, &a, &b));
        prop_assert!(span_contains(n, &ann_cap, &sum));
        prop_assert!(span_contains(n, &sum, &ann_cap));
        prop_assert_eq!(span_basis(n, &sum).len(), ann_cap.len());
    }

    #[test]
    fn cone_certificates_verify(seed in any::<u64>(), dim in 1usize..=3, count in 1usize..=5) {
        let mut r = rng(seed);
        let gens: Vec<Vec<Q>> = random_vectors(&mut r, dim, count).into_iter().filter(|g| g.iter().any(|x| !x.is_zero())).collect();
        prop_assume!(!gens.is_empty());
        prop_assert!(cone_pointed(&gens).verify(&gens));
    }
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn field_bracket_jacobi(seed in any::<u64>(), d in 1usize..=3, order in 1usize..=3) {
        let mut r = rng(seed);
        let [u, v, w] = [(); 3].map(|_| {
            let lin = random_matrix(&mut r, d);
            random_field(&mut r, &lin, order, 0.4)
        });
        prop_assert!(field_jacobi_defect(&u, &v, &w).is_zero());
    }

    #[test]
    fn jet_bracket_jacobi(seed in any::<u64>(), d in 1usize..=2, order in 0usize..=3) {
        let mut r = rng(seed);
        let k = LieAlgebra::su2();
        let [a, b, c] = [(); 3].map(|_| random_constant_jet(&mut r, d, order, 3, 0.4));
        let t1 = a.bracket(&b.bracket(&c, &k).unwrap(), &k).unwrap();
        let t2 = b.bracket(&c.bracket(&a, &k).unwrap(), &k).unwrap();
        let t3 = c.bracket(&a.bracket(&b, &k).unwrap(), &k).unwrap();
        prop_assert!(t1.add(&t2).add(&t3).is_zero());
    }

    #[test]
    fn bch_is_associative(seed in any::<u64>(), order in 1usize..=3) {
        let mut r = rng(seed);
        let k = LieAlgebra::su2();
        let [a, b, c] = [(); 3].map(|_| random_jet(&mut r, 2, order, 3, 0.4));
        let left = bch(&k, &bch(&k, &a, &b).unwrap(), &c).unwrap();
        let right = bch(&k, &a, &bch(&k, &b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn gauge_is_an_automorphism(seed in any::<u64>(), order in 1usize..=3) {
        let mut r = rng(seed);
        let k = LieAlgebra::su2();
        let xi = random_jet(&mut r, 2, order, 3, 0.4);
        let (a, b) = (random_constant_jet(&mut r, 2, order, 3, 0.4), random_constant_jet(&mut r, 2, order, 3, 0.4));
        let g = |x: &JetElement| gauge_apply(&k, &xi, x).unwrap();
        prop_assert_eq!(g(&a.bracket(&b, &k).unwrap()), g(&a).bracket(&g(&b), &k).unwrap());
        prop_assert_eq!(gauge_apply(&k, &xi.neg(), &g(&a)).unwrap(), a);
    }

    #[test]
    fn gauges_preserve_maurer_cartan(seed in any::<u64>(), order in 1usize..=3, which in 0usize..2) {
        let mut r = rng(seed);
        let a = if which == 0 { sl2_action(order) } else { su2_identity_twist(order) };
        prop_assert!(mc_residual(&a).unwrap().is_zero());
        let xi = random_jet(&mut r, 2, order, 3, 0.4);
        prop_assert!(mc_residual(&a.gauge(&xi).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn diffeo_inverse_and_pushforward(seed in any::<u64>(), d in 1usize..=2, order in 1usize..=3) {
        let mut r = rng(seed);
        let lin = random_invertible(&mut r, d);
        let higher = random_field(&mut r, &Mat::zeros(d, d), order, 0.4);
        let vl = random_matrix(&mut r, d);
        let h = FormalDiffeo::linear(&lin, order).unwrap().compose(&FormalDiffeo::near_identity(&higher)).unwrap();
        let inv = h.invert().unwrap();
        prop_assert_eq!(h.compose(&inv).unwrap(), FormalDiffeo::identity(d, order));
        let v = random_field(&mut r, &vl, order, 0.4);
        prop_assert!(pushforward_oracle(&h, &v, &h.act_field(&v).unwrap()));
    }

    #[test]
    fn poincare_dulac_conjugates_and_commutes(seed in any::<u64>(), d in 1usize..=2, order in 1usize..=3) {
        let mut r = rng(seed);
        let a: QMat = random_matrix(&mut r, d);
        let v = random_field(&mut r, &a, order, 0.5);
        let pd = poincare_dulac(&v).unwrap();
        prop_assert!(pushforward_oracle(&pd.diffeo, &v, &pd.normal_form));
        prop_assert!(commutes_with_semisimple_part(&pd.normal_form).unwrap());
        prop_assert!(linear_bracket_oracle(&pd.semisimple_part, &pd.normal_form.higher_order()).is_zero());
        prop_assert_eq!(pd.replay().unwrap(), pd.normal_form.clone());
        prop_assert_eq!(pd.normal_form.linear_part(), a);
    }

    #[test]
    fn coboundary_squares_to_zero(n in 0usize..=2, k in 0usize..=1) {
        let p = LieAlgebra::sl2r();
        let fiber = LieAlgebra::su2();
        let chi = vec![vec![Q::zero(); 3]; 3];
        let module = PModule::poly_tensor(&p, &sl2_standard_mats(), n, &fiber, &chi).unwrap();
        let (d0, d1) = (ce_differential(&module, k), ce_differential(&module, k + 1));
        prop_assert_eq!(d0.cols(), cochain_dim(&module, k));
        prop_assert!((&d1 * &d0).is_zero());
    }

    #[test]
    fn closed_functionals_give_two_cocycles(seed in any::<u64>(), order in 1usize..=2) {
        let mut r = rng(seed);
        let k = LieAlgebra::su2();
        let basis = admissible_lambda_basis(2, order, &[]).unwrap();
        prop_assume!(!basis.is_empty());
        let l = basis.iter().fold(basis[0].scale(&Q::zero()), |acc, b| acc.add(&b.scale(&small_q(&mut r))));
        let [a, b, c] = [(); 3].map(|_| random_constant_jet(&mut r, 2, order, 3, 0.5));
        let w = |x: &JetElement, y: &JetElement| cocycle_eval(&l, &k, x, y);
        prop_assert_eq!(w(&a, &b), -w(&b, &a));
        let br = |x: &JetElement, y: &JetElement| x.bracket(y, &k).unwrap();
        let cyc = w(&br(&a, &b), &c) + w(&br(&b, &c), &a) + w(&br(&c, &a), &b);
        prop_assert!(cyc.is_zero());
    }

    #[test]
    fn invariant_functionals_have_symmetric_grams(seed in any::<u64>(), order in 1usize..=2) {
        let mut r = rng(seed);
        let v = FormalVectorField::linear(&random_matrix(&mut r, 2), order);
        for l in admissible_lambda_basis(2, order, std::slice::from_ref(&v)).unwrap() {
            let g = gram(&l, &v).unwrap();
            prop_assert_eq!(g.matrix.transpose(), g.matrix);
        }
    }
}
