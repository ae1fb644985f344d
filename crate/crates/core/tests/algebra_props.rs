mod common;

use common::cases;
use hochkit_core::algebra::{is_inner, tensor_over, twist_iso, validate, InnerSearch};
use hochkit_core::builtin::{build, builtin_family, poly1, Family};
use hochkit_core::exactla::{inverse, rat, MatrixQ, Rational};
use hochkit_core::smash::{smash_build, SmashMode};
use hochkit_core::{Automorphism, Bimodule, GradedAlgebra};
use proptest::prelude::*;

#[test]
fn builtins_validate_up_to_total_weight_eight() {
    for top in 0..=8 {
        for spec in ["ground", "poly1(2)", "poly1(-1)", "trunc_poly(3)", "cyclic_group(4)"] {
            let (a, autos) = builtin_family(spec, &[], Some(&[top])).unwrap();
            let r = validate(&a, &autos);
            assert!(r.passed(), "{spec} up to {top}: {:?}", r.violations);
        }
    }
    for (ty, tx) in [(4, 4), (5, 3), (2, 6)] {
        let (a, autos) = build(&Family::QPlane { q: rat(3) }, Some(&[ty, tx])).unwrap();
        assert!(validate(&a, &autos).passed());
    }
}

#[test]
fn inverse_automorphism_per_weight_block() {
    for c in cases(5) {
        for k in -2..=2 {
            let s = c.sigma.pow(k);
            assert_eq!(s.matrix() * s.inverse_matrix(), MatrixQ::identity(c.alg.dim()));
            for (_, idx) in c.alg.weights() {
                let block = s.matrix().select_rows(idx).select_cols(idx);
                let inv = s.inverse_matrix().select_rows(idx).select_cols(idx);
                assert_eq!(inverse(&block), Some(inv));
            }
        }
    }
}

#[test]
fn twist_isomorphisms_compose() {
    for c in cases(4) {
        let id = Automorphism::identity(&c.alg);
        let (t1, t2) = (c.sigma.clone(), c.sigma.inverse().pow(2));
        for (rho, sigma) in [(&id, &id), (&c.sigma, &id), (&id, &c.sigma)] {
            let first = twist_iso(&c.alg, rho, sigma, &t1).unwrap();
            let second = twist_iso(&c.alg, &t1.compose(rho), &t1.compose(sigma), &t2).unwrap();
            let direct = twist_iso(&c.alg, rho, sigma, &t2.compose(&t1)).unwrap();
            assert_eq!(first.then(&second).matrix, direct.matrix, "{}", c.name);
            assert!(direct.is_isomorphism());
        }
    }
}

#[test]
fn tensoring_with_the_algebra_is_trivial() {
    for c in cases(4) {
        let id = Automorphism::identity(&c.alg);
        for m in [Bimodule::regular(&c.alg), Bimodule::twisted(&c.alg, &c.sigma, &id)] {
            let t = tensor_over(&c.alg, &m, &Bimodule::regular(&c.alg)).unwrap();
            // m ⊗ a ↦ m ◂ a is inverse to m ↦ m ⊗ 1
            let unit = c.alg.unit_index().unwrap();
            let mut forward = Vec::new();
            for k in 0..t.module.dim() {
                let (x, a) = t.lift(k);
                let v = m.right_apply(&c.alg, &[(x, rat(1))], &[(a, rat(1))]).unwrap();
                forward.push(v);
            }
            let fwd = MatrixQ::from_sparse_columns(m.dim(), &forward);
            let back: Vec<_> = (0..m.dim()).map(|x| t.project(x, unit).unwrap().clone()).collect();
            let bwd = MatrixQ::from_sparse_columns(t.module.dim(), &back);
            assert_eq!(&fwd * &bwd, MatrixQ::identity(m.dim()), "{}", c.name);
            assert_eq!(&bwd * &fwd, MatrixQ::identity(t.module.dim()), "{}", c.name);
            for wt in t.weights() {
                assert_eq!(t.dim_after(wt), m.indices_of_weight(wt).len());
            }
        }
    }
}

#[test]
fn inner_automorphisms() {
    let (c3, autos) = build(&Family::CyclicGroup { m: 3 }, None).unwrap();
    // kC₃ is commutative, so only the identity is inner
    assert!(matches!(is_inner(&c3, &autos[0], 100).unwrap(), InnerSearch::Inner(_)));
    assert_eq!(is_inner(&c3, &autos[1], 1000).unwrap(), InnerSearch::NotInner);
    let (t, autos) = build(&Family::TruncPoly { n: 2 }, None).unwrap();
    assert_eq!(is_inner(&t, &autos[1], 1000).unwrap(), InnerSearch::NotInner);
}

fn element(alg: &GradedAlgebra) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(-3i64..=3, alg.dim()).prop_map(|v| v.into_iter().map(rat).collect())
}

/// Associativity on products whose total weight stays in the window.
fn check_associative(alg: &GradedAlgebra, u: &[Rational], v: &[Rational], w: &[Rational]) -> Result<(), TestCaseError> {
    if let (Ok(uv), Ok(vw)) = (alg.multiply(u, v), alg.multiply(v, w)) {
        if let (Ok(l), Ok(r)) = (alg.multiply(&uv, w), alg.multiply(u, &vw)) {
            prop_assert_eq!(l, r);
        }
    }
    Ok(())
}

fn low_part(alg: &GradedAlgebra, v: Vec<Rational>, cap: i64) -> Vec<Rational> {
    v.into_iter().enumerate().map(|(i, c)| if alg.weight(i).total() <= cap { c } else { rat(0) }).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smash_products_are_associative(seed in prop::collection::vec(-3i64..=3, 48)) {
        let (a, sigma) = poly1(3, 3);
        let s = smash_build(&a, &sigma, SmashMode::Nat { x_cap: 2 }).unwrap().algebra;
        let n = s.dim();
        let mk = |k: usize| low_part(&s, seed[k * 16..k * 16 + n].iter().map(|&x| rat(x)).collect(), 2);
        check_associative(&s, &mk(0), &mk(1), &mk(2))?;
    }

    #[test]
    fn group_algebra_smash_is_associative(u in element(&build(&Family::CyclicGroup { m: 3 }, None).unwrap().0),
                                         v in element(&build(&Family::CyclicGroup { m: 3 }, None).unwrap().0)) {
        let (c3, autos) = build(&Family::CyclicGroup { m: 3 }, None).unwrap();
        let s = smash_build(&c3, &autos[1], SmashMode::Cyclic { m: 2 }).unwrap().algebra;
        let pad = |x: &[Rational]| -> Vec<Rational> { x.iter().cloned().chain(x.iter().cloned()).collect() };
        check_associative(&s, &pad(&u), &pad(&v), &pad(&u))?;
    }

    #[test]
    fn automorphisms_are_multiplicative(u in element(&poly1(1, 4).0), v in element(&poly1(1, 4).0), k in -3i64..=3) {
        let (a, sigma) = poly1(-2, 4);
        let s = sigma.pow(k);
        let (u, v) = (low_part(&a, u, 2), low_part(&a, v, 2));
        let lhs = s.apply(&a.multiply(&u, &v).unwrap());
        let rhs = a.multiply(&s.apply(&u), &s.apply(&v)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
