mod common;

use common::{cases, chain_window, w};
use hochkit_core::builtin::{build, poly1, Family};
use hochkit_core::cyclic::{associated_cyclic, bicomplex_total_homology, cyclic_from_ops};
use hochkit_core::hochschild::build_chain_window;
use hochkit_core::paracyclic::{build_paracyclic, paracyclic_homology, t_diagonal_mismatches};
use hochkit_core::smash::{smash_build, SmashMode};
use hochkit_core::{Automorphism, Bimodule, Weight, Window};

#[test]
fn twisted_coefficients_square_to_zero() {
    let (a, q) = poly1(3, 4);
    let (t, tt) = build(&Family::TruncPoly { n: 3 }, None).unwrap();
    let (g, gg) = build(&Family::CyclicGroup { m: 4 }, None).unwrap();
    for (alg, sigma, win) in [(&a, &q, Window::upto(&[3])), (&t, &tt[1], Window::complete(1)), (&g, &gg[1], Window::complete(1))] {
        let autos = [Automorphism::identity(alg), sigma.clone(), sigma.inverse()];
        for rho in &autos {
            for tau in &autos {
                let m = Bimodule::twisted(alg, rho, tau);
                assert!(m.check_axioms(alg).is_empty());
                let c = build_chain_window(alg, &m, 3, &win, false).unwrap();
                assert_eq!(c.first_nonzero_square(), None, "{} with {}", alg.name(), m.name());
                assert!(c.is_weight_preserving());
            }
        }
    }
}

#[test]
fn normalized_agrees_with_unnormalized() {
    let (a, q) = poly1(-2, 4);
    let id = Automorphism::identity(&a);
    let (qp, _) = build(&Family::QPlane { q: hochkit_core::exactla::rat(2) }, Some(&[2, 2])).unwrap();
    let modules = [
        Bimodule::regular(&a),
        Bimodule::twisted(&a, &q, &id),
        Bimodule::twisted(&a, &id, &q.inverse()),
    ];
    for m in &modules {
        let u = build_chain_window(&a, m, 3, &Window::upto(&[4]), false).unwrap().betti_table().unwrap();
        let n = build_chain_window(&a, m, 3, &Window::upto(&[4]), true).unwrap().betti_table().unwrap();
        assert_eq!(u.dims(), n.dims(), "{}", m.name());
    }
    let reg = Bimodule::regular(&qp);
    let u = build_chain_window(&qp, &reg, 2, &Window::upto(&[2, 2]), false).unwrap().betti_table().unwrap();
    let n = build_chain_window(&qp, &reg, 2, &Window::upto(&[2, 2]), true).unwrap().betti_table().unwrap();
    assert_eq!(u.dims(), n.dims());
}

#[test]
fn polynomial_ring_in_two_variables() {
    // k[y] ⋊_id ℕ is k[x, y]: H₀ = A, H₁ = A dx ⊕ A dy, H₂ = A dx∧dy
    let (a, _) = poly1(1, 4);
    let id = Automorphism::identity(&a);
    let s = smash_build(&a, &id, SmashMode::Nat { x_cap: 4 }).unwrap().algebra;
    let reg = Bimodule::regular(&s);
    let win = Window::upto(&[4, 4]);
    for normalized in [true, false] {
        let c = build_chain_window(&s, &reg, 2, &win, normalized).unwrap();
        for y in 0..=4i64 {
            for x in 0..=(4 - y) {
                let wt = Weight(vec![y, x]);
                let h = |n| c.homology(n, &wt).unwrap().betti();
                assert_eq!(h(0), 1, "{wt}");
                assert_eq!(h(1), usize::from(y >= 1) + usize::from(x >= 1), "{wt}");
                assert_eq!(h(2), usize::from(y >= 1 && x >= 1), "{wt}");
            }
        }
    }
}

#[test]
fn paracyclic_structure_matches_hochschild() {
    for c in cases(3) {
        let (ops, derived) = build_paracyclic(&c.alg, &c.sigma, 3, &chain_window(&c.alg, 3)).unwrap();
        assert!(t_diagonal_mismatches(&ops, &derived).unwrap().is_empty(), "{}", c.name);
        let m = Bimodule::twisted(&c.alg, &c.sigma, &Automorphism::identity(&c.alg));
        let h = build_chain_window(&c.alg, &m, 3, &chain_window(&c.alg, 3), false).unwrap();
        for n in 1..=4 {
            assert_eq!(ops.space(n).tuples(), h.space(n).tuples());
            assert_eq!(&derived.b[n], h.boundary(n), "{} degree {n}", c.name);
        }
    }
}

#[test]
fn quasicyclic_columns_match_simplicial_homology() {
    for c in cases(3) {
        let (ops, derived) = build_paracyclic(&c.alg, &c.sigma, 3, &chain_window(&c.alg, 3)).unwrap();
        let win = cyclic_from_ops(&ops, &derived, 3).unwrap();
        let table = bicomplex_total_homology(&win, 2).unwrap();
        for ((n, wt), d) in &table.columns {
            assert_eq!(paracyclic_homology(&ops, &derived, *n, wt).unwrap().betti(), *d, "{} at ({n}, {wt})", c.name);
        }
    }
}

#[test]
fn cyclic_homology_of_group_algebra() {
    // HC_n(kC₃) is k³ in even degrees and 0 in odd ones
    let (g, autos) = build(&Family::CyclicGroup { m: 3 }, None).unwrap();
    let win = associated_cyclic(&g, &autos[0], 4, &Window::complete(1)).unwrap();
    let hc = bicomplex_total_homology(&win, 3).unwrap();
    let dims: Vec<_> = (0..=3).map(|n| hc.hc[&(n, w(0))]).collect();
    assert_eq!(dims, [3, 0, 3, 0]);
}
