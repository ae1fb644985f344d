#![allow(dead_code)]

use hochkit_core::builtin::{build, poly1, Family};
use hochkit_core::{Automorphism, GradedAlgebra, Weight, Window};

/// One test algebra with the automorphism it is paired with.
pub struct Case {
    pub name: &'static str,
    pub alg: GradedAlgebra,
    pub sigma: Automorphism,
}

/// `k`, `k[y]` with `q = 1` and `q = 2`, `k[y]/(y²)` with `y ↦ −y`, and `kC₃` with `g ↦ g⁻¹`.
/// `top` bounds the weights of `k[y]`.
pub fn cases(top: i64) -> Vec<Case> {
    let (k, autos) = build(&Family::Ground, None).unwrap();
    let (p1, s1) = poly1(1, top);
    let (p2, s2) = poly1(2, top);
    let (t2, autos_t) = build(&Family::TruncPoly { n: 2 }, None).unwrap();
    let (c3, autos_c) = build(&Family::CyclicGroup { m: 3 }, None).unwrap();
    vec![
        Case { name: "k", alg: k, sigma: autos[0].clone() },
        Case { name: "k[y] q=1", alg: p1, sigma: s1 },
        Case { name: "k[y] q=2", alg: p2, sigma: s2 },
        Case { name: "k[y]/(y^2) y->-y", alg: t2, sigma: autos_t[1].clone() },
        Case { name: "kC3 g->g^-1", alg: c3, sigma: autos_c[1].clone() },
    ]
}

pub fn w(x: i64) -> Weight {
    Weight(vec![x])
}

/// Weight window used for chains: `≤ top` for graded families, everything for finite ones.
pub fn chain_window(alg: &GradedAlgebra, top: i64) -> Window {
    if alg.is_finite_dimensional() && alg.window().hi[0].is_none() {
        Window::complete(1)
    } else {
        Window::upto(&[top])
    }
}

/// Cochain shifts `lo..=hi` for graded families, `0` for algebras concentrated in weight 0.
pub fn shifts(alg: &GradedAlgebra, lo: i64, hi: i64) -> Vec<Weight> {
    if alg.weights().all(|(w, _)| w.is_zero()) {
        vec![w(0)]
    } else {
        (lo..=hi).map(w).collect()
    }
}
