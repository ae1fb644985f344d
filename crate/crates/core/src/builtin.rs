//! Generators for the standard families of test algebras.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{Automorphism, BasisElement, GradedAlgebra, Weight, Window};
use crate::error::{Error, Result};
use crate::exactla::{parse_rational, rat, MatrixQ, Rational};

/// A builtin family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// The ground field.
    Ground,
    /// `k[y]` with `y` in weight 1, truncated by the window.
    Poly1 { q: Rational },
    /// `k[y]/(y^n)`.
    TruncPoly { n: usize },
    /// `k⟨y, x⟩/(xy − q yx)` graded by `(y-degree, x-degree)`.
    QPlane { q: Rational },
    /// Group algebra of the cyclic group of order `m`, concentrated in weight 0.
    CyclicGroup { m: usize },
}

pub const DEFAULT_WINDOW: i64 = 4;

fn power_id(var: &str, k: usize) -> String {
    match k {
        0 => "1".to_string(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

fn pow_q(q: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * q)
}

fn diagonal(alg: &GradedAlgebra, name: &str, scale: impl Fn(usize) -> Rational) -> Result<Automorphism> {
    let n = alg.dim();
    let m = MatrixQ::from_triplets(n, n, (0..n).map(|i| (i, i, scale(i))));
    Automorphism::from_matrix(name, alg, m)
}

fn window_cap(window: Option<&[i64]>, k: usize) -> Result<i64> {
    let w = match window {
        None => DEFAULT_WINDOW,
        Some([]) => DEFAULT_WINDOW,
        Some(v) => v[k.min(v.len() - 1)],
    };
    if w < 0 {
        return Err(Error::BadParams(format!("window bound {w} is negative")));
    }
    Ok(w)
}

fn unit_at_zero(dim: usize) -> Vec<Rational> {
    let mut u = vec![Rational::zero(); dim];
    u[0] = Rational::one();
    u
}

/// Builds a family up to `window` (upper bounds per grading component).
/// Returns the algebra and its named automorphisms, `id` first.
pub fn build(family: &Family, window: Option<&[i64]>) -> Result<(GradedAlgebra, Vec<Automorphism>)> {
    match family {
        Family::Ground => {
            let alg = GradedAlgebra::new(
                "k",
                1,
                vec![BasisElement { id: "1".into(), weight: Weight(vec![0]) }],
                vec![Rational::one()],
                Window::complete(1),
                [((0, 0), vec![Rational::one()])],
            )?;
            let id = Automorphism::identity(&alg);
            Ok((alg, vec![id]))
        }
        Family::Poly1 { q } => {
            if q.is_zero() {
                return Err(Error::BadParams("poly1 needs q ≠ 0".into()));
            }
            let top = window_cap(window, 0)? as usize;
            let dim = top + 1;
            let basis = (0..dim).map(|i| BasisElement { id: power_id("y", i), weight: Weight(vec![i as i64]) }).collect();
            let mut products = Vec::new();
            for i in 0..dim {
                for j in 0..dim - i {
                    let mut v = vec![Rational::zero(); dim];
                    v[i + j] = Rational::one();
                    products.push(((i, j), v));
                }
            }
            let alg = GradedAlgebra::new("k[y]", 1, basis, unit_at_zero(dim), Window::upto(&[top as i64]), products)?;
            let id = Automorphism::identity(&alg);
            let sigma = diagonal(&alg, "sigma_q", |i| pow_q(q, i))?;
            Ok((alg, vec![id, sigma]))
        }
        Family::TruncPoly { n } => {
            let n = *n;
            if n == 0 {
                return Err(Error::BadParams("trunc_poly needs N ≥ 1".into()));
            }
            let basis = (0..n).map(|i| BasisElement { id: power_id("y", i), weight: Weight(vec![i as i64]) }).collect();
            let mut products = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let mut v = vec![Rational::zero(); n];
                    if i + j < n {
                        v[i + j] = Rational::one();
                    }
                    products.push(((i, j), v));
                }
            }
            let alg = GradedAlgebra::new(format!("k[y]/(y^{n})"), 1, basis, unit_at_zero(n), Window::complete(1), products)?;
            let id = Automorphism::identity(&alg);
            let sigma = diagonal(&alg, "sigma", |i| if i % 2 == 0 { Rational::one() } else { -Rational::one() })?;
            Ok((alg, vec![id, sigma]))
        }
        Family::QPlane { q } => {
            if q.is_zero() {
                return Err(Error::BadParams("qplane needs q ≠ 0".into()));
            }
            let top_y = window_cap(window, 0)? as usize;
            let top_x = window_cap(window, 1)? as usize;
            let index = |a: usize, b: usize| b * (top_y + 1) + a;
            let mut basis = Vec::new();
            for b in 0..=top_x {
                for a in 0..=top_y {
                    let id = match (a, b) {
                        (_, 0) => power_id("y", a),
                        (0, _) => power_id("x", b),
                        _ => format!("{}*{}", power_id("y", a), power_id("x", b)),
                    };
                    basis.push(BasisElement { id, weight: Weight(vec![a as i64, b as i64]) });
                }
            }
            let dim = basis.len();
            let mut products = Vec::new();
            for b in 0..=top_x {
                for a in 0..=top_y {
                    for d in 0..=top_x - b {
                        for c in 0..=top_y - a {
                            let mut v = vec![Rational::zero(); dim];
                            v[index(a + c, b + d)] = pow_q(q, b * c);
                            products.push(((index(a, b), index(c, d)), v));
                        }
                    }
                }
            }
            let alg = GradedAlgebra::new(
                "k_q[y,x]",
                2,
                basis,
                unit_at_zero(dim),
                Window::upto(&[top_y as i64, top_x as i64]),
                products,
            )?;
            let id = Automorphism::identity(&alg);
            Ok((alg, vec![id]))
        }
        Family::CyclicGroup { m } => {
            let m = *m;
            if m == 0 {
                return Err(Error::BadParams("cyclic_group needs m ≥ 1".into()));
            }
            let basis = (0..m).map(|i| BasisElement { id: power_id("g", i), weight: Weight(vec![0]) }).collect();
            let mut products = Vec::new();
            for i in 0..m {
                for j in 0..m {
                    let mut v = vec![Rational::zero(); m];
                    v[(i + j) % m] = Rational::one();
                    products.push(((i, j), v));
                }
            }
            let alg = GradedAlgebra::new(format!("kC{m}"), 1, basis, unit_at_zero(m), Window::complete(1), products)?;
            let id = Automorphism::identity(&alg);
            let inv = MatrixQ::from_triplets(m, m, (0..m).map(|i| ((m - i) % m, i, Rational::one())));
            let sigma = Automorphism::from_matrix("sigma", &alg, inv)?;
            Ok((alg, vec![id, sigma]))
        }
    }
}

fn lookup<'a>(params: &'a [(String, String)], key: &str) -> Option<&'a str> {
    params.iter().find(|(k, _)| k.eq_ignore_ascii_case(key)).map(|(_, v)| v.as_str())
}

fn param_rational(params: &[(String, String)], inline: Option<&str>, key: &str) -> Result<Rational> {
    match inline.or_else(|| lookup(params, key)) {
        None => Ok(Rational::one()),
        Some(s) => parse_rational(s.trim()).ok_or_else(|| Error::BadParams(format!("{key} = {s:?} is not a rational"))),
    }
}

fn param_nat(params: &[(String, String)], inline: Option<&str>, key: &str) -> Result<usize> {
    let s = inline
        .or_else(|| lookup(params, key))
        .ok_or_else(|| Error::BadParams(format!("missing parameter {key}")))?;
    s.trim().parse().map_err(|_| Error::BadParams(format!("{key} = {s:?} is not a natural number")))
}

/// Parses a family name such as `poly1`, `trunc_poly(2)` or `qplane` with
/// params `[("q", "2")]`; an inline argument takes precedence over params.
pub fn parse_family(spec: &str, params: &[(String, String)]) -> Result<Family> {
    let spec = spec.trim();
    let (name, inline) = match spec.find('(') {
        Some(open) if spec.ends_with(')') => (&spec[..open], Some(&spec[open + 1..spec.len() - 1])),
        Some(_) => return Err(Error::BadParams(format!("malformed family {spec:?}"))),
        None => (spec, None),
    };
    match name {
        "ground" => Ok(Family::Ground),
        "poly1" => Ok(Family::Poly1 { q: param_rational(params, inline, "q")? }),
        "trunc_poly" => Ok(Family::TruncPoly { n: param_nat(params, inline, "N")? }),
        "qplane" => Ok(Family::QPlane { q: param_rational(params, inline, "q")? }),
        "cyclic_group" => Ok(Family::CyclicGroup { m: param_nat(params, inline, "m")? }),
        other => Err(Error::BadParams(format!("unknown builtin family {other:?}"))),
    }
}

/// Parses and builds a family in one step.
pub fn builtin_family(
    spec: &str,
    params: &[(String, String)],
    window: Option<&[i64]>,
) -> Result<(GradedAlgebra, Vec<Automorphism>)> {
    build(&parse_family(spec, params)?, window)
}

/// `k[y]` up to weight `top` with the automorphisms `id` and `y ↦ q y`.
pub fn poly1(q: i64, top: i64) -> (GradedAlgebra, Automorphism) {
    let (alg, autos) = build(&Family::Poly1 { q: rat(q) }, Some(&[top])).expect("valid poly1 parameters");
    let sigma = autos.into_iter().nth(1).expect("poly1 ships sigma_q");
    (alg, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate;

    fn params(kv: &[(&str, &str)]) -> Vec<(String, String)> {
        kv.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn ground_is_one_dimensional() {
        let (a, autos) = builtin_family("ground", &[], None).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.unit_index(), Some(0));
        assert!(validate(&a, &autos).passed());
    }

    #[test]
    fn poly1_truncation() {
        let (a, _) = builtin_family("poly1", &params(&[("q", "2")]), Some(&[4])).unwrap();
        let ids: Vec<_> = a.basis().iter().map(|b| b.id.as_str()).collect();
        assert_eq!(ids, ["1", "y", "y^2", "y^3", "y^4"]);
        assert!(a.product(2, 2).is_ok());
        assert!(matches!(a.product(2, 3), Err(Error::OutOfWindow(_))));
    }

    #[test]
    fn cyclic_group_cubes_to_one() {
        let (a, autos) = builtin_family("cyclic_group(3)", &[], None).unwrap();
        assert_eq!(a.dim(), 3);
        let g = a.basis_vector(1);
        let g3 = a.multiply(&a.multiply(&g, &g).unwrap(), &g).unwrap();
        assert_eq!(g3, a.unit().to_vec());
        assert!(validate(&a, &autos).passed());
        assert!(!autos[1].is_identity());
    }

    #[test]
    fn every_family_validates_up_to_weight_eight() {
        for (spec, p) in [
            ("ground", vec![]),
            ("poly1", params(&[("q", "3/2")])),
            ("trunc_poly(3)", vec![]),
            ("qplane", params(&[("q", "-2")])),
            ("cyclic_group(4)", vec![]),
        ] {
            for w in 0..=8 {
                let window = [w, (8 - w).max(0)];
                let (a, autos) = builtin_family(spec, &p, Some(&window)).unwrap();
                let report = validate(&a, &autos);
                assert!(report.passed(), "{spec} window {window:?}: {:?}", report.violations);
            }
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(builtin_family("poly1", &params(&[("q", "0")]), None), Err(Error::BadParams(_))));
        assert!(matches!(builtin_family("trunc_poly", &[], None), Err(Error::BadParams(_))));
        assert!(matches!(builtin_family("nope", &[], None), Err(Error::BadParams(_))));
        assert!(matches!(builtin_family("qplane", &params(&[("q", "x")]), None), Err(Error::BadParams(_))));
    }
}
