//! JSON algebra files.
//!
//! Two shapes are accepted. A builtin reference:
//!
//! ```json
//! { "builtin": "poly1", "params": { "q": "2" }, "window": [4] }
//! ```
//!
//! and an explicit structure-constant table:
//!
//! ```json
//! {
//!   "name": "k[y]/(y^2)",
//!   "grading_rank": 1,
//!   "window": [null],
//!   "basis": [{ "id": "1", "weight": [0] }, { "id": "y", "weight": [1] }],
//!   "unit": { "1": "1" },
//!   "products": [{ "left": "y", "right": "y", "value": {} }, ...],
//!   "automorphisms": { "sigma": [{ "arg": "y", "value": { "y": "-1" } }] }
//! }
//! ```
//!
//! `window` holds upper bounds per grading component (`null` for none) and the
//! optional `window_lo` lower bounds. Automorphisms list the images of basis
//! elements; elements not listed are fixed. The identity is always available as `id`.

use std::collections::BTreeMap;
use std::path::Path;

use hochkit_core::algebra::{validate, ValidationReport};
use hochkit_core::exactla::{parse_rational, rat, Rational};
use hochkit_core::{Automorphism, BasisElement, GradedAlgebra, Weight, Window};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// An algebra together with its named automorphisms, `id` first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loaded {
    pub algebra: GradedAlgebra,
    pub automorphisms: Vec<Automorphism>,
}

impl Loaded {
    pub fn automorphism(&self, name: &str) -> Result<&Automorphism, CliError> {
        self.automorphisms.iter().find(|a| a.name() == name).ok_or_else(|| {
            let known: Vec<_> = self.automorphisms.iter().map(|a| a.name()).collect();
            CliError::Usage(format!("no automorphism named {name:?} (known: {})", known.join(", ")))
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BuiltinFile {
    builtin: String,
    #[serde(default)]
    params: BTreeMap<String, Scalar>,
    #[serde(default)]
    window: Option<Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Str(String),
}

impl Scalar {
    fn into_string(self) -> String {
        match self {
            Scalar::Int(n) => n.to_string(),
            Scalar::Str(s) => s,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitFile {
    pub name: String,
    pub grading_rank: usize,
    pub window: Vec<Option<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window_lo: Option<Vec<Option<i64>>>,
    pub basis: Vec<BasisEntry>,
    pub unit: BTreeMap<String, String>,
    pub products: Vec<ProductEntry>,
    #[serde(default)]
    pub automorphisms: BTreeMap<String, Vec<ImageEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub id: String,
    pub weight: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub value: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageEntry {
    pub arg: String,
    pub value: BTreeMap<String, String>,
}

/// Reads, builds and validates an algebra file.
pub fn parse_algebra_file(path: &Path) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    parse_algebra_str(&text)
}

pub fn parse_algebra_str(text: &str) -> Result<Loaded, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let is_builtin = value.as_object().is_some_and(|o| o.contains_key("builtin"));
    let loaded = if is_builtin {
        let file: BuiltinFile = serde_json::from_value(value).map_err(|e| CliError::Parse(e.to_string()))?;
        let params: Vec<(String, String)> = file.params.into_iter().map(|(k, v)| (k, v.into_string())).collect();
        let (algebra, automorphisms) = hochkit_core::builtin::builtin_family(&file.builtin, &params, file.window.as_deref())
            .map_err(|e| CliError::Parse(format!("builtin: {e}")))?;
        Loaded { algebra, automorphisms }
    } else {
        let file: ExplicitFile = serde_json::from_value(value).map_err(|e| CliError::Parse(e.to_string()))?;
        from_explicit(&file)?
    };
    let report = validate(&loaded.algebra, &loaded.automorphisms);
    if !report.passed() {
        return Err(CliError::Validation(describe_violations(&report)));
    }
    Ok(loaded)
}

fn describe_violations(report: &ValidationReport) -> String {
    let first = &report.violations[0];
    format!(
        "{} violation(s); first: {:?} at ({})",
        report.violations.len(),
        first.kind,
        first.witness.join(", ")
    )
}

fn rational(field: &str, s: &str) -> Result<Rational, CliError> {
    parse_rational(s).ok_or_else(|| CliError::Parse(format!("{field}: {s:?} is not a rational of the form p or p/q")))
}

fn index(alg_ids: &BTreeMap<&str, usize>, field: &str, id: &str) -> Result<usize, CliError> {
    alg_ids.get(id).copied().ok_or_else(|| CliError::Parse(format!("{field}: unknown basis id {id:?}")))
}

fn vector(ids: &BTreeMap<&str, usize>, dim: usize, field: &str, map: &BTreeMap<String, String>) -> Result<Vec<Rational>, CliError> {
    let mut v = vec![rat(0); dim];
    for (id, c) in map {
        v[index(ids, field, id)?] = rational(&format!("{field}.{id}"), c)?;
    }
    Ok(v)
}

fn from_explicit(file: &ExplicitFile) -> Result<Loaded, CliError> {
    let rank = file.grading_rank;
    if file.window.len() != rank {
        return Err(CliError::Parse(format!("window: expected {rank} bounds, found {}", file.window.len())));
    }
    let lo = file.window_lo.clone().unwrap_or_else(|| vec![None; rank]);
    if lo.len() != rank {
        return Err(CliError::Parse(format!("window_lo: expected {rank} bounds, found {}", lo.len())));
    }
    let window = Window { lo, hi: file.window.clone() };
    let mut ids = BTreeMap::new();
    let mut basis = Vec::new();
    for (i, b) in file.basis.iter().enumerate() {
        if b.weight.len() != rank {
            return Err(CliError::Parse(format!("basis[{i}].weight: expected {rank} components")));
        }
        if ids.insert(b.id.as_str(), i).is_some() {
            return Err(CliError::Parse(format!("basis[{i}].id: duplicate id {:?}", b.id)));
        }
        basis.push(BasisElement { id: b.id.clone(), weight: Weight(b.weight.clone()) });
    }
    let dim = basis.len();
    let unit = vector(&ids, dim, "unit", &file.unit)?;
    let mut seen = BTreeMap::new();
    let mut products = Vec::new();
    for (k, p) in file.products.iter().enumerate() {
        let field = format!("products[{k}]");
        let i = index(&ids, &format!("{field}.left"), &p.left)?;
        let j = index(&ids, &format!("{field}.right"), &p.right)?;
        if seen.insert((i, j), k).is_some() {
            return Err(CliError::Parse(format!("{field}: duplicate product {} * {}", p.left, p.right)));
        }
        products.push(((i, j), vector(&ids, dim, &format!("{field}.value"), &p.value)?));
    }
    let algebra = GradedAlgebra::new(file.name.clone(), rank, basis, unit, window, products)
        .map_err(|e| CliError::Parse(e.to_string()))?;
    let mut automorphisms = Vec::new();
    if !file.automorphisms.contains_key("id") {
        automorphisms.push(Automorphism::identity(&algebra));
    }
    for (name, entries) in &file.automorphisms {
        let mut images: Vec<Vec<Rational>> = (0..dim).map(|j| algebra.basis_vector(j)).collect();
        for (k, e) in entries.iter().enumerate() {
            let field = format!("automorphisms.{name}[{k}]");
            let j = index(&ids, &format!("{field}.arg"), &e.arg)?;
            images[j] = vector(&ids, dim, &format!("{field}.value"), &e.value)?;
        }
        let sigma = Automorphism::new(name.clone(), &algebra, &images)
            .map_err(|e| CliError::Validation(format!("automorphisms.{name}: {e}")))?;
        automorphisms.push(sigma);
    }
    // keep `id` first even when the file spells it out
    automorphisms.sort_by_key(|a| a.name() != "id");
    Ok(Loaded { algebra, automorphisms })
}

fn sparse_map(alg: &GradedAlgebra, v: &[(usize, Rational)]) -> BTreeMap<String, String> {
    v.iter().map(|(k, c)| (alg.id(*k).to_string(), c.to_string())).collect()
}

/// The explicit form of an algebra. The identity named `id` is left implicit and
/// automorphisms list only the basis elements they move.
pub fn to_explicit(alg: &GradedAlgebra, automorphisms: &[Automorphism]) -> ExplicitFile {
    let window = alg.window();
    let unit: Vec<(usize, Rational)> =
        alg.unit().iter().enumerate().filter(|(_, c)| **c != rat(0)).map(|(i, c)| (i, c.clone())).collect();
    let products = alg
        .products()
        .map(|((i, j), v)| ProductEntry { left: alg.id(i).to_string(), right: alg.id(j).to_string(), value: sparse_map(alg, v) })
        .collect();
    let mut autos = BTreeMap::new();
    for sigma in automorphisms {
        if sigma.name() == "id" && sigma.is_identity() {
            continue;
        }
        let moved = (0..alg.dim())
            .filter_map(|j| {
                let img = sigma.image(j);
                let fixed = img.len() == 1 && img[0].0 == j && img[0].1 == rat(1);
                (!fixed).then(|| ImageEntry { arg: alg.id(j).to_string(), value: sparse_map(alg, &img) })
            })
            .collect();
        autos.insert(sigma.name().to_string(), moved);
    }
    ExplicitFile {
        name: alg.name().to_string(),
        grading_rank: alg.grading_rank(),
        window: window.hi.clone(),
        window_lo: window.lo.iter().any(Option::is_some).then(|| window.lo.clone()),
        basis: alg.basis().iter().map(|b| BasisEntry { id: b.id.clone(), weight: b.weight.0.clone() }).collect(),
        unit: sparse_map(alg, &unit),
        products,
        automorphisms: autos,
    }
}

/// Pretty-printed explicit JSON with a trailing newline.
pub fn emit_algebra(alg: &GradedAlgebra, automorphisms: &[Automorphism]) -> String {
    let mut s = serde_json::to_string_pretty(&to_explicit(alg, automorphisms)).expect("explicit files serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_poly1() {
        let l = parse_algebra_str(r#"{"builtin": "poly1", "params": {"q": "2"}, "window": [4]}"#).unwrap();
        assert_eq!(l.algebra.dim(), 5);
        assert_eq!(l.automorphisms[1].name(), "sigma_q");
        let l = parse_algebra_str(r#"{"builtin": "cyclic_group", "params": {"m": 3}}"#).unwrap();
        assert_eq!(l.algebra.dim(), 3);
    }

    #[test]
    fn explicit_round_trip() {
        let l = parse_algebra_str(r#"{"builtin": "trunc_poly(3)"}"#).unwrap();
        let text = emit_algebra(&l.algebra, &l.automorphisms);
        let back = parse_algebra_str(&text).unwrap();
        assert_eq!(back, l);
        assert_eq!(emit_algebra(&back.algebra, &back.automorphisms), text);
    }

    #[test]
    fn unit_of_nonzero_weight_is_rejected() {
        let text = r#"{"name": "bad", "grading_rank": 1, "window": [null],
            "basis": [{"id": "e", "weight": [1]}], "unit": {"e": "1"},
            "products": [{"left": "e", "right": "e", "value": {}}]}"#;
        assert!(matches!(parse_algebra_str(text), Err(CliError::Validation(_))));
    }

    #[test]
    fn diagnostics_name_the_field() {
        let err = parse_algebra_str(r#"{"builtin": "ground", "parms": {}}"#).unwrap_err();
        assert!(err.to_string().contains("parms"), "{err}");
        let text = r#"{"name": "k", "grading_rank": 1, "window": [null],
            "basis": [{"id": "1", "weight": [0]}], "unit": {"1": "1.5"},
            "products": [{"left": "1", "right": "1", "value": {"1": "1"}}]}"#;
        let err = parse_algebra_str(text).unwrap_err();
        assert!(err.to_string().contains("unit.1"), "{err}");
        let text = text.replace("1.5", "1").replace(r#""right": "1""#, r#""right": "z""#);
        let err = parse_algebra_str(&text).unwrap_err();
        assert!(err.to_string().contains("products[0].right"), "{err}");
    }
}
