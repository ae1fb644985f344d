//! Structure-constant algebras, automorphisms and bimodules.
//!
//! An algebra is a weighted basis plus a product table. Infinite-dimensional
//! algebras are truncated: the table is only required for pairs whose weight
//! sum lies inside the declared [`Window`], and asking for anything outside it
//! is an error rather than a silent zero.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{
    self, accumulate, add_entry, inverse, is_zero_vec, to_dense, to_sparse, zero_vec, MatrixQ, Rational, SparseVec,
};

/// Integer multi-degree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), other.rank());
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), other.rank());
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Appends one more grading component.
    pub fn extend(&self, last: i64) -> Weight {
        let mut v = self.0.clone();
        v.push(last);
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Per-component bounds on the weights where the product table is known.
/// `None` means the algebra is complete in that direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: Vec<Option<i64>>,
    pub hi: Vec<Option<i64>>,
}

impl Window {
    pub fn complete(rank: usize) -> Self {
        Window { lo: vec![None; rank], hi: vec![None; rank] }
    }

    /// Truncated above at `hi`, complete below.
    pub fn upto(hi: &[i64]) -> Self {
        Window { lo: vec![None; hi.len()], hi: hi.iter().map(|&h| Some(h)).collect() }
    }

    pub fn rank(&self) -> usize {
        self.hi.len()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        w.0.iter().enumerate().all(|(k, &x)| self.lo[k].is_none_or(|l| x >= l) && self.hi[k].is_none_or(|h| x <= h))
    }

    pub fn intersect(&self, other: &Window) -> Window {
        let pick = |a: Option<i64>, b: Option<i64>, max: bool| match (a, b) {
            (Some(x), Some(y)) => Some(if max { x.max(y) } else { x.min(y) }),
            (x, None) => x,
            (None, y) => y,
        };
        Window {
            lo: self.lo.iter().zip(&other.lo).map(|(a, b)| pick(*a, *b, true)).collect(),
            hi: self.hi.iter().zip(&other.hi).map(|(a, b)| pick(*a, *b, false)).collect(),
        }
    }

    pub fn extend(&self, lo: Option<i64>, hi: Option<i64>) -> Window {
        let mut w = self.clone();
        w.lo.push(lo);
        w.hi.push(hi);
        w
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub id: String,
    pub weight: Weight,
}

/// Unital associative algebra over the rationals given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    name: String,
    rank: usize,
    basis: Vec<BasisElement>,
    unit: Vec<Rational>,
    window: Window,
    /// `table[i * dim + j]` is `e_i e_j`, when provided.
    table: Vec<Option<SparseVec>>,
    by_weight: BTreeMap<Weight, Vec<usize>>,
}

impl GradedAlgebra {
    /// Assembles an algebra. Only shapes are checked here; [`validate`] checks the axioms.
    pub fn new(
        name: impl Into<String>,
        rank: usize,
        basis: Vec<BasisElement>,
        unit: Vec<Rational>,
        window: Window,
        products: impl IntoIterator<Item = ((usize, usize), Vec<Rational>)>,
    ) -> Result<Self> {
        let dim = basis.len();
        if window.rank() != rank || window.lo.len() != rank {
            return Err(Error::Invalid(format!("window has rank {} but grading rank is {rank}", window.rank())));
        }
        if unit.len() != dim {
            return Err(Error::Invalid(format!("unit has {} coordinates for {dim} basis elements", unit.len())));
        }
        let mut by_weight: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        let mut seen = BTreeMap::new();
        for (i, b) in basis.iter().enumerate() {
            if b.weight.rank() != rank {
                return Err(Error::Invalid(format!("basis element {} has weight of rank {}", b.id, b.weight.rank())));
            }
            if !window.contains(&b.weight) {
                return Err(Error::Invalid(format!("basis element {} lies outside the window", b.id)));
            }
            if seen.insert(b.id.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate basis id {}", b.id)));
            }
            by_weight.entry(b.weight.clone()).or_default().push(i);
        }
        let mut table = vec![None; dim * dim];
        for ((i, j), v) in products {
            if i >= dim || j >= dim || v.len() != dim {
                return Err(Error::Invalid(format!("malformed product entry ({i}, {j})")));
            }
            table[i * dim + j] = Some(to_sparse(&v));
        }
        Ok(GradedAlgebra { name: name.into(), rank, basis, unit, window, table, by_weight })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn grading_rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn weight(&self, i: usize) -> &Weight {
        &self.basis[i].weight
    }

    pub fn id(&self, i: usize) -> &str {
        &self.basis[i].id
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.id == id)
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn weights(&self) -> impl Iterator<Item = (&Weight, &[usize])> {
        self.by_weight.iter().map(|(w, v)| (w, v.as_slice()))
    }

    pub fn indices_of_weight(&self, w: &Weight) -> &[usize] {
        self.by_weight.get(w).map_or(&[], Vec::as_slice)
    }

    /// The basis element equal to the unit, if the unit is one.
    pub fn unit_index(&self) -> Option<usize> {
        let support: Vec<usize> = (0..self.dim()).filter(|&i| !self.unit[i].is_zero()).collect();
        match support.as_slice() {
            [i] if self.unit[*i].is_one() => Some(*i),
            _ => None,
        }
    }

    /// Weight-zero part spanned by the unit basis element.
    pub fn is_connected(&self) -> bool {
        match self.unit_index() {
            Some(u) => self.indices_of_weight(&Weight::zero(self.rank)) == [u],
            None => false,
        }
    }

    pub fn has_nonnegative_weights(&self) -> bool {
        self.basis.iter().all(|b| b.weight.is_nonnegative())
    }

    /// Every product of basis elements is inside the window.
    pub fn is_finite_dimensional(&self) -> bool {
        (0..self.dim()).all(|i| (0..self.dim()).all(|j| self.window.contains(&self.weight(i).add(self.weight(j)))))
    }

    /// `e_i e_j` as a sparse vector.
    pub fn product(&self, i: usize, j: usize) -> Result<&SparseVec> {
        let w = self.weight(i).add(self.weight(j));
        if !self.window.contains(&w) {
            return Err(Error::OutOfWindow(w));
        }
        self.table[i * self.dim() + j]
            .as_ref()
            .ok_or_else(|| Error::Invalid(format!("product {} * {} missing from the table", self.id(i), self.id(j))))
    }

    pub(crate) fn raw_product(&self, i: usize, j: usize) -> Option<&SparseVec> {
        self.table[i * self.dim() + j].as_ref()
    }

    pub fn multiply_sparse(&self, u: &[(usize, Rational)], v: &[(usize, Rational)]) -> Result<SparseVec> {
        let mut acc = BTreeMap::new();
        for (i, a) in u {
            for (j, b) in v {
                accumulate(&mut acc, &(a * b), self.product(*i, *j)?);
            }
        }
        Ok(acc.into_iter().collect())
    }

    /// Bilinear extension of the product table.
    pub fn multiply(&self, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>> {
        let p = self.multiply_sparse(&to_sparse(u), &to_sparse(v))?;
        Ok(to_dense(&p, self.dim()))
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        exactla::unit_vec(self.dim(), i)
    }

    /// Weight of a nonzero homogeneous vector.
    pub fn homogeneous_weight(&self, v: &[(usize, Rational)]) -> Option<Weight> {
        let mut it = v.iter().map(|(i, _)| self.weight(*i));
        let first = it.next()?.clone();
        it.all(|w| *w == first).then_some(first)
    }

    /// Same basis with `a * b` replaced by `b * a`.
    pub fn opposite(&self) -> GradedAlgebra {
        let dim = self.dim();
        let mut table = vec![None; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                table[i * dim + j] = self.table[j * dim + i].clone();
            }
        }
        GradedAlgebra {
            name: format!("{}^op", self.name),
            rank: self.rank,
            basis: self.basis.clone(),
            unit: self.unit.clone(),
            window: self.window.clone(),
            table,
            by_weight: self.by_weight.clone(),
        }
    }

    /// Number of table entries that are present.
    pub fn product_count(&self) -> usize {
        self.table.iter().filter(|p| p.is_some()).count()
    }

    /// All present table entries in `(i, j)` order.
    pub fn products(&self) -> impl Iterator<Item = ((usize, usize), &SparseVec)> {
        let dim = self.dim();
        self.table.iter().enumerate().filter_map(move |(k, p)| p.as_ref().map(|v| ((k / dim, k % dim), v)))
    }
}

// ---------------------------------------------------------------------------
// Automorphisms
// ---------------------------------------------------------------------------

/// Grading-preserving algebra automorphism, stored as a matrix whose `j`-th
/// column is the image of `e_j`, together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    name: String,
    matrix: MatrixQ,
    inverse: MatrixQ,
}

impl Automorphism {
    pub fn from_matrix(name: impl Into<String>, alg: &GradedAlgebra, matrix: MatrixQ) -> Result<Self> {
        let name = name.into();
        let dim = alg.dim();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::Invalid(format!("automorphism {name} is not {dim}x{dim}")));
        }
        for (r, c, _) in matrix.entries() {
            if alg.weight(r) != alg.weight(c) {
                return Err(Error::Invalid(format!(
                    "automorphism {name} sends {} to a vector involving {} of another weight",
                    alg.id(c),
                    alg.id(r)
                )));
            }
        }
        let mut triplets = Vec::new();
        for (_, idx) in alg.weights() {
            let block = matrix.select_rows(idx).select_cols(idx);
            let inv = inverse(&block).ok_or_else(|| Error::Invalid(format!("automorphism {name} is not invertible")))?;
            for (r, c, v) in inv.entries() {
                triplets.push((idx[r], idx[c], v.clone()));
            }
        }
        let inverse = MatrixQ::from_triplets(dim, dim, triplets);
        Ok(Automorphism { name, matrix, inverse })
    }

    /// `images[j]` is the image of the `j`-th basis element.
    pub fn new(name: impl Into<String>, alg: &GradedAlgebra, images: &[Vec<Rational>]) -> Result<Self> {
        let m = MatrixQ::from_columns(alg.dim(), images);
        Self::from_matrix(name, alg, m)
    }

    pub fn identity(alg: &GradedAlgebra) -> Self {
        let id = MatrixQ::identity(alg.dim());
        Automorphism { name: "id".into(), matrix: id.clone(), inverse: id }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn matrix(&self) -> &MatrixQ {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &MatrixQ {
        &self.inverse
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == MatrixQ::identity(self.matrix.nrows())
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(v)
    }

    pub fn apply_sparse(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut acc = BTreeMap::new();
        let t = self.matrix.transpose();
        for (j, x) in v {
            accumulate(&mut acc, x, t.row(*j));
        }
        acc.into_iter().collect()
    }

    /// Image of the `j`-th basis element.
    pub fn image(&self, j: usize) -> SparseVec {
        self.apply_sparse(&[(j, Rational::one())])
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism { name: format!("{}^-1", self.name), matrix: self.inverse.clone(), inverse: self.matrix.clone() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            name: format!("{}*{}", self.name, other.name),
            matrix: &self.matrix * &other.matrix,
            inverse: &other.inverse * &self.inverse,
        }
    }

    pub fn pow(&self, k: i64) -> Automorphism {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let n = k.unsigned_abs() as usize;
        Automorphism {
            name: format!("{}^{k}", self.name),
            matrix: base.matrix.pow(n),
            inverse: base.inverse.pow(n),
        }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    UnitWeight,
    MissingProduct,
    Grading,
    Associativity,
    Unit,
    AutomorphismUnit,
    AutomorphismMultiplicative,
    AutomorphismInverse,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Basis ids (and automorphism name, if any) witnessing the failure.
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub checked_triples: usize,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn sparse_eq(a: &[(usize, Rational)], b: &[(usize, Rational)]) -> bool {
    a == b
}

/// Checks unit, grading and associativity of the table and the automorphism axioms.
pub fn validate(alg: &GradedAlgebra, autos: &[Automorphism]) -> ValidationReport {
    let mut report = ValidationReport::default();
    let dim = alg.dim();
    let ids = |v: &[usize]| v.iter().map(|&i| alg.id(i).to_string()).collect::<Vec<_>>();
    let zero = Weight::zero(alg.grading_rank());
    for i in (0..dim).filter(|&i| !alg.unit()[i].is_zero()) {
        if *alg.weight(i) != zero {
            report.violations.push(Violation { kind: ViolationKind::UnitWeight, witness: ids(&[i]) });
        }
    }
    for i in 0..dim {
        for j in 0..dim {
            let w = alg.weight(i).add(alg.weight(j));
            if !alg.window().contains(&w) {
                continue;
            }
            match alg.raw_product(i, j) {
                None => report.violations.push(Violation { kind: ViolationKind::MissingProduct, witness: ids(&[i, j]) }),
                Some(p) => {
                    if p.iter().any(|(k, _)| *alg.weight(*k) != w) {
                        report.violations.push(Violation { kind: ViolationKind::Grading, witness: ids(&[i, j]) });
                    }
                }
            }
        }
    }
    if !report.passed() {
        return report;
    }
    let unit = to_sparse(alg.unit());
    for i in 0..dim {
        let e = [(i, Rational::one())];
        let left = alg.multiply_sparse(&unit, &e);
        let right = alg.multiply_sparse(&e, &unit);
        if !matches!(left, Ok(ref v) if sparse_eq(v, &e)) || !matches!(right, Ok(ref v) if sparse_eq(v, &e)) {
            report.violations.push(Violation { kind: ViolationKind::Unit, witness: ids(&[i]) });
        }
    }
    for i in 0..dim {
        for j in 0..dim {
            let Ok(ij) = alg.product(i, j) else { continue };
            for k in 0..dim {
                let Ok(jk) = alg.product(j, k) else { continue };
                let e_i = [(i, Rational::one())];
                let e_k = [(k, Rational::one())];
                let (Ok(lhs), Ok(rhs)) = (alg.multiply_sparse(ij, &e_k), alg.multiply_sparse(&e_i, jk)) else {
                    continue;
                };
                report.checked_triples += 1;
                if lhs != rhs {
                    report.violations.push(Violation { kind: ViolationKind::Associativity, witness: ids(&[i, j, k]) });
                }
            }
        }
    }
    for sigma in autos {
        let named = |mut w: Vec<String>| {
            w.insert(0, sigma.name().to_string());
            w
        };
        if sigma.apply_sparse(&unit) != unit {
            report.violations.push(Violation { kind: ViolationKind::AutomorphismUnit, witness: named(Vec::new()) });
        }
        if &sigma.matrix * &sigma.inverse != MatrixQ::identity(dim) {
            report.violations.push(Violation { kind: ViolationKind::AutomorphismInverse, witness: named(Vec::new()) });
        }
        for i in 0..dim {
            for j in 0..dim {
                let Ok(p) = alg.product(i, j) else { continue };
                let lhs = sigma.apply_sparse(p);
                let rhs = alg.multiply_sparse(&sigma.image(i), &sigma.image(j));
                if rhs.map_or(true, |r| r != lhs) {
                    report
                        .violations
                        .push(Violation { kind: ViolationKind::AutomorphismMultiplicative, witness: named(ids(&[i, j])) });
                }
            }
        }
    }
    report
}

// ---------------------------------------------------------------------------
// Bimodules
// ---------------------------------------------------------------------------

/// Weighted vector space with left and right actions of an algebra's basis.
/// Actions landing outside the module window are absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    name: String,
    labels: Vec<String>,
    weights: Vec<Weight>,
    window: Window,
    algebra_dim: usize,
    /// `left[a * dim + m]` is `e_a ▸ m`.
    left: Vec<Option<SparseVec>>,
    /// `right[m * algebra_dim + a]` is `m ◂ e_a`.
    right: Vec<Option<SparseVec>>,
}

impl Bimodule {
    #[allow(clippy::too_many_arguments)]
    pub fn from_actions(
        name: impl Into<String>,
        labels: Vec<String>,
        weights: Vec<Weight>,
        window: Window,
        algebra_dim: usize,
        left: Vec<Option<SparseVec>>,
        right: Vec<Option<SparseVec>>,
    ) -> Self {
        let dim = weights.len();
        assert_eq!(labels.len(), dim);
        assert_eq!(left.len(), algebra_dim * dim);
        assert_eq!(right.len(), algebra_dim * dim);
        Bimodule { name: name.into(), labels, weights, window, algebra_dim, left, right }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn weight(&self, m: usize) -> &Weight {
        &self.weights[m]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn label(&self, m: usize) -> &str {
        &self.labels[m]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn indices_of_weight(&self, w: &Weight) -> Vec<usize> {
        (0..self.dim()).filter(|&m| self.weights[m] == *w).collect()
    }

    pub fn has_nonnegative_weights(&self) -> bool {
        self.weights.iter().all(Weight::is_nonnegative)
    }

    pub fn left_act(&self, a: usize, m: usize, a_weight: &Weight) -> Result<&SparseVec> {
        self.left[a * self.dim() + m].as_ref().ok_or_else(|| Error::OutOfWindow(a_weight.add(&self.weights[m])))
    }

    pub fn right_act(&self, m: usize, a: usize, a_weight: &Weight) -> Result<&SparseVec> {
        self.right[m * self.algebra_dim + a].as_ref().ok_or_else(|| Error::OutOfWindow(a_weight.add(&self.weights[m])))
    }

    pub(crate) fn left_entry(&self, a: usize, m: usize) -> Option<&SparseVec> {
        self.left[a * self.dim() + m].as_ref()
    }

    pub(crate) fn right_entry(&self, m: usize, a: usize) -> Option<&SparseVec> {
        self.right[m * self.algebra_dim + a].as_ref()
    }

    /// `a ▸ m` for vectors, given the algebra for error weights.
    pub fn left_apply(&self, alg: &GradedAlgebra, a: &[(usize, Rational)], m: &[(usize, Rational)]) -> Result<SparseVec> {
        let mut acc = BTreeMap::new();
        for (i, x) in a {
            for (k, y) in m {
                accumulate(&mut acc, &(x * y), self.left_act(*i, *k, alg.weight(*i))?);
            }
        }
        Ok(acc.into_iter().collect())
    }

    /// `m ◂ a` for vectors.
    pub fn right_apply(&self, alg: &GradedAlgebra, m: &[(usize, Rational)], a: &[(usize, Rational)]) -> Result<SparseVec> {
        let mut acc = BTreeMap::new();
        for (k, y) in m {
            for (i, x) in a {
                accumulate(&mut acc, &(x * y), self.right_act(*k, *i, alg.weight(*i))?);
            }
        }
        Ok(acc.into_iter().collect())
    }

    /// `A` acting on itself by multiplication.
    pub fn regular(alg: &GradedAlgebra) -> Bimodule {
        let id = Automorphism::identity(alg);
        Self::twisted(alg, &id, &id)
    }

    /// `ρAσ`: the space `A` with `a·m·b = ρ(a) m σ(b)`.
    pub fn twisted(alg: &GradedAlgebra, rho: &Automorphism, sigma: &Automorphism) -> Bimodule {
        let dim = alg.dim();
        let mut left = vec![None; dim * dim];
        let mut right = vec![None; dim * dim];
        for a in 0..dim {
            let ra = rho.image(a);
            let sa = sigma.image(a);
            for m in 0..dim {
                let e_m = [(m, Rational::one())];
                if let Ok(v) = alg.multiply_sparse(&ra, &e_m) {
                    if alg.window().contains(&alg.weight(a).add(alg.weight(m))) {
                        left[a * dim + m] = Some(v);
                    }
                }
                if let Ok(v) = alg.multiply_sparse(&e_m, &sa) {
                    if alg.window().contains(&alg.weight(a).add(alg.weight(m))) {
                        right[m * dim + a] = Some(v);
                    }
                }
            }
        }
        let label = |s: &Automorphism| if s.is_identity() { String::new() } else { s.name().to_string() };
        Bimodule {
            name: format!("{}A{}", label(rho), label(sigma)),
            labels: alg.basis().iter().map(|b| b.id.clone()).collect(),
            weights: alg.basis().iter().map(|b| b.weight.clone()).collect(),
            window: alg.window().clone(),
            algebra_dim: dim,
            left,
            right,
        }
    }

    /// `A ⊗ A` with the outer actions `a ▸ (x ⊗ y) = ax ⊗ y` and
    /// `(x ⊗ y) ◂ b = x ⊗ y τ(b)`, where `τ` defaults to the identity.
    pub fn enveloping(alg: &GradedAlgebra, right_twist: Option<&Automorphism>) -> Bimodule {
        let dim = alg.dim();
        let window = alg.window().clone();
        let mut pairs = Vec::new();
        for x in 0..dim {
            for y in 0..dim {
                if window.contains(&alg.weight(x).add(alg.weight(y))) {
                    pairs.push((x, y));
                }
            }
        }
        let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let n = pairs.len();
        let mut left = vec![None; dim * n];
        let mut right = vec![None; dim * n];
        for a in 0..dim {
            let ta = match right_twist {
                Some(t) => t.image(a),
                None => vec![(a, Rational::one())],
            };
            for (k, &(x, y)) in pairs.iter().enumerate() {
                if !window.contains(&alg.weight(a).add(alg.weight(x)).add(alg.weight(y))) {
                    continue;
                }
                let lifted = |terms: Result<SparseVec>, first: bool| -> Option<SparseVec> {
                    let terms = terms.ok()?;
                    let mut acc = BTreeMap::new();
                    for (z, c) in terms {
                        let key = if first { (z, y) } else { (x, z) };
                        add_entry(&mut acc, *index.get(&key)?, c);
                    }
                    Some(acc.into_iter().collect())
                };
                left[a * n + k] = lifted(alg.multiply_sparse(&[(a, Rational::one())], &[(x, Rational::one())]), true);
                right[k * dim + a] = lifted(alg.multiply_sparse(&[(y, Rational::one())], &ta), false);
            }
        }
        let suffix = right_twist.filter(|t| !t.is_identity()).map_or(String::new(), |t| format!("_{}", t.name()));
        Bimodule {
            name: format!("A⊗A{suffix}"),
            labels: pairs.iter().map(|&(x, y)| format!("{}⊗{}", alg.id(x), alg.id(y))).collect(),
            weights: pairs.iter().map(|&(x, y)| alg.weight(x).add(alg.weight(y))).collect(),
            window,
            algebra_dim: dim,
            left,
            right,
        }
    }

    /// Exchanges the left and right actions (a bimodule over the opposite algebra).
    pub fn side_swap(&self) -> Bimodule {
        let dim = self.dim();
        let ad = self.algebra_dim;
        let mut left = vec![None; ad * dim];
        let mut right = vec![None; ad * dim];
        for a in 0..ad {
            for m in 0..dim {
                left[a * dim + m] = self.right[m * ad + a].clone();
                right[m * ad + a] = self.left[a * dim + m].clone();
            }
        }
        let name = match self.name.strip_prefix("swap(").and_then(|s| s.strip_suffix(')')) {
            Some(inner) => inner.to_string(),
            None => format!("swap({})", self.name),
        };
        Bimodule { name, labels: self.labels.clone(), weights: self.weights.clone(), window: self.window.clone(), algebra_dim: ad, left, right }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Lists every failed bimodule axiom on the window, with basis witnesses.
    pub fn check_axioms(&self, alg: &GradedAlgebra) -> Vec<String> {
        let mut failures = Vec::new();
        let dim = self.dim();
        let unit = to_sparse(alg.unit());
        let one = Rational::one();
        for m in 0..dim {
            let e_m = [(m, one.clone())];
            if let Ok(v) = self.left_apply(alg, &unit, &e_m) {
                if v != e_m {
                    failures.push(format!("1 ▸ {} ≠ {}", self.labels[m], self.labels[m]));
                }
            }
            if let Ok(v) = self.right_apply(alg, &e_m, &unit) {
                if v != e_m {
                    failures.push(format!("{} ◂ 1 ≠ {}", self.labels[m], self.labels[m]));
                }
            }
        }
        for a in 0..alg.dim() {
            let e_a = [(a, one.clone())];
            for m in 0..dim {
                let e_m = [(m, one.clone())];
                for b in 0..alg.dim() {
                    let e_b = [(b, one.clone())];
                    // (ab) ▸ m = a ▸ (b ▸ m)
                    if let (Ok(ab), Ok(bm)) = (alg.product(a, b), self.left_act(b, m, alg.weight(b))) {
                        if let (Ok(l), Ok(r)) = (self.left_apply(alg, ab, &e_m), self.left_apply(alg, &e_a, bm)) {
                            if l != r {
                                failures.push(format!("({}{}) ▸ {} ≠ {} ▸ ({} ▸ {})", alg.id(a), alg.id(b), self.labels[m], alg.id(a), alg.id(b), self.labels[m]));
                            }
                        }
                    }
                    // m ◂ (ab) = (m ◂ a) ◂ b
                    if let (Ok(ab), Ok(ma)) = (alg.product(a, b), self.right_act(m, a, alg.weight(a))) {
                        if let (Ok(l), Ok(r)) = (self.right_apply(alg, &e_m, ab), self.right_apply(alg, ma, &e_b)) {
                            if l != r {
                                failures.push(format!("{} ◂ ({}{}) ≠ ({} ◂ {}) ◂ {}", self.labels[m], alg.id(a), alg.id(b), self.labels[m], alg.id(a), alg.id(b)));
                            }
                        }
                    }
                    // (a ▸ m) ◂ b = a ▸ (m ◂ b)
                    if let (Ok(am), Ok(mb)) = (self.left_act(a, m, alg.weight(a)), self.right_act(m, b, alg.weight(b))) {
                        if let (Ok(l), Ok(r)) = (self.right_apply(alg, am, &e_b), self.left_apply(alg, &e_a, mb)) {
                            if l != r {
                                failures.push(format!("({} ▸ {}) ◂ {} ≠ {} ▸ ({} ◂ {})", alg.id(a), self.labels[m], alg.id(b), alg.id(a), self.labels[m], alg.id(b)));
                            }
                        }
                    }
                }
            }
        }
        failures
    }
}

/// Linear map between two bimodules over the same algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleMap {
    pub matrix: MatrixQ,
    pub domain: Bimodule,
    pub codomain: Bimodule,
}

impl BimoduleMap {
    /// Checks `f(a ▸ m) = a ▸ f(m)` and `f(m ◂ a) = f(m) ◂ a` wherever both sides are defined.
    pub fn check(&self, alg: &GradedAlgebra) -> Result<()> {
        let f = &self.matrix;
        let ft = f.transpose();
        let apply = |v: &[(usize, Rational)]| {
            let mut acc = BTreeMap::new();
            for (j, x) in v {
                accumulate(&mut acc, x, ft.row(*j));
            }
            acc.into_iter().collect::<SparseVec>()
        };
        for a in 0..alg.dim() {
            let e_a = [(a, Rational::one())];
            for m in 0..self.domain.dim() {
                let fm = apply(&[(m, Rational::one())]);
                if let Some(am) = self.domain.left_entry(a, m) {
                    if let Ok(rhs) = self.codomain.left_apply(alg, &e_a, &fm) {
                        if apply(am) != rhs {
                            return Err(Error::IntertwinerCheckFailed(format!("left action of {} on {}", alg.id(a), self.domain.label(m))));
                        }
                    }
                }
                if let Some(ma) = self.domain.right_entry(m, a) {
                    if let Ok(rhs) = self.codomain.right_apply(alg, &fm, &e_a) {
                        if apply(ma) != rhs {
                            return Err(Error::IntertwinerCheckFailed(format!("right action of {} on {}", alg.id(a), self.domain.label(m))));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_isomorphism(&self) -> bool {
        inverse(&self.matrix).is_some()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &BimoduleMap) -> BimoduleMap {
        BimoduleMap { matrix: &other.matrix * &self.matrix, domain: self.domain.clone(), codomain: other.codomain.clone() }
    }
}

/// The map `a ↦ τ(a)` from `ρAσ` to `(τρ)A(τσ)`, checked to be a bimodule map.
pub fn twist_iso(alg: &GradedAlgebra, rho: &Automorphism, sigma: &Automorphism, tau: &Automorphism) -> Result<BimoduleMap> {
    let map = BimoduleMap {
        matrix: tau.matrix().clone(),
        domain: Bimodule::twisted(alg, rho, sigma),
        codomain: Bimodule::twisted(alg, &tau.compose(rho), &tau.compose(sigma)),
    };
    map.check(alg)?;
    Ok(map)
}

// ---------------------------------------------------------------------------
// Tensor products over A
// ---------------------------------------------------------------------------

/// `M ⊗_A N` with its projection from `M ⊗ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorOverA {
    pub module: Bimodule,
    projection: BTreeMap<(usize, usize), SparseVec>,
    lifts: Vec<(usize, usize)>,
    dims_before: BTreeMap<Weight, usize>,
}

impl TensorOverA {
    /// Class of `m ⊗ n` in the quotient basis.
    pub fn project(&self, m: usize, n: usize) -> Result<&SparseVec> {
        self.projection
            .get(&(m, n))
            .ok_or_else(|| Error::WindowTooSmall(format!("pair ({m}, {n}) outside the tensor product window")))
    }

    /// The pair `(m, n)` whose class is the `k`-th quotient basis element.
    pub fn lift(&self, k: usize) -> (usize, usize) {
        self.lifts[k]
    }

    /// Dimension of `(M ⊗ N)_w` before the quotient.
    pub fn dim_before(&self, w: &Weight) -> usize {
        self.dims_before.get(w).copied().unwrap_or(0)
    }

    pub fn dim_after(&self, w: &Weight) -> usize {
        self.module.indices_of_weight(w).len()
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.dims_before.keys()
    }
}

/// Quotient of `M ⊗ N` by `m◂a ⊗ n − m ⊗ a▸n`, carrying the outer actions.
pub fn tensor_over(alg: &GradedAlgebra, m_mod: &Bimodule, n_mod: &Bimodule) -> Result<TensorOverA> {
    if m_mod.algebra_dim() != alg.dim() || n_mod.algebra_dim() != alg.dim() {
        return Err(Error::DimensionMismatch("bimodules over different algebras".into()));
    }
    let window = m_mod.window().intersect(n_mod.window());
    let mut groups: BTreeMap<Weight, Vec<(usize, usize)>> = BTreeMap::new();
    for m in 0..m_mod.dim() {
        for n in 0..n_mod.dim() {
            let w = m_mod.weight(m).add(n_mod.weight(n));
            if window.contains(&w) {
                groups.entry(w).or_default().push((m, n));
            }
        }
    }
    let mut relations: BTreeMap<Weight, Vec<Vec<(usize, usize, Rational)>>> = BTreeMap::new();
    for m in 0..m_mod.dim() {
        for a in 0..alg.dim() {
            let Some(ma) = m_mod.right_entry(m, a) else { continue };
            for n in 0..n_mod.dim() {
                let w = m_mod.weight(m).add(alg.weight(a)).add(n_mod.weight(n));
                if !window.contains(&w) {
                    continue;
                }
                let Some(an) = n_mod.left_entry(a, n) else { continue };
                let mut rel = Vec::new();
                for (mm, c) in ma {
                    rel.push((*mm, n, c.clone()));
                }
                for (nn, c) in an {
                    rel.push((m, *nn, -c.clone()));
                }
                relations.entry(w).or_default().push(rel);
            }
        }
    }
    let mut projection = BTreeMap::new();
    let mut lifts = Vec::new();
    let mut weights = Vec::new();
    let mut dims_before = BTreeMap::new();
    for (w, pairs) in &groups {
        let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let rels = relations.get(w).map_or(&[][..], Vec::as_slice);
        let cols: Vec<SparseVec> = rels
            .iter()
            .map(|rel| {
                let mut acc = BTreeMap::new();
                for (m, n, c) in rel {
                    add_entry(&mut acc, index[&(*m, *n)], c.clone());
                }
                acc.into_iter().collect()
            })
            .collect();
        let span = MatrixQ::from_sparse_columns(pairs.len(), &cols);
        let q = exactla::quotient(&span);
        let offset = lifts.len();
        for &c in &q.basis {
            lifts.push(pairs[c]);
            weights.push(w.clone());
        }
        let pt = q.projection.transpose();
        for (k, p) in pairs.iter().enumerate() {
            projection.insert(*p, pt.row(k).iter().map(|(j, v)| (j + offset, v.clone())).collect::<SparseVec>());
        }
        dims_before.insert(w.clone(), pairs.len());
    }
    let dim = lifts.len();
    let ad = alg.dim();
    let mut left = vec![None; ad * dim];
    let mut right = vec![None; ad * dim];
    for a in 0..ad {
        for (k, &(m, n)) in lifts.iter().enumerate() {
            if let Some(am) = m_mod.left_entry(a, m) {
                let mut acc = BTreeMap::new();
                let ok = am.iter().all(|(mm, c)| match projection.get(&(*mm, n)) {
                    Some(p) => {
                        accumulate(&mut acc, c, p);
                        true
                    }
                    None => false,
                });
                if ok {
                    left[a * dim + k] = Some(acc.into_iter().collect());
                }
            }
            if let Some(nb) = n_mod.right_entry(n, a) {
                let mut acc = BTreeMap::new();
                let ok = nb.iter().all(|(nn, c)| match projection.get(&(m, *nn)) {
                    Some(p) => {
                        accumulate(&mut acc, c, p);
                        true
                    }
                    None => false,
                });
                if ok {
                    right[k * ad + a] = Some(acc.into_iter().collect());
                }
            }
        }
    }
    let module = Bimodule {
        name: format!("{}⊗_A{}", m_mod.name(), n_mod.name()),
        labels: lifts.iter().map(|&(m, n)| format!("{}⊗{}", m_mod.label(m), n_mod.label(n))).collect(),
        weights,
        window,
        algebra_dim: ad,
        left,
        right,
    };
    Ok(TensorOverA { module, projection, lifts, dims_before })
}

// ---------------------------------------------------------------------------
// Inner automorphisms
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InnerSearch {
    /// An invertible `u` with `σ(a) = u a u⁻¹` for all `a`.
    Inner(Vec<Rational>),
    /// No invertible solution exists.
    NotInner,
    /// The search budget ran out before the scan was complete.
    BudgetExhausted { solution_dim: usize },
}

/// Matrix of left multiplication by `u`.
fn left_multiplication(alg: &GradedAlgebra, u: &[Rational]) -> Result<MatrixQ> {
    let su = to_sparse(u);
    let mut cols = Vec::with_capacity(alg.dim());
    for j in 0..alg.dim() {
        cols.push(alg.multiply_sparse(&su, &[(j, Rational::one())])?);
    }
    Ok(MatrixQ::from_sparse_columns(alg.dim(), &cols))
}

/// Searches the solution space of `σ(a) u = u a` for an invertible element.
///
/// The determinant of left multiplication by `Σ cᵢ uᵢ` is a polynomial of degree
/// at most `dim A` in the coefficients, so scanning the grid `{0..=dim A}^k`
/// decides invertibility; `budget` caps the number of grid points tried.
pub fn is_inner(alg: &GradedAlgebra, sigma: &Automorphism, budget: usize) -> Result<InnerSearch> {
    if !alg.is_finite_dimensional() {
        return Err(Error::NotFiniteDimensional);
    }
    let dim = alg.dim();
    let mut triplets = Vec::new();
    for a in 0..dim {
        let sa = sigma.image(a);
        for j in 0..dim {
            let e_j = [(j, Rational::one())];
            for (k, v) in alg.multiply_sparse(&sa, &e_j)? {
                triplets.push((a * dim + k, j, v));
            }
            for (k, v) in alg.multiply_sparse(&e_j, &[(a, Rational::one())])? {
                triplets.push((a * dim + k, j, -v));
            }
        }
    }
    let constraints = MatrixQ::from_triplets(dim * dim, dim, triplets);
    let solutions = exactla::eliminate(&constraints).kernel_basis;
    if solutions.is_empty() {
        return Ok(InnerSearch::NotInner);
    }
    let k = solutions.len();
    let side = dim + 1;
    let mut coeffs = vec![0usize; k];
    let mut tried = 0usize;
    let combine = |c: &[usize]| {
        let mut u = zero_vec(dim);
        for (s, &ci) in solutions.iter().zip(c) {
            if ci != 0 {
                let ci = Rational::from_integer((ci as i64).into());
                for (x, y) in u.iter_mut().zip(s) {
                    *x += &ci * y;
                }
            }
        }
        u
    };
    // Basis vectors first, then the full grid.
    for i in 0..k {
        let mut c = vec![0usize; k];
        c[i] = 1;
        let u = combine(&c);
        tried += 1;
        if exactla::rank(&left_multiplication(alg, &u)?) == dim {
            return Ok(InnerSearch::Inner(u));
        }
    }
    let grid_size = (side as u128).checked_pow(k as u32);
    loop {
        if tried >= budget {
            return Ok(InnerSearch::BudgetExhausted { solution_dim: k });
        }
        let u = combine(&coeffs);
        tried += 1;
        if !is_zero_vec(&u) && exactla::rank(&left_multiplication(alg, &u)?) == dim {
            return Ok(InnerSearch::Inner(u));
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(match grid_size {
                    Some(_) => InnerSearch::NotInner,
                    None => InnerSearch::BudgetExhausted { solution_dim: k },
                });
            }
            coeffs[pos] += 1;
            if coeffs[pos] < side {
                break;
            }
            coeffs[pos] = 0;
            pos += 1;
        }
    }
}
