//! The paracyclic module `C_•(A, σA)` and the operators built from it.
//!
//! Faces, degeneracies and the twisted cyclic operator are materialized as
//! matrices on the unnormalized complex; `b`, `b′`, `N`, `s`, `B` and `T` are
//! assembled from their defining sums and products, and every identity between
//! them is checked as an exact matrix equation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{Automorphism, Bimodule, GradedAlgebra, Weight, Window};
use crate::error::{Error, Result};
use crate::exactla::{add_entry, homology_quotient, induced_on_homology, intersection_dim, rank, to_sparse, MatrixQ, Rational};
use crate::hochschild::{ChainSpace, HomologyBlock, SparseChain};

fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Faces `d_{n,i}`, degeneracies `s_{n,j}` and `t_n` on `C_n(A, σA)` for `n ≤ n_max + 2`.
#[derive(Clone, Debug)]
pub struct ParacyclicOps {
    algebra: GradedAlgebra,
    sigma: Automorphism,
    module: Bimodule,
    window: Window,
    n_max: usize,
    spaces: Vec<ChainSpace>,
    /// `faces[n][i] = d_{n,i}` for `1 ≤ n ≤ top`.
    faces: Vec<Vec<MatrixQ>>,
    /// `degens[n][j] = s_{n,j}` for `n < top`.
    degens: Vec<Vec<MatrixQ>>,
    t: Vec<MatrixQ>,
}

/// Operators derived from the paracyclic structure.
#[derive(Clone, Debug)]
pub struct DerivedOps {
    /// `b_n`, with `b_0 = 0`.
    pub b: Vec<MatrixQ>,
    /// `b′_n`, with `b′_0 = 0`.
    pub b_prime: Vec<MatrixQ>,
    pub norm: Vec<MatrixQ>,
    /// Extra degeneracy `s_n : C_n → C_{n+1}`.
    pub extra: Vec<MatrixQ>,
    /// Connes–Tsygan `B_n : C_n → C_{n+1}`.
    pub connes: Vec<MatrixQ>,
    /// `T_n = t_n^{n+1}`.
    pub big_t: Vec<MatrixQ>,
}

impl ParacyclicOps {
    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn sigma(&self) -> &Automorphism {
        &self.sigma
    }

    /// The coefficient bimodule `σA`.
    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Highest degree carrying operators, `n_max + 2`.
    pub fn top(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn space(&self, n: usize) -> &ChainSpace {
        &self.spaces[n]
    }

    pub fn face(&self, n: usize, i: usize) -> &MatrixQ {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, j: usize) -> &MatrixQ {
        &self.degens[n][j]
    }

    pub fn t(&self, n: usize) -> &MatrixQ {
        &self.t[n]
    }

    pub fn identity(&self, n: usize) -> MatrixQ {
        MatrixQ::identity(self.spaces[n].dim())
    }

    /// `σ^{⊗(n+1)}` on `C_n`.
    pub fn diagonal_twist(&self, n: usize) -> Result<MatrixQ> {
        let images: Vec<_> = (0..self.algebra.dim()).map(|i| self.sigma.image(i)).collect();
        let op = |t: &[usize]| -> Result<SparseChain> {
            let mut acc = SparseChain::from([(Vec::new(), Rational::one())]);
            for &a in t {
                let mut next = SparseChain::new();
                for (u, c) in &acc {
                    for (k, d) in &images[a] {
                        let mut v = u.clone();
                        v.push(*k);
                        add_entry(&mut next, v, c * d);
                    }
                }
                acc = next;
            }
            Ok(acc)
        };
        self.matrix_of(n, n, op)
    }

    fn matrix_of(&self, from: usize, to: usize, op: impl Fn(&[usize]) -> Result<SparseChain>) -> Result<MatrixQ> {
        let mut cols = Vec::with_capacity(self.spaces[from].dim());
        for t in self.spaces[from].tuples() {
            cols.push(self.spaces[to].vector_of(&op(t)?, &self.algebra, None)?);
        }
        Ok(MatrixQ::from_sparse_columns(self.spaces[to].dim(), &cols))
    }
}

fn face_tuple(alg: &GradedAlgebra, sigma: &Automorphism, t: &[usize], i: usize) -> Result<SparseChain> {
    let n = t.len() - 1;
    let mut out = SparseChain::new();
    if i < n {
        for (k, c) in alg.product(t[i], t[i + 1])? {
            let mut u = t[..i].to_vec();
            u.push(*k);
            u.extend_from_slice(&t[i + 2..]);
            add_entry(&mut out, u, c.clone());
        }
    } else {
        for (k, c) in alg.multiply_sparse(&sigma.image(t[n]), &[(t[0], Rational::one())])? {
            let mut u = vec![k];
            u.extend_from_slice(&t[1..n]);
            add_entry(&mut out, u, c);
        }
    }
    Ok(out)
}

fn degeneracy_tuple(unit: &[(usize, Rational)], t: &[usize], j: usize) -> SparseChain {
    let mut out = SparseChain::new();
    for (k, c) in unit {
        let mut u = t[..=j].to_vec();
        u.push(*k);
        u.extend_from_slice(&t[j + 1..]);
        add_entry(&mut out, u, c.clone());
    }
    out
}

fn cyclic_tuple(sigma: &Automorphism, t: &[usize]) -> SparseChain {
    let n = t.len() - 1;
    let mut out = SparseChain::new();
    for (k, c) in sigma.image(t[n]) {
        let mut u = vec![k];
        u.extend_from_slice(&t[..n]);
        add_entry(&mut out, u, sign(n) * c);
    }
    out
}

/// Builds all operators on `C_n(A, σA)` for `n ≤ n_max + 2` over the given weight window.
pub fn build_paracyclic(
    alg: &GradedAlgebra,
    sigma: &Automorphism,
    n_max: usize,
    window: &Window,
) -> Result<(ParacyclicOps, DerivedOps)> {
    if window.rank() != alg.grading_rank() {
        return Err(Error::DimensionMismatch(format!("window rank {} for grading rank {}", window.rank(), alg.grading_rank())));
    }
    let module = Bimodule::twisted(alg, sigma, &Automorphism::identity(alg));
    let top = n_max + 2;
    let spaces: Vec<ChainSpace> = (0..=top).map(|n| ChainSpace::enumerate(alg, &module, n, window, None)).collect();
    let mut ops = ParacyclicOps {
        algebra: alg.clone(),
        sigma: sigma.clone(),
        module,
        window: window.clone(),
        n_max,
        spaces,
        faces: vec![Vec::new()],
        degens: Vec::new(),
        t: Vec::new(),
    };
    let unit = to_sparse(alg.unit());
    for n in 1..=top {
        let faces = (0..=n).map(|i| ops.matrix_of(n, n - 1, |t| face_tuple(alg, sigma, t, i))).collect::<Result<Vec<_>>>()?;
        ops.faces.push(faces);
    }
    for n in 0..top {
        let degens = (0..=n).map(|j| ops.matrix_of(n, n + 1, |t| Ok(degeneracy_tuple(&unit, t, j)))).collect::<Result<Vec<_>>>()?;
        ops.degens.push(degens);
    }
    for n in 0..=top {
        let t = ops.matrix_of(n, n, |t| Ok(cyclic_tuple(sigma, t)))?;
        ops.t.push(t);
    }
    let derived = derive(&ops);
    Ok((ops, derived))
}

fn derive(ops: &ParacyclicOps) -> DerivedOps {
    let top = ops.top();
    let dim = |n: usize| ops.spaces[n].dim();
    let mut b = vec![MatrixQ::zeros(0, dim(0))];
    let mut b_prime = vec![MatrixQ::zeros(0, dim(0))];
    for n in 1..=top {
        let mut full = MatrixQ::zeros(dim(n - 1), dim(n));
        let mut partial = MatrixQ::zeros(dim(n - 1), dim(n));
        for i in 0..=n {
            let term = ops.faces[n][i].scale(&sign(i));
            full = &full + &term;
            if i < n {
                partial = &partial + &term;
            }
        }
        b.push(full);
        b_prime.push(partial);
    }
    let mut norm = Vec::new();
    let mut big_t = Vec::new();
    for n in 0..=top {
        let mut acc = ops.identity(n);
        let mut power = ops.identity(n);
        for _ in 1..=n {
            power = &ops.t[n] * &power;
            acc = &acc + &power;
        }
        norm.push(acc);
        big_t.push(&ops.t[n] * &power);
    }
    let mut extra = Vec::new();
    let mut connes = Vec::new();
    for n in 0..top {
        let s = (&ops.t[n + 1] * &ops.degens[n][n]).scale(&sign(n + 1));
        let one_minus_t = &ops.identity(n + 1) - &ops.t[n + 1];
        connes.push(&(&one_minus_t * &s) * &norm[n]);
        extra.push(s);
    }
    DerivedOps { b, b_prime, norm, extra, connes, big_t }
}

/// Which family of identities to verify.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    Simplicial,
    Paracyclic,
    Homotopy,
    Subsidiary,
    All,
}

impl RelationKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "simplicial" => Some(Self::Simplicial),
            "paracyclic" => Some(Self::Paracyclic),
            "homotopy" => Some(Self::Homotopy),
            "subsidiary" => Some(Self::Subsidiary),
            "all" => Some(Self::All),
            _ => None,
        }
    }

    fn includes(self, other: RelationKind) -> bool {
        self == RelationKind::All || self == other
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationEntry {
    pub name: String,
    /// Degree of the domain.
    pub degree: usize,
    pub weight: Weight,
    pub passed: bool,
    /// On failure: the basis tuple and the nonzero difference it produces.
    pub witness: Option<(Vec<usize>, Vec<(usize, Rational)>)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationReport {
    pub entries: Vec<RelationEntry>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }
}

struct Checker<'a> {
    ops: &'a ParacyclicOps,
    entries: Vec<RelationEntry>,
}

impl Checker<'_> {
    /// Records `lhs = rhs` on `C_n`, one entry per weight of the domain.
    fn record(&mut self, name: String, n: usize, lhs: &MatrixQ, rhs: &MatrixQ) {
        let diff = lhs - rhs;
        let t = diff.transpose();
        let space = &self.ops.spaces[n];
        for w in space.weights() {
            let bad = space.indices_of_weight(w).iter().copied().find(|&c| !t.row(c).is_empty());
            self.entries.push(RelationEntry {
                name: name.clone(),
                degree: n,
                weight: w.clone(),
                passed: bad.is_none(),
                witness: bad.map(|c| (space.tuple(c).to_vec(), t.row(c).to_vec())),
            });
        }
    }
}

/// Verifies the requested identities at every degree `n ≤ n_max` and every weight.
pub fn check_relations(ops: &ParacyclicOps, derived: &DerivedOps, kind: RelationKind) -> RelationReport {
    let mut ck = Checker { ops, entries: Vec::new() };
    let d = |n: usize, i: usize| &ops.faces[n][i];
    let s = |n: usize, j: usize| &ops.degens[n][j];
    let t = |n: usize| &ops.t[n];
    let id = |n: usize| ops.identity(n);
    let n_max = ops.n_max;
    if kind.includes(RelationKind::Simplicial) {
        for n in 0..=n_max {
            if n >= 2 {
                for j in 0..=n {
                    for i in 0..j {
                        ck.record(format!("d{i}d{j}=d{}d{i}", j - 1), n, &(d(n - 1, i) * d(n, j)), &(d(n - 1, j - 1) * d(n, i)));
                    }
                }
            }
            for j in 0..=n {
                for i in 0..=j {
                    ck.record(format!("s{i}s{j}=s{}s{i}", j + 1), n, &(s(n + 1, i) * s(n, j)), &(s(n + 1, j + 1) * s(n, i)));
                }
            }
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = d(n + 1, i) * s(n, j);
                    let (name, rhs) = if i < j {
                        (format!("d{i}s{j}=s{}d{i}", j - 1), s(n - 1, j - 1) * d(n, i))
                    } else if i == j || i == j + 1 {
                        (format!("d{i}s{j}=id"), id(n))
                    } else {
                        (format!("d{i}s{j}=s{j}d{}", i - 1), s(n - 1, j) * d(n, i - 1))
                    };
                    ck.record(name, n, &lhs, &rhs);
                }
            }
        }
    }
    if kind.includes(RelationKind::Paracyclic) {
        for n in 0..=n_max {
            if n >= 1 {
                ck.record("d0t=(-1)^n dn".into(), n, &(d(n, 0) * t(n)), &d(n, n).scale(&sign(n)));
                for i in 1..=n {
                    ck.record(format!("d{i}t=-td{}", i - 1), n, &(d(n, i) * t(n)), &-(&(t(n - 1) * d(n, i - 1))));
                }
            }
            let t2 = t(n + 1) * t(n + 1);
            ck.record("s0t=(-1)^n t^2 sn".into(), n, &(s(n, 0) * t(n)), &(&t2 * s(n, n)).scale(&sign(n)));
            for i in 1..=n {
                ck.record(format!("s{i}t=-ts{}", i - 1), n, &(s(n, i) * t(n)), &-(&(t(n + 1) * s(n, i - 1))));
            }
        }
    }
    let DerivedOps { b, b_prime, norm, extra, connes, big_t } = derived;
    if kind.includes(RelationKind::Homotopy) {
        for n in 0..=n_max {
            let mut lhs = &b[n + 1] * &connes[n];
            if n >= 1 {
                lhs = &lhs + &(&connes[n - 1] * &b[n]);
            }
            ck.record("bB+Bb=1-T".into(), n, &lhs, &(&id(n) - &big_t[n]));
            let rhs = &(&(&(&(&id(n + 2) - &big_t[n + 2]) * &(&id(n + 2) - t(n + 2))) * &extra[n + 1]) * &extra[n]) * &norm[n];
            ck.record("BB=(1-T)(1-t)ssN".into(), n, &(&connes[n + 1] * &connes[n]), &rhs);
        }
    }
    if kind.includes(RelationKind::Subsidiary) {
        for n in 0..=n_max {
            if n >= 1 {
                ck.record(
                    "b(1-t)=(1-t)b'".into(),
                    n,
                    &(&b[n] * &(&id(n) - t(n))),
                    &(&(&id(n - 1) - t(n - 1)) * &b_prime[n]),
                );
                ck.record("b'N=Nb".into(), n, &(&b_prime[n] * &norm[n]), &(&norm[n - 1] * &b[n]));
            }
            let mut lhs = &b_prime[n + 1] * &extra[n];
            if n >= 1 {
                lhs = &lhs + &(&extra[n - 1] * &b_prime[n]);
            }
            ck.record("b's+sb'=1".into(), n, &lhs, &id(n));
        }
    }
    RelationReport { entries: ck.entries }
}

/// Homology of `C_•(A, σA)` at `(n, w)` computed from the derived `b`.
pub fn paracyclic_homology(ops: &ParacyclicOps, derived: &DerivedOps, n: usize, w: &Weight) -> Result<HomologyBlock> {
    if n + 1 > ops.top() || !ops.window.contains(w) {
        return Err(Error::BidegreeOutOfRange(n, w.clone()));
    }
    let block = |k: usize| {
        let cols = ops.spaces[k].indices_of_weight(w);
        if k == 0 {
            MatrixQ::zeros(0, cols.len())
        } else {
            derived.b[k].select_rows(ops.spaces[k - 1].indices_of_weight(w)).select_cols(cols)
        }
    };
    let presentation = homology_quotient(&block(n), &block(n + 1))?;
    Ok(HomologyBlock { degree: n, weight: w.clone(), indices: ops.spaces[n].indices_of_weight(w).to_vec(), presentation })
}

/// Matrix of `T_n` on `H_n(A, σA)_w` in the basis of representative classes.
pub fn t_on_homology(ops: &ParacyclicOps, derived: &DerivedOps, n: usize, w: &Weight) -> Result<MatrixQ> {
    let h = paracyclic_homology(ops, derived, n, w)?;
    let idx = &h.indices;
    let block = derived.big_t[n].select_rows(idx).select_cols(idx);
    induced_on_homology(&block, &h.presentation, &h.presentation)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasicyclicReport {
    pub split: bool,
    pub dim: usize,
    pub dim_ker: usize,
    pub dim_im: usize,
    pub dim_intersection: usize,
}

/// Whether `C_{n,w} = ker(1 − T) ⊕ im(1 − T)`.
pub fn quasicyclic_check(ops: &ParacyclicOps, derived: &DerivedOps, n: usize, w: &Weight) -> Result<QuasicyclicReport> {
    if n > ops.top() {
        return Err(Error::BidegreeOutOfRange(n, w.clone()));
    }
    let idx = ops.spaces[n].indices_of_weight(w);
    let m = (&ops.identity(n) - &derived.big_t[n]).select_rows(idx).select_cols(idx);
    let dim = idx.len();
    let r = rank(&m);
    let kernel = crate::exactla::eliminate(&m).kernel_basis;
    let kmat = MatrixQ::from_columns(dim, &kernel);
    let dim_intersection = intersection_dim(&kmat, &m);
    let dim_ker = dim - r;
    Ok(QuasicyclicReport { split: dim_intersection == 0 && dim_ker + r == dim, dim, dim_ker, dim_im: r, dim_intersection })
}

/// Degrees `n` at which `T_n` differs from `σ^{⊗(n+1)}`.
pub fn t_diagonal_mismatches(ops: &ParacyclicOps, derived: &DerivedOps) -> Result<Vec<usize>> {
    let mut bad = Vec::new();
    for n in 0..=ops.top() {
        if derived.big_t[n] != ops.diagonal_twist(n)? {
            bad.push(n);
        }
    }
    Ok(bad)
}

/// All `(n, w)` with `n ≤ n_max` present in the window, ascending.
pub fn bidegrees(ops: &ParacyclicOps) -> Vec<(usize, Weight)> {
    let mut out = Vec::new();
    for n in 0..=ops.n_max {
        for w in ops.spaces[n].weights() {
            out.push((n, w.clone()));
        }
    }
    out.sort();
    out
}

/// Chains of a paracyclic space, keyed by tuple, for inspection.
pub fn chain_of(ops: &ParacyclicOps, n: usize, v: &[(usize, Rational)]) -> BTreeMap<Vec<usize>, Rational> {
    ops.spaces[n].chain_of(v)
}

/// True if `m` is the zero map on the weight-`w` part of `C_n`.
pub fn vanishes_on(ops: &ParacyclicOps, m: &MatrixQ, n: usize, w: &Weight) -> bool {
    let t = m.transpose();
    ops.spaces[n].indices_of_weight(w).iter().all(|&c| t.row(c).iter().all(|(_, v)| v.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{build, poly1, Family};
    use crate::exactla::{rat, to_dense};
    use crate::hochschild::build_chain_window;

    fn w(x: i64) -> Weight {
        Weight(vec![x])
    }

    #[test]
    fn cyclic_operator_examples() {
        let (a, sigma) = poly1(2, 3);
        let (ops, derived) = build_paracyclic(&a, &sigma, 1, &Window::upto(&[3])).unwrap();
        let sp = ops.space(1);
        let v = to_dense(&[(sp.index_of(&[0, 1]).unwrap(), rat(1))], sp.dim());
        let image = ops.t(1).mul_vec(&v);
        let expected = to_dense(&[(sp.index_of(&[1, 0]).unwrap(), rat(-2))], sp.dim());
        assert_eq!(image, expected);
        // t_2(1 ⊗ y ⊗ y) = σ(y) ⊗ 1 ⊗ y
        let s2 = ops.space(2);
        let v = to_dense(&[(s2.index_of(&[0, 1, 1]).unwrap(), rat(1))], s2.dim());
        let expected = to_dense(&[(s2.index_of(&[1, 0, 1]).unwrap(), rat(2))], s2.dim());
        assert_eq!(ops.t(2).mul_vec(&v), expected);
        // extra degeneracy at n = 0: s(a) = 1 ⊗ a
        let s0 = &derived.extra[0];
        for k in 0..ops.space(0).dim() {
            let a = ops.space(0).tuple(k)[0];
            let col = s0.column(k);
            let target = sp.index_of(&[0, a]).unwrap();
            assert_eq!(col, to_dense(&[(target, rat(1))], sp.dim()));
        }
    }

    #[test]
    fn degree_zero_homotopy() {
        let (a, sigma) = poly1(2, 3);
        let (ops, derived) = build_paracyclic(&a, &sigma, 1, &Window::upto(&[3])).unwrap();
        let sp = ops.space(1);
        for k in 0..ops.space(0).dim() {
            let x = ops.space(0).tuple(k)[0];
            let q = rat(2).pow(x as i32);
            // B_0(a) = 1 ⊗ a + σ(a) ⊗ 1
            let mut expected = vec![Rational::zero(); sp.dim()];
            expected[sp.index_of(&[0, x]).unwrap()] += rat(1);
            expected[sp.index_of(&[x, 0]).unwrap()] += q.clone();
            assert_eq!(derived.connes[0].column(k), expected);
            let mut diff = vec![Rational::zero(); ops.space(0).dim()];
            diff[k] = rat(1) - q;
            assert_eq!((&derived.b[1] * &derived.connes[0]).column(k), diff);
        }
    }

    #[test]
    fn relations_hold_for_small_cases() {
        let (k, kid) = build(&Family::Ground, None).unwrap();
        let (ops, derived) = build_paracyclic(&k, &kid[0], 4, &Window::upto(&[0])).unwrap();
        assert!(check_relations(&ops, &derived, RelationKind::All).passed());
        let (a, sigma) = poly1(2, 3);
        let (ops, derived) = build_paracyclic(&a, &sigma, 3, &Window::upto(&[3])).unwrap();
        let report = check_relations(&ops, &derived, RelationKind::All);
        assert!(report.passed(), "{:?}", report.failures().next());
        assert!(t_diagonal_mismatches(&ops, &derived).unwrap().is_empty());
    }

    #[test]
    fn boundary_matches_hochschild_module() {
        let (a, sigma) = poly1(2, 3);
        let (ops, derived) = build_paracyclic(&a, &sigma, 2, &Window::upto(&[3])).unwrap();
        let c = build_chain_window(&a, ops.module(), 3, &Window::upto(&[3]), false).unwrap();
        for n in 0..=4 {
            assert_eq!(&derived.b[n], c.boundary(n), "degree {n}");
        }
    }

    #[test]
    fn t_on_homology_is_identity() {
        let (a, sigma) = poly1(2, 3);
        let (ops, derived) = build_paracyclic(&a, &sigma, 2, &Window::upto(&[3])).unwrap();
        for (n, wt) in bidegrees(&ops) {
            let m = t_on_homology(&ops, &derived, n, &wt).unwrap();
            assert_eq!(m, MatrixQ::identity(m.nrows()), "({n}, {wt})");
        }
        let m = t_on_homology(&ops, &derived, 0, &w(0)).unwrap();
        assert_eq!(m.nrows(), 1);
    }

    #[test]
    fn quasicyclic_examples() {
        let (a, sigma) = poly1(2, 3);
        let (ops, derived) = build_paracyclic(&a, &sigma, 2, &Window::upto(&[3])).unwrap();
        for x in 1..=3 {
            let r = quasicyclic_check(&ops, &derived, 1, &w(x)).unwrap();
            assert!(r.split && r.dim_ker == 0 && r.dim_im == r.dim);
        }
        let id = Automorphism::identity(&a);
        let (ops, derived) = build_paracyclic(&a, &id, 2, &Window::upto(&[3])).unwrap();
        let r = quasicyclic_check(&ops, &derived, 2, &w(2)).unwrap();
        assert!(r.split && r.dim_ker == r.dim && r.dim_im == 0);
    }
}
