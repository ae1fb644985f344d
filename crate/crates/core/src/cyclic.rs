//! The associated cyclic module `C/im(1 − T)` and its mixed `(b, B)` bicomplex.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{Automorphism, GradedAlgebra, Weight, Window};
use crate::error::{Error, Result};
use crate::exactla::{homology_quotient, quotient, MatrixQ, Quotient};
use crate::paracyclic::{build_paracyclic, DerivedOps, ParacyclicOps};

/// Quotient of one bidegree of `C` by `im(1 − T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicBlock {
    pub quotient: Quotient,
    /// Indices of the weight block inside `C_n`.
    pub indices: Vec<usize>,
}

impl CyclicBlock {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }
}

/// `C^cyc_n` for `n ≤ n_max` with the induced `b` and `B`, per weight.
#[derive(Clone, Debug)]
pub struct CyclicQuotientWindow {
    n_max: usize,
    weights: Vec<Weight>,
    blocks: BTreeMap<(usize, Weight), CyclicBlock>,
    /// Induced `b_n : C^cyc_n → C^cyc_{n−1}`, `1 ≤ n ≤ n_max`.
    b: BTreeMap<(usize, Weight), MatrixQ>,
    /// Induced `B_n : C^cyc_n → C^cyc_{n+1}`, `n < n_max`.
    big_b: BTreeMap<(usize, Weight), MatrixQ>,
    /// Every identity that failed on the quotient, as `(name, n, w)`.
    failures: Vec<(String, usize, Weight)>,
}

fn block_of(m: &MatrixQ, rows: &[usize], cols: &[usize]) -> MatrixQ {
    m.select_rows(rows).select_cols(cols)
}

/// Builds the cyclic quotient in degrees `0..=n_max` from a paracyclic structure
/// that reaches at least degree `n_max`.
pub fn cyclic_from_ops(ops: &ParacyclicOps, derived: &DerivedOps, n_max: usize) -> Result<CyclicQuotientWindow> {
    if n_max >= ops.top() {
        return Err(Error::InsufficientWindow(format!("paracyclic operators stop at degree {}", ops.top())));
    }
    let weights: Vec<Weight> = {
        let set: BTreeSet<Weight> = (0..=n_max).flat_map(|n| ops.space(n).weights().cloned()).collect();
        set.into_iter().collect()
    };
    let mut blocks = BTreeMap::new();
    for n in 0..=n_max {
        for w in &weights {
            let idx = ops.space(n).indices_of_weight(w).to_vec();
            let one_minus_t = &ops.identity(n) - &derived.big_t[n];
            let span = block_of(&one_minus_t, &idx, &idx);
            blocks.insert((n, w.clone()), CyclicBlock { quotient: quotient(&span), indices: idx });
        }
    }
    let mut failures = Vec::new();
    let mut induce = |name: &str, m: &MatrixQ, from: usize, to: usize, w: &Weight| -> MatrixQ {
        let src = &blocks[&(from, w.clone())];
        let dst = &blocks[&(to, w.clone())];
        let local = block_of(m, &dst.indices, &src.indices);
        let one_minus_t = block_of(&(&ops.identity(from) - &derived.big_t[from]), &src.indices, &src.indices);
        if !(&(&dst.quotient.projection * &local) * &one_minus_t).is_zero() {
            failures.push((format!("{name} preserves im(1-T)"), from, w.clone()));
        }
        &(&dst.quotient.projection * &local) * &src.quotient.lift
    };
    let mut b = BTreeMap::new();
    let mut big_b = BTreeMap::new();
    for w in &weights {
        for n in 1..=n_max {
            b.insert((n, w.clone()), induce("b", &derived.b[n], n, n - 1, w));
        }
        for n in 0..n_max {
            big_b.insert((n, w.clone()), induce("B", &derived.connes[n], n, n + 1, w));
        }
    }
    let mut win = CyclicQuotientWindow { n_max, weights, blocks, b, big_b, failures };
    win.verify();
    Ok(win)
}

/// Builds paracyclic operators on `C(A, σA)` and passes to the cyclic quotient.
pub fn associated_cyclic(alg: &GradedAlgebra, sigma: &Automorphism, n_max: usize, window: &Window) -> Result<CyclicQuotientWindow> {
    let (ops, derived) = build_paracyclic(alg, sigma, n_max, window)?;
    cyclic_from_ops(&ops, &derived, n_max)
}

impl CyclicQuotientWindow {
    fn verify(&mut self) {
        for w in self.weights.clone() {
            for n in 0..=self.n_max {
                if n >= 2 && !(&self.b[&(n - 1, w.clone())] * &self.b[&(n, w.clone())]).is_zero() {
                    self.failures.push(("bb=0".into(), n, w.clone()));
                }
                if n < self.n_max {
                    let mut anti = &self.b[&(n + 1, w.clone())] * &self.big_b[&(n, w.clone())];
                    if n >= 1 {
                        anti = &anti + &(&self.big_b[&(n - 1, w.clone())] * &self.b[&(n, w.clone())]);
                    }
                    if !anti.is_zero() {
                        self.failures.push(("bB+Bb=0".into(), n, w.clone()));
                    }
                }
                if n + 1 < self.n_max && !(&self.big_b[&(n + 1, w.clone())] * &self.big_b[&(n, w.clone())]).is_zero() {
                    self.failures.push(("BB=0".into(), n, w.clone()));
                }
            }
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn block(&self, n: usize, w: &Weight) -> Option<&CyclicBlock> {
        self.blocks.get(&(n, w.clone()))
    }

    pub fn dim(&self, n: usize, w: &Weight) -> usize {
        self.block(n, w).map_or(0, CyclicBlock::dim)
    }

    pub fn b(&self, n: usize, w: &Weight) -> Option<&MatrixQ> {
        self.b.get(&(n, w.clone()))
    }

    pub fn big_b(&self, n: usize, w: &Weight) -> Option<&MatrixQ> {
        self.big_b.get(&(n, w.clone()))
    }

    /// Identities that failed on the quotient; empty when all hold.
    pub fn failures(&self) -> &[(String, usize, Weight)] {
        &self.failures
    }

    /// Induced `b` with the zero map out of degree 0.
    fn b_or_zero(&self, n: usize, w: &Weight) -> MatrixQ {
        match self.b(n, w) {
            Some(m) => m.clone(),
            None => MatrixQ::zeros(if n == 0 { 0 } else { self.dim(n - 1, w) }, self.dim(n, w)),
        }
    }

    /// Total differential `Tot_n → Tot_{n−1}` where `Tot_n = ⊕_p C^cyc_{n−2p}`.
    pub fn total_differential(&self, n: usize, w: &Weight) -> MatrixQ {
        let comps = |m: usize| -> Vec<usize> { (0..=m / 2).map(|p| m - 2 * p).collect() };
        let src = comps(n);
        let dst: Vec<usize> = if n == 0 { Vec::new() } else { comps(n - 1) };
        let offsets = |list: &[usize]| -> Vec<usize> {
            let mut acc = 0;
            list.iter().map(|&k| {
                let o = acc;
                acc += self.dim(k, w);
                o
            }).collect()
        };
        let (src_off, dst_off) = (offsets(&src), offsets(&dst));
        let rows: usize = dst.iter().map(|&k| self.dim(k, w)).sum();
        let cols: usize = src.iter().map(|&k| self.dim(k, w)).sum();
        let mut triplets = Vec::new();
        for (p, &k) in src.iter().enumerate() {
            if k >= 1 {
                if let Some(q) = dst.iter().position(|&d| d == k - 1) {
                    for (r, c, v) in self.b_or_zero(k, w).entries() {
                        triplets.push((dst_off[q] + r, src_off[p] + c, v.clone()));
                    }
                }
            }
            if p >= 1 {
                if let (Some(q), Some(m)) = (dst.iter().position(|&d| d == k + 1), self.big_b(k, w)) {
                    for (r, c, v) in m.entries() {
                        triplets.push((dst_off[q] + r, src_off[p] + c, v.clone()));
                    }
                }
            }
        }
        MatrixQ::from_triplets(rows, cols, triplets)
    }
}

/// Cyclic homology and Hochschild-column homology by `(n, weight)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HCTable {
    pub hc: BTreeMap<(usize, Weight), usize>,
    pub columns: BTreeMap<(usize, Weight), usize>,
}

/// Total homology of the `(b, B)` bicomplex for `n ≤ n_report`.
pub fn bicomplex_total_homology(win: &CyclicQuotientWindow, n_report: usize) -> Result<HCTable> {
    if n_report + 1 > win.n_max {
        return Err(Error::InsufficientWindow(format!(
            "total degree {n_report} needs the quotient through degree {}, built through {}",
            n_report + 1,
            win.n_max
        )));
    }
    let mut table = HCTable::default();
    for w in &win.weights {
        for n in 0..=n_report {
            let tot = homology_quotient(&win.total_differential(n, w), &win.total_differential(n + 1, w))?;
            table.hc.insert((n, w.clone()), tot.betti);
            let col = homology_quotient(&win.b_or_zero(n, w), &win.b_or_zero(n + 1, w))?;
            table.columns.insert((n, w.clone()), col.betti);
        }
    }
    Ok(table)
}
