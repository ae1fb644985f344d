//! Windowed Hochschild chain and cochain complexes.
//!
//! Chains live in `M ⊗ A^{⊗n}`, indexed by tuples `(m, a₁, …, aₙ)` of basis
//! indices; cochains are weight-homogeneous maps `A^{⊗n} → N` restricted to
//! inputs inside an input window. Everything is block diagonal by weight.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{Bimodule, GradedAlgebra, Weight, Window};
use crate::error::{Error, Result};
use crate::exactla::{add_entry, homology_quotient, to_dense, HomologyPresentation, MatrixQ, Rational, SparseVec};

/// Basis indices of a pure tensor.
pub type Tuple = Vec<usize>;

/// A chain as a finite combination of pure tensors.
pub type SparseChain = BTreeMap<Tuple, Rational>;

fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Enumerates tuples `(first, a₁, …, aₙ)` whose total weight lies in `window`.
fn enumerate_tuples(
    first: &[(usize, Weight)],
    slots: &[(usize, Weight)],
    n: usize,
    window: &Window,
    prune: bool,
) -> Vec<(Tuple, Weight)> {
    let mut out = Vec::new();
    let exceeds = |w: &Weight| w.0.iter().zip(&window.hi).any(|(x, h)| h.is_some_and(|h| *x > h));
    fn rec(
        slots: &[(usize, Weight)],
        left: usize,
        tuple: &mut Tuple,
        weight: Weight,
        window: &Window,
        prune: bool,
        exceeds: &dyn Fn(&Weight) -> bool,
        out: &mut Vec<(Tuple, Weight)>,
    ) {
        if prune && exceeds(&weight) {
            return;
        }
        if left == 0 {
            if window.contains(&weight) {
                out.push((tuple.clone(), weight));
            }
            return;
        }
        for (i, w) in slots {
            tuple.push(*i);
            rec(slots, left - 1, tuple, weight.add(w), window, prune, exceeds, out);
            tuple.pop();
        }
    }
    for (m, w) in first {
        let mut t = vec![*m];
        rec(slots, n, &mut t, w.clone(), window, prune, &exceeds, &mut out);
    }
    out
}

/// Basis of one chain degree, grouped by weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSpace {
    tuples: Vec<Tuple>,
    weights: Vec<Weight>,
    index: BTreeMap<Tuple, usize>,
    by_weight: BTreeMap<Weight, Vec<usize>>,
}

impl ChainSpace {
    /// `M ⊗ A^{⊗n}` restricted to `window`; `skip` drops a basis element (the unit) from the `A` slots.
    pub fn enumerate(alg: &GradedAlgebra, module: &Bimodule, n: usize, window: &Window, skip: Option<usize>) -> Self {
        let first: Vec<_> = (0..module.dim()).map(|m| (m, module.weight(m).clone())).collect();
        let slots: Vec<_> = (0..alg.dim()).filter(|&i| Some(i) != skip).map(|i| (i, alg.weight(i).clone())).collect();
        let prune = alg.has_nonnegative_weights() && module.has_nonnegative_weights();
        Self::from_tuples(enumerate_tuples(&first, &slots, n, window, prune))
    }

    fn from_tuples(list: Vec<(Tuple, Weight)>) -> Self {
        let mut space = ChainSpace { tuples: Vec::new(), weights: Vec::new(), index: BTreeMap::new(), by_weight: BTreeMap::new() };
        for (k, (t, w)) in list.into_iter().enumerate() {
            space.index.insert(t.clone(), k);
            space.by_weight.entry(w.clone()).or_default().push(k);
            space.tuples.push(t);
            space.weights.push(w);
        }
        space
    }

    pub fn dim(&self) -> usize {
        self.tuples.len()
    }

    pub fn tuple(&self, k: usize) -> &[usize] {
        &self.tuples[k]
    }

    pub fn tuples(&self) -> &[Tuple] {
        &self.tuples
    }

    pub fn weight(&self, k: usize) -> &Weight {
        &self.weights[k]
    }

    pub fn index_of(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn indices_of_weight(&self, w: &Weight) -> &[usize] {
        self.by_weight.get(w).map_or(&[], Vec::as_slice)
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.by_weight.keys()
    }

    /// Coordinates of a chain; tuples containing `skip` in an algebra slot vanish.
    pub fn vector_of(&self, chain: &SparseChain, alg: &GradedAlgebra, skip: Option<usize>) -> Result<SparseVec> {
        let mut acc = BTreeMap::new();
        for (t, c) in chain {
            match self.index_of(t) {
                Some(k) => add_entry(&mut acc, k, c.clone()),
                None if skip.is_some() && t[1..].contains(&skip.unwrap_or(usize::MAX)) => {}
                None => return Err(Error::OutOfWindow(tuple_weight_alg(alg, t))),
            }
        }
        Ok(acc.into_iter().collect())
    }

    pub fn chain_of(&self, v: &[(usize, Rational)]) -> SparseChain {
        v.iter().map(|(k, c)| (self.tuples[*k].clone(), c.clone())).collect()
    }
}

/// Weight of the algebra part of a tuple (the first slot is not included).
fn tuple_weight_alg(alg: &GradedAlgebra, t: &[usize]) -> Weight {
    t.iter().skip(1).fold(Weight::zero(alg.grading_rank()), |w, &i| w.add(alg.weight(i)))
}

/// Weight of a chain tuple.
pub fn chain_weight(alg: &GradedAlgebra, module: &Bimodule, t: &[usize]) -> Weight {
    t[1..].iter().fold(module.weight(t[0]).clone(), |w, &i| w.add(alg.weight(i)))
}

/// `b(m ⊗ a₁ ⊗ ⋯ ⊗ aₙ) = m◂a₁ ⊗ ⋯ + Σ (−1)ⁱ m ⊗ ⋯ aᵢaᵢ₊₁ ⋯ + (−1)ⁿ aₙ▸m ⊗ a₁ ⊗ ⋯ ⊗ aₙ₋₁`.
pub fn boundary_of_tuple(alg: &GradedAlgebra, module: &Bimodule, t: &[usize]) -> Result<SparseChain> {
    let n = t.len() - 1;
    let mut out = SparseChain::new();
    if n == 0 {
        return Ok(out);
    }
    let m = t[0];
    for (mm, c) in module.right_act(m, t[1], alg.weight(t[1]))? {
        let mut u = vec![*mm];
        u.extend_from_slice(&t[2..]);
        add_entry(&mut out, u, c.clone());
    }
    for i in 1..n {
        for (k, c) in alg.product(t[i], t[i + 1])? {
            let mut u = t[..i].to_vec();
            u.push(*k);
            u.extend_from_slice(&t[i + 2..]);
            add_entry(&mut out, u, sign(i) * c);
        }
    }
    for (mm, c) in module.left_act(t[n], m, alg.weight(t[n]))? {
        let mut u = vec![*mm];
        u.extend_from_slice(&t[1..n]);
        add_entry(&mut out, u, sign(n) * c);
    }
    Ok(out)
}

/// Applies a tuple-level operator to a chain.
pub fn apply_to_chain(chain: &SparseChain, op: impl Fn(&[usize]) -> Result<SparseChain>) -> Result<SparseChain> {
    let mut out = SparseChain::new();
    for (t, c) in chain {
        for (u, d) in op(t)? {
            add_entry(&mut out, u, c * d);
        }
    }
    Ok(out)
}

/// Homology of one bidegree, together with the chain indices of its block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyBlock {
    pub degree: usize,
    pub weight: Weight,
    /// Indices of the block's basis inside the full degree.
    pub indices: Vec<usize>,
    pub presentation: HomologyPresentation,
}

impl HomologyBlock {
    pub fn betti(&self) -> usize {
        self.presentation.betti
    }

    /// Block vector to full-degree vector.
    pub fn embed(&self, v: &[Rational], full_dim: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); full_dim];
        for (k, &i) in self.indices.iter().enumerate() {
            out[i] = v[k].clone();
        }
        out
    }

    /// Full-degree vector to block vector; entries outside the block are dropped.
    pub fn restrict(&self, v: &[Rational]) -> Vec<Rational> {
        self.indices.iter().map(|&i| v[i].clone()).collect()
    }

    /// Restriction of a sparse full-degree vector; fails if it leaves the block.
    pub fn restrict_sparse(&self, v: &[(usize, Rational)]) -> Result<Vec<Rational>> {
        let pos: BTreeMap<usize, usize> = self.indices.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut out = vec![Rational::zero(); self.indices.len()];
        for (i, c) in v {
            let k = pos.get(i).ok_or_else(|| Error::DegreeMismatch(format!("vector is not homogeneous of weight {}", self.weight)))?;
            out[*k] = c.clone();
        }
        Ok(out)
    }

    pub fn representatives(&self) -> &[Vec<Rational>] {
        &self.presentation.representative_cycles
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiEntry {
    pub betti: usize,
    /// Cycles (in full-degree coordinates) whose classes form a basis.
    pub representatives: Vec<Vec<Rational>>,
}

/// Betti numbers by `(degree, weight)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, Weight), BettiEntry>,
}

impl BettiTable {
    pub fn betti(&self, n: usize, w: &Weight) -> Option<usize> {
        self.entries.get(&(n, w.clone())).map(|e| e.betti)
    }

    pub fn dims(&self) -> BTreeMap<(usize, Weight), usize> {
        self.entries.iter().map(|(k, e)| (k.clone(), e.betti)).collect()
    }
}

/// `C₀ … C_{n_max+1}` of `C(A, M)` on a weight window, with boundaries.
#[derive(Clone, Debug)]
pub struct ChainWindow {
    algebra: GradedAlgebra,
    module: Bimodule,
    window: Window,
    n_max: usize,
    normalized: bool,
    spaces: Vec<ChainSpace>,
    boundaries: Vec<MatrixQ>,
}

/// Builds the (optionally normalized) Hochschild chain complex up to degree `n_max + 1`,
/// so that homology is available in degrees `0..=n_max`.
pub fn build_chain_window(
    alg: &GradedAlgebra,
    module: &Bimodule,
    n_max: usize,
    window: &Window,
    normalized: bool,
) -> Result<ChainWindow> {
    if module.algebra_dim() != alg.dim() {
        return Err(Error::DimensionMismatch("coefficients are over another algebra".into()));
    }
    if window.rank() != alg.grading_rank() {
        return Err(Error::DimensionMismatch(format!("window rank {} for grading rank {}", window.rank(), alg.grading_rank())));
    }
    let skip = if normalized {
        if !alg.is_connected() {
            return Err(Error::Invalid("the normalized complex needs a connected algebra".into()));
        }
        alg.unit_index()
    } else {
        None
    };
    let spaces: Vec<ChainSpace> = (0..=n_max + 1).map(|n| ChainSpace::enumerate(alg, module, n, window, skip)).collect();
    let mut boundaries = vec![MatrixQ::zeros(0, spaces[0].dim())];
    for n in 1..=n_max + 1 {
        let mut cols = Vec::with_capacity(spaces[n].dim());
        for t in spaces[n].tuples() {
            let chain = boundary_of_tuple(alg, module, t)?;
            cols.push(spaces[n - 1].vector_of(&chain, alg, skip)?);
        }
        boundaries.push(MatrixQ::from_sparse_columns(spaces[n - 1].dim(), &cols));
    }
    Ok(ChainWindow { algebra: alg.clone(), module: module.clone(), window: window.clone(), n_max, normalized, spaces, boundaries })
}

impl ChainWindow {
    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    fn skip(&self) -> Option<usize> {
        if self.normalized {
            self.algebra.unit_index()
        } else {
            None
        }
    }

    pub fn space(&self, n: usize) -> &ChainSpace {
        &self.spaces[n]
    }

    /// Highest built degree, `n_max + 1`.
    pub fn top_degree(&self) -> usize {
        self.spaces.len() - 1
    }

    /// `b_n : C_n → C_{n−1}`; `b_0` is the zero map to the zero space.
    pub fn boundary(&self, n: usize) -> &MatrixQ {
        &self.boundaries[n]
    }

    /// Every weight occurring in some built degree, ascending.
    pub fn weights(&self) -> Vec<Weight> {
        let set: BTreeSet<Weight> = self.spaces.iter().flat_map(|s| s.weights().cloned()).collect();
        set.into_iter().collect()
    }

    /// Degree of the first failure of `b_{n} b_{n+1} = 0`, if any.
    pub fn first_nonzero_square(&self) -> Option<usize> {
        (1..self.top_degree()).find(|&n| !(&self.boundaries[n] * &self.boundaries[n + 1]).is_zero())
    }

    /// Whether every entry of every boundary connects equal weights.
    pub fn is_weight_preserving(&self) -> bool {
        (1..=self.top_degree()).all(|n| {
            self.boundaries[n].entries().all(|(r, c, _)| self.spaces[n - 1].weight(r) == self.spaces[n].weight(c))
        })
    }

    /// The weight-`w` block of `b_n`.
    pub fn block(&self, n: usize, w: &Weight) -> MatrixQ {
        let cols = self.spaces[n].indices_of_weight(w);
        if n == 0 {
            return MatrixQ::zeros(0, cols.len());
        }
        let rows = self.spaces[n - 1].indices_of_weight(w);
        self.boundaries[n].select_rows(rows).select_cols(cols)
    }

    pub fn homology(&self, n: usize, w: &Weight) -> Result<HomologyBlock> {
        if n > self.n_max || !self.window.contains(w) || w.rank() != self.window.rank() {
            return Err(Error::BidegreeOutOfRange(n, w.clone()));
        }
        let presentation = homology_quotient(&self.block(n, w), &self.block(n + 1, w))?;
        Ok(HomologyBlock { degree: n, weight: w.clone(), indices: self.spaces[n].indices_of_weight(w).to_vec(), presentation })
    }

    /// Verified cycles forming a basis of `H_{n,w}`, each with its class coordinates.
    pub fn homology_reps(&self, n: usize, w: &Weight) -> Result<Vec<(Vec<Rational>, Vec<Rational>)>> {
        let h = self.homology(n, w)?;
        let dim = self.spaces[n].dim();
        h.representatives()
            .iter()
            .map(|z| {
                let coords = h.presentation.coordinates_of(z)?;
                Ok((h.embed(z, dim), coords))
            })
            .collect()
    }

    pub fn betti_table(&self) -> Result<BettiTable> {
        let mut table = BettiTable::default();
        for w in self.weights() {
            for n in 0..=self.n_max {
                let h = self.homology(n, &w)?;
                let dim = self.spaces[n].dim();
                let representatives = h.representatives().iter().map(|z| h.embed(z, dim)).collect();
                table.entries.insert((n, w.clone()), BettiEntry { betti: h.betti(), representatives });
            }
        }
        Ok(table)
    }

    /// Coordinates of a chain of degree `n` (tuples of length `n + 1`).
    pub fn vector_of(&self, n: usize, chain: &SparseChain) -> Result<Vec<Rational>> {
        if let Some(t) = chain.keys().find(|t| t.len() != n + 1) {
            return Err(Error::DegreeMismatch(format!("tuple of length {} in degree {n}", t.len())));
        }
        let v = self.spaces[n].vector_of(chain, &self.algebra, self.skip())?;
        Ok(to_dense(&v, self.spaces[n].dim()))
    }

    pub fn chain_of(&self, n: usize, v: &[Rational]) -> SparseChain {
        self.spaces[n]
            .tuples()
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| (t.clone(), c.clone()))
            .collect()
    }

    /// Weight of a nonzero homogeneous chain.
    pub fn chain_weight(&self, chain: &SparseChain) -> Option<Weight> {
        let mut ws = chain.keys().map(|t| chain_weight(&self.algebra, &self.module, t));
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }
}

// ---------------------------------------------------------------------------
// Cochains
// ---------------------------------------------------------------------------

/// Input tuples `(a₁, …, aₙ)` of one cochain degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputSpace {
    tuples: Vec<Tuple>,
    weights: Vec<Weight>,
    index: BTreeMap<Tuple, usize>,
}

impl InputSpace {
    pub fn enumerate(alg: &GradedAlgebra, n: usize, window: &Window, skip: Option<usize>) -> Self {
        let slots: Vec<_> = (0..alg.dim()).filter(|&i| Some(i) != skip).map(|i| (i, alg.weight(i).clone())).collect();
        // a dummy first slot of weight zero, stripped afterwards
        let first = [(0, Weight::zero(alg.grading_rank()))];
        let list = enumerate_tuples(&first, &slots, n, window, alg.has_nonnegative_weights());
        let mut space = InputSpace { tuples: Vec::new(), weights: Vec::new(), index: BTreeMap::new() };
        for (k, (t, w)) in list.into_iter().enumerate() {
            let t = t[1..].to_vec();
            space.index.insert(t.clone(), k);
            space.tuples.push(t);
            space.weights.push(w);
        }
        space
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuple(&self, k: usize) -> &[usize] {
        &self.tuples[k]
    }

    pub fn weight(&self, k: usize) -> &Weight {
        &self.weights[k]
    }

    pub fn index_of(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }
}

/// Basis of `C^n(A, N)` at one internal weight: pairs `(input, output)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainBasis {
    pub degree: usize,
    pub shift: Weight,
    pairs: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
    by_input: BTreeMap<usize, Vec<(usize, usize)>>,
}

impl CochainBasis {
    pub fn enumerate(inputs: &InputSpace, module: &Bimodule, degree: usize, shift: &Weight) -> Self {
        let mut out_by_weight: BTreeMap<&Weight, Vec<usize>> = BTreeMap::new();
        for o in 0..module.dim() {
            out_by_weight.entry(module.weight(o)).or_default().push(o);
        }
        let mut basis = CochainBasis {
            degree,
            shift: shift.clone(),
            pairs: Vec::new(),
            index: BTreeMap::new(),
            by_input: BTreeMap::new(),
        };
        for t in 0..inputs.len() {
            let target = inputs.weight(t).add(shift);
            for &o in out_by_weight.get(&target).map_or(&[][..], Vec::as_slice) {
                let k = basis.pairs.len();
                basis.pairs.push((t, o));
                basis.index.insert((t, o), k);
                basis.by_input.entry(t).or_default().push((o, k));
            }
        }
        basis
    }

    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    /// `(input index, output index)` of the `k`-th basis cochain.
    pub fn pair(&self, k: usize) -> (usize, usize) {
        self.pairs[k]
    }

    pub fn index_of(&self, input: usize, output: usize) -> Option<usize> {
        self.index.get(&(input, output)).copied()
    }

    /// Outputs (and basis positions) attached to an input tuple.
    pub fn outputs(&self, input: usize) -> &[(usize, usize)] {
        self.by_input.get(&input).map_or(&[], Vec::as_slice)
    }
}

/// Cochain complex `C^•(A, N)` on an input window, per internal weight.
#[derive(Clone, Debug)]
pub struct CochainWindow {
    algebra: GradedAlgebra,
    module: Bimodule,
    n_max: usize,
    input_window: Window,
    shifts: Vec<Weight>,
    normalized: bool,
    inputs: Vec<InputSpace>,
    spaces: BTreeMap<(usize, Weight), CochainBasis>,
    coboundaries: BTreeMap<(usize, Weight), MatrixQ>,
}

fn too_small<T>(r: Result<T>, what: impl FnOnce() -> alloc::string::String) -> Result<T> {
    r.map_err(|e| match e {
        Error::OutOfWindow(w) => Error::WindowTooSmall(format!("{} needs weight {w}", what())),
        other => other,
    })
}

/// Builds cochain degrees `0..=n_max + 1` (cohomology in `0..=n_max`) on inputs
/// of weight inside `input_window`, for each internal weight in `shifts`.
pub fn build_cochain_window(
    alg: &GradedAlgebra,
    module: &Bimodule,
    n_max: usize,
    input_window: &Window,
    shifts: &[Weight],
    normalized: bool,
) -> Result<CochainWindow> {
    if module.algebra_dim() != alg.dim() {
        return Err(Error::DimensionMismatch("coefficients are over another algebra".into()));
    }
    let skip = if normalized {
        if !alg.is_connected() {
            return Err(Error::Invalid("normalized cochains need a connected algebra".into()));
        }
        alg.unit_index()
    } else {
        None
    };
    let inputs: Vec<InputSpace> = (0..=n_max + 1).map(|n| InputSpace::enumerate(alg, n, input_window, skip)).collect();
    let mut spaces = BTreeMap::new();
    for s in shifts {
        for (n, inp) in inputs.iter().enumerate() {
            spaces.insert((n, s.clone()), CochainBasis::enumerate(inp, module, n, s));
        }
    }
    let mut win = CochainWindow {
        algebra: alg.clone(),
        module: module.clone(),
        n_max,
        input_window: input_window.clone(),
        shifts: shifts.to_vec(),
        normalized,
        inputs,
        spaces,
        coboundaries: BTreeMap::new(),
    };
    for s in shifts {
        for n in 0..=n_max {
            let d = win.coboundary_matrix(n, s)?;
            win.coboundaries.insert((n, s.clone()), d);
        }
    }
    Ok(win)
}

impl CochainWindow {
    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn shifts(&self) -> &[Weight] {
        &self.shifts
    }

    pub fn input_window(&self) -> &Window {
        &self.input_window
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn unit_skip(&self) -> Option<usize> {
        if self.normalized {
            self.algebra.unit_index()
        } else {
            None
        }
    }

    pub fn inputs(&self, n: usize) -> &InputSpace {
        &self.inputs[n]
    }

    pub fn basis(&self, n: usize, s: &Weight) -> Result<&CochainBasis> {
        self.spaces.get(&(n, s.clone())).ok_or_else(|| Error::BidegreeOutOfRange(n, s.clone()))
    }

    /// `δⁿ : Cⁿ_s → Cⁿ⁺¹_s` for `n ≤ n_max`.
    pub fn coboundary(&self, n: usize, s: &Weight) -> Result<&MatrixQ> {
        self.coboundaries.get(&(n, s.clone())).ok_or_else(|| Error::BidegreeOutOfRange(n, s.clone()))
    }

    fn coboundary_matrix(&self, n: usize, s: &Weight) -> Result<MatrixQ> {
        let alg = &self.algebra;
        let module = &self.module;
        let src = self.basis(n, s)?;
        let dst = self.basis(n + 1, s)?;
        let skip = self.unit_skip();
        let inputs = &self.inputs[n];
        let mut triplets = Vec::new();
        for tau_idx in 0..self.inputs[n + 1].len() {
            let tau = self.inputs[n + 1].tuple(tau_idx);
            let row = |o: usize| {
                dst.index_of(tau_idx, o)
                    .ok_or_else(|| Error::WindowTooSmall(format!("output {} is outside the cochain basis", module.label(o))))
            };
            // a₁ ▸ f(a₂, …)
            if let Some(t) = inputs.index_of(&tau[1..]) {
                for &(o, col) in src.outputs(t) {
                    let v = too_small(module.left_act(tau[0], o, alg.weight(tau[0])).cloned(), || {
                        format!("{} ▸ {}", alg.id(tau[0]), module.label(o))
                    })?;
                    for (o2, c) in v {
                        triplets.push((row(o2)?, col, c));
                    }
                }
            }
            // Σ (−1)ⁱ f(…, aᵢaᵢ₊₁, …)
            for i in 1..=n {
                let prod = too_small(alg.product(tau[i - 1], tau[i]).cloned(), || {
                    format!("{} * {}", alg.id(tau[i - 1]), alg.id(tau[i]))
                })?;
                for (k, c) in prod {
                    if Some(k) == skip {
                        continue;
                    }
                    let mut t = tau[..i - 1].to_vec();
                    t.push(k);
                    t.extend_from_slice(&tau[i + 1..]);
                    let Some(t) = inputs.index_of(&t) else {
                        return Err(Error::WindowTooSmall(format!("input tuple {t:?} missing")));
                    };
                    for &(o, col) in src.outputs(t) {
                        triplets.push((row(o)?, col, sign(i) * &c));
                    }
                }
            }
            // (−1)ⁿ⁺¹ f(a₁, …, aₙ) ◂ aₙ₊₁
            if let Some(t) = inputs.index_of(&tau[..n]) {
                for &(o, col) in src.outputs(t) {
                    let v = too_small(module.right_act(o, tau[n], alg.weight(tau[n])).cloned(), || {
                        format!("{} ◂ {}", module.label(o), alg.id(tau[n]))
                    })?;
                    for (o2, c) in v {
                        triplets.push((row(o2)?, col, sign(n + 1) * c));
                    }
                }
            }
        }
        Ok(MatrixQ::from_triplets(dst.dim(), src.dim(), triplets))
    }

    /// First `(n, s)` where `δⁿ⁺¹ δⁿ ≠ 0`, if any.
    pub fn first_nonzero_square(&self) -> Option<(usize, Weight)> {
        for s in &self.shifts {
            for n in 0..self.n_max {
                let (a, b) = (&self.coboundaries[&(n + 1, s.clone())], &self.coboundaries[&(n, s.clone())]);
                if !(a * b).is_zero() {
                    return Some((n, s.clone()));
                }
            }
        }
        None
    }

    /// `Hⁿ(A, N)_s`, as a homology block whose indices are cochain basis positions.
    pub fn cohomology(&self, n: usize, s: &Weight) -> Result<HomologyBlock> {
        if n > self.n_max {
            return Err(Error::BidegreeOutOfRange(n, s.clone()));
        }
        let out = self.coboundary(n, s)?;
        let inc = if n == 0 { MatrixQ::zeros(self.basis(0, s)?.dim(), 0) } else { self.coboundary(n - 1, s)?.clone() };
        let presentation = homology_quotient(out, &inc)?;
        Ok(HomologyBlock { degree: n, weight: s.clone(), indices: (0..self.basis(n, s)?.dim()).collect(), presentation })
    }

    pub fn betti_table(&self) -> Result<BettiTable> {
        let mut table = BettiTable::default();
        for n in 0..=self.n_max {
            for s in &self.shifts {
                let h = self.cohomology(n, s)?;
                table.entries.insert(
                    (n, s.clone()),
                    BettiEntry { betti: h.betti(), representatives: h.representatives().to_vec() },
                );
            }
        }
        Ok(table)
    }

    /// The cochain with coordinates `v` in the `(n, s)` basis.
    pub fn cochain(&self, n: usize, s: &Weight, v: &[Rational]) -> Result<Cochain> {
        let basis = self.basis(n, s)?;
        if v.len() != basis.dim() {
            return Err(Error::DimensionMismatch(format!("{} coordinates for a {}-dimensional cochain space", v.len(), basis.dim())));
        }
        let mut values: BTreeMap<Tuple, BTreeMap<usize, Rational>> = BTreeMap::new();
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (t, o) = basis.pair(k);
            add_entry(values.entry(self.inputs[n].tuple(t).to_vec()).or_default(), o, c.clone());
        }
        Ok(Cochain {
            degree: n,
            shift: s.clone(),
            input_window: self.input_window.clone(),
            skip: self.unit_skip(),
            values: values.into_iter().map(|(t, m)| (t, m.into_iter().collect())).collect(),
        })
    }

    /// Coordinates of a cochain in the `(n, s)` basis.
    pub fn vector_of(&self, f: &Cochain) -> Result<Vec<Rational>> {
        let basis = self.basis(f.degree, &f.shift)?;
        let mut out = vec![Rational::zero(); basis.dim()];
        let inputs = &self.inputs[f.degree];
        for t in 0..inputs.len() {
            for (o, c) in f.evaluate(inputs.tuple(t))? {
                let k = basis.index_of(t, o).ok_or_else(|| {
                    Error::DegreeMismatch(format!("value {} on {:?} has the wrong weight", self.module.label(o), inputs.tuple(t)))
                })?;
                out[k] = c;
            }
        }
        Ok(out)
    }

    /// Builds a cochain of degree `n` and shift `s` by evaluating `f` on every input tuple.
    pub fn cochain_from_fn(&self, n: usize, s: &Weight, f: impl Fn(&[usize]) -> Result<SparseVec>) -> Result<Cochain> {
        let mut values = BTreeMap::new();
        for t in self.inputs[n].tuples.iter() {
            let v = f(t)?;
            if !v.is_empty() {
                values.insert(t.clone(), v);
            }
        }
        Ok(Cochain { degree: n, shift: s.clone(), input_window: self.input_window.clone(), skip: self.unit_skip(), values })
    }
}

/// A homogeneous multilinear map `A^{⊗n} → N` known on an input window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub shift: Weight,
    input_window: Window,
    skip: Option<usize>,
    values: BTreeMap<Tuple, SparseVec>,
}

impl Cochain {
    /// Value on a tuple of basis elements (as coordinates in `N`).
    pub fn evaluate(&self, t: &[usize]) -> Result<SparseVec> {
        if t.len() != self.degree {
            return Err(Error::DegreeMismatch(format!("{}-cochain evaluated on {} inputs", self.degree, t.len())));
        }
        if self.skip.is_some_and(|u| t.contains(&u)) {
            return Ok(Vec::new());
        }
        Ok(self.values.get(t).cloned().unwrap_or_default())
    }

    /// Like [`evaluate`](Self::evaluate) but checks the tuple's weight is in the input window.
    pub fn evaluate_checked(&self, alg: &GradedAlgebra, t: &[usize]) -> Result<SparseVec> {
        let w = t.iter().fold(Weight::zero(alg.grading_rank()), |w, &i| w.add(alg.weight(i)));
        if !self.input_window.contains(&w) {
            return Err(Error::WindowTooSmall(format!("cochain evaluated on input of weight {w}")));
        }
        self.evaluate(t)
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|v| v.is_empty())
    }

    pub fn input_window(&self) -> &Window {
        &self.input_window
    }

    pub fn unit_skip(&self) -> Option<usize> {
        self.skip
    }

    pub(crate) fn from_parts(
        degree: usize,
        shift: Weight,
        input_window: Window,
        skip: Option<usize>,
        values: BTreeMap<Tuple, SparseVec>,
    ) -> Self {
        let values = values.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        Cochain { degree, shift, input_window, skip, values }
    }

    pub fn support(&self) -> impl Iterator<Item = (&Tuple, &SparseVec)> {
        self.values.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Automorphism;
    use crate::builtin::{build, poly1, Family};
    use crate::exactla::rat;

    fn w(x: i64) -> Weight {
        Weight(vec![x])
    }

    #[test]
    fn ground_field_complex() {
        let (k, _) = build(&Family::Ground, None).unwrap();
        let m = Bimodule::regular(&k);
        let c = build_chain_window(&k, &m, 4, &Window::upto(&[0]), false).unwrap();
        for n in 1..=5 {
            let expected = if n % 2 == 0 { rat(1) } else { rat(0) };
            assert_eq!(c.boundary(n).get(0, 0), expected, "b_{n}");
        }
        let t = c.betti_table().unwrap();
        assert_eq!(t.betti(0, &w(0)), Some(1));
        for n in 1..=4 {
            assert_eq!(t.betti(n, &w(0)), Some(0));
        }
    }

    #[test]
    fn twisted_boundary_of_one_tensor_y() {
        let (a, sigma) = poly1(2, 4);
        let id = Automorphism::identity(&a);
        let m = Bimodule::twisted(&a, &sigma, &id);
        let b = boundary_of_tuple(&a, &m, &[0, 1]).unwrap();
        assert_eq!(b, SparseChain::from([(vec![1], rat(-1))]));
        assert!(boundary_of_tuple(&a, &m, &[1, 0]).unwrap().is_empty());
    }

    #[test]
    fn polynomial_betti_numbers() {
        let (a, sigma) = poly1(1, 4);
        let reg = Bimodule::regular(&a);
        for normalized in [false, true] {
            let c = build_chain_window(&a, &reg, 2, &Window::upto(&[4]), normalized).unwrap();
            assert_eq!(c.first_nonzero_square(), None);
            assert!(c.is_weight_preserving());
            let t = c.betti_table().unwrap();
            for x in 0..=4 {
                assert_eq!(t.betti(0, &w(x)), Some(1));
                assert_eq!(t.betti(1, &w(x)), Some(usize::from(x >= 1)));
                assert_eq!(t.betti(2, &w(x)), Some(0));
            }
        }
        let reps = build_chain_window(&a, &reg, 1, &Window::upto(&[4]), false).unwrap().homology_reps(1, &w(1)).unwrap();
        assert_eq!(reps.len(), 1);
        let _ = sigma;
    }

    #[test]
    fn dimension_drop_with_twist() {
        let (a, sigma) = poly1(2, 4);
        let id = Automorphism::identity(&a);
        let m = Bimodule::twisted(&a, &sigma, &id);
        let c = build_chain_window(&a, &m, 2, &Window::upto(&[4]), false).unwrap();
        let t = c.betti_table().unwrap();
        assert_eq!(t.betti(0, &w(0)), Some(1));
        for x in 1..=4 {
            assert_eq!(t.betti(0, &w(x)), Some(0));
            assert_eq!(t.betti(1, &w(x)), Some(0));
        }
    }

    #[test]
    fn out_of_range_bidegrees() {
        let (a, _) = poly1(1, 3);
        let c = build_chain_window(&a, &Bimodule::regular(&a), 1, &Window::upto(&[3]), true).unwrap();
        assert!(matches!(c.homology(2, &w(1)), Err(Error::BidegreeOutOfRange(2, _))));
        assert!(matches!(c.homology(0, &w(5)), Err(Error::BidegreeOutOfRange(0, _))));
        assert!(c.homology_reps(1, &w(0)).unwrap().is_empty());
    }

    #[test]
    fn polynomial_cohomology() {
        let (a, _) = poly1(1, 8);
        let reg = Bimodule::regular(&a);
        let shifts: Vec<_> = (-2..=3).map(w).collect();
        let c = build_cochain_window(&a, &reg, 2, &Window::upto(&[3]), &shifts, true).unwrap();
        assert_eq!(c.first_nonzero_square(), None);
        let t = c.betti_table().unwrap();
        for s in -2..=3 {
            assert_eq!(t.betti(0, &w(s)), Some(usize::from(s >= 0)), "H0 at {s}");
            assert_eq!(t.betti(1, &w(s)), Some(usize::from(s >= -1)), "H1 at {s}");
            assert_eq!(t.betti(2, &w(s)), Some(0), "H2 at {s}");
        }
    }

    #[test]
    fn cochain_round_trip() {
        let (a, _) = poly1(1, 6);
        let reg = Bimodule::regular(&a);
        let c = build_cochain_window(&a, &reg, 1, &Window::upto(&[2]), &[w(0)], false).unwrap();
        let dim = c.basis(1, &w(0)).unwrap().dim();
        let v: Vec<Rational> = (0..dim as i64).map(rat).collect();
        let f = c.cochain(1, &w(0), &v).unwrap();
        assert_eq!(c.vector_of(&f).unwrap(), v);
        let zero = c.cochain(1, &w(0), &vec![Rational::zero(); dim]).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn too_small_window_is_reported() {
        let (a, _) = poly1(1, 3);
        let reg = Bimodule::regular(&a);
        let err = build_cochain_window(&a, &reg, 1, &Window::upto(&[3]), &[w(1)], false).unwrap_err();
        assert!(matches!(err, Error::WindowTooSmall(_)), "{err:?}");
    }
}
