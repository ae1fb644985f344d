//! Cup and cap products and the duality probes built on them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{tensor_over, Automorphism, Bimodule, GradedAlgebra, TensorOverA, Weight, Window};
use crate::error::{Error, Result};
use crate::exactla::{accumulate, add_entry, rank, to_dense, MatrixQ, Rational, SparseVec};
use crate::hochschild::{
    boundary_of_tuple, build_chain_window, build_cochain_window, apply_to_chain, ChainWindow, Cochain, CochainWindow,
    InputSpace, SparseChain,
};

fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn window_error(e: Error) -> Error {
    match e {
        Error::OutOfWindow(w) => Error::WindowTooSmall(format!("product needs weight {w}")),
        other => other,
    }
}

/// `(f ∪ g)(a₁, …, aₙ₊ₘ) = (−1)^{mn} f(a₁, …, aₙ) g(aₙ₊₁, …, aₙ₊ₘ)` for `A`-valued cochains.
pub fn cup(alg: &GradedAlgebra, f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let (n, m) = (f.degree, g.degree);
    let window = f.input_window().intersect(g.input_window());
    let skip = f.unit_skip().or(g.unit_skip());
    let inputs = InputSpace::enumerate(alg, n + m, &window, skip);
    let sgn = sign(m * n);
    let mut values = BTreeMap::new();
    for k in 0..inputs.len() {
        let t = inputs.tuple(k);
        let left = f.evaluate(&t[..n])?;
        let right = g.evaluate(&t[n..])?;
        if left.is_empty() || right.is_empty() {
            continue;
        }
        let prod = alg.multiply_sparse(&left, &right).map_err(window_error)?;
        values.insert(t.to_vec(), prod.into_iter().map(|(i, c)| (i, &sgn * c)).collect::<SparseVec>());
    }
    Ok(Cochain::from_parts(n + m, f.shift.add(&g.shift), window, skip, values))
}

/// Degree of a homogeneous chain given by tuples `(m, a₁, …, a_p)`.
fn chain_degree(z: &SparseChain) -> Result<Option<usize>> {
    let mut lens = z.keys().map(|t| t.len() - 1);
    let Some(p) = lens.next() else { return Ok(None) };
    if lens.any(|q| q != p) {
        return Err(Error::DegreeMismatch("chain mixes degrees".into()));
    }
    Ok(Some(p))
}

/// `z ∩ f = (−1)^{pn} m ⊗_A f(a₁, …, aₙ) ⊗ aₙ₊₁ ⊗ ⋯ ⊗ a_p`, landing in `C_{p−n}(A, M ⊗_A N)`.
pub fn cap(alg: &GradedAlgebra, z: &SparseChain, f: &Cochain, tensor: &TensorOverA) -> Result<SparseChain> {
    let n = f.degree;
    let Some(p) = chain_degree(z)? else { return Ok(SparseChain::new()) };
    if n > p {
        return Err(Error::DegreeMismatch(format!("cap of a {p}-chain with a {n}-cochain")));
    }
    let sgn = sign(p * n);
    let mut out = SparseChain::new();
    for (t, c) in z {
        let coef = &sgn * c;
        for (o, v) in f.evaluate_checked(alg, &t[1..=n])? {
            for (k, d) in tensor.project(t[0], o)? {
                let mut u = vec![*k];
                u.extend_from_slice(&t[n + 1..]);
                add_entry(&mut out, u, &coef * &v * d);
            }
        }
    }
    Ok(out)
}

/// Cap with an `A`-valued cochain, identified through `M ⊗_A A ≅ M` (`m ⊗ a ↦ m ◂ a`).
pub fn cap_regular(alg: &GradedAlgebra, module: &Bimodule, z: &SparseChain, f: &Cochain) -> Result<SparseChain> {
    let n = f.degree;
    let Some(p) = chain_degree(z)? else { return Ok(SparseChain::new()) };
    if n > p {
        return Err(Error::DegreeMismatch(format!("cap of a {p}-chain with a {n}-cochain")));
    }
    let sgn = sign(p * n);
    let mut out = SparseChain::new();
    for (t, c) in z {
        let value = f.evaluate_checked(alg, &t[1..=n])?;
        if value.is_empty() {
            continue;
        }
        let moved = module.right_apply(alg, &[(t[0], Rational::one())], &value).map_err(window_error)?;
        for (m, d) in moved {
            let mut u = vec![m];
            u.extend_from_slice(&t[n + 1..]);
            add_entry(&mut out, u, &sgn * c * d);
        }
    }
    Ok(out)
}

/// Result of capping a homology class with a cohomology class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapClass {
    pub degree: usize,
    pub weight: Weight,
    /// Coordinates in the homology basis of the target bidegree.
    pub coordinates: Vec<Rational>,
}

/// Class of `z ∩ f` in `H_{p−n}(A, M)` for a `p`-cycle `z` and an `A`-valued `n`-cocycle `f` at internal weight `s`.
pub fn cap_on_homology(
    chains: &ChainWindow,
    cochains: &CochainWindow,
    p: usize,
    z: &[Rational],
    n: usize,
    s: &Weight,
    f: &[Rational],
) -> Result<CapClass> {
    let alg = chains.algebra();
    if !chains.boundary(p).mul_vec(z).iter().all(Zero::is_zero) {
        return Err(Error::NotACycle);
    }
    if n <= cochains.n_max() && !cochains.coboundary(n, s)?.mul_vec(f).iter().all(Zero::is_zero) {
        return Err(Error::NotACocycle);
    }
    let z_chain = chains.chain_of(p, z);
    let f_cochain = cochains.cochain(n, s, f)?;
    let capped = cap_regular(alg, chains.module(), &z_chain, &f_cochain)?;
    let q = p.checked_sub(n).ok_or_else(|| Error::DegreeMismatch(format!("cap of a {p}-chain with a {n}-cochain")))?;
    let z_weight = chains.chain_weight(&z_chain).unwrap_or_else(|| Weight::zero(alg.grading_rank()));
    let weight = z_weight.add(s);
    if capped.is_empty() {
        let h = chains.homology(q, &weight)?;
        return Ok(CapClass { degree: q, weight, coordinates: vec![Rational::zero(); h.betti()] });
    }
    let v = chains.vector_of(q, &capped)?;
    let h = chains.homology(q, &weight)?;
    let coordinates = h.presentation.coordinates_of(&h.restrict(&v))?;
    Ok(CapClass { degree: q, weight, coordinates })
}

// ---------------------------------------------------------------------------
// Fundamental class probe
// ---------------------------------------------------------------------------

/// A candidate fundamental chain in `C_d(A, _{σ⁻¹}A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalCycle {
    pub degree: usize,
    pub chain: SparseChain,
    pub is_cycle: bool,
    /// `Some(true)` if `[T_d z] = [z]` was verified, `None` if not checked.
    pub t_invariant_on_homology: Option<bool>,
}

impl FundamentalCycle {
    /// Wraps a chain, recording whether it is a cycle for the coefficients `_{σ⁻¹}A`.
    pub fn new(alg: &GradedAlgebra, sigma: &Automorphism, degree: usize, chain: SparseChain) -> Result<Self> {
        if let Some(t) = chain.keys().find(|t| t.len() != degree + 1) {
            return Err(Error::DegreeMismatch(format!("tuple of length {} in degree {degree}", t.len())));
        }
        let module = Bimodule::twisted(alg, &sigma.inverse(), &Automorphism::identity(alg));
        let b = apply_to_chain(&chain, |t| boundary_of_tuple(alg, &module, t))?;
        let is_cycle = b.values().all(Zero::is_zero);
        Ok(FundamentalCycle { degree, chain, is_cycle, t_invariant_on_homology: None })
    }
}

/// Maps `M ⊗_A (A ⊗ A)` with `M = A` to `A` by `m ⊗ (x ⊗ y) ↦ y m x`.
fn collapse(alg: &GradedAlgebra, tensor: &TensorOverA, pairs: &[(usize, usize)], k: usize) -> Result<SparseVec> {
    let (m, e) = tensor.lift(k);
    let (x, y) = pairs[e];
    let ym = alg.product(y, m).map_err(window_error)?;
    alg.multiply_sparse(ym, &[(x, Rational::one())]).map_err(window_error)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FclassRow {
    pub shift: Weight,
    pub dim_cohomology: usize,
    /// Dimension of the weight of `A` the pairing lands in.
    pub dim_target: usize,
    pub rank: usize,
    pub bijective: bool,
    /// False when the target weight lies outside the algebra's window.
    pub conclusive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FclassReport {
    pub degree: usize,
    pub z_is_cycle: bool,
    /// `z ∩ δg` vanishes in `H₀` for every cochain `g` of degree `d − 1`.
    pub coboundaries_vanish: bool,
    pub rows: Vec<FclassRow>,
}

impl FclassReport {
    /// The pairing is a bijection on every conclusive weight (and there is one).
    pub fn is_fundamental(&self) -> bool {
        let conclusive: Vec<_> = self.rows.iter().filter(|r| r.conclusive).collect();
        self.z_is_cycle && self.coboundaries_vanish && !conclusive.is_empty() && conclusive.iter().all(|r| r.bijective)
    }
}

/// Index pairs of the basis of `A ⊗ A` as used by [`Bimodule::enveloping`].
pub fn enveloping_pairs(alg: &GradedAlgebra) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for x in 0..alg.dim() {
        for y in 0..alg.dim() {
            if alg.window().contains(&alg.weight(x).add(alg.weight(y))) {
                pairs.push((x, y));
            }
        }
    }
    pairs
}

/// Pairs `z` against `H^d(A, A ⊗ A_{σ⁻¹})` by `f ↦ [z ∩ f] ∈ H₀ ≅ A`.
pub fn fclass_probe(
    alg: &GradedAlgebra,
    sigma: &Automorphism,
    z: &FundamentalCycle,
    input_window: &Window,
    shifts: &[Weight],
) -> Result<FclassReport> {
    let d = z.degree;
    let inv = sigma.inverse();
    let m_mod = Bimodule::twisted(alg, &inv, &Automorphism::identity(alg));
    let e_mod = Bimodule::enveloping(alg, Some(&inv));
    let pairs = enveloping_pairs(alg);
    let tensor = tensor_over(alg, &m_mod, &e_mod)?;
    let cochains = build_cochain_window(alg, &e_mod, d, input_window, shifts, alg.is_connected())?;
    let z_weight = z
        .chain
        .keys()
        .next()
        .map(|t| t[1..].iter().fold(alg.weight(t[0]).clone(), |w, &i| w.add(alg.weight(i))));
    let pairing = |f: &Cochain| -> Result<Vec<Rational>> {
        let capped = cap(alg, &z.chain, f, &tensor)?;
        let mut acc = BTreeMap::new();
        for (t, c) in capped {
            accumulate(&mut acc, &c, &collapse(alg, &tensor, &pairs, t[0])?);
        }
        Ok(to_dense(&acc.into_iter().collect::<SparseVec>(), alg.dim()))
    };
    let mut coboundaries_vanish = true;
    let mut rows = Vec::new();
    for s in shifts {
        if d >= 1 {
            let basis = cochains.basis(d - 1, s)?;
            let delta = cochains.coboundary(d - 1, s)?;
            for k in 0..basis.dim() {
                let g = cochains.cochain(d, s, &delta.column(k))?;
                if pairing(&g)?.iter().any(|c| !c.is_zero()) {
                    coboundaries_vanish = false;
                }
            }
        }
        let h = cochains.cohomology(d, s)?;
        let images = h.representatives().iter().map(|f| pairing(&cochains.cochain(d, s, f)?)).collect::<Result<Vec<_>>>()?;
        let (target, conclusive) = match &z_weight {
            Some(w) => {
                let tw = w.add(s);
                let idx = alg.indices_of_weight(&tw).to_vec();
                let inside = alg.window().contains(&tw);
                (idx, inside)
            }
            None => (Vec::new(), true),
        };
        let m = MatrixQ::from_columns(alg.dim(), &images).select_rows(&target);
        let r = rank(&m);
        rows.push(FclassRow {
            shift: s.clone(),
            dim_cohomology: h.betti(),
            dim_target: target.len(),
            rank: r,
            bijective: r == h.betti() && r == target.len(),
            conclusive,
        });
    }
    Ok(FclassReport { degree: d, z_is_cycle: z.is_cycle, coboundaries_vanish, rows })
}

// ---------------------------------------------------------------------------
// Duality probes
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityProbe {
    /// `dim H^i(A, A ⊗ A)_s` by `(i, s)`.
    pub dims: BTreeMap<(usize, Weight), usize>,
    /// The unique degree with nonzero cohomology in the window, if there is one.
    pub concentrated_in: Option<usize>,
}

/// Dimensions of `H^i(A, A^e)` with `A^e = A ⊗ A` carrying the outer actions.
pub fn dualizing_window(alg: &GradedAlgebra, n_max: usize, input_window: &Window, shifts: &[Weight]) -> Result<DualityProbe> {
    let e_mod = Bimodule::enveloping(alg, None);
    let cochains = build_cochain_window(alg, &e_mod, n_max, input_window, shifts, alg.is_connected())?;
    let dims = cochains.betti_table()?.dims();
    let mut degrees: Vec<usize> = dims.iter().filter(|(_, &d)| d > 0).map(|((i, _), _)| *i).collect();
    degrees.dedup();
    let concentrated_in = if degrees.len() == 1 { Some(degrees[0]) } else { None };
    Ok(DualityProbe { dims, concentrated_in })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityTable {
    pub d: usize,
    /// `dim Hⁱ(A, A)_s` by `(i, s)`.
    pub cohomology: BTreeMap<(usize, i64), usize>,
    /// `dim H_j(A, _{σ⁻¹}A)_w` by `(j, w)`.
    pub homology: BTreeMap<(usize, i64), usize>,
    /// Shifts `ℓ` with `dim_s Hⁱ = dim_{s+ℓ} H_{d−i}` on every comparable entry.
    pub matches: Vec<i64>,
    pub scanned: (i64, i64),
}

impl DualityTable {
    /// Homology dimension, zero below weight 0, unknown above the window.
    pub fn homology_dim(&self, j: usize, w: i64) -> Option<usize> {
        if w < 0 {
            return Some(0);
        }
        self.homology.get(&(j, w)).copied()
    }

    /// `(i, s, dim Hⁱ_s, dim H_{d−i, s+ℓ})` for every comparable entry.
    pub fn comparisons(&self, shift: i64) -> Vec<(usize, i64, usize, usize)> {
        self.cohomology
            .iter()
            .filter(|((i, _), _)| *i <= self.d)
            .filter_map(|(&(i, s), &c)| self.homology_dim(self.d - i, s + shift).map(|h| (i, s, c, h)))
            .collect()
    }
}

/// Compares `Hⁱ(A, A)` with `H_{d−i}(A, _{σ⁻¹}A)` up to a weight shift, for gradings of rank one.
pub fn duality_table(
    alg: &GradedAlgebra,
    sigma: &Automorphism,
    d: usize,
    chain_top: i64,
    input_window: &Window,
    s_range: (i64, i64),
) -> Result<DualityTable> {
    if alg.grading_rank() != 1 {
        return Err(Error::BadParams("duality tables need a rank-one grading".into()));
    }
    if !alg.has_nonnegative_weights() {
        return Err(Error::BadParams("duality tables need nonnegative weights".into()));
    }
    let normalized = alg.is_connected();
    let shifts: Vec<Weight> = (s_range.0..=s_range.1).map(|s| Weight(vec![s])).collect();
    let reg = Bimodule::regular(alg);
    let cochains = build_cochain_window(alg, &reg, d, input_window, &shifts, normalized)?;
    let cohomology = cochains.betti_table()?.dims().into_iter().map(|((i, s), v)| ((i, s.0[0]), v)).collect();
    let m = Bimodule::twisted(alg, &sigma.inverse(), &Automorphism::identity(alg));
    let chains = build_chain_window(alg, &m, d, &Window::upto(&[chain_top]), normalized)?;
    let mut homology = BTreeMap::new();
    for j in 0..=d {
        for w in 0..=chain_top {
            homology.insert((j, w), chains.homology(j, &Weight(vec![w]))?.betti());
        }
    }
    let span = 2 * chain_top.max(s_range.1.abs()).max(s_range.0.abs()).max(1);
    let mut table = DualityTable { d, cohomology, homology, matches: Vec::new(), scanned: (-span, span) };
    for shift in -span..=span {
        let cmp = table.comparisons(shift);
        // every degree with cohomology in the window must meet the homology window somewhere
        let witnessed = (0..=d).all(|i| {
            let nonzero = table.cohomology.iter().any(|(&(j, _), &c)| j == i && c > 0);
            !nonzero || cmp.iter().any(|&(j, _, c, _)| j == i && c > 0)
        });
        if !cmp.is_empty() && witnessed && cmp.iter().all(|(_, _, c, h)| c == h) {
            table.matches.push(shift);
        }
    }
    Ok(table)
}
