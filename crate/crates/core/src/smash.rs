//! Smash products `A ⋊_σ ℕ`, `A ⋊_σ ℤ` (on an x-degree window) and `A ⋊_σ ℤ/m`,
//! the transported module on `A ⊗ k[x]`, and the checks that untwist it.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{tensor_over, Automorphism, BasisElement, Bimodule, GradedAlgebra, Weight, Window};
use crate::error::{Error, Result};
use crate::exactla::{accumulate, add_entry, in_column_space, rank, to_dense, MatrixQ, Rational, SparseVec};
use crate::hochschild::{build_chain_window, Cochain, CochainBasis, InputSpace, SparseChain};
use crate::products::{cap, enveloping_pairs, FundamentalCycle};

/// Range of x-degrees kept in a smash product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmashMode {
    /// `A ⋊_σ ℕ` with `0 ≤ k ≤ x_cap`.
    Nat { x_cap: usize },
    /// `A ⋊_σ ℤ` with `x_min ≤ k ≤ x_max`; products leaving the range are left undefined.
    Int { x_min: i64, x_max: i64 },
    /// `A ⋊_σ ℤ/m`; requires `σ^m = id`.
    Cyclic { m: usize },
}

/// A smash product with the layout of its basis `a ⊗ x^k` (x-degree outer).
#[derive(Clone, Debug)]
pub struct SmashProduct {
    pub algebra: GradedAlgebra,
    pub mode: SmashMode,
    base_dim: usize,
    x_lo: i64,
    x_hi: i64,
}

impl SmashProduct {
    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    /// Inclusive range of x-degrees.
    pub fn x_range(&self) -> (i64, i64) {
        (self.x_lo, self.x_hi)
    }

    /// Index of `e_i ⊗ x^k`.
    pub fn index(&self, i: usize, k: i64) -> Option<usize> {
        layout_index(self.mode, self.base_dim, (self.x_lo, self.x_hi), i, k)
    }

    /// `(i, k)` with the given index equal to `e_i ⊗ x^k`.
    pub fn decompose(&self, idx: usize) -> (usize, i64) {
        (idx % self.base_dim, self.x_lo + (idx / self.base_dim) as i64)
    }

    /// Embeds `v ⊗ x^k`.
    pub fn embed(&self, v: &[(usize, Rational)], k: i64) -> Option<SparseVec> {
        v.iter().map(|(i, c)| self.index(*i, k).map(|j| (j, c.clone()))).collect()
    }
}

fn layout_index(mode: SmashMode, base_dim: usize, (lo, hi): (i64, i64), i: usize, k: i64) -> Option<usize> {
    let k = match mode {
        SmashMode::Cyclic { m } => k.rem_euclid(m as i64),
        _ => k,
    };
    (i < base_dim && (lo..=hi).contains(&k)).then(|| (k - lo) as usize * base_dim + i)
}

fn smash_id(a: &str, k: i64) -> String {
    let x = match k {
        1 => "x".to_string(),
        _ => format!("x^{k}"),
    };
    match (k, a) {
        (0, _) => a.to_string(),
        (_, "1") => x,
        _ => format!("{a}*{x}"),
    }
}

/// `σ^k` for every `k` in `lo..=hi`.
fn powers(sigma: &Automorphism, lo: i64, hi: i64) -> BTreeMap<i64, Automorphism> {
    (lo..=hi).map(|k| (k, sigma.pow(k))).collect()
}

/// `(a ⊗ xⁱ)(b ⊗ xʲ) = a σⁱ(b) ⊗ x^{i+j}`, with the x-degree appended to the grading.
pub fn smash_build(base: &GradedAlgebra, sigma: &Automorphism, mode: SmashMode) -> Result<SmashProduct> {
    let (x_lo, x_hi, x_window) = match mode {
        SmashMode::Nat { x_cap } => (0, x_cap as i64, (Some(0), Some(x_cap as i64))),
        SmashMode::Int { x_min, x_max } => {
            if x_min > 0 || x_max < 0 {
                return Err(Error::BadParams(format!("x-degree window [{x_min}, {x_max}] must contain 0")));
            }
            (x_min, x_max, (Some(x_min), Some(x_max)))
        }
        SmashMode::Cyclic { m } => {
            if m == 0 {
                return Err(Error::BadParams("cyclic smash needs m ≥ 1".into()));
            }
            if sigma.pow(m as i64).matrix() != Automorphism::identity(base).matrix() {
                return Err(Error::SigmaOrderMismatch(m));
            }
            (0, m as i64 - 1, (Some(0), Some(0)))
        }
    };
    let n = base.dim();
    let mut basis = Vec::new();
    for k in x_lo..=x_hi {
        for i in 0..n {
            let extra = if matches!(mode, SmashMode::Cyclic { .. }) { 0 } else { k };
            basis.push(BasisElement { id: smash_id(base.id(i), k), weight: base.weight(i).extend(extra) });
        }
    }
    let index = |i: usize, k: i64| layout_index(mode, n, (x_lo, x_hi), i, k).expect("index in range");
    let pows = powers(sigma, x_lo.min(0), x_hi);
    let dim = basis.len();
    let mut products = Vec::new();
    for i in x_lo..=x_hi {
        for j in x_lo..=x_hi {
            if !matches!(mode, SmashMode::Cyclic { .. }) && !(x_lo..=x_hi).contains(&(i + j)) {
                continue;
            }
            for a in 0..n {
                for b in 0..n {
                    let Ok(prod) = base.multiply_sparse(&[(a, Rational::one())], &pows[&i].image(b)) else { continue };
                    let mut v = vec![Rational::zero(); dim];
                    for (c, coef) in &prod {
                        v[index(*c, i + j)] = coef.clone();
                    }
                    products.push(((index(a, i), index(b, j)), v));
                }
            }
        }
    }
    let mut unit = vec![Rational::zero(); dim];
    for (i, c) in base.unit().iter().enumerate() {
        unit[index(i, 0)] = c.clone();
    }
    let window = base.window().extend(x_window.0, x_window.1);
    let label = match mode {
        SmashMode::Nat { .. } => "ℕ".to_string(),
        SmashMode::Int { .. } => "ℤ".to_string(),
        SmashMode::Cyclic { m } => format!("ℤ/{m}"),
    };
    let name = format!("{}⋊_{}{label}", base.name(), sigma.name());
    let algebra = GradedAlgebra::new(name, base.grading_rank() + 1, basis, unit, window, products)?;
    Ok(SmashProduct { algebra, mode, base_dim: n, x_lo, x_hi })
}

// ---------------------------------------------------------------------------
// Transported module on A ⊗ k[x]
// ---------------------------------------------------------------------------

/// `A ⊗ span{x⁰, …, x^K}` as a bimodule over `A ⋊_σ ℕ` with
/// `(b xʲ) ▸ (a ⊗ xᵏ) = σ^{−(k+j)}(b) a ⊗ x^{k+j}` and `(a ⊗ xᵏ) ◂ (b xʲ) = σ^{−j}(ab) ⊗ x^{k+j}`.
#[derive(Clone, Debug)]
pub struct TransportedModule {
    pub smash: SmashProduct,
    pub module: Bimodule,
}

pub fn transported_module(alg: &GradedAlgebra, sigma: &Automorphism, x_cap: usize) -> Result<TransportedModule> {
    let smash = smash_build(alg, sigma, SmashMode::Nat { x_cap })?;
    let r = &smash.algebra;
    let dim = r.dim();
    let top = x_cap as i64;
    let pows = powers(sigma, -2 * top, top);
    let mut left = vec![None; dim * dim];
    let mut right = vec![None; dim * dim];
    for u in 0..dim {
        let (b, j) = smash.decompose(u);
        for m in 0..dim {
            let (a, k) = smash.decompose(m);
            if k + j > top {
                continue;
            }
            if let Ok(v) = alg.multiply_sparse(&pows[&(-(k + j))].image(b), &[(a, Rational::one())]) {
                left[u * dim + m] = smash.embed(&v, k + j);
            }
            if let Ok(ab) = alg.product(a, b) {
                right[m * dim + u] = smash.embed(&pows[&-j].apply_sparse(ab), k + j);
            }
        }
    }
    let labels = (0..dim)
        .map(|m| {
            let (a, k) = smash.decompose(m);
            format!("{}⊗x^{k}", alg.id(a))
        })
        .collect();
    let weights = (0..dim).map(|m| r.weight(m).clone()).collect();
    let module = Bimodule::from_actions("A⊗k[x]", labels, weights, r.window().clone(), dim, left, right);
    Ok(TransportedModule { smash, module })
}

/// One family of intertwining identities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyCheck {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UntwistReport {
    pub families: Vec<FamilyCheck>,
    /// Bimodule axiom failures of the transported module.
    pub axiom_failures: Vec<String>,
    /// Weights where `φ` fails to be bijective.
    pub non_bijective: Vec<Weight>,
    pub blocks_checked: usize,
}

impl UntwistReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(|f| f.failures.is_empty() && f.checked > 0)
            && self.axiom_failures.is_empty()
            && self.non_bijective.is_empty()
    }
}

/// Checks that `φ(a ⊗ xᵏ) = σᵏ(a) ⊗ xᵏ` intertwines the transported module with the regular bimodule of `A ⋊_σ ℕ`.
pub fn untwist_iso_check(alg: &GradedAlgebra, sigma: &Automorphism, x_cap: usize) -> Result<UntwistReport> {
    let tm = transported_module(alg, sigma, x_cap)?;
    let smash = &tm.smash;
    let r = &smash.algebra;
    let dim = r.dim();
    let pows = powers(sigma, 0, x_cap as i64);
    let phi_cols: Vec<SparseVec> = (0..dim)
        .map(|m| {
            let (a, k) = smash.decompose(m);
            smash.embed(&pows[&k].image(a), k).expect("same x-degree")
        })
        .collect();
    let phi = MatrixQ::from_sparse_columns(dim, &phi_cols);
    let apply_phi = |v: &[(usize, Rational)]| -> SparseVec {
        let mut acc = BTreeMap::new();
        for (m, c) in v {
            accumulate(&mut acc, c, &phi_cols[*m]);
        }
        acc.into_iter().collect()
    };
    let one = |i: usize| vec![(i, Rational::one())];
    let unit = alg.unit_index().ok_or_else(|| Error::Invalid("the unit is not a basis element".into()))?;
    let x = smash.index(unit, 1);
    let base_gens: Vec<usize> = (0..alg.dim()).map(|b| smash.index(b, 0).expect("x-degree 0 is kept")).collect();
    let x_gens: Vec<usize> = x.into_iter().collect();
    let mut families = Vec::new();
    for (name, gens, left_side) in [
        ("left by A", &base_gens, true),
        ("left by x", &x_gens, true),
        ("right by A", &base_gens, false),
        ("right by x", &x_gens, false),
    ] {
        let mut fam = FamilyCheck { name: name.into(), ..FamilyCheck::default() };
        for &u in gens.iter() {
            for m in 0..dim {
                let acted = if left_side {
                    tm.module.left_apply(r, &one(u), &one(m))
                } else {
                    tm.module.right_apply(r, &one(m), &one(u))
                };
                let Ok(acted) = acted else { continue };
                fam.checked += 1;
                let lhs = apply_phi(&acted);
                let rhs = if left_side {
                    r.multiply_sparse(&one(u), &phi_cols[m])
                } else {
                    r.multiply_sparse(&phi_cols[m], &one(u))
                };
                let ok = rhs.as_ref().is_ok_and(|rhs| *rhs == lhs);
                if !ok {
                    fam.failures.push(format!("{} on {}", r.id(u), tm.module.label(m)));
                }
            }
        }
        families.push(fam);
    }
    let mut non_bijective = Vec::new();
    let mut blocks_checked = 0;
    for (w, idx) in r.weights() {
        blocks_checked += 1;
        let block = phi.select_rows(idx).select_cols(idx);
        if rank(&block) != idx.len() {
            non_bijective.push(w.clone());
        }
    }
    Ok(UntwistReport { families, axiom_failures: tm.module.check_axioms(r), non_bijective, blocks_checked })
}

// ---------------------------------------------------------------------------
// The commutative square of the proof
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramReport {
    pub degree: usize,
    pub cochains_checked: usize,
    /// `(shift, basis position)` of every cochain where the square fails.
    pub failures: Vec<(Weight, usize)>,
    pub z_is_cycle: bool,
    /// `[T_d z] = [z]`, checked only when `z` is a cycle.
    pub t_invariant_on_homology: Option<bool>,
}

impl DiagramReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.t_invariant_on_homology != Some(false)
    }
}

/// Expands `φ(t₁) ⊗ ⋯ ⊗ φ(tₙ)` for a linear map given on basis elements.
fn expand_tuple(t: &[usize], image: impl Fn(usize) -> SparseVec) -> SparseChain {
    let mut acc = SparseChain::from([(Vec::new(), Rational::one())]);
    for &i in t {
        let img = image(i);
        let mut next = SparseChain::new();
        for (u, c) in &acc {
            for (j, d) in &img {
                let mut v = u.clone();
                v.push(*j);
                add_entry(&mut next, v, c * d);
            }
        }
        acc = next;
    }
    acc
}

/// Compares `(σ⁻¹)^{⊗2}(z ∩ f)` with `T_d(z) ∩ ((σ⁻¹)^{⊗2} ∘ f ∘ σ^{⊗d})` for every basis
/// cochain `f ∈ C^d(A, A ⊗ A_{σ⁻¹})` on the input window, where `T_d = (σ⁻¹)^{⊗(d+1)}`.
pub fn proof_diagram_check(
    alg: &GradedAlgebra,
    sigma: &Automorphism,
    z: &FundamentalCycle,
    input_window: &Window,
    shifts: &[Weight],
) -> Result<DiagramReport> {
    let d = z.degree;
    let inv = sigma.inverse();
    let m_mod = Bimodule::twisted(alg, &inv, &Automorphism::identity(alg));
    let e_mod = Bimodule::enveloping(alg, Some(&inv));
    let pairs = enveloping_pairs(alg);
    let pair_index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let tensor = tensor_over(alg, &m_mod, &e_mod)?;
    let too_small = |what: &str| Error::WindowTooSmall(format!("{what} leaves the window of A ⊗ A"));

    let twist_pair = |v: &[(usize, Rational)]| -> Result<SparseVec> {
        let mut acc = BTreeMap::new();
        for (e, c) in v {
            let (x, y) = pairs[*e];
            for (t, coef) in expand_tuple(&[x, y], |i| inv.image(i)) {
                let k = pair_index.get(&(t[0], t[1])).ok_or_else(|| too_small("σ⁻¹ ⊗ σ⁻¹"))?;
                add_entry(&mut acc, *k, c * coef);
            }
        }
        Ok(acc.into_iter().collect())
    };
    // M ⊗_A (A ⊗ A) ≅ A ⊗ A by m ⊗ (x ⊗ y) ↦ mx ⊗ y
    let flatten = |chain: &SparseChain| -> Result<SparseVec> {
        let mut acc = BTreeMap::new();
        for (t, c) in chain {
            let (m, e) = tensor.lift(t[0]);
            let (x, y) = pairs[e];
            let mx = alg.product(m, x).map_err(|_| too_small("mx"))?;
            for (p, coef) in mx {
                let k = pair_index.get(&(*p, y)).ok_or_else(|| too_small("mx ⊗ y"))?;
                add_entry(&mut acc, *k, c * coef);
            }
        }
        Ok(acc.into_iter().collect())
    };
    let tz: SparseChain = {
        let mut acc = SparseChain::new();
        for (t, c) in &z.chain {
            for (u, d) in expand_tuple(t, |i| inv.image(i)) {
                add_entry(&mut acc, u, c * d);
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    };

    let inputs = InputSpace::enumerate(alg, d, input_window, None);
    let mut report = DiagramReport { degree: d, cochains_checked: 0, failures: Vec::new(), z_is_cycle: z.is_cycle, t_invariant_on_homology: None };
    for s in shifts {
        let basis = CochainBasis::enumerate(&inputs, &e_mod, d, s);
        for k in 0..basis.dim() {
            let (ti, o) = basis.pair(k);
            let t = inputs.tuple(ti).to_vec();
            let f = Cochain::from_parts(d, s.clone(), input_window.clone(), None, BTreeMap::from([(t.clone(), vec![(o, Rational::one())])]));
            // f'(u) = (σ⁻¹ ⊗ σ⁻¹) f(σu₁, …, σu_d)
            let twisted_o = twist_pair(&[(o, Rational::one())])?;
            let mut values = BTreeMap::new();
            for ui in 0..inputs.len() {
                let u = inputs.tuple(ui);
                let coef = expand_tuple(u, |i| sigma.image(i)).remove(&t).unwrap_or_default();
                if !coef.is_zero() {
                    values.insert(u.to_vec(), twisted_o.iter().map(|(e, c)| (*e, c * &coef)).collect::<SparseVec>());
                }
            }
            let f_twisted = Cochain::from_parts(d, s.clone(), input_window.clone(), None, values);
            let lhs = twist_pair(&flatten(&cap(alg, &z.chain, &f, &tensor)?)?)?;
            let rhs = flatten(&cap(alg, &tz, &f_twisted, &tensor)?)?;
            report.cochains_checked += 1;
            if lhs != rhs {
                report.failures.push((s.clone(), k));
            }
        }
    }
    if z.is_cycle {
        let chains = build_chain_window(alg, &m_mod, d, alg.window(), false)?;
        let zv = chains.vector_of(d, &z.chain)?;
        let tv = chains.vector_of(d, &tz)?;
        let diff: Vec<Rational> = tv.iter().zip(&zv).map(|(a, b)| a - b).collect();
        report.t_invariant_on_homology = Some(in_column_space(chains.boundary(d + 1), &diff));
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Localisation
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalisationRow {
    pub weight: Weight,
    pub dim_tensor: usize,
    pub dim_target: usize,
    pub rank: usize,
    pub bijective: bool,
    /// False at the top x-degree, where truncation can cut relations.
    pub conclusive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalisationReport {
    pub x_range: (i64, i64),
    pub rows: Vec<LocalisationRow>,
}

impl LocalisationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().any(|r| r.conclusive) && self.rows.iter().filter(|r| r.conclusive).all(|r| r.bijective)
    }
}

/// Multiplication `B ⊗_R B → B` for `R = A ⋊_σ ℕ` and `B = A ⋊_σ ℤ`, per weight on an x-degree window.
pub fn localisation_mult_check(alg: &GradedAlgebra, sigma: &Automorphism, x_min: i64, x_max: i64) -> Result<LocalisationReport> {
    let b_alg = smash_build(alg, sigma, SmashMode::Int { x_min, x_max })?;
    let x_cap = (x_max - x_min) as usize;
    let r_alg = smash_build(alg, sigma, SmashMode::Nat { x_cap })?;
    let (r, b) = (&r_alg.algebra, &b_alg.algebra);
    let bdim = b.dim();
    let rdim = r.dim();
    // R-bimodule structure on B by multiplication inside B
    let r_in_b: Vec<Option<usize>> = (0..rdim)
        .map(|u| {
            let (i, k) = r_alg.decompose(u);
            b_alg.index(i, k)
        })
        .collect();
    let mut left = vec![None; rdim * bdim];
    let mut right = vec![None; rdim * bdim];
    for u in 0..rdim {
        let Some(ub) = r_in_b[u] else { continue };
        for m in 0..bdim {
            left[u * bdim + m] = b.product(ub, m).ok().cloned();
            right[m * rdim + u] = b.product(m, ub).ok().cloned();
        }
    }
    let labels = (0..bdim).map(|m| b.id(m).to_string()).collect();
    let weights = (0..bdim).map(|m| b.weight(m).clone()).collect();
    let module = Bimodule::from_actions("B", labels, weights, b.window().clone(), rdim, left, right);
    let tensor = tensor_over(r, &module, &module)?;
    let mut rows = Vec::new();
    for (w, idx) in b.weights() {
        let q_idx = tensor.module.indices_of_weight(w);
        let mut cols = Vec::new();
        for &k in &q_idx {
            let (m, n) = tensor.lift(k);
            let v = b.product(m, n).map_err(|_| Error::WindowTooSmall(format!("product at weight {w}")))?;
            cols.push(to_dense(v, bdim));
        }
        let mat = MatrixQ::from_columns(bdim, &cols).select_rows(idx);
        let rk = rank(&mat);
        let x = *w.0.last().expect("x-degree component");
        rows.push(LocalisationRow {
            weight: w.clone(),
            dim_tensor: q_idx.len(),
            dim_target: idx.len(),
            rank: rk,
            bijective: rk == idx.len() && rk == q_idx.len(),
            conclusive: x < x_min + x_cap as i64,
        });
    }
    Ok(LocalisationReport { x_range: (x_min, x_max), rows })
}
