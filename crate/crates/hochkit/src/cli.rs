//! Command-line surface: argument grammar and dispatch to `hochkit-core`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hochkit_core::algebra::validate;
use hochkit_core::cyclic::{associated_cyclic, bicomplex_total_homology};
use hochkit_core::exactla::{parse_rational, rat, MatrixQ};
use hochkit_core::hochschild::{build_chain_window, build_cochain_window, SparseChain};
use hochkit_core::paracyclic::{build_paracyclic, check_relations, quasicyclic_check, t_on_homology, RelationKind};
use hochkit_core::products::{duality_table, dualizing_window, fclass_probe, FundamentalCycle};
use hochkit_core::smash::{localisation_mult_check, proof_diagram_check, smash_build, untwist_iso_check, SmashMode};
use hochkit_core::{Automorphism, Bimodule, GradedAlgebra, Weight, Window};

use crate::format::{emit_algebra, parse_algebra_file, Loaded};
use crate::report::{Report, Table};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "hochkit", version, about = "Exact twisted Hochschild and cyclic homology of structure-constant algebras")]
pub struct Cli {
    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate an algebra file and list its basis and automorphisms.
    Check(FileArg),
    /// Betti numbers of H_n(A, M) by degree and weight.
    Homology(HomologyArgs),
    /// Dimensions of H^n(A, M) by degree and internal weight.
    Cohomology(CohomologyArgs),
    /// Check the simplicial, paracyclic and homotopy relations on C(A, σA).
    Paracyclic(ParacyclicArgs),
    /// Check that T acts as the identity on H_n(A, σA).
    Tinv(SigmaWindowArgs),
    /// Check C_n = ker(1 - T) ⊕ im(1 - T) per bidegree.
    Quasicyclic(SigmaWindowArgs),
    /// Cyclic homology of the associated cyclic quotient.
    Cyclic(SigmaWindowArgs),
    /// Build a smash product A ⋊_σ ℕ, ℤ or ℤ/m.
    Smash(SmashArgs),
    /// Check the untwisting isomorphism a ⊗ x^k ↦ σ^k(a) ⊗ x^k.
    Untwist(UntwistArgs),
    /// Check the commutative square relating z ∩ f and T(z) ∩ f'.
    Diagram(DiagramArgs),
    /// Compare H^i(A, A) with H_{d-i}(A, _{σ⁻¹}A) up to a weight shift.
    Duality(DualityArgs),
    /// Dimensions of H^i(A, A ⊗ A) and the degree they concentrate in.
    Dualizing(DualizingArgs),
}

#[derive(Debug, Args)]
pub struct FileArg {
    /// Algebra file (JSON).
    pub file: PathBuf,
}

#[derive(Debug, Args)]
pub struct WindowArgs {
    /// Largest homological degree reported.
    #[arg(long, default_value_t = 3)]
    pub nmax: usize,
    /// Largest chain weight per grading component (ignored for finite-dimensional algebras).
    #[arg(long, default_value_t = 3)]
    pub wmax: i64,
}

#[derive(Debug, Args)]
pub struct ShiftArgs {
    /// Smallest cochain internal weight.
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    pub smin: i64,
    /// Largest cochain internal weight.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub smax: i64,
}

#[derive(Debug, Args)]
pub struct HomologyArgs {
    pub file: PathBuf,
    #[command(flatten)]
    pub window: WindowArgs,
    /// Coefficients: reg, twist:NAME (σA) or twistinv:NAME (σ⁻¹A).
    #[arg(long, default_value = "reg")]
    pub coeff: String,
    /// Use the normalized complex (needs a connected algebra).
    #[arg(long)]
    pub normalized: bool,
}

#[derive(Debug, Args)]
pub struct CohomologyArgs {
    #[command(flatten)]
    pub base: HomologyArgs,
    #[command(flatten)]
    pub shifts: ShiftArgs,
}

#[derive(Debug, Args)]
pub struct SigmaWindowArgs {
    pub file: PathBuf,
    /// Name of the automorphism σ.
    #[arg(long)]
    pub sigma: String,
    #[command(flatten)]
    pub window: WindowArgs,
}

#[derive(Debug, Args)]
pub struct ParacyclicArgs {
    #[command(flatten)]
    pub base: SigmaWindowArgs,
    /// simplicial, paracyclic, homotopy, subsidiary or all.
    #[arg(long, default_value = "all")]
    pub relations: String,
}

#[derive(Debug, Args)]
pub struct SmashArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub sigma: String,
    /// Largest x-degree.
    #[arg(long, default_value_t = 3)]
    pub xcap: i64,
    /// Smallest x-degree; a negative value builds A ⋊_σ ℤ.
    #[arg(long, allow_hyphen_values = true)]
    pub xmin: Option<i64>,
    /// Build A ⋊_σ ℤ/m instead (needs σ^m = id).
    #[arg(long, conflicts_with_all = ["xmin"])]
    pub order: Option<usize>,
    /// Write the smash product as an explicit algebra file ("-" for standard output).
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct UntwistArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub sigma: String,
    /// Largest x-degree.
    #[arg(long, default_value_t = 3)]
    pub xcap: usize,
    /// Also check B ⊗_R B → B for B = A ⋊_σ ℤ on x-degrees [xmin, xcap].
    #[arg(long, allow_hyphen_values = true)]
    pub xmin: Option<i64>,
}

#[derive(Debug, Args)]
pub struct DiagramArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub sigma: String,
    /// Chain z, e.g. "1|y" or "2:1|y,-1/2:y|1"; tuples are m|a1|...|ad.
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
    /// Degree of z; defaults to the tuple length minus one.
    #[arg(long)]
    pub d: Option<usize>,
    /// Largest input weight of cochains.
    #[arg(long, default_value_t = 3)]
    pub wmax: i64,
    #[command(flatten)]
    pub shifts: ShiftArgs,
}

#[derive(Debug, Args)]
pub struct DualityArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub sigma: String,
    /// Candidate dimension d.
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    /// Also probe z as a fundamental class.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Largest chain weight and cochain input weight.
    #[arg(long, default_value_t = 3)]
    pub wmax: i64,
    #[command(flatten)]
    pub shifts: ShiftArgs,
}

#[derive(Debug, Args)]
pub struct DualizingArgs {
    pub file: PathBuf,
    #[command(flatten)]
    pub window: WindowArgs,
    #[command(flatten)]
    pub shifts: ShiftArgs,
}

/// Runs a parsed command. `Ok` carries the report; its verdict picks exit code 0 or 1.
pub fn execute(command: &Command, echo: String) -> Result<Report, CliError> {
    let mut r = Report::new(echo);
    match command {
        Command::Check(a) => check(&mut r, &load(&a.file)?),
        Command::Homology(a) => homology(&mut r, a)?,
        Command::Cohomology(a) => cohomology(&mut r, a)?,
        Command::Paracyclic(a) => paracyclic(&mut r, a)?,
        Command::Tinv(a) => tinv(&mut r, a)?,
        Command::Quasicyclic(a) => quasicyclic(&mut r, a)?,
        Command::Cyclic(a) => cyclic(&mut r, a)?,
        Command::Smash(a) => smash(&mut r, a)?,
        Command::Untwist(a) => untwist(&mut r, a)?,
        Command::Diagram(a) => diagram(&mut r, a)?,
        Command::Duality(a) => duality(&mut r, a)?,
        Command::Dualizing(a) => dualizing(&mut r, a)?,
    }
    Ok(r)
}

fn load(path: &std::path::Path) -> Result<Loaded, CliError> {
    parse_algebra_file(path)
}

fn describe(r: &mut Report, alg: &GradedAlgebra) {
    r.note("algebra", alg.name());
    r.note("dimension", alg.dim());
    r.note("window", window_text(alg.window()));
}

fn window_text(w: &Window) -> String {
    let parts: Vec<String> = w
        .lo
        .iter()
        .zip(&w.hi)
        .map(|(lo, hi)| match (lo, hi) {
            (None, None) => "*".into(),
            (None, Some(h)) => format!("<={h}"),
            (Some(l), None) => format!(">={l}"),
            (Some(l), Some(h)) => format!("{l}..{h}"),
        })
        .collect();
    format!("[{}]", parts.join(", "))
}

/// All weights for finite-dimensional algebras, otherwise each component up to `wmax`.
fn weight_window(alg: &GradedAlgebra, wmax: i64) -> Window {
    if alg.is_finite_dimensional() {
        Window::complete(alg.grading_rank())
    } else {
        Window::upto(&vec![wmax; alg.grading_rank()])
    }
}

/// Internal weights `[smin, smax]^rank`, or just zero when the algebra sits in weight zero.
fn shift_list(alg: &GradedAlgebra, s: &ShiftArgs) -> Result<Vec<Weight>, CliError> {
    if s.smin > s.smax {
        return Err(CliError::Usage(format!("--smin {} exceeds --smax {}", s.smin, s.smax)));
    }
    let rank = alg.grading_rank();
    if alg.weights().all(|(w, _)| w.is_zero()) {
        return Ok(vec![Weight::zero(rank)]);
    }
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out.into_iter().flat_map(|p: Vec<i64>| (s.smin..=s.smax).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    Ok(out.into_iter().map(Weight).collect())
}

fn coefficients(l: &Loaded, spec: &str) -> Result<Bimodule, CliError> {
    let alg = &l.algebra;
    let id = Automorphism::identity(alg);
    match spec.split_once(':') {
        None if spec == "reg" => Ok(Bimodule::regular(alg)),
        Some(("twist", name)) => Ok(Bimodule::twisted(alg, l.automorphism(name)?, &id)),
        Some(("twistinv", name)) => Ok(Bimodule::twisted(alg, &l.automorphism(name)?.inverse(), &id)),
        _ => Err(CliError::Usage(format!("--coeff {spec:?}: expected reg, twist:NAME or twistinv:NAME"))),
    }
}

/// Parses `[c:]m|a1|...|ad` terms separated by commas.
pub fn parse_chain(alg: &GradedAlgebra, text: &str) -> Result<(usize, SparseChain), CliError> {
    let mut chain = SparseChain::new();
    let mut degree = None;
    for term in text.split(',').map(str::trim) {
        let (coeff, tuple) = match term.split_once(':') {
            Some((c, t)) => (
                parse_rational(c.trim()).ok_or_else(|| CliError::Usage(format!("--z: {c:?} is not a rational")))?,
                t,
            ),
            None => (rat(1), term),
        };
        let mut t = Vec::new();
        for id in tuple.split('|').map(str::trim) {
            t.push(alg.index_of(id).ok_or_else(|| CliError::Usage(format!("--z: unknown basis id {id:?}")))?);
        }
        let d = t.len() - 1;
        if *degree.get_or_insert(d) != d {
            return Err(CliError::Usage("--z: terms have different degrees".into()));
        }
        let entry = chain.entry(t).or_insert_with(|| rat(0));
        *entry += coeff;
    }
    chain.retain(|_, c| *c != rat(0));
    Ok((degree.unwrap_or(0), chain))
}

fn dims_row(n: usize, w: &Weight, dim: usize) -> Vec<String> {
    vec![n.to_string(), w.to_string(), dim.to_string()]
}

fn check(r: &mut Report, l: &Loaded) {
    describe(r, &l.algebra);
    let alg = &l.algebra;
    let v = validate(alg, &l.automorphisms);
    r.note("grading rank", alg.grading_rank());
    r.note("products", alg.product_count());
    r.note("associativity triples", v.checked_triples);
    r.check("validate", v.passed());
    let mut basis = Table::new("basis", &["index", "id", "weight"]);
    for (i, b) in alg.basis().iter().enumerate() {
        basis.row(vec![i.to_string(), b.id.clone(), b.weight.to_string()]);
    }
    let mut autos = Table::new("automorphisms", &["name", "identity", "moves"]);
    for s in &l.automorphisms {
        let moved = (0..alg.dim()).filter(|&j| s.image(j) != vec![(j, rat(1))]).count();
        autos.row(vec![s.name().into(), s.is_identity().to_string(), moved.to_string()]);
    }
    r.tables.extend([basis, autos]);
}

fn homology(r: &mut Report, a: &HomologyArgs) -> Result<(), CliError> {
    let l = load(&a.file)?;
    let alg = &l.algebra;
    let m = coefficients(&l, &a.coeff)?;
    describe(r, alg);
    r.note("coefficients", m.name());
    r.note("normalized", a.normalized);
    let c = build_chain_window(alg, &m, a.window.nmax, &weight_window(alg, a.window.wmax), a.normalized)?;
    r.check("b∘b = 0", c.first_nonzero_square().is_none());
    let mut t = Table::new("H_n(A, M)", &["n", "weight", "dim"]);
    for ((n, w), d) in c.betti_table()?.dims() {
        if n <= a.window.nmax {
            t.row(dims_row(n, &w, d));
        }
    }
    r.tables.push(t);
    Ok(())
}

fn cohomology(r: &mut Report, a: &CohomologyArgs) -> Result<(), CliError> {
    let b = &a.base;
    let l = load(&b.file)?;
    let alg = &l.algebra;
    let m = coefficients(&l, &b.coeff)?;
    describe(r, alg);
    r.note("coefficients", m.name());
    r.note("normalized", b.normalized);
    let shifts = shift_list(alg, &a.shifts)?;
    let c = build_cochain_window(alg, &m, b.window.nmax, &weight_window(alg, b.window.wmax), &shifts, b.normalized)?;
    r.check("δ∘δ = 0", c.first_nonzero_square().is_none());
    let mut t = Table::new("H^n(A, M)", &["n", "shift", "dim"]);
    for ((n, s), d) in c.betti_table()?.dims() {
        if n <= b.window.nmax {
            t.row(dims_row(n, &s, d));
        }
    }
    r.tables.push(t);
    Ok(())
}

fn sigma_setup(r: &mut Report, a: &SigmaWindowArgs) -> Result<(Loaded, Automorphism), CliError> {
    let l = load(&a.file)?;
    let sigma = l.automorphism(&a.sigma)?.clone();
    describe(r, &l.algebra);
    r.note("sigma", sigma.name());
    Ok((l, sigma))
}

fn paracyclic(r: &mut Report, a: &ParacyclicArgs) -> Result<(), CliError> {
    let kind = RelationKind::parse(&a.relations)
        .ok_or_else(|| CliError::Usage(format!("--relations {:?}: expected simplicial, paracyclic, homotopy, subsidiary or all", a.relations)))?;
    let (l, sigma) = sigma_setup(r, &a.base)?;
    let (ops, derived) = build_paracyclic(&l.algebra, &sigma, a.base.window.nmax, &weight_window(&l.algebra, a.base.window.wmax))?;
    let report = check_relations(&ops, &derived, kind);
    let mut by_name: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for e in &report.entries {
        let slot = by_name.entry(e.name.as_str()).or_default();
        slot.0 += 1;
        slot.1 += usize::from(!e.passed);
    }
    let mut t = Table::new("relations", &["relation", "bidegrees", "failures"]);
    for (name, (checked, failed)) in by_name {
        t.row(vec![name.into(), checked.to_string(), failed.to_string()]);
    }
    r.tables.push(t);
    let mut f = Table::new("failures", &["relation", "n", "weight", "witness"]);
    for e in report.failures() {
        let witness = e.witness.as_ref().map(|(tuple, _)| ids(&l.algebra, tuple)).unwrap_or_default();
        f.row(vec![e.name.clone(), e.degree.to_string(), e.weight.to_string(), witness]);
    }
    if !f.rows.is_empty() {
        r.tables.push(f);
    }
    r.note("entries checked", report.entries.len());
    r.check("relations", report.passed());
    Ok(())
}

fn ids(alg: &GradedAlgebra, tuple: &[usize]) -> String {
    tuple.iter().map(|&i| alg.id(i)).collect::<Vec<_>>().join("|")
}

fn tinv(r: &mut Report, a: &SigmaWindowArgs) -> Result<(), CliError> {
    let (l, sigma) = sigma_setup(r, a)?;
    let (ops, derived) = build_paracyclic(&l.algebra, &sigma, a.window.nmax, &weight_window(&l.algebra, a.window.wmax))?;
    let mut t = Table::new("T on H_n(A, σA)", &["n", "weight", "dim", "T = id"]);
    let mut ok = true;
    for n in 0..=a.window.nmax {
        for w in ops.space(n).weights().cloned().collect::<Vec<_>>() {
            let m = t_on_homology(&ops, &derived, n, &w)?;
            let id = m == MatrixQ::identity(m.nrows());
            ok &= id;
            t.row(vec![n.to_string(), w.to_string(), m.nrows().to_string(), id.to_string()]);
        }
    }
    r.tables.push(t);
    r.check("T = id on homology", ok);
    Ok(())
}

fn quasicyclic(r: &mut Report, a: &SigmaWindowArgs) -> Result<(), CliError> {
    let (l, sigma) = sigma_setup(r, a)?;
    let (ops, derived) = build_paracyclic(&l.algebra, &sigma, a.window.nmax, &weight_window(&l.algebra, a.window.wmax))?;
    let mut t = Table::new("C_n = ker(1 - T) ⊕ im(1 - T)", &["n", "weight", "dim", "ker", "im", "ker ∩ im", "split"]);
    let mut ok = true;
    for n in 0..=a.window.nmax {
        for w in ops.space(n).weights().cloned().collect::<Vec<_>>() {
            let q = quasicyclic_check(&ops, &derived, n, &w)?;
            ok &= q.split;
            t.row(vec![
                n.to_string(),
                w.to_string(),
                q.dim.to_string(),
                q.dim_ker.to_string(),
                q.dim_im.to_string(),
                q.dim_intersection.to_string(),
                q.split.to_string(),
            ]);
        }
    }
    r.tables.push(t);
    r.check("quasi-cyclic", ok);
    Ok(())
}

fn cyclic(r: &mut Report, a: &SigmaWindowArgs) -> Result<(), CliError> {
    let (l, sigma) = sigma_setup(r, a)?;
    let win = associated_cyclic(&l.algebra, &sigma, a.window.nmax + 1, &weight_window(&l.algebra, a.window.wmax))?;
    let hc = bicomplex_total_homology(&win, a.window.nmax)?;
    r.check("bB + Bb = 0, BB = 0, bb = 0", win.failures().is_empty());
    let mut t = Table::new("cyclic homology", &["n", "weight", "HC", "H (column)"]);
    for ((n, w), d) in &hc.hc {
        let col = hc.columns.get(&(*n, w.clone())).map_or("-".to_string(), |c| c.to_string());
        t.row(vec![n.to_string(), w.to_string(), d.to_string(), col]);
    }
    r.tables.push(t);
    if !win.failures().is_empty() {
        let mut f = Table::new("failures", &["identity", "n", "weight"]);
        for (name, n, w) in win.failures() {
            f.row(vec![name.clone(), n.to_string(), w.to_string()]);
        }
        r.tables.push(f);
    }
    Ok(())
}

/// `a xᵏ ↦ σ(a) xᵏ`, an automorphism of every smash product by `σ`.
fn extend_to_smash(sp: &hochkit_core::smash::SmashProduct, sigma: &Automorphism) -> Result<Automorphism, CliError> {
    let alg = &sp.algebra;
    let cols: Vec<_> = (0..alg.dim())
        .map(|m| {
            let (a, k) = sp.decompose(m);
            sp.embed(&sigma.image(a), k).expect("σ preserves x-degree")
        })
        .collect();
    Ok(Automorphism::from_matrix(sigma.name(), alg, MatrixQ::from_sparse_columns(alg.dim(), &cols))?)
}

fn smash(r: &mut Report, a: &SmashArgs) -> Result<(), CliError> {
    let l = load(&a.file)?;
    let sigma = l.automorphism(&a.sigma)?.clone();
    let mode = match (a.order, a.xmin) {
        (Some(m), _) => SmashMode::Cyclic { m },
        (None, Some(x_min)) => SmashMode::Int { x_min, x_max: a.xcap },
        (None, None) => SmashMode::Nat {
            x_cap: usize::try_from(a.xcap).map_err(|_| CliError::Usage("--xcap must be nonnegative".into()))?,
        },
    };
    let sp = smash_build(&l.algebra, &sigma, mode)?;
    let autos = vec![Automorphism::identity(&sp.algebra), extend_to_smash(&sp, &sigma)?];
    describe(r, &sp.algebra);
    let (lo, hi) = sp.x_range();
    r.note("x-degrees", format!("{lo}..{hi}"));
    let v = validate(&sp.algebra, &autos);
    r.note("associativity triples", v.checked_triples);
    r.check("validate", v.passed());
    let mut t = Table::new("dimensions", &["weight", "dim"]);
    for (w, idx) in sp.algebra.weights() {
        t.row(vec![w.to_string(), idx.len().to_string()]);
    }
    r.tables.push(t);
    if let Some(path) = &a.emit {
        let text = emit_algebra(&sp.algebra, &autos);
        if path.as_os_str() == "-" {
            r.note("emitted", "standard output");
            r.emitted = Some(text);
        } else {
            std::fs::write(path, text).map_err(|e| CliError::Usage(format!("--emit {}: {e}", path.display())))?;
            r.note("emitted", path.display());
        }
    }
    Ok(())
}

fn untwist(r: &mut Report, a: &UntwistArgs) -> Result<(), CliError> {
    let l = load(&a.file)?;
    let sigma = l.automorphism(&a.sigma)?.clone();
    describe(r, &l.algebra);
    r.note("sigma", sigma.name());
    r.note("x-cap", a.xcap);
    let rep = untwist_iso_check(&l.algebra, &sigma, a.xcap)?;
    let mut t = Table::new("φ(a ⊗ x^k) = σ^k(a) ⊗ x^k intertwines", &["family", "checked", "failures"]);
    for f in &rep.families {
        t.row(vec![f.name.clone(), f.checked.to_string(), f.failures.len().to_string()]);
    }
    r.tables.push(t);
    r.note("blocks checked", rep.blocks_checked);
    r.note("module axiom failures", rep.axiom_failures.len());
    r.note(
        "non-bijective weights",
        if rep.non_bijective.is_empty() {
            "none".to_string()
        } else {
            rep.non_bijective.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        },
    );
    r.check("untwisting", rep.passed());
    if let Some(x_min) = a.xmin {
        let loc = localisation_mult_check(&l.algebra, &sigma, x_min, a.xcap as i64)?;
        let mut t = Table::new("B ⊗_R B → B", &["weight", "dim B⊗B", "dim B", "rank", "bijective", "conclusive"]);
        for row in &loc.rows {
            t.row(vec![
                row.weight.to_string(),
                row.dim_tensor.to_string(),
                row.dim_target.to_string(),
                row.rank.to_string(),
                row.bijective.to_string(),
                row.conclusive.to_string(),
            ]);
        }
        r.tables.push(t);
        r.check("localisation", loc.passed());
    }
    Ok(())
}

fn fundamental_cycle(alg: &GradedAlgebra, sigma: &Automorphism, z: &str, d: Option<usize>) -> Result<FundamentalCycle, CliError> {
    let (deg, chain) = parse_chain(alg, z)?;
    let d = d.unwrap_or(deg);
    if d != deg {
        return Err(CliError::Usage(format!("--z has degree {deg} but --d is {d}")));
    }
    Ok(FundamentalCycle::new(alg, sigma, d, chain)?)
}

fn diagram(r: &mut Report, a: &DiagramArgs) -> Result<(), CliError> {
    let l = load(&a.file)?;
    let alg = &l.algebra;
    let sigma = l.automorphism(&a.sigma)?.clone();
    describe(r, alg);
    r.note("sigma", sigma.name());
    let z = fundamental_cycle(alg, &sigma, &a.z, a.d)?;
    r.note("degree", z.degree);
    r.note("z is a cycle", z.is_cycle);
    let rep = proof_diagram_check(alg, &sigma, &z, &weight_window(alg, a.wmax), &shift_list(alg, &a.shifts)?)?;
    r.note("cochains checked", rep.cochains_checked);
    r.note(
        "[T z] = [z]",
        match rep.t_invariant_on_homology {
            None => "not checked".to_string(),
            Some(b) => b.to_string(),
        },
    );
    let mut t = Table::new("failures", &["shift", "cochain"]);
    for (s, k) in &rep.failures {
        t.row(vec![s.to_string(), k.to_string()]);
    }
    r.tables.push(t);
    r.check("square commutes", rep.passed());
    Ok(())
}

fn duality(r: &mut Report, a: &DualityArgs) -> Result<(), CliError> {
    let l = load(&a.file)?;
    let alg = &l.algebra;
    let sigma = l.automorphism(&a.sigma)?.clone();
    describe(r, alg);
    r.note("sigma", sigma.name());
    r.note("d", a.d);
    let input = weight_window(alg, a.wmax);
    let table = duality_table(alg, &sigma, a.d, a.wmax, &input, (a.shifts.smin, a.shifts.smax))?;
    r.note("shifts scanned", format!("{}..{}", table.scanned.0, table.scanned.1));
    let matches: Vec<String> = table.matches.iter().map(ToString::to_string).collect();
    r.note("matching shifts", if matches.is_empty() { "none".to_string() } else { matches.join(" ") });
    let mut coh = Table::new("H^i(A, A)", &["i", "shift", "dim"]);
    for ((i, s), d) in &table.cohomology {
        coh.row(vec![i.to_string(), s.to_string(), d.to_string()]);
    }
    let mut hom = Table::new("H_j(A, σ⁻¹A)", &["j", "weight", "dim"]);
    for ((j, w), d) in &table.homology {
        hom.row(vec![j.to_string(), w.to_string(), d.to_string()]);
    }
    r.tables.extend([coh, hom]);
    for &shift in &table.matches {
        let mut t = Table::new(&format!("comparison at shift {shift}"), &["i", "s", "dim H^i_s", "dim H_{d-i}"]);
        for (i, s, c, h) in table.comparisons(shift) {
            t.row(vec![i.to_string(), s.to_string(), c.to_string(), h.to_string()]);
        }
        r.tables.push(t);
    }
    r.check("duality shift found", !table.matches.is_empty());
    if let Some(z) = &a.z {
        let z = fundamental_cycle(alg, &sigma, z, Some(a.d))?;
        let probe = fclass_probe(alg, &sigma, &z, &input, &shift_list(alg, &a.shifts)?)?;
        let mut t = Table::new("f ↦ [z ∩ f]", &["shift", "dim H^d", "dim A", "rank", "bijective", "conclusive"]);
        for row in &probe.rows {
            t.row(vec![
                row.shift.to_string(),
                row.dim_cohomology.to_string(),
                row.dim_target.to_string(),
                row.rank.to_string(),
                row.bijective.to_string(),
                row.conclusive.to_string(),
            ]);
        }
        r.tables.push(t);
        r.note("z is a cycle", probe.z_is_cycle);
        r.note("coboundaries pair to zero", probe.coboundaries_vanish);
        r.check("fundamental class", probe.is_fundamental());
    }
    Ok(())
}

fn dualizing(r: &mut Report, a: &DualizingArgs) -> Result<(), CliError> {
    let l = load(&a.file)?;
    let alg = &l.algebra;
    describe(r, alg);
    let probe = dualizing_window(alg, a.window.nmax, &weight_window(alg, a.window.wmax), &shift_list(alg, &a.shifts)?)?;
    let mut t = Table::new("H^i(A, A ⊗ A)", &["i", "shift", "dim"]);
    for ((i, s), d) in &probe.dims {
        t.row(dims_row(*i, s, *d));
    }
    r.tables.push(t);
    r.note("concentrated in", probe.concentrated_in.map_or("none".to_string(), |i| i.to_string()));
    r.check("concentrated in one degree", probe.concentrated_in.is_some());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use hochkit_core::builtin::poly1;
    use hochkit_core::exactla::Rational;

    #[test]
    fn chains_parse() {
        let (a, _) = poly1(1, 3);
        let (d, c) = parse_chain(&a, "1|y").unwrap();
        assert_eq!(d, 1);
        assert_eq!(c, SparseChain::from([(vec![0, 1], rat(1))]));
        let (_, c) = parse_chain(&a, "2:1|y, -1/2:y|1, 1:y|1").unwrap();
        assert_eq!(c, SparseChain::from([(vec![0, 1], rat(2)), (vec![1, 0], Rational::new(1.into(), 2.into()))]));
        assert!(parse_chain(&a, "1|z").is_err());
        assert!(parse_chain(&a, "1|y, y").is_err());
    }
}
