//! Argument parsing and dispatch for the `quotcoh` binary.

use clap::{Args, Parser, Subcommand, ValueEnum};
use quotcoh_core::engine::quotient_report;
use quotcoh_core::hilbert::{
    bb_quotient, betti_numbers, betti_table, graded_module_profiles, graded_profile, k3_rows, k3_table, K3Kind,
};
use quotcoh_core::lattice::{
    bns_invariants, discriminant, group_cohomology, invariants, named_lattice, pushforward_quotient_lattice, Lattice,
};
use quotcoh_core::linalg::require_prime;
use quotcoh_core::profile::{curtis_reiner_check, jordan_profile};
use quotcoh_core::toric::{
    hj_resolution, punctured_quotient_cohomology, quotient_fan, relative_quotient_cohomology, resolve,
    resolve_surface, AbelianGroup, CyclicSingularity,
};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::json::{
    big, degeneration_json, glattice_json, invariants_json, lattice_json, matrix_from_json, matrix_to_json,
    profile_json, rational, read_json, report_json, torsion_keys, ActionDescriptor, GLatticeDescriptor,
    GradedInvariantsJson, LatticeDescriptor,
};
use crate::{selftest, tables};

#[derive(Debug, Parser)]
#[command(name = "quotcoh", version, about = "Integral cohomology of quotients by cyclic groups of prime order")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Jordan block counts of an action modulo p.
    Profile {
        /// JSON file with {"p", "action"}.
        #[arg(long)]
        input: String,
    },
    /// Rank, signature and discriminant group of a lattice.
    Lattice(LatticeArgs),
    /// Pushforward lattice or quotient report.
    Quotient {
        #[arg(value_enum)]
        what: QuotientWhat,
        #[arg(long)]
        input: String,
    },
    /// Cyclic quotient singularities.
    Toric(ToricArgs),
    /// Hilbert schemes of points on a K3 surface with a natural automorphism.
    Hilbert(HilbertArgs),
    /// Tabulated K3 automorphisms and their quotients.
    K3 {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
    /// Recompute the reference tables and compare them with the golden copies.
    Tables {
        #[arg(long, default_value = "all")]
        which: String,
    },
    /// Run the randomized property suite.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    /// JSON file with {"gram"}.
    #[arg(long, conflicts_with = "name")]
    pub input: Option<String>,
    /// A named lattice such as U, A2, E8, rank1(-10) or sym2(2,5,10).
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub scale: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuotientWhat {
    /// Input: {"p", "gram", "action"}.
    Pushforward,
    /// Input: an invariant table {"p", "n", "eta", "degrees"}.
    Report,
}

#[derive(Debug, Args)]
pub struct ToricArgs {
    #[arg(value_enum, default_value_t = ToricWhat::Resolve)]
    pub what: ToricWhat,
    #[arg(long)]
    pub p: u64,
    /// Weights a_1,...,a_n of the action on C^n.
    #[arg(long, value_delimiter = ',')]
    pub weights: Vec<u64>,
    /// Complex dimension, for `cohomology`.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ToricWhat {
    Resolve,
    Hj,
    Cohomology,
}

#[derive(Debug, Args)]
pub struct HilbertArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub m: u32,
    #[arg(long, value_enum, default_value_t = HilbertReport::Summary)]
    pub report: HilbertReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HilbertReport {
    Summary,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Symplectic,
    NonSymplectic,
}

impl From<KindArg> for K3Kind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Symplectic => K3Kind::Symplectic,
            KindArg::NonSymplectic => K3Kind::NonSymplectic,
        }
    }
}

/// The result of a command: its JSON value and whether every check passed.
pub struct Outcome {
    pub value: Value,
    pub ok: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, ok: true }
    }
}

pub fn run(cmd: &Command) -> CliResult<Outcome> {
    match cmd {
        Command::Profile { input } => profile(input).map(Outcome::ok),
        Command::Lattice(args) => lattice(args).map(Outcome::ok),
        Command::Quotient { what, input } => quotient(*what, input).map(Outcome::ok),
        Command::Toric(args) => toric(args).map(Outcome::ok),
        Command::Hilbert(args) => hilbert(args).map(Outcome::ok),
        Command::K3 { p, kind } => k3(*p, *kind).map(Outcome::ok),
        Command::Tables { which } => run_tables(which),
        Command::Selftest { seed } => {
            let checks = selftest::run(*seed);
            let value = selftest::report(*seed, &checks);
            Ok(Outcome { ok: checks.iter().all(selftest::Check::passed), value })
        }
    }
}

fn profile(input: &str) -> CliResult<Value> {
    let d: ActionDescriptor = read_json(input)?;
    let action = matrix_from_json(&d.action)?;
    let prof = jordan_profile(&action, d.p)?;
    let mut out = profile_json(&prof);
    if let Some((q, count)) = prof.middle_block() {
        out["middle_blocks"] = json!({ "size": q, "count": count });
    } else if let Ok(cr) = curtis_reiner_check(&action, d.p) {
        out["summands"] = json!({ "regular": cr.r, "cyclotomic": cr.s, "trivial": cr.t, "cyclotomic_plus_trivial": cr.s_plus_t });
    }
    Ok(out)
}

fn lattice(args: &LatticeArgs) -> CliResult<Value> {
    let l: Lattice = match (&args.input, &args.name) {
        (Some(path), None) => read_json::<LatticeDescriptor>(path)?.build()?,
        (None, Some(name)) => named_lattice(name, args.scale)?,
        _ => return Err(CliError::Usage("give exactly one of --input and --name".into())),
    };
    let mut out = invariants_json(&invariants(&l)?);
    out["discriminant"] = big(&discriminant(&l));
    out["gram"] = matrix_to_json(l.gram());
    Ok(out)
}

fn quotient(what: QuotientWhat, input: &str) -> CliResult<Value> {
    match what {
        QuotientWhat::Pushforward => {
            let gl = read_json::<GLatticeDescriptor>(input)?.build()?;
            let pushed = pushforward_quotient_lattice(&gl)?;
            let bns = bns_invariants(&gl)?;
            let cohomology: Vec<Value> = (1..=2)
                .map(|i| {
                    group_cohomology(&gl, i)
                        .map(|h| json!({ "degree": i, "torsion": h.torsion.iter().map(big).collect::<Vec<_>>() }))
                })
                .collect::<Result<_, _>>()?;
            Ok(json!({
                "input": glattice_json(&gl),
                "bns": { "l_plus": bns.l_plus, "l_minus": bns.l_minus, "l_p": bns.l_p },
                "group_cohomology": cohomology,
                "pushforward": lattice_json(&pushed),
                "invariants": invariants_json(&invariants(&pushed)?),
            }))
        }
        QuotientWhat::Report => {
            let inv = read_json::<GradedInvariantsJson>(input)?.build()?;
            Ok(report_json(&quotient_report(&inv)?))
        }
    }
}

fn group_json(g: &AbelianGroup) -> Value {
    json!({ "free": g.free, "torsion": g.torsion })
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    (1..p).find(|x| (a * x) % p == 1).unwrap_or(0)
}

fn toric(args: &ToricArgs) -> CliResult<Value> {
    match args.what {
        ToricWhat::Cohomology => {
            let n = args.n.unwrap_or(args.weights.len());
            let punctured = punctured_quotient_cohomology(args.p, n)?;
            let relative = relative_quotient_cohomology(args.p, n)?;
            Ok(json!({
                "p": args.p,
                "n": n,
                "punctured": punctured.iter().map(group_json).collect::<Vec<_>>(),
                "relative": relative.iter().map(group_json).collect::<Vec<_>>(),
            }))
        }
        ToricWhat::Hj => {
            let [a] = args.weights[..] else {
                return Err(CliError::Usage("hj takes a single weight a for 1/p(1, a)".into()));
            };
            let (chain, gram) = hj_resolution(args.p, a)?;
            Ok(json!({ "p": args.p, "a": a, "chain": chain, "exceptional_gram": matrix_to_json(&gram), "det": big(&gram.det()) }))
        }
        ToricWhat::Resolve => {
            let s = CyclicSingularity::new(args.p, args.weights.clone())?;
            if args.weights.len() == 2 {
                let res = resolve_surface(&s)?;
                // orient the chain like the continued fraction of 1/p(1, a)
                let a = (args.weights[1] * mod_inverse(args.weights[0], args.p)) % args.p;
                let (hj, _) = hj_resolution(args.p, a)?;
                let mut chain = res.chain.clone();
                let mut gram = res.exceptional_gram.clone();
                if chain != hj {
                    chain.reverse();
                    let len = chain.len();
                    for i in 0..len {
                        for j in 0..len {
                            gram[(i, j)] = res.exceptional_gram[(len - 1 - i, len - 1 - j)].clone();
                        }
                    }
                }
                if chain != hj {
                    return Err(quotcoh_core::Error::Inconsistent(format!(
                        "fan gives the chain {:?}, the continued fraction {hj:?}",
                        res.chain
                    ))
                    .into());
                }
                Ok(json!({
                    "p": args.p,
                    "weights": args.weights,
                    "rays_added": res.rays_added,
                    "chain": chain,
                    "chains": [chain],
                    "exceptional_gram": matrix_to_json(&gram),
                    "det": big(&res.det),
                }))
            } else {
                let fan = resolve(&quotient_fan(&s));
                Ok(json!({
                    "p": args.p,
                    "weights": args.weights,
                    "rays_added": fan.rays().len() - args.weights.len(),
                    "rays": fan.rays(),
                    "cones": fan.maximal_cones(),
                    "regular": fan.is_regular(),
                }))
            }
        }
    }
}

fn hilbert(args: &HilbertArgs) -> CliResult<Value> {
    let spec = quotcoh_core::hilbert::k3_spec(args.p, K3Kind::Symplectic)?;
    let h2 = spec.h2_profile()?;
    let inv = graded_profile(args.m, &h2)?;
    let report = quotient_report(&inv)?;
    let mut out = serde_json::Map::new();
    out.insert("p".into(), json!(args.p));
    out.insert("m".into(), json!(args.m));
    out.insert("eta".into(), json!(inv.eta));
    out.extend(torsion_keys(&report));
    let l_plus: Vec<u64> = (1..=args.m as usize).map(|k| inv.degrees[2 * k].l_plus).collect();
    out.insert("l_plus_even".into(), json!(l_plus));
    let betti = betti_table(args.p, args.m)?;
    out.insert("betti_quotient".into(), json!(betti.even_betti));
    out.insert("singular_points".into(), json!(betti.singular_points));
    out.insert("computed_no_external_check".into(), json!(args.m >= 4));
    if args.report == HilbertReport::All {
        let profiles = graded_module_profiles(args.m, &h2)?;
        out.insert("betti_hilbert_scheme".into(), json!(betti_numbers(args.m)));
        out.insert("module_profiles".into(), Value::Array(profiles.iter().map(profile_json).collect()));
        out.insert("graded_invariants".into(), serde_json::to_value(GradedInvariantsJson::from(&inv))?);
        out.insert("quotient_report".into(), report_json(&report));
        match bb_quotient(args.p, args.m) {
            Ok(bb) => {
                out.insert(
                    "bb_lattice".into(),
                    json!({
                        "name": tables::bb_lattice_name(args.p, args.m),
                        "gram": matrix_to_json(bb.lattice.gram()),
                        "invariants": invariants_json(&invariants(&bb.lattice)?),
                        "rescale": rational(&bb.rescale),
                        "target_gram": matrix_to_json(bb.target.gram()),
                    }),
                );
                out.insert("fujiki".into(), rational(&bb.fujiki));
            }
            Err(e) => {
                out.insert("bb_lattice".into(), json!({ "unavailable": e.to_string() }));
            }
        }
    }
    Ok(Value::Object(out))
}

fn k3(p: Option<u64>, kind: Option<KindArg>) -> CliResult<Value> {
    let mut rows = Vec::new();
    for spec in k3_rows() {
        if p.is_some_and(|p| p != spec.p) || kind.is_some_and(|k| K3Kind::from(k) != spec.kind) {
            continue;
        }
        let row = k3_table(spec.p, spec.kind)?;
        let report = quotient_report(&spec.invariants()?)?;
        rows.push(json!({
            "p": spec.p,
            "kind": spec.kind.name(),
            "lattice": spec.lattice_name,
            "invariants": invariants_json(&row.invariants),
            "pushforward_of_explicit_action": row.computed.as_ref().map(invariants_json),
            "singular_points": spec.eta_k3,
            "l_plus_2": spec.l_plus_2,
            "l_p_2": spec.l_p_2,
            "degeneration": degeneration_json(&report.degeneration),
            "odd_torsion": torsion_keys(&report),
            "even_torsion_free": report.even_torsion_free,
            "betti": report.betti_m,
        }));
    }
    if rows.is_empty() {
        if let Some(p) = p {
            require_prime(p)?;
        }
        return Err(CliError::Usage("no tabulated automorphism matches".into()));
    }
    Ok(json!({ "rows": rows }))
}

fn run_tables(which: &str) -> CliResult<Outcome> {
    let mut results = Vec::new();
    let mut ok = true;
    for id in tables::selected(which)? {
        let check = tables::check(id)?;
        ok &= check.differences.is_empty();
        results.push(json!({
            "table": id,
            "matches_golden": check.differences.is_empty(),
            "differences": check.differences,
            "computed": check.computed,
        }));
    }
    Ok(Outcome { value: json!({ "all_match": ok, "tables": results }), ok })
}
