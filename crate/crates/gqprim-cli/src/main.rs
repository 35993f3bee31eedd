//! `gqprim` — command-line frontend for the quadrangle toolkit.
//!
//! Every subcommand prints one machine-readable document to stdout
//! (JSON by default) and encodes its verdict in the exit code:
//!
//! * 0 — completed; plain data, or a scenario concluding consistent-with-paper
//! * 1 — a contradiction or violation was found
//! * 2 — inconclusive: some budget (factoring, enumeration, DP bits) ran out
//! * 3 — usage error
//!
//! Output is deterministic: identical inputs and configuration produce
//! byte-identical documents, independent of the parallelism mode.

use clap::{Parser, Subcommand, ValueEnum};
use gqprim::analyses::{
    self, class_products, enumerate_partitions, partition_exists, pds_check, power_classes,
    Conclusion, PdsVerdict, ScenarioReport,
};
use gqprim::catalog::GroupId;
use gqprim::centralisers::{table2_verdict, witness_centraliser, Provenance, WitnessOutcome};
use gqprim::config::Config;
use gqprim::geometry::{
    automorphism_group, build_classical, fixed_substructure, fixity_profile, srg_params,
    verify_gq, Collineation, GeometryKind, IncidenceGeometry,
};
use gqprim::nat::{nat, parse_nat, pow};
use gqprim::par::Parallelism;
use gqprim::perm::{
    alternating, conjugacy_classes, janko1, mathieu11, product_class_sizes, Classes, PermGroup,
};
use gqprim::solver::{
    admissible_pairs, scan_solve, solve_with_budget, theorem_bound_report, SolveResult,
};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use std::collections::BTreeSet;
use std::time::Duration;

#[derive(Parser)]
#[command(name = "gqprim", version, about = "Exact checks for point-primitive generalised quadrangles")]
struct Cli {
    /// Output format for the report document.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Wall-clock budget per factorization call, in milliseconds.
    #[arg(long, global = true, default_value_t = 5000)]
    budget_ms: u64,
    /// Largest group order that whole-group enumeration will attempt.
    #[arg(long, global = true, default_value_t = 1 << 28)]
    enum_budget: u64,
    /// Widest subset-sum bitset the partition checks will allocate.
    #[arg(long, global = true, default_value_t = 1 << 31)]
    dp_bits: u64,
    /// Unlocks the long-running variants (full sweeps, M11-sized counts).
    #[arg(long, global = true)]
    long: bool,
    /// Worker threads: 0 = all cores, 1 = sequential, n = a pool of n.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Build {
    #[value(alias = "W32", alias = "W3")]
    W32,
    #[value(alias = "Qminus5", alias = "QMinus5")]
    Qminus5,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve (s+1)(st+1) = x exactly for admissible (s, t).
    Solve {
        /// Point count, as a decimal string of any size.
        #[arg(long)]
        x: String,
        /// Use the brute-force scanner (x ≤ 10⁹) instead of the divisor solver.
        #[arg(long)]
        scan: bool,
    },
    /// Look up a catalogued simple group order.
    Order {
        #[arg(long)]
        group: String,
    },
    /// Report the centraliser witness (or exact maximum) for a group.
    Centraliser {
        #[arg(long)]
        group: String,
        /// Also evaluate the fifth-power threshold c⁵ < |T|^(5−r).
        #[arg(long)]
        r: Option<u32>,
    },
    /// Membership table for the centraliser threshold, by family and rank.
    Table2 {
        /// Restrict to one rank (1..=3); default prints all three.
        #[arg(long)]
        r: Option<u32>,
        /// Check a single group instead of the built-in rows.
        #[arg(long)]
        group: Option<String>,
        /// Largest alternating degree to include in the sweep.
        #[arg(long, default_value_t = 30)]
        alt_max: u64,
    },
    /// Re-derive the five solved parameter rows from the group orders alone.
    Table3,
    /// Build a classical quadrangle, verify its axioms, report its shape.
    Geometry {
        #[arg(long, value_enum)]
        build: Build,
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Include the collineation group order.
        #[arg(long)]
        aut: bool,
        /// Include the whole-group fixed-point profile.
        #[arg(long)]
        fixity_profile: bool,
        /// Include the fixed-substructure census over all collineations.
        #[arg(long)]
        census: bool,
    },
    /// Whole-group fixed-point profile of a classical quadrangle.
    FixityProfile {
        #[arg(long, value_enum)]
        build: Build,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// Subset-sum reachability of a target from conjugacy class sizes.
    Partition {
        #[arg(long)]
        group: String,
        /// Direct-power rank: class sizes of T^r (products of base sizes).
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long)]
        target: u64,
        /// Also list the candidate subsets (up to --cap of them).
        #[arg(long)]
        enumerate: bool,
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
    },
    /// Exhaustive difference-set counts for a candidate point graph.
    Pds {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        r: u32,
        /// Quadrangle parameters; the graph degree s(t+1) and the counts
        /// λ = s−1, μ = t+1 are derived from these.
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
        /// Cap on the number of candidate class partitions surveyed.
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
    },
    /// Diagonal-subgroup scenario for T^k at product rank r.
    SdScenario {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long)]
        r: u32,
    },
    /// Run the frozen product-action fixity scenarios.
    FixityScenario {
        /// Run a single row by id; default runs all of them.
        #[arg(long)]
        id: Option<String>,
        /// List the rows without running them.
        #[arg(long)]
        list: bool,
    },
    /// Scan |PSL₂(q)| for admissible parameters over prime powers q.
    Psl2Sweep {
        /// Default 10⁴, or 10⁶ under --long.
        #[arg(long)]
        q_max: Option<u64>,
    },
    /// Re-check every embedded order-inequality claim over small fields.
    ReplicateClaims {
        #[arg(long, default_value_t = 100)]
        q_max: u64,
    },
    /// Fixed-point caps versus point counts across admissible parameters.
    Bounds {
        #[arg(long)]
        s: Option<u64>,
        #[arg(long)]
        t: Option<u64>,
        /// Sweep limit when no single pair is given.
        #[arg(long, default_value_t = 200)]
        s_max: u64,
    },
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return 3;
        }
    };
    #[cfg(feature = "parallel")]
    if cli.threads >= 2 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    let mode = if cli.threads == 1 { Parallelism::Sequential } else { Parallelism::default() };
    let cfg = Config {
        factoring_budget_ms: cli.budget_ms,
        enum_budget: cli.enum_budget,
        dp_bits_budget: cli.dp_bits,
        long_tests: cli.long,
        parallelism: mode,
    };
    run(&cli, &cfg)
}

fn run(cli: &Cli, cfg: &Config) -> i32 {
    let fmt = cli.format;
    match &cli.cmd {
        Cmd::Solve { x, scan } => cmd_solve(fmt, cfg, x, *scan),
        Cmd::Order { group } => cmd_order(fmt, group),
        Cmd::Centraliser { group, r } => cmd_centraliser(fmt, group, *r),
        Cmd::Table2 { r, group, alt_max } => cmd_table2(fmt, *r, group.as_deref(), *alt_max),
        Cmd::Table3 => emit_report(fmt, &analyses::reproduce_table3(cfg.parallelism)),
        Cmd::Geometry { build, q, aut, fixity_profile, census } => {
            cmd_geometry(fmt, cfg, *build, *q, *aut, *fixity_profile, *census)
        }
        Cmd::FixityProfile { build, q } => cmd_geometry(fmt, cfg, *build, *q, false, true, false),
        Cmd::Partition { group, r, target, enumerate, cap } => {
            cmd_partition(fmt, cfg, group, *r, *target, *enumerate, *cap)
        }
        Cmd::Pds { group, r, s, t, cap } => cmd_pds(fmt, cfg, group, *r, *s, *t, *cap),
        Cmd::SdScenario { group, k, r } => cmd_sd(fmt, group, *k, *r),
        Cmd::FixityScenario { id, list } => cmd_fixity_scenario(fmt, id.as_deref(), *list),
        Cmd::Psl2Sweep { q_max } => {
            let q_max = q_max.unwrap_or(if cfg.long_tests { 1_000_000 } else { 10_000 });
            emit_report(fmt, &analyses::psl2_sweep(q_max, cfg.parallelism))
        }
        Cmd::ReplicateClaims { q_max } => cmd_replicate(fmt, cfg, *q_max),
        Cmd::Bounds { s, t, s_max } => cmd_bounds(fmt, *s, *t, *s_max),
    }
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    3
}

fn budget_exhausted(fmt: Format, msg: &str) -> i32 {
    emit(fmt, &json!({ "error": msg, "conclusion": "inconclusive" }));
    2
}

fn conclusion_code(c: Conclusion) -> i32 {
    match c {
        Conclusion::ConsistentWithPaper => 0,
        Conclusion::ContradictionFound => 1,
        Conclusion::Inconclusive => 2,
    }
}

fn emit_report(fmt: Format, rep: &ScenarioReport) -> i32 {
    emit(fmt, &serde_json::to_value(rep).expect("reports serialize"));
    conclusion_code(rep.conclusion)
}

// ---------------------------------------------------------------- subcommands

fn cmd_solve(fmt: Format, cfg: &Config, x: &str, scan: bool) -> i32 {
    let Some(x) = parse_nat(x) else {
        return usage_error(&format!("--x wants a decimal integer, got `{x}`"));
    };
    let res: SolveResult = if scan {
        match scan_solve(&x) {
            Ok(res) => res,
            Err(e) => return usage_error(&e.to_string()),
        }
    } else {
        solve_with_budget(&x, Duration::from_millis(cfg.factoring_budget_ms))
    };
    let rows: Vec<Value> = res
        .params
        .iter()
        .map(|p| {
            json!({
                "x": res.x.to_string(),
                "s": p.s.to_string(),
                "t": p.t.to_string(),
                "coprime": p.coprime,
                "complete": res.complete,
            })
        })
        .collect();
    emit(fmt, &Value::Array(rows));
    if res.complete {
        0
    } else {
        2
    }
}

fn cmd_order(fmt: Format, group: &str) -> i32 {
    let g = match parse_group(group) {
        Ok(g) => g,
        Err(msg) => return usage_error(&msg),
    };
    let order = g.order().expect("parse_group validated the order");
    emit(fmt, &json!({ "group": g.to_string(), "order": order.to_string() }));
    0
}

fn cmd_centraliser(fmt: Format, group: &str, r: Option<u32>) -> i32 {
    let g = match parse_group(group) {
        Ok(g) => g,
        Err(msg) => return usage_error(&msg),
    };
    if let Some(r) = r {
        if !(1..=4).contains(&r) {
            return usage_error("--r must be in 1..=4");
        }
    }
    let order = g.order().expect("parse_group validated the order");
    let mut doc = Map::new();
    doc.insert("group".into(), g.to_string().into());
    doc.insert("order".into(), order.to_string().into());
    let c = match witness_centraliser(&g).expect("parse_group validated the group") {
        WitnessOutcome::Witness(w) => {
            doc.insert("kind".into(), if w.is_lower_bound { "lower-bound" } else { "witness" }.into());
            doc.insert("value".into(), w.value.to_string().into());
            doc.insert("element".into(), w.element_description.into());
            w.value
        }
        WitnessOutcome::UpperBoundOnly { bound, .. } => {
            doc.insert("kind".into(), "upper-bound".into());
            doc.insert("value".into(), bound.to_string().into());
            bound
        }
    };
    if let Some(r) = r {
        doc.insert("r".into(), r.into());
        let holds = gqprim::centralisers::threshold_holds(&c, &order, r);
        doc.insert("threshold-holds".into(), holds.into());
    }
    emit(fmt, &Value::Object(doc));
    0
}

fn cmd_table2(fmt: Format, r: Option<u32>, group: Option<&str>, alt_max: u64) -> i32 {
    if let Some(r) = r {
        if !(1..=3).contains(&r) {
            return usage_error("--r must be in 1..=3");
        }
    }
    let ranks: Vec<u32> = match r {
        Some(r) => vec![r],
        None => vec![1, 2, 3],
    };
    let groups: Vec<GroupId> = match group {
        Some(spec) => match parse_group(spec) {
            Ok(g) => vec![g],
            Err(msg) => return usage_error(&msg),
        },
        None => {
            let mut gs: Vec<GroupId> = (5..=alt_max).map(GroupId::Alt).collect();
            gs.extend(gqprim::catalog::sporadic_names().into_iter().map(GroupId::Sporadic));
            gs.push(GroupId::Tits);
            gs
        }
    };
    let mut rows = Vec::new();
    for g in &groups {
        for &r in &ranks {
            match table2_verdict(g, r) {
                Ok((member, prov)) => rows.push(json!({
                    "group": g.to_string(),
                    "r": r,
                    "member": member,
                    "provenance": match prov {
                        Provenance::Exact => "exact",
                        Provenance::WitnessRefuted => "witness-refuted",
                        Provenance::PaperAsserted => "published-range",
                    },
                })),
                Err(e) => return usage_error(&e.to_string()),
            }
        }
    }
    emit(fmt, &Value::Array(rows));
    0
}

fn build_geometry(build: Build, q: u32) -> Result<IncidenceGeometry, String> {
    let kind = match build {
        Build::W32 => GeometryKind::W32,
        Build::Qminus5 => GeometryKind::QMinus5q,
    };
    build_classical(kind, q).map_err(|e| e.to_string())
}

fn cmd_geometry(
    fmt: Format,
    cfg: &Config,
    build: Build,
    q: u32,
    aut: bool,
    profile: bool,
    census: bool,
) -> i32 {
    let g = match build_geometry(build, q) {
        Ok(g) => g,
        Err(msg) => return usage_error(&msg),
    };
    let mut doc = Map::new();
    doc.insert("points".into(), g.num_points().into());
    doc.insert("lines".into(), g.num_lines().into());
    let order = match verify_gq(&g) {
        Ok(order) => order,
        Err(v) => {
            doc.insert("violation".into(), v.to_string().into());
            emit(fmt, &Value::Object(doc));
            return 1;
        }
    };
    doc.insert("s".into(), order.s.into());
    doc.insert("t".into(), order.t.into());
    if let Ok((v, k, lambda, mu)) = srg_params(&g) {
        doc.insert("srg".into(), json!({ "v": v, "k": k, "lambda": lambda, "mu": mu }));
    }
    if aut || profile || census {
        let group = match automorphism_group(&g) {
            Ok(group) => group,
            Err(e) => return budget_exhausted(fmt, &e.to_string()),
        };
        doc.insert("aut-order".into(), group.order().to_string().into());
        if profile {
            match fixity_profile(&g, &group, cfg.parallelism, cfg.enum_budget) {
                Ok(map) => {
                    let obj: Map<String, Value> =
                        map.into_iter().map(|(f, n)| (f.to_string(), n.into())).collect();
                    doc.insert("fixity-profile".into(), Value::Object(obj));
                }
                Err(e) => return budget_exhausted(fmt, &e.to_string()),
            }
        }
        if census {
            match substructure_census(&g, &group, cfg) {
                Ok(obj) => {
                    doc.insert("census".into(), obj);
                }
                Err(msg) => return budget_exhausted(fmt, &msg),
            }
        }
    }
    emit(fmt, &Value::Object(doc));
    0
}

/// Tally of fixed-substructure cases over every nonidentity collineation.
fn substructure_census(
    g: &IncidenceGeometry,
    group: &PermGroup,
    cfg: &Config,
) -> Result<Value, String> {
    if group.order() > nat(cfg.enum_budget) {
        return Err(format!(
            "census needs whole-group enumeration; order {} exceeds budget {}",
            group.order(),
            cfg.enum_budget
        ));
    }
    let order = verify_gq(g).map_err(|v| v.to_string())?;
    let chunks = group.rank_chunks(128);
    let locals = gqprim::par::map_collect(cfg.parallelism, chunks, |(lo, hi)| {
        let mut tally: std::collections::BTreeMap<&'static str, u64> = Default::default();
        for el in group.stream_range(lo, hi) {
            if el.is_identity() {
                continue;
            }
            let theta = Collineation::from_point_perm(g, el).expect("group elements are collineations");
            let class = fixed_substructure(g, &order, &theta).expect("nonidentity by construction");
            *tally.entry(class.case.name()).or_insert(0) += 1;
        }
        tally
    });
    let mut total: std::collections::BTreeMap<&'static str, u64> = Default::default();
    for local in locals {
        for (name, n) in local {
            *total.entry(name).or_insert(0) += n;
        }
    }
    Ok(Value::Object(total.into_iter().map(|(k, v)| (k.to_string(), v.into())).collect()))
}

/// Groups with an embedded faithful permutation model.
fn perm_model(g: &GroupId) -> Option<PermGroup> {
    match g {
        GroupId::Alt(n) if (5..=20).contains(n) => Some(alternating(*n as usize)),
        GroupId::Sporadic(name) if name == "M11" => Some(mathieu11()),
        GroupId::Sporadic(name) if name == "J1" => Some(janko1()),
        _ => None,
    }
}

fn classes_of(gp: &PermGroup, cfg: &Config) -> Result<Classes, String> {
    conjugacy_classes(gp, cfg.enum_budget)
        .map_err(|e| format!("group order {} exceeds enumeration budget {}", e.order, e.budget))
}

fn cmd_partition(fmt: Format, cfg: &Config, group: &str, r: u32, target: u64, enum_subsets: bool, cap: usize) -> i32 {
    let gid = match parse_group(group) {
        Ok(g) => g,
        Err(msg) => return usage_error(&msg),
    };
    if !(1..=4).contains(&r) {
        return usage_error("--r must be in 1..=4");
    }
    let Some(gp) = perm_model(&gid) else {
        return usage_error(&format!("no embedded permutation model for {gid}"));
    };
    let classes = match classes_of(&gp, cfg) {
        Ok(c) => c,
        Err(msg) => return budget_exhausted(fmt, &msg),
    };
    let sizes: Vec<u64> = if r == 1 {
        classes.sizes[1..].to_vec()
    } else {
        let mut sizes = Vec::new();
        for (size, mult) in product_class_sizes(&classes.class_data(), r) {
            let Some(size) = size.to_u64() else {
                return budget_exhausted(fmt, "a product class size exceeds 64 bits");
            };
            let copies = if size == 1 { mult - 1 } else { mult };
            sizes.extend(std::iter::repeat(size).take(copies as usize));
        }
        sizes
    };
    let reachable = match partition_exists(&sizes, target, cfg.dp_bits_budget) {
        Ok(b) => b,
        Err(e) => return budget_exhausted(fmt, &e.to_string()),
    };
    let mut doc = Map::new();
    doc.insert("group".into(), gid.to_string().into());
    doc.insert("r".into(), r.into());
    doc.insert("target".into(), target.into());
    doc.insert("class-sizes".into(), (sizes.len() as u64).into());
    doc.insert("reachable".into(), reachable.into());
    if enum_subsets {
        let found = enumerate_partitions(&sizes, target, cap);
        doc.insert("subsets".into(), (found.subsets.len() as u64).into());
        doc.insert("truncated".into(), found.truncated.into());
        let listed: Vec<Value> = found
            .subsets
            .iter()
            .map(|subset| Value::Array(subset.iter().map(|&i| sizes[i].into()).collect()))
            .collect();
        doc.insert("subset-sizes".into(), Value::Array(listed));
    }
    emit(fmt, &Value::Object(doc));
    0
}

fn cmd_pds(fmt: Format, cfg: &Config, group: &str, r: u32, s: u64, t: u64, cap: usize) -> i32 {
    let gid = match parse_group(group) {
        Ok(g) => g,
        Err(msg) => return usage_error(&msg),
    };
    if r < 1 {
        return usage_error("--r must be at least 1");
    }
    if s < 2 || t < 2 {
        return usage_error("thick quadrangles need s, t >= 2");
    }
    let Some(gp) = perm_model(&gid) else {
        return usage_error(&format!("no embedded permutation model for {gid}"));
    };
    // exhaustive counting over T^r: gated by element count, and kept small
    // unless --long raises the ceiling
    let budget = if cfg.long_tests { cfg.enum_budget } else { cfg.enum_budget.min(10_000_000) };
    if pow(&gp.order(), r) > nat(budget) {
        return budget_exhausted(
            fmt,
            &format!(
                "|{gid}|^{r} = {} exceeds the element budget {budget}; pass --long to raise it",
                pow(&gp.order(), r)
            ),
        );
    }
    let classes = match classes_of(&gp, cfg) {
        Ok(c) => c,
        Err(msg) => return budget_exhausted(fmt, &msg),
    };
    let products = match class_products(&gp, &classes, cfg.enum_budget) {
        Ok(p) => p,
        Err(e) => return budget_exhausted(fmt, &e.to_string()),
    };
    let items = power_classes(&classes, r);
    let sizes: Vec<u64> = items.iter().map(|(_, size)| *size).collect();
    let (lambda, mu) = analyses::srg_lambda_mu(s, t);
    let target = s * (t + 1);
    let found = enumerate_partitions(&sizes, target, cap);
    let mut passes = 0u64;
    let mut first_pass: Option<Value> = None;
    for subset in &found.subsets {
        let d: BTreeSet<Vec<u32>> = subset.iter().map(|&i| items[i].0.clone()).collect();
        match pds_check(&products, r, &d, lambda, mu) {
            Ok(PdsVerdict::Pass) => {
                passes += 1;
                if first_pass.is_none() {
                    first_pass = Some(Value::Array(
                        subset.iter().map(|&i| sizes[i].into()).collect(),
                    ));
                }
            }
            Ok(PdsVerdict::Fail { .. }) => {}
            Err(e) => return budget_exhausted(fmt, &e.to_string()),
        }
    }
    let mut doc = Map::new();
    doc.insert("group".into(), gid.to_string().into());
    doc.insert("r".into(), r.into());
    doc.insert("s".into(), s.into());
    doc.insert("t".into(), t.into());
    doc.insert("target".into(), target.into());
    doc.insert("lambda".into(), lambda.into());
    doc.insert("mu".into(), mu.into());
    doc.insert("candidates".into(), (found.subsets.len() as u64).into());
    doc.insert("truncated".into(), found.truncated.into());
    doc.insert("passes".into(), passes.into());
    if let Some(fp) = first_pass {
        doc.insert("first-pass-sizes".into(), fp);
    }
    emit(fmt, &Value::Object(doc));
    if found.truncated {
        2
    } else if passes > 0 {
        1
    } else {
        0
    }
}

fn cmd_sd(fmt: Format, group: &str, k: u32, r: u32) -> i32 {
    let gid = match parse_group(group) {
        Ok(g) => g,
        Err(msg) => return usage_error(&msg),
    };
    if k < 2 {
        return usage_error("--k must be at least 2 (a diagonal needs two factors)");
    }
    if !(1..=4).contains(&r) {
        return usage_error("--r must be in 1..=4");
    }
    match analyses::sd_scenario(&gid, k, r) {
        Ok(rep) => emit_report(fmt, &rep),
        Err(e) => usage_error(&e.to_string()),
    }
}

fn cmd_fixity_scenario(fmt: Format, id: Option<&str>, list: bool) -> i32 {
    let rows = analyses::fixity_rows();
    if list {
        let listed: Vec<Value> = rows
            .iter()
            .map(|row| {
                json!({
                    "id": row.id,
                    "degree": row.degree().to_string(),
                    "r": row.r,
                    "witness-fixity": row.witness_fixity().to_string(),
                    "description": row.description,
                })
            })
            .collect();
        emit(fmt, &Value::Array(listed));
        return 0;
    }
    let selected: Vec<_> = match id {
        Some(id) => {
            let Some(row) = rows.iter().find(|row| row.id == id) else {
                return usage_error(&format!("unknown scenario id `{id}`; try --list"));
            };
            vec![row]
        }
        None => rows.iter().collect(),
    };
    if let [row] = selected.as_slice() {
        return emit_report(fmt, &row.run());
    }
    let reports: Vec<ScenarioReport> = selected.iter().map(|row| row.run()).collect();
    let code = reports.iter().map(|rep| conclusion_code(rep.conclusion)).max().unwrap_or(0);
    emit(fmt, &serde_json::to_value(&reports).expect("reports serialize"));
    code
}

fn cmd_replicate(fmt: Format, cfg: &Config, q_max: u64) -> i32 {
    if q_max < 2 {
        return usage_error("--q-max must be at least 2");
    }
    let report = gqprim::centralisers::replicate_claims(q_max, cfg.parallelism);
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| json!({ "anchor": v.anchor, "group": v.group.to_string(), "detail": v.detail }))
        .collect();
    let ok = violations.is_empty();
    emit(
        fmt,
        &json!({
            "q-max": q_max,
            "instances-checked": report.instances_checked,
            "violations": violations,
        }),
    );
    if ok {
        0
    } else {
        1
    }
}

fn cmd_bounds(fmt: Format, s: Option<u64>, t: Option<u64>, s_max: u64) -> i32 {
    match (s, t) {
        (Some(s), Some(t)) => {
            if s < 2 || t < 2 {
                return usage_error("thick quadrangles need s, t >= 2");
            }
            emit(fmt, &bound_row(s, t));
            0
        }
        (None, None) => {
            let pairs = admissible_pairs(s_max);
            let exceptions: Vec<Value> = pairs
                .iter()
                .filter_map(|&(s, t)| {
                    let rep = theorem_bound_report(&nat(s), &nat(t));
                    (!rep.four_fifths_holds).then(|| bound_row(s, t))
                })
                .collect();
            emit(
                fmt,
                &json!({
                    "s-max": s_max,
                    "admissible-pairs": pairs.len() as u64,
                    "four-fifths-exceptions": exceptions,
                }),
            );
            0
        }
        _ => usage_error("--s and --t go together; omit both for the sweep"),
    }
}

fn bound_row(s: u64, t: u64) -> Value {
    let rep = theorem_bound_report(&nat(s), &nat(t));
    let mut doc = Map::new();
    doc.insert("s".into(), s.into());
    doc.insert("t".into(), t.into());
    doc.insert("num-points".into(), rep.num_points.to_string().into());
    doc.insert("cap".into(), rep.cap.to_string().into());
    doc.insert("branch".into(), if s >= t + 3 { "grid" } else { "main" }.into());
    doc.insert("four-fifths-holds".into(), rep.four_fifths_holds.into());
    doc.insert("seven-ninths-holds".into(), rep.seven_ninths_holds.into());
    doc.insert("ninety-four-125ths-holds".into(), rep.ninety_four_125ths_holds.into());
    if let Some(sp2) = rep.s_plus_2 {
        doc.insert(
            "s-plus-2".into(),
            json!({
                "seven-ninths-strict": sp2.seven_ninths_strict,
                "thirteen-eighteenths-strict": sp2.thirteen_eighteenths_strict,
            }),
        );
    }
    Value::Object(doc)
}

// -------------------------------------------------------------- group parsing

fn parse_group(spec: &str) -> Result<GroupId, String> {
    let gid = parse_group_syntax(spec)?;
    gid.order().map_err(|e| e.to_string())?;
    Ok(gid)
}

fn parse_group_syntax(spec: &str) -> Result<GroupId, String> {
    if spec == "Tits" {
        return Ok(GroupId::Tits);
    }
    let Some((family, rest)) = spec.split_once(':') else {
        return Err(format!(
            "group spec `{spec}` must be Family:args — e.g. Alt:7, Spor:M11, A:n=2,q=4, Tits"
        ));
    };
    match family {
        "Alt" => rest
            .parse::<u64>()
            .map(GroupId::Alt)
            .map_err(|_| format!("Alt wants a degree, got `{rest}`")),
        "Spor" => Ok(GroupId::Sporadic(rest.to_string())),
        "A" | "2A" | "B" | "C" | "D" | "2D" => {
            let kv = parse_kv(rest, &["n", "q", "eps"])?;
            let n: u32 = require(&kv, "n")?.parse().map_err(|_| "n must be a small integer".to_string())?;
            let q: u64 = require(&kv, "q")?.parse().map_err(|_| "q must be an integer".to_string())?;
            let eps = kv.iter().find(|(k, _)| k == "eps").map(|(_, v)| v.as_str());
            match (family, eps) {
                ("A", None | Some("+")) => Ok(GroupId::A { n, q }),
                ("A", Some("-")) | ("2A", None) => Ok(GroupId::TwoA { n, q }),
                ("B", None) => Ok(GroupId::B { n, q }),
                ("C", None) => Ok(GroupId::C { n, q }),
                ("D", Some("+")) => Ok(GroupId::D { n, q }),
                ("D", Some("-")) | ("2D", None) => Ok(GroupId::TwoD { n, q }),
                ("D", None) => Err("family D needs eps=+ or eps=-".to_string()),
                (_, Some(e)) => Err(format!("family {family} does not take eps={e}")),
                (other, None) => unreachable!("family {other} handled above"),
            }
        }
        "E6" => {
            let kv = parse_kv(rest, &["q", "eps"])?;
            let q: u64 = require(&kv, "q")?.parse().map_err(|_| "q must be an integer".to_string())?;
            match kv.iter().find(|(k, _)| k == "eps").map(|(_, v)| v.as_str()) {
                None | Some("+") => Ok(GroupId::E6(q)),
                Some("-") => Ok(GroupId::TwoE6(q)),
                Some(e) => Err(format!("eps must be + or -, got `{e}`")),
            }
        }
        "2E6" | "E7" | "E8" | "F4" | "2F4" | "G2" | "2G2" | "3D4" | "2B2" => {
            let kv = parse_kv(rest, &["q"])?;
            let q: u64 = require(&kv, "q")?.parse().map_err(|_| "q must be an integer".to_string())?;
            Ok(match family {
                "2E6" => GroupId::TwoE6(q),
                "E7" => GroupId::E7(q),
                "E8" => GroupId::E8(q),
                "F4" => GroupId::F4(q),
                "2F4" => GroupId::TwoF4(q),
                "G2" => GroupId::G2(q),
                "2G2" => GroupId::TwoG2(q),
                "3D4" => GroupId::ThreeD4(q),
                _ => GroupId::TwoB2(q),
            })
        }
        other => Err(format!("unknown group family `{other}`")),
    }
}

fn parse_kv(rest: &str, allowed: &[&str]) -> Result<Vec<(String, String)>, String> {
    let mut out: Vec<(String, String)> = Vec::new();
    for part in rest.split(',') {
        let Some((k, v)) = part.split_once('=') else {
            return Err(format!("expected key=value, got `{part}`"));
        };
        if !allowed.contains(&k) {
            return Err(format!("unknown key `{k}` (allowed: {})", allowed.join(", ")));
        }
        if out.iter().any(|(seen, _)| seen == k) {
            return Err(format!("duplicate key `{k}`"));
        }
        out.push((k.to_string(), v.to_string()));
    }
    Ok(out)
}

fn require<'a>(kv: &'a [(String, String)], key: &str) -> Result<&'a str, String> {
    kv.iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| format!("missing required key `{key}`"))
}

// ------------------------------------------------------------------ emitters

fn emit(fmt: Format, v: &Value) {
    match fmt {
        Format::Json => println!("{}", serde_json::to_string_pretty(v).expect("value serializes")),
        Format::Text => print!("{}", render_text(v, 0)),
        Format::Csv => print!("{}", render_csv(v)),
    }
}

fn render_text(v: &Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            let mut out = String::new();
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        out.push_str(&render_text(val, indent + 1));
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(val))),
                }
            }
            out
        }
        Value::Array(items) => {
            let mut out = String::new();
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        out.push_str(&render_text(item, indent + 1));
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar(item))),
                }
            }
            out
        }
        _ => format!("{pad}{}\n", scalar(v)),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// CSV view: an array of flat objects becomes a table over the sorted key
/// union; a scenario report becomes its comparison table; anything else
/// becomes key,value rows with nested parts JSON-encoded.
fn render_csv(v: &Value) -> String {
    if let Value::Object(map) = v {
        if let Some(Value::Array(comparisons)) = map.get("comparisons") {
            return table_csv(comparisons);
        }
    }
    if let Value::Array(rows) = v {
        if rows.iter().all(|r| matches!(r, Value::Object(_))) && !rows.is_empty() {
            return table_csv(rows);
        }
    }
    let mut out = String::from("key,value\n");
    if let Value::Object(map) = v {
        for (k, val) in map {
            let rendered = match val {
                Value::Object(_) | Value::Array(_) => val.to_string(),
                other => scalar(other),
            };
            out.push_str(&format!("{},{}\n", csv_field(k), csv_field(&rendered)));
        }
    } else {
        out.push_str(&format!("value,{}\n", csv_field(&scalar(v))));
    }
    out
}

fn table_csv(rows: &[Value]) -> String {
    let mut keys: BTreeSet<&str> = BTreeSet::new();
    for row in rows {
        if let Value::Object(map) = row {
            keys.extend(map.keys().map(String::as_str));
        }
    }
    let header: Vec<&str> = keys.into_iter().collect();
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let Value::Object(map) = row else { continue };
        let fields: Vec<String> = header
            .iter()
            .map(|k| {
                map.get(*k)
                    .map(|val| match val {
                        Value::Object(_) | Value::Array(_) => csv_field(&val.to_string()),
                        other => csv_field(&scalar(other)),
                    })
                    .unwrap_or_default()
            })
            .collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}
