//! Scenario-level analyses: the counting arguments that pin down or rule
//! out candidate parameter sets, each reported as an exact comparison
//! trail with a three-valued verdict.
//!
//! Conventions shared by every scenario here:
//! * a product action of rank r on a base of degree Ω gives |Ω|^r points,
//!   and a collineation fixing f base points fixes at least f·|Ω|^{r−1};
//! * a fixed-point count W excludes an admissible (s,t) when W exceeds the
//!   substructure cap (`lemma22_max_fix`), or — in the t = s+2, s ≥ 3
//!   regime where the sharpened power bound is unconditional — when
//!   W⁹ ≥ X⁷ for X the point count;
//! * "contradiction-found" always means the hypothetical configuration is
//!   refuted, which is what the published eliminations assert.

mod partitions;
mod pds;
mod report;

pub use partitions::{enumerate_partitions, partition_exists, visit_partitions, PartitionEnumeration};
pub use pds::{class_products, pds_check, pds_check_group, power_classes, ClassProducts, PdsVerdict};
pub use report::{Comparison, Conclusion, ScenarioReport};

use crate::catalog::{self, GroupId, InvalidGroup};
use crate::centralisers::{alt_max_centraliser, witness_centraliser, WitnessOutcome};
use crate::data;
use crate::nat::{integer_root, nat, parse_nat, pow, Nat};
use crate::par::{self, Parallelism};
use crate::solver::{lemma22_max_fix, solve, GQParams};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("target {target} does not fit the subset-sum bit budget {budget}")]
    DpBudget { target: u64, budget: u64 },
    #[error("group power of order {order} exceeds the enumeration budget {budget}")]
    PowerBudget { order: String, budget: u64 },
    #[error("candidate class tuple of length {got} in a rank-{expected} product")]
    TupleLength { got: usize, expected: usize },
    #[error("unknown class id {0}")]
    UnknownClass(u32),
    #[error("the identity class cannot belong to a difference set")]
    IdentityInCandidateSet,
    #[error(transparent)]
    Group(#[from] InvalidGroup),
}

/// Fixed-point count of a diagonal collineation in the product action: an
/// element with centraliser order `c` in the base group T, repeated along
/// a diagonal of T^k and padded with identities across the r product
/// coordinates, fixes c^{k−1}·|T|^{(k−1)(r−1)} points.
///
/// `c` must come from a nonidentity element, so `c < |T|`.
pub fn diagonal_fixed_points(c: &Nat, torder: &Nat, k: u32, r: u32) -> Nat {
    assert!(k >= 2, "diagonal subgroups need k >= 2");
    assert!((1..=4).contains(&r), "product rank out of the studied range");
    assert!(c < torder, "identity centralisers are excluded");
    pow(c, k - 1) * pow(torder, (k - 1) * (r - 1))
}

/// How a centraliser value relates to the true maximum over nonidentity
/// elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CentraliserKind {
    Exact,
    LowerBound,
    UpperBound,
}

fn max_centraliser(t: &GroupId) -> Result<(Nat, CentraliserKind, String), InvalidGroup> {
    match t {
        GroupId::Alt(n) => Ok((
            alt_max_centraliser(*n)?,
            CentraliserKind::Exact,
            "cycle-type maximiser".to_string(),
        )),
        // the sporadic witness is |T| / (smallest nontrivial class), which
        // is the maximum itself
        GroupId::Sporadic(_) | GroupId::Tits => match witness_centraliser(t)? {
            WitnessOutcome::Witness(w) => Ok((w.value, CentraliserKind::Exact, w.element_description)),
            WitnessOutcome::UpperBoundOnly { .. } => unreachable!("sporadic witnesses are exact"),
        },
        // a Lie-type witness is one concrete element: exact for that
        // element, but only a lower bound on the maximum
        _ => Ok(match witness_centraliser(t)? {
            WitnessOutcome::Witness(w) => (w.value, CentraliserKind::LowerBound, w.element_description),
            WitnessOutcome::UpperBoundOnly { bound, .. } => {
                (bound, CentraliserKind::UpperBound, "family-wide ceiling".to_string())
            }
        }),
    }
}

/// Simple-diagonal scenario: T^k on the cosets of a diagonal, degree
/// |T|^{k−1}, raised to the r-th product power. Checks the fifth-power
/// centraliser threshold, and for r = 3 also the admissible parameter
/// sets on |T|^{3(k−1)} points against the diagonal fixed-point witness.
pub fn sd_scenario(t: &GroupId, k: u32, r: u32) -> Result<ScenarioReport, InvalidGroup> {
    assert!(k >= 2, "diagonal subgroups need k >= 2");
    assert!((1..=4).contains(&r), "product rank out of the studied range");
    let torder = t.order()?;
    let mut rep = ScenarioReport::new(format!("sd-{}-k{}-r{}", slug(t), k, r));
    rep.input("group", t);
    rep.input("k", k);
    rep.input("r", r);
    rep.input("base-order", &torder);

    let (c, kind, desc) = max_centraliser(t)?;
    rep.input("centraliser", &c);
    rep.input("centraliser-element", &desc);
    rep.input(
        "centraliser-kind",
        match kind {
            CentraliserKind::Exact => "exact-maximum",
            CentraliserKind::LowerBound => "lower-bound",
            CentraliserKind::UpperBound => "upper-bound",
        },
    );
    // the scenario needs every nonidentity centraliser below |T|^{(5-r)/5}
    let ord = rep.compare("fifth-power-threshold", &pow(&c, 5), &pow(&torder, 5 - r));
    let threshold_holds = match (ord, kind) {
        (Ordering::Less, CentraliserKind::Exact | CentraliserKind::UpperBound) => Some(true),
        (Ordering::Less, CentraliserKind::LowerBound) => None,
        (_, CentraliserKind::Exact | CentraliserKind::LowerBound) => Some(false),
        (_, CentraliserKind::UpperBound) => None,
    };
    match threshold_holds {
        Some(false) => {
            rep.conclusion = Conclusion::ContradictionFound;
            return Ok(rep);
        }
        None => {
            rep.conclusion = Conclusion::Inconclusive;
            return Ok(rep);
        }
        Some(true) => {}
    }
    if r <= 2 {
        rep.conclusion = Conclusion::ConsistentWithPaper;
        return Ok(rep);
    }
    if r == 4 {
        // unreachable in practice: the threshold demands c⁵ < |T|, yet
        // every simple group has a centraliser above |T|^{1/5}
        rep.conclusion = Conclusion::Inconclusive;
        return Ok(rep);
    }

    // r = 3: the diagonal element must now fit inside an admissible
    // quadrangle on |T|^{3(k−1)} points
    let x = pow(&torder, 3 * (k - 1));
    rep.input("num-points", &x);
    let res = solve(&x);
    if !res.complete {
        rep.input("factorization", "incomplete");
        rep.conclusion = Conclusion::Inconclusive;
        return Ok(rep);
    }
    rep.compare("solution-count", &nat(res.params.len() as u64), &nat(0));
    if res.params.is_empty() {
        rep.conclusion = Conclusion::ContradictionFound;
        return Ok(rep);
    }
    let omega = pow(&torder, k - 1);
    let w = diagonal_fixed_points(&c, &torder, k, r);
    rep.input("diagonal-fixed-points", &w);
    let mut all_excluded = true;
    for (i, p) in res.params.iter().enumerate() {
        rep.input(&format!("solution-{i}"), format_args!("({}, {})", p.s, p.t));
        rep.compare(&format!("s{i}-s-vs-degree-minus-one"), &p.s, &(&omega - 1u32));
        rep.compare(&format!("s{i}-t-vs-degree-plus-one"), &p.t, &(&omega + 1u32));
        if !witness_excludes(&mut rep, &format!("s{i}-w0"), p, &x, &w) {
            all_excluded = false;
        }
    }
    rep.conclusion = if all_excluded { Conclusion::ContradictionFound } else { Conclusion::Inconclusive };
    Ok(rep)
}

/// Records the bound checks for one admissible solution against one
/// fixed-point count `w`; true when an applicable bound rules `w` out.
fn witness_excludes(rep: &mut ScenarioReport, label: &str, p: &GQParams, x: &Nat, w: &Nat) -> bool {
    let cap = lemma22_max_fix(&p.s, &p.t);
    let over_cap = rep.compare(&format!("{label}-fixed-cap"), w, &cap) == Ordering::Greater;
    let ord79 = rep.compare(&format!("{label}-seven-ninths"), &pow(w, 9), &pow(x, 7));
    // the 7/9-power bound is unconditional exactly in the t = s+2, s ≥ 3
    // regime; elsewhere it has small-order and grid exceptions, so it is
    // recorded but never used to exclude
    let seven_ninths_applies = p.t_eq_s_plus_2 && p.s >= nat(3);
    over_cap || (seven_ninths_applies && ord79 != Ordering::Less)
}

/// The five solved parameter rows of the direct-power sweep.
const EXPECTED_SWEEP_ROWS: [(&str, u32, u64, u64); 5] = [
    ("alt7", 1, 11, 19),
    ("alt8", 1, 19, 53),
    ("alt6", 2, 19, 341),
    ("m11", 2, 89, 7831),
    ("j1", 2, 419, 175141),
];

/// Sweeps every alternating and sporadic case that survives the
/// centraliser thresholds — Alt_n for n ≤ 18 and all sporadics at r = 1,
/// Alt_n for n ≤ 9 and the non-excluded sporadics at r = 2 — solving
/// |T|^r exactly. The five published parameter sets, and only those, must
/// appear.
pub fn reproduce_table3(mode: Parallelism) -> ScenarioReport {
    let mut sweep: Vec<(GroupId, u32)> = Vec::new();
    for n in 5..=18 {
        sweep.push((GroupId::Alt(n), 1));
    }
    for name in catalog::sporadic_names() {
        sweep.push((GroupId::Sporadic(name), 1));
    }
    sweep.push((GroupId::Tits, 1));
    for n in 5..=9 {
        sweep.push((GroupId::Alt(n), 2));
    }
    let r2_excluded = ["Suz", "Co2", "Fi22", "Fi23", "B", "M"];
    for name in catalog::sporadic_names() {
        if !r2_excluded.contains(&name.as_str()) {
            sweep.push((GroupId::Sporadic(name), 2));
        }
    }
    sweep.push((GroupId::Tits, 2));

    let mut rep = ScenarioReport::new("direct-power-parameter-sweep");
    rep.input("sweep-size", sweep.len());
    let solved = par::map_collect(mode, sweep, |(g, r)| {
        let order = g.order().expect("swept groups are valid");
        (g, r, solve(&pow(&order, r)))
    });

    let mut ok = true;
    let mut incomplete = 0u64;
    for (g, r, res) in &solved {
        let anchor = format!("{}-r{r}", slug(g));
        if !res.complete {
            incomplete += 1;
            rep.input(&anchor, "incomplete factorization");
        }
        let expected = EXPECTED_SWEEP_ROWS.iter().find(|(eg, er, ..)| *eg == slug(g) && er == r);
        match expected {
            Some((_, _, es, et)) => {
                ok &= rep.compare(&format!("{anchor}-solutions"), &nat(res.params.len() as u64), &nat(1))
                    == Ordering::Equal;
                if let Some(p) = res.params.first() {
                    ok &= rep.compare(&format!("{anchor}-s"), &p.s, &nat(*es)) == Ordering::Equal;
                    ok &= rep.compare(&format!("{anchor}-t"), &p.t, &nat(*et)) == Ordering::Equal;
                    let degree = &p.s * (&p.t + 1u32);
                    ok &= rep.compare(&format!("{anchor}-point-degree"), &degree, &nat(es * (et + 1)))
                        == Ordering::Equal;
                }
            }
            None => {
                ok &= rep.compare(&format!("{anchor}-solutions"), &nat(res.params.len() as u64), &nat(0))
                    == Ordering::Equal;
            }
        }
    }
    rep.input("incomplete-factorizations", incomplete);
    rep.conclusion = if !ok {
        Conclusion::ContradictionFound
    } else if incomplete > 0 {
        Conclusion::Inconclusive
    } else {
        Conclusion::ConsistentWithPaper
    };
    rep
}

/// Product-action fixity scenario: a group on omega^r points whose base
/// action admits a collineation fixing f base points, hence at least
/// f·omega^{r−1} points in the product, for each witness fixity f.
pub fn fixity_scenario(scenario: &str, omega: &Nat, r: u32, witnesses: &[(Nat, String)]) -> ScenarioReport {
    assert!((2..=4).contains(&r), "product rank out of the studied range");
    assert!(*omega >= nat(5), "base degree below any primitive action of interest");
    let mut rep = ScenarioReport::new(scenario);
    rep.input("degree", omega);
    rep.input("r", r);
    let x = pow(omega, r);
    rep.input("num-points", &x);
    for (j, (f, desc)) in witnesses.iter().enumerate() {
        rep.input(&format!("witness-{j}"), format_args!("{f} ({desc})"));
    }
    let res = solve(&x);
    if !res.complete {
        rep.input("factorization", "incomplete");
        rep.conclusion = Conclusion::Inconclusive;
        return rep;
    }
    rep.compare("solution-count", &nat(res.params.len() as u64), &nat(0));
    if res.params.is_empty() {
        rep.conclusion = Conclusion::ContradictionFound;
        return rep;
    }
    let omega_power = pow(omega, r - 1);
    let mut all_excluded = true;
    for (i, p) in res.params.iter().enumerate() {
        rep.input(&format!("solution-{i}"), format_args!("({}, {})", p.s, p.t));
        let mut excluded = false;
        for (j, (f, _)) in witnesses.iter().enumerate() {
            let w = f * &omega_power;
            if witness_excludes(&mut rep, &format!("s{i}-w{j}"), p, &x, &w) {
                excluded = true;
            }
        }
        all_excluded &= excluded;
    }
    rep.conclusion = if all_excluded { Conclusion::ContradictionFound } else { Conclusion::Inconclusive };
    rep
}

/// How a frozen scenario row's witness fixity is produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessSpec {
    /// A concrete fixed-point count for the base action.
    Exact(u64),
    /// The generic lower bound: the least f with f^k ≥ the degree.
    Root(u32),
}

/// One frozen product-action fixity scenario: a group H acting on the
/// cosets of a subgroup S, raised to the r-th power, with a known fixity
/// witness for the base action.
#[derive(Clone, Debug)]
pub struct FixityRow {
    pub id: String,
    pub h_order: Nat,
    pub s_order: Nat,
    pub r: u32,
    pub witness: WitnessSpec,
    pub description: String,
}

impl FixityRow {
    /// Base degree |Ω| = |H| / |S|.
    pub fn degree(&self) -> Nat {
        &self.h_order / &self.s_order
    }

    pub fn witness_fixity(&self) -> Nat {
        match self.witness {
            WitnessSpec::Exact(f) => nat(f),
            WitnessSpec::Root(k) => {
                let omega = self.degree();
                let (root, exact) = integer_root(&omega, k);
                if exact {
                    root
                } else {
                    root + 1u32
                }
            }
        }
    }

    pub fn run(&self) -> ScenarioReport {
        fixity_scenario(
            &self.id,
            &self.degree(),
            self.r,
            &[(self.witness_fixity(), self.description.clone())],
        )
    }
}

/// The embedded fixity scenario table.
pub fn fixity_rows() -> Vec<FixityRow> {
    let text = data::load("scenarios.txt");
    data::records(&text)
        .map(|line| {
            let mut parts = line.splitn(7, ',').map(str::trim);
            let mut field =
                |what: &str| parts.next().unwrap_or_else(|| panic!("scenario row missing {what}: {line}"));
            let id = field("id").to_string();
            let h_order = parse_nat(field("h_order")).expect("scenario h_order");
            let s_order = parse_nat(field("s_order")).expect("scenario s_order");
            let r: u32 = field("r").parse().expect("scenario r");
            let kind = field("witness_kind").to_string();
            let value: u64 = field("witness_value").parse().expect("scenario witness_value");
            let description = field("description").to_string();
            let witness = match kind.as_str() {
                "exact" => WitnessSpec::Exact(value),
                "root" => WitnessSpec::Root(u32::try_from(value).expect("root index fits u32")),
                other => panic!("unknown witness kind {other}: {line}"),
            };
            assert!(
                (&h_order % &s_order) == nat(0),
                "subgroup order must divide the group order: {id}"
            );
            FixityRow { id, h_order, s_order, r, witness, description }
        })
        .collect()
}

/// Sweeps |PSL₂(q)| over prime powers 4 ≤ q ≤ q_max looking for admissible
/// parameter sets; there should be none.
pub fn psl2_sweep(q_max: u64, mode: Parallelism) -> ScenarioReport {
    assert!(q_max >= 4, "PSL2(q) needs q >= 4");
    let qs: Vec<u64> = (4..=q_max).filter(|&q| catalog::prime_power(q).is_some()).collect();
    let mut rep = ScenarioReport::new("psl2-order-sweep");
    rep.input("q-max", q_max);
    rep.input("fields", qs.len());
    let outcomes = par::map_collect(mode, qs, |q| {
        let order = GroupId::A { n: 1, q }.order().expect("PSL2(q) valid for q >= 4");
        let res = solve(&order);
        (q, res.complete, res.params.len() as u64)
    });
    let mut hits = 0u64;
    let mut incomplete = 0u64;
    for (q, complete, count) in outcomes {
        if count > 0 {
            rep.compare(&format!("q{q}-solutions"), &nat(count), &nat(0));
            hits += count;
        }
        if !complete {
            incomplete += 1;
            rep.input(&format!("q{q}"), "incomplete factorization");
        }
    }
    rep.compare("total-solutions", &nat(hits), &nat(0));
    rep.input("incomplete-factorizations", incomplete);
    rep.conclusion = if hits > 0 {
        Conclusion::ContradictionFound
    } else if incomplete > 0 {
        Conclusion::Inconclusive
    } else {
        Conclusion::ConsistentWithPaper
    };
    rep
}

/// Point-graph strong-regularity parameters of a quadrangle of order
/// (s,t): adjacent pairs share λ = s−1 common neighbours, non-adjacent
/// pairs μ = t+1.
pub fn srg_lambda_mu(s: u64, t: u64) -> (u64, u64) {
    assert!(s >= 2 && t >= 2, "thick quadrangles only");
    (s - 1, t + 1)
}

fn slug(g: &GroupId) -> String {
    g.to_string()
        .chars()
        .filter(char::is_ascii_alphanumeric)
        .collect::<String>()
        .to_ascii_lowercase()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;
    use crate::nat::cmp_powers;
    use crate::perm::{alternating, conjugacy_classes, janko1, mathieu11, product_class_sizes, PermGroup};
    use num_traits::ToPrimitive;
    use std::collections::BTreeSet;

    fn nontrivial_sizes(group: &PermGroup, budget: u64) -> Vec<u64> {
        conjugacy_classes(group, budget).unwrap().sizes[1..].to_vec()
    }

    #[test]
    fn the_diagonal_fixed_point_count_matches_the_product_formula() {
        assert_eq!(diagonal_fixed_points(&nat(5), &nat(60), 2, 3), nat(18000));
        assert_eq!(diagonal_fixed_points(&nat(4), &nat(60), 2, 1), nat(4));
        assert_eq!(diagonal_fixed_points(&nat(9), &nat(360), 3, 2), nat(9 * 9 * 360 * 360));
    }

    #[test]
    #[should_panic(expected = "identity centralisers are excluded")]
    fn identity_centralisers_are_rejected() {
        diagonal_fixed_points(&nat(60), &nat(60), 2, 2);
    }

    #[test]
    fn alt5_cubed_diagonal_scenario_is_contradicted_by_both_power_bounds() {
        let rep = sd_scenario(&GroupId::Alt(5), 2, 3).unwrap();
        assert_eq!(rep.conclusion, Conclusion::ContradictionFound, "{}", rep.to_json());
        // the unique admissible solution is the obvious (59, 61)
        assert_eq!(rep.comparison("solution-count").unwrap().lhs, "1");
        assert_eq!(rep.comparison("s0-s-vs-degree-minus-one").unwrap().relation, "=");
        assert_eq!(rep.comparison("s0-t-vs-degree-plus-one").unwrap().relation, "=");
        let cap = rep.comparison("s0-w0-fixed-cap").unwrap();
        assert_eq!((cap.lhs.as_str(), cap.relation, cap.rhs.as_str()), ("18000", ">", "3720"));
        assert_eq!(rep.comparison("s0-w0-seven-ninths").unwrap().relation, ">");
        assert_eq!(cmp_powers(&nat(18000), 9, &nat(216000), 7), Ordering::Greater);
    }

    #[test]
    fn fourth_powers_always_violate_the_centraliser_threshold() {
        for n in 5..=9 {
            let rep = sd_scenario(&GroupId::Alt(n), 2, 4).unwrap();
            assert_eq!(rep.conclusion, Conclusion::ContradictionFound, "Alt{n}");
            assert_eq!(rep.comparison("fifth-power-threshold").unwrap().relation, ">");
        }
        let rep = sd_scenario(&GroupId::Sporadic("M11".into()), 2, 4).unwrap();
        assert_eq!(rep.conclusion, Conclusion::ContradictionFound);
    }

    #[test]
    fn alt6_squared_survives_the_r2_threshold() {
        let rep = sd_scenario(&GroupId::Alt(6), 2, 2).unwrap();
        assert_eq!(rep.conclusion, Conclusion::ConsistentWithPaper);
        let th = rep.comparison("fifth-power-threshold").unwrap();
        assert_eq!((th.lhs.as_str(), th.relation, th.rhs.as_str()), ("59049", "<", "46656000"));
        assert_eq!(rep.inputs.get("centraliser-kind").unwrap(), "exact-maximum");
    }

    #[test]
    fn the_sweep_reproduces_every_published_parameter_row() {
        let rep = reproduce_table3(Parallelism::default());
        assert_eq!(rep.conclusion, Conclusion::ConsistentWithPaper, "{}", rep.to_json());
        for (anchor, degree) in [
            ("alt7-r1-point-degree", "220"),
            ("alt8-r1-point-degree", "1026"),
            ("alt6-r2-point-degree", "6498"),
            ("m11-r2-point-degree", "697048"),
            ("j1-r2-point-degree", "73384498"),
        ] {
            let c = rep.comparison(anchor).unwrap();
            assert_eq!((c.lhs.as_str(), c.relation), (degree, "="), "{anchor}");
        }
        // spot-check a no-solution row of each kind
        assert_eq!(rep.comparison("alt5-r1-solutions").unwrap().lhs, "0");
        assert_eq!(rep.comparison("co1-r2-solutions").unwrap().lhs, "0");
    }

    #[test]
    fn small_class_sums_cannot_reach_the_published_degrees() {
        let budget = Config::default().dp_bits_budget;
        let a7 = nontrivial_sizes(&alternating(7), 1 << 20);
        assert!(!partition_exists(&a7, 220, budget).unwrap());
        let a8 = nontrivial_sizes(&alternating(8), 1 << 20);
        assert!(!partition_exists(&a8, 1026, budget).unwrap());
    }

    #[test]
    fn j1_squared_cannot_reach_its_degree_either() {
        let j1 = janko1();
        let classes = conjugacy_classes(&j1, 1 << 28).unwrap();
        assert_eq!(classes.num_classes(), 15);
        let mut items = Vec::new();
        for (size, mult) in product_class_sizes(&classes.class_data(), 2) {
            let size = size.to_u64().expect("pair class sizes fit u64");
            let copies = if size == 1 { mult - 1 } else { mult };
            items.extend(std::iter::repeat(size).take(copies as usize));
        }
        assert_eq!(items.len(), 224);
        assert!(!partition_exists(&items, 73384498, Config::default().dp_bits_budget).unwrap());
    }

    #[test]
    fn alt6_squared_has_680_candidate_partitions_and_all_fail_the_counts() {
        let a6 = alternating(6);
        let classes = conjugacy_classes(&a6, 1 << 20).unwrap();
        let items = power_classes(&classes, 2);
        assert_eq!(items.len(), 48);
        let sizes: Vec<u64> = items.iter().map(|(_, s)| *s).collect();
        let found = enumerate_partitions(&sizes, 6498, 10_000);
        assert!(!found.truncated);
        assert_eq!(found.subsets.len(), 680);
        let products = class_products(&a6, &classes, 1 << 20).unwrap();
        let (lambda, mu) = srg_lambda_mu(19, 341);
        for subset in &found.subsets {
            let d: BTreeSet<Vec<u32>> = subset.iter().map(|&i| items[i].0.clone()).collect();
            let verdict = pds_check(&products, 2, &d, lambda, mu).unwrap();
            assert!(matches!(verdict, PdsVerdict::Fail { .. }), "{subset:?}");
        }
    }

    #[test]
    fn m11_squared_candidates_all_fail_the_counts_too() {
        let m11 = mathieu11();
        let classes = conjugacy_classes(&m11, 1 << 28).unwrap();
        assert_eq!(classes.num_classes(), 10);
        let items = power_classes(&classes, 2);
        assert_eq!(items.len(), 99);
        let sizes: Vec<u64> = items.iter().map(|(_, s)| *s).collect();
        let found = enumerate_partitions(&sizes, 697048, 100_000);
        assert!(!found.truncated);
        assert_eq!(found.subsets.len(), 13476);
        let products = class_products(&m11, &classes, 1 << 28).unwrap();
        let (lambda, mu) = srg_lambda_mu(89, 7831);
        for subset in &found.subsets {
            let d: BTreeSet<Vec<u32>> = subset.iter().map(|&i| items[i].0.clone()).collect();
            let verdict = pds_check(&products, 2, &d, lambda, mu).unwrap();
            assert!(matches!(verdict, PdsVerdict::Fail { .. }), "{subset:?}");
        }
    }

    #[test]
    fn the_m23_product_scenario_is_contradicted_exactly_as_published() {
        let rows = fixity_rows();
        let m23 = rows.iter().find(|r| r.id == "m23-r3").unwrap();
        assert_eq!(m23.degree(), nat(40320));
        assert_eq!(m23.witness_fixity(), nat(5));
        let rep = m23.run();
        assert_eq!(rep.conclusion, Conclusion::ContradictionFound, "{}", rep.to_json());
        assert_eq!(rep.comparison("solution-count").unwrap().lhs, "1");
        assert_eq!(rep.inputs.get("solution-0").unwrap(), "(40319, 40321)");
        let cap = rep.comparison("s0-w0-fixed-cap").unwrap();
        assert_eq!(
            (cap.lhs.as_str(), cap.relation, cap.rhs.as_str()),
            ("8128512000", ">", "1625783040")
        );
        // the witness clears the substructure cap but not the 7/9 power,
        // so the cap is what excludes it
        assert_eq!(rep.comparison("s0-w0-seven-ninths").unwrap().relation, "<");

        let r4 = rows.iter().find(|r| r.id == "m23-r4").unwrap().run();
        assert_eq!(r4.conclusion, Conclusion::ContradictionFound);
        assert_eq!(r4.comparison("solution-count").unwrap().lhs, "0");
    }

    #[test]
    fn the_sym7_cube_scenario_is_contradicted_by_the_seven_ninths_power() {
        let rep = fixity_rows().iter().find(|r| r.id == "sym7-r3").unwrap().run();
        assert_eq!(rep.conclusion, Conclusion::ContradictionFound, "{}", rep.to_json());
        assert_eq!(rep.inputs.get("solution-0").unwrap(), "(119, 121)");
        assert_eq!(rep.comparison("s0-w0-seven-ninths").unwrap().relation, ">");
        assert_eq!(rep.comparison("s0-w0-fixed-cap").unwrap().relation, ">");
    }

    #[test]
    fn the_largest_scenario_row_still_factors_and_contradicts() {
        let rows = fixity_rows();
        let b = rows.iter().find(|r| r.id == "b-r3").unwrap();
        let omega = parse_nat("3843461129719173164826624000000").unwrap();
        assert_eq!(b.degree(), omega);
        let rep = b.run();
        assert_eq!(rep.conclusion, Conclusion::ContradictionFound, "{}", rep.to_json());
        assert_eq!(rep.comparison("solution-count").unwrap().lhs, "1");
        // the obvious solution (|Ω|−1, |Ω|+1)
        let expected = format!("({}, {})", &omega - 1u32, &omega + 1u32);
        assert_eq!(rep.inputs.get("solution-0").unwrap(), &expected);
    }

    #[test]
    fn every_frozen_scenario_row_is_contradicted() {
        let rows = fixity_rows();
        assert_eq!(rows.len(), 23);
        let witnesses: Vec<(&str, u64)> = rows
            .iter()
            .map(|r| (r.id.as_str(), r.witness_fixity().to_u64().unwrap()))
            .collect();
        for (id, expected) in [
            ("alt9-r3", 4),
            ("j1a-r3", 5),
            ("j1b-r3", 6),
            ("he-r3", 12),
            ("he2-r3", 12),
            ("th-a-r3", 50),
            ("j32-r3", 10),
            ("on2-r3", 36),
            ("th-b-r3", 241),
            ("m23-r3", 5),
            ("sym7-r3", 8),
            ("b-r3", 22),
        ] {
            let (_, got) = witnesses.iter().find(|(i, _)| *i == id).unwrap();
            assert_eq!(*got, expected, "{id}");
        }
        for row in &rows {
            let rep = row.run();
            assert_eq!(rep.conclusion, Conclusion::ContradictionFound, "{}: {}", row.id, rep.to_json());
        }
    }

    #[test]
    fn a_boundary_witness_never_triggers_a_contradiction() {
        // f·omega^{r−1} at or below the substructure cap must survive
        for omega in [40320u64, 120] {
            let rep = fixity_scenario("boundary-probe", &nat(omega), 3, &[(nat(1), "floor witness".into())]);
            assert_eq!(rep.conclusion, Conclusion::Inconclusive, "omega {omega}");
        }
    }

    #[test]
    fn psl2_orders_never_admit_quadrangle_parameters() {
        let rep = psl2_sweep(1000, Parallelism::default());
        assert_eq!(rep.conclusion, Conclusion::ConsistentWithPaper, "{}", rep.to_json());
        assert_eq!(rep.comparison("total-solutions").unwrap().lhs, "0");
        // the two smallest fields, individually
        for q in [4u64, 9] {
            let order = GroupId::A { n: 1, q }.order().unwrap();
            assert!(solve(&order).params.is_empty(), "q = {q}");
        }
    }

    #[test]
    fn reports_serialize_with_the_documented_fields() {
        let rep = sd_scenario(&GroupId::Alt(5), 2, 4).unwrap();
        assert_eq!(rep.scenario, "sd-alt5-k2-r4");
        let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(v["conclusion"], "contradiction-found");
        let comparisons = v["comparisons"].as_array().unwrap();
        assert!(!comparisons.is_empty());
        for c in comparisons {
            assert!(c["lhs"].is_string());
            assert!(c["rhs"].is_string());
            assert!(c["relation"].is_string());
            assert!(c["anchor"].is_string());
        }
    }
}
