//! Machine-readable scenario reports.
//!
//! Every analysis records the exact integer comparisons it performed —
//! rendered as decimal strings so arbitrarily large values survive the trip
//! through JSON — together with a three-valued verdict.

use crate::nat::Nat;
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Overall verdict of a scenario.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Conclusion {
    /// Every comparison came out the way the published argument requires.
    #[serde(rename = "consistent-with-paper")]
    ConsistentWithPaper,
    /// The recorded inequalities rule the scenario out.
    #[serde(rename = "contradiction-found")]
    ContradictionFound,
    /// No definite answer: an incomplete factorization, a one-sided bound
    /// that neither certifies nor excludes, or a surviving solution.
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::ConsistentWithPaper => "consistent-with-paper",
            Conclusion::ContradictionFound => "contradiction-found",
            Conclusion::Inconclusive => "inconclusive",
        })
    }
}

/// One exact comparison, keyed by a stable anchor id. `relation` is the
/// relation that actually held, not the one hoped for.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub lhs: String,
    pub rhs: String,
    pub relation: &'static str,
    pub anchor: String,
}

/// A full scenario run: what went in, every comparison made, the verdict.
#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub inputs: BTreeMap<String, String>,
    pub comparisons: Vec<Comparison>,
    pub conclusion: Conclusion,
}

impl ScenarioReport {
    pub fn new(scenario: impl Into<String>) -> Self {
        ScenarioReport {
            scenario: scenario.into(),
            inputs: BTreeMap::new(),
            comparisons: Vec::new(),
            conclusion: Conclusion::Inconclusive,
        }
    }

    pub fn input(&mut self, key: &str, value: impl fmt::Display) {
        self.inputs.insert(key.to_string(), value.to_string());
    }

    /// Records lhs vs rhs under the anchor and returns the observed order.
    pub fn compare(&mut self, anchor: &str, lhs: &Nat, rhs: &Nat) -> Ordering {
        let ord = lhs.cmp(rhs);
        self.comparisons.push(Comparison {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            relation: relation_str(ord),
            anchor: anchor.to_string(),
        });
        ord
    }

    /// The first comparison recorded under `anchor`, if any.
    pub fn comparison(&self, anchor: &str) -> Option<&Comparison> {
        self.comparisons.iter().find(|c| c.anchor == anchor)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn relation_str(ord: Ordering) -> &'static str {
    match ord {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nat::nat;

    #[test]
    fn comparisons_record_the_relation_that_actually_held() {
        let mut rep = ScenarioReport::new("probe");
        assert_eq!(rep.compare("a", &nat(3), &nat(5)), Ordering::Less);
        assert_eq!(rep.compare("b", &nat(5), &nat(5)), Ordering::Equal);
        assert_eq!(rep.compare("c", &nat(7), &nat(5)), Ordering::Greater);
        let rels: Vec<&str> = rep.comparisons.iter().map(|c| c.relation).collect();
        assert_eq!(rels, ["<", "=", ">"]);
        assert_eq!(rep.comparison("b").unwrap().lhs, "5");
        assert!(rep.comparison("missing").is_none());
    }

    #[test]
    fn json_uses_the_wire_names_for_conclusions() {
        let mut rep = ScenarioReport::new("probe");
        rep.input("degree", 42);
        rep.compare("only", &nat(1), &nat(2));
        rep.conclusion = Conclusion::ContradictionFound;
        let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(v["scenario"], "probe");
        assert_eq!(v["conclusion"], "contradiction-found");
        assert_eq!(v["inputs"]["degree"], "42");
        assert_eq!(v["comparisons"][0]["lhs"], "1");
        assert_eq!(v["comparisons"][0]["relation"], "<");
        assert_eq!(v["comparisons"][0]["anchor"], "only");
        assert_eq!(Conclusion::Inconclusive.to_string(), "inconclusive");
        assert_eq!(Conclusion::ConsistentWithPaper.to_string(), "consistent-with-paper");
    }
}
