//! Claim and suite reports, in JSON and plain text.

use std::fmt::{self, Write as _};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::half::HalfInt;

use super::oracle::OracleStats;
use super::value::{Mismatch, Outcome, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParamPoint {
    Triple(HalfInt, HalfInt, HalfInt),
    Pair(HalfInt, HalfInt),
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamPoint::Triple(a, b, c) => write!(f, "({a},{b},{c})"),
            ParamPoint::Pair(c, d) => write!(f, "(c={c},d={d})"),
        }
    }
}

impl Serialize for ParamPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<(&str, HalfInt)> = match *self {
            ParamPoint::Triple(a, b, c) => vec![("a", a), ("b", b), ("c", c)],
            ParamPoint::Pair(c, d) => vec![("c", c), ("d", d)],
        };
        let mut m = s.serialize_map(Some(entries.len()))?;
        for (k, v) in entries {
            m.serialize_entry(k, &v.to_string())?;
        }
        m.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub params: ParamPoint,
    pub verdict: Outcome,
    pub computed: Value,
    pub expected: Value,
    pub citation: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<Mismatch>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub oracle: OracleStats,
    /// Left out unless timings are requested, so that reports stay
    /// byte-identical across runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub reports: Vec<ClaimReport>,
    pub summary: Summary,
    /// Grid entries that could not be evaluated.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<String>,
    /// Inconsistencies the engine met between rules.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub conflicts: Vec<String>,
}

impl SuiteReport {
    pub fn new(mut reports: Vec<ClaimReport>, errors: Vec<String>, conflicts: Vec<String>) -> Self {
        reports.sort_by(|x, y| (&x.claim_id, x.params).cmp(&(&y.claim_id, y.params)));
        let mut summary = Summary::default();
        for r in &reports {
            match r.verdict {
                Outcome::Pass => summary.pass += 1,
                Outcome::Fail => summary.fail += 1,
                Outcome::Inconclusive => summary.inconclusive += 1,
            }
        }
        SuiteReport {
            reports,
            summary,
            errors,
            conflicts,
        }
    }

    pub fn any_failed(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.reports {
            let _ = write!(
                s,
                "{:<13} {:<25} {}",
                r.verdict.to_string().to_uppercase(),
                r.claim_id,
                r.params
            );
            if let Some(ms) = r.elapsed_ms {
                let _ = write!(s, "  {ms:.1} ms");
            }
            s.push('\n');
            for m in &r.mismatches {
                let _ = writeln!(
                    s,
                    "    {}: computed {}, expected {}",
                    m.key, m.computed, m.expected
                );
            }
            for v in &r.oracle.violations {
                let _ = writeln!(s, "    oracle: {v}");
            }
        }
        for e in &self.errors {
            let _ = writeln!(s, "error: {e}");
        }
        for c in &self.conflicts {
            let _ = writeln!(s, "conflict: {c}");
        }
        let _ = writeln!(
            s,
            "summary: {} pass, {} fail, {} inconclusive",
            self.summary.pass, self.summary.fail, self.summary.inconclusive
        );
        s
    }
}
