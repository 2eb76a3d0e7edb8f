//! Values a claim computes or expects, and how two of them compare.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::verdict::MultiplicityVerdict as MV;

/// A multiplicity as an interval. Serialized as a bare number when exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Count {
    pub lo: u64,
    pub hi: Option<u64>,
}

impl Count {
    pub fn exact(n: u64) -> Self {
        Count { lo: n, hi: Some(n) }
    }

    pub fn at_least(n: u64) -> Self {
        Count { lo: n, hi: None }
    }

    pub fn exact_value(self) -> Option<u64> {
        (self.hi == Some(self.lo)).then_some(self.lo)
    }

    pub fn is_zero(self) -> bool {
        self.hi == Some(0)
    }

    pub fn add(self, o: Count) -> Count {
        Count {
            lo: self.lo + o.lo,
            hi: self.hi.zip(o.hi).map(|(x, y)| x + y),
        }
    }

    /// `(self - o)⁺` over all values in both intervals.
    pub fn sub_pos(self, o: Count) -> Count {
        let lo = o.hi.map_or(0, |h| self.lo.saturating_sub(h));
        let hi = self.hi.map(|h| h.saturating_sub(o.lo));
        Count { lo, hi }
    }
}

impl From<&MV> for Count {
    fn from(v: &MV) -> Self {
        Count { lo: v.lo, hi: v.hi }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lo, self.hi) {
            (l, Some(h)) if l == h => write!(f, "{l}"),
            (l, Some(h)) => write!(f, "{l}..{h}"),
            (l, None) => write!(f, ">={l}"),
        }
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if let Some(n) = self.exact_value() {
            return s.serialize_u64(n);
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("lo", &self.lo)?;
        m.serialize_entry("hi", &self.hi)?;
        m.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Flag(bool),
    Count(Count),
    /// Named multiplicities. Absent keys count as `0`.
    Table(BTreeMap<String, Value>),
    /// Filtration layers; only their sum is compared.
    Layers(Vec<Value>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Inconclusive,
    Fail,
}

impl Outcome {
    fn worst(self, o: Outcome) -> Outcome {
        self.max(o)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Inconclusive => "inconclusive",
            Outcome::Fail => "fail",
        })
    }
}

/// One place where computed and expected values differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub key: String,
    pub computed: String,
    pub expected: String,
    pub outcome: Outcome,
}

impl Value {
    pub fn table<K: Into<String>>(it: impl IntoIterator<Item = (K, Value)>) -> Value {
        Value::Table(it.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    /// Layers collapse to the table of their sum.
    pub fn flattened(&self) -> Value {
        match self {
            Value::Layers(ls) => {
                let mut sum: BTreeMap<String, Count> = BTreeMap::new();
                for l in ls {
                    if let Value::Table(t) = l.flattened() {
                        for (k, v) in t {
                            if let Value::Count(c) = v {
                                let e = sum.entry(k).or_insert(Count::exact(0));
                                *e = e.add(c);
                            }
                        }
                    }
                }
                Value::table(sum.into_iter().map(|(k, c)| (k, Value::Count(c))))
            }
            v => v.clone(),
        }
    }

    fn brief(&self) -> String {
        match self {
            Value::Flag(b) => b.to_string(),
            Value::Count(c) => c.to_string(),
            Value::Table(t) => format!("{} entries", t.len()),
            Value::Layers(l) => format!("{} layers", l.len()),
        }
    }
}

fn compare_count(c: Count, e: Count) -> Outcome {
    let below = |n: u64| c.hi.is_some_and(|h| h < n);
    match e.hi {
        Some(n) if e.lo == n => {
            if c.exact_value() == Some(n) {
                Outcome::Pass
            } else if c.lo > n || below(n) {
                Outcome::Fail
            } else {
                Outcome::Inconclusive
            }
        }
        _ => {
            if c.lo >= e.lo && e.hi.is_none_or(|h| c.hi.is_some_and(|ch| ch <= h)) {
                Outcome::Pass
            } else if below(e.lo) || e.hi.is_some_and(|h| c.lo > h) {
                Outcome::Fail
            } else {
                Outcome::Inconclusive
            }
        }
    }
}

/// Walks both values; the outcome is the worst over all entries.
pub fn compare(computed: &Value, expected: &Value) -> (Outcome, Vec<Mismatch>) {
    let mut out = Vec::new();
    let o = walk("", &computed.flattened(), &expected.flattened(), &mut out);
    (o, out)
}

fn walk(key: &str, c: &Value, e: &Value, out: &mut Vec<Mismatch>) -> Outcome {
    let mut record = |o: Outcome, c: &Value, e: &Value| {
        if o != Outcome::Pass {
            out.push(Mismatch {
                key: key.to_string(),
                computed: c.brief(),
                expected: e.brief(),
                outcome: o,
            });
        }
        o
    };
    if matches!(c, Value::Layers(_)) || matches!(e, Value::Layers(_)) {
        return walk(key, &c.flattened(), &e.flattened(), out);
    }
    match (c, e) {
        (Value::Flag(x), Value::Flag(y)) => {
            record(if x == y { Outcome::Pass } else { Outcome::Fail }, c, e)
        }
        (Value::Count(x), Value::Count(y)) => record(compare_count(*x, *y), c, e),
        (Value::Table(x), Value::Table(y)) => {
            let zero = Value::Count(Count::exact(0));
            let mut o = Outcome::Pass;
            let keys: std::collections::BTreeSet<&String> = x.keys().chain(y.keys()).collect();
            for k in keys {
                let sub = if key.is_empty() {
                    k.clone()
                } else {
                    format!("{key}/{k}")
                };
                let cv = x.get(k).unwrap_or(&zero);
                let ev = y.get(k).unwrap_or(&zero);
                o = o.worst(walk(&sub, cv, ev, out));
            }
            o
        }
        _ => record(Outcome::Fail, c, e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cnt(lo: u64, hi: Option<u64>) -> Value {
        Value::Count(Count { lo, hi })
    }

    #[test]
    fn exact_expectations() {
        assert_eq!(compare(&cnt(2, Some(2)), &cnt(2, Some(2))).0, Outcome::Pass);
        assert_eq!(compare(&cnt(3, Some(3)), &cnt(2, Some(2))).0, Outcome::Fail);
        assert_eq!(
            compare(&cnt(1, Some(3)), &cnt(2, Some(2))).0,
            Outcome::Inconclusive
        );
        assert_eq!(compare(&cnt(0, Some(1)), &cnt(2, Some(2))).0, Outcome::Fail);
        assert_eq!(
            compare(&cnt(1, None), &cnt(2, Some(2))).0,
            Outcome::Inconclusive
        );
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(compare(&cnt(2, Some(2)), &cnt(1, None)).0, Outcome::Pass);
        assert_eq!(compare(&cnt(0, Some(0)), &cnt(1, None)).0, Outcome::Fail);
        assert_eq!(
            compare(&cnt(0, None), &cnt(1, None)).0,
            Outcome::Inconclusive
        );
    }

    #[test]
    fn tables_default_to_zero() {
        let c = Value::table([("x", cnt(1, Some(1))), ("y", cnt(0, Some(1)))]);
        let e = Value::table([("x", cnt(1, Some(1)))]);
        let (o, m) = compare(&c, &e);
        assert_eq!(o, Outcome::Inconclusive);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].key, "y");

        let e = Value::table([("x", cnt(1, Some(1))), ("z", cnt(1, Some(1)))]);
        assert_eq!(compare(&c, &e).0, Outcome::Fail);
    }

    #[test]
    fn layers_compare_through_their_sum() {
        let l = Value::Layers(vec![
            Value::table([("x", cnt(1, Some(1)))]),
            Value::table([("x", cnt(1, Some(1))), ("y", cnt(1, Some(1)))]),
        ]);
        let c = Value::table([("x", cnt(2, Some(2))), ("y", cnt(1, Some(1)))]);
        assert_eq!(compare(&c, &l).0, Outcome::Pass);
    }

    #[test]
    fn interval_subtraction() {
        let a = Count { lo: 1, hi: Some(3) };
        let b = Count::exact(1);
        assert_eq!(a.sub_pos(b), Count { lo: 0, hi: Some(2) });
        assert_eq!(Count::exact(1).sub_pos(Count::exact(1)), Count::exact(0));
        assert_eq!(
            Count::at_least(2).sub_pos(Count { lo: 0, hi: None }),
            Count { lo: 0, hi: None }
        );
    }
}
