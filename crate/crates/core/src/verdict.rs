//! Multiplicity verdicts: closed integer intervals with an optional open top.

use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum VerdictKind {
    Exact { n: u64 },
    AtLeast { n: u64 },
    AtMost { n: u64 },
    Range { lo: u64, hi: u64 },
    Unknown,
}

/// What is known about a multiplicity: `lo ≤ m ≤ hi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityVerdict {
    pub lo: u64,
    /// `None` means no upper bound is known.
    pub hi: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl MultiplicityVerdict {
    pub fn exact(n: u64) -> Self {
        Self::range(n, n)
    }

    pub fn zero() -> Self {
        Self::exact(0)
    }

    pub fn unknown() -> Self {
        MultiplicityVerdict {
            lo: 0,
            hi: None,
            witness: None,
        }
    }

    pub fn range(lo: u64, hi: u64) -> Self {
        assert!(lo <= hi, "inconsistent verdict bounds {lo} > {hi}");
        MultiplicityVerdict {
            lo,
            hi: Some(hi),
            witness: None,
        }
    }

    pub fn at_least(lo: u64) -> Self {
        MultiplicityVerdict {
            lo,
            hi: None,
            witness: None,
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn kind(&self) -> VerdictKind {
        match (self.lo, self.hi) {
            (lo, Some(hi)) if lo == hi => VerdictKind::Exact { n: lo },
            (0, Some(hi)) => VerdictKind::AtMost { n: hi },
            (lo, Some(hi)) => VerdictKind::Range { lo, hi },
            (0, None) => VerdictKind::Unknown,
            (lo, None) => VerdictKind::AtLeast { n: lo },
        }
    }

    pub fn exact_value(&self) -> Option<u64> {
        (Some(self.lo) == self.hi).then_some(self.lo)
    }

    pub fn is_exact(&self) -> bool {
        self.exact_value().is_some()
    }

    /// Intersects two sound verdicts for the same quantity.
    ///
    /// Returns `None` when the intervals are disjoint, which means one of the
    /// inputs was not sound.
    pub fn meet(&self, other: &Self) -> Option<Self> {
        let lo = self.lo.max(other.lo);
        let hi = match (self.hi, other.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a,
            (None, b) => b,
        };
        if hi.is_some_and(|h| h < lo) {
            return None;
        }
        Some(MultiplicityVerdict {
            lo,
            hi,
            witness: self.witness.clone().or_else(|| other.witness.clone()),
        })
    }

    pub fn contains(&self, n: u64) -> bool {
        self.lo <= n && self.hi.is_none_or(|h| n <= h)
    }

    pub fn scale(&self, k: u64) -> Self {
        MultiplicityVerdict {
            lo: self.lo * k,
            hi: self.hi.map(|h| h * k),
            witness: self.witness.clone(),
        }
    }
}

impl Add for MultiplicityVerdict {
    type Output = MultiplicityVerdict;
    fn add(self, rhs: Self) -> Self {
        MultiplicityVerdict {
            lo: self.lo + rhs.lo,
            hi: self.hi.zip(rhs.hi).map(|(a, b)| a + b),
            witness: self.witness.or(rhs.witness),
        }
    }
}

impl Mul for MultiplicityVerdict {
    type Output = MultiplicityVerdict;
    fn mul(self, rhs: Self) -> Self {
        // A factor known to be zero kills any unbounded partner.
        let hi = match (self.hi, rhs.hi) {
            (Some(0), _) | (_, Some(0)) => Some(0),
            (Some(a), Some(b)) => Some(a * b),
            _ => None,
        };
        MultiplicityVerdict {
            lo: self.lo * rhs.lo,
            hi,
            witness: self.witness.or(rhs.witness),
        }
    }
}

impl std::iter::Sum for MultiplicityVerdict {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(MultiplicityVerdict::zero(), Add::add)
    }
}

impl fmt::Display for MultiplicityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            VerdictKind::Exact { n } => write!(f, "exactly {n}"),
            VerdictKind::AtLeast { n } => write!(f, "at least {n}"),
            VerdictKind::AtMost { n } => write!(f, "at most {n}"),
            VerdictKind::Range { lo, hi } => write!(f, "between {lo} and {hi}"),
            VerdictKind::Unknown => write!(f, "unknown"),
        }
    }
}
