//! Segments `[x, y] = {x, x+1, …, y}` on the single cuspidal line.
//!
//! A non-empty segment is a [`Segment`]. The empty segment only exists
//! transiently, as the `None` returned by [`mk_segment`] when `y - x = -1`;
//! every formula drops `δ(∅)` factors before anything is stored.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::half::HalfInt;

/// A non-empty segment. Invariant: `hi - lo ∈ ℤ≥0`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Segment {
    lo: HalfInt,
    hi: HalfInt,
}

/// Builds `[x, y]`. Returns `Ok(None)` exactly when `y - x = -1`.
pub fn mk_segment(x: HalfInt, y: HalfInt) -> Result<Option<Segment>, Error> {
    match y.int_diff(x) {
        None => Err(Error::InvalidSegment {
            lo: x,
            hi: y,
            reason: "non-integral length",
        }),
        Some(d) if d < -1 => Err(Error::InvalidSegment {
            lo: x,
            hi: y,
            reason: "length below the empty segment",
        }),
        Some(-1) => Ok(None),
        Some(_) => Ok(Some(Segment { lo: x, hi: y })),
    }
}

impl Segment {
    /// Non-empty constructor; rejects the empty case too.
    pub fn new(lo: HalfInt, hi: HalfInt) -> Result<Segment, Error> {
        mk_segment(lo, hi)?.ok_or(Error::EmptySegment)
    }

    pub fn lo(self) -> HalfInt {
        self.lo
    }

    pub fn hi(self) -> HalfInt {
        self.hi
    }

    /// Number of exponents, `hi - lo + 1`.
    pub fn len(self) -> usize {
        (self.hi.twice() - self.lo.twice()) as usize / 2 + 1
    }

    /// `e(δ(Δ)) = (lo + hi) / 2`.
    pub fn e_center(self) -> HalfInt {
        self.lo
            .midpoint(self.hi)
            .expect("segment endpoints differ by an integer")
    }

    /// `[x, y] ↦ [-y, -x]`.
    pub fn dual(self) -> Segment {
        Segment {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    pub fn contains(self, e: HalfInt) -> bool {
        self.lo <= e && e <= self.hi && e.int_diff(self.lo).is_some()
    }

    /// Exponents in increasing order.
    pub fn support(self) -> impl Iterator<Item = HalfInt> {
        let lo = self.lo;
        (0..self.len() as i64).map(move |k| lo.step(k))
    }

    /// The descending word `(hi, hi-1, …, lo)` of `δ(Δ)`.
    pub fn descending_word(self) -> Vec<HalfInt> {
        let hi = self.hi;
        (0..self.len() as i64).map(|k| hi.step(-k)).collect()
    }

    fn same_line(self, other: Segment) -> bool {
        self.lo.int_diff(other.lo).is_some()
    }

    fn contains_segment(self, other: Segment) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

/// Union, intersection and linkedness of two non-empty segments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SegmentRelations {
    pub linked: bool,
    /// `None` when the union is not a segment.
    pub union: Option<Segment>,
    /// `None` when the intersection is empty.
    pub intersection: Option<Segment>,
}

pub fn segment_relations(a: Segment, b: Segment) -> SegmentRelations {
    if !a.same_line(b) {
        return SegmentRelations {
            linked: false,
            union: None,
            intersection: None,
        };
    }
    let lo = a.lo.max(b.lo);
    let hi = a.hi.min(b.hi);
    let intersection = (lo <= hi).then_some(Segment { lo, hi });
    // The union is a segment iff there is no gap between the two.
    let union = (lo <= hi.step(1)).then_some(Segment {
        lo: a.lo.min(b.lo),
        hi: a.hi.max(b.hi),
    });
    let linked = union.is_some() && !a.contains_segment(b) && !b.contains_segment(a);
    SegmentRelations {
        linked,
        union,
        intersection,
    }
}

pub fn linked(a: Segment, b: Segment) -> bool {
    segment_relations(a, b).linked
}

/// `e(δ(Δ))`, rejecting the empty segment.
pub fn e_center(seg: Option<Segment>) -> Result<HalfInt, Error> {
    seg.map(Segment::e_center).ok_or(Error::EmptySegment)
}

pub fn dual_segment(seg: Option<Segment>) -> Option<Segment> {
    seg.map(Segment::dual)
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d({},{})", self.lo, self.hi)
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Renders a possibly empty segment; `δ(∅)` prints as `1`.
pub fn display_maybe(seg: Option<Segment>) -> String {
    seg.map_or_else(|| "1".to_string(), |s| s.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::half::h;

    fn seg(lo: i64, hi: i64) -> Segment {
        Segment::new(h(lo), h(hi)).unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(mk_segment(h(1), h(5)).unwrap(), Some(seg(1, 5)));
        assert_eq!(mk_segment(h(3), h(1)).unwrap(), None);
        assert!(mk_segment(h(1), h(4)).is_err());
        assert!(mk_segment(h(5), h(1)).is_err());
        assert_eq!(seg(1, 5).len(), 3);
    }

    #[test]
    fn centers_and_duals() {
        assert_eq!(seg(1, 5).e_center(), h(3));
        assert_eq!(seg(-3, 3).e_center(), HalfInt::ZERO);
        assert_eq!(seg(-1, 3).e_center(), h(1));
        assert_eq!(e_center(None), Err(Error::EmptySegment));
        assert_eq!(seg(-1, 3).dual(), seg(-3, 1));
        assert_eq!(seg(-5, 5).dual(), seg(-5, 5));
        assert_eq!(dual_segment(None), None);
    }

    #[test]
    fn relations() {
        let r = segment_relations(seg(1, 3), seg(5, 7));
        assert!(r.linked);
        assert_eq!(r.union, Some(seg(1, 7)));
        assert_eq!(r.intersection, None);

        let r = segment_relations(seg(1, 5), seg(1, 3));
        assert!(!r.linked);
        assert_eq!(r.intersection, Some(seg(1, 3)));

        let r = segment_relations(seg(1, 1), seg(5, 5));
        assert!(!r.linked);
        assert_eq!(r.union, None);

        assert!(linked(seg(1, 3), seg(-1, 1)));
        assert_eq!(seg(1, 5).descending_word(), vec![h(5), h(3), h(1)]);
        assert_eq!(seg(-1, 3).to_string(), "d(-1/2,3/2)");
        assert_eq!(display_maybe(None), "1");
    }
}
