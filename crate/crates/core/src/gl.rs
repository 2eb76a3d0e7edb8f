//! The Grothendieck ring of general linear groups on one cuspidal line.
//!
//! Elements are written in the standard basis `δ(Δ₁) × … × δ(Δ_k)`
//! ([`GlStandard`]). The only non-standard irreducibles the calculus needs
//! are Langlands quotients of two linked segments ([`LPair`]), which satisfy
//! `δ(Δ₁) × δ(Δ₂) = L(δ(Δ₁), δ(Δ₂)) + δ(Δ₁ ∪ Δ₂) × δ(Δ₁ ∩ Δ₂)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::half::HalfInt;
use crate::segment::{segment_relations, Segment};
use crate::verdict::MultiplicityVerdict;
use crate::words::{count_shuffles, shuffles, Word, WordMultiset};

/// A product of segment representations, kept as a sorted multiset.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GlStandard {
    segs: Vec<Segment>,
}

impl GlStandard {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn new(mut segs: Vec<Segment>) -> Self {
        segs.sort();
        GlStandard { segs }
    }

    pub fn from_maybe<I: IntoIterator<Item = Option<Segment>>>(segs: I) -> Self {
        Self::new(segs.into_iter().flatten().collect())
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    pub fn is_one(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.segs.iter().map(|s| s.len()).sum()
    }

    pub fn mul(&self, other: &GlStandard) -> GlStandard {
        let mut segs = self.segs.clone();
        segs.extend_from_slice(&other.segs);
        GlStandard::new(segs)
    }

    /// Sorted multiset of exponents.
    pub fn support(&self) -> Vec<HalfInt> {
        let mut v: Vec<HalfInt> = self.segs.iter().flat_map(|s| s.support()).collect();
        v.sort();
        v
    }

    fn descending_words(&self) -> Vec<Word> {
        self.segs.iter().map(|s| s.descending_word()).collect()
    }

    /// Number of occurrences of `w` among the shuffles of the factors.
    pub fn count_word(&self, w: &[HalfInt]) -> u64 {
        let words = self.descending_words();
        let parts: Vec<&[HalfInt]> = words.iter().map(|v| v.as_slice()).collect();
        count_shuffles(w, &parts)
    }
}

impl fmt::Display for GlStandard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segs.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.segs.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl fmt::Debug for GlStandard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `L(δ(Δ₁), δ(Δ₂))` for linked segments, ordered by `e` descending.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LPair {
    first: Segment,
    second: Segment,
}

impl LPair {
    pub fn new(a: Segment, b: Segment) -> Result<LPair, Error> {
        let r = segment_relations(a, b);
        if !r.linked {
            return Err(Error::AtomDomain(format!(
                "L({a},{b}) needs linked segments"
            )));
        }
        let key = |s: Segment| (std::cmp::Reverse(s.e_center()), s);
        let (first, second) = if key(a) <= key(b) { (a, b) } else { (b, a) };
        Ok(LPair { first, second })
    }

    pub fn first(&self) -> Segment {
        self.first
    }

    pub fn second(&self) -> Segment {
        self.second
    }

    pub fn rank(&self) -> usize {
        self.first.len() + self.second.len()
    }

    /// `Std{Δ₁, Δ₂} − Std{Δ₁ ∪ Δ₂, Δ₁ ∩ Δ₂}`.
    pub fn resolution(&self) -> Vec<(GlStandard, i64)> {
        let r = segment_relations(self.first, self.second);
        vec![
            (GlStandard::new(vec![self.first, self.second]), 1),
            (GlStandard::from_maybe([r.union, r.intersection]), -1),
        ]
    }

    pub fn support(&self) -> Vec<HalfInt> {
        GlStandard::new(vec![self.first, self.second]).support()
    }
}

impl fmt::Display for LPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.first, self.second)
    }
}

impl fmt::Debug for LPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Irreducible GL targets the multiplicity searches use.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum GlIrr {
    Delta(Segment),
    Pair(LPair),
}

impl GlIrr {
    pub fn rank(&self) -> usize {
        match self {
            GlIrr::Delta(s) => s.len(),
            GlIrr::Pair(p) => p.rank(),
        }
    }

    pub fn as_part(&self) -> GlPart {
        match *self {
            GlIrr::Delta(s) => GlPart::delta(s),
            GlIrr::Pair(p) => GlPart::pair(p),
        }
    }

    /// The Jacquet words of the irreducible, with multiplicity.
    pub fn words(&self) -> WordMultiset {
        self.as_part().words()
    }
}

impl fmt::Display for GlIrr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlIrr::Delta(s) => write!(f, "{s}"),
            GlIrr::Pair(p) => write!(f, "{p}"),
        }
    }
}

/// A GL factor of a tensor term: a product of segment representations and
/// Langlands pairs. Products are commutative, so both lists are sorted.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GlPart {
    segs: Vec<Segment>,
    pairs: Vec<LPair>,
}

impl GlPart {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn delta(s: Segment) -> Self {
        GlPart {
            segs: vec![s],
            pairs: vec![],
        }
    }

    pub fn pair(p: LPair) -> Self {
        GlPart {
            segs: vec![],
            pairs: vec![p],
        }
    }

    pub fn standard(m: &GlStandard) -> Self {
        GlPart {
            segs: m.segs.clone(),
            pairs: vec![],
        }
    }

    pub fn from_maybe<I: IntoIterator<Item = Option<Segment>>>(segs: I) -> Self {
        let mut segs: Vec<Segment> = segs.into_iter().flatten().collect();
        segs.sort();
        GlPart {
            segs,
            pairs: vec![],
        }
    }

    /// `L(δ(Δ₁), δ(Δ₂))` with either slot possibly empty; unlinked pairs
    /// give the irreducible product.
    pub fn langlands(a: Option<Segment>, b: Option<Segment>) -> Self {
        match (a, b) {
            (Some(x), Some(y)) => match LPair::new(x, y) {
                Ok(p) => GlPart::pair(p),
                Err(_) => GlPart::from_maybe([a, b]),
            },
            _ => GlPart::from_maybe([a, b]),
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    pub fn pairs(&self) -> &[LPair] {
        &self.pairs
    }

    pub fn is_one(&self) -> bool {
        self.segs.is_empty() && self.pairs.is_empty()
    }

    pub fn is_standard(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.segs.iter().map(|s| s.len()).sum::<usize>()
            + self.pairs.iter().map(|p| p.rank()).sum::<usize>()
    }

    pub fn mul(&self, other: &GlPart) -> GlPart {
        let mut segs = self.segs.clone();
        segs.extend_from_slice(&other.segs);
        segs.sort();
        let mut pairs = self.pairs.clone();
        pairs.extend_from_slice(&other.pairs);
        pairs.sort();
        GlPart { segs, pairs }
    }

    /// Sorted multiset of exponents.
    pub fn support(&self) -> Vec<HalfInt> {
        let mut v: Vec<HalfInt> = self.segs.iter().flat_map(|s| s.support()).collect();
        for p in &self.pairs {
            v.extend(p.support());
        }
        v.sort();
        v
    }

    /// Expansion in the standard basis.
    pub fn resolve(&self) -> Vec<(GlStandard, i64)> {
        let mut acc: Vec<(GlStandard, i64)> = vec![(GlStandard::new(self.segs.clone()), 1)];
        for p in &self.pairs {
            let mut next = Vec::new();
            for (m, n) in &acc {
                for (r, k) in p.resolution() {
                    next.push((m.mul(&r), n * k));
                }
            }
            acc = next;
        }
        let mut out: std::collections::BTreeMap<GlStandard, i64> = Default::default();
        for (m, n) in acc {
            *out.entry(m).or_default() += n;
        }
        out.into_iter().filter(|(_, n)| *n != 0).collect()
    }

    /// All Jacquet words, with multiplicity.
    pub fn words(&self) -> WordMultiset {
        let mut out = WordMultiset::new();
        for (m, n) in self.resolve() {
            out.add_scaled(&word_expansion(&m), n);
        }
        out
    }

    pub fn count_word(&self, w: &[HalfInt]) -> i64 {
        self.resolve()
            .iter()
            .map(|(m, n)| n * m.count_word(w) as i64)
            .sum()
    }
}

impl fmt::Display for GlPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = self.pairs.iter().map(|p| p.to_string()).collect();
        parts.extend(self.segs.iter().map(|s| s.to_string()));
        write!(f, "{}", parts.join(" x "))
    }
}

impl fmt::Debug for GlPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One irreducible piece of `δ(Δ₁) × δ(Δ₂)` with its standard-basis form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairPiece {
    pub irreducible: GlPart,
    pub resolution: Vec<(GlStandard, i64)>,
}

/// Composition factors of `δ(Δ₁) × δ(Δ₂)`.
pub fn decompose_pair(a: Segment, b: Segment) -> Vec<PairPiece> {
    let r = segment_relations(a, b);
    let whole = GlStandard::new(vec![a, b]);
    if !r.linked {
        return vec![PairPiece {
            irreducible: GlPart::standard(&whole),
            resolution: vec![(whole, 1)],
        }];
    }
    let ui = GlStandard::from_maybe([r.union, r.intersection]);
    let pair = LPair::new(a, b).expect("linked");
    vec![
        PairPiece {
            irreducible: GlPart::standard(&ui),
            resolution: vec![(ui.clone(), 1)],
        },
        PairPiece {
            irreducible: GlPart::pair(pair),
            resolution: pair.resolution(),
        },
    ]
}

/// Every shuffle of the descending words of the factors of `m`.
pub fn word_expansion(m: &GlStandard) -> WordMultiset {
    let words = m.descending_words();
    let parts: Vec<&[HalfInt]> = words.iter().map(|v| v.as_slice()).collect();
    shuffles(&parts)
}

fn is_regular(support: &[HalfInt]) -> bool {
    support.windows(2).all(|w| w[0] != w[1])
}

/// `[m : δ(Δ)]`, which is 1 exactly when the factors of `m` tile `Δ`.
pub fn contains_delta_in_standard(m: &GlStandard, target: Segment) -> u64 {
    let sup = m.support();
    let want: Vec<HalfInt> = target.support().collect();
    u64::from(sup == want)
}

/// `[m : L(Δ₁, Δ₂)]`; exact in the regular case, bounded otherwise.
pub fn contains_langlands_pair(m: &GlStandard, t: &LPair) -> MultiplicityVerdict {
    let sup = m.support();
    if sup != t.support() {
        return MultiplicityVerdict::zero();
    }
    let target = GlPart::pair(*t).words();
    if is_regular(&sup) {
        // each word of the full principal series lies in exactly one
        // irreducible, so one shared word decides
        let shared = target.iter().any(|(w, _)| m.count_word(w) > 0);
        return MultiplicityVerdict::exact(u64::from(shared)).with_witness("regular words");
    }
    let hi = target
        .iter()
        .map(|(w, n)| m.count_word(w) / n as u64)
        .min()
        .unwrap_or(0);
    MultiplicityVerdict::range(0, hi).with_witness("word bound")
}

/// `[m : g]` for an irreducible target.
pub fn gl_multiplicity(m: &GlStandard, g: &GlIrr) -> MultiplicityVerdict {
    match g {
        GlIrr::Delta(s) => MultiplicityVerdict::exact(contains_delta_in_standard(m, *s)),
        GlIrr::Pair(p) => contains_langlands_pair(m, p),
    }
}

/// `[part : g]` for a product possibly containing Langlands pairs.
///
/// Multiplicity is additive on `R(GL)`, so the standard-basis resolution
/// gives an exact answer whenever every standard module does.
pub fn gl_part_multiplicity(part: &GlPart, g: &GlIrr) -> MultiplicityVerdict {
    if part.support() != g.as_part().support() {
        return MultiplicityVerdict::zero();
    }
    if part == &g.as_part() {
        return MultiplicityVerdict::exact(1);
    }
    let mut total: i64 = 0;
    let mut exact = true;
    for (m, k) in part.resolve() {
        match gl_multiplicity(&m, g).exact_value() {
            Some(v) => total += k * v as i64,
            None => exact = false,
        }
    }
    if exact {
        return MultiplicityVerdict::exact(
            u64::try_from(total).expect("multiplicity of a representation"),
        );
    }
    let sup = part.support();
    if is_regular(&sup) {
        let shared = g.words().iter().any(|(w, _)| part.count_word(w) > 0);
        return MultiplicityVerdict::exact(u64::from(shared));
    }
    MultiplicityVerdict::unknown()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::half::h;

    fn seg(lo: i64, hi: i64) -> Segment {
        Segment::new(h(lo), h(hi)).unwrap()
    }

    #[test]
    fn decompose_linked_and_unlinked() {
        let pieces = decompose_pair(seg(1, 1), seg(3, 3));
        assert_eq!(pieces.len(), 2);
        assert_eq!(pieces[0].irreducible, GlPart::delta(seg(1, 3)));
        assert_eq!(
            pieces[1].resolution,
            vec![
                (GlStandard::new(vec![seg(1, 1), seg(3, 3)]), 1),
                (GlStandard::new(vec![seg(1, 3)]), -1)
            ]
        );
        let pieces = decompose_pair(seg(1, 3), seg(-1, 1));
        assert_eq!(
            pieces[0].irreducible,
            GlPart::standard(&GlStandard::new(vec![seg(-1, 3), seg(1, 1)]))
        );
        assert_eq!(decompose_pair(seg(1, 1), seg(5, 5)).len(), 1);
    }

    #[test]
    fn word_expansion_examples() {
        let w = word_expansion(&GlStandard::new(vec![seg(1, 3)]));
        assert_eq!(w.iter().collect::<Vec<_>>(), vec![(&vec![h(3), h(1)], 1)]);
        let w = word_expansion(&GlStandard::new(vec![seg(1, 1), seg(3, 3)]));
        assert_eq!(w.total(), 2);
        assert_eq!(w.count(&[h(1), h(3)]), 1);
        assert_eq!(w.count(&[h(3), h(1)]), 1);
        let w = word_expansion(&GlStandard::new(vec![seg(1, 3), seg(5, 5)]));
        assert_eq!(w.total(), 3);
    }

    #[test]
    fn delta_containment() {
        let a = h(5);
        let b = h(7);
        let c = h(9);
        let m = GlStandard::new(vec![Segment::new(h(1), a).unwrap()]);
        assert_eq!(
            contains_delta_in_standard(&m, Segment::new(h(1), a).unwrap()),
            1
        );
        let m = GlStandard::new(vec![
            Segment::new(-a, h(-1)).unwrap(),
            Segment::new(h(1), b).unwrap(),
        ]);
        assert_eq!(
            contains_delta_in_standard(&m, Segment::new(-a, b).unwrap()),
            1
        );
        let m = GlStandard::new(vec![
            Segment::new(h(1), b).unwrap(),
            Segment::new(h(1), c).unwrap(),
        ]);
        assert_eq!(
            contains_delta_in_standard(&m, Segment::new(h(1), c).unwrap()),
            0
        );
    }

    #[test]
    fn langlands_pair_containment() {
        let t = LPair::new(seg(-1, 1), seg(3, 3)).unwrap();
        let own = GlStandard::new(vec![seg(-1, 1), seg(3, 3)]);
        assert_eq!(contains_langlands_pair(&own, &t).exact_value(), Some(1));
        let other = GlStandard::new(vec![seg(-1, 3), seg(1, 1)]);
        assert_eq!(contains_langlands_pair(&other, &t).exact_value(), Some(0));
        let small = GlStandard::new(vec![seg(1, 1)]);
        assert_eq!(contains_langlands_pair(&small, &t).exact_value(), Some(0));
    }
}
