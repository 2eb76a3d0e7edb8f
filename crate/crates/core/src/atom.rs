//! Labels for irreducible representations of the classical group, and for
//! the induced objects built from them.
//!
//! Atoms are opaque names: nothing here constructs a representation. Every
//! constructor canonicalizes, so two labels denote the same representation
//! exactly when they compare equal.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::half::HalfInt;
use crate::segment::{mk_segment, Segment};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Which of the three discrete series with parameters `a < b < c`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Ds3Tag {
    /// `σ⁺_{a,b,c} = σ⁺_{b,c,a}`
    Plus,
    /// `σ⁻_{b,c,a}`, the sub of `δ([½,a]) ⋊ σ⁻_{b,c}`
    MinusBca,
    /// `σ⁻_{a,b,c}`, the second sub of `δ([-a,b]) ⋊ σ_c`
    MinusAbc,
}

impl Ds3Tag {
    fn name(self) -> &'static str {
        match self {
            Ds3Tag::Plus => "plus",
            Ds3Tag::MinusBca => "minus_bca",
            Ds3Tag::MinusAbc => "minus_abc",
        }
    }

    pub fn from_name(s: &str) -> Option<Ds3Tag> {
        match s {
            "plus" => Some(Ds3Tag::Plus),
            "minus_bca" => Some(Ds3Tag::MinusBca),
            "minus_abc" => Some(Ds3Tag::MinusAbc),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassAtom {
    /// The fixed cuspidal `σ`.
    Cusp,
    /// `δ([ν^{-c}ρ, ν^dρ]_±; σ)`, stored with `c ≤ d`.
    SignedSeg { c: HalfInt, d: HalfInt, sign: Sign },
    /// `L_α(δ([ν^{-c}ρ, ν^dρ]); σ)`, stored with `c < d`.
    LangSeg { c: HalfInt, d: HalfInt },
    Ds3 {
        a: HalfInt,
        b: HalfInt,
        c: HalfInt,
        tag: Ds3Tag,
    },
    /// `T^±`, the summands of `δ([-a,a]) ⋊ σ_c`.
    Temp { a: HalfInt, c: HalfInt, sign: Sign },
    /// `L(δ₁ × … × δ_k ⋊ τ)`; segments sorted by `e` descending.
    Lang {
        segs: Vec<Segment>,
        tau: Box<ClassAtom>,
    },
}

fn half_odd(x: HalfInt) -> bool {
    !x.is_integer()
}

fn ordered_pair(c: HalfInt, d: HalfInt) -> Result<(HalfInt, HalfInt), Error> {
    let seg = mk_segment(-c, d)?;
    if seg.is_none() {
        return Err(Error::AtomDomain(format!("empty segment [-{c},{d}]")));
    }
    // δ([-c,d]) ⋊ σ and δ([-d,c]) ⋊ σ agree in R(G); keep the form with c ≤ d.
    Ok(if c <= d { (c, d) } else { (d, c) })
}

impl ClassAtom {
    pub fn signed_seg(c: HalfInt, d: HalfInt, sign: Sign) -> Result<ClassAtom, Error> {
        let (c, d) = ordered_pair(c, d)?;
        if !half_odd(c) {
            return Err(Error::AtomDomain(format!(
                "[-{c},{d}] is off the reducibility line"
            )));
        }
        let ok = match sign {
            Sign::Plus => c >= -HalfInt::HALF,
            Sign::Minus => c >= HalfInt::HALF,
        };
        if !ok {
            return Err(Error::AtomDomain(format!(
                "δ([-{c},{d}]{};σ) does not exist",
                sign.symbol()
            )));
        }
        Ok(ClassAtom::SignedSeg { c, d, sign })
    }

    pub fn lang_seg(c: HalfInt, d: HalfInt) -> Result<ClassAtom, Error> {
        let (c, d) = ordered_pair(c, d)?;
        if c == d {
            return Err(Error::AtomDomain(format!(
                "δ([-{c},{c}]) ⋊ σ is tempered; it has no Langlands quotient"
            )));
        }
        Ok(ClassAtom::LangSeg { c, d })
    }

    /// `σ_a = δ([½, a]_+; σ)`.
    pub fn sigma(a: HalfInt) -> Result<ClassAtom, Error> {
        Self::signed_seg(-HalfInt::HALF, a, Sign::Plus)
    }

    pub fn ds3(a: HalfInt, b: HalfInt, c: HalfInt, tag: Ds3Tag) -> Result<ClassAtom, Error> {
        check_triple(a, b, c)?;
        Ok(ClassAtom::Ds3 { a, b, c, tag })
    }

    pub fn temp(a: HalfInt, c: HalfInt, sign: Sign) -> Result<ClassAtom, Error> {
        if !(half_odd(a) && half_odd(c) && HalfInt::HALF <= a && a < c) {
            return Err(Error::AtomDomain(format!("T{{{a},{c}}} needs ½ ≤ a < c")));
        }
        Ok(ClassAtom::Temp { a, c, sign })
    }

    /// Langlands quotient; a single segment over `σ` becomes `LangSeg`.
    pub fn lang(mut segs: Vec<Segment>, tau: ClassAtom) -> Result<ClassAtom, Error> {
        if segs.is_empty() {
            return Err(Error::AtomDomain("Langlands data needs a segment".into()));
        }
        if let Some(s) = segs.iter().find(|s| s.e_center() <= HalfInt::ZERO) {
            return Err(Error::AtomDomain(format!(
                "Langlands segment {s} has e ≤ 0"
            )));
        }
        if !tau.is_tempered() {
            return Err(Error::AtomDomain(format!("{tau} is not tempered")));
        }
        if segs.len() == 1 && tau == ClassAtom::Cusp {
            return Self::lang_seg(-segs[0].lo(), segs[0].hi());
        }
        segs.sort_by_key(|s| (std::cmp::Reverse(s.e_center()), *s));
        Ok(ClassAtom::Lang {
            segs,
            tau: Box::new(tau),
        })
    }

    pub fn is_tempered(&self) -> bool {
        !matches!(self, ClassAtom::LangSeg { .. } | ClassAtom::Lang { .. })
    }

    /// Discrete series among the atoms (everything square integrable).
    pub fn is_discrete_series(&self) -> bool {
        match self {
            ClassAtom::Cusp | ClassAtom::Ds3 { .. } => true,
            ClassAtom::SignedSeg { c, d, .. } => c != d,
            _ => false,
        }
    }

    /// Cuspidal support, as the sorted multiset of absolute exponents.
    pub fn support(&self) -> Vec<HalfInt> {
        let mut v = Vec::new();
        self.push_support(&mut v);
        v.sort();
        v
    }

    fn push_support(&self, v: &mut Vec<HalfInt>) {
        let seg = |v: &mut Vec<HalfInt>, lo: HalfInt, hi: HalfInt| {
            let s = Segment::new(lo, hi).expect("atom segment");
            v.extend(s.support().map(HalfInt::abs));
        };
        match self {
            ClassAtom::Cusp => {}
            ClassAtom::SignedSeg { c, d, .. } | ClassAtom::LangSeg { c, d } => seg(v, -*c, *d),
            ClassAtom::Ds3 { a, b, c, .. } => {
                seg(v, HalfInt::HALF, *a);
                seg(v, -*b, *c);
            }
            ClassAtom::Temp { a, c, .. } => {
                seg(v, -*a, *a);
                seg(v, HalfInt::HALF, *c);
            }
            ClassAtom::Lang { segs, tau } => {
                for s in segs {
                    v.extend(s.support().map(HalfInt::abs));
                }
                tau.push_support(v);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.support().len()
    }
}

/// `½ ≤ a < b < c` in `ℤ + ½`.
pub fn check_triple(a: HalfInt, b: HalfInt, c: HalfInt) -> Result<(), Error> {
    if [a, b, c].iter().all(|x| half_odd(*x)) && HalfInt::HALF <= a && a < b && b < c {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "({a},{b},{c}) is not ½ ≤ a < b < c in ℤ+½"
        )))
    }
}

/// `atom_identify`: equality of canonical names.
pub fn atom_identify(x: &ClassAtom, y: &ClassAtom) -> bool {
    x == y
}

impl fmt::Display for ClassAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassAtom::Cusp => write!(f, "sigma"),
            ClassAtom::SignedSeg {
                c,
                d,
                sign: Sign::Plus,
            } if *c == -HalfInt::HALF => {
                write!(f, "sigma_a{{{d}}}")
            }
            ClassAtom::SignedSeg { c, d, sign } => {
                write!(f, "ds{{b={c},c={d},{}}}", sign.symbol())
            }
            ClassAtom::LangSeg { c, d } => write!(f, "L(d({},{d}) ; sigma)", -*c),
            ClassAtom::Ds3 { a, b, c, tag } => {
                write!(f, "ds3{{a={a},b={b},c={c},{}}}", tag.name())
            }
            ClassAtom::Temp { a, c, sign } => write!(f, "T{{{a},{c},{}}}", sign.symbol()),
            ClassAtom::Lang { segs, tau } => {
                let s: Vec<String> = segs.iter().map(|s| s.to_string()).collect();
                write!(f, "L({} ; {tau})", s.join(" x "))
            }
        }
    }
}

impl fmt::Debug for ClassAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `δ(Δ₁) × … × δ(Δ_k) ⋊ base`, possibly reducible.
///
/// Canonical form replaces every segment of negative center by its dual
/// (same class in `R(G)`) and sorts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InducedLabel {
    segs: Vec<Segment>,
    base: ClassAtom,
}

impl InducedLabel {
    pub fn new(segs: Vec<Segment>, base: ClassAtom) -> Self {
        canonicalize_induced(InducedLabel { segs, base })
    }

    pub fn atom(base: ClassAtom) -> Self {
        InducedLabel { segs: vec![], base }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    pub fn base(&self) -> &ClassAtom {
        &self.base
    }

    pub fn as_atom(&self) -> Option<&ClassAtom> {
        self.segs.is_empty().then_some(&self.base)
    }

    /// `δ(Δ) ⋊ self`.
    pub fn induce(&self, seg: Segment) -> InducedLabel {
        let mut segs = self.segs.clone();
        segs.push(seg);
        InducedLabel::new(segs, self.base.clone())
    }

    pub fn support(&self) -> Vec<HalfInt> {
        let mut v = self.base.support();
        for s in &self.segs {
            v.extend(s.support().map(HalfInt::abs));
        }
        v.sort();
        v
    }

    pub fn rank(&self) -> usize {
        self.support().len()
    }
}

/// Dual-flips segments of negative center and sorts; idempotent.
pub fn canonicalize_induced(l: InducedLabel) -> InducedLabel {
    let mut segs: Vec<Segment> = l
        .segs
        .into_iter()
        .map(|s| {
            if s.e_center() < HalfInt::ZERO {
                s.dual()
            } else {
                s
            }
        })
        .collect();
    segs.sort();
    InducedLabel { segs, base: l.base }
}

impl fmt::Display for InducedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segs.is_empty() {
            return write!(f, "{}", self.base);
        }
        let s: Vec<String> = self.segs.iter().map(|s| s.to_string()).collect();
        write!(f, "{} |x {}", s.join(" x "), self.base)
    }
}

impl fmt::Debug for InducedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::half::h;

    fn seg(lo: i64, hi: i64) -> Segment {
        Segment::new(h(lo), h(hi)).unwrap()
    }

    #[test]
    fn canonical_induced() {
        let l = InducedLabel::new(vec![seg(-3, 1)], ClassAtom::Cusp);
        assert_eq!(l.segments(), &[seg(-1, 3)]);
        let l = InducedLabel::new(vec![seg(-5, 5)], ClassAtom::Cusp);
        assert_eq!(l.segments(), &[seg(-5, 5)]);
        let sa = ClassAtom::sigma(h(3)).unwrap();
        let l = InducedLabel::new(vec![seg(1, 7)], sa);
        assert_eq!(l.segments(), &[seg(1, 7)]);
    }

    #[test]
    fn identifications() {
        let (a, b, c) = (h(1), h(3), h(5));
        let p1 = ClassAtom::ds3(a, b, c, Ds3Tag::Plus).unwrap();
        let p2 = ClassAtom::ds3(a, b, c, Ds3Tag::Plus).unwrap();
        assert!(atom_identify(&p1, &p2));
        let m1 = ClassAtom::ds3(a, b, c, Ds3Tag::MinusBca).unwrap();
        let m2 = ClassAtom::ds3(a, b, c, Ds3Tag::MinusAbc).unwrap();
        assert!(!atom_identify(&m1, &m2));
        let sp = ClassAtom::signed_seg(b, c, Sign::Plus).unwrap();
        let sm = ClassAtom::signed_seg(b, c, Sign::Minus).unwrap();
        assert!(!atom_identify(&sp, &sm));
        // the two forms of the same induced representation
        assert_eq!(ClassAtom::signed_seg(c, b, Sign::Minus).unwrap(), sm);
    }

    #[test]
    fn domains() {
        assert!(ClassAtom::signed_seg(h(-1), h(5), Sign::Minus).is_err());
        assert!(ClassAtom::signed_seg(h(-3), h(5), Sign::Plus).is_err());
        assert!(ClassAtom::lang_seg(h(3), h(3)).is_err());
        assert!(ClassAtom::lang_seg(h(1), h(3)).is_ok());
        assert!(ClassAtom::ds3(h(3), h(1), h(5), Ds3Tag::Plus).is_err());
        let l = ClassAtom::lang(vec![seg(-3, 5)], ClassAtom::Cusp).unwrap();
        assert_eq!(l, ClassAtom::lang_seg(h(3), h(5)).unwrap());
        assert!(ClassAtom::lang(vec![seg(-5, 3)], ClassAtom::Cusp).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(ClassAtom::sigma(h(3)).unwrap().to_string(), "sigma_a{3/2}");
        assert_eq!(
            ClassAtom::signed_seg(h(3), h(5), Sign::Plus)
                .unwrap()
                .to_string(),
            "ds{b=3/2,c=5/2,+}"
        );
        assert_eq!(
            ClassAtom::lang_seg(h(-1), h(3)).unwrap().to_string(),
            "L(d(1/2,3/2) ; sigma)"
        );
        let l = InducedLabel::new(vec![seg(1, 5), seg(-1, 3)], ClassAtom::Cusp);
        assert_eq!(l.to_string(), "d(-1/2,3/2) x d(1/2,5/2) |x sigma");
    }

    #[test]
    fn supports() {
        let s = ClassAtom::signed_seg(h(1), h(3), Sign::Minus).unwrap();
        assert_eq!(s.support(), vec![h(1), h(1), h(3)]);
        let d = ClassAtom::ds3(h(1), h(3), h(5), Ds3Tag::Plus).unwrap();
        assert_eq!(d.rank(), 1 + 5);
    }
}
