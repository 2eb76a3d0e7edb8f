//! Composition-series facts and the multiplicity engine.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::atom::{ClassAtom, InducedLabel, Sign};
use crate::error::{Error, Result};
use crate::gl::{GlIrr, GlStandard};
use crate::half::HalfInt;
use crate::tensor::RGTensor;

pub mod candidates;
pub mod catalog;
pub mod engine;
pub mod sign;

pub use candidates::{enumerate_nontempered_candidates, CandidateReport};
pub use catalog::Catalog;
pub use engine::Engine;
pub use sign::sign_classifier;

/// A formal integer combination of classical atoms.
pub type Combination = BTreeMap<ClassAtom, i64>;

/// An irreducible Jacquet term `g ⊗ τ`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct JTerm {
    pub gl: GlIrr,
    pub tau: ClassAtom,
}

impl JTerm {
    pub fn new(gl: GlIrr, tau: ClassAtom) -> Self {
        JTerm { gl, tau }
    }

    /// Absolute cuspidal support of the whole term.
    pub fn support(&self) -> Vec<HalfInt> {
        let mut v: Vec<HalfInt> = self
            .gl
            .as_part()
            .support()
            .into_iter()
            .map(HalfInt::abs)
            .collect();
        v.extend(self.tau.support());
        v.sort();
        v
    }
}

impl fmt::Display for JTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (x) {}", self.gl, self.tau)
    }
}

impl Serialize for JTerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `δ([-c,d]) ⋊ σ` in terms of atoms.
pub fn decompose_induced_over_cuspidal(l: &InducedLabel) -> Result<Combination> {
    let canon = InducedLabel::new(l.segments().to_vec(), l.base().clone());
    if &canon != l || l.segments().len() != 1 || *l.base() != ClassAtom::Cusp {
        return Err(Error::Domain(format!(
            "{l} is not one canonical segment over σ"
        )));
    }
    let s = l.segments()[0];
    if s.lo().is_integer() {
        return Err(Error::Domain(format!("{s} is off the reducibility line")));
    }
    let (c, d) = (-s.lo(), s.hi());
    let mut out = Combination::new();
    let half = HalfInt::HALF;
    if s.lo() > half {
        out.insert(ClassAtom::lang_seg(c, d)?, 1);
    } else if s.lo() == half {
        out.insert(ClassAtom::signed_seg(c, d, Sign::Plus)?, 1);
        out.insert(ClassAtom::lang_seg(c, d)?, 1);
    } else {
        out.insert(ClassAtom::signed_seg(c, d, Sign::Plus)?, 1);
        out.insert(ClassAtom::signed_seg(c, d, Sign::Minus)?, 1);
        if c != d {
            out.insert(ClassAtom::lang_seg(c, d)?, 1);
        }
    }
    Ok(out)
}

/// `l` in terms of atoms: an atom is itself, one segment over the cuspidal
/// follows the trichotomy, anything else needs a cited decomposition.
/// `None` means no fact applies.
pub fn decompose_induced_over_atom(cat: &Catalog, l: &InducedLabel) -> Option<Combination> {
    if let Some(x) = l.as_atom() {
        return Some(Combination::from([(x.clone(), 1)]));
    }
    if let Ok(c) = decompose_induced_over_cuspidal(l) {
        return Some(c);
    }
    cat.decomposition(l).map(|d| d.expansion)
}

/// Rewrites a tensor over the basis `standard GL module ⊗ atom`, using the
/// single-segment decomposition on induced classical parts.
pub fn atomize(t: &RGTensor) -> Result<BTreeMap<(GlStandard, ClassAtom), i64>> {
    let mut out: BTreeMap<(GlStandard, ClassAtom), i64> = BTreeMap::new();
    for ((m, cl), n) in t.gl_resolved() {
        let parts = match cl.as_atom() {
            Some(a) => Combination::from([(a.clone(), 1)]),
            None => decompose_induced_over_cuspidal(&cl)?,
        };
        for (a, k) in parts {
            *out.entry((m.clone(), a)).or_default() += n * k;
        }
    }
    out.retain(|_, n| *n != 0);
    Ok(out)
}
