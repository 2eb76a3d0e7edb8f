//! Elements of `R(GL) ⊗ R(G)` with integer coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::atom::{ClassAtom, InducedLabel};
use crate::gl::{GlPart, GlStandard};
use crate::half::HalfInt;

pub type TensorKey = (GlPart, InducedLabel);

#[derive(Clone, Default, PartialEq, Eq)]
pub struct RGTensor {
    terms: BTreeMap<TensorKey, i64>,
}

impl RGTensor {
    pub fn new() -> Self {
        Self::default()
    }

    /// `1 ⊗ x`.
    pub fn unit(x: ClassAtom) -> Self {
        let mut t = Self::new();
        t.add(GlPart::one(), InducedLabel::atom(x), 1);
        t
    }

    pub fn add(&mut self, gl: GlPart, cl: InducedLabel, n: i64) {
        if n == 0 {
            return;
        }
        match self.terms.entry((gl, cl)) {
            Entry::Vacant(v) => {
                v.insert(n);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += n;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &RGTensor, k: i64) {
        for ((g, c), n) in &other.terms {
            self.add(g.clone(), c.clone(), n * k);
        }
    }

    pub fn coeff(&self, gl: &GlPart, cl: &InducedLabel) -> i64 {
        self.terms
            .get(&(gl.clone(), cl.clone()))
            .copied()
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GlPart, &InducedLabel, i64)> {
        self.terms.iter().map(|((g, c), n)| (g, c, *n))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of coefficients.
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.terms.values().all(|n| *n > 0)
    }

    /// Absolute cuspidal support of a term: GL exponents up to sign plus the
    /// classical support.
    pub fn term_support(gl: &GlPart, cl: &InducedLabel) -> Vec<HalfInt> {
        let mut v: Vec<HalfInt> = gl.support().into_iter().map(HalfInt::abs).collect();
        v.extend(cl.support());
        v.sort();
        v
    }

    /// Every term has the same absolute support (`None` for an empty tensor).
    pub fn common_support(&self) -> Option<Vec<HalfInt>> {
        let mut it = self.iter().map(|(g, c, _)| Self::term_support(g, c));
        let first = it.next()?;
        it.all(|s| s == first).then_some(first)
    }

    /// Expands every GL part in the standard basis.
    pub fn gl_resolved(&self) -> BTreeMap<(GlStandard, InducedLabel), i64> {
        let mut out: BTreeMap<(GlStandard, InducedLabel), i64> = BTreeMap::new();
        for (g, c, n) in self.iter() {
            for (m, k) in g.resolve() {
                *out.entry((m, c.clone())).or_default() += n * k;
            }
        }
        out.retain(|_, n| *n != 0);
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term {
            gl: Vec<String>,
            cl: String,
            coeff: i64,
        }
        let terms: Vec<Term> = self
            .iter()
            .map(|(g, c, n)| Term {
                gl: gl_factors(g),
                cl: c.to_string(),
                coeff: n,
            })
            .collect();
        serde_json::to_value(terms).expect("serializable")
    }
}

fn gl_factors(g: &GlPart) -> Vec<String> {
    let mut v: Vec<String> = g.pairs().iter().map(|p| p.to_string()).collect();
    v.extend(g.segments().iter().map(|s| s.to_string()));
    v
}

impl fmt::Display for RGTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (k, (g, c, n)) in self.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            if n == 1 {
                write!(f, "{g} ⊗ {c}")?;
            } else {
                write!(f, "{n}·{g} ⊗ {c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RGTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
