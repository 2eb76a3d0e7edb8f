//! Everything the triple claims read, computed by one engine per triple.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};

use crate::atom::{check_triple, ClassAtom, InducedLabel, Sign};
use crate::error::Result;
use crate::gl::GlIrr;
use crate::half::HalfInt;
use crate::parse::{parse_atom_with, parse_expression_with};
use crate::rulebase::engine::lang_quotient;
use crate::rulebase::{enumerate_nontempered_candidates, CandidateReport, Catalog, Engine, JTerm};
use crate::segment::Segment;
use crate::verdict::MultiplicityVerdict as MV;
use crate::words::WordMultiset;

use super::claims::triple_env;
use super::oracle::{word_excess, OracleStats};
use super::value::Count;

/// Representations the claims talk about, by name.
pub const REPS: [(&str, &str); 9] = [
    ("psi", "d(1/2,c) x d(-a,b) |x sigma"),
    ("plus", "d(1/2,c) |x ds{b=a,c=b,+}"),
    ("minus", "d(1/2,c) |x ds{b=a,c=b,-}"),
    ("kernel-one", "d(-a,c) x d(1/2,b) |x sigma"),
    ("kernel-two", "d(-a,b) |x sigma_a{c}"),
    ("kernel-three", "d(-b,c) x d(1/2,a) |x sigma"),
    ("tempered-big", "d(1/2,c) x d(-a,a) |x sigma"),
    ("tempered-plus", "T{a,c,+}"),
    ("tempered-minus", "T{a,c,-}"),
];

/// Representations whose factor tables are computed up front.
const WARM: [&str; 6] = [
    "kernel-one",
    "kernel-two",
    "kernel-three",
    "plus",
    "minus",
    "psi",
];

struct Memo {
    value: MV,
    oracle: OracleStats,
}

pub struct TripleContext<'c> {
    pub a: HalfInt,
    pub b: HalfInt,
    pub c: HalfInt,
    engine: Engine<'c>,
    reps: BTreeMap<&'static str, InducedLabel>,
    universe: Vec<ClassAtom>,
    mult: RefCell<BTreeMap<(&'static str, ClassAtom), Memo>>,
    jm: RefCell<BTreeMap<(&'static str, JTerm), Memo>>,
    touched: RefCell<OracleStats>,
}

impl<'c> TripleContext<'c> {
    pub fn new(cat: &'c Catalog, a: HalfInt, b: HalfInt, c: HalfInt) -> Result<Self> {
        check_triple(a, b, c)?;
        let env = triple_env(a, b, c);
        let mut reps = BTreeMap::new();
        for (name, src) in REPS {
            let l = match parse_expression_with(src, &env) {
                Ok(l) => l,
                Err(_) => InducedLabel::atom(parse_atom_with(src, &env)?),
            };
            reps.insert(name, l);
        }
        let support = reps["psi"].support();
        let mut u: BTreeSet<ClassAtom> = BTreeSet::new();
        for d in cat.decompositions_on(&support) {
            u.extend(d.expansion.into_keys());
        }
        for (_, cl) in cat.closures_on(&support) {
            u.extend(cl.discrete);
            u.extend(cl.extra);
            u.extend(enumerate_nontempered_candidates(a, b, c, cl.sign)?.candidates);
        }
        for l in reps.values() {
            if l.support() == support {
                u.extend(lang_quotient(l));
            }
        }
        let ctx = TripleContext {
            a,
            b,
            c,
            engine: Engine::new(cat),
            reps,
            universe: u.into_iter().collect(),
            mult: RefCell::new(BTreeMap::new()),
            jm: RefCell::new(BTreeMap::new()),
            touched: RefCell::new(OracleStats::default()),
        };
        for r in WARM {
            for x in &ctx.universe {
                ctx.mult(r, x);
            }
        }
        let t = ctx.leading_term();
        for r in ["kernel-three", "kernel-one", "psi", "plus"] {
            ctx.jm(r, &t);
        }
        ctx.take_oracle();
        Ok(ctx)
    }

    pub fn rep(&self, name: &str) -> &InducedLabel {
        &self.reps[name]
    }

    fn rep_key(&self, name: &str) -> &'static str {
        self.reps
            .get_key_value(name)
            .map(|(k, _)| *k)
            .expect("known representation")
    }

    /// Atoms that can occur in the representations above: everything the
    /// cited decompositions, closures and Langlands quotients mention.
    pub fn universe(&self) -> &[ClassAtom] {
        &self.universe
    }

    pub fn engine(&self) -> &Engine<'c> {
        &self.engine
    }

    pub fn env(&self) -> impl Fn(&str) -> Option<HalfInt> {
        triple_env(self.a, self.b, self.c)
    }

    pub fn atom(&self, src: &str) -> ClassAtom {
        parse_atom_with(src, &self.env()).expect("well-formed atom template")
    }

    /// `δ([-a,b]) ⊗ σ_c`.
    pub fn leading_term(&self) -> JTerm {
        let s = Segment::new(-self.a, self.b).expect("segment");
        JTerm::new(GlIrr::Delta(s), ClassAtom::sigma(self.c).expect("sigma"))
    }

    fn check(
        &self,
        total: Option<&WordMultiset>,
        lower: &WordMultiset,
        v: &MV,
        what: String,
    ) -> OracleStats {
        let mut st = OracleStats::default();
        if let (Some(n), Some(total)) = (v.exact_value(), total) {
            st.checked = 1;
            if let Some(w) = word_excess(lower, n, total) {
                let w: Vec<String> = w.iter().map(ToString::to_string).collect();
                st.violations.push(format!(
                    "{what} = {n} exceeds the words at ({})",
                    w.join(",")
                ));
            }
        }
        st
    }

    /// `[rep : x]`.
    pub fn mult(&self, rep: &str, x: &ClassAtom) -> Count {
        let key = (self.rep_key(rep), x.clone());
        if let Some(m) = self.mult.borrow().get(&key) {
            self.touched.borrow_mut().merge(&m.oracle);
            return Count::from(&m.value);
        }
        let l = &self.reps[rep];
        let value = self.engine.multiplicity(l, x);
        let oracle = self.check(
            self.engine.words(l).as_deref(),
            &self.engine.lower_words(x),
            &value,
            format!("[{rep} : {x}]"),
        );
        self.touched.borrow_mut().merge(&oracle);
        let c = Count::from(&value);
        self.mult.borrow_mut().insert(key, Memo { value, oracle });
        c
    }

    /// `[r_min(rep) : t]`.
    pub fn jm(&self, rep: &str, t: &JTerm) -> Count {
        let key = (self.rep_key(rep), t.clone());
        if let Some(m) = self.jm.borrow().get(&key) {
            self.touched.borrow_mut().merge(&m.oracle);
            return Count::from(&m.value);
        }
        let l = &self.reps[rep];
        let value = self.engine.jacquet_multiplicity(l, t);
        let lower = t.gl.words().concat(&self.engine.lower_words(&t.tau));
        let oracle = self.check(
            self.engine.words(l).as_deref(),
            &lower,
            &value,
            format!("[{rep} : {t}]"),
        );
        self.touched.borrow_mut().merge(&oracle);
        let c = Count::from(&value);
        self.jm.borrow_mut().insert(key, Memo { value, oracle });
        c
    }

    /// Factor multiplicities of `rep` over the universe, zeros dropped.
    pub fn factors(&self, rep: &str) -> BTreeMap<ClassAtom, Count> {
        self.universe
            .iter()
            .map(|x| (x.clone(), self.mult(rep, x)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    pub fn candidates(&self, sign: Sign) -> Result<CandidateReport> {
        enumerate_nontempered_candidates(self.a, self.b, self.c, sign)
    }

    /// Oracle checks behind the values read since the last call.
    pub fn take_oracle(&self) -> OracleStats {
        std::mem::take(&mut *self.touched.borrow_mut())
    }

    pub fn conflicts(&self) -> Vec<String> {
        self.engine.conflicts()
    }
}
