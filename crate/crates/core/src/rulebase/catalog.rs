//! The fact catalog: cited composition-series and Jacquet-module facts,
//! stored as text records with symbolic parameters `a < b < c`.

use std::collections::BTreeMap;

use crate::atom::{ClassAtom, InducedLabel, Sign};
use crate::error::{Error, Result};
use crate::gl::GlIrr;
use crate::half::HalfInt;
use crate::parse::{
    key_value_records, parse_atom_with, parse_chain_with, parse_combination_with,
    parse_expression_with, parse_tensor_term_with,
};

use super::{Combination, JTerm};

const BUILTIN: &str = include_str!("../../data/facts.txt");

const PARAMS: [&str; 3] = ["a", "b", "c"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactKind {
    Decomposition,
    Jacquet,
    Probe,
    Bound,
    Closure,
    Multiplicity,
}

impl FactKind {
    fn from_name(s: &str) -> Option<FactKind> {
        Some(match s {
            "decomposition" => FactKind::Decomposition,
            "jacquet" => FactKind::Jacquet,
            "probe" => FactKind::Probe,
            "bound" => FactKind::Bound,
            "closure" => FactKind::Closure,
            "multiplicity" => FactKind::Multiplicity,
            _ => return None,
        })
    }
}

/// Values for the parameters a fact mentions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Params {
    vals: [Option<HalfInt>; 3],
}

impl Params {
    pub fn triple(a: HalfInt, b: HalfInt, c: HalfInt) -> Self {
        Params {
            vals: [Some(a), Some(b), Some(c)],
        }
    }

    pub fn get(&self, name: &str) -> Option<HalfInt> {
        PARAMS
            .iter()
            .position(|p| *p == name)
            .and_then(|i| self.vals[i])
    }
}

#[derive(Clone, Debug)]
pub struct Fact {
    pub id: String,
    pub kind: FactKind,
    pub citation: String,
    fields: BTreeMap<String, String>,
    used: Vec<usize>,
}

/// A decomposition fact instantiated at concrete parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub fact: String,
    pub pattern: InducedLabel,
    pub expansion: Combination,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacquetBound {
    pub fact: String,
    pub term: JTerm,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub fact: String,
    pub discrete: Vec<ClassAtom>,
    /// Non-tempered atoms admitted beyond the enumerated candidates.
    pub extra: Vec<ClassAtom>,
    pub sign: Sign,
    pub triple: (HalfInt, HalfInt, HalfInt),
}

impl Fact {
    fn field(&self, key: &str) -> Result<&str> {
        self.fields
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::Catalog(format!("{}: missing field {key:?}", self.id)))
    }

    fn wrap<T>(&self, r: Result<T>) -> Result<T> {
        r.map_err(|e| Error::Catalog(format!("{}: {e}", self.id)))
    }

    fn constraints_hold(&self, p: &Params) -> Result<bool> {
        let env = |n: &str| p.get(n);
        let Ok(chain) = self.field("constraints") else {
            return Ok(true);
        };
        for part in chain.split(',') {
            if !self
                .wrap(parse_chain_with(part, &env))?
                .iter()
                .all(|(x, y)| x < y)
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every assignment of the used parameters from `values` that satisfies
    /// the constraints.
    fn assignments(&self, values: &[HalfInt]) -> Vec<Params> {
        let mut out = Vec::new();
        let mut cur = Params::default();
        self.assign(0, values, &mut cur, &mut out);
        out
    }

    fn assign(&self, k: usize, values: &[HalfInt], cur: &mut Params, out: &mut Vec<Params>) {
        if k == self.used.len() {
            if self.constraints_hold(cur).unwrap_or(false) {
                out.push(*cur);
            }
            return;
        }
        for v in values {
            cur.vals[self.used[k]] = Some(*v);
            self.assign(k + 1, values, cur, out);
        }
        cur.vals[self.used[k]] = None;
    }

    fn expr(&self, key: &str, p: &Params) -> Result<InducedLabel> {
        let env = |n: &str| p.get(n);
        self.wrap(parse_expression_with(self.field(key)?, &env))
    }

    fn atom(&self, key: &str, p: &Params) -> Result<ClassAtom> {
        let env = |n: &str| p.get(n);
        self.wrap(parse_atom_with(self.field(key)?, &env))
    }

    fn combination(&self, key: &str, p: &Params) -> Result<Combination> {
        let env = |n: &str| p.get(n);
        let mut out = Combination::new();
        for (atom, n) in self.wrap(parse_combination_with(self.field(key)?, &env))? {
            *out.entry(atom).or_default() += n;
        }
        Ok(out)
    }

    fn term(&self, p: &Params) -> Result<JTerm> {
        let env = |n: &str| p.get(n);
        let (segs, tau) = self.wrap(parse_tensor_term_with(self.field("term")?, &env))?;
        match segs.as_slice() {
            [s] => Ok(JTerm::new(GlIrr::Delta(*s), tau)),
            _ => Err(Error::Catalog(format!(
                "{}: term needs one segment",
                self.id
            ))),
        }
    }

    pub fn decomposition(&self, p: &Params) -> Result<Decomposition> {
        Ok(Decomposition {
            fact: self.id.clone(),
            pattern: self.expr("pattern", p)?,
            expansion: self.combination("expansion", p)?,
        })
    }

    pub fn jacquet(&self, p: &Params) -> Result<(ClassAtom, JacquetBound)> {
        let count = match self.kind {
            FactKind::Probe => 0,
            _ => self
                .field("count")?
                .trim()
                .parse()
                .map_err(|_| Error::Catalog(format!("{}: bad count", self.id)))?,
        };
        Ok((
            self.atom("atom", p)?,
            JacquetBound {
                fact: self.id.clone(),
                term: self.term(p)?,
                count,
            },
        ))
    }

    pub fn kernels(&self, p: &Params) -> Result<(InducedLabel, Vec<InducedLabel>)> {
        let env = |n: &str| p.get(n);
        let ks = self
            .field("kernels")?
            .split(';')
            .filter(|s| s.contains("|x"))
            .map(|s| self.wrap(parse_expression_with(s, &env)))
            .collect::<Result<Vec<_>>>()?;
        Ok((self.expr("pattern", p)?, ks))
    }

    pub fn closure(&self, p: &Params) -> Result<(InducedLabel, Closure)> {
        let sign = match self.field("candidates")?.trim() {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            s => return Err(Error::Catalog(format!("{}: bad sign {s:?}", self.id))),
        };
        let discrete = self.combination("discrete", p)?.into_keys().collect();
        let extra = if self.fields.contains_key("extra") {
            self.combination("extra", p)?.into_keys().collect()
        } else {
            Vec::new()
        };
        let get = |n| {
            p.get(n)
                .ok_or_else(|| Error::Catalog(format!("{}: needs a, b, c", self.id)))
        };
        Ok((
            self.expr("pattern", p)?,
            Closure {
                fact: self.id.clone(),
                discrete,
                extra,
                sign,
                triple: (get("a")?, get("b")?, get("c")?),
            },
        ))
    }

    pub fn multiplicity(&self, p: &Params) -> Result<(InducedLabel, ClassAtom, u64)> {
        let count = self
            .field("count")?
            .trim()
            .parse()
            .map_err(|_| Error::Catalog(format!("{}: bad count", self.id)))?;
        Ok((self.expr("pattern", p)?, self.atom("atom", p)?, count))
    }

    /// Support and positivity checks at one parameter point.
    fn validate_at(&self, p: &Params) -> Result<()> {
        let bad = |what: &str| Err(Error::Catalog(format!("{}: {what}", self.id)));
        match self.kind {
            FactKind::Decomposition => {
                let d = self.decomposition(p)?;
                let sup = d.pattern.support();
                for (atom, n) in &d.expansion {
                    if *n <= 0 {
                        return bad("non-positive coefficient");
                    }
                    if atom.support() != sup {
                        return bad(&format!("{atom} changes the support of {}", d.pattern));
                    }
                }
            }
            FactKind::Jacquet | FactKind::Probe => {
                let (atom, j) = self.jacquet(p)?;
                if j.term.support() != atom.support() {
                    return bad(&format!("term {} does not fit {atom}", j.term));
                }
                if self.kind == FactKind::Jacquet && j.count == 0 {
                    return bad("zero count");
                }
            }
            FactKind::Bound => {
                let (pat, ks) = self.kernels(p)?;
                if ks.iter().any(|k| k.support() != pat.support()) {
                    return bad("kernel support differs");
                }
            }
            FactKind::Multiplicity => {
                let (pat, x, _) = self.multiplicity(p)?;
                if x.support() != pat.support() {
                    return bad(&format!("{x} does not fit {pat}"));
                }
            }
            FactKind::Closure => {
                let (pat, c) = self.closure(p)?;
                if c.discrete
                    .iter()
                    .chain(&c.extra)
                    .any(|x| x.support() != pat.support())
                {
                    return bad("discrete series support differs");
                }
            }
        }
        Ok(())
    }
}

/// Read-only after load.
#[derive(Clone, Debug)]
pub struct Catalog {
    facts: Vec<Fact>,
}

fn parse_records(text: &str) -> Result<Vec<Fact>> {
    let mut facts = Vec::new();
    for f in key_value_records(text).map_err(Error::Catalog)? {
        let id = f
            .get("id")
            .cloned()
            .ok_or_else(|| Error::Catalog("record without id".into()))?;
        let kind = f
            .get("kind")
            .and_then(|k| FactKind::from_name(k))
            .ok_or_else(|| Error::Catalog(format!("{id}: unknown kind")))?;
        let citation = f
            .get("citation")
            .cloned()
            .filter(|c| !c.trim().is_empty())
            .ok_or_else(|| Error::Catalog(format!("{id}: every fact needs a citation")))?;
        let names = f.get("constraints").map(String::as_str).unwrap_or("");
        let used = PARAMS
            .iter()
            .enumerate()
            .filter(|(_, p)| {
                names
                    .split(|ch: char| !ch.is_alphanumeric())
                    .any(|w| w == **p)
            })
            .map(|(i, _)| i)
            .collect();
        facts.push(Fact {
            id,
            kind,
            citation,
            fields: f,
            used,
        });
    }
    Ok(facts)
}

/// Parameter points used to validate facts on load.
const VALIDATION_TRIPLES: [(i64, i64, i64); 3] = [(1, 3, 5), (1, 5, 7), (3, 5, 9)];

impl Catalog {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("the built-in catalog is valid")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let facts = parse_records(text)?;
        let mut seen = std::collections::BTreeSet::new();
        for f in &facts {
            if !seen.insert(f.id.clone()) {
                return Err(Error::Catalog(format!("duplicate id {}", f.id)));
            }
            for (a, b, c) in VALIDATION_TRIPLES {
                let p = Params::triple(
                    HalfInt::from_twice(a),
                    HalfInt::from_twice(b),
                    HalfInt::from_twice(c),
                );
                f.validate_at(&p)?;
            }
        }
        Ok(Catalog { facts })
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn get(&self, id: &str) -> Option<&Fact> {
        self.facts.iter().find(|f| f.id == id)
    }

    fn of_kind(&self, kind: FactKind) -> impl Iterator<Item = &Fact> {
        self.facts.iter().filter(move |f| f.kind == kind)
    }

    /// The cited expansion of `l`, or `None` ("no fact").
    pub fn decomposition(&self, l: &InducedLabel) -> Option<Decomposition> {
        let values = distinct(&l.support());
        for f in self.of_kind(FactKind::Decomposition) {
            for p in f.assignments(&values) {
                if let Ok(d) = f.decomposition(&p) {
                    if &d.pattern == l {
                        return Some(d);
                    }
                }
            }
        }
        None
    }

    /// Every cited decomposition living on the given support.
    pub fn decompositions_on(&self, support: &[HalfInt]) -> Vec<Decomposition> {
        let values = distinct(support);
        let mut out = Vec::new();
        for f in self.of_kind(FactKind::Decomposition) {
            for p in f.assignments(&values) {
                if let Ok(d) = f.decomposition(&p) {
                    if d.pattern.support() == support {
                        out.push(d);
                    }
                }
            }
        }
        out
    }

    fn atom_records(&self, kind: FactKind, x: &ClassAtom) -> Vec<JacquetBound> {
        let values = distinct(&x.support());
        let mut out = Vec::new();
        for f in self.of_kind(kind) {
            for p in f.assignments(&values) {
                if let Ok((atom, j)) = f.jacquet(&p) {
                    if &atom == x {
                        out.push(j);
                    }
                }
            }
        }
        out
    }

    /// Cited lower bounds `μ*(x) ≥ count · term`.
    pub fn jacquet_bounds(&self, x: &ClassAtom) -> Vec<JacquetBound> {
        self.atom_records(FactKind::Jacquet, x)
    }

    /// Designated witness terms for `x` whose multiplicity must be derived.
    pub fn probes(&self, x: &ClassAtom) -> Vec<JTerm> {
        self.atom_records(FactKind::Probe, x)
            .into_iter()
            .map(|j| j.term)
            .collect()
    }

    /// Kernels bounding `l` from above, when a bound fact matches.
    pub fn kernels(&self, l: &InducedLabel) -> Option<(String, Vec<InducedLabel>)> {
        let values = distinct(&l.support());
        for f in self.of_kind(FactKind::Bound) {
            for p in f.assignments(&values) {
                if let Ok((pat, ks)) = f.kernels(&p) {
                    if &pat == l {
                        return Some((f.id.clone(), ks));
                    }
                }
            }
        }
        None
    }

    /// A cited exact multiplicity `[l : x]`.
    pub fn multiplicity(&self, l: &InducedLabel, x: &ClassAtom) -> Option<(String, u64)> {
        let values = distinct(&l.support());
        for f in self.of_kind(FactKind::Multiplicity) {
            for p in f.assignments(&values) {
                if let Ok((pat, atom, n)) = f.multiplicity(&p) {
                    if &pat == l && &atom == x {
                        return Some((f.id.clone(), n));
                    }
                }
            }
        }
        None
    }

    pub fn closure(&self, l: &InducedLabel) -> Option<Closure> {
        let values = distinct(&l.support());
        for f in self.of_kind(FactKind::Closure) {
            for p in f.assignments(&values) {
                if let Ok((pat, c)) = f.closure(&p) {
                    if &pat == l {
                        return Some(c);
                    }
                }
            }
        }
        None
    }
}

impl Catalog {
    /// Closure facts whose pattern lives on the given support.
    pub fn closures_on(&self, support: &[HalfInt]) -> Vec<(InducedLabel, Closure)> {
        let values = distinct(support);
        let mut out = Vec::new();
        for f in self.of_kind(FactKind::Closure) {
            for p in f.assignments(&values) {
                if let Ok((pat, c)) = f.closure(&p) {
                    if pat.support() == support {
                        out.push((pat, c));
                    }
                }
            }
        }
        out
    }

    /// Bound facts whose pattern lives on the given support.
    pub fn bounds_on(&self, support: &[HalfInt]) -> Vec<InducedLabel> {
        let values = distinct(support);
        let mut out = Vec::new();
        for f in self.of_kind(FactKind::Bound) {
            for p in f.assignments(&values) {
                if let Ok((pat, _)) = f.kernels(&p) {
                    if pat.support() == support {
                        out.push(pat);
                    }
                }
            }
        }
        out
    }
}

fn distinct(v: &[HalfInt]) -> Vec<HalfInt> {
    let mut d: Vec<HalfInt> = v.iter().map(|x| x.abs()).collect();
    d.sort();
    d.dedup();
    d
}
