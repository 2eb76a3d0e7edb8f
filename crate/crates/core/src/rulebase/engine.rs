//! Multiplicity engine.
//!
//! `[I : X]` is computed as an interval by combining every rule that applies
//! and intersecting the results. Goals are memoised; a goal met again while
//! it is being computed contributes its best known bound (or nothing), and
//! results that depended on such a cut are recomputed in later passes.

use std::cell::{Cell, RefCell};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::rc::Rc;

use num_rational::Ratio;

use super::candidates::enumerate_nontempered_candidates;
use super::catalog::Catalog;
use super::{decompose_induced_over_cuspidal, Combination, JTerm};
use crate::atom::{ClassAtom, InducedLabel, Sign};
use crate::gl::{gl_part_multiplicity, GlIrr};
use crate::half::HalfInt;
use crate::mustar::{mu_star_base, mu_star_induced};
use crate::segment::{linked, mk_segment, Segment};
use crate::tensor::RGTensor;
use crate::verdict::MultiplicityVerdict as MV;
use crate::words::WordMultiset;

const MAX_PASSES: usize = 6;
const MAX_SATURATED_ROWS: usize = 96;

type Account = Rc<BTreeMap<ClassAtom, MV>>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Goal {
    Mult(InducedLabel, ClassAtom),
    Jm(InducedLabel, JTerm),
    Acc(JTerm),
}

#[derive(Clone)]
enum Val {
    V(MV),
    A(Account),
}

impl Val {
    fn mv(self) -> MV {
        match self {
            Val::V(v) => v,
            Val::A(_) => unreachable!("account stored under a multiplicity goal"),
        }
    }

    fn acc(self) -> Account {
        match self {
            Val::A(a) => a,
            Val::V(_) => unreachable!("multiplicity stored under an account goal"),
        }
    }
}

struct Entry {
    val: Val,
    tainted: bool,
    pass: usize,
}

#[derive(Default)]
struct State {
    cache: HashMap<Goal, Entry>,
    active: HashSet<Goal>,
    mu: HashMap<InducedLabel, Option<Rc<RGTensor>>>,
    words: HashMap<InducedLabel, Option<Rc<WordMultiset>>>,
    conflicts: Vec<String>,
}

/// The multiplicity engine over a fact catalog.
pub struct Engine<'c> {
    cat: &'c Catalog,
    st: RefCell<State>,
    cuts: Cell<u64>,
    pass: Cell<usize>,
    changed: Cell<bool>,
}

fn meet_mv(old: &MV, new: &MV, goal: &Goal, conflicts: &mut Vec<String>) -> MV {
    match old.meet(new) {
        Some(v) => v,
        None => {
            conflicts.push(format!(
                "{goal:?}: {old} ({:?}) vs {new} ({:?})",
                old.witness, new.witness
            ));
            new.clone()
        }
    }
}

fn sub_floor(a: u64, b: u64) -> u64 {
    a.saturating_sub(b)
}

/// `L(I)` when `I` is a standard module.
pub fn lang_quotient(i: &InducedLabel) -> Option<ClassAtom> {
    ClassAtom::lang(i.segments().to_vec(), i.base().clone()).ok()
}

fn is_closed_form(x: &ClassAtom) -> bool {
    matches!(
        x,
        ClassAtom::Cusp | ClassAtom::SignedSeg { .. } | ClassAtom::LangSeg { .. }
    )
}

/// `[-c, d]` with `c ≤ d` whose absolute support is `support`, if any.
fn segment_of_support(support: &[HalfInt]) -> Option<Segment> {
    let d = *support.last()?;
    let mut c = -d;
    while c <= d {
        if let Ok(Some(s)) = mk_segment(-c, d) {
            let mut v: Vec<HalfInt> = s.support().map(HalfInt::abs).collect();
            v.sort();
            if v == support {
                return Some(s);
            }
        }
        c = c.step(1);
    }
    None
}

/// Closed-form atoms with the given support.
fn closed_atoms(support: &[HalfInt]) -> Vec<ClassAtom> {
    if support.is_empty() {
        return vec![ClassAtom::Cusp];
    }
    let Some(s) = segment_of_support(support) else {
        return vec![];
    };
    let (c, d) = (-s.lo(), s.hi());
    let mut out = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        out.extend(ClassAtom::signed_seg(c, d, sign).ok());
    }
    out.extend(ClassAtom::lang_seg(c, d).ok());
    out
}

/// Count of a word in the full principal series on its support.
fn principal_count(w: &[HalfInt]) -> i64 {
    let mut m: BTreeMap<HalfInt, i64> = BTreeMap::new();
    for e in w {
        *m.entry(e.abs()).or_default() += 1;
    }
    m.values().map(|&k| (1..=k).product::<i64>()).product()
}

/// Both ways of merging a linked pair, in either relative orientation.
fn merges(a: Segment, b: Segment) -> Vec<(Segment, Option<Segment>)> {
    let mut out = Vec::new();
    for b in [b, b.dual()] {
        if linked(a, b) {
            let u = mk_segment(a.lo().min(b.lo()), a.hi().max(b.hi()))
                .ok()
                .flatten();
            let n = mk_segment(a.lo().max(b.lo()), a.hi().min(b.hi()))
                .ok()
                .flatten();
            if let Some(u) = u {
                out.push((u, n));
            }
        }
    }
    out
}

impl<'c> Engine<'c> {
    pub fn new(cat: &'c Catalog) -> Self {
        Engine {
            cat,
            st: RefCell::default(),
            cuts: Cell::new(0),
            pass: Cell::new(0),
            changed: Cell::new(false),
        }
    }

    pub fn catalog(&self) -> &Catalog {
        self.cat
    }

    /// Inconsistent pairs of bounds met so far; non-empty means some fact is
    /// wrong for the parameters in use.
    pub fn conflicts(&self) -> Vec<String> {
        self.st.borrow().conflicts.clone()
    }

    fn memo(&self, goal: Goal, fallback: Val, compute: impl FnOnce() -> Val) -> Val {
        {
            let st = self.st.borrow();
            let active = st.active.contains(&goal);
            match st.cache.get(&goal) {
                Some(e) if active || !e.tainted || e.pass == self.pass.get() => {
                    if active {
                        self.cuts.set(self.cuts.get() + 1);
                    }
                    return e.val.clone();
                }
                None if active => {
                    self.cuts.set(self.cuts.get() + 1);
                    return fallback;
                }
                _ => {}
            }
        }
        self.st.borrow_mut().active.insert(goal.clone());
        let c0 = self.cuts.get();
        let v = compute();
        let tainted = self.cuts.get() != c0;
        let mut st = self.st.borrow_mut();
        st.active.remove(&goal);
        let State {
            cache, conflicts, ..
        } = &mut *st;
        let v = match (cache.get(&goal).map(|e| &e.val), v) {
            (Some(Val::V(old)), Val::V(new)) => {
                let m = meet_mv(old, &new, &goal, conflicts);
                if &m != old {
                    self.changed.set(true);
                }
                Val::V(m)
            }
            (Some(Val::A(old)), Val::A(new)) => {
                let mut m = (**old).clone();
                for (k, nv) in new.iter() {
                    let e = m.entry(k.clone()).or_insert_with(MV::unknown);
                    let merged = meet_mv(e, nv, &goal, conflicts);
                    if &merged != e {
                        self.changed.set(true);
                        *e = merged;
                    }
                }
                Val::A(Rc::new(m))
            }
            (None, v) => {
                self.changed.set(true);
                v
            }
            (_, v) => v,
        };
        cache.insert(
            goal,
            Entry {
                val: v.clone(),
                tainted,
                pass: self.pass.get(),
            },
        );
        v
    }

    /// Runs `f` in passes until it is exact or nothing improves.
    fn solve(&self, f: impl Fn() -> MV) -> MV {
        let mut v = f();
        for _ in 0..MAX_PASSES {
            if v.is_exact() {
                break;
            }
            self.changed.set(false);
            self.pass.set(self.pass.get() + 1);
            v = f();
            if !self.changed.get() {
                break;
            }
        }
        v
    }

    /// `[I : X]`.
    pub fn multiplicity(&self, i: &InducedLabel, x: &ClassAtom) -> MV {
        self.solve(|| self.mult(i, x))
    }

    /// `[r_min(I) : g ⊗ τ]`, the multiplicity of an irreducible Jacquet term.
    pub fn jacquet_multiplicity(&self, i: &InducedLabel, t: &JTerm) -> MV {
        self.solve(|| self.jm(i, t))
    }

    /// `[T : g ⊗ τ]` for an arbitrary positive tensor.
    pub fn tensor_multiplicity(&self, t: &RGTensor, target: &JTerm) -> MV {
        self.solve(|| {
            t.iter()
                .map(|(g, cl, n)| {
                    let gm = gl_part_multiplicity(g, &target.gl);
                    if gm.hi == Some(0) {
                        return MV::zero();
                    }
                    (gm * self.mult(cl, &target.tau)).scale(n.unsigned_abs())
                })
                .sum()
        })
    }

    fn mu(&self, i: &InducedLabel) -> Option<Rc<RGTensor>> {
        if let Some(m) = self.st.borrow().mu.get(i) {
            return m.clone();
        }
        let m = mu_star_induced(i).ok().map(Rc::new);
        self.st.borrow_mut().mu.insert(i.clone(), m.clone());
        m
    }

    /// Words of the minimal Jacquet module, when the base has a closed form.
    pub fn words(&self, i: &InducedLabel) -> Option<Rc<WordMultiset>> {
        if let Some(w) = self.st.borrow().words.get(i) {
            return w.clone();
        }
        let w = self.mu(i).map(|mu| {
            let mut out = WordMultiset::new();
            for (g, cl, n) in mu.iter() {
                if cl.as_atom() == Some(&ClassAtom::Cusp) {
                    out.add_scaled(&g.words(), n);
                }
            }
            Rc::new(out)
        });
        self.st.borrow_mut().words.insert(i.clone(), w.clone());
        w
    }

    fn atom_words(&self, x: &ClassAtom) -> Option<Rc<WordMultiset>> {
        if is_closed_form(x) {
            self.words(&InducedLabel::atom(x.clone()))
        } else {
            None
        }
    }

    /// Words known to occur in `r_min(X)`, with a lower bound on their count.
    pub fn lower_words(&self, x: &ClassAtom) -> WordMultiset {
        if let Some(w) = self.atom_words(x) {
            return (*w).clone();
        }
        let mut best: BTreeMap<JTerm, u64> = BTreeMap::new();
        for j in self.cat.jacquet_bounds(x) {
            let e = best.entry(j.term).or_default();
            *e = (*e).max(j.count);
        }
        if let Some(t) = frobenius_term(x) {
            let e = best.entry(t).or_default();
            *e = (*e).max(1);
        }
        let mut out = WordMultiset::new();
        for (t, k) in best {
            if let Some(tw) = self.atom_words(&t.tau) {
                out.add_scaled(&t.gl.words().concat(&tw), k as i64);
            }
        }
        // L(δ(Δ_1) × … × δ(Δ_k) ⋊ τ) ↪ δ(Δ_1^∨) × … × δ(Δ_k^∨) ⋊ τ
        if let ClassAtom::Lang { segs, tau } = x {
            if segs.len() > 1 {
                let head: Vec<HalfInt> = segs
                    .iter()
                    .flat_map(|s| s.dual().descending_word())
                    .collect();
                let tail = self.lower_words(tau);
                for (w, k) in WordMultiset::singleton(head).concat(&tail).iter() {
                    if out.count(w) < k {
                        out.insert(w.clone(), k - out.count(w));
                    }
                }
            }
        }
        out
    }

    fn mult(&self, i: &InducedLabel, x: &ClassAtom) -> MV {
        self.memo(
            Goal::Mult(i.clone(), x.clone()),
            Val::V(MV::unknown()),
            || Val::V(self.mult_raw(i, x)),
        )
        .mv()
    }

    /// Each rule's verdict for `[I : X]` on its own, for diagnostics.
    pub fn explain(&self, i: &InducedLabel, x: &ClassAtom) -> Vec<(&'static str, MV)> {
        let mut out = Vec::new();
        if i.segments().len() == 1 && i.base() == &ClassAtom::Cusp {
            if let Ok(parts) = decompose_induced_over_cuspidal(i) {
                out.push(("single segment", coefficient(&parts, x)));
            }
        }
        if let Some(d) = self.cat.decomposition(i) {
            out.push(("decomposition fact", coefficient(&d.expansion, x)));
        }
        out.push(("words", self.word_rule(i, x)));
        out.push(("stages", self.stages(i, x)));
        out.push(("lower bounds", self.lower_bounds(i, x, 0)));
        out.push(("witnesses", self.witness_bound(i, x, &MV::unknown())));
        out
    }

    fn mult_raw(&self, i: &InducedLabel, x: &ClassAtom) -> MV {
        if i.support() != x.support() {
            return MV::zero();
        }
        if let Some(a) = i.as_atom() {
            return MV::exact(u64::from(a == x));
        }
        if i.segments().len() == 1 && i.base() == &ClassAtom::Cusp {
            if let Ok(parts) = decompose_induced_over_cuspidal(i) {
                return coefficient(&parts, x).with_witness("single segment over the cuspidal");
            }
        }
        if let Some(d) = self.cat.decomposition(i) {
            return coefficient(&d.expansion, x).with_witness(d.fact);
        }
        if let Some((fact, n)) = self.cat.multiplicity(i, x) {
            return MV::exact(n).with_witness(fact);
        }
        let lq = lang_quotient(i);
        if lq.as_ref() == Some(x) {
            return MV::exact(1).with_witness("Langlands quotient of a standard module");
        }
        if let Some(c) = self.cat.closure(i) {
            let (a, b, cc) = c.triple;
            let allowed = c.discrete.contains(x)
                || c.extra.contains(x)
                || enumerate_nontempered_candidates(a, b, cc, c.sign)
                    .map(|r| r.candidates.contains(x))
                    .unwrap_or(true);
            if !allowed {
                return MV::zero().with_witness(c.fact);
            }
        }

        let mut v = MV::unknown();
        upd(&mut v, self.word_rule(i, x));
        if v.is_exact() {
            return v;
        }
        upd(&mut v, self.stages(i, x));
        if v.is_exact() {
            return v;
        }
        if let Some((fact, ks)) = self.cat.kernels(i) {
            let mut hi: Option<u64> = Some(u64::from(lq.as_ref() == Some(x)));
            for k in &ks {
                hi = hi.zip(self.mult(k, x).hi).map(|(a, b)| a + b);
            }
            if let Some(h) = hi {
                upd(&mut v, MV::range(0, h).with_witness(fact));
            }
        }
        if v.hi != Some(v.lo) {
            let w = self.lower_bounds(i, x, v.lo);
            upd(&mut v, w);
        }
        if v.hi != Some(v.lo) {
            let w = self.witness_bound(i, x, &v);
            upd(&mut v, w);
        }
        v
    }

    /// Saturated-word rule and the word-count upper bound, for closed-form
    /// `X` and closed-form bases.
    fn word_rule(&self, i: &InducedLabel, x: &ClassAtom) -> MV {
        let Some(wi) = self.words(i) else {
            return MV::unknown();
        };
        let Some(wx) = self.atom_words(x) else {
            let lw = self.lower_words(x);
            let hi = lw
                .iter()
                .filter(|(_, n)| *n > 0)
                .map(|(w, n)| (wi.count(w).max(0) / n) as u64)
                .min();
            return match hi {
                Some(0) => MV::zero().with_witness("word counts"),
                Some(h) => MV::range(0, h).with_witness("word counts"),
                None => MV::unknown(),
            };
        };
        let mut hi = u64::MAX;
        for (w, n) in wx.iter() {
            if n > 0 {
                hi = hi.min((wi.count(w).max(0) / n) as u64);
            }
        }
        if hi == u64::MAX {
            return MV::unknown();
        }
        if hi == 0 {
            return MV::zero().with_witness("word counts");
        }
        let block: Vec<(ClassAtom, Rc<WordMultiset>)> = closed_atoms(&x.support())
            .into_iter()
            .filter_map(|y| self.atom_words(&y).map(|w| (y, w)))
            .collect();
        let xi = block
            .iter()
            .position(|(y, _)| y == x)
            .expect("x in its own block");
        let mut rows: Vec<(Vec<i64>, i64)> = Vec::new();
        for (w, _) in wx.iter() {
            let counts: Vec<i64> = block.iter().map(|(_, ws)| ws.count(w)).collect();
            if counts.iter().sum::<i64>() != principal_count(w) {
                continue;
            }
            let ci = wi.count(w);
            if counts.iter().enumerate().all(|(k, &n)| k == xi || n == 0) {
                if ci % counts[xi] == 0 {
                    return MV::exact((ci / counts[xi]) as u64).with_witness("saturated word");
                }
                continue;
            }
            if rows.len() < MAX_SATURATED_ROWS {
                rows.push((counts, ci));
            }
        }
        if let Some(n) = solve_coordinate(&rows, xi) {
            if n <= hi {
                return MV::exact(n).with_witness("saturated words");
            }
        }
        MV::range(0, hi).with_witness("word counts")
    }

    /// Decompose one segment against the base and recurse on the rest.
    fn stages(&self, i: &InducedLabel, x: &ClassAtom) -> MV {
        let segs = i.segments();
        let mut v = MV::unknown();
        let mut seen = BTreeSet::new();
        for (j, s) in segs.iter().enumerate() {
            if !seen.insert(*s) {
                continue;
            }
            let rest: Vec<Segment> = segs
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != j)
                .map(|(_, s)| *s)
                .collect();
            if rest.is_empty() {
                continue;
            }
            let part = InducedLabel::new(vec![*s], i.base().clone());
            let parts = if i.base() == &ClassAtom::Cusp {
                decompose_induced_over_cuspidal(&part).ok()
            } else {
                self.cat.decomposition(&part).map(|d| d.expansion)
            };
            let Some(parts) = parts else { continue };
            let sum: MV = parts
                .iter()
                .map(|(a, &n)| {
                    self.mult(&InducedLabel::new(rest.clone(), a.clone()), x)
                        .scale(n as u64)
                })
                .sum();
            match v.meet(&sum) {
                Some(m) => v = m,
                None => self.st.borrow_mut().conflicts.push(format!(
                    "stages of {i} for {x}: {v} ({:?}) vs {sum} through {s}",
                    v.witness
                )),
            }
        }
        v
    }

    fn lower_bounds(&self, i: &InducedLabel, x: &ClassAtom, mut lo: u64) -> MV {
        let segs = i.segments();
        // merging a linked pair gives a subquotient of the GL product
        for p in 0..segs.len() {
            for q in p + 1..segs.len() {
                for (u, n) in merges(segs[p], segs[q]) {
                    let mut rest: Vec<Segment> = segs
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != p && *k != q)
                        .map(|(_, s)| *s)
                        .collect();
                    rest.push(u);
                    rest.extend(n);
                    let l = InducedLabel::new(rest, i.base().clone());
                    lo = lo.max(self.mult(&l, x).lo);
                }
            }
        }
        // the base is one piece of a larger induced representation
        for (parent_seg, parent_base, siblings) in self.parents(i.base()) {
            let mut ps = segs.to_vec();
            ps.push(parent_seg);
            let parent = InducedLabel::new(ps, parent_base);
            let top = self.mult(&parent, x).lo;
            if top <= lo {
                continue;
            }
            let mut rest = Some(0u64);
            for (sib, n) in siblings {
                let h = self.mult(&InducedLabel::new(segs.to_vec(), sib), x).hi;
                rest = rest.zip(h).map(|(r, h)| r + h * n);
                if rest.is_none_or(|r| r >= top) {
                    break;
                }
            }
            if let Some(r) = rest {
                lo = lo.max(sub_floor(top, r));
            }
        }
        MV::at_least(lo)
    }

    /// Single-segment inductions containing `b` once, with the other pieces.
    fn parents(&self, b: &ClassAtom) -> Vec<(Segment, ClassAtom, Vec<(ClassAtom, u64)>)> {
        let mut out = Vec::new();
        if let ClassAtom::SignedSeg { c, d, .. } | ClassAtom::LangSeg { c, d } = b {
            if let Ok(Some(s)) = mk_segment(-*c, *d) {
                let l = InducedLabel::new(vec![s], ClassAtom::Cusp);
                if let Ok(parts) = decompose_induced_over_cuspidal(&l) {
                    out.push((l.segments()[0], ClassAtom::Cusp, siblings(&parts, b)));
                }
            }
        }
        for d in self.cat.decompositions_on(&b.support()) {
            if d.pattern.segments().len() == 1 && d.expansion.get(b) == Some(&1) {
                out.push((
                    d.pattern.segments()[0],
                    d.pattern.base().clone(),
                    siblings(&d.expansion, b),
                ));
            }
        }
        out
    }

    fn witness_terms(&self, x: &ClassAtom) -> Vec<JTerm> {
        let mut ts: Vec<JTerm> = self
            .cat
            .jacquet_bounds(x)
            .into_iter()
            .map(|j| j.term)
            .collect();
        ts.extend(self.cat.probes(x));
        ts.extend(frobenius_term(x));
        ts.sort();
        ts.dedup();
        ts
    }

    /// Each stage decomposition of `I` with the parts' verdicts.
    pub fn explain_stages(&self, i: &InducedLabel, x: &ClassAtom) -> Vec<String> {
        let segs = i.segments();
        let mut out = Vec::new();
        for (j, s) in segs.iter().enumerate() {
            let rest: Vec<Segment> = segs
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != j)
                .map(|(_, s)| *s)
                .collect();
            let part = InducedLabel::new(vec![*s], i.base().clone());
            let parts = if i.base() == &ClassAtom::Cusp {
                decompose_induced_over_cuspidal(&part).ok()
            } else {
                self.cat.decomposition(&part).map(|d| d.expansion)
            };
            let Some(parts) = parts else { continue };
            let mut line = format!("via {s}:");
            for (a, n) in parts {
                let l = InducedLabel::new(rest.clone(), a);
                line += &format!(" {n}*[{l}] {};", self.mult(&l, x));
            }
            out.push(line);
        }
        out
    }

    /// The witness data behind [`Self::witness_bound`], for diagnostics.
    pub fn explain_witnesses(&self, i: &InducedLabel, x: &ClassAtom) -> Vec<String> {
        let mut out = Vec::new();
        for t in self.witness_terms(x) {
            let acc = self.account(&t);
            let jx = acc
                .get(x)
                .cloned()
                .unwrap_or_else(|| self.atom_jm_init(x, &t));
            let mut line = format!("{t}: [I:t] {} [X:t] {}", self.jm(i, &t), jx);
            for (y, jy) in acc.iter() {
                if y != x && jy.lo > 0 && y.support() == x.support() {
                    line += &format!("; {y}: [Y:t] {jy} [I:Y] {}", self.mult(i, y));
                }
            }
            out.push(line);
        }
        out
    }

    /// `[I:X] · [X:t] + Σ_{Y≠X} [I:Y] · [Y:t] ≤ [I:t]`.
    fn witness_bound(&self, i: &InducedLabel, x: &ClassAtom, cur: &MV) -> MV {
        let mut hi = cur.hi;
        for t in self.witness_terms(x) {
            let acc = self.account(&t);
            let jx = acc
                .get(x)
                .cloned()
                .unwrap_or_else(|| self.atom_jm_init(x, &t))
                .lo;
            if jx == 0 {
                continue;
            }
            let Some(ji) = self.jm(i, &t).hi else {
                continue;
            };
            let mut used = 0u64;
            for (y, jy) in acc.iter() {
                if y == x || jy.lo == 0 || y.support() != x.support() {
                    continue;
                }
                if hi.is_some_and(|h| sub_floor(ji, used) / jx < h)
                    && sub_floor(ji, used) / jx <= cur.lo
                {
                    break;
                }
                used += self.mult(i, y).lo * jy.lo;
            }
            let b = sub_floor(ji, used) / jx;
            hi = Some(hi.map_or(b, |h| h.min(b)));
        }
        match hi {
            Some(h) if h >= cur.lo => MV::range(cur.lo, h).with_witness("Jacquet witness"),
            _ => MV::unknown(),
        }
    }

    fn jm(&self, i: &InducedLabel, t: &JTerm) -> MV {
        self.memo(
            Goal::Jm(i.clone(), t.clone()),
            Val::V(MV::unknown()),
            || Val::V(self.jm_raw(i, t)),
        )
        .mv()
    }

    fn jm_raw(&self, i: &InducedLabel, t: &JTerm) -> MV {
        if i.support() != t.support() {
            return MV::zero();
        }
        if let Some(x) = i.as_atom() {
            return self.atom_jm(x, t);
        }
        if let Some(mu) = self.mu(i) {
            return self.tensor_jm(&mu, t);
        }
        if let Some(d) = self.cat.decomposition(i) {
            return d
                .expansion
                .iter()
                .map(|(y, &n)| self.atom_jm(y, t).scale(n as u64))
                .sum();
        }
        MV::unknown()
    }

    fn tensor_jm(&self, mu: &RGTensor, t: &JTerm) -> MV {
        let want = t.gl.as_part().support();
        let tau_support = t.tau.support();
        mu.iter()
            .filter(|(g, cl, _)| g.support() == want && cl.support() == tau_support)
            .map(|(g, cl, n)| {
                let gm = gl_part_multiplicity(g, &t.gl);
                if gm.hi == Some(0) {
                    return MV::zero();
                }
                (gm * self.mult(cl, &t.tau)).scale(n as u64)
            })
            .sum()
    }

    /// `[r(X) : t]` from the accounting on `t`'s support.
    fn atom_jm(&self, x: &ClassAtom, t: &JTerm) -> MV {
        if is_closed_form(x) {
            return self.atom_jm_init(x, t);
        }
        let acc = self.account(t);
        match acc.get(x) {
            Some(v) => v.clone(),
            None => self.atom_jm_init(x, t),
        }
    }

    fn atom_jm_init(&self, x: &ClassAtom, t: &JTerm) -> MV {
        if x.support() != t.support() {
            return MV::zero();
        }
        if is_closed_form(x) {
            let mu = mu_star_base(x).expect("closed form");
            let cl = InducedLabel::atom(t.tau.clone());
            return mu
                .iter()
                .filter(|(_, c, _)| **c == cl)
                .map(|(g, _, n)| gl_part_multiplicity(g, &t.gl).scale(n as u64))
                .sum();
        }
        let mut lo = 0;
        for j in self.cat.jacquet_bounds(x) {
            if &j.term == t {
                lo = lo.max(j.count);
            }
        }
        if frobenius_term(x).as_ref() == Some(t) {
            lo = lo.max(1);
        }
        MV::at_least(lo)
    }

    /// Decompositions on `support` whose every coefficient is known.
    fn derived_decompositions(&self, support: &[HalfInt]) -> Vec<(InducedLabel, Combination)> {
        let mut out = Vec::new();
        for (pat, c) in self.cat.closures_on(support) {
            let (a, b, cc) = c.triple;
            let Ok(r) = enumerate_nontempered_candidates(a, b, cc, c.sign) else {
                continue;
            };
            let mut atoms = c.discrete.clone();
            atoms.extend(c.extra);
            atoms.extend(r.candidates);
            atoms.extend(lang_quotient(&pat));
            if let Some(comb) = self.exact_combination(&pat, &atoms) {
                out.push((pat, comb));
            }
        }
        out
    }

    fn exact_combination(&self, pat: &InducedLabel, atoms: &[ClassAtom]) -> Option<Combination> {
        let mut comb = Combination::new();
        for y in atoms {
            let n = self.mult(pat, y).exact_value()?;
            if n > 0 {
                comb.insert(y.clone(), n as i64);
            }
        }
        Some(comb)
    }

    fn account(&self, t: &JTerm) -> Account {
        self.memo(Goal::Acc(t.clone()), Val::A(Rc::default()), || {
            Val::A(Rc::new(self.account_raw(t)))
        })
        .acc()
    }

    fn account_raw(&self, t: &JTerm) -> BTreeMap<ClassAtom, MV> {
        let support = t.support();
        let mut rows: Vec<(InducedLabel, Combination)> = self
            .cat
            .decompositions_on(&support)
            .into_iter()
            .map(|d| (d.pattern, d.expansion))
            .collect();
        rows.extend(self.derived_decompositions(&support));
        let mut vals: BTreeMap<ClassAtom, MV> = BTreeMap::new();
        for (_, comb) in &rows {
            for y in comb.keys() {
                if !vals.contains_key(y) {
                    vals.insert(y.clone(), self.atom_jm_init(y, t));
                }
            }
        }
        let totals: Vec<MV> = rows.iter().map(|(p, _)| self.jm(p, t)).collect();
        loop {
            let mut progress = false;
            for ((_, comb), total) in rows.iter().zip(&totals) {
                for (y, &ny) in comb {
                    let ny = ny as u64;
                    let others = |f: &dyn Fn(&MV) -> Option<u64>| -> Option<u64> {
                        comb.iter()
                            .filter(|(z, _)| *z != y)
                            .try_fold(0u64, |s, (z, &nz)| f(&vals[z]).map(|v| s + v * nz as u64))
                    };
                    let cur = vals[y].clone();
                    let mut next = cur.clone();
                    if let Some(th) = total.hi {
                        let lo_rest = others(&|m: &MV| Some(m.lo)).unwrap_or(0);
                        let h = sub_floor(th, lo_rest) / ny;
                        next.hi = Some(next.hi.map_or(h, |x| x.min(h)));
                    }
                    if let Some(hi_rest) = others(&|m: &MV| m.hi) {
                        let l = sub_floor(total.lo, hi_rest).div_ceil(ny);
                        next.lo = next.lo.max(l);
                    }
                    if next.hi.is_some_and(|h| h < next.lo) {
                        self.st
                            .borrow_mut()
                            .conflicts
                            .push(format!("accounting on {t}: {y}"));
                        continue;
                    }
                    if next != cur {
                        vals.insert(y.clone(), next);
                        progress = true;
                    }
                }
            }
            if !progress {
                break;
            }
        }
        vals
    }
}

fn upd(v: &mut MV, w: MV) {
    if let Some(m) = v.meet(&w) {
        *v = m;
    }
}

fn coefficient(c: &Combination, x: &ClassAtom) -> MV {
    MV::exact(c.get(x).copied().unwrap_or(0) as u64)
}

fn siblings(parts: &Combination, b: &ClassAtom) -> Vec<(ClassAtom, u64)> {
    parts
        .iter()
        .filter(|(y, _)| *y != b)
        .map(|(y, &n)| (y.clone(), n as u64))
        .collect()
}

/// `L(δ(Δ) ⋊ τ) ↪ δ(Δ^∨) ⋊ τ`, so `δ(Δ^∨) ⊗ τ` lies in its Jacquet module.
fn frobenius_term(x: &ClassAtom) -> Option<JTerm> {
    match x {
        ClassAtom::Lang { segs, tau } if segs.len() == 1 => {
            Some(JTerm::new(GlIrr::Delta(segs[0].dual()), (**tau).clone()))
        }
        _ => None,
    }
}

/// Value of coordinate `k` forced by the linear system, if any.
fn solve_coordinate(rows: &[(Vec<i64>, i64)], k: usize) -> Option<u64> {
    let n = rows.first()?.0.len();
    let mut m: Vec<Vec<Ratio<i128>>> = rows
        .iter()
        .map(|(r, b)| {
            let mut v: Vec<Ratio<i128>> =
                r.iter().map(|&x| Ratio::from_integer(x as i128)).collect();
            v.push(Ratio::from_integer(*b as i128));
            v
        })
        .collect();
    let zero = Ratio::from_integer(0);
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (pivot_row..m.len()).find(|&r| m[r][col] != zero) else {
            continue;
        };
        m.swap(pivot_row, p);
        let pv = m[pivot_row][col];
        for x in m[pivot_row].iter_mut() {
            *x /= pv;
        }
        for r in 0..m.len() {
            if r != pivot_row && m[r][col] != zero {
                let f = m[r][col];
                let src = m[pivot_row].clone();
                for (x, s) in m[r].iter_mut().zip(src) {
                    *x -= f * s;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    let r = pivots.iter().position(|&c| c == k)?;
    if (0..n).any(|c| c != k && !pivots.contains(&c) && m[r][c] != zero) {
        return None;
    }
    let v = m[r][n];
    (v.is_integer() && v >= zero).then(|| *v.numer() as u64)
}
