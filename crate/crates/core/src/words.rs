//! Cuspidal exponent words and their shuffles.
//!
//! A word `(e₁, …, e_k)` stands for `ν^{e₁}ρ ⊗ … ⊗ ν^{e_k}ρ` in a minimal
//! Jacquet module. The words of a product of segment representations are the
//! shuffles of the descending words of the factors.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use crate::half::HalfInt;

pub type Word = Vec<HalfInt>;

/// A multiset of words with signed multiplicities (signed so that
/// differences of standard modules can be formed).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordMultiset(BTreeMap<Word, i64>);

impl WordMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(w: Word) -> Self {
        let mut m = Self::new();
        m.insert(w, 1);
        m
    }

    pub fn insert(&mut self, w: Word, n: i64) {
        if n == 0 {
            return;
        }
        match self.0.entry(w) {
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

    pub fn add_scaled(&mut self, other: &WordMultiset, k: i64) {
        for (w, n) in &other.0 {
            self.insert(w.clone(), n * k);
        }
    }

    pub fn count(&self, w: &[HalfInt]) -> i64 {
        self.0.get(w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.0.iter().map(|(w, n)| (w, *n))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.values().all(|&n| n > 0)
    }

    /// Concatenates every word of `self` with every word of `rhs`.
    pub fn concat(&self, rhs: &WordMultiset) -> WordMultiset {
        let mut out = WordMultiset::new();
        for (a, n) in &self.0 {
            for (b, m) in &rhs.0 {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.insert(w, n * m);
            }
        }
        out
    }
}

impl FromIterator<(Word, i64)> for WordMultiset {
    fn from_iter<I: IntoIterator<Item = (Word, i64)>>(iter: I) -> Self {
        let mut m = WordMultiset::new();
        for (w, n) in iter {
            m.insert(w, n);
        }
        m
    }
}

/// All interleavings of `parts`, with multiplicity.
pub fn shuffles(parts: &[&[HalfInt]]) -> WordMultiset {
    let mut out = WordMultiset::new();
    let mut pos = vec![0usize; parts.len()];
    let total: usize = parts.iter().map(|p| p.len()).sum();
    let mut cur = Vec::with_capacity(total);
    fn go(
        parts: &[&[HalfInt]],
        pos: &mut [usize],
        cur: &mut Word,
        total: usize,
        out: &mut WordMultiset,
    ) {
        if cur.len() == total {
            out.insert(cur.clone(), 1);
            return;
        }
        for k in 0..parts.len() {
            if pos[k] < parts[k].len() {
                cur.push(parts[k][pos[k]]);
                pos[k] += 1;
                go(parts, pos, cur, total, out);
                pos[k] -= 1;
                cur.pop();
            }
        }
    }
    go(parts, &mut pos, &mut cur, total, &mut out);
    out
}

/// Shuffles of a multiset of words with some fixed words.
pub fn shuffle_with(base: &WordMultiset, parts: &[&[HalfInt]]) -> WordMultiset {
    let mut out = WordMultiset::new();
    for (w, n) in base.iter() {
        let mut all: Vec<&[HalfInt]> = parts.to_vec();
        all.push(w);
        out.add_scaled(&shuffles(&all), n);
    }
    out
}

/// Number of ways `target` arises as an interleaving of `parts`.
///
/// Equal to `shuffles(parts).count(target)` without enumerating.
pub fn count_shuffles(target: &[HalfInt], parts: &[&[HalfInt]]) -> u64 {
    let total: usize = parts.iter().map(|p| p.len()).sum();
    if total != target.len() {
        return 0;
    }
    let mut memo: HashMap<Vec<usize>, u64> = HashMap::new();
    fn go(
        target: &[HalfInt],
        parts: &[&[HalfInt]],
        pos: &mut Vec<usize>,
        at: usize,
        memo: &mut HashMap<Vec<usize>, u64>,
    ) -> u64 {
        if at == target.len() {
            return 1;
        }
        if let Some(&v) = memo.get(pos.as_slice()) {
            return v;
        }
        let mut n = 0;
        for k in 0..parts.len() {
            if pos[k] < parts[k].len() && parts[k][pos[k]] == target[at] {
                pos[k] += 1;
                n += go(target, parts, pos, at + 1, memo);
                pos[k] -= 1;
            }
        }
        memo.insert(pos.clone(), n);
        n
    }
    let mut pos = vec![0; parts.len()];
    go(target, parts, &mut pos, 0, &mut memo)
}

/// Multinomial coefficient `(Σ kᵢ)! / Π kᵢ!`.
pub fn multinomial(lengths: &[usize]) -> u128 {
    let mut acc: u128 = 1;
    let mut n: u128 = 0;
    for &k in lengths {
        for i in 1..=k as u128 {
            n += 1;
            acc = acc * n / i;
        }
    }
    acc
}

/// `true` when every exponent is non-negative.
pub fn is_nonnegative_word(w: &[HalfInt]) -> bool {
    w.iter().all(|e| *e >= HalfInt::ZERO)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::half::h;

    #[test]
    fn shuffle_counts() {
        let a = [h(3), h(1)];
        let b = [h(5)];
        let s = shuffles(&[&a, &b]);
        assert_eq!(s.total(), 3);
        assert_eq!(s.count(&[h(5), h(3), h(1)]), 1);
        assert_eq!(count_shuffles(&[h(3), h(5), h(1)], &[&a, &b]), 1);
        let x = [h(1)];
        assert_eq!(count_shuffles(&[h(1), h(1)], &[&x, &x]), 2);
        assert_eq!(multinomial(&[2, 1]), 3);
        assert_eq!(multinomial(&[2, 2, 3]), 210);
    }

    #[test]
    fn zero_entries_vanish() {
        let mut m = WordMultiset::singleton(vec![h(1)]);
        m.insert(vec![h(1)], -1);
        assert!(m.is_empty());
    }
}
