//! Word-level bounds, computed from the minimal Jacquet words alone.
//!
//! An irreducible `X` occurring `n` times in `I` puts `n` copies of every word
//! of `r_min(X)` into `r_min(I)`. So each exact multiplicity must satisfy
//! `n · lower(w) ≤ words_I(w)` for every word `w` known to lie in `X`.

use serde::Serialize;

use crate::words::{Word, WordMultiset};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleStats {
    pub checked: u64,
    pub violations: Vec<String>,
}

impl OracleStats {
    pub fn merge(&mut self, o: &OracleStats) {
        self.checked += o.checked;
        self.violations.extend(o.violations.iter().cloned());
    }
}

/// A word where `n` copies of `lower` do not fit into `total`.
pub fn word_excess(lower: &WordMultiset, n: u64, total: &WordMultiset) -> Option<Word> {
    lower
        .iter()
        .find(|(w, k)| (n as i64) * k > total.count(w))
        .map(|(w, _)| w.clone())
}

/// Whether `part ≤ total` word by word.
pub fn dominated(part: &WordMultiset, total: &WordMultiset) -> bool {
    word_excess(part, 1, total).is_none()
}
