//! Detection of all-nonnegative Jacquet words.

use crate::atom::{ClassAtom, InducedLabel};
use crate::mustar::mu_star_induced;
use crate::tensor::RGTensor;
use crate::words::{is_nonnegative_word, WordMultiset};

fn cuspidal_words(cl: &InducedLabel) -> Option<WordMultiset> {
    if cl.base() == &ClassAtom::Cusp && cl.segments().is_empty() {
        return Some(WordMultiset::singleton(vec![]));
    }
    let mu = mu_star_induced(cl).ok()?;
    let mut out = WordMultiset::new();
    for (g, c, n) in mu.iter() {
        if c.as_atom() == Some(&ClassAtom::Cusp) {
            out.add_scaled(&g.words(), n);
        }
    }
    Some(out)
}

fn has_nonnegative(w: &WordMultiset) -> bool {
    w.iter().any(|(w, n)| n > 0 && is_nonnegative_word(w))
}

/// Whether the cuspidal closure of `t` contains a word with every exponent
/// `≥ 0`.
///
/// Classical parts without a closed form are skipped, so a `false` on such
/// input only speaks for the closed-form terms.
pub fn sign_classifier(t: &RGTensor) -> bool {
    t.iter().any(|(g, cl, n)| {
        n > 0
            && has_nonnegative(&g.words())
            && cuspidal_words(cl).is_some_and(|w| has_nonnegative(&w))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::Sign;
    use crate::gl::GlPart;
    use crate::half::h;
    use crate::mustar::mu_star_base;
    use crate::segment::Segment;

    #[test]
    fn sigma_alone_is_positive() {
        let t = RGTensor::unit(ClassAtom::sigma(h(3)).unwrap());
        assert!(sign_classifier(&t));
    }

    #[test]
    fn strongly_negative_words() {
        let tau = ClassAtom::signed_seg(h(1), h(1), Sign::Minus).unwrap();
        assert!(!sign_classifier(&RGTensor::unit(tau.clone())));
        let mut u = RGTensor::new();
        u.add(
            GlPart::delta(Segment::new(h(-5), h(-3)).unwrap()),
            InducedLabel::atom(tau),
            1,
        );
        assert!(!sign_classifier(&u));
        let whole = mu_star_base(&ClassAtom::signed_seg(h(1), h(3), Sign::Plus).unwrap()).unwrap();
        assert!(sign_classifier(&whole));
    }
}
