//! `μ*` expansions: the structure formula for `δ(Δ) ⋊ π` and the closed
//! forms for the signed segment atoms and their Langlands quotients.

use crate::atom::{ClassAtom, InducedLabel, Sign};
use crate::error::{Error, Result};
use crate::gl::GlPart;
use crate::half::HalfInt;
use crate::segment::{mk_segment, Segment};
use crate::tensor::RGTensor;
use crate::words::WordMultiset;

/// Engine switches for sensitivity testing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MuStarOptions {
    /// Read the second-row condition of the signed formula as `i + j ≤ -1`
    /// instead of `i + j < -1`.
    pub inclusive_row_two: bool,
    /// Run the first-row index up to `c` instead of `d - 1`.
    pub wide_row_one_limit: bool,
}

/// A closed-form expansion with its per-row term counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowExpansion {
    pub tensor: RGTensor,
    /// Number of non-zero terms emitted by each row, before merging.
    pub rows: Vec<usize>,
}

/// `lo, lo+1, …, hi` (empty when `hi < lo`).
fn hrange(lo: HalfInt, hi: HalfInt) -> impl Iterator<Item = HalfInt> {
    let n = if hi < lo {
        0
    } else {
        hi.int_diff(lo).expect("same class") + 1
    };
    (0..n).map(move |k| lo.step(k))
}

fn seg(lo: HalfInt, hi: HalfInt) -> Option<Segment> {
    mk_segment(lo, hi).expect("index ranges keep segments valid")
}

pub fn mu_star_base(x: &ClassAtom) -> Result<RGTensor> {
    mu_star_base_with(x, MuStarOptions::default())
}

pub fn mu_star_base_with(x: &ClassAtom, opts: MuStarOptions) -> Result<RGTensor> {
    match x {
        ClassAtom::Cusp => Ok(RGTensor::unit(ClassAtom::Cusp)),
        ClassAtom::SignedSeg { c, d, sign } => {
            Ok(mu_star_delta_signed_with(*c, *d, *sign, opts)?.tensor)
        }
        ClassAtom::LangSeg { c, d } => Ok(mu_star_langlands_segment(*c, *d)?.tensor),
        other => Err(Error::NoClosedForm(other.to_string())),
    }
}

/// `μ*(δ(Δ) ⋊ π)` from `μ*(π)`.
pub fn apply_formula1(delta: Segment, mu: &RGTensor) -> RGTensor {
    let (x, y) = (delta.lo(), delta.hi());
    let len = delta.len() as i64;
    let mut out = RGTensor::new();
    for i in 0..=len {
        for j in 0..=i {
            let gl = GlPart::from_maybe([seg(HalfInt::from_int(i) - y, -x), seg(y.step(1 - j), y)]);
            let cl = seg(y.step(1 - i), y.step(-j));
            for (g, c, n) in mu.iter() {
                let cl = match cl {
                    Some(s) => c.induce(s),
                    None => c.clone(),
                };
                out.add(gl.mul(g), cl, n);
            }
        }
    }
    out
}

pub fn mu_star_formula1(delta: Segment, base: &ClassAtom) -> Result<RGTensor> {
    Ok(apply_formula1(delta, &mu_star_base(base)?))
}

/// Folds the structure formula over `segs`, left to right.
pub fn mu_star_iterated(segs: &[Segment], base: &ClassAtom) -> Result<RGTensor> {
    let mut mu = mu_star_base(base)?;
    for s in segs {
        mu = apply_formula1(*s, &mu);
    }
    Ok(mu)
}

pub fn mu_star_induced(l: &InducedLabel) -> Result<RGTensor> {
    mu_star_iterated(l.segments(), l.base())
}

/// Words of the minimal Jacquet module: the terms over the cuspidal, with
/// each GL part expanded into words.
pub fn minimal_words(l: &InducedLabel) -> Result<WordMultiset> {
    let mut out = WordMultiset::new();
    for (g, cl, n) in mu_star_induced(l)?.iter() {
        if cl.as_atom() == Some(&ClassAtom::Cusp) {
            out.add_scaled(&g.words(), n);
        }
    }
    Ok(out)
}

pub fn mu_star_delta_signed(c: HalfInt, d: HalfInt, sign: Sign) -> Result<RowExpansion> {
    mu_star_delta_signed_with(c, d, sign, MuStarOptions::default())
}

/// `μ*(δ([ν^{-c}ρ, ν^dρ]_±; σ))`.
pub fn mu_star_delta_signed_with(
    c: HalfInt,
    d: HalfInt,
    sign: Sign,
    opts: MuStarOptions,
) -> Result<RowExpansion> {
    let (c, d) = match ClassAtom::signed_seg(c, d, sign)? {
        ClassAtom::SignedSeg { c, d, .. } => (c, d),
        _ => unreachable!(),
    };
    let one = HalfInt::ONE;
    let mut t = RGTensor::new();
    let mut rows = vec![0; 3];

    let row_one_top = if opts.wide_row_one_limit { c } else { d - one };
    for i in hrange(-c - one, row_one_top) {
        for j in hrange(i + one, d) {
            let Ok(atom) = ClassAtom::signed_seg(-(i + one), j, sign) else {
                continue;
            };
            let gl = GlPart::from_maybe([seg(-i, c), seg(j + one, d)]);
            t.add(gl, InducedLabel::atom(atom), 1);
            rows[0] += 1;
        }
    }

    for i in hrange(-c - one, c - one) {
        for j in hrange(i + one, c) {
            let s = (i + j).twice();
            if s > -2 || (s == -2 && !opts.inclusive_row_two) {
                continue;
            }
            let Ok(atom) = ClassAtom::lang_seg(-(i + one), j) else {
                continue;
            };
            let gl = GlPart::from_maybe([seg(-i, c), seg(j + one, d)]);
            t.add(gl, InducedLabel::atom(atom), 1);
            rows[1] += 1;
        }
    }

    let top = match sign {
        Sign::Plus => HalfInt::HALF - one,
        Sign::Minus => -HalfInt::HALF - one,
    };
    for i in hrange(-c - one, top) {
        let gl = GlPart::from_maybe([seg(-i, c), seg(i + one, d)]);
        t.add(gl, InducedLabel::atom(ClassAtom::Cusp), 1);
        rows[2] += 1;
    }
    Ok(RowExpansion { tensor: t, rows })
}

/// `μ*(L_α(δ([ν^{-c}ρ, ν^dρ]); σ))`.
pub fn mu_star_langlands_segment(c: HalfInt, d: HalfInt) -> Result<RowExpansion> {
    let (c, d) = match ClassAtom::lang_seg(c, d)? {
        ClassAtom::LangSeg { c, d } => (c, d),
        _ => unreachable!(),
    };
    let one = HalfInt::ONE;
    let mut t = RGTensor::new();
    let mut rows = vec![0; 2];

    // Segments of length below -1 stand for zero.
    let slot = |lo: HalfInt, hi: HalfInt| mk_segment(lo, hi).ok();

    for i in hrange(-c - one, d - one) {
        for j in hrange(i + one, d) {
            if (i + j) < HalfInt::ZERO {
                continue;
            }
            let (Some(a), Some(b)) = (slot(-i, c), slot(j + one, d)) else {
                continue;
            };
            let Ok(atom) = ClassAtom::lang_seg(-(i + one), j) else {
                continue;
            };
            t.add(GlPart::langlands(a, b), InducedLabel::atom(atom), 1);
            rows[0] += 1;
        }
    }

    for i in hrange(HalfInt::HALF, d) {
        let (Some(a), Some(b)) = (slot(-i, c), slot(i + one, d)) else {
            continue;
        };
        t.add(
            GlPart::langlands(a, b),
            InducedLabel::atom(ClassAtom::Cusp),
            1,
        );
        rows[1] += 1;
    }
    Ok(RowExpansion { tensor: t, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl::LPair;
    use crate::half::h;

    fn s(lo: i64, hi: i64) -> Segment {
        Segment::new(h(lo), h(hi)).unwrap()
    }

    fn cusp() -> InducedLabel {
        InducedLabel::atom(ClassAtom::Cusp)
    }

    #[test]
    fn minimal_words_of_a_point() {
        let w = minimal_words(&InducedLabel::new(vec![s(1, 1)], ClassAtom::Cusp)).unwrap();
        assert_eq!(w.total(), 2);
        assert_eq!(w.count(&[h(1)]), 1);
        assert_eq!(w.count(&[h(-1)]), 1);
        let w = minimal_words(&InducedLabel::new(vec![s(1, 3)], ClassAtom::Cusp)).unwrap();
        assert_eq!(w.count(&[h(3), h(1)]), 1);
        assert_eq!(w.count(&[h(-1), h(-3)]), 1);
        assert!(minimal_words(&cusp()).unwrap().count(&[]) == 1);
    }

    #[test]
    fn formula1_extremes() {
        let a = h(5);
        let t = mu_star_formula1(s(1, 5), &ClassAtom::Cusp).unwrap();
        let whole = InducedLabel::new(vec![s(1, 5)], ClassAtom::Cusp);
        assert_eq!(t.coeff(&GlPart::one(), &whole), 1);
        assert_eq!(t.coeff(&GlPart::delta(s(1, 5)), &cusp()), 1);
        assert_eq!(
            t.coeff(&GlPart::delta(Segment::new(-a, h(-1)).unwrap()), &cusp()),
            1
        );
        assert!(t.is_positive());
    }

    #[test]
    fn formula1_inner_tempered_term() {
        // δ([-a,b]) ⋊ σ ∋ δ([a+1,b]) ⊗ δ([-a,a]) ⋊ σ
        let t = mu_star_formula1(s(-1, 5), &ClassAtom::Cusp).unwrap();
        let cl = InducedLabel::new(vec![s(-1, 1)], ClassAtom::Cusp);
        assert_eq!(t.coeff(&GlPart::delta(s(3, 5)), &cl), 1);
    }

    #[test]
    fn signed_third_row() {
        let m = mu_star_delta_signed(h(1), h(3), Sign::Minus).unwrap();
        let cusp_terms: Vec<_> = m.tensor.iter().filter(|(_, c, _)| **c == cusp()).collect();
        assert_eq!(cusp_terms.len(), 1);
        assert_eq!(*cusp_terms[0].0, GlPart::delta(s(-1, 3)));
        assert_eq!(m.rows[2], 1);

        let p = mu_star_delta_signed(h(1), h(3), Sign::Plus).unwrap();
        assert_eq!(p.tensor.coeff(&GlPart::delta(s(-1, 3)), &cusp()), 1);
        let two = GlPart::from_maybe([Some(s(1, 1)), Some(s(1, 3))]);
        assert_eq!(p.tensor.coeff(&two, &cusp()), 1);
        assert_eq!(p.rows[2], 2);
    }

    #[test]
    fn identity_components() {
        for (c, d) in [(-1, 1), (-1, 7), (1, 3), (3, 3), (5, 9)] {
            for sign in [Sign::Plus, Sign::Minus] {
                let Ok(atom) = ClassAtom::signed_seg(h(c), h(d), sign) else {
                    continue;
                };
                let m = mu_star_delta_signed(h(c), h(d), sign).unwrap();
                assert_eq!(m.tensor.coeff(&GlPart::one(), &InducedLabel::atom(atom)), 1);
            }
            if c != d {
                let atom = ClassAtom::lang_seg(h(c), h(d)).unwrap();
                let m = mu_star_langlands_segment(h(c), h(d)).unwrap();
                assert_eq!(m.tensor.coeff(&GlPart::one(), &InducedLabel::atom(atom)), 1);
            }
        }
    }

    #[test]
    fn langlands_third_row() {
        let m = mu_star_langlands_segment(h(1), h(3)).unwrap();
        let p = LPair::new(s(-1, 1), s(3, 3)).unwrap();
        assert_eq!(m.tensor.coeff(&GlPart::pair(p), &cusp()), 1);
        assert_eq!(m.tensor.coeff(&GlPart::delta(s(-3, 1)), &cusp()), 1);
        assert_eq!(m.rows[1], 2);
    }

    #[test]
    fn non_closed_forms_rejected() {
        let x = ClassAtom::ds3(h(1), h(3), h(5), crate::atom::Ds3Tag::Plus).unwrap();
        assert!(matches!(mu_star_base(&x), Err(Error::NoClosedForm(_))));
    }

    #[test]
    fn fold_order() {
        let a = mu_star_iterated(&[s(1, 5), s(-1, 3)], &ClassAtom::Cusp).unwrap();
        let b = mu_star_iterated(&[s(-1, 3), s(1, 5)], &ClassAtom::Cusp).unwrap();
        assert_eq!(a, b);
        let top = GlPart::from_maybe([Some(s(1, 5)), Some(s(-1, 3))]);
        assert_eq!(a.coeff(&top, &cusp()), 1);
    }
}
