use jacquet::atom::{ClassAtom, InducedLabel, Sign};
use jacquet::mustar::{
    mu_star_base_with, mu_star_delta_signed, mu_star_delta_signed_with, mu_star_induced,
    mu_star_iterated, MuStarOptions,
};
use jacquet::rulebase::{atomize, decompose_induced_over_cuspidal, sign_classifier};
use jacquet::tensor::RGTensor;
use jacquet::{HalfInt, Segment};
use proptest::prelude::*;

fn segment() -> impl Strategy<Value = Segment> {
    (-7i64..=7, 0i64..=3).prop_map(|(x, n)| {
        let lo = HalfInt::from_twice(x);
        Segment::new(lo, lo.step(n)).unwrap()
    })
}

fn odd(lo: i64, hi: i64) -> impl Strategy<Value = HalfInt> {
    (lo..=hi).prop_map(|k| HalfInt::from_twice(2 * k + 1))
}

fn base() -> impl Strategy<Value = ClassAtom> {
    prop_oneof![
        Just(ClassAtom::Cusp),
        odd(0, 3).prop_map(|c| ClassAtom::sigma(c).unwrap()),
        (odd(0, 2), odd(0, 3)).prop_map(|(c, d)| ClassAtom::signed_seg(c, d, Sign::Minus).unwrap()),
        (odd(0, 2), 1i64..3).prop_map(|(c, k)| ClassAtom::lang_seg(c, c.step(k)).unwrap()),
    ]
}

/// `Σ μ*(pieces)` against `μ*` of the whole, under the given reading.
fn partition_holds(c: HalfInt, d: HalfInt, opts: MuStarOptions) -> bool {
    let l = InducedLabel::new(vec![Segment::new(-c, d).unwrap()], ClassAtom::Cusp);
    let mut sum = RGTensor::new();
    for (x, n) in decompose_induced_over_cuspidal(&l).unwrap() {
        sum.add_scaled(&mu_star_base_with(&x, opts).unwrap(), n);
    }
    atomize(&sum).unwrap() == atomize(&mu_star_induced(&l).unwrap()).unwrap()
}

proptest! {
    #[test]
    fn every_term_keeps_support_and_rank(segs in prop::collection::vec(segment(), 0..3), b in base()) {
        let l = InducedLabel::new(segs, b);
        let mu = mu_star_induced(&l).unwrap();
        prop_assert_eq!(mu.common_support(), Some(l.support()));
        for (g, cl, _) in mu.iter() {
            prop_assert_eq!(g.rank() + cl.rank(), l.rank());
        }
    }

    #[test]
    fn fold_order_does_not_matter(s in segment(), t in segment(), b in base()) {
        prop_assert_eq!(mu_star_iterated(&[s, t], &b).unwrap(), mu_star_iterated(&[t, s], &b).unwrap());
    }

    #[test]
    fn signs_are_told_apart_by_words(c in odd(0, 5), d in odd(0, 5)) {
        prop_assert!(sign_classifier(&mu_star_delta_signed(c, d, Sign::Plus).unwrap().tensor));
        prop_assert!(!sign_classifier(&mu_star_delta_signed(c, d, Sign::Minus).unwrap().tensor));
    }

    #[test]
    fn partition_identity(c in odd(-1, 4), d in odd(-5, 5)) {
        prop_assume!(d >= -c);
        prop_assert!(partition_holds(c, d, MuStarOptions::default()));
    }
}

fn partition_grid() -> Vec<(HalfInt, HalfInt)> {
    let h = HalfInt::from_twice;
    (-1..=4)
        .flat_map(|c| (-5..=4).map(move |d| (h(2 * c + 1), h(2 * d + 1))))
        .filter(|&(c, d)| d >= -c)
        .collect()
}

/// The indices where the readings differ only name pieces that vanish by
/// the trichotomy, so every reading gives the same expansion.
#[test]
fn alternative_readings_are_immaterial() {
    let readings = [
        MuStarOptions {
            wide_row_one_limit: true,
            ..Default::default()
        },
        MuStarOptions {
            inclusive_row_two: true,
            ..Default::default()
        },
    ];
    for (c, d) in partition_grid() {
        for opts in readings {
            assert!(partition_holds(c, d, opts));
            for s in [Sign::Plus, Sign::Minus] {
                if let Ok(x) = mu_star_delta_signed(c, d, s) {
                    assert_eq!(
                        mu_star_delta_signed_with(c, d, s, opts).unwrap().tensor,
                        x.tensor
                    );
                }
            }
        }
    }
}
