use jacquet::gl::{
    contains_delta_in_standard, decompose_pair, word_expansion, GlPart, GlStandard, LPair,
};
use jacquet::segment::{linked, segment_relations};
use jacquet::words::multinomial;
use jacquet::{HalfInt, Segment};
use proptest::prelude::*;

fn segment() -> impl Strategy<Value = Segment> {
    (-7i64..=7, 0i64..=3).prop_map(|(x, n)| {
        let lo = HalfInt::from_twice(x);
        Segment::new(lo, lo.step(n)).unwrap()
    })
}

/// `a` and a segment starting inside or just after it and ending beyond it.
fn linked_pair() -> impl Strategy<Value = (Segment, Segment)> {
    (segment(), 0i64..4, 0i64..3).prop_map(|(a, i, j)| {
        let n = a.len() as i64 - 1;
        let b = Segment::new(a.lo().step(1 + i.min(n)), a.hi().step(1 + j)).unwrap();
        (a, b)
    })
}

fn standard() -> impl Strategy<Value = Vec<Segment>> {
    prop::collection::vec(segment(), 1..=3)
}

proptest! {
    #[test]
    fn products_commute(a in standard(), b in standard()) {
        let (x, y) = (GlStandard::new(a.clone()), GlStandard::new(b.clone()));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        let mut rev = a.clone();
        rev.reverse();
        prop_assert_eq!(GlStandard::new(rev), x);
    }

    #[test]
    fn word_count_is_multinomial(a in standard()) {
        let m = GlStandard::new(a.clone());
        let lens: Vec<usize> = a.iter().map(|s| s.len()).collect();
        prop_assert_eq!(word_expansion(&m).total() as u128, multinomial(&lens));
    }

    #[test]
    fn pair_resolution_is_word_conservative((a, b) in linked_pair()) {
        prop_assert!(linked(a, b) && linked(b, a));
        let r = segment_relations(a, b);
        let whole = word_expansion(&GlStandard::new(vec![a, b]));
        let mut sum = word_expansion(&GlStandard::from_maybe([r.union, r.intersection]));
        sum.add_scaled(&GlPart::pair(LPair::new(a, b).unwrap()).words(), 1);
        prop_assert_eq!(&whole, &sum);
        prop_assert!(GlPart::pair(LPair::new(a, b).unwrap()).words().iter().all(|(_, n)| n > 0));
        prop_assert_eq!(decompose_pair(a, b).len(), 2);
    }

    #[test]
    fn delta_containment_shows_in_words(a in standard(), s in segment()) {
        let m = GlStandard::new(a);
        if contains_delta_in_standard(&m, s) == 1 {
            prop_assert!(word_expansion(&m).count(&s.descending_word()) >= 1);
        }
    }

    #[test]
    fn tiling_pieces_contain_their_union(s in segment(), k in 0usize..4) {
        let k = k.min(s.len() - 1);
        let lo = s.lo().step(k as i64 + 1);
        let pieces = match Segment::new(s.lo(), s.lo().step(k as i64)) {
            Ok(first) if lo <= s.hi() => vec![first, Segment::new(lo, s.hi()).unwrap()],
            _ => vec![s],
        };
        prop_assert_eq!(contains_delta_in_standard(&GlStandard::new(pieces), s), 1);
    }
}
