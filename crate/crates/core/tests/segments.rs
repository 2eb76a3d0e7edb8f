use jacquet::segment::{dual_segment, linked, mk_segment, segment_relations};
use jacquet::{HalfInt, Segment};
use proptest::prelude::*;

fn half() -> impl Strategy<Value = HalfInt> {
    (-12i64..=12).prop_map(HalfInt::from_twice)
}

fn segment() -> impl Strategy<Value = Segment> {
    (-9i64..=9, 0i64..=5).prop_map(|(x, n)| {
        let lo = HalfInt::from_twice(x);
        Segment::new(lo, lo.step(n)).unwrap()
    })
}

proptest! {
    #[test]
    fn dual_is_an_involution(s in segment()) {
        prop_assert_eq!(s.dual().dual(), s);
        prop_assert_eq!(dual_segment(dual_segment(Some(s))), Some(s));
        prop_assert_eq!(s.dual().e_center(), -s.e_center());
    }

    #[test]
    fn mk_segment_never_inverts(x in half(), y in half()) {
        match mk_segment(x, y) {
            Ok(Some(s)) => prop_assert!(s.lo() <= s.hi()),
            Ok(None) => prop_assert_eq!(y, x.step(-1)),
            Err(_) => prop_assert!(y.int_diff(x).is_none_or(|d| d < -1)),
        }
    }

    #[test]
    fn linkedness_is_symmetric(a in segment(), b in segment()) {
        prop_assert_eq!(linked(a, b), linked(b, a));
        let r = segment_relations(a, b);
        if r.linked {
            let u = r.union.unwrap();
            prop_assert_eq!(u.len() + r.intersection.map_or(0, |s| s.len()), a.len() + b.len());
        }
    }

    #[test]
    fn nested_and_gapped_pairs_are_not_linked(a in segment(), k in 0i64..4, gap in 2i64..4) {
        // nested: a inside [a.lo - k, a.hi + k]
        let outer = Segment::new(a.lo().step(-k), a.hi().step(k)).unwrap();
        prop_assert!(!linked(a, outer));
        // a gap of at least one point
        let far = Segment::new(a.hi().step(gap), a.hi().step(gap + k)).unwrap();
        prop_assert!(!linked(a, far));
    }
}

#[test]
fn juxtaposed_segments_are_linked() {
    let h = HalfInt::from_twice;
    assert!(linked(
        Segment::new(h(1), h(3)).unwrap(),
        Segment::new(h(5), h(7)).unwrap()
    ));
    assert!(!linked(
        Segment::new(h(1), h(3)).unwrap(),
        Segment::new(h(4), h(6)).unwrap()
    ));
}
