use std::collections::BTreeMap;
use std::ops::Bound;

use hublab_core::range::{histogram_sum, Interval, Point, RangeBox, RangeTree};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn bound() -> impl Strategy<Value = Bound<i64>> {
    prop_oneof![
        Just(Bound::Unbounded),
        (-12i64..12).prop_map(Bound::Included),
        (-12i64..12).prop_map(Bound::Excluded),
    ]
}

fn scenario() -> impl Strategy<Value = (Vec<Point>, Vec<RangeBox>)> {
    (1usize..=6, 0usize..2000).prop_flat_map(|(d, n)| {
        let point = (prop::collection::vec(-10i64..10, d), prop::collection::vec(-5i64..20, 3), 0usize..50)
            .prop_map(|(coords, values, owner)| Point { coords, owner, values });
        let boxes = prop::collection::vec(
            prop::collection::vec((bound(), bound()).prop_map(|(lo, hi)| Interval::new(lo, hi)), d)
                .prop_map(RangeBox::new),
            10..30,
        );
        (prop::collection::vec(point, n), boxes)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn queries_match_linear_scan((points, boxes) in scenario()) {
        let tree = RangeTree::build(points.clone(), 3, Some(1)).unwrap();
        for b in &boxes {
            let inside: Vec<&Point> = points.iter().filter(|p| b.contains(&p.coords)).collect();
            prop_assert_eq!(tree.count_query(b).unwrap(), inside.len() as u64);
            for ch in 0..3 {
                let sum: i128 = inside.iter().map(|p| p.values[ch] as i128).sum();
                prop_assert_eq!(tree.sum_query(b, ch).unwrap(), sum);
                let best = inside.iter().map(|p| (p.values[ch], std::cmp::Reverse(p.owner))).max();
                prop_assert_eq!(tree.max_query(b, ch).unwrap(), best.map(|(v, o)| (v, o.0)));
            }
            // values of channel 1 lie in -5..20, so delta 6 never hits zero
            let mut expect = BigRational::zero();
            for p in &inside {
                expect += BigRational::new(1.into(), (6 + p.values[1]).into());
            }
            prop_assert_eq!(tree.isw_query(b, 6).unwrap(), expect);
        }
    }

    #[test]
    fn canonical_pieces_partition_matches((points, boxes) in scenario()) {
        let tree = RangeTree::build(points.clone(), 3, None).unwrap();
        for b in &boxes {
            let Some(cb) = b.to_closed() else { continue };
            let mut seen = vec![false; tree.len()];
            for piece in tree.canonical_pieces(&cb).unwrap() {
                for p in tree.points_of(piece) {
                    prop_assert!(!seen[p]);
                    seen[p] = true;
                }
            }
            for p in 0..tree.len() {
                prop_assert_eq!(seen[p], cb.contains(tree.point_coords(p)));
            }
        }
        for i in 0..tree.node_count() {
            prop_assert!(tree.node_consistent(i));
        }
    }
}

#[test]
fn isw_histogram_accumulates_across_boxes() {
    let pts = (1..=4).map(|v| Point { coords: vec![v], owner: 0, values: vec![v] }).collect();
    let t = RangeTree::build(pts, 1, Some(0)).unwrap();
    let mut hist = BTreeMap::new();
    for iv in [Interval::closed(1, 2), Interval::closed(3, 4)] {
        let b = RangeBox::new(vec![iv]).to_closed().unwrap();
        t.isw_histogram_into(&b, 0, &mut hist).unwrap();
    }
    assert_eq!(histogram_sum(&hist), t.isw_query(&RangeBox::full(1), 0).unwrap());
}
