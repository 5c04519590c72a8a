use itertools::Itertools;
use permpat::{Partition, Permutation};
use proptest::prelude::*;

fn partition(max: usize) -> impl Strategy<Value = Partition> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(0..n, n)).prop_map(|labels| Partition::from_labels(&labels))
}

fn pair(max: usize) -> impl Strategy<Value = (Partition, Partition)> {
    (1..=max)
        .prop_flat_map(|n| (prop::collection::vec(0..n, n), prop::collection::vec(0..n, n)))
        .prop_map(|(a, b)| (Partition::from_labels(&a), Partition::from_labels(&b)))
}

/// Partitions with every block of size at least two.
fn no_singletons(max: usize) -> impl Strategy<Value = Partition> {
    (2..=max)
        .prop_flat_map(|n| (Just((1..=n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(2usize..5, n)))
        .prop_map(|(points, sizes)| {
            let n = points.len();
            let mut labels = vec![0; n];
            let (mut start, mut block) = (0, 0);
            for size in sizes {
                if start >= n {
                    break;
                }
                let end = if start + size + 2 > n { n } else { start + size };
                for &x in &points[start..end] {
                    labels[x - 1] = block;
                }
                start = end;
                block += 1;
            }
            Partition::from_labels(&labels)
        })
}

fn same(p: &Partition, x: usize, y: usize) -> bool {
    p.block_index(x) == p.block_index(y)
}

/// `Π′` from its definition as the meet of two one-point extensions of `M(Π)`.
fn derive_by_meet(p: &Partition) -> Partition {
    let n = p.n();
    let m = p.max_intervals();
    let shift = |x: usize| if x == 1 { m.block_index(1) } else { m.block_index(x - 1) };
    let extend = |x: usize| m.block_index(x.min(n));
    let labels: Vec<(usize, usize)> = (1..=n + 1).map(|x| (shift(x), extend(x))).collect();
    let distinct: Vec<(usize, usize)> = labels.iter().copied().unique().collect();
    Partition::from_labels(&labels.iter().map(|l| distinct.iter().position(|d| d == l).unwrap()).collect::<Vec<_>>())
}

proptest! {
    #[test]
    fn text_round_trip(p in partition(16)) {
        prop_assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
    }

    #[test]
    fn derive_matches_meet_definition(p in partition(14)) {
        prop_assert_eq!(p.derive(), derive_by_meet(&p));
    }

    #[test]
    fn derived_partition_shape(p in partition(14)) {
        let d = p.derive();
        prop_assert_eq!(d.n(), p.n() + 1);
        prop_assert!(d.is_interval());
        prop_assert!(d.has_no_consecutive_nontrivial_blocks());
        if p.reverse() == p {
            prop_assert_eq!(d.reverse(), d.clone());
        }
        let (mu, next) = (p.mu(), d.mu());
        prop_assert!((mu == 1 && next == 1) || next + 1 == mu);
    }

    #[test]
    fn iterated_derivative_composes(p in partition(10), i in 0usize..4, j in 0usize..4) {
        prop_assert_eq!(p.derive_iter(i + j), p.derive_iter(i).derive_iter(j));
    }

    #[test]
    fn max_intervals_is_coarsest_interval_refinement(p in partition(14)) {
        let m = p.max_intervals();
        prop_assert!(m.is_interval());
        prop_assert!(m.refines(&p).unwrap());
        for x in 1..p.n() {
            prop_assert_eq!(same(&m, x, x + 1), same(&p, x, x + 1));
        }
    }

    #[test]
    fn meet_and_join_are_bounds((a, b) in pair(10)) {
        let meet = a.meet(&b).unwrap();
        let join = a.join(&b).unwrap();
        prop_assert!(meet.refines(&a).unwrap() && meet.refines(&b).unwrap());
        prop_assert!(a.refines(&join).unwrap() && b.refines(&join).unwrap());
        let n = a.n();
        for (x, y) in (1..=n).tuple_combinations() {
            prop_assert_eq!(same(&meet, x, y), same(&a, x, y) && same(&b, x, y));
        }
        prop_assert_eq!(a.join(&meet).unwrap(), a.clone());
        prop_assert_eq!(a.meet(&join).unwrap(), a);
    }

    #[test]
    fn join_is_commutative_and_idempotent((a, b) in pair(10)) {
        prop_assert_eq!(a.join(&b).unwrap(), b.join(&a).unwrap());
        prop_assert_eq!(a.join(&a).unwrap(), a.clone());
        prop_assert_eq!(a.meet(&b).unwrap(), b.meet(&a).unwrap());
    }

    #[test]
    fn reverse_is_image_under_descending(p in partition(12)) {
        let n = p.n();
        let delta = Permutation::from_images(&(1..=n).rev().collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(p.image_under(&delta).unwrap(), p.reverse());
        prop_assert_eq!(p.reverse().reverse(), p);
    }

    #[test]
    fn interwoven_intervals_do_not_overlap(p in no_singletons(12)) {
        prop_assert!(!p.has_trivial_block());
        let n = p.n();
        let found: Vec<(usize, usize)> =
            (1..=n).tuple_combinations().filter(|&(a, b)| p.interwoven(a, b).unwrap()).collect();
        for (x, y) in found.iter().tuple_combinations() {
            prop_assert!(x.1 < y.0 || y.1 < x.0, "{x:?} overlaps {y:?} in {p}");
        }
    }
}

#[test]
fn partition_counts_are_bell_numbers() {
    let counts: Vec<usize> = (1..=8).map(|n| Partition::all(n).len()).collect();
    assert_eq!(counts, [1, 2, 5, 15, 52, 203, 877, 4140]);
}

#[test]
fn worked_example() {
    let p: Partition = "1,2,3,7,8,9,10|4,5,6,12,13,14|11".parse().unwrap();
    assert_eq!(p.max_intervals().to_string(), "1,2,3|4,5,6|7,8,9,10|11|12,13,14");
    assert_eq!(p.derive(), derive_by_meet(&p));
    assert_eq!(p.mu(), 4);
}
