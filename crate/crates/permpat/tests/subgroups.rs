use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use permpat::{enumerate_subgroups, Error, Limits, PermGroup, Permutation};

fn all_perms(n: usize) -> Vec<Permutation> {
    (1..=n).permutations(n).map(|img| Permutation::from_images(&img).unwrap()).collect()
}

fn keys(groups: &[PermGroup]) -> BTreeSet<Vec<Permutation>> {
    groups.iter().map(PermGroup::elements).collect()
}

/// Every subgroup of `S_n` for `n <= 5` is generated by two elements.
fn two_generated(n: usize) -> BTreeSet<Vec<Permutation>> {
    let perms = all_perms(n);
    let limits = Limits::default();
    perms
        .iter()
        .tuple_combinations()
        .map(|(a, b)| PermGroup::closure(&[*a, *b], n, &limits).unwrap().elements())
        .chain(perms.iter().map(|a| PermGroup::closure(&[*a], n, &limits).unwrap().elements()))
        .collect()
}

#[test]
fn subgroup_counts() {
    for (n, count) in [(1, 1), (2, 2), (3, 6), (4, 30), (5, 156)] {
        assert_eq!(enumerate_subgroups(n).unwrap().len(), count, "n = {n}");
    }
}

#[test]
#[ignore = "long run"]
fn subgroup_count_of_s6() {
    assert_eq!(enumerate_subgroups(6).unwrap().len(), 1455);
}

#[test]
fn matches_two_generator_oracle() {
    for n in 1..=5 {
        assert_eq!(keys(&enumerate_subgroups(n).unwrap()), two_generated(n), "n = {n}");
    }
}

#[test]
fn s4_orders() {
    let mut by_order = BTreeMap::new();
    for g in enumerate_subgroups(4).unwrap() {
        *by_order.entry(g.order()).or_insert(0) += 1;
    }
    let expected = BTreeMap::from([(1, 1), (2, 9), (3, 4), (4, 7), (6, 4), (8, 3), (12, 1), (24, 1)]);
    assert_eq!(by_order, expected);
}

#[test]
fn ordered_and_closed_under_conjugation() {
    let groups = enumerate_subgroups(4).unwrap();
    assert!(groups.windows(2).all(|w| (w[0].order(), w[0].elements()) < (w[1].order(), w[1].elements())));
    let known = keys(&groups);
    for g in &groups {
        for c in all_perms(4) {
            let conj: Vec<Permutation> = g.elements().iter().map(|x| c.compose(x).unwrap().compose(&c.inverse()).unwrap()).sorted().collect();
            assert!(known.contains(&conj));
        }
    }
}

#[test]
fn rejects_unsupported_degrees() {
    assert!(matches!(enumerate_subgroups(0), Err(Error::EnumerationDegree { .. })));
    assert!(matches!(enumerate_subgroups(7), Err(Error::EnumerationDegree { degree: 7, max: 6 })));
}
