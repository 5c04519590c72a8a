use permpat::{Notation, Parity, Permutation, SumKind, Symmetry};
use proptest::prelude::*;

fn perm(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle()).prop_map(|img| Permutation::from_images(&img).unwrap())
}

fn perm_of(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle().prop_map(|img| Permutation::from_images(&img).unwrap())
}

fn pair(max: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (1..=max).prop_flat_map(|n| (perm_of(n), perm_of(n)))
}

fn triple(max: usize) -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1..=max).prop_flat_map(|n| (perm_of(n), perm_of(n), perm_of(n)))
}

/// Reduction of a word of distinct integers, straight from the definition.
fn reduce_naive(word: &[usize]) -> Vec<usize> {
    word.iter().map(|&w| word.iter().filter(|&&v| v <= w).count()).collect()
}

proptest! {
    #[test]
    fn one_line_round_trip(p in perm(16)) {
        let text = p.format(Notation::OneLine);
        prop_assert_eq!(Permutation::parse(&text, Notation::OneLine, None).unwrap(), p);
    }

    #[test]
    fn cycle_round_trip(p in perm(16)) {
        let text = p.format(Notation::Cycles);
        prop_assert_eq!(Permutation::parse_cycles(&text, p.degree()).unwrap(), p);
    }

    #[test]
    fn composition_is_associative((f, g, h) in triple(12)) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn composition_applies_right_factor_first((f, g) in pair(12)) {
        let fg = f.compose(&g).unwrap();
        for x in 1..=f.degree() {
            prop_assert_eq!(fg.image(x), f.image(g.image(x)));
        }
    }

    #[test]
    fn inverse_cancels(p in perm(16)) {
        let id = Permutation::identity(p.degree()).unwrap();
        prop_assert_eq!(p.compose(&p.inverse()).unwrap(), id);
        prop_assert_eq!(p.inverse().compose(&p).unwrap(), id);
    }

    #[test]
    fn order_is_the_least_period(p in perm(10)) {
        let k = p.order();
        prop_assert!(p.power(k as i64).is_identity());
        for j in 1..k {
            prop_assert!(!p.power(j as i64).is_identity());
        }
        prop_assert_eq!(p.power(-1), p.inverse());
    }

    #[test]
    fn parity_is_a_homomorphism((f, g) in pair(12)) {
        let fg = f.compose(&g).unwrap();
        prop_assert_eq!(fg.is_even(), f.is_even() == g.is_even());
        prop_assert_eq!(f.parity() == Parity::Even, f.inversions() % 2 == 0);
    }

    #[test]
    fn patterns_match_naive_reduction(p in perm(9), mask in 1u32..512) {
        let positions: Vec<usize> = (1..=p.degree()).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        prop_assume!(!positions.is_empty());
        let word: Vec<usize> = positions.iter().map(|&i| p.image(i)).collect();
        prop_assert_eq!(p.pattern(&positions).unwrap().images(), reduce_naive(&word));
    }

    #[test]
    fn deleting_a_point_is_the_complementary_pattern(p in perm(9), i in 1usize..10) {
        prop_assume!(p.degree() >= 2 && i <= p.degree());
        let rest: Vec<usize> = (1..=p.degree()).filter(|&j| j != i).collect();
        prop_assert_eq!(p.delete_point(i).unwrap(), p.pattern(&rest).unwrap());
    }

    #[test]
    fn every_listed_pattern_is_contained(p in perm(8), l in 1usize..9) {
        prop_assume!(l <= p.degree());
        let pats = p.all_patterns(l).unwrap();
        prop_assert!(pats.windows(2).all(|w| w[0] < w[1]));
        for t in &pats {
            prop_assert!(t.is_pattern_of(&p));
        }
    }

    #[test]
    fn symmetries_are_involutions(p in perm(16)) {
        for s in [Symmetry::Reverse, Symmetry::Complement, Symmetry::RcConjugate] {
            prop_assert_eq!(p.symmetry(s).symmetry(s), p);
        }
        let n = p.degree();
        for x in 1..=n {
            prop_assert_eq!(p.reverse().image(x), p.image(n + 1 - x));
            prop_assert_eq!(p.complement().image(x), n + 1 - p.image(x));
        }
    }

    #[test]
    fn sums_place_blocks((f, g) in (perm(6), perm(6))) {
        let (a, b) = (f.degree(), g.degree());
        let direct = f.sum(&g, SumKind::Direct).unwrap();
        let skew = f.sum(&g, SumKind::Skew).unwrap();
        for x in 1..=a {
            prop_assert_eq!(direct.image(x), f.image(x));
            prop_assert_eq!(skew.image(x), f.image(x) + b);
        }
        for x in 1..=b {
            prop_assert_eq!(direct.image(a + x), g.image(x) + a);
            prop_assert_eq!(skew.image(a + x), g.image(x));
        }
    }

    #[test]
    fn jumps_match_the_definition(p in perm(12)) {
        let mut expected: Vec<(usize, usize)> = (1..p.degree())
            .map(|t| (p.image(t).min(p.image(t + 1)), p.image(t).max(p.image(t + 1))))
            .filter(|(a, b)| a + 2 <= *b)
            .collect();
        expected.sort();
        expected.dedup();
        let got: Vec<(usize, usize)> = p.jumps().iter().map(|j| (j.a, j.b)).collect();
        prop_assert_eq!(got, expected);
    }
}
