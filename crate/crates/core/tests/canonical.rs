mod common;

use proptest::prelude::*;
use zagreb_core::canonical::{centers, rooted_code};
use zagreb_core::{canonical_code, enumerate_trees, isomorphic, EnumSpec};

proptest! {
    #[test]
    fn code_is_label_invariant((a, b) in common::arb_relabeled(1, 40)) {
        prop_assert_eq!(canonical_code(&a), canonical_code(&b));
    }

    #[test]
    fn code_agrees_with_the_oracle(a in common::arb_tree(3, 14), b in common::arb_tree(3, 14)) {
        let same_oracle = common::oracle_code(&common::adjacency(&a)) == common::oracle_code(&common::adjacency(&b));
        prop_assert_eq!(isomorphic(&a, &b), same_oracle);
    }

    #[test]
    fn code_is_the_smaller_center_rooting(t in common::arb_tree(3, 30)) {
        let best = centers(&t).into_iter().map(|c| rooted_code(&t, c)).min().unwrap();
        let code = canonical_code(&t);
        prop_assert_eq!(code.as_str(), best.as_str());
    }
}

#[test]
fn matches_brute_force_on_all_small_pairs() {
    for n in 1..=7 {
        let trees = enumerate_trees(&EnumSpec::new(n)).unwrap();
        for (i, a) in trees.iter().enumerate() {
            for (j, b) in trees.iter().enumerate() {
                let perm: Vec<usize> = (0..n).map(|v| (v + j) % n).collect();
                let b = b.relabel(&perm);
                assert_eq!(isomorphic(a, &b), i == j);
                assert_eq!(common::brute_isomorphic(a, &b), i == j);
            }
        }
    }
}

#[test]
fn code_is_balanced_parentheses() {
    for t in enumerate_trees(&EnumSpec::new(9)).unwrap() {
        let code = canonical_code(&t);
        let mut depth = 0i32;
        for ch in code.as_str().chars() {
            depth += if ch == '(' { 1 } else { -1 };
            assert!(depth >= 0);
        }
        assert_eq!(depth, 0);
        assert_eq!(code.as_str().len(), 2 * t.order());
    }
}
