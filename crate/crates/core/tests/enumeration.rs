mod common;

use std::collections::BTreeSet;

use zagreb_core::{canonical_code, count_trees, enumerate_trees, EnumSpec, Error};

#[test]
fn counts_match_the_prufer_oracle() {
    for n in 1..=8 {
        let classes = common::oracle_classes(n);
        assert_eq!(count_trees(&EnumSpec::new(n)).unwrap() as usize, classes.len(), "n={n}");
        for d in 2..=n.saturating_sub(1).max(2) {
            let capped = classes.values().filter(|&&m| m <= d).count();
            let exact = classes.values().filter(|&&m| m == d).count();
            if n >= 3 {
                assert_eq!(count_trees(&EnumSpec::new(n).max_degree(d)).unwrap() as usize, capped, "n={n} cap {d}");
                assert_eq!(count_trees(&EnumSpec::new(n).exact_degree(d)).unwrap() as usize, exact, "n={n} Δ={d}");
            }
        }
    }
}

#[test]
fn output_is_sorted_unique_and_in_class() {
    for n in 3..=12 {
        for d in 2..=4 {
            let spec = EnumSpec::new(n).exact_degree(d);
            let trees = enumerate_trees(&spec).unwrap();
            let codes: Vec<_> = trees.iter().map(canonical_code).collect();
            assert!(codes.windows(2).all(|w| w[0] < w[1]), "n={n} Δ={d}");
            assert!(trees.iter().all(|t| t.order() == n && t.max_degree().unwrap() == d));
            assert_eq!(trees.len() as u64, count_trees(&spec).unwrap());
        }
    }
}

#[test]
fn capped_classes_partition_by_exact_degree() {
    for n in 5..=13 {
        let capped: BTreeSet<_> =
            enumerate_trees(&EnumSpec::new(n).max_degree(4)).unwrap().iter().map(canonical_code).collect();
        let mut union = BTreeSet::new();
        for d in 2..=4 {
            for t in enumerate_trees(&EnumSpec::new(n).exact_degree(d)).unwrap() {
                assert!(union.insert(canonical_code(&t)));
            }
        }
        assert_eq!(capped, union);
    }
}

#[test]
fn parallel_mode_changes_nothing() {
    let spec = EnumSpec::new(13).max_degree(3);
    assert_eq!(enumerate_trees(&spec).unwrap(), enumerate_trees(&spec.parallel(true)).unwrap());
}

#[test]
fn guard_is_enforced() {
    assert_eq!(count_trees(&EnumSpec::new(30)), Err(Error::LimitExceeded { n: 30, limit: 26 }));
    assert!(count_trees(&EnumSpec::new(18).guard(18)).is_ok());
}
