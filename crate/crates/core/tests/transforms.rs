mod common;

use proptest::prelude::*;
use zagreb_core::families::{make_t_opt, make_star};
use zagreb_core::indices::grm;
use zagreb_core::rational::int;
use zagreb_core::transforms::{apply, instances, normalize, pendant_removal_delta, remove_leaf, TransformKind};
use zagreb_core::{enumerate_trees, isomorphic, EnumSpec, Error, Rational};

#[test]
fn every_instance_has_the_claimed_delta() {
    for n in 7..=11 {
        for t in enumerate_trees(&EnumSpec::new(n).max_degree(3)).unwrap() {
            for kind in TransformKind::ALL {
                for o in instances(&t, kind).unwrap() {
                    assert!(o.delta_holds(&t), "T{} on n={n}", kind.number());
                    assert_eq!(o.result.order(), n - kind.removed_count());
                    assert!(o.result.max_degree().unwrap() <= 3);
                }
            }
        }
    }
}

#[test]
fn normalization_trace_is_consistent() {
    let lambda = int(-2);
    for n in 7..=12 {
        for t in enumerate_trees(&EnumSpec::new(n).max_degree(3)).unwrap() {
            let norm = normalize(&t).unwrap();
            let drop = grm(&t, &lambda).unwrap() - grm(&norm.result, &lambda).unwrap();
            assert_eq!(drop, norm.total_delta);
            assert!(norm.result.order() < 7 || TransformKind::ALL.iter().all(|&k| apply(&norm.result, k).unwrap().is_none()));
        }
    }
}

#[test]
fn optimal_trees_reduce_to_optimal_trees() {
    // Removing an arm (T4) from T¹(k+1) lands on T¹(k).
    for k in 2..=5 {
        let big = &make_t_opt(1, k + 1).unwrap()[0];
        let small = &make_t_opt(1, k).unwrap()[0];
        let o = apply(big, TransformKind::ContractArm).unwrap().unwrap();
        assert!(isomorphic(&o.result, small));
    }
}

#[test]
fn preconditions() {
    let star = make_star(8).unwrap();
    assert!(matches!(instances(&star, TransformKind::MergeDegreeTwo), Err(Error::DegreeBoundViolated { .. })));
    let small = &make_t_opt(1, 1).unwrap()[0];
    assert!(matches!(instances(small, TransformKind::DropLeafPair), Err(Error::DomainViolation(_))));
    assert!(matches!(pendant_removal_delta(&star, 0, &int(0)), Err(Error::NotALeaf(0))));
}

proptest! {
    #[test]
    fn pendant_recurrence_is_exact(t in common::arb_tree(3, 30), p in -12i64..12, q in 1i64..5) {
        let l = Rational::new(p.into(), q.into());
        for v in t.leaves() {
            let direct = grm(&t, &l).unwrap() - grm(&remove_leaf(&t, v).unwrap(), &l).unwrap();
            prop_assert_eq!(pendant_removal_delta(&t, v, &l).unwrap(), direct);
        }
    }
}
