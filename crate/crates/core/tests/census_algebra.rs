use zagreb_core::census_algebra::{
    grm2_census_d3, grm2_census_d4, optimal_census_catalog, solve_census_d3, solve_census_d4, theorem_bound,
    FreeCensusVarsD3, FreeCensusVarsD4,
};
use zagreb_core::indices::{census_grm, grm};
use zagreb_core::rational::int;
use zagreb_core::{enumerate_trees, EnumSpec, Error};

#[test]
fn formulas_agree_with_direct_evaluation() {
    for n in 3..=12 {
        for t in enumerate_trees(&EnumSpec::new(n).max_degree(4)).unwrap() {
            let c = t.census();
            let direct = grm(&t, &int(-2)).unwrap();
            assert_eq!(census_grm(&c, &int(-2)), direct);
            assert_eq!(grm2_census_d4(&c).unwrap(), direct);
            if c.max_degree() <= 3 {
                assert_eq!(grm2_census_d3(&c).unwrap(), direct);
            }
        }
    }
}

#[test]
fn round_trip_small_orders() {
    for n in 3..=11 {
        for t in enumerate_trees(&EnumSpec::new(n).max_degree(4)).unwrap() {
            let c = t.census();
            let solved = solve_census_d4(&FreeCensusVarsD4::from_census(&c).unwrap()).unwrap();
            assert_eq!(solved.census(), Some(c.clone()));
            assert_eq!(solved.grm_minus_two(), grm(&t, &int(-2)).unwrap());
            if c.max_degree() <= 3 {
                let solved = solve_census_d3(&FreeCensusVarsD3::from_census(&c).unwrap()).unwrap();
                assert_eq!(solved.census(), Some(c));
            }
        }
    }
}

#[test]
fn bound_is_never_violated_for_degree_three() {
    for n in 7..=14 {
        let bound = theorem_bound(3, n, &int(-2)).unwrap();
        for t in enumerate_trees(&EnumSpec::new(n).exact_degree(3)).unwrap() {
            assert!(grm(&t, &int(-2)).unwrap() >= bound);
        }
    }
}

#[test]
fn census_inequality_chain() {
    // For n₃ ≥ k + 1: m₁₃ − m₃₃ ≤ n − 2n₃ − m₂₂ + 1.
    for n in 7..=14 {
        let k = ((n - 1) / 3) as i64;
        for t in enumerate_trees(&EnumSpec::new(n).max_degree(3)).unwrap() {
            let c = t.census();
            let (n3, m13, m33, m22) = (c.n(3) as i64, c.m(1, 3) as i64, c.m(3, 3) as i64, c.m(2, 2) as i64);
            if n3 > k {
                assert!(m13 - m33 <= n as i64 - 2 * n3 - m22 + 1, "n={n} {c}");
            }
        }
    }
}

#[test]
fn catalogs_are_realized() {
    for n in 7..=14 {
        let attained: Vec<_> = enumerate_trees(&EnumSpec::new(n).exact_degree(3))
            .unwrap()
            .iter()
            .filter(|t| grm(t, &int(-2)).unwrap() == theorem_bound(3, n, &int(-2)).unwrap())
            .map(|t| t.census())
            .collect();
        for c in optimal_census_catalog(3, n).unwrap() {
            assert!(attained.contains(&c), "n={n}: {c}");
        }
    }
    for n in 9..=13 {
        let trees = enumerate_trees(&EnumSpec::new(n).exact_degree(4)).unwrap();
        for c in optimal_census_catalog(4, n).unwrap() {
            assert!(trees.iter().any(|t| t.census() == c), "n={n}: {c}");
        }
    }
}

#[test]
fn degree_two_bound_regime() {
    assert!(matches!(theorem_bound(4, 4, &int(-2)), Err(Error::UnsupportedRegime(_))));
    assert!(matches!(optimal_census_catalog(4, 8), Err(Error::UnsupportedRegime(_))));
    assert!(matches!(FreeCensusVarsD3::from_census(&zagreb_core::families::make_star(5).unwrap().census()),
        Err(Error::DegreeBoundViolated { found: 4, limit: 3 })));
}
