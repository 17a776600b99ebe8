mod common;

use menurev::analysis::t_values;
use menurev::invariants::InstanceGen;
use menurev::revenue::{drev, m_rev_profile, rev, SearchConfig, DEFAULT_BUDGET};
use menurev::Error;

#[test]
fn branch_and_bound_drev_matches_assignment_enumeration() {
    let mut gen = InstanceGen::new(11);
    for _ in 0..40 {
        let k = gen.range(1, 2);
        let n = gen.range(1, 4);
        let f = gen.distribution(k, n, 0, 4, 2, false);
        let bb = drev(&f, SearchConfig::default()).unwrap();
        let ex = drev(&f, SearchConfig::exhaustive(DEFAULT_BUDGET)).unwrap();
        let oracle = common::drev_by_assignments(&f);
        assert_eq!(bb.value, oracle, "{f:?}");
        assert_eq!(ex.value, oracle, "{f:?}");
        assert!(bb.witness.is_deterministic());
    }
}

#[test]
fn menu_size_profile_matches_partition_enumeration() {
    let mut gen = InstanceGen::new(12);
    for _ in 0..20 {
        let k = gen.range(1, 2);
        let n = gen.range(1, 4);
        let f = gen.distribution(k, n, 0, 3, 2, false);
        let bb = m_rev_profile(&f, n, SearchConfig::default()).unwrap();
        let ex = m_rev_profile(&f, n, SearchConfig::exhaustive(DEFAULT_BUDGET)).unwrap();
        for m in 1..=n {
            let oracle = common::rev_by_partitions(&f, m);
            assert_eq!(bb[m - 1].value, oracle, "m={m} {f:?}");
            assert_eq!(ex[m - 1].value, oracle, "m={m} {f:?}");
        }
        assert_eq!(bb[n - 1].value, rev(&f).unwrap().value);
    }
}

#[test]
fn t_values_match_vertex_enumeration() {
    let mut gen = InstanceGen::new(13);
    for _ in 0..200 {
        let size = gen.range(0, 5);
        let menu = gen.menu(2, size, 0, 8, 4);
        let rep = t_values(&menu).unwrap();
        assert!(common::report_matches_oracle(&rep, &menu), "{menu:?}\n{rep:?}");
    }
}

#[test]
fn exhaustive_search_refuses_over_budget() {
    let mut gen = InstanceGen::new(14);
    let f = gen.distribution(3, 6, 0, 4, 1, true);
    let e = drev(&f, SearchConfig::exhaustive(100)).unwrap_err();
    assert!(matches!(e, Error::BudgetExceeded { .. }));
    let e = m_rev_profile(&f, 6, SearchConfig::exhaustive(10)).unwrap_err();
    assert!(e.is_budget_refusal());
}
