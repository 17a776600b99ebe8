use menurev::rational::{int, rat, zero};
use menurev::solver::{Bound, Relation, Sense};
use menurev::{
    evaluate_choice, expected_revenue, scale_distribution, scale_menu, solve_lp, symmetrize, Atom, FiniteDistribution,
    LinearProgram, LpStatus, Menu, MenuEntry, Rational, ValuationPoint,
};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (0i64..=16, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn unit_rational() -> impl Strategy<Value = Rational> {
    (0i64..=4).prop_map(|n| rat(n, 4))
}

fn distribution(k: usize) -> impl Strategy<Value = FiniteDistribution> {
    prop::collection::vec((prop::collection::vec(small_rational(), k), 1i64..=5), 1..=4).prop_map(move |raw| {
        let total: i64 = raw.iter().map(|(_, w)| w).sum();
        let atoms = raw.into_iter().map(|(x, w)| (ValuationPoint::new(x).unwrap(), rat(w, total)));
        FiniteDistribution::merged(k, atoms).unwrap()
    })
}

fn menu(k: usize) -> impl Strategy<Value = Menu> {
    prop::collection::vec((prop::collection::vec(unit_rational(), k), small_rational()), 0..=4)
        .prop_map(move |raw| Menu::dedup(k, raw.into_iter().map(|(q, s)| MenuEntry { q, s })).unwrap())
}

/// Maximum of `c·x` over `{x ∈ [0,10]² : a·x ≤ b}` by enumerating vertices.
fn lp_by_vertices(c: &[Rational; 2], rows: &[([Rational; 2], Rational)]) -> Option<Rational> {
    let mut lines = rows.to_vec();
    lines.push(([int(1), zero()], int(10)));
    lines.push(([zero(), int(1)], int(10)));
    lines.push(([int(-1), zero()], zero()));
    lines.push(([zero(), int(-1)], zero()));
    let feasible = |x: &[Rational; 2]| lines.iter().all(|(a, b)| &a[0] * &x[0] + &a[1] * &x[1] <= *b);
    let mut best: Option<Rational> = None;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (p, q) = (&lines[i], &lines[j]);
            let det = &p.0[0] * &q.0[1] - &p.0[1] * &q.0[0];
            if det == zero() {
                continue;
            }
            let x = [(&p.1 * &q.0[1] - &p.0[1] * &q.1) / &det, (&p.0[0] * &q.1 - &p.1 * &q.0[0]) / &det];
            if feasible(&x) {
                let v = &c[0] * &x[0] + &c[1] * &x[1];
                if best.as_ref().is_none_or(|b| v > *b) {
                    best = Some(v);
                }
            }
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn simplex_agrees_with_vertex_enumeration(
        c in prop::array::uniform2(-5i64..=5),
        rows in prop::collection::vec((prop::array::uniform2(-4i64..=4), -6i64..=12), 0..=5),
    ) {
        let c = [int(c[0]), int(c[1])];
        let rows: Vec<([Rational; 2], Rational)> =
            rows.into_iter().map(|(a, b)| ([int(a[0]), int(a[1])], int(b))).collect();
        let mut lp = LinearProgram::new(Sense::Maximize, 2);
        lp.objective = c.to_vec();
        lp.bounds = vec![Bound::between(zero(), int(10)); 2];
        for (a, b) in &rows {
            lp.add_constraint(vec![(0, a[0].clone()), (1, a[1].clone())], Relation::Le, b.clone());
        }
        let sol = solve_lp(&lp).unwrap();
        match lp_by_vertices(&c, &rows) {
            Some(v) => {
                prop_assert_eq!(sol.status, LpStatus::Optimal);
                prop_assert_eq!(&sol.value, &v);
                prop_assert!(lp.is_feasible(&sol.x));
            }
            None => prop_assert_eq!(sol.status, LpStatus::Infeasible),
        }
    }

    #[test]
    fn choice_is_optimal_and_deterministic(m in menu(2), x in prop::collection::vec(small_rational(), 2)) {
        let x = ValuationPoint::new(x).unwrap();
        let c = evaluate_choice(&m, &x).unwrap();
        prop_assert!(c.utility >= zero());
        for e in m.entries() {
            prop_assert!(c.utility >= e.utility(&x));
        }
        prop_assert_eq!(evaluate_choice(&m, &x).unwrap(), c);
    }

    #[test]
    fn scaling_multiplies_revenue(m in menu(3), f in distribution(3), l in (1i64..=12, 1i64..=3)) {
        let lambda = rat(l.0, l.1);
        let lhs = expected_revenue(&scale_menu(&m, &lambda).unwrap(), &scale_distribution(&f, &lambda).unwrap()).unwrap();
        prop_assert_eq!(lhs, &lambda * expected_revenue(&m, &f).unwrap());
    }

    #[test]
    fn symmetrization_keeps_bundle_revenue_and_is_idempotent(f in distribution(3), p in small_rational()) {
        let sym = symmetrize(&f);
        prop_assert!(sym.is_symmetric());
        prop_assert_eq!(symmetrize(&sym), sym.clone());
        prop_assert_eq!(sym.total_mass(), f.total_mass());
        if let Ok(bundle) = Menu::new(3, vec![MenuEntry { q: vec![int(1); 3], s: p }]) {
            prop_assert_eq!(expected_revenue(&bundle, &sym).unwrap(), expected_revenue(&bundle, &f).unwrap());
        }
    }

    #[test]
    fn json_round_trip(f in distribution(2), m in menu(2)) {
        let fj = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<FiniteDistribution>(&fj).unwrap(), f);
        let mj = serde_json::to_string(&m).unwrap();
        prop_assert_eq!(serde_json::from_str::<Menu>(&mj).unwrap(), m);
    }
}

#[test]
fn distribution_json_shape() {
    let f = FiniteDistribution::new(2, vec![Atom { x: ValuationPoint::from_ints(&[1, 0]), p: rat(1, 4) }]).unwrap();
    assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"k":2,"atoms":[{"x":["1/1","0/1"],"p":"1/4"}]}"#);
}
