//! Brute-force oracles shared by the integration tests. They only use the
//! public API and deliberately avoid the library's search code.

#![allow(dead_code)]

use menurev::analysis::TBoundReport;
use menurev::rational::{one, zero};
use menurev::solver::AllocationMode;
use menurev::{price_lp_for_assignment, Extended, FiniteDistribution, Menu, Rational};
use num_traits::{Signed, Zero};

/// Every labeling of `n` atoms with labels `0..labels` (label 0 = not served).
fn labelings(n: usize, labels: usize, mut f: impl FnMut(&[usize])) {
    let mut cur = vec![0usize; n];
    loop {
        f(&cur);
        let mut i = 0;
        while i < n {
            cur[i] += 1;
            if cur[i] < labels {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        if i == n {
            return;
        }
    }
}

/// DRev by solving the price LP for every atom-to-bundle assignment.
pub fn drev_by_assignments(f: &FiniteDistribution) -> Rational {
    let k = f.k();
    let bundles: Vec<Vec<Rational>> = (1u32..(1 << k))
        .map(|mask| (0..k).map(|i| if mask >> i & 1 == 1 { one() } else { zero() }).collect())
        .collect();
    let mode = AllocationMode::Fixed(bundles.clone());
    let mut best = zero();
    labelings(f.len(), bundles.len() + 1, |lab| {
        let assignment: Vec<Option<usize>> = lab.iter().map(|&l| l.checked_sub(1)).collect();
        if let Some(sol) = price_lp_for_assignment(f, &mode, &assignment).unwrap() {
            if sol.value > best {
                best = sol.value;
            }
        }
    });
    best
}

/// Rev by solving the free-allocation LP for every grouping of the atoms into
/// at most `m` shared entries (label 0 = zero entry).
pub fn rev_by_partitions(f: &FiniteDistribution, m: usize) -> Rational {
    let n = f.len();
    let mode = AllocationMode::Free { groups: m, unit_demand: false };
    let mut best = zero();
    labelings(n, m + 1, |lab| {
        // canonical labelings only: group g+1 appears only after group g
        let mut seen = 0;
        for &l in lab {
            if l > seen + 1 {
                return;
            }
            seen = seen.max(l);
        }
        let assignment: Vec<Option<usize>> = lab.iter().map(|&l| l.checked_sub(1)).collect();
        if let Some(sol) = price_lp_for_assignment(f, &mode, &assignment).unwrap() {
            if sol.value > best {
                best = sol.value;
            }
        }
    });
    best
}

/// τ for two-item menus by enumerating vertices of the feasible region.
pub fn tau_two_item(menu: &Menu, n: usize) -> Extended {
    let own = &menu.entries()[n];
    // half-planes a·x ≥ b
    let mut hp: Vec<([Rational; 2], Rational)> = vec![([one(), zero()], zero()), ([zero(), one()], zero())];
    hp.push(([own.q[0].clone(), own.q[1].clone()], own.s.clone()));
    for (j, e) in menu.entries().iter().enumerate() {
        if j != n {
            hp.push(([&own.q[0] - &e.q[0], &own.q[1] - &e.q[1]], &own.s - &e.s));
        }
    }
    let feasible = |x: &[Rational; 2]| hp.iter().all(|(a, b)| &a[0] * &x[0] + &a[1] * &x[1] >= *b);
    let mut best: Option<Rational> = None;
    for i in 0..hp.len() {
        for j in i + 1..hp.len() {
            let (a, b) = (&hp[i], &hp[j]);
            let det = &a.0[0] * &b.0[1] - &a.0[1] * &b.0[0];
            if det.is_zero() {
                continue;
            }
            let x = [(&a.1 * &b.0[1] - &a.0[1] * &b.1) / &det, (&a.0[0] * &b.1 - &a.1 * &b.0[0]) / &det];
            if x.iter().any(|v| v.is_negative()) || !feasible(&x) {
                continue;
            }
            let total = &x[0] + &x[1];
            if best.as_ref().is_none_or(|b| total < *b) {
                best = Some(total);
            }
        }
    }
    best.map_or(Extended::Infinite, Extended::Finite)
}

/// `T` from per-entry τ values via its defining formula.
pub fn t_from_taus(prices: &[Rational], taus: &[Extended]) -> (Vec<Extended>, Rational) {
    let m = prices.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| prices[a].cmp(&prices[b]));
    let t: Vec<Extended> = order
        .iter()
        .map(|&n| {
            order
                .iter()
                .filter(|&&j| prices[j] >= prices[n])
                .map(|&j| taus[j].clone())
                .min()
                .unwrap_or(Extended::Infinite)
        })
        .collect();
    let mut total = zero();
    let mut prev = zero();
    for (pos, &n) in order.iter().enumerate() {
        if let Extended::Finite(tn) = &t[pos] {
            if tn.is_positive() {
                total += (&prices[n] - &prev) / tn;
            }
        }
        prev = prices[n].clone();
    }
    (t, total)
}

/// Oracle T for a two-item menu.
pub fn t_two_item(menu: &Menu) -> (Vec<Extended>, Rational) {
    let prices: Vec<Rational> = menu.entries().iter().map(|e| e.s.clone()).collect();
    let taus: Vec<Extended> = (0..menu.len()).map(|n| tau_two_item(menu, n)).collect();
    t_from_taus(&prices, &taus)
}

pub fn report_matches_oracle(report: &TBoundReport, menu: &Menu) -> bool {
    let (t, value) = t_two_item(menu);
    report.t() == t && report.value == value
}
