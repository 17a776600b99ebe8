//! The bundling-comparison bound `T(b)` of a menu and its tight distribution.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{FiniteDistribution, Menu, MenuEntry, ValuationPoint};
use crate::rational::{self, serde_rational, zero, Extended, Rational};
use crate::solver::{solve_lp, LinearProgram, LpStatus, Relation, Sense};

/// One menu entry with its τ and t values, in ascending price order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TBoundRow {
    /// Position of the entry in the input menu.
    pub entry: usize,
    #[serde(with = "serde_rational::vec")]
    pub q: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub s: Rational,
    /// Least `Σx` over types for which this entry is weakly best.
    pub tau: Extended,
    /// Least `Σx` over types for which some entry priced at least `s` is weakly best.
    pub t: Extended,
    /// Minimizer of `tau`, when finite.
    #[serde(with = "serde_rational::option_vec", skip_serializing_if = "Option::is_none")]
    pub tau_point: Option<Vec<Rational>>,
    /// Row whose `tau_point` attains `t`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_source: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TBoundReport {
    pub k: usize,
    pub rows: Vec<TBoundRow>,
    #[serde(rename = "T", with = "serde_rational")]
    pub value: Rational,
    #[serde(rename = "T_decimal")]
    pub value_decimal: String,
}

impl TBoundReport {
    pub fn prices(&self) -> Vec<Rational> {
        self.rows.iter().map(|r| r.s.clone()).collect()
    }

    pub fn t(&self) -> Vec<Extended> {
        self.rows.iter().map(|r| r.t.clone()).collect()
    }

    pub fn tau(&self) -> Vec<Extended> {
        self.rows.iter().map(|r| r.tau.clone()).collect()
    }

    /// Point attaining `tⁿ`.
    pub fn t_point(&self, n: usize) -> Option<&[Rational]> {
        let src = self.rows[n].t_source?;
        self.rows[src].tau_point.as_deref()
    }

    pub fn csv_header() -> Vec<&'static str> {
        vec!["entry", "q", "s", "tau", "t", "tau_point"]
    }

    pub fn csv_rows(&self) -> Vec<Vec<String>> {
        let join = |v: &[Rational]| v.iter().map(rational::format).collect::<Vec<_>>().join(" ");
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.entry.to_string(),
                    join(&r.q),
                    rational::format(&r.s),
                    r.tau.to_string(),
                    r.t.to_string(),
                    r.tau_point.as_deref().map(join).unwrap_or_default(),
                ]
            })
            .collect()
    }
}

/// τ of entry `n`: minimize `Σx` over `x ≥ 0` with entry `n` weakly preferred
/// to every other entry and to the zero entry.
fn tau(entries: &[MenuEntry], n: usize, k: usize) -> Result<(Extended, Option<Vec<Rational>>)> {
    let own = &entries[n];
    let mut lp = LinearProgram::new(Sense::Minimize, k);
    lp.objective = vec![Rational::one(); k];
    let mut add = |other_q: Option<&[Rational]>, other_s: Rational| {
        let coeffs: Vec<(usize, Rational)> = (0..k)
            .map(|i| (i, &own.q[i] - other_q.map_or_else(zero, |q| q[i].clone())))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        lp.add_constraint(coeffs, Relation::Ge, &own.s - other_s);
    };
    add(None, zero());
    for (j, e) in entries.iter().enumerate() {
        if j != n {
            add(Some(&e.q), e.s.clone());
        }
    }
    let sol = solve_lp(&lp)?;
    match sol.status {
        LpStatus::Optimal => Ok((Extended::Finite(sol.value), Some(sol.x))),
        LpStatus::Infeasible => Ok((Extended::Infinite, None)),
        LpStatus::Unbounded => Err(Error::Internal("τ LP is bounded below by zero".into())),
    }
}

pub fn t_values(menu: &Menu) -> Result<TBoundReport> {
    let k = menu.k();
    let mut order: Vec<usize> = (0..menu.len()).collect();
    order.sort_by(|&a, &b| menu.entries()[a].s.cmp(&menu.entries()[b].s));
    let entries = menu.entries();

    let mut rows = Vec::with_capacity(order.len());
    for &idx in &order {
        let (tau, tau_point) = tau(entries, idx, k)?;
        rows.push(TBoundRow {
            entry: idx,
            q: entries[idx].q.clone(),
            s: entries[idx].s.clone(),
            tau,
            t: Extended::Infinite,
            tau_point,
            t_source: None,
        });
    }

    // tⁿ = min{τʲ : sʲ ≥ sⁿ}; ties prefer the row itself, then the lowest row.
    for n in 0..rows.len() {
        let mut best: Option<usize> = None;
        for j in 0..rows.len() {
            if rows[j].s < rows[n].s || rows[j].tau.is_infinite() {
                continue;
            }
            let better = match best {
                None => true,
                Some(b) => rows[j].tau < rows[b].tau || (rows[j].tau == rows[b].tau && j == n),
            };
            if better {
                best = Some(j);
            }
        }
        if let Some(b) = best {
            rows[n].t = rows[b].tau.clone();
            rows[n].t_source = Some(b);
        }
    }

    let mut value = zero();
    let mut prev = zero();
    for r in &rows {
        if let Extended::Finite(t) = &r.t {
            if t.is_positive() {
                value += (&r.s - &prev) / t;
            }
        }
        prev = r.s.clone();
    }
    let value_decimal = rational::to_decimal(&value, 15);
    Ok(TBoundReport { k, rows, value, value_decimal })
}

/// Distribution on which the menu earns exactly `T·BRev`: the point attaining
/// `tⁿ` carries mass `t⁰/tⁿ − t⁰/tⁿ⁺¹`, where `t⁰` is the first positive t
/// value and the last finite one is followed by `∞`.
pub fn tight_distribution(menu: &Menu) -> Result<FiniteDistribution> {
    let report = t_values(menu)?;
    tight_distribution_from(&report)
}

pub fn tight_distribution_from(report: &TBoundReport) -> Result<FiniteDistribution> {
    if report.value.is_zero() {
        return Err(Error::invalid("T(b) = 0: no distribution is tight for this menu"));
    }
    let range: Vec<usize> = (0..report.rows.len())
        .filter(|&n| report.rows[n].t.finite().is_some_and(|t| t.is_positive()))
        .collect();
    let t_of = |n: usize| report.rows[n].t.finite().cloned().expect("finite in range");
    let base = t_of(range[0]);
    let mut atoms: Vec<(ValuationPoint, Rational)> = Vec::new();
    for (pos, &n) in range.iter().enumerate() {
        let here = &base / t_of(n);
        let next = range.get(pos + 1).map_or_else(zero, |&m| &base / t_of(m));
        let alpha = here - next;
        if alpha.is_zero() {
            continue;
        }
        let point = report.t_point(n).ok_or_else(|| Error::Internal("missing attaining point".into()))?;
        atoms.push((ValuationPoint::new(point.to_vec())?, alpha));
    }
    FiniteDistribution::merged(report.k, atoms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{symmetric_separate_menu, t_example_menus};
    use crate::model::expected_revenue;
    use crate::rational::{int, rat};
    use crate::revenue::brev;

    fn fin(v: i64) -> Extended {
        Extended::Finite(int(v))
    }

    #[test]
    fn worked_t_vectors() {
        let [b1, b2, b3] = t_example_menus();
        let r1 = t_values(&b1).unwrap();
        assert_eq!(r1.t(), vec![fin(1), fin(2), fin(5)]);
        assert_eq!(r1.value, rat(19, 10));
        assert_eq!(r1.t_point(2).unwrap(), &[int(2), int(3)]);

        let r2 = t_values(&b2).unwrap();
        assert_eq!(r2.t(), vec![fin(2), fin(2), fin(4)]);
        assert_eq!(r2.value, rat(3, 2));

        let r3 = t_values(&b3).unwrap();
        assert_eq!(r3.t(), vec![fin(2), fin(4), Extended::Infinite]);
        assert_eq!(r3.value, rat(3, 2));
    }

    #[test]
    fn tight_distributions_of_worked_menus() {
        let [b1, b2, _] = t_example_menus();
        let f2 = tight_distribution(&b2).unwrap();
        let expect2 = FiniteDistribution::from_ints(2, &[(&[0, 2], (1, 2)), (&[2, 2], (1, 2))]).unwrap();
        assert_eq!(f2.sorted(), expect2.sorted());
        assert_eq!(brev(&f2).unwrap().value, int(2));
        assert_eq!(expected_revenue(&b2, &f2).unwrap(), int(3));

        let f1 = tight_distribution(&b1).unwrap();
        let expect1 =
            FiniteDistribution::from_ints(2, &[(&[1, 0], (1, 2)), (&[0, 2], (3, 10)), (&[2, 3], (1, 5))]).unwrap();
        assert_eq!(f1.sorted(), expect1.sorted());
        assert_eq!(expected_revenue(&b1, &f1).unwrap(), rat(19, 10));
    }

    #[test]
    fn bundle_only_menu() {
        let m = Menu::new(2, vec![MenuEntry::from_ints(&[1, 1], 3)]).unwrap();
        let r = t_values(&m).unwrap();
        assert_eq!(r.value, int(1));
        let f = tight_distribution(&m).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.atoms()[0].x.total(), int(3));
        assert_eq!(expected_revenue(&m, &f).unwrap(), int(3));
    }

    #[test]
    fn empty_and_free_menus() {
        let r = t_values(&Menu::empty(2)).unwrap();
        assert_eq!(r.value, zero());
        assert!(tight_distribution(&Menu::empty(2)).is_err());
        let free = Menu::new(2, vec![MenuEntry::from_ints(&[1, 0], 0)]).unwrap();
        let r = t_values(&free).unwrap();
        assert_eq!(r.rows[0].t, fin(0));
        assert_eq!(r.value, zero());
    }

    #[test]
    fn separate_price_menu_is_three_halves() {
        assert_eq!(t_values(&symmetric_separate_menu()).unwrap().value, rat(3, 2));
    }
}
