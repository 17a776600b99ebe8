//! Menu discretization: few price levels and a coarse allocation grid while
//! keeping almost all of the revenue.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{evaluate_choice, FiniteDistribution, Menu, MenuEntry};
use crate::rational::{self, int, one, serde_rational, zero, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum Parameters {
    TwoItem {
        #[serde(rename = "H", with = "serde_rational")]
        h: Rational,
        #[serde(with = "serde_rational")]
        delta: Rational,
        /// Parameter the rounding steps actually use; three compounded losses of
        /// `δ/3` each stay above `1 − δ`.
        #[serde(with = "serde_rational")]
        working_delta: Rational,
        /// Number of price ranges `K`.
        ranges: usize,
        #[serde(with = "serde_rational")]
        grid_step: Rational,
    },
    Grid {
        n: u64,
        /// Price discount `r`, equal to `1/√n` when `n` is a perfect square and a
        /// lower rational approximation otherwise.
        #[serde(with = "serde_rational")]
        discount: Rational,
        exact_root: bool,
    },
}

/// What happened to one input entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryTrace {
    pub entry: usize,
    /// Price range index (two-item only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    #[serde(with = "serde_rational::option", skip_serializing_if = "Option::is_none")]
    pub range_top: Option<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub q: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub s: Rational,
    /// Whether the rounded entry survived pruning.
    pub kept: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PaymentRow {
    pub atom: usize,
    #[serde(with = "serde_rational")]
    pub old: Rational,
    #[serde(with = "serde_rational")]
    pub new: Rational,
}

/// Evidence that the discretized menu keeps its revenue on a test distribution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub payments: Vec<PaymentRow>,
    #[serde(with = "serde_rational")]
    pub old_revenue: Rational,
    #[serde(with = "serde_rational")]
    pub new_revenue: Rational,
    /// Smallest `new/old` over atoms with a positive old payment.
    #[serde(with = "serde_rational::option")]
    pub min_ratio: Option<Rational>,
    /// Two-item: required per-type ratio `1 − δ`. Grid: allowed additive loss `2k/√n`.
    #[serde(with = "serde_rational")]
    pub threshold: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscretizationReport {
    pub parameters: Parameters,
    pub input: Menu,
    pub output: Menu,
    pub entries: Vec<EntryTrace>,
    pub size: usize,
    #[serde(with = "serde_rational")]
    pub size_bound: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl DiscretizationReport {
    pub fn csv_header() -> Vec<&'static str> {
        vec!["entry", "level", "range_top", "q", "s", "kept"]
    }

    pub fn csv_rows(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|e| {
                vec![
                    e.entry.to_string(),
                    e.level.map(|l| l.to_string()).unwrap_or_default(),
                    e.range_top.as_ref().map(rational::format).unwrap_or_default(),
                    e.q.iter().map(rational::format).collect::<Vec<_>>().join(" "),
                    rational::format(&e.s),
                    e.kept.to_string(),
                ]
            })
            .collect()
    }
}

fn floor_to(v: &Rational, step: &Rational) -> Rational {
    (v / step).floor() * step
}

/// Smallest `K` with `(1+d²)^K ≥ H`.
pub fn price_ranges(h: &Rational, d: &Rational) -> usize {
    let ratio = one() + d * d;
    let mut top = one();
    let mut k = 0;
    while top < *h {
        top *= &ratio;
        k += 1;
    }
    k
}

/// Two-item discretization for prices in `[1, H]` and `0 < δ < 1/3`.
///
/// With `d = δ/3` and `K` price ranges with tops `(1+d²)^i`, each entry's
/// price is rounded up to its range top and multiplied by `(1−d)²`; its
/// allocation is scaled by `(1−d)`, rounded down to multiples of `d/K`, and
/// raised by `d·i/K` in both coordinates, where `i` is the range index.
pub fn discretize_two_item(
    menu: &Menu,
    h: &Rational,
    delta: &Rational,
    test: Option<&FiniteDistribution>,
) -> Result<DiscretizationReport> {
    if menu.k() != 2 {
        return Err(Error::invalid("two-item discretization needs k = 2"));
    }
    if !delta.is_positive() || *delta >= rational::rat(1, 3) {
        return Err(Error::invalid("delta must lie in (0, 1/3)"));
    }
    if *h < one() {
        return Err(Error::invalid("H must be at least 1"));
    }
    for e in menu.entries() {
        if e.s < one() || e.s > *h {
            return Err(Error::invalid(format!("price {} outside [1, H]", rational::format(&e.s))));
        }
    }
    let d = delta / int(3);
    let ranges = price_ranges(h, &d);
    let step = &d / int(ranges.max(1) as i64);
    let keep = one() - &d;
    let ratio = one() + &d * &d;

    let mut entries = Vec::with_capacity(menu.len());
    for (idx, e) in menu.entries().iter().enumerate() {
        let mut level = 0;
        let mut top = one();
        while top < e.s {
            top *= &ratio;
            level += 1;
        }
        let boost = &step * int(level as i64);
        let q: Vec<Rational> = e
            .q
            .iter()
            .map(|v| {
                let raised = floor_to(&(v * &keep), &step) + &boost;
                if raised > one() {
                    one()
                } else {
                    raised
                }
            })
            .collect();
        let s = &top * &keep * &keep;
        entries.push(EntryTrace { entry: idx, level: Some(level), range_top: Some(top), q, s, kept: false });
    }

    // Same range and same q₁: only the largest q₂ can ever be chosen.
    let mut best: BTreeMap<(usize, Rational), usize> = BTreeMap::new();
    for (i, e) in entries.iter().enumerate() {
        let key = (e.level.unwrap_or(0), e.q[0].clone());
        match best.get(&key) {
            Some(&j) if entries[j].q[1] >= e.q[1] => {}
            _ => {
                best.insert(key, i);
            }
        }
    }
    let mut kept: Vec<usize> = best.into_values().collect();
    kept.sort_unstable();
    for &i in &kept {
        entries[i].kept = true;
    }
    let output = Menu::dedup(2, kept.iter().map(|&i| MenuEntry { q: entries[i].q.clone(), s: entries[i].s.clone() }))?;

    let k_r = int(ranges.max(1) as i64);
    let size_bound = &k_r * &k_r / &d;
    let certificate = match test {
        Some(f) => {
            let threshold = one() - delta;
            let mut c = certify(menu, &output, f, threshold.clone())?;
            c.holds = c.payments.iter().all(|p| p.new >= &threshold * &p.old);
            Some(c)
        }
        None => None,
    };
    Ok(DiscretizationReport {
        parameters: Parameters::TwoItem { h: h.clone(), delta: delta.clone(), working_delta: d, ranges, grid_step: step },
        input: menu.clone(),
        size: output.len(),
        output,
        entries,
        size_bound,
        certificate,
    })
}

/// `1/√n` when exact, otherwise `(⌊D/√n⌋/D, (⌊D/√n⌋+1)/D)` bracketing it with `D = 10¹²`.
fn inverse_root(n: u64) -> (Rational, Rational, bool) {
    if let Some(r) = rational::exact_sqrt_u64(n) {
        let v = rational::rat(1, r as i64);
        return (v.clone(), v, true);
    }
    let d = BigInt::from(10u64.pow(12));
    let lower = (&d * &d / BigInt::from(n)).sqrt();
    let below = Rational::new(lower.clone(), d.clone());
    let above = Rational::new(lower + 1, d);
    (below, above, false)
}

/// Rounds every allocation up to the `1/n` grid and discounts prices by `1 − 1/√n`.
pub fn round_grid_k(menu: &Menu, n: u64, test: Option<&FiniteDistribution>) -> Result<DiscretizationReport> {
    if n == 0 {
        return Err(Error::invalid("grid size must be positive"));
    }
    let k = menu.k();
    let nr = int(n as i64);
    let (discount, discount_upper, exact_root) = inverse_root(n);
    let factor = one() - &discount;

    let mut entries: Vec<EntryTrace> = menu
        .entries()
        .iter()
        .enumerate()
        .map(|(idx, e)| EntryTrace {
            entry: idx,
            level: None,
            range_top: None,
            q: e.q.iter().map(|v| (v * &nr).ceil() / &nr).collect(),
            s: &e.s * &factor,
            kept: false,
        })
        .collect();

    // Among equal allocations the cheapest always wins; an all-zero allocation never sells.
    let mut cheapest: BTreeMap<Vec<Rational>, usize> = BTreeMap::new();
    for (i, e) in entries.iter().enumerate() {
        if e.q.iter().all(Zero::is_zero) {
            continue;
        }
        match cheapest.get(&e.q) {
            Some(&j) if entries[j].s <= e.s => {}
            _ => {
                cheapest.insert(e.q.clone(), i);
            }
        }
    }
    let mut kept: Vec<usize> = cheapest.into_values().collect();
    kept.sort_unstable();
    for &i in &kept {
        entries[i].kept = true;
    }
    let output = Menu::dedup(k, kept.iter().map(|&i| MenuEntry { q: entries[i].q.clone(), s: entries[i].s.clone() }))?;

    let grid_points = num_traits::pow(BigInt::from(n + 1), k);
    let size_bound = Rational::from_integer(grid_points - 1);
    let certificate = match test {
        Some(f) => {
            let allowed = int(2 * k as i64) * &discount_upper;
            let mut c = certify(menu, &output, f, allowed.clone())?;
            c.holds = c.new_revenue >= &c.old_revenue - &allowed;
            Some(c)
        }
        None => None,
    };
    Ok(DiscretizationReport {
        parameters: Parameters::Grid { n, discount, exact_root },
        input: menu.clone(),
        size: output.len(),
        output,
        entries,
        size_bound,
        certificate,
    })
}

fn certify(old: &Menu, new: &Menu, f: &FiniteDistribution, threshold: Rational) -> Result<Certificate> {
    let mut payments = Vec::with_capacity(f.len());
    let (mut old_rev, mut new_rev) = (zero(), zero());
    let mut min_ratio: Option<Rational> = None;
    for (i, a) in f.atoms().iter().enumerate() {
        let o = evaluate_choice(old, &a.x)?.payment;
        let n = evaluate_choice(new, &a.x)?.payment;
        old_rev += &a.p * &o;
        new_rev += &a.p * &n;
        if o.is_positive() {
            let r = &n / &o;
            if min_ratio.as_ref().is_none_or(|m| r < *m) {
                min_ratio = Some(r);
            }
        }
        payments.push(PaymentRow { atom: i, old: o, new: n });
    }
    Ok(Certificate { payments, old_revenue: old_rev, new_revenue: new_rev, min_ratio, threshold, holds: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn range_count() {
        assert_eq!(price_ranges(&int(10), &rat(3, 10)), 27);
        assert_eq!(price_ranges(&int(1), &rat(1, 10)), 0);
        assert_eq!(price_ranges(&int(10), &rat(1, 10)), 232);
    }

    #[test]
    fn price_at_range_top() {
        // price 1 is the top of range 0, so only the two (1−d) factors apply
        let m = Menu::new(2, vec![MenuEntry::from_ints(&[1, 1], 1)]).unwrap();
        let r = discretize_two_item(&m, &int(10), &rat(3, 10), None).unwrap();
        let d = rat(1, 10);
        assert_eq!(r.output.entries()[0].s, (one() - &d) * (one() - &d));
        assert_eq!(r.entries[0].level, Some(0));
        assert!(r.output.entries()[0].q.iter().all(|v| *v <= one()));
    }

    #[test]
    fn two_item_rejects_bad_input() {
        let m = Menu::new(2, vec![MenuEntry::from_ints(&[1, 1], 20)]).unwrap();
        assert!(discretize_two_item(&m, &int(10), &rat(3, 10), None).is_err());
        let m = Menu::new(2, vec![MenuEntry::from_ints(&[1, 1], 2)]).unwrap();
        assert!(discretize_two_item(&m, &int(10), &rat(1, 2), None).is_err());
        let m3 = Menu::new(3, vec![]).unwrap();
        assert!(discretize_two_item(&m3, &int(10), &rat(1, 10), None).is_err());
    }

    #[test]
    fn grid_rounding_example() {
        let m = Menu::new(2, vec![MenuEntry::new(vec![rat(12, 100), rat(1, 2)], int(1)).unwrap()]).unwrap();
        let r = round_grid_k(&m, 25, None).unwrap();
        assert_eq!(r.output.entries()[0].q, vec![rat(3, 25), rat(13, 25)]);
        assert_eq!(r.output.entries()[0].s, rat(4, 5));
        assert_eq!(r.size_bound, int(26 * 26 - 1));
    }

    #[test]
    fn grid_point_with_zero_price_is_unchanged() {
        let m = Menu::new(2, vec![MenuEntry::new(vec![rat(1, 5), rat(2, 5)], zero()).unwrap()]).unwrap();
        let r = round_grid_k(&m, 25, None).unwrap();
        assert_eq!(r.output.entries(), m.entries());
    }

    #[test]
    fn non_square_grid_uses_lower_root() {
        let m = Menu::new(1, vec![MenuEntry::from_ints(&[1], 1)]).unwrap();
        let r = round_grid_k(&m, 2, None).unwrap();
        match r.parameters {
            Parameters::Grid { discount, exact_root, .. } => {
                assert!(!exact_root);
                assert!(&discount * &discount * int(2) < one());
                assert!(rational::to_f64(&discount) > 0.7071067811);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn certificate_on_a_small_instance() {
        let m = Menu::new(
            2,
            vec![MenuEntry::from_ints(&[1, 0], 2), MenuEntry::from_ints(&[0, 1], 3), MenuEntry::from_ints(&[1, 1], 6)],
        )
        .unwrap();
        let f = FiniteDistribution::from_ints(2, &[(&[3, 1], (1, 3)), (&[1, 4], (1, 3)), (&[5, 5], (1, 3))]).unwrap();
        let r = discretize_two_item(&m, &int(10), &rat(3, 10), Some(&f)).unwrap();
        let c = r.certificate.unwrap();
        assert!(c.holds, "{c:?}");
        assert!(Rational::from_integer(r.size.into()) <= r.size_bound);
    }
}
