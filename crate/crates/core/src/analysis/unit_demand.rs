//! Turning additive-buyer menus into menus a unit-demand buyer can use.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Menu, MenuEntry};
use crate::rational::{int, one, serde_rational, zero, Rational};

/// Every entry `(q, s)` becomes `(q/k, s/k)`. The buyer's ranking of entries is
/// unchanged, so a unit-demand buyer pays exactly `1/k` of what an additive
/// buyer paid for the original menu.
pub fn unit_demand_scale(menu: &Menu) -> Result<Menu> {
    let k = int(menu.k() as i64);
    let entries = menu
        .entries()
        .iter()
        .map(|e| MenuEntry::new(e.q.iter().map(|v| v / &k).collect(), &e.s / &k))
        .collect::<Result<Vec<_>>>()?;
    Menu::new(menu.k(), entries)
}

/// A lottery over bundles sold at one price: `weights[j]` is the probability
/// of receiving exactly the item set `subsets[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleLottery {
    pub k: usize,
    pub subsets: Vec<Vec<usize>>,
    #[serde(with = "serde_rational::vec")]
    pub weights: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub price: Rational,
}

impl BundleLottery {
    pub fn validate(&self) -> Result<()> {
        if self.subsets.len() != self.weights.len() {
            return Err(Error::DimensionMismatch { expected: self.subsets.len(), found: self.weights.len() });
        }
        for s in &self.subsets {
            if s.is_empty() {
                return Err(Error::invalid("lottery outcome with no items"));
            }
            if let Some(&i) = s.iter().find(|&&i| i >= self.k) {
                return Err(Error::IndexOutOfRange { index: i, len: self.k });
            }
        }
        if self.weights.iter().any(Signed::is_negative) || self.price.is_negative() {
            return Err(Error::invalid("negative weight or price"));
        }
        if self.weights.iter().fold(zero(), |a, w| a + w) > one() {
            return Err(Error::invalid("lottery weights exceed 1"));
        }
        Ok(())
    }
}

/// Rewrites a bundle lottery as `k` single-item lotteries at the same price.
/// Output `i` hands each multi-item outcome to item `i` when it contains `i`,
/// and to the outcome's lowest item otherwise; each output therefore has
/// `Σ q ≤ 1`, and the bundle mass reaches every item of the bundle in one of them.
pub fn split_bundle_lottery(lottery: &BundleLottery) -> Result<Vec<MenuEntry>> {
    lottery.validate()?;
    let mut out: Vec<MenuEntry> = Vec::with_capacity(lottery.k);
    for i in 0..lottery.k {
        let mut q = vec![zero(); lottery.k];
        for (s, w) in lottery.subsets.iter().zip(&lottery.weights) {
            let target = if s.contains(&i) { i } else { *s.iter().min().expect("nonempty") };
            q[target] += w;
        }
        let e = MenuEntry::new(q, lottery.price.clone())?;
        if !e.q.iter().all(Zero::is_zero) && !out.contains(&e) {
            out.push(e);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn scale_two_items() {
        let m = Menu::new(2, vec![MenuEntry::from_ints(&[1, 1], 4)]).unwrap();
        let s = unit_demand_scale(&m).unwrap();
        assert_eq!(s.entries()[0], MenuEntry::new(vec![rat(1, 2), rat(1, 2)], int(2)).unwrap());
        let one_item = Menu::new(1, vec![MenuEntry::from_ints(&[1], 3)]).unwrap();
        assert_eq!(unit_demand_scale(&one_item).unwrap(), one_item);
    }

    #[test]
    fn split_worked_lottery() {
        let l = BundleLottery {
            k: 2,
            subsets: vec![vec![0], vec![1], vec![0, 1]],
            weights: vec![rat(2, 9), rat(3, 9), rat(4, 9)],
            price: int(5),
        };
        let out = split_bundle_lottery(&l).unwrap();
        assert_eq!(
            out,
            vec![
                MenuEntry::new(vec![rat(6, 9), rat(3, 9)], int(5)).unwrap(),
                MenuEntry::new(vec![rat(2, 9), rat(7, 9)], int(5)).unwrap(),
            ]
        );
        assert!(out.iter().all(|e| e.allocation_total() <= one()));
    }

    #[test]
    fn split_single_item_is_identity() {
        let l = BundleLottery { k: 1, subsets: vec![vec![0]], weights: vec![rat(1, 2)], price: int(1) };
        assert_eq!(split_bundle_lottery(&l).unwrap(), vec![MenuEntry::new(vec![rat(1, 2)], int(1)).unwrap()]);
    }

    #[test]
    fn split_rejects_bad_lotteries() {
        let over = BundleLottery { k: 2, subsets: vec![vec![0], vec![1]], weights: vec![rat(2, 3), rat(2, 3)], price: int(1) };
        assert!(split_bundle_lottery(&over).is_err());
        let empty = BundleLottery { k: 2, subsets: vec![vec![]], weights: vec![rat(1, 3)], price: int(1) };
        assert!(split_bundle_lottery(&empty).is_err());
    }
}
