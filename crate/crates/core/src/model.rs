//! Buyer types, distributions, menus, and the buyer's choice from a menu.
//!
//! A mechanism is represented by its menu (taxation principle). The
//! pay-nothing/get-nothing entry is always available and never stored. When
//! the buyer is indifferent between several entries the seller-favorable one
//! is chosen: highest payment first, then the lowest menu index.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::permutations;
use crate::error::{Error, Result};
use crate::rational::{self, dot, serde_rational, zero, Rational};

/// Default cap on the number of basic entries for exhaustive additive-menu search.
pub const DEFAULT_ADDITIVE_CAP: usize = 20;

/// A buyer type: one nonnegative value per item.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ValuationPoint(#[serde(with = "serde_rational::vec")] Vec<Rational>);

impl ValuationPoint {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| v.is_negative()) {
            return Err(Error::invalid(format!(
                "valuation coordinate {} is negative",
                rational::format(v)
            )));
        }
        Ok(ValuationPoint(values))
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| rational::int(v)).collect())
            .expect("nonnegative integers")
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Σ_i x_i, the value of the grand bundle.
    pub fn total(&self) -> Rational {
        self.0.iter().fold(zero(), |acc, v| acc + v)
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        ValuationPoint(self.0.iter().map(|v| v * factor).collect())
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        ValuationPoint(perm.iter().map(|&i| self.0[i].clone()).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atom {
    pub x: ValuationPoint,
    #[serde(with = "serde_rational")]
    pub p: Rational,
}

/// Finite-support distribution over buyer types. Probability not assigned to
/// any atom sits on the zero valuation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDistribution")]
pub struct FiniteDistribution {
    k: usize,
    atoms: Vec<Atom>,
}

#[derive(Deserialize)]
struct RawDistribution {
    k: usize,
    atoms: Vec<Atom>,
}

impl TryFrom<RawDistribution> for FiniteDistribution {
    type Error = Error;

    fn try_from(raw: RawDistribution) -> Result<Self> {
        for a in &raw.atoms {
            // re-validate coordinates that bypassed ValuationPoint::new
            ValuationPoint::new(a.x.values().to_vec())?;
        }
        FiniteDistribution::new(raw.k, raw.atoms)
    }
}

impl FiniteDistribution {
    /// Validates dimensions, positivity, total mass and distinctness.
    pub fn new(k: usize, atoms: Vec<Atom>) -> Result<Self> {
        let mut total = zero();
        let mut seen = HashMap::new();
        for (i, a) in atoms.iter().enumerate() {
            if a.x.dim() != k {
                return Err(Error::DimensionMismatch { expected: k, found: a.x.dim() });
            }
            if !a.p.is_positive() {
                return Err(Error::invalid(format!("atom {i} has non-positive probability")));
            }
            if seen.insert(&a.x, i).is_some() {
                return Err(Error::invalid(format!("atom {i} duplicates an earlier point")));
            }
            total += &a.p;
        }
        if total > Rational::one() {
            return Err(Error::invalid(format!(
                "probabilities sum to {} > 1",
                rational::format(&total)
            )));
        }
        Ok(FiniteDistribution { k, atoms })
    }

    /// Like [`FiniteDistribution::new`] but sums the mass of repeated points
    /// (keeping first-occurrence order) and drops zero-probability atoms.
    pub fn merged(k: usize, atoms: impl IntoIterator<Item = (ValuationPoint, Rational)>) -> Result<Self> {
        let mut order: Vec<ValuationPoint> = Vec::new();
        let mut mass: HashMap<ValuationPoint, Rational> = HashMap::new();
        for (x, p) in atoms {
            if p.is_negative() {
                return Err(Error::invalid("negative probability"));
            }
            match mass.get_mut(&x) {
                Some(m) => *m += p,
                None => {
                    order.push(x.clone());
                    mass.insert(x, p);
                }
            }
        }
        let atoms = order
            .into_iter()
            .filter_map(|x| {
                let p = mass.remove(&x)?;
                (!p.is_zero()).then_some(Atom { x, p })
            })
            .collect();
        Self::new(k, atoms)
    }

    /// Convenience constructor from integer coordinates and `(num, den)` masses.
    pub fn from_ints(k: usize, atoms: &[(&[i64], (i64, i64))]) -> Result<Self> {
        Self::new(
            k,
            atoms
                .iter()
                .map(|(x, (n, d))| Atom { x: ValuationPoint::from_ints(x), p: rational::rat(*n, *d) })
                .collect(),
        )
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> Rational {
        self.atoms.iter().fold(zero(), |acc, a| acc + &a.p)
    }

    /// Support of the marginal of item `i`, ascending, with the zero point
    /// included when it carries mass.
    pub fn marginal_support(&self, i: usize) -> Vec<Rational> {
        let mut vals: Vec<Rational> = self.atoms.iter().map(|a| a.x.values()[i].clone()).collect();
        vals.sort();
        vals.dedup();
        vals
    }

    pub fn is_symmetric(&self) -> bool {
        symmetrize(self) == self.sorted()
    }

    /// Same distribution with atoms ordered by point, for order-insensitive comparison.
    pub fn sorted(&self) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.sort_by(|a, b| a.x.cmp(&b.x));
        FiniteDistribution { k: self.k, atoms }
    }
}

/// One menu outcome: allocation probabilities and a price.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawEntry")]
pub struct MenuEntry {
    #[serde(with = "serde_rational::vec")]
    pub q: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub s: Rational,
}

#[derive(Deserialize)]
struct RawEntry {
    #[serde(with = "serde_rational::vec")]
    q: Vec<Rational>,
    #[serde(with = "serde_rational")]
    s: Rational,
}

impl TryFrom<RawEntry> for MenuEntry {
    type Error = Error;

    fn try_from(raw: RawEntry) -> Result<Self> {
        MenuEntry::new(raw.q, raw.s)
    }
}

impl MenuEntry {
    pub fn new(q: Vec<Rational>, s: Rational) -> Result<Self> {
        let one = Rational::one();
        if q.iter().any(|v| v.is_negative() || *v > one) {
            return Err(Error::invalid("allocation probability outside [0,1]"));
        }
        if s.is_negative() {
            return Err(Error::invalid("negative price"));
        }
        Ok(MenuEntry { q, s })
    }

    /// Entry from integer allocations and an integer price; panics on invalid input.
    pub fn from_ints(q: &[i64], s: i64) -> Self {
        Self::new(q.iter().map(|&v| rational::int(v)).collect(), rational::int(s))
            .expect("valid integer entry")
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    pub fn is_zero(&self) -> bool {
        self.s.is_zero() && self.q.iter().all(Zero::is_zero)
    }

    pub fn utility(&self, x: &ValuationPoint) -> Rational {
        dot(&self.q, x.values()) - &self.s
    }

    pub fn allocation_total(&self) -> Rational {
        self.q.iter().fold(zero(), |acc, v| acc + v)
    }
}

/// A finite menu; the free zero entry is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMenu")]
pub struct Menu {
    k: usize,
    entries: Vec<MenuEntry>,
}

#[derive(Deserialize)]
struct RawMenu {
    k: usize,
    entries: Vec<MenuEntry>,
}

impl TryFrom<RawMenu> for Menu {
    type Error = Error;

    fn try_from(raw: RawMenu) -> Result<Self> {
        Menu::new(raw.k, raw.entries)
    }
}

impl Menu {
    /// Strict constructor: rejects dimension errors, duplicate entries and
    /// an explicit zero entry.
    pub fn new(k: usize, entries: Vec<MenuEntry>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for e in &entries {
            if e.dim() != k {
                return Err(Error::DimensionMismatch { expected: k, found: e.dim() });
            }
            if e.is_zero() {
                return Err(Error::invalid("the zero entry is implicit and may not be listed"));
            }
            if !seen.insert(e) {
                return Err(Error::invalid("duplicate menu entry"));
            }
        }
        Ok(Menu { k, entries })
    }

    /// Drops zero entries and later duplicates, keeping first-occurrence order.
    pub fn dedup(k: usize, entries: impl IntoIterator<Item = MenuEntry>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let kept: Vec<MenuEntry> = entries
            .into_iter()
            .filter(|e| !e.is_zero() && seen.insert(e.clone()))
            .collect();
        Self::new(k, kept)
    }

    pub fn empty(k: usize) -> Self {
        Menu { k, entries: Vec::new() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[MenuEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Canonical order: ascending price, then lexicographic allocation.
    pub fn canonicalized(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.sort_by(|a, b| a.s.cmp(&b.s).then_with(|| a.q.cmp(&b.q)));
        Menu { k: self.k, entries }
    }

    /// True when every entry allocates the grand bundle deterministically.
    pub fn is_bundle_menu(&self) -> bool {
        self.entries.iter().all(|e| e.q.iter().all(One::is_one))
    }

    pub fn is_deterministic(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.q.iter().all(|v| v.is_zero() || v.is_one()))
    }

    /// True when no entry gives more than one unit of total allocation, so an
    /// additive and a unit-demand buyer evaluate it identically.
    pub fn is_unit_demand(&self) -> bool {
        self.entries.iter().all(|e| e.allocation_total() <= Rational::one())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChoiceResult {
    /// `None` for the implicit zero entry.
    pub entry_index: Option<usize>,
    #[serde(with = "serde_rational")]
    pub payment: Rational,
    #[serde(with = "serde_rational")]
    pub utility: Rational,
    #[serde(with = "serde_rational::vec")]
    pub allocation: Vec<Rational>,
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// The buyer's utility-maximizing entry, ties broken toward higher payment
/// and then lower index.
pub fn evaluate_choice(menu: &Menu, x: &ValuationPoint) -> Result<ChoiceResult> {
    check_dim(menu.k(), x.dim())?;
    let mut best: Option<usize> = None;
    let mut best_u = zero();
    let mut best_s = zero();
    for (i, e) in menu.entries().iter().enumerate() {
        let u = e.utility(x);
        if u > best_u || (u == best_u && e.s > best_s) {
            best = Some(i);
            best_u = u;
            best_s = e.s.clone();
        }
    }
    let allocation = match best {
        Some(i) => menu.entries()[i].q.clone(),
        None => vec![zero(); menu.k()],
    };
    Ok(ChoiceResult { entry_index: best, payment: best_s, utility: best_u, allocation })
}

/// `E[s(X)]`: expected payment when each atom picks from `menu`.
pub fn expected_revenue(menu: &Menu, dist: &FiniteDistribution) -> Result<Rational> {
    check_dim(menu.k(), dist.k())?;
    let mut total = zero();
    for a in dist.atoms() {
        let choice = evaluate_choice(menu, &a.x)?;
        total += &a.p * choice.payment;
    }
    Ok(total)
}

/// Expected revenue for a unit-demand buyer. Only menus whose entries are
/// unit-demand lotteries (Σ q_i ≤ 1) are meaningful here; on those the
/// unit-demand buyer's utility coincides with the additive one.
pub fn expected_revenue_unit_demand(menu: &Menu, dist: &FiniteDistribution) -> Result<Rational> {
    if !menu.is_unit_demand() {
        return Err(Error::invalid("menu contains an entry with total allocation above 1"));
    }
    expected_revenue(menu, dist)
}

/// A menu of basic entries from which the buyer may buy any combination whose
/// summed allocation stays in `[0,1]^k`, paying the summed price.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveMenu {
    pub k: usize,
    pub basic_entries: Vec<MenuEntry>,
}

impl AdditiveMenu {
    pub fn new(k: usize, basic_entries: Vec<MenuEntry>) -> Result<Self> {
        for e in &basic_entries {
            check_dim(k, e.dim())?;
        }
        Ok(AdditiveMenu { k, basic_entries })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdditiveChoice {
    pub subset: Vec<usize>,
    #[serde(with = "serde_rational")]
    pub payment: Rational,
    #[serde(with = "serde_rational")]
    pub utility: Rational,
}

/// Exhaustive search over feasible subsets of basic entries. Ties go to the
/// larger total payment, then to the lexicographically smallest index set.
pub fn evaluate_additive_choice(
    amenu: &AdditiveMenu,
    x: &ValuationPoint,
    cap: usize,
) -> Result<AdditiveChoice> {
    check_dim(amenu.k, x.dim())?;
    let n = amenu.basic_entries.len();
    if n > cap {
        return Err(Error::BudgetExceeded {
            what: "additive menu subset search".into(),
            required: format!("2^{n} subsets"),
            budget: 1u64 << cap.min(63),
        });
    }
    let one = Rational::one();
    let utilities: Vec<Rational> = amenu.basic_entries.iter().map(|e| e.utility(x)).collect();
    let mut best = AdditiveChoice { subset: Vec::new(), payment: zero(), utility: zero() };
    for mask in 1u64..(1u64 << n) {
        let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let feasible = (0..amenu.k).all(|c| {
            members
                .iter()
                .fold(zero(), |acc, &i| acc + &amenu.basic_entries[i].q[c])
                <= one
        });
        if !feasible {
            continue;
        }
        let u = members.iter().fold(zero(), |acc, &i| acc + &utilities[i]);
        let s = members.iter().fold(zero(), |acc, &i| acc + &amenu.basic_entries[i].s);
        let better = u > best.utility
            || (u == best.utility
                && (s > best.payment || (s == best.payment && members < best.subset)));
        if better {
            best = AdditiveChoice { subset: members, payment: s, utility: u };
        }
    }
    Ok(best)
}

pub fn expected_additive_revenue(
    amenu: &AdditiveMenu,
    dist: &FiniteDistribution,
    cap: usize,
) -> Result<Rational> {
    check_dim(amenu.k, dist.k())?;
    let mut total = zero();
    for a in dist.atoms() {
        total += &a.p * evaluate_additive_choice(amenu, &a.x, cap)?.payment;
    }
    Ok(total)
}

fn check_scale(lambda: &Rational) -> Result<()> {
    if lambda.is_positive() {
        Ok(())
    } else {
        Err(Error::invalid("scale factor must be positive"))
    }
}

/// Multiplies every valuation coordinate by `lambda > 0`.
pub fn scale_distribution(dist: &FiniteDistribution, lambda: &Rational) -> Result<FiniteDistribution> {
    check_scale(lambda)?;
    let atoms = dist
        .atoms()
        .iter()
        .map(|a| Atom { x: a.x.scaled(lambda), p: a.p.clone() })
        .collect();
    FiniteDistribution::new(dist.k(), atoms)
}

/// Multiplies every price by `lambda > 0`.
pub fn scale_menu(menu: &Menu, lambda: &Rational) -> Result<Menu> {
    check_scale(lambda)?;
    let entries = menu
        .entries()
        .iter()
        .map(|e| MenuEntry { q: e.q.clone(), s: &e.s * lambda })
        .collect();
    Menu::new(menu.k(), entries)
}

/// Averages the distribution over all coordinate permutations, merging
/// coinciding points.
pub fn symmetrize(dist: &FiniteDistribution) -> FiniteDistribution {
    let perms = permutations(dist.k());
    let weight = Rational::from_integer((perms.len() as i64).into());
    let mut pieces = Vec::with_capacity(dist.len() * perms.len());
    for a in dist.atoms() {
        for p in &perms {
            pieces.push((a.x.permuted(p), &a.p / &weight));
        }
    }
    FiniteDistribution::merged(dist.k(), pieces)
        .expect("permuting a valid distribution keeps it valid")
        .sorted()
}

/// Pairs of atoms whose chosen allocations violate
/// `(x − x')·(q(x) − q(x')) ≥ 0`.
pub fn weak_monotonicity_violations(
    menu: &Menu,
    dist: &FiniteDistribution,
) -> Result<Vec<(usize, usize)>> {
    let choices: Vec<ChoiceResult> = dist
        .atoms()
        .iter()
        .map(|a| evaluate_choice(menu, &a.x))
        .collect::<Result<_>>()?;
    let mut bad = Vec::new();
    for i in 0..dist.len() {
        for j in i + 1..dist.len() {
            let xi = dist.atoms()[i].x.values();
            let xj = dist.atoms()[j].x.values();
            let ip = (0..dist.k()).fold(zero(), |acc, c| {
                acc + (&xi[c] - &xj[c]) * (&choices[i].allocation[c] - &choices[j].allocation[c])
            });
            if ip.is_negative() {
                bad.push((i, j));
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn menu(k: usize, entries: &[(&[i64], i64)]) -> Menu {
        Menu::new(k, entries.iter().map(|(q, s)| MenuEntry::from_ints(q, *s)).collect()).unwrap()
    }

    fn symmetric3() -> FiniteDistribution {
        FiniteDistribution::from_ints(2, &[(&[1, 0], (1, 4)), (&[0, 1], (1, 4)), (&[1, 1], (1, 2))])
            .unwrap()
    }

    #[test]
    fn tie_with_outside_option_goes_to_seller() {
        let m = menu(2, &[(&[1, 1], 1)]);
        let c = evaluate_choice(&m, &ValuationPoint::from_ints(&[1, 0])).unwrap();
        assert_eq!(c.entry_index, Some(0));
        assert_eq!(c.payment, int(1));
        assert_eq!(c.utility, int(0));
    }

    #[test]
    fn three_way_tie_picks_highest_price() {
        let m = menu(2, &[(&[1, 0], 1), (&[0, 1], 2), (&[1, 1], 4)]);
        let c = evaluate_choice(&m, &ValuationPoint::from_ints(&[2, 3])).unwrap();
        assert_eq!(c.entry_index, Some(2));
        assert_eq!(c.payment, int(4));
        assert_eq!(c.utility, int(1));
        let c = evaluate_choice(&m, &ValuationPoint::from_ints(&[1, 0])).unwrap();
        assert_eq!(c.entry_index, Some(0));
        assert_eq!(c.payment, int(1));
    }

    #[test]
    fn equal_payment_ties_go_to_lower_index() {
        let m = menu(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let c = evaluate_choice(&m, &ValuationPoint::from_ints(&[2, 2])).unwrap();
        assert_eq!(c.entry_index, Some(0));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let m = menu(2, &[(&[1, 0], 1)]);
        let err = evaluate_choice(&m, &ValuationPoint::from_ints(&[1])).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 1 });
    }

    #[test]
    fn expected_revenue_examples() {
        let m = menu(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[1, 1], 2)]);
        assert_eq!(expected_revenue(&m, &symmetric3()).unwrap(), rat(3, 2));
        assert_eq!(expected_revenue(&Menu::empty(2), &symmetric3()).unwrap(), int(0));

        let m = menu(2, &[(&[1, 0], 2), (&[0, 1], 2), (&[1, 1], 4)]);
        let f = FiniteDistribution::from_ints(2, &[(&[0, 2], (1, 2)), (&[2, 2], (1, 2))]).unwrap();
        assert_eq!(expected_revenue(&m, &f).unwrap(), int(3));
    }

    #[test]
    fn additive_choice_examples() {
        let sep = AdditiveMenu::new(2, vec![MenuEntry::from_ints(&[1, 0], 2), MenuEntry::from_ints(&[0, 1], 3)])
            .unwrap();
        let c = evaluate_additive_choice(&sep, &ValuationPoint::from_ints(&[5, 3]), 20).unwrap();
        assert_eq!(c.subset, vec![0, 1]);
        assert_eq!(c.payment, int(5));

        let dup = AdditiveMenu::new(2, vec![MenuEntry::from_ints(&[1, 0], 1), MenuEntry::from_ints(&[1, 0], 1)])
            .unwrap();
        let c = evaluate_additive_choice(&dup, &ValuationPoint::from_ints(&[3, 0]), 20).unwrap();
        assert_eq!(c.subset, vec![0]);
        assert_eq!(c.payment, int(1));

        let mixed = AdditiveMenu::new(2, vec![MenuEntry::from_ints(&[1, 1], 2), MenuEntry::from_ints(&[1, 0], 1)])
            .unwrap();
        let c = evaluate_additive_choice(&mixed, &ValuationPoint::from_ints(&[3, 3]), 20).unwrap();
        assert_eq!(c.subset, vec![0]);
        assert_eq!(c.payment, int(2));
    }

    #[test]
    fn additive_cap_refuses() {
        let entries = (0..5).map(|i| MenuEntry::from_ints(&[0, 0], i + 1)).collect();
        let am = AdditiveMenu::new(2, entries).unwrap();
        let err = evaluate_additive_choice(&am, &ValuationPoint::from_ints(&[1, 1]), 4).unwrap_err();
        assert!(err.is_budget_refusal());
    }

    #[test]
    fn scaling() {
        let f = FiniteDistribution::from_ints(2, &[(&[1, 1], (1, 1))]).unwrap();
        let g = scale_distribution(&f, &int(12)).unwrap();
        assert_eq!(g.atoms()[0].x, ValuationPoint::from_ints(&[12, 12]));
        assert_eq!(scale_distribution(&f, &int(1)).unwrap(), f);
        assert!(scale_distribution(&f, &int(0)).is_err());
        assert!(scale_menu(&Menu::empty(2), &int(-1)).is_err());

        let m = menu(2, &[(&[1, 1], 2)]);
        let base = expected_revenue(&m, &f).unwrap();
        let scaled = expected_revenue(&scale_menu(&m, &int(3)).unwrap(), &scale_distribution(&f, &int(3)).unwrap())
            .unwrap();
        assert_eq!(base, int(2));
        assert_eq!(scaled, int(6));
    }

    #[test]
    fn symmetrize_examples() {
        let f = FiniteDistribution::from_ints(2, &[(&[1, 0], (1, 1))]).unwrap();
        let s = symmetrize(&f);
        let expected =
            FiniteDistribution::from_ints(2, &[(&[0, 1], (1, 2)), (&[1, 0], (1, 2))]).unwrap();
        assert_eq!(s, expected);
        assert_eq!(symmetrize(&symmetric3()), symmetric3().sorted());
        assert!(symmetric3().is_symmetric());
        assert!(!f.is_symmetric());
    }

    #[test]
    fn distribution_validation() {
        assert!(FiniteDistribution::from_ints(1, &[(&[1], (1, 2)), (&[1], (1, 4))]).is_err());
        assert!(FiniteDistribution::from_ints(1, &[(&[1], (3, 4)), (&[2], (1, 2))]).is_err());
        assert!(FiniteDistribution::from_ints(1, &[(&[1], (0, 1))]).is_err());
        assert!(FiniteDistribution::from_ints(2, &[(&[1], (1, 2))]).is_err());
        assert!(ValuationPoint::new(vec![int(-1)]).is_err());
        let merged = FiniteDistribution::merged(
            1,
            vec![
                (ValuationPoint::from_ints(&[1]), rat(1, 4)),
                (ValuationPoint::from_ints(&[1]), rat(1, 4)),
            ],
        )
        .unwrap();
        assert_eq!(merged.atoms()[0].p, rat(1, 2));
    }

    #[test]
    fn menu_validation() {
        assert!(MenuEntry::new(vec![rat(3, 2)], int(0)).is_err());
        assert!(MenuEntry::new(vec![int(1)], int(-1)).is_err());
        assert!(Menu::new(1, vec![MenuEntry::from_ints(&[0], 0)]).is_err());
        assert!(Menu::new(1, vec![MenuEntry::from_ints(&[1], 1), MenuEntry::from_ints(&[1], 1)]).is_err());
        let d = Menu::dedup(1, vec![MenuEntry::from_ints(&[1], 1), MenuEntry::from_ints(&[1], 1)]).unwrap();
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn json_shape() {
        let f = FiniteDistribution::from_ints(2, &[(&[1, 0], (1, 4))]).unwrap();
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(text, r#"{"k":2,"atoms":[{"x":["1/1","0/1"],"p":"1/4"}]}"#);
        let m = menu(2, &[(&[1, 1], 4)]);
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"{"k":2,"entries":[{"q":["1/1","1/1"],"s":"4/1"}]}"#);
        let back: Menu = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        let bad = r#"{"k":1,"atoms":[{"x":["-1/1"],"p":"1/2"}]}"#;
        assert!(serde_json::from_str::<FiniteDistribution>(bad).is_err());
    }
}
