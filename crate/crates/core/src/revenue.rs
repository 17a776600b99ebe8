//! Named revenue benchmarks of a finite distribution.
//!
//! * `BREV`, `SREV`: posted-price search over support points (an optimal
//!   posted price for a finite-support distribution lies in its support).
//! * `REV`, `REV_UD`: one LP over all IC/IR mechanisms.
//! * `DREV`, `DREV_UD`, `MREV(m)`: search over assignments of atoms to menu
//!   entries, each leaf solved as a price (or price-and-allocation) LP.
//!   The default strategy is depth-first branch and bound whose node bound is
//!   the LP with still-unassigned atoms given their own free entries; the
//!   exhaustive strategy enumerates every leaf and serves as an oracle.
//!
//! Searches that would exceed their budget are refused, never approximated.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::combinatorics::{indicator, nonempty_subsets};
use crate::error::{Error, Result};
use crate::model::{expected_revenue, FiniteDistribution, Menu, MenuEntry};
use crate::rational::{self, dot, serde_rational, zero, Extended, Rational};
use crate::solver::formulations::{solve_group_lp, GroupSpec};
use crate::solver::rev_lp;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantity {
    Rev,
    DRev,
    SRev,
    BRev,
    MRev(usize),
    RevUd,
    DRevUd,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Rev => f.write_str("REV"),
            Quantity::DRev => f.write_str("DREV"),
            Quantity::SRev => f.write_str("SREV"),
            Quantity::BRev => f.write_str("BREV"),
            Quantity::MRev(m) => write!(f, "MREV({m})"),
            Quantity::RevUd => f.write_str("REV_UD"),
            Quantity::DRevUd => f.write_str("DREV_UD"),
        }
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        Ok(match t.as_str() {
            "REV" => Quantity::Rev,
            "DREV" => Quantity::DRev,
            "SREV" => Quantity::SRev,
            "BREV" => Quantity::BRev,
            "REV_UD" => Quantity::RevUd,
            "DREV_UD" => Quantity::DRevUd,
            _ => {
                let inner = t
                    .strip_prefix("MREV(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("unknown revenue quantity {s:?}")))?;
                let m: usize = inner
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad menu size in {s:?}")))?;
                if m == 0 {
                    return Err(Error::invalid("menu size must be positive"));
                }
                Quantity::MRev(m)
            }
        })
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    Lp,
    Enumeration,
    PriceSearch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RevenueReport {
    pub quantity: Quantity,
    #[serde(with = "serde_rational")]
    pub value: Rational,
    pub witness: Menu,
    /// Posted prices (per item, or the bundle price) when the witness is a price vector.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prices: Option<Vec<Extended>>,
    pub method: Method,
    /// Number of LPs solved.
    pub lp_solves: u64,
}

impl RevenueReport {
    /// Builds a report after checking that the witness earns exactly `value`.
    fn checked(
        dist: &FiniteDistribution,
        quantity: Quantity,
        value: Rational,
        witness: Menu,
        prices: Option<Vec<Extended>>,
        method: Method,
        lp_solves: u64,
    ) -> Result<Self> {
        let earned = expected_revenue(&witness, dist)?;
        if earned != value {
            return Err(Error::Internal(format!(
                "{quantity} witness earns {} but value is {}",
                rational::format(&earned),
                rational::format(&value)
            )));
        }
        Ok(RevenueReport { quantity, value, witness, prices, method, lp_solves })
    }
}

/// Enumeration strategy for the assignment searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    BranchAndBound,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub strategy: Strategy,
    /// Branch and bound: maximum LP solves. Exhaustive: maximum leaves.
    pub budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { strategy: Strategy::BranchAndBound, budget: DEFAULT_BUDGET }
    }
}

impl SearchConfig {
    pub fn exhaustive(budget: u64) -> Self {
        SearchConfig { strategy: Strategy::Exhaustive, budget }
    }
}

fn nonempty(dist: &FiniteDistribution) -> Result<()> {
    if dist.is_empty() {
        Err(Error::EmptyDistribution)
    } else {
        Ok(())
    }
}

/// Best single posted price `p` maximizing `p · P[value ≥ p]` over the given
/// per-atom values. Ties go to the lowest price.
fn best_posted_price(values: &[(Rational, Rational)]) -> (Rational, Rational) {
    let mut sorted: Vec<&(Rational, Rational)> = values.iter().collect();
    sorted.sort_by(|a, b| b.0.cmp(&a.0));
    let mut best = (zero(), zero());
    let mut mass_above = zero();
    let mut i = 0;
    while i < sorted.len() {
        let v = sorted[i].0.clone();
        while i < sorted.len() && sorted[i].0 == v {
            mass_above += &sorted[i].1;
            i += 1;
        }
        let revenue = &v * &mass_above;
        if revenue >= best.1 && !v.is_zero() {
            best = (v, revenue);
        }
    }
    best
}

/// Revenue of selling the grand bundle at the best posted price.
pub fn brev(dist: &FiniteDistribution) -> Result<RevenueReport> {
    nonempty(dist)?;
    let totals: Vec<(Rational, Rational)> = dist.atoms().iter().map(|a| (a.x.total(), a.p.clone())).collect();
    let (price, value) = best_posted_price(&totals);
    let witness = if value.is_zero() {
        Menu::empty(dist.k())
    } else {
        Menu::new(dist.k(), vec![MenuEntry { q: vec![rational::one(); dist.k()], s: price.clone() }])?
    };
    RevenueReport::checked(dist, Quantity::BRev, value, witness, Some(vec![Extended::Finite(price)]), Method::PriceSearch, 0)
}

/// Menu of all bundles priced additively from per-item prices.
pub fn separate_price_menu(prices: &[Rational]) -> Menu {
    let k = prices.len();
    let entries: Vec<MenuEntry> = nonempty_subsets(k)
        .into_iter()
        .map(|set| {
            let s = set.iter().fold(zero(), |acc, &i| acc + &prices[i]);
            MenuEntry { q: indicator(&set, k), s }
        })
        .collect();
    Menu::dedup(k, entries).expect("bundles are distinct")
}

/// Revenue of selling each item separately at its best posted price.
pub fn srev(dist: &FiniteDistribution) -> Result<RevenueReport> {
    nonempty(dist)?;
    let mut prices = Vec::with_capacity(dist.k());
    let mut value = zero();
    for i in 0..dist.k() {
        let marg: Vec<(Rational, Rational)> =
            dist.atoms().iter().map(|a| (a.x.values()[i].clone(), a.p.clone())).collect();
        let (p, r) = best_posted_price(&marg);
        value += r;
        prices.push(p);
    }
    let witness = separate_price_menu(&prices);
    RevenueReport::checked(
        dist,
        Quantity::SRev,
        value,
        witness,
        Some(prices.into_iter().map(Extended::Finite).collect()),
        Method::PriceSearch,
        0,
    )
}

/// Optimal revenue over all mechanisms.
pub fn rev(dist: &FiniteDistribution) -> Result<RevenueReport> {
    let r = rev_lp(dist, false)?;
    RevenueReport::checked(dist, Quantity::Rev, r.value, r.menu, None, Method::Lp, 1)
}

/// Optimal revenue from a unit-demand buyer (lotteries with `Σ q_i ≤ 1`).
pub fn rev_ud(dist: &FiniteDistribution) -> Result<RevenueReport> {
    let r = rev_lp(dist, true)?;
    RevenueReport::checked(dist, Quantity::RevUd, r.value, r.menu, None, Method::Lp, 1)
}

/// Optimal revenue over deterministic mechanisms.
pub fn drev(dist: &FiniteDistribution, cfg: SearchConfig) -> Result<RevenueReport> {
    nonempty(dist)?;
    let k = dist.k();
    let candidates: Vec<Vec<Rational>> = nonempty_subsets(k).iter().map(|s| indicator(s, k)).collect();
    let mut seeds = vec![brev(dist)?, srev(dist)?];
    seeds.retain(|r| r.witness.is_deterministic());
    let (value, entries, solves) = deterministic_search(dist, &candidates, false, cfg, seeds)?;
    let witness = Menu::dedup(k, entries)?.canonicalized();
    RevenueReport::checked(dist, Quantity::DRev, value, witness, None, Method::Enumeration, solves)
}

/// Optimal revenue from a unit-demand buyer facing item prices.
pub fn drev_ud(dist: &FiniteDistribution, cfg: SearchConfig) -> Result<RevenueReport> {
    nonempty(dist)?;
    let k = dist.k();
    let candidates: Vec<Vec<Rational>> = (0..k).map(|i| indicator(&[i], k)).collect();
    let (value, entries, solves) = deterministic_search(dist, &candidates, true, cfg, Vec::new())?;
    let mut prices = vec![Extended::Infinite; k];
    for e in &entries {
        let i = e.q.iter().position(|v| v.is_one()).expect("unit vector");
        prices[i] = Extended::Finite(e.s.clone());
    }
    let witness = Menu::dedup(k, entries)?.canonicalized();
    RevenueReport::checked(dist, Quantity::DRevUd, value, witness, Some(prices), Method::Enumeration, solves)
}

/// Optimal revenue over mechanisms with at most `m` menu entries.
pub fn m_rev(dist: &FiniteDistribution, m: usize, cfg: SearchConfig) -> Result<RevenueReport> {
    Ok(m_rev_profile(dist, m, cfg)?.pop().expect("m >= 1"))
}

/// `[1]-Rev, …, [m_max]-Rev`, computed in one pass (exhaustive) or as a
/// sequence of warm-started searches (branch and bound).
pub fn m_rev_profile(dist: &FiniteDistribution, m_max: usize, cfg: SearchConfig) -> Result<Vec<RevenueReport>> {
    nonempty(dist)?;
    if m_max == 0 {
        return Err(Error::invalid("menu size must be positive"));
    }
    let k = dist.k();
    let report = |m: usize, value: Rational, entries: Vec<MenuEntry>, solves: u64| {
        let witness = Menu::dedup(k, entries)?.canonicalized();
        RevenueReport::checked(dist, Quantity::MRev(m), value, witness, None, Method::Enumeration, solves)
    };
    match cfg.strategy {
        Strategy::Exhaustive => {
            let leaves = partition_leaf_count(dist.len(), m_max);
            if leaves > cfg.budget as f64 {
                return Err(refusal("menu-size partition enumeration", leaves, cfg.budget));
            }
            let mut search = Search::new(dist, Kind::MenuSize { m: m_max }, cfg);
            search.per_block_best = vec![None; m_max + 1];
            search.run()?;
            let mut out = Vec::with_capacity(m_max);
            let mut best: (Rational, Vec<MenuEntry>) = (zero(), Vec::new());
            for m in 1..=m_max {
                if let Some((v, e)) = &search.per_block_best[m] {
                    if *v > best.0 {
                        best = (v.clone(), e.clone());
                    }
                }
                out.push(report(m, best.0.clone(), best.1.clone(), search.lp_solves)?);
            }
            Ok(out)
        }
        Strategy::BranchAndBound => {
            let mut out: Vec<RevenueReport> = Vec::with_capacity(m_max);
            let mut total_solves = 0;
            for m in 1..=m_max {
                let mut search = Search::new(dist, Kind::MenuSize { m }, cfg);
                // [m-1]-Rev is attainable with m entries, and a single bundle entry with one.
                let seed = match out.last() {
                    Some(prev) => prev.clone(),
                    None => brev(dist)?,
                };
                search.best = Some((seed.value.clone(), seed.witness.entries().to_vec()));
                search.run()?;
                total_solves += search.lp_solves;
                let (v, e) = search.best.take().expect("seeded");
                out.push(report(m, v, e, total_solves)?);
            }
            Ok(out)
        }
    }
}

fn refusal(what: &str, required: f64, budget: u64) -> Error {
    Error::BudgetExceeded { what: what.into(), required: format!("{required:.3e} leaves"), budget }
}

/// Number of labelings of `n` atoms into a NONE class plus at most `m`
/// unlabeled nonempty groups.
pub fn partition_leaf_count(n: usize, m: usize) -> f64 {
    // Stirling numbers of the second kind S(j, b) for j ≤ n.
    let mut s = vec![vec![0f64; n + 1]; n + 1];
    s[0][0] = 1.0;
    for j in 1..=n {
        for b in 1..=j {
            s[j][b] = b as f64 * s[j - 1][b] + s[j - 1][b - 1];
        }
    }
    let mut binom = vec![1f64; n + 1];
    for j in 1..=n {
        binom[j] = binom[j - 1] * (n + 1 - j) as f64 / j as f64;
    }
    (0..=n)
        .map(|none| {
            let rest = n - none;
            binom[none] * (0..=rest.min(m)).map(|b| s[rest][b]).sum::<f64>()
        })
        .sum()
}

fn deterministic_search(
    dist: &FiniteDistribution,
    candidates: &[Vec<Rational>],
    unit_demand: bool,
    cfg: SearchConfig,
    seeds: Vec<RevenueReport>,
) -> Result<(Rational, Vec<MenuEntry>, u64)> {
    if cfg.strategy == Strategy::Exhaustive {
        let leaves = (candidates.len() as f64 + 1.0).powi(dist.len() as i32);
        if leaves > cfg.budget as f64 {
            return Err(refusal("deterministic assignment enumeration", leaves, cfg.budget));
        }
    }
    let mut search = Search::new(dist, Kind::Deterministic { candidates: candidates.to_vec(), unit_demand }, cfg);
    for seed in seeds {
        if search.best.as_ref().is_none_or(|(v, _)| seed.value > *v) {
            search.best = Some((seed.value, seed.witness.entries().to_vec()));
        }
    }
    search.run()?;
    let (v, e) = search.best.unwrap_or((zero(), Vec::new()));
    Ok((v, e, search.lp_solves))
}

enum Kind {
    Deterministic { candidates: Vec<Vec<Rational>>, unit_demand: bool },
    MenuSize { m: usize },
}

/// Depth-first search over labelings of atoms. Label `None` is the zero
/// entry; `Some(g)` is a candidate index (deterministic) or a group index
/// in first-use order (menu size).
struct Search<'a> {
    dist: &'a FiniteDistribution,
    kind: Kind,
    cfg: SearchConfig,
    order: Vec<usize>,
    labels: Vec<Option<usize>>,
    best: Option<(Rational, Vec<MenuEntry>)>,
    /// Exhaustive menu-size search: best leaf per number of groups used.
    per_block_best: Vec<Option<(Rational, Vec<MenuEntry>)>>,
    lp_solves: u64,
}

impl<'a> Search<'a> {
    fn new(dist: &'a FiniteDistribution, kind: Kind, cfg: SearchConfig) -> Self {
        let mut order: Vec<usize> = (0..dist.len()).collect();
        // Heavy atoms first: their labels move the bound the most.
        let weight = |i: usize| &dist.atoms()[i].p * dist.atoms()[i].x.total();
        order.sort_by(|&a, &b| weight(b).cmp(&weight(a)));
        Search {
            dist,
            kind,
            cfg,
            order,
            labels: Vec::with_capacity(dist.len()),
            best: None,
            per_block_best: Vec::new(),
            lp_solves: 0,
        }
    }

    fn run(&mut self) -> Result<()> {
        self.descend()
    }

    fn groups_used(&self) -> usize {
        self.labels.iter().flatten().map(|g| g + 1).max().unwrap_or(0)
    }

    /// Solves the node LP: assigned atoms keep their labels, unassigned atoms
    /// (when `relax`) each get a private free entry.
    fn node_lp(&mut self) -> Result<Option<(Rational, Vec<MenuEntry>)>> {
        self.lp_solves += 1;
        if self.cfg.strategy == Strategy::BranchAndBound && self.lp_solves > self.cfg.budget {
            return Err(Error::BudgetExceeded {
                what: "branch-and-bound LP solves".into(),
                required: format!("more than {}", self.cfg.budget),
                budget: self.cfg.budget,
            });
        }
        let n = self.dist.len();
        let mut groups: Vec<GroupSpec> = Vec::new();
        let mut assignment: Vec<Option<usize>> = vec![None; n];
        let unit_demand;
        let real_groups;
        match &self.kind {
            Kind::Deterministic { candidates, unit_demand: ud } => {
                unit_demand = *ud;
                let mut used: Vec<usize> = self.labels.iter().flatten().copied().collect();
                used.sort_unstable();
                used.dedup();
                for &c in &used {
                    groups.push(GroupSpec::Fixed(candidates[c].clone()));
                }
                for (pos, label) in self.labels.iter().enumerate() {
                    assignment[self.order[pos]] = label.map(|c| used.binary_search(&c).expect("used"));
                }
                real_groups = used.len();
            }
            Kind::MenuSize { .. } => {
                unit_demand = false;
                real_groups = self.groups_used();
                groups = vec![GroupSpec::Free; real_groups];
                for (pos, label) in self.labels.iter().enumerate() {
                    assignment[self.order[pos]] = *label;
                }
            }
        }
        for pos in self.labels.len()..n {
            assignment[self.order[pos]] = Some(groups.len());
            groups.push(GroupSpec::Free);
        }
        let sol = solve_group_lp(self.dist, &groups, &assignment, unit_demand)?;
        Ok(sol.map(|s| {
            let mut entries = s.entries;
            entries.truncate(real_groups);
            (s.value, entries)
        }))
    }

    fn children(&self) -> Vec<Option<usize>> {
        let atom = &self.dist.atoms()[self.order[self.labels.len()]];
        match &self.kind {
            Kind::Deterministic { candidates, .. } => {
                let mut idx: Vec<usize> = (0..candidates.len()).collect();
                idx.sort_by(|&a, &b| {
                    dot(&candidates[b], atom.x.values()).cmp(&dot(&candidates[a], atom.x.values()))
                });
                let mut out: Vec<Option<usize>> = idx.into_iter().map(Some).collect();
                out.push(None);
                out
            }
            Kind::MenuSize { m } => {
                let used = self.groups_used();
                let mut out: Vec<Option<usize>> = (0..used).map(Some).collect();
                if used < *m {
                    out.push(Some(used));
                }
                out.push(None);
                out
            }
        }
    }

    fn improves(&self, value: &Rational) -> bool {
        self.best.as_ref().is_none_or(|(b, _)| value > b)
    }

    fn descend(&mut self) -> Result<()> {
        let n = self.dist.len();
        if self.labels.len() == n {
            if self.cfg.strategy == Strategy::Exhaustive && self.labels.iter().all(Option::is_none) {
                // all atoms excluded: revenue zero, nothing to solve
                self.record(zero(), Vec::new());
                return Ok(());
            }
            if let Some((v, e)) = self.node_lp()? {
                self.record(v, e);
            }
            return Ok(());
        }
        if self.cfg.strategy == Strategy::BranchAndBound && !self.labels.is_empty() {
            match self.node_lp()? {
                None => return Ok(()),
                Some((bound, _)) if !self.improves(&bound) => return Ok(()),
                Some(_) => {}
            }
        }
        for label in self.children() {
            self.labels.push(label);
            let r = self.descend();
            self.labels.pop();
            r?;
        }
        Ok(())
    }

    fn record(&mut self, value: Rational, entries: Vec<MenuEntry>) {
        if !self.per_block_best.is_empty() {
            let b = self.groups_used();
            let slot = &mut self.per_block_best[b];
            if slot.as_ref().is_none_or(|(v, _)| value > *v) {
                *slot = Some((value.clone(), entries.clone()));
            }
        }
        if self.improves(&value) {
            self.best = Some((value, entries));
        }
    }
}

/// Candidate-price lemma: for a finite-support value distribution the best
/// posted price is attained at a support point. Exposed for testing.
pub fn posted_price_revenue(values: &[(Rational, Rational)], price: &Rational) -> Rational {
    let mass = values.iter().filter(|(v, _)| v >= price).fold(zero(), |acc, (_, p)| acc + p);
    price * mass
}

/// The upper bound `m · BRev` on revenue from an additive menu with `m` basic entries.
pub fn additive_menu_bound(m: usize, dist: &FiniteDistribution) -> Result<Rational> {
    Ok(Rational::from_integer((m as i64).into()) * brev(dist)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn symmetric3() -> FiniteDistribution {
        FiniteDistribution::from_ints(2, &[(&[1, 0], (1, 4)), (&[0, 1], (1, 4)), (&[1, 1], (1, 2))]).unwrap()
    }

    fn product(m: i64) -> FiniteDistribution {
        let mut atoms = Vec::new();
        for (x1, p1) in [(0, rat(1, 2)), (2, rat(1, 2))] {
            for (x2, p2) in [(0, rat(m - 1, m)), (m, rat(1, m))] {
                atoms.push(crate::model::Atom {
                    x: crate::model::ValuationPoint::from_ints(&[x1, x2]),
                    p: &p1 * &p2,
                });
            }
        }
        FiniteDistribution::new(2, atoms).unwrap()
    }

    #[test]
    fn symmetric_example_values() {
        let f = symmetric3();
        assert_eq!(brev(&f).unwrap().value, int(1));
        assert_eq!(srev(&f).unwrap().value, rat(3, 2));
        assert_eq!(drev(&f, SearchConfig::default()).unwrap().value, rat(3, 2));
        assert_eq!(drev(&f, SearchConfig::exhaustive(DEFAULT_BUDGET)).unwrap().value, rat(3, 2));
    }

    #[test]
    fn product_family() {
        let f = product(100);
        assert_eq!(brev(&f).unwrap().value, rat(101, 100));
        assert_eq!(srev(&f).unwrap().value, int(2));
    }

    #[test]
    fn single_type() {
        let f = FiniteDistribution::from_ints(2, &[(&[1, 1], (1, 1))]).unwrap();
        assert_eq!(brev(&f).unwrap().value, int(2));
        assert_eq!(srev(&f).unwrap().value, int(2));
        assert_eq!(drev(&f, SearchConfig::default()).unwrap().value, int(2));
        assert_eq!(rev_ud(&f).unwrap().value, int(1));
    }

    #[test]
    fn unit_demand_prices() {
        let f = FiniteDistribution::from_ints(2, &[(&[2, 0], (1, 2)), (&[0, 2], (1, 2))]).unwrap();
        let r = drev_ud(&f, SearchConfig::default()).unwrap();
        assert_eq!(r.value, int(2));
        assert_eq!(r.prices, Some(vec![Extended::Finite(int(2)), Extended::Finite(int(2))]));
    }

    #[test]
    fn menu_size_one_is_bundling() {
        let f = symmetric3();
        for cfg in [SearchConfig::default(), SearchConfig::exhaustive(DEFAULT_BUDGET)] {
            assert_eq!(m_rev(&f, 1, cfg).unwrap().value, brev(&f).unwrap().value);
            assert_eq!(m_rev(&f, 3, cfg).unwrap().value, rev(&f).unwrap().value);
        }
    }

    #[test]
    fn profile_is_monotone() {
        let f = symmetric3();
        let p = m_rev_profile(&f, 3, SearchConfig::exhaustive(1000)).unwrap();
        assert!(p.windows(2).all(|w| w[0].value <= w[1].value));
        assert_eq!(p[0].quantity, Quantity::MRev(1));
    }

    #[test]
    fn exhaustive_budget_refuses() {
        let f = symmetric3();
        let err = drev(&f, SearchConfig::exhaustive(10)).unwrap_err();
        assert!(err.is_budget_refusal());
        let err = m_rev(&f, 3, SearchConfig::exhaustive(3)).unwrap_err();
        assert!(err.is_budget_refusal());
    }

    #[test]
    fn branch_and_bound_budget_refuses() {
        let f = symmetric3();
        let cfg = SearchConfig { strategy: Strategy::BranchAndBound, budget: 1 };
        assert!(drev(&f, cfg).unwrap_err().is_budget_refusal());
    }

    #[test]
    fn leaf_counts() {
        // labelings into NONE plus unlabeled groups: Bell(n+1) when m >= n
        assert_eq!(partition_leaf_count(3, 3), 15.0);
        assert_eq!(partition_leaf_count(5, 5), 203.0);
        // m = 1: every subset is either the group or NONE
        assert_eq!(partition_leaf_count(4, 1), 16.0);
    }

    #[test]
    fn posted_price_is_attained_in_support() {
        let vals = vec![(int(1), rat(1, 3)), (int(3), rat(1, 3)), (int(4), rat(1, 6))];
        let (p, r) = best_posted_price(&vals);
        // dense grid between and beyond support points never beats the support optimum
        for i in 0..=100 {
            let price = rat(i, 20);
            assert!(posted_price_revenue(&vals, &price) <= r);
        }
        assert_eq!(posted_price_revenue(&vals, &p), r);
        assert!(vals.iter().any(|(v, _)| *v == p));
    }

    #[test]
    fn quantity_round_trip() {
        for q in [Quantity::Rev, Quantity::MRev(4), Quantity::DRevUd] {
            assert_eq!(q.to_string().parse::<Quantity>().unwrap(), q);
        }
        assert!("MREV(0)".parse::<Quantity>().is_err());
        assert!("XREV".parse::<Quantity>().is_err());
    }
}
