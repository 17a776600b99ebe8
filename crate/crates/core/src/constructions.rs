//! Generators for the distribution and menu families used to separate
//! revenue benchmarks.
//!
//! The central object is a sequence of allocation points `q¹, q², …` in
//! `[0,1]^k` together with its gaps
//! `gapⁿ = qⁿ·qⁿ − max_{j<n} qʲ·qⁿ` (`gap¹ = q¹·q¹`). Given positive gaps,
//! [`gap_construction`] places a type at `xⁿ = Mⁿ·qⁿ` with probability
//! `1/Mⁿ`, where `Mⁿ = (2k)ⁿ / Π_{j≤n} gapʲ`, and the menu
//! `{(qⁿ, Mⁿ·gapⁿ)}` then earns exactly `Σ gapⁿ` while bundling and separate
//! selling stay below `2k`.

use std::sync::OnceLock;

use num_traits::{One, Signed};
use serde::Serialize;

use crate::combinatorics::{indicator, nonempty_subsets};
use crate::error::{Error, Result};
use crate::model::{evaluate_choice, Atom, FiniteDistribution, Menu, MenuEntry, ValuationPoint};
use crate::rational::{self, dot, int, rat, serde_rational, zero, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointSequence {
    pub k: usize,
    #[serde(serialize_with = "ser_points")]
    pub points: Vec<Vec<Rational>>,
    #[serde(with = "serde_rational::vec")]
    pub gaps: Vec<Rational>,
    /// Indices (0-based) whose gap is not positive.
    pub flagged: Vec<usize>,
}

fn ser_points<S: serde::Serializer>(points: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(points.len()))?;
    for p in points {
        let texts: Vec<String> = p.iter().map(rational::format).collect();
        seq.serialize_element(&texts)?;
    }
    seq.end()
}

impl PointSequence {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Σ_{n ≤ m} gapⁿ.
    pub fn gap_sum(&self, m: usize) -> Rational {
        self.gaps.iter().take(m).fold(zero(), |acc, g| acc + g)
    }

    fn check_prefix(&self, m: usize) -> Result<()> {
        if m == 0 || m > self.len() {
            return Err(Error::invalid(format!("prefix {m} outside 1..={}", self.len())));
        }
        if let Some(&n) = self.flagged.iter().find(|&&n| n < m) {
            return Err(Error::invalid(format!(
                "point {} has non-positive gap {}",
                n + 1,
                rational::format(&self.gaps[n])
            )));
        }
        Ok(())
    }
}

/// Exact gaps of a point sequence; non-positive gaps are flagged, not removed.
pub fn compute_gaps(k: usize, points: Vec<Vec<Rational>>) -> Result<PointSequence> {
    let unit = Rational::one();
    for p in &points {
        if p.len() != k {
            return Err(Error::DimensionMismatch { expected: k, found: p.len() });
        }
        if p.iter().any(|v| v.is_negative() || *v > unit) {
            return Err(Error::invalid("point coordinate outside [0,1]"));
        }
    }
    let mut gaps = Vec::with_capacity(points.len());
    let mut flagged = Vec::new();
    for (n, q) in points.iter().enumerate() {
        let own = dot(q, q);
        let shadow = points[..n].iter().map(|p| dot(p, q)).max();
        let gap = match shadow {
            Some(s) => own - s,
            None => own,
        };
        if !gap.is_positive() {
            flagged.push(n);
        }
        gaps.push(gap);
    }
    Ok(PointSequence { k, points, gaps, flagged })
}

/// Everything produced by [`gap_construction`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionTrace {
    /// `Mⁿ` for `n = 1..=m`.
    #[serde(with = "serde_rational::vec")]
    pub scales: Vec<Rational>,
    /// `sⁿ = Mⁿ·gapⁿ`.
    #[serde(with = "serde_rational::vec")]
    pub prices: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub gaps: Vec<Rational>,
    pub distribution: FiniteDistribution,
    pub menu: Menu,
}

impl ConstructionTrace {
    /// Revenue the canonical menu earns on the constructed distribution.
    pub fn gap_sum(&self) -> Rational {
        self.gaps.iter().fold(zero(), |acc, g| acc + g)
    }

    /// For each atom, whether it selects its own entry and pays its price.
    pub fn self_check(&self) -> Result<Vec<bool>> {
        self.distribution
            .atoms()
            .iter()
            .enumerate()
            .map(|(n, a)| {
                let c = evaluate_choice(&self.menu, &a.x)?;
                Ok(c.entry_index == Some(n) && c.payment == self.prices[n])
            })
            .collect()
    }
}

/// Builds the distribution and canonical menu from the first `m` points.
pub fn gap_construction(seq: &PointSequence, m: usize) -> Result<ConstructionTrace> {
    seq.check_prefix(m)?;
    let two_k = int(2 * seq.k as i64);
    let mut scales = Vec::with_capacity(m);
    let mut scale = Rational::one();
    for g in &seq.gaps[..m] {
        scale = scale * &two_k / g;
        scales.push(scale.clone());
    }
    let gaps = seq.gaps[..m].to_vec();
    let prices: Vec<Rational> = scales.iter().zip(&gaps).map(|(s, g)| s * g).collect();
    let atoms = seq.points[..m]
        .iter()
        .zip(&scales)
        .map(|(q, s)| Atom {
            x: ValuationPoint::new(q.iter().map(|v| v * s).collect()).expect("nonnegative"),
            p: Rational::one() / s,
        })
        .collect();
    let distribution = FiniteDistribution::new(seq.k, atoms)?;
    let entries = seq.points[..m]
        .iter()
        .zip(&prices)
        .map(|(q, s)| MenuEntry::new(q.clone(), s.clone()))
        .collect::<Result<Vec<_>>>()?;
    let menu = Menu::new(seq.k, entries)?;
    Ok(ConstructionTrace { scales, prices, gaps, distribution, menu })
}

/// Indicator vectors of all nonempty subsets, by size then lexicographically.
pub fn hypercube_points(k: usize) -> Result<PointSequence> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let points = nonempty_subsets(k).iter().map(|s| indicator(s, k)).collect();
    compute_gaps(k, points)
}

/// `ζ(3/2)`: the partial sum up to 10⁶ plus the midpoint-integral tail estimate.
pub fn shell_normalizer() -> f64 {
    static ALPHA: OnceLock<f64> = OnceLock::new();
    *ALPHA.get_or_init(|| {
        const TERMS: u64 = 1_000_000;
        // sum small terms first for accuracy
        let head: f64 = (1..=TERMS).rev().map(|l| (l as f64).powf(-1.5)).sum();
        head + 2.0 / (TERMS as f64 + 0.5).sqrt()
    })
}

/// Smallest `c` with `c⁴ ≥ N³`, i.e. `⌈N^{3/4}⌉`.
pub fn shell_size(shell: u64) -> u64 {
    let target = (shell as u128).pow(3);
    let mut c = (shell as f64).powf(0.75).floor() as u128;
    while c.pow(4) < target {
        c += 1;
    }
    while c > 1 && (c - 1).pow(4) >= target {
        c -= 1;
    }
    c as u64
}

/// Two-item points on concentric shells: shell `N` holds `⌈N^{3/4}⌉` points at
/// radius `Σ_{ℓ≤N} ℓ^{-3/2} / ζ(3/2)`, at the midpoints of equal sub-arcs of
/// `[π/8, 3π/8]`. Coordinates are rounded to denominator `precision`; gaps
/// are then computed exactly from the emitted rationals.
pub fn shell_points(count: usize, precision: u64) -> Result<PointSequence> {
    if count == 0 {
        return Err(Error::invalid("count must be at least 1"));
    }
    if precision == 0 {
        return Err(Error::invalid("precision must be positive"));
    }
    let alpha = shell_normalizer();
    let (lo, width) = (std::f64::consts::PI / 8.0, std::f64::consts::PI / 4.0);
    let unit = Rational::one();
    let clamp = |v: Rational| if v > unit { unit.clone() } else if v.is_negative() { zero() } else { v };
    let mut points = Vec::with_capacity(count);
    let mut partial = 0.0f64;
    let mut shell = 0u64;
    while points.len() < count {
        shell += 1;
        partial += (shell as f64).powf(-1.5);
        let radius = partial / alpha;
        let c = shell_size(shell);
        for j in 0..c {
            if points.len() == count {
                break;
            }
            let theta = lo + width * (j as f64 + 0.5) / c as f64;
            let x = rational::from_f64_with_denominator(radius * theta.cos(), precision);
            let y = rational::from_f64_with_denominator(radius * theta.sin(), precision);
            points.push(vec![clamp(x), clamp(y)]);
        }
    }
    compute_gaps(2, points)
}

/// The menu `{(qⁿ, 2ⁿ)}_{n ≤ m}` whose `T` value grows with `Σ gapⁿ`.
pub fn tbound_menu(seq: &PointSequence, m: usize) -> Result<Menu> {
    seq.check_prefix(m)?;
    let mut price = Rational::one();
    let two = int(2);
    let entries = seq.points[..m]
        .iter()
        .map(|q| {
            price *= &two;
            MenuEntry::new(q.clone(), price.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    Menu::new(seq.k, entries)
}

/// Row of a growth table: prefix length and exact `Σ_{n≤m} gapⁿ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthRow {
    pub m: usize,
    #[serde(with = "serde_rational")]
    pub gap_sum: Rational,
    pub gap_sum_decimal: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthTable {
    pub rows: Vec<GrowthRow>,
    /// Least-squares slope of `ln Σgap` against `ln m`.
    pub loglog_slope: f64,
    /// `min_n gapⁿ · n^{6/7}`: the largest `c` with `gapⁿ ≥ c·n^{-6/7}` on the prefix.
    pub gap_decay_constant: f64,
    pub strictly_increasing: bool,
}

pub fn growth_table(seq: &PointSequence, prefix: usize) -> Result<GrowthTable> {
    seq.check_prefix(prefix)?;
    let mut rows = Vec::with_capacity(prefix);
    let mut sum = zero();
    for (i, g) in seq.gaps[..prefix].iter().enumerate() {
        sum += g;
        rows.push(GrowthRow { m: i + 1, gap_sum_decimal: rational::to_decimal(&sum, 15), gap_sum: sum.clone() });
    }
    let strictly_increasing = rows.windows(2).all(|w| w[0].gap_sum < w[1].gap_sum);
    let pts: Vec<(f64, f64)> =
        rows.iter().map(|r| ((r.m as f64).ln(), rational::to_f64(&r.gap_sum).ln())).collect();
    let loglog_slope = least_squares_slope(&pts);
    let gap_decay_constant = seq.gaps[..prefix]
        .iter()
        .enumerate()
        .map(|(i, g)| rational::to_f64(g) * ((i + 1) as f64).powf(6.0 / 7.0))
        .fold(f64::INFINITY, f64::min);
    Ok(GrowthTable { rows, loglog_slope, gap_decay_constant, strictly_increasing })
}

pub fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return f64::NAN;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Three-point symmetric distribution: `(1,0)`, `(0,1)` with mass 1/4 each, `(1,1)` with 1/2.
pub fn symmetric_example() -> FiniteDistribution {
    FiniteDistribution::from_ints(2, &[(&[1, 0], (1, 4)), (&[0, 1], (1, 4)), (&[1, 1], (1, 2))])
        .expect("valid")
}

/// `F_M`: masses `c, c/M, c/(2M²)` on `(1,0), (0,M), (M²,M²)` with
/// `c = (1 + 1/M + 1/(2M²))⁻¹`.
pub fn deterministic_tight_family(m: u64) -> Result<FiniteDistribution> {
    if m < 2 {
        return Err(Error::invalid("M must be at least 2"));
    }
    let mm = int(m as i64);
    let m2 = &mm * &mm;
    let c = Rational::one() / (Rational::one() + Rational::one() / &mm + Rational::one() / (int(2) * &m2));
    let pt = |a: &Rational, b: &Rational| ValuationPoint::new(vec![a.clone(), b.clone()]).expect("nonnegative");
    FiniteDistribution::new(
        2,
        vec![
            Atom { x: pt(&int(1), &zero()), p: c.clone() },
            Atom { x: pt(&zero(), &mm), p: &c / &mm },
            Atom { x: pt(&m2, &m2), p: &c / (int(2) * &m2) },
        ],
    )
}

/// The deterministic menu `max{0, x₁−1, x₂−M, x₁+x₂−M²}` matched to [`deterministic_tight_family`].
pub fn deterministic_tight_menu(m: u64) -> Result<Menu> {
    let mm = m as i64;
    Menu::new(
        2,
        vec![
            MenuEntry::from_ints(&[1, 0], 1),
            MenuEntry::from_ints(&[0, 1], mm),
            MenuEntry::from_ints(&[1, 1], mm * mm),
        ],
    )
}

/// Independent items: `X₁ ∈ {0, 2}` uniformly, `X₂ = M` with probability `1/M` and 0 otherwise.
pub fn separate_tight_family(m: u64) -> Result<FiniteDistribution> {
    if m < 3 {
        return Err(Error::invalid("M must exceed 2"));
    }
    let mi = m as i64;
    let mut atoms = Vec::with_capacity(4);
    for (x1, p1) in [(0, rat(1, 2)), (2, rat(1, 2))] {
        for (x2, p2) in [(0, rat(mi - 1, mi)), (mi, rat(1, mi))] {
            atoms.push(Atom { x: ValuationPoint::from_ints(&[x1, x2]), p: &p1 * &p2 });
        }
    }
    FiniteDistribution::new(2, atoms)
}

/// The three two-item menus used to illustrate `T(b)`:
/// `max{0, x₁−a, x₂−b, x₁+x₂−4}` for `(a, b) ∈ {(1,2), (2,2), (5,2)}`.
pub fn t_example_menus() -> [Menu; 3] {
    let mk = |a: i64, b: i64| {
        Menu::new(
            2,
            vec![MenuEntry::from_ints(&[1, 0], a), MenuEntry::from_ints(&[0, 1], b), MenuEntry::from_ints(&[1, 1], 4)],
        )
        .expect("valid")
    };
    [mk(1, 2), mk(2, 2), mk(5, 2)]
}

/// Separate prices of 1 per item on two items.
pub fn symmetric_separate_menu() -> Menu {
    Menu::new(
        2,
        vec![MenuEntry::from_ints(&[1, 0], 1), MenuEntry::from_ints(&[0, 1], 1), MenuEntry::from_ints(&[1, 1], 2)],
    )
    .expect("valid")
}

/// `(i/n, 1 − i/n)` for `i = 0..=n`, each with mass `1/(n+1)`.
pub fn line_grid(n: u64) -> Result<FiniteDistribution> {
    if n == 0 {
        return Err(Error::invalid("grid size must be positive"));
    }
    let ni = n as i64;
    let atoms = (0..=ni)
        .map(|i| Atom {
            x: ValuationPoint::new(vec![rat(i, ni), rat(ni - i, ni)]).expect("nonnegative"),
            p: rat(1, ni + 1),
        })
        .collect();
    FiniteDistribution::new(2, atoms)
}

/// A named distribution and/or menu from the catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WorkedExample {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distribution: Option<FiniteDistribution>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub menu: Option<Menu>,
}

pub const WORKED_NAMES: [&str; 9] = [
    "symmetric",
    "fm",
    "product",
    "t-example-1",
    "t-example-2",
    "t-example-3",
    "fm-menu",
    "symmetric-separate",
    "line",
];

/// Looks up one catalog entry; `param` is `M` for the parametric families
/// (default 100) and `n` for the line grid (default 100).
pub fn worked_example(name: &str, param: Option<u64>) -> Result<WorkedExample> {
    let p = param.unwrap_or(100);
    let (distribution, menu) = match name {
        "symmetric" => (Some(symmetric_example()), Some(symmetric_separate_menu())),
        "fm" => (Some(deterministic_tight_family(p)?), Some(deterministic_tight_menu(p)?)),
        "product" => (Some(separate_tight_family(p)?), None),
        "t-example-1" => (None, Some(t_example_menus()[0].clone())),
        "t-example-2" => (None, Some(t_example_menus()[1].clone())),
        "t-example-3" => (None, Some(t_example_menus()[2].clone())),
        "fm-menu" => (None, Some(deterministic_tight_menu(p)?)),
        "symmetric-separate" => (None, Some(symmetric_separate_menu())),
        "line" => (Some(line_grid(p)?), None),
        other => return Err(Error::invalid(format!("unknown worked example {other:?}"))),
    };
    Ok(WorkedExample { name: name.to_string(), distribution, menu })
}

/// The whole catalog with default parameters.
pub fn worked_examples() -> Vec<WorkedExample> {
    WORKED_NAMES.iter().map(|n| worked_example(n, None).expect("defaults are valid")).collect()
}
