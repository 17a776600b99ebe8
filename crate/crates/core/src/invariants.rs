//! Seeded random instances and the invariant suites run by tests and the
//! `verify` command.
//!
//! Every check is an exact rational comparison. A failing check keeps the
//! first counterexample as JSON. Computations refused for exceeding the
//! search budget are counted separately and never count as passes.

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{discretize_two_item, price_ranges, round_grid_k, t_values, tight_distribution_from, unit_demand_scale};
use crate::constructions::{gap_construction, shell_points, symmetric_example, symmetric_separate_menu, t_example_menus, tbound_menu};
use crate::error::{Error, Result};
use crate::model::{
    evaluate_choice, expected_additive_revenue, expected_revenue, expected_revenue_unit_demand, scale_distribution,
    scale_menu, symmetrize, weak_monotonicity_violations, AdditiveMenu, Atom, FiniteDistribution, Menu, MenuEntry,
    ValuationPoint, DEFAULT_ADDITIVE_CAP,
};
use crate::rational::{self, int, one, rat, zero, Extended, Rational};
use crate::revenue::{brev, drev, drev_ud, m_rev_profile, rev, rev_ud, srev, SearchConfig, DEFAULT_BUDGET};

/// Random generator for small exact instances.
pub struct InstanceGen {
    rng: ChaCha8Rng,
}

impl InstanceGen {
    pub fn new(seed: u64) -> Self {
        InstanceGen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random_bool(0.5)
    }

    /// Uniform on the grid `{lo, lo + 1/den, …, hi}`.
    pub fn rational(&mut self, lo: i64, hi: i64, den: i64) -> Rational {
        rat(self.rng.random_range(lo * den..=hi * den), den)
    }

    /// `n` distinct points with coordinates on the `1/den` grid in `[lo, hi]`.
    /// Masses are random positive weights, normalized to 1 when `full_mass`
    /// and otherwise leaving a random deficit on the zero point.
    pub fn distribution(&mut self, k: usize, n: usize, lo: i64, hi: i64, den: i64, full_mass: bool) -> FiniteDistribution {
        let mut points: Vec<ValuationPoint> = Vec::with_capacity(n);
        let cells = ((hi - lo) * den + 1) as u128;
        let n = n.min(cells.saturating_pow(k as u32).min(usize::MAX as u128) as usize);
        while points.len() < n {
            let p = ValuationPoint::new((0..k).map(|_| self.rational(lo, hi, den)).collect()).expect("nonnegative grid");
            if !points.contains(&p) {
                points.push(p);
            }
        }
        let weights: Vec<i64> = (0..n).map(|_| self.rng.random_range(1..=10)).collect();
        let total: i64 = weights.iter().sum();
        let denom = if full_mass || self.coin() { total } else { total + self.rng.random_range(1..=total) };
        let atoms = points.into_iter().zip(weights).map(|(x, w)| Atom { x, p: rat(w, denom) }).collect();
        FiniteDistribution::new(k, atoms).expect("distinct points, mass at most one")
    }

    pub fn allocation(&mut self, k: usize, den: i64) -> Vec<Rational> {
        (0..k).map(|_| self.rational(0, 1, den)).collect()
    }

    /// Up to `size` entries with random lottery allocations and prices in `[lo, hi]`.
    pub fn menu(&mut self, k: usize, size: usize, lo: i64, hi: i64, den: i64) -> Menu {
        let entries: Vec<MenuEntry> = (0..size)
            .map(|_| MenuEntry { q: self.allocation(k, den), s: self.rational(lo, hi, den) })
            .collect();
        Menu::dedup(k, entries).expect("valid entries")
    }

    /// Random nonempty subset of the three deterministic two-item entries.
    pub fn deterministic_two_item_menu(&mut self, symmetric: bool) -> Menu {
        let a = self.rational(1, 10, 2);
        let b = if symmetric { a.clone() } else { self.rational(1, 10, 2) };
        let c = self.rational(1, 20, 2);
        let all = [(vec![one(), zero()], a), (vec![zero(), one()], b), (vec![one(), one()], c)];
        let mut picked: Vec<MenuEntry> = Vec::new();
        for (i, (q, s)) in all.into_iter().enumerate() {
            // a symmetric menu keeps both single-item entries or neither
            let take = if symmetric && i == 1 { picked.iter().any(|e| e.q == [one(), zero()]) } else { self.coin() };
            if take {
                picked.push(MenuEntry { q, s });
            }
        }
        if picked.is_empty() {
            picked.push(MenuEntry { q: vec![one(), one()], s: self.rational(1, 20, 2) });
        }
        Menu::dedup(2, picked).expect("valid entries")
    }

    pub fn separate_price_menu(&mut self, symmetric: bool) -> Menu {
        let a = self.rational(1, 10, 2);
        let b = if symmetric { a.clone() } else { self.rational(1, 10, 2) };
        crate::revenue::separate_price_menu(&[a, b])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: u64,
    pub failed: u64,
    pub refused: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: u64,
    pub checks: Vec<Check>,
    /// Informational values such as fitted exponents; never pass/fail.
    pub notes: Vec<(String, String)>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Recorder {
    checks: Vec<Check>,
    notes: Vec<(String, String)>,
}

impl Recorder {
    fn new() -> Self {
        Recorder { checks: Vec::new(), notes: Vec::new() }
    }

    fn slot(&mut self, name: &str) -> &mut Check {
        if let Some(i) = self.checks.iter().position(|c| c.name == name) {
            return &mut self.checks[i];
        }
        self.checks.push(Check { name: name.to_string(), passed: 0, failed: 0, refused: 0, counterexample: None });
        self.checks.last_mut().expect("just pushed")
    }

    fn record(&mut self, name: &str, ok: bool, context: impl FnOnce() -> Value) {
        let c = self.slot(name);
        if ok {
            c.passed += 1;
        } else {
            c.failed += 1;
            if c.counterexample.is_none() {
                c.counterexample = Some(context());
            }
        }
    }

    fn refuse(&mut self, name: &str) {
        self.slot(name).refused += 1;
    }

    fn note(&mut self, key: &str, value: String) {
        self.notes.push((key.to_string(), value));
    }

    fn finish(self, suite: &str, cfg: &SuiteConfig) -> SuiteReport {
        SuiteReport { suite: suite.to_string(), seed: cfg.seed, trials: cfg.trials, checks: self.checks, notes: self.notes }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: u64,
    pub budget: u64,
    /// Prefix length for the growth suite.
    pub prefix: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 7, trials: 100, budget: DEFAULT_BUDGET, prefix: 50 }
    }
}

pub const SUITES: [&str; 6] = ["props", "tbound", "discretization", "unit-demand", "appendix2-examples", "growth"];

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    match name {
        "props" => revenue_props(cfg),
        "tbound" => tbound_props(cfg),
        "discretization" => discretization_props(cfg),
        "unit-demand" => unit_demand_props(cfg),
        "appendix2-examples" => appendix2_examples(cfg),
        "growth" => growth(cfg),
        other => Err(Error::invalid(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    }
}

fn r(v: &Rational) -> String {
    rational::format(v)
}

fn dist_json(f: &FiniteDistribution) -> Value {
    serde_json::to_value(f).unwrap_or(Value::Null)
}

fn menu_json(m: &Menu) -> Value {
    serde_json::to_value(m).unwrap_or(Value::Null)
}

fn pow2(k: usize) -> Rational {
    int(1i64 << k)
}

/// Values of every revenue quantity on one instance, or the refusal.
struct Quantities {
    brev: Rational,
    srev: Rational,
    rev: Rational,
    drev: Rational,
    m_rev: Vec<Rational>,
    rev_ud: Rational,
    drev_ud: Rational,
}

fn quantities(f: &FiniteDistribution, cfg: SearchConfig) -> Result<Quantities> {
    Ok(Quantities {
        brev: brev(f)?.value,
        srev: srev(f)?.value,
        rev: rev(f)?.value,
        drev: drev(f, cfg)?.value,
        m_rev: m_rev_profile(f, f.len(), cfg)?.into_iter().map(|r| r.value).collect(),
        rev_ud: rev_ud(f)?.value,
        drev_ud: drev_ud(f, cfg)?.value,
    })
}

/// The revenue inequalities on random instances with `k ≤ 3` and `N ≤ 5`.
pub fn revenue_props(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut rec = Recorder::new();
    let mut gen = InstanceGen::new(cfg.seed);
    let search = SearchConfig { budget: cfg.budget, ..SearchConfig::default() };
    for _ in 0..cfg.trials {
        let k = gen.range(1, 3);
        let n = gen.range(1, 5);
        let f = gen.distribution(k, n, 0, 4, 4, false);
        let q = match quantities(&f, search) {
            Ok(q) => q,
            Err(e) if e.is_budget_refusal() => {
                rec.refuse("revenue quantities");
                continue;
            }
            Err(e) => return Err(e),
        };
        let kk = int(k as i64);
        let ctx = || {
            json!({
                "distribution": dist_json(&f),
                "brev": r(&q.brev), "srev": r(&q.srev), "drev": r(&q.drev), "rev": r(&q.rev),
                "mrev": q.m_rev.iter().map(r).collect::<Vec<_>>(),
                "rev_ud": r(&q.rev_ud), "drev_ud": r(&q.drev_ud),
            })
        };
        rec.record("srev <= drev", q.srev <= q.drev, ctx);
        rec.record("drev <= rev", q.drev <= q.rev, ctx);
        rec.record("brev <= rev", q.brev <= q.rev, ctx);
        rec.record("mrev(1) = brev", q.m_rev[0] == q.brev, ctx);
        let bounded = q.m_rev.iter().enumerate().all(|(i, v)| *v <= int(i as i64 + 1) * &q.brev);
        rec.record("mrev(m) <= m*brev", bounded, ctx);
        rec.record("mrev nondecreasing in m", q.m_rev.windows(2).all(|w| w[0] <= w[1]), ctx);
        rec.record("mrev(N) = rev", q.m_rev.last() == Some(&q.rev), ctx);
        rec.record("drev <= (2^k-1)*brev", q.drev <= (pow2(k) - one()) * &q.brev, ctx);
        rec.record("brev <= k*srev", q.brev <= &kk * &q.srev, ctx);
        rec.record("srev <= k*brev", q.srev <= &kk * &q.brev, ctx);
        if k >= 2 && q.srev.is_positive() {
            // 4 ln k is irrational; the ratio is a small exact rational, so f64 suffices
            let ratio = rational::to_f64(&(&q.brev / &q.srev));
            rec.record("brev < 4*ln(k)*srev", ratio < 4.0 * (k as f64).ln(), ctx);
        }
        if k == 2 {
            rec.record("drev <= 3*srev (k=2)", q.drev <= int(3) * &q.srev, ctx);
            rec.record("drev <= 5/2*brev (k=2)", q.drev <= rat(5, 2) * &q.brev, ctx);
            if n <= 3 {
                let sym = symmetrize(&f);
                match (drev(&sym, search), brev(&sym)) {
                    (Ok(d), Ok(b)) => rec.record("symmetric drev <= 3/2*brev (k=2)", d.value <= rat(3, 2) * &b.value, || {
                        json!({"distribution": dist_json(&sym), "drev": r(&d.value), "brev": r(&b.value)})
                    }),
                    (Err(e), _) if e.is_budget_refusal() => rec.refuse("symmetric drev <= 3/2*brev (k=2)"),
                    (Err(e), _) | (_, Err(e)) => return Err(e),
                }
            }
        }
        rec.record("rev_ud <= rev <= k*rev_ud", q.rev_ud <= q.rev && q.rev <= &kk * &q.rev_ud, ctx);
        rec.record(
            "drev_ud <= drev <= k*2^k*drev_ud",
            q.drev_ud <= q.drev && q.drev <= &kk * pow2(k) * &q.drev_ud,
            ctx,
        );

        // additive menus
        let m = gen.range(1, 3);
        let basic: Vec<MenuEntry> =
            (0..m).map(|_| MenuEntry { q: gen.allocation(k, 2), s: gen.rational(0, 4, 4) }).collect();
        let amenu = AdditiveMenu::new(k, basic)?;
        let add_rev = expected_additive_revenue(&amenu, &f, DEFAULT_ADDITIVE_CAP)?;
        rec.record("additive revenue <= m*brev", add_rev <= int(m as i64) * &q.brev, || {
            json!({"distribution": dist_json(&f), "basic_entries": serde_json::to_value(&amenu.basic_entries).unwrap_or(Value::Null),
                   "additive_revenue": r(&add_rev), "brev": r(&q.brev)})
        });

        // buyer-model properties on a random menu
        let size = gen.range(0, 4);
        let menu = gen.menu(k, size, 0, 4, 4);
        let mctx = || json!({"distribution": dist_json(&f), "menu": menu_json(&menu)});
        let mut optimal = true;
        let mut deterministic = true;
        for a in f.atoms() {
            let c = evaluate_choice(&menu, &a.x)?;
            optimal &= !c.utility.is_negative() && menu.entries().iter().all(|e| c.utility >= e.utility(&a.x));
            deterministic &= evaluate_choice(&menu, &a.x)? == c;
        }
        rec.record("choice is utility-maximizing and IR", optimal, mctx);
        rec.record("choice is deterministic", deterministic, mctx);
        rec.record("weak monotonicity", weak_monotonicity_violations(&menu, &f)?.is_empty(), mctx);
        let lambda = [rat(1, 2), int(2), int(3), int(12)][gen.range(0, 3)].clone();
        let scaled = expected_revenue(&scale_menu(&menu, &lambda)?, &scale_distribution(&f, &lambda)?)?;
        rec.record("scaling multiplies revenue", scaled == &lambda * expected_revenue(&menu, &f)?, mctx);
        let bundle = Menu::new(k, vec![MenuEntry { q: vec![one(); k], s: gen.rational(0, 8, 4) }]).or_else(|_| Ok::<_, Error>(Menu::empty(k)))?;
        rec.record(
            "symmetrize preserves bundle revenue",
            expected_revenue(&bundle, &symmetrize(&f))? == expected_revenue(&bundle, &f)?,
            || json!({"distribution": dist_json(&f), "menu": menu_json(&bundle)}),
        );
    }
    Ok(rec.finish("props", cfg))
}

/// `R(b;F) ≤ T(b)·BRev(F)`, tightness, and the two-item T ceilings.
pub fn tbound_props(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut rec = Recorder::new();
    let mut gen = InstanceGen::new(cfg.seed);
    for _ in 0..cfg.trials {
        let k = gen.range(1, 3);
        let size = gen.range(1, 4);
        let menu = gen.menu(k, size, 0, 6, 2);
        let n = gen.range(1, 5);
        let f = gen.distribution(k, n, 0, 6, 2, false);
        let report = t_values(&menu)?;
        let b = brev(&f)?.value;
        let earned = expected_revenue(&menu, &f)?;
        rec.record("R(b;F) <= T(b)*BRev(F)", earned <= &report.value * &b, || {
            json!({"menu": menu_json(&menu), "distribution": dist_json(&f), "T": r(&report.value), "brev": r(&b), "revenue": r(&earned)})
        });
        if report.value.is_positive() {
            let tight = tight_distribution_from(&report)?;
            let tb = brev(&tight)?.value;
            let te = expected_revenue(&menu, &tight)?;
            rec.record("R(b;F_b) = T(b)*BRev(F_b)", te == &report.value * &tb, || {
                json!({"menu": menu_json(&menu), "tight": dist_json(&tight), "T": r(&report.value), "brev": r(&tb), "revenue": r(&te)})
            });
        }

        let checks: [(&str, Menu, fn(&Rational) -> bool); 4] = [
            ("T <= 5/2 (deterministic, k=2)", gen.deterministic_two_item_menu(false), |t| *t <= rat(5, 2)),
            ("T <= 3/2 (symmetric deterministic, k=2)", gen.deterministic_two_item_menu(true), |t| *t <= rat(3, 2)),
            ("T < 2 (separate prices, k=2)", gen.separate_price_menu(false), |t| *t < int(2)),
            ("T = 3/2 (symmetric separate prices, k=2)", gen.separate_price_menu(true), |t| *t == rat(3, 2)),
        ];
        for (name, m, ok) in checks {
            let t = t_values(&m)?.value;
            rec.record(name, ok(&t), || json!({"menu": menu_json(&m), "T": r(&t)}));
        }
    }
    Ok(rec.finish("tbound", cfg))
}

/// Two-item discretization on `[1,10]²` with `δ = 3/10`, and grid rounding on
/// `[0,1]²` with `n = 25`.
pub fn discretization_props(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut rec = Recorder::new();
    let mut gen = InstanceGen::new(cfg.seed);
    let (h, delta) = (int(10), rat(3, 10));
    let k_stmt = int(price_ranges(&h, &delta) as i64);
    let stmt_bound = &k_stmt * &k_stmt / &delta;
    for _ in 0..cfg.trials {
        let menu = gen.menu(2, 20, 1, 10, 100);
        let f = gen.distribution(2, 10, 1, 10, 10, true);
        let rep = discretize_two_item(&menu, &h, &delta, Some(&f))?;
        let cert = rep.certificate.as_ref().expect("test distribution supplied");
        let ctx = || json!({"menu": menu_json(&menu), "distribution": dist_json(&f), "report": serde_json::to_value(&rep).unwrap_or(Value::Null)});
        rec.record("payment ratio >= 1 - delta", cert.holds, ctx);
        rec.record("menu size <= K*K/delta", int(rep.size as i64) <= stmt_bound, ctx);

        let menu = gen.menu(2, 10, 0, 1, 100);
        let f = gen.distribution(2, 10, 0, 1, 100, false);
        let rep = round_grid_k(&menu, 25, Some(&f))?;
        let cert = rep.certificate.as_ref().expect("test distribution supplied");
        let ctx = || json!({"menu": menu_json(&menu), "distribution": dist_json(&f), "report": serde_json::to_value(&rep).unwrap_or(Value::Null)});
        rec.record("grid revenue loss <= 2k/sqrt(n)", cert.holds, ctx);
        rec.record("grid menu size <= (n+1)^k - 1", int(rep.size as i64) <= rep.size_bound, ctx);
    }
    Ok(rec.finish("discretization", cfg))
}

/// Unit-demand sandwich bounds and the exact `1/k` revenue of scaled menus.
pub fn unit_demand_props(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut rec = Recorder::new();
    let mut gen = InstanceGen::new(cfg.seed);
    let search = SearchConfig { budget: cfg.budget, ..SearchConfig::default() };
    for _ in 0..cfg.trials {
        let k = gen.range(1, 3);
        let n = gen.range(1, 4);
        let f = gen.distribution(k, n, 0, 4, 2, false);
        let kk = int(k as i64);
        let (rv, rud) = (rev(&f)?.value, rev_ud(&f)?.value);
        let ctx = || json!({"distribution": dist_json(&f)});
        rec.record("rev_ud <= rev <= k*rev_ud", rud <= rv && rv <= &kk * &rud, ctx);
        match (drev(&f, search), drev_ud(&f, search)) {
            (Ok(d), Ok(du)) => rec.record(
                "drev_ud <= drev <= k*2^k*drev_ud",
                du.value <= d.value && d.value <= &kk * pow2(k) * &du.value,
                ctx,
            ),
            (Err(e), _) | (_, Err(e)) if e.is_budget_refusal() => rec.refuse("drev_ud <= drev <= k*2^k*drev_ud"),
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
        let size = gen.range(1, 4);
        let menu = gen.menu(k, size, 0, 4, 4);
        let scaled = unit_demand_scale(&menu)?;
        let lhs = expected_revenue_unit_demand(&scaled, &f)?;
        let rhs = expected_revenue(&menu, &f)? / &kk;
        rec.record("scaled menu earns exactly 1/k", lhs == rhs, || {
            json!({"distribution": dist_json(&f), "menu": menu_json(&menu), "scaled_revenue": r(&lhs), "expected": r(&rhs)})
        });
    }
    Ok(rec.finish("unit-demand", cfg))
}

/// The worked two-item menus: exact t vectors, T values and tight distributions.
pub fn appendix2_examples(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut rec = Recorder::new();
    let fin = |v: i64| Extended::Finite(int(v));
    let expected = [
        (vec![fin(1), fin(2), fin(5)], rat(19, 10)),
        (vec![fin(2), fin(2), fin(4)], rat(3, 2)),
        (vec![fin(2), fin(4), Extended::Infinite], rat(3, 2)),
    ];
    for (i, (menu, (t, value))) in t_example_menus().iter().zip(expected).enumerate() {
        let rep = t_values(menu)?;
        let label = format!("example {}", i + 1);
        rec.note(&format!("{label} T"), r(&rep.value));
        rec.record(&format!("{label}: t vector"), rep.t() == t, || {
            json!({"t": rep.t().iter().map(|x| x.to_string()).collect::<Vec<_>>()})
        });
        rec.record(&format!("{label}: T = {}", r(&value)), rep.value == value, || json!({"T": r(&rep.value)}));
        if i < 2 {
            let tight = tight_distribution_from(&rep)?;
            let b = brev(&tight)?.value;
            let earned = expected_revenue(menu, &tight)?;
            rec.record(&format!("{label}: R(b;F_b) = T*BRev(F_b)"), earned == &rep.value * &b, || {
                json!({"tight": dist_json(&tight), "brev": r(&b), "revenue": r(&earned)})
            });
        }
    }
    let f = symmetric_example();
    let menu = symmetric_separate_menu();
    let search = SearchConfig { budget: cfg.budget, ..SearchConfig::default() };
    let (b, s, d) = (brev(&f)?.value, srev(&f)?.value, drev(&f, search)?.value);
    let earned = expected_revenue(&menu, &f)?;
    let ok = b == int(1) && s == rat(3, 2) && d == rat(3, 2) && earned == rat(3, 2);
    rec.record("symmetric example: BRev 1, SRev = DRev = R(b;F) = 3/2", ok, || {
        json!({"brev": r(&b), "srev": r(&s), "drev": r(&d), "revenue": r(&earned)})
    });
    let t = t_values(&menu)?.value;
    rec.record("symmetric separate prices: T = 3/2", t == rat(3, 2), || json!({"T": r(&t)}));
    Ok(rec.finish("appendix2-examples", cfg))
}

/// Shell-sequence prefixes: exact gap sums, bundle and separate revenue at
/// most 4, the menu of prices `2ⁿ` having `T ≥ Σgap/(2k)`, and the fitted
/// log-log growth exponent.
pub fn growth(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut rec = Recorder::new();
    let seq = shell_points(cfg.prefix, 1_000_000_000_000)?;
    rec.record("all gaps positive", seq.flagged.is_empty(), || json!({"flagged": seq.flagged}));
    if !seq.flagged.is_empty() {
        return Ok(rec.finish("growth", cfg));
    }
    let table = crate::constructions::growth_table(&seq, cfg.prefix)?;
    rec.record("gap sums strictly increasing", table.strictly_increasing, || json!({}));
    rec.note("loglog slope", format!("{:.6}", table.loglog_slope));
    rec.note("gap decay constant", format!("{:.6e}", table.gap_decay_constant));
    let four = int(4);
    let kk = int(2 * seq.k as i64);
    for m in 1..=cfg.prefix {
        let trace = gap_construction(&seq, m)?;
        let sum = trace.gap_sum();
        let earned = expected_revenue(&trace.menu, &trace.distribution)?;
        rec.record("canonical menu earns the gap sum", earned == sum, || json!({"m": m, "revenue": r(&earned), "gap_sum": r(&sum)}));
        let (b, s) = (brev(&trace.distribution)?.value, srev(&trace.distribution)?.value);
        rec.record("brev <= 4 and srev <= 4", b <= four && s <= four, || json!({"m": m, "brev": r(&b), "srev": r(&s)}));
        let t = t_values(&tbound_menu(&seq, m)?)?.value;
        rec.record("T(2^n menu) >= gap sum/(2k)", t >= &sum / &kk, || json!({"m": m, "T": r(&t), "gap_sum": r(&sum)}));
    }
    Ok(rec.finish("growth", cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_is_deterministic() {
        let a = InstanceGen::new(3).distribution(2, 4, 0, 4, 4, false);
        let b = InstanceGen::new(3).distribution(2, 4, 0, 4, 4, false);
        assert_eq!(a, b);
        assert!(a.total_mass() <= crate::rational::one());
        assert_eq!(InstanceGen::new(3).distribution(1, 10, 0, 1, 1, true).len(), 2);
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", &SuiteConfig::default()).is_err());
    }

    #[test]
    fn worked_suite_passes() {
        let rep = appendix2_examples(&SuiteConfig::default()).unwrap();
        assert!(rep.all_passed(), "{rep:?}");
    }

    #[test]
    fn small_props_run() {
        let cfg = SuiteConfig { trials: 5, ..SuiteConfig::default() };
        for suite in ["props", "tbound", "unit-demand"] {
            let rep = run_suite(suite, &cfg).unwrap();
            assert!(rep.all_passed(), "{rep:#?}");
        }
    }
}
