//! Level schedules: coarse level `n`, fine level `N`, the interpolation exponent and the
//! per-level budgets of each regime.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{step_cross_size, SmoothnessParams};

/// Equality tolerance for the critical smoothness values (`a = 2 beta`, `a = 1/q`, `a = 1`).
pub const CRITICAL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Regime {
    #[serde(rename = "Wab_large")]
    WabLarge,
    #[serde(rename = "Wab_mid")]
    WabMid,
    #[serde(rename = "Wab_critical")]
    WabCritical,
    #[serde(rename = "Wr_critical")]
    WrCritical,
    #[serde(rename = "P3_main")]
    P3Main,
    #[serde(rename = "P3_critical_a")]
    P3CriticalA,
    #[serde(rename = "Q1_large")]
    Q1Large,
    #[serde(rename = "Q1_mid")]
    Q1Mid,
    #[serde(rename = "Q1_critical")]
    Q1Critical,
}

impl Regime {
    pub const ALL: [Regime; 9] = [
        Regime::WabLarge,
        Regime::WabMid,
        Regime::WabCritical,
        Regime::WrCritical,
        Regime::P3Main,
        Regime::P3CriticalA,
        Regime::Q1Large,
        Regime::Q1Mid,
        Regime::Q1Critical,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Regime::WabLarge => "Wab_large",
            Regime::WabMid => "Wab_mid",
            Regime::WabCritical => "Wab_critical",
            Regime::WrCritical => "Wr_critical",
            Regime::P3Main => "P3_main",
            Regime::P3CriticalA => "P3_critical_a",
            Regime::Q1Large => "Q1_large",
            Regime::Q1Mid => "Q1_mid",
            Regime::Q1Critical => "Q1_critical",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Regime::ALL
            .into_iter()
            .find(|r| r.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid(format!("unknown regime {s:?}")))
    }

    /// The regime a parameter set falls into (`W^{a,b}` classes; `Wr_critical` is never inferred).
    pub fn classify(params: &SmoothnessParams) -> Result<Self> {
        let SmoothnessParams { q, p, a, .. } = *params;
        let beta = params.beta();
        let near = |x: f64, y: f64| (x - y).abs() <= CRITICAL_TOL;
        if q == 1.0 {
            if p >= 2.0 {
                return Ok(if near(a, 1.0) {
                    Regime::Q1Critical
                } else if a > 1.0 {
                    Regime::Q1Large
                } else {
                    Regime::Q1Mid
                });
            }
            return Ok(if near(a, 2.0 * beta) {
                Regime::Q1Critical
            } else if a > 2.0 * beta {
                Regime::Q1Large
            } else {
                Regime::Q1Mid
            });
        }
        if q > 1.0 && p <= 2.0 {
            return Ok(if near(a, 2.0 * beta) && beta > 0.0 {
                Regime::WabCritical
            } else if a > 2.0 * beta {
                Regime::WabLarge
            } else {
                Regime::WabMid
            });
        }
        if q > 1.0 && q <= 2.0 && p > 2.0 {
            return Ok(if near(a, 1.0 / q) {
                Regime::P3CriticalA
            } else {
                Regime::P3Main
            });
        }
        Err(Error::guard(
            "classification",
            format!("no regime covers q={q}, p={p}"),
        ))
    }

    /// Checks the regime's parameter range; the error names the violated inequality.
    pub fn check_guard(self, params: &SmoothnessParams) -> Result<()> {
        let SmoothnessParams { q, p, a, b, .. } = *params;
        let beta = params.beta();
        let tag = self.tag();
        let fail = |cond: String| Err(Error::guard(tag, cond));
        let near = |x: f64, y: f64| (x - y).abs() <= CRITICAL_TOL;
        if !(p.is_finite()) {
            return fail(format!("p < inf (got p={p})"));
        }
        match self {
            Regime::WabLarge | Regime::WabMid | Regime::WabCritical | Regime::WrCritical => {
                if !(1.0 < q && q <= p && p <= 2.0) {
                    return fail(format!("1 < q <= p <= 2 (got q={q}, p={p})"));
                }
                match self {
                    Regime::WabLarge if !(a > 2.0 * beta) => {
                        fail(format!("a > 2*beta (got a={a}, beta={beta})"))
                    }
                    Regime::WabMid if !(beta < a && a < 2.0 * beta) => {
                        fail(format!("beta < a < 2*beta (got a={a}, beta={beta})"))
                    }
                    Regime::WabCritical | Regime::WrCritical
                        if !(beta > 0.0 && near(a, 2.0 * beta)) =>
                    {
                        fail(format!("a = 2*beta > 0 (got a={a}, beta={beta})"))
                    }
                    Regime::WrCritical if b != 0.0 => fail(format!("b = 0 for W^r_q (got b={b})")),
                    _ => Ok(()),
                }
            }
            Regime::P3Main | Regime::P3CriticalA => {
                if !(1.0 < q && q <= 2.0 && 2.0 < p) {
                    return fail(format!("1 < q <= 2 < p (got q={q}, p={p})"));
                }
                let lo = beta * params.p_conj();
                match self {
                    Regime::P3Main if !(lo < a && a < 1.0 / q) => fail(format!(
                        "beta*p' < r < 1/q (got r={a}, interval ({lo}, {}))",
                        1.0 / q
                    )),
                    Regime::P3CriticalA if !near(a, 1.0 / q) => {
                        fail(format!("a = 1/q (got a={a}, 1/q={})", 1.0 / q))
                    }
                    _ => Ok(()),
                }
            }
            Regime::Q1Large | Regime::Q1Mid | Regime::Q1Critical => {
                if q != 1.0 || !(p > 1.0) {
                    return fail(format!("q = 1 < p (got q={q}, p={p})"));
                }
                if !(a > beta) {
                    return fail(format!("a > beta = 1 - 1/p (got a={a}, beta={beta})"));
                }
                let split = if p >= 2.0 { 1.0 } else { 2.0 * beta };
                let which = if p >= 2.0 { "1" } else { "2*beta" };
                match self {
                    Regime::Q1Large if !(a > split) => fail(format!("a > {which} (got a={a})")),
                    Regime::Q1Mid if !(a < split) => fail(format!("a < {which} (got a={a})")),
                    Regime::Q1Critical if !near(a, split) => {
                        fail(format!("a = {which} (got a={a})"))
                    }
                    _ => Ok(()),
                }
            }
        }
    }

    /// Admissible open interval for the interpolation exponent, when the regime has one.
    pub fn kappa_interval(self, params: &SmoothnessParams) -> Option<(f64, f64)> {
        let beta = params.beta();
        let (q, a) = (params.q, params.a);
        match self {
            Regime::WabMid => Some(((a - beta) / beta, 1.0)),
            Regime::WabLarge if beta > 0.0 => Some((1.0, a / beta - 1.0)),
            Regime::P3Main => Some(((1.0 / q - a) / (1.0 - 1.0 / q), (a - beta) / beta)),
            Regime::P3CriticalA => Some((0.0, (a - beta) / beta)),
            Regime::Q1Large if params.p >= 2.0 => Some((0.0, a - 1.0)),
            Regime::Q1Large => Some((1.0, a / beta - 1.0)),
            Regime::Q1Mid if params.p < 2.0 => Some(((a - beta) / beta, 1.0)),
            _ => None,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// What the per-level budgets count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetKind {
    /// Whole blocks `delta_s(f)` kept per level.
    Blocks,
    /// Blocks moved into the greedy target per level (beyond `N`).
    Shells,
    /// Greedy terms spent per level.
    Terms,
    /// One weighted selection over all blocks of `(n, N]`.
    Weight,
    /// A single greedy run on levels `(n, N]`.
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub regime: Regime,
    /// Requested number of terms.
    pub m: usize,
    pub n: u32,
    pub big_n: u32,
    pub kappa: Option<f64>,
    pub budget_kind: BudgetKind,
    /// Nonzero per-level budgets; absent levels have budget 0.
    pub budgets: BTreeMap<u32, u64>,
    /// Weighted selection budget `2^N` (`Wr_critical` only).
    pub weight_budget: Option<f64>,
    /// Terms for the greedy stage.
    pub greedy_terms: usize,
    /// Upper bound on the number of terms of the approximant.
    pub declared_terms: u64,
}

impl Schedule {
    pub fn budget(&self, l: u32) -> u64 {
        self.budgets.get(&l).copied().unwrap_or(0)
    }
}

/// Number of shells `s` with `||s||_1 = l` in dimension `d`.
pub fn shells_on_level(l: u32, d: usize) -> u64 {
    crate::spectral::geometry::binomial(u128::from(l) + d as u128 - 1, d as u128 - 1) as u64
}

fn log2(x: f64) -> f64 {
    x.log2()
}

fn round_exp(x: f64) -> u32 {
    x.round().max(0.0) as u32
}

/// Midpoint (or any interior point) of the admissible interval.
fn interior(iv: (f64, f64), position: f64) -> f64 {
    iv.0 + position * (iv.1 - iv.0)
}

/// `make_schedule` with `kappa` at the midpoint of its interval.
pub fn make_schedule(m: usize, params: &SmoothnessParams, regime: Regime) -> Result<Schedule> {
    make_schedule_at(m, params, regime, 0.5)
}

/// Builds the schedule with `kappa` at relative `position` in `(0, 1)` of its interval.
pub fn make_schedule_at(
    m: usize,
    params: &SmoothnessParams,
    regime: Regime,
    position: f64,
) -> Result<Schedule> {
    if m < 8 {
        return Err(Error::invalid(format!("schedules need m >= 8, got {m}")));
    }
    if !(position > 0.0 && position < 1.0) {
        return Err(Error::invalid("kappa position must lie in (0, 1)"));
    }
    regime.check_guard(params)?;
    let d = params.d;
    let kappa = regime
        .kappa_interval(params)
        .map(|iv| interior(iv, position));
    match regime {
        Regime::P3Main | Regime::P3CriticalA => {
            let n = largest_n(|n| 2 * step_cross_size(n, d) <= m as u128);
            let lm = log2(m as f64);
            let e = params.p / 2.0 * lm + (d as f64 - 1.0) * (1.0 - params.p) * log2(lm);
            let big_n = round_exp(e).max(n + 1);
            let k = kappa.expect("interval");
            let nbar = f64::from(n.max(1)).powi(d as i32 - 1);
            let mut budgets = BTreeMap::new();
            // u_l vanishes once 2^{k(l-N)} exceeds n^{d-1}
            let mut l = big_n + 1;
            loop {
                let u = (nbar * 2f64.powf(k * (f64::from(big_n) - f64::from(l)))).floor() as u64;
                if u == 0 || l > big_n + 200 {
                    break;
                }
                budgets.insert(l, u.min(shells_on_level(l, d)));
                l += 1;
            }
            let greedy = m / 2;
            Ok(Schedule {
                regime,
                m,
                n,
                big_n,
                kappa,
                budget_kind: BudgetKind::Shells,
                budgets,
                weight_budget: None,
                greedy_terms: greedy,
                declared_terms: step_cross_size(n, d) as u64 + greedy as u64,
            })
        }
        Regime::Q1Large | Regime::Q1Mid | Regime::Q1Critical if params.p >= 2.0 => {
            let n = largest_n(|n| 2 * step_cross_size(n, d) <= m as u128);
            let greedy = m / 2;
            let qn = step_cross_size(n, d) as u64;
            if regime == Regime::Q1Large {
                let mu = kappa.expect("interval");
                let budgets = q1_large_budgets(n, greedy, mu);
                let spent: u64 = budgets.values().sum();
                let big_n = budgets
                    .keys()
                    .next_back()
                    .copied()
                    .unwrap_or(n + 1)
                    .max(n + 1);
                return Ok(Schedule {
                    regime,
                    m,
                    n,
                    big_n,
                    kappa,
                    budget_kind: BudgetKind::Terms,
                    budgets,
                    weight_budget: None,
                    greedy_terms: spent as usize,
                    declared_terms: qn + spent,
                });
            }
            let big_n = round_exp(params.p / 2.0 * log2(m as f64)).max(n + 1);
            Ok(Schedule {
                regime,
                m,
                n,
                big_n,
                kappa: None,
                budget_kind: BudgetKind::None,
                budgets: BTreeMap::new(),
                weight_budget: None,
                greedy_terms: greedy,
                declared_terms: qn + greedy as u64,
            })
        }
        Regime::WrCritical => {
            let build = |n: u32| {
                let big_n = n + round_exp((d as f64 - 1.0) * log2(f64::from(n.max(1))));
                (big_n, step_cross_size(n, d) as u64 + (1u64 << (big_n + 1)))
            };
            let n = largest_n(|n| u128::from(build(n).1) <= m as u128);
            let (big_n, declared) = build(n);
            Ok(Schedule {
                regime,
                m,
                n,
                big_n,
                kappa: None,
                budget_kind: BudgetKind::Weight,
                budgets: BTreeMap::new(),
                weight_budget: Some(2f64.powi(big_n as i32)),
                greedy_terms: 0,
                declared_terms: declared,
            })
        }
        _ => {
            // block schedules: Wab_* and Q1_* with p < 2
            let build = |n: u32| block_schedule(n, d, regime, params, kappa);
            let n = largest_n(|n| u128::from(build(n).2) <= m as u128);
            let (big_n, budgets, declared) = build(n);
            Ok(Schedule {
                regime,
                m,
                n,
                big_n,
                kappa,
                budget_kind: BudgetKind::Blocks,
                budgets,
                weight_budget: None,
                greedy_terms: 0,
                declared_terms: declared,
            })
        }
    }
}

/// Per-level greedy budgets `[(m/2)(1 - 2^{-mu}) 2^{-mu (l-n-1)}]`, `l > n`.
fn q1_large_budgets(n: u32, total: usize, mu: f64) -> BTreeMap<u32, u64> {
    let mut out = BTreeMap::new();
    let head = total as f64 * (1.0 - 2f64.powf(-mu));
    for j in 0..400u32 {
        let b = (head * 2f64.powf(-mu * f64::from(j))).floor() as u64;
        if b == 0 {
            break;
        }
        out.insert(n + 1 + j, b);
    }
    out
}

/// `(N, budgets, declared terms)` of the block-selection schedules at coarse level `n`.
fn block_schedule(
    n: u32,
    d: usize,
    regime: Regime,
    params: &SmoothnessParams,
    kappa: Option<f64>,
) -> (u32, BTreeMap<u32, u64>, u64) {
    let nbar = f64::from(n.max(1));
    let mut budgets = BTreeMap::new();
    let large = matches!(regime, Regime::WabLarge | Regime::Q1Large);
    let big_n;
    if large {
        // m_l = [n^{d-1} 2^{-kappa (l - n)}] for l > n; q = p leaves only the partial sum
        big_n = n;
        if let Some(k) = kappa.filter(|_| params.beta() > 0.0) {
            for l in n + 1..n + 400 {
                let b = (nbar.powi(d as i32 - 1) * 2f64.powf(-k * f64::from(l - n))).floor() as u64;
                if b == 0 {
                    break;
                }
                budgets.insert(l, b.min(shells_on_level(l, d)));
            }
        }
    } else {
        big_n = n + round_exp((d as f64 - 1.0) * log2(nbar));
        for l in n + 1..=big_n {
            let b = match kappa {
                Some(k) => 2f64.powf(k * f64::from(big_n - l)).floor() as u64,
                None => 1u64 << (big_n - l),
            };
            if b > 0 {
                budgets.insert(l, b.min(shells_on_level(l, d)));
            }
        }
    }
    let declared =
        step_cross_size(n, d) as u64 + budgets.iter().map(|(&l, &b)| b << l).sum::<u64>();
    (big_n, budgets, declared)
}

/// Largest `n` satisfying a monotone predicate (0 when none does).
fn largest_n(ok: impl Fn(u32) -> bool) -> u32 {
    let mut n = 0;
    while n < 60 && ok(n + 1) {
        n += 1;
    }
    n
}
