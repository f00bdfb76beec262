use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::greedy::{top_blocks, wcga, weighted_budget_select, BlockScore, WcgaConfig};
use crate::result::{ApproxResult, Components, RunFlags};
use crate::scalar::Real;
use crate::spectral::{
    compositions, measured_norm, quadrature_oversample, GridPlan, SmoothnessParams,
    SpectralFunction,
};

use super::schedule::{make_schedule, Regime, Schedule, CRITICAL_TOL};

fn tag(p: f64) -> String {
    format!("L{p}")
}

/// `||x||_p` on the quadrature grid of `f` (`x` must live on `f`'s frequencies). Sharing one grid
/// keeps the measured norms of `f`'s pieces subadditive.
fn norm_on<T: Real>(f: &SpectralFunction<T>, x: &SpectralFunction<T>, p: f64) -> T {
    if p == 2.0 || x.is_zero() {
        return x.l2_coeff_norm();
    }
    GridPlan::for_max_freq(&f.max_abs_per_axis(), quadrature_oversample(p))
        .synthesize(x)
        .lp_norm(p)
}

/// Assembles the result record and measures `f - approx` in `L_p` and `L_2`.
fn finish<T: Real>(
    f: &SpectralFunction<T>,
    approx: SpectralFunction<T>,
    p: f64,
    schedule: Schedule,
    components: Components,
    log: Vec<crate::result::StepRecord>,
    flags: RunFlags,
) -> Result<ApproxResult<T>> {
    let diff = f.minus(&approx);
    let mut errors = BTreeMap::new();
    errors.insert(tag(p), norm_on(f, &diff, p).as_f64());
    errors.insert("L2".to_string(), diff.l2_coeff_norm().as_f64());
    Ok(ApproxResult {
        m_used: approx.len(),
        declared_terms: schedule.declared_terms as usize,
        terms: approx,
        errors,
        schedule: Some(schedule),
        components,
        log,
        flags,
    })
}

/// `S_{Q_n}(f)` plus, on every level `l > n`, the `m_l` blocks with largest `L_p` norm.
fn block_method<T: Real>(
    f: &SpectralFunction<T>,
    sched: Schedule,
    p: f64,
) -> Result<ApproxResult<T>> {
    let mut approx = f.cross_partial_sum(sched.n);
    let mut components = Components {
        partial_sum_terms: approx.len(),
        ..Default::default()
    };
    for (l, fl) in f.levels() {
        let b = sched.budget(l);
        if l <= sched.n || b == 0 {
            continue;
        }
        let blocks = fl.blocks();
        let scores = blocks
            .iter()
            .map(|(s, blk)| BlockScore::unweighted(s.clone(), measured_norm(blk, p)?.as_f64()))
            .collect::<Result<Vec<_>>>()?;
        for s in top_blocks(&scores, b as usize) {
            approx.add_assign(&blocks[&s]);
            components.selected_shells.push(s);
        }
    }
    finish(
        f,
        approx,
        p,
        sched,
        components,
        Vec::new(),
        RunFlags::default(),
    )
}

/// Block selection for `1 < q <= p <= 2`; the regime follows from `a` versus `2 beta`.
pub fn approx_small_q_le_p_le_2<T: Real>(
    f: &SpectralFunction<T>,
    m: usize,
    params: &SmoothnessParams,
) -> Result<ApproxResult<T>> {
    let regime = Regime::classify(params)?;
    if !matches!(
        regime,
        Regime::WabLarge | Regime::WabMid | Regime::WabCritical
    ) {
        return Err(Error::guard(regime.tag(), "1 < q <= p <= 2"));
    }
    let sched = make_schedule(m, params, regime)?;
    block_method(f, sched, params.p)
}

/// `a = r = 2 beta`: `S_{Q_n}(f)` plus blocks of `(n, N]` chosen by weighted budget selection
/// on `v_s = ||delta_s f||_p 2^{-|s|/p}` with weights `2^{|s|}` and budget `2^N`.
pub fn approx_weighted_critical<T: Real>(
    f: &SpectralFunction<T>,
    m: usize,
    params: &SmoothnessParams,
) -> Result<ApproxResult<T>> {
    let sched = make_schedule(m, params, Regime::WrCritical)?;
    weighted_method(f, sched, params)
}

fn weighted_method<T: Real>(
    f: &SpectralFunction<T>,
    sched: Schedule,
    params: &SmoothnessParams,
) -> Result<ApproxResult<T>> {
    let p = params.p;
    let blocks = f.blocks();
    let mut scores = Vec::new();
    for l in sched.n + 1..=sched.big_n {
        let w = 2f64.powi(l as i32);
        for s in compositions(l, params.d) {
            let v = match blocks.get(&s) {
                Some(b) => measured_norm(b, p)?.as_f64() * 2f64.powf(-f64::from(l) / p),
                None => 0.0,
            };
            scores.push(BlockScore::new(s, v, w)?);
        }
    }
    let sel = weighted_budget_select(&scores, sched.weight_budget.unwrap_or(0.0))?;
    let mut approx = f.cross_partial_sum(sched.n);
    let mut components = Components {
        partial_sum_terms: approx.len(),
        ..Default::default()
    };
    for s in &sel.shells {
        if let Some(b) = blocks.get(s) {
            approx.add_assign(b);
        }
    }
    components.selected_shells = sel.shells;
    let flags = RunFlags {
        exhausted: sel.exhausted,
        ..Default::default()
    };
    finish(f, approx, p, sched, components, Vec::new(), flags)
}

/// Splits `f - S_{Q_n}(f)` into the greedy target `g_A` (levels `(n, N]` plus, beyond `N`, the
/// `u_l` blocks of largest `L_2` norm) and the dropped remainder `g_0`.
pub fn split_ga_g0<T: Real>(
    f: &SpectralFunction<T>,
    sched: &Schedule,
) -> (SpectralFunction<T>, SpectralFunction<T>) {
    let mut ga = SpectralFunction::zero(f.dim());
    let mut g0 = SpectralFunction::zero(f.dim());
    for (l, fl) in f.levels() {
        if l <= sched.n {
            continue;
        }
        if l <= sched.big_n {
            ga.add_assign(&fl);
            continue;
        }
        let u = sched.budget(l) as usize;
        if u == 0 {
            g0.add_assign(&fl);
            continue;
        }
        let blocks = fl.blocks();
        let scores: Vec<BlockScore> = blocks
            .iter()
            .map(|(s, b)| BlockScore {
                shell: s.clone(),
                value: b.l2_coeff_norm().as_f64(),
                weight: 1.0,
            })
            .collect();
        let keep = top_blocks(&scores, u);
        for (s, b) in &blocks {
            if keep.binary_search(s).is_ok() {
                ga.add_assign(b);
            } else {
                g0.add_assign(b);
            }
        }
    }
    (ga, g0)
}

/// `S_{Q_n}(f) + G^p_{m/2}(g_A)` with `g_0` dropped.
fn two_part<T: Real>(
    f: &SpectralFunction<T>,
    sched: Schedule,
    p: f64,
    cfg: &WcgaConfig,
) -> Result<ApproxResult<T>> {
    let sq = f.cross_partial_sum(sched.n);
    let (ga, g0) = split_ga_g0(f, &sched);
    let mut components = Components {
        partial_sum_terms: sq.len(),
        dropped_norm: Some(norm_on(f, &g0, p).as_f64()),
        ..Default::default()
    };
    let mut approx = sq;
    let mut log = Vec::new();
    let mut flags = RunFlags::default();
    if !ga.is_zero() {
        let run_cfg = WcgaConfig {
            candidates: None,
            ..cfg.clone()
        };
        let g = wcga(&ga, sched.greedy_terms, p, &run_cfg)?;
        components.greedy_terms = g.m_used;
        components.greedy_error = Some(norm_on(f, &ga.minus(&g.terms), p).as_f64());
        approx.add_assign(&g.terms);
        log = g.log;
        flags = g.flags;
    } else {
        components.greedy_error = Some(0.0);
    }
    finish(f, approx, p, sched, components, log, flags)
}

/// `1 < q <= 2 < p < inf`: partial sum, greedy approximation of `g_A`, `g_0` dropped.
pub fn approx_p_gt_2<T: Real>(
    f: &SpectralFunction<T>,
    m: usize,
    params: &SmoothnessParams,
    cfg: &WcgaConfig,
) -> Result<ApproxResult<T>> {
    let regime = if (params.a - 1.0 / params.q).abs() <= CRITICAL_TOL {
        Regime::P3CriticalA
    } else {
        Regime::P3Main
    };
    let sched = make_schedule(m, params, regime)?;
    two_part(f, sched, params.p, cfg)
}

/// `q = 1`. For `p >= 2`: two-part greedy method (`a <= 1`) or per-level greedy runs with
/// geometrically decaying budgets (`a > 1`). For `p < 2`: block selection.
pub fn approx_q1<T: Real>(
    f: &SpectralFunction<T>,
    m: usize,
    params: &SmoothnessParams,
    cfg: &WcgaConfig,
) -> Result<ApproxResult<T>> {
    if params.q != 1.0 {
        return Err(Error::guard("Q1", format!("q = 1 (got q={})", params.q)));
    }
    let regime = Regime::classify(params)?;
    let sched = make_schedule(m, params, regime)?;
    q1_method(f, sched, params.p, cfg)
}

fn q1_method<T: Real>(
    f: &SpectralFunction<T>,
    sched: Schedule,
    p: f64,
    cfg: &WcgaConfig,
) -> Result<ApproxResult<T>> {
    let regime = sched.regime;
    if p < 2.0 {
        return block_method(f, sched, p);
    }
    if regime != Regime::Q1Large {
        return two_part(f, sched, p, cfg);
    }
    let mut approx = f.cross_partial_sum(sched.n);
    let mut components = Components {
        partial_sum_terms: approx.len(),
        ..Default::default()
    };
    let mut flags = RunFlags::default();
    let mut log = Vec::new();
    for (l, fl) in f.levels() {
        let b = sched.budget(l) as usize;
        if l <= sched.n || b == 0 {
            continue;
        }
        let g = wcga(
            &fl,
            b,
            p,
            &WcgaConfig {
                candidates: None,
                ..cfg.clone()
            },
        )?;
        components.greedy_terms += g.m_used;
        flags.non_converged |= g.flags.non_converged;
        approx.add_assign(&g.terms);
        log.extend(g.log);
    }
    finish(f, approx, p, sched, components, log, flags)
}

/// Dispatches on the regime implied by the parameters.
pub fn approx_auto<T: Real>(
    f: &SpectralFunction<T>,
    m: usize,
    params: &SmoothnessParams,
    cfg: &WcgaConfig,
) -> Result<ApproxResult<T>> {
    approx_regime(f, m, params, Regime::classify(params)?, cfg)
}

/// Runs the method of an explicitly chosen regime.
pub fn approx_regime<T: Real>(
    f: &SpectralFunction<T>,
    m: usize,
    params: &SmoothnessParams,
    regime: Regime,
    cfg: &WcgaConfig,
) -> Result<ApproxResult<T>> {
    regime.check_guard(params)?;
    approx_with_schedule(f, make_schedule(m, params, regime)?, params, cfg)
}

/// Runs the method of `sched.regime` with a prepared schedule, e.g. one from
/// [`make_schedule_at`](super::schedule::make_schedule_at) with `kappa` off the midpoint.
pub fn approx_with_schedule<T: Real>(
    f: &SpectralFunction<T>,
    sched: Schedule,
    params: &SmoothnessParams,
    cfg: &WcgaConfig,
) -> Result<ApproxResult<T>> {
    sched.regime.check_guard(params)?;
    match sched.regime {
        Regime::WabLarge | Regime::WabMid | Regime::WabCritical => block_method(f, sched, params.p),
        Regime::WrCritical => weighted_method(f, sched, params),
        Regime::P3Main | Regime::P3CriticalA => two_part(f, sched, params.p, cfg),
        Regime::Q1Large | Regime::Q1Mid | Regime::Q1Critical => q1_method(f, sched, params.p, cfg),
    }
}

/// `(sum_{|s| <= n} ||delta_s t||_p, 2^{beta n} ||t||_1)` with `beta = 1 - 1/p`.
pub fn diagnostic_lemma_l43<T: Real>(
    t: &SpectralFunction<T>,
    n: u32,
    p: f64,
) -> Result<(f64, f64)> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::invalid(format!("need 1 < p < inf, got {p}")));
    }
    if let Some(k) = t.iter().map(|(k, _)| k).find(|k| k.shell().l1() > n) {
        return Err(Error::invalid(format!("{k:?} lies outside Q_{n}")));
    }
    if t.is_zero() {
        return Ok((0.0, 0.0));
    }
    let mut lhs = 0.0;
    for b in t.blocks().values() {
        lhs += measured_norm(b, p)?.as_f64();
    }
    let l1 = measured_norm(t, 1.0)?.as_f64();
    Ok((lhs, 2f64.powf((1.0 - 1.0 / p) * f64::from(n)) * l1))
}
