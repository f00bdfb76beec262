//! Weak Chebyshev Greedy Algorithm over the trigonometric system in `L_p`, `2 <= p < inf`.
//!
//! Everything runs on one FFT grid: the residual lives on the grid, norming scores are the
//! Fourier coefficients of `|h|^{p-2} h`, and the Chebyshev step minimizes `mean |f - g|^p`
//! over the span of the chosen exponentials by damped Newton with conjugate-gradient inner
//! solves (Hessian-vector products cost two FFTs).

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::result::{ApproxResult, RunFlags, StepRecord};
use crate::scalar::{Cplx, Real};
use crate::spectral::{FrequencyIndex, GridPlan, SpectralFunction, DEFAULT_OVERSAMPLE};

/// Exponent used in place of `p = inf`; errors are then reported as grid maxima.
pub const SUP_SURROGATE_P: f64 = 64.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct WcgaConfig {
    /// Weakness parameter `t`: any candidate scoring at least `t * max` may be chosen.
    pub weakness: f64,
    /// Newton iterations per projection.
    pub max_iterations: usize,
    /// Stop once the relative decrease of the `L_p` residual falls below this.
    pub tolerance: f64,
    /// Conjugate-gradient iterations per Newton step.
    pub cg_iterations: usize,
    /// Per-axis grid oversampling. 2 makes every quantity exact for `p = 4`.
    pub oversample: usize,
    /// Candidate frequencies; `None` means the support of the target.
    pub candidates: Option<Vec<FrequencyIndex>>,
}

impl Default for WcgaConfig {
    fn default() -> Self {
        Self {
            weakness: 1.0,
            max_iterations: 200,
            tolerance: 1e-8,
            cg_iterations: 60,
            oversample: 2,
            candidates: None,
        }
    }
}

impl WcgaConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.weakness > 0.0 && self.weakness <= 1.0) {
            return Err(Error::invalid(format!(
                "weakness must lie in (0, 1], got {}",
                self.weakness
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::invalid("projection tolerance must be positive"));
        }
        if self.oversample < 2 {
            return Err(Error::invalid("oversample must be at least 2"));
        }
        Ok(())
    }
}

fn check_p(p: f64) -> Result<f64> {
    if p.is_infinite() {
        return Ok(SUP_SURROGATE_P);
    }
    if !(p >= 2.0) {
        return Err(Error::invalid(format!(
            "greedy approximation needs p >= 2, got {p}"
        )));
    }
    Ok(p)
}

/// Outcome of a Chebyshev projection.
#[derive(Clone, Debug)]
pub struct Projection<T: Real> {
    pub g: SpectralFunction<T>,
    /// `||f - g||_p` on the projection grid.
    pub error: T,
    pub iterations: usize,
    pub converged: bool,
}

/// Residual `F - sum c_k e_k` of a target sampled on a grid.
struct Engine<'a, T: Real> {
    plan: &'a GridPlan<T>,
    p: f64,
    positions: Vec<usize>,
    coeffs: Vec<Cplx<T>>,
    residual: Vec<Cplx<T>>,
    work: Vec<Cplx<T>>,
}

struct Stats {
    iterations: usize,
    converged: bool,
}

impl<'a, T: Real> Engine<'a, T> {
    fn new(plan: &'a GridPlan<T>, f: &SpectralFunction<T>, p: f64) -> Self {
        let residual = plan.synthesize(f).samples;
        Self {
            plan,
            p,
            positions: Vec::new(),
            coeffs: Vec::new(),
            residual,
            work: Vec::new(),
        }
    }

    fn max_abs(&self) -> T {
        self.residual.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    /// `||residual||_p` (grid maximum for the sup surrogate is reported separately).
    fn error(&self) -> T {
        crate::spectral::grid::mean_power_norm(&self.residual, self.p)
    }

    fn sup_error(&self) -> T {
        self.max_abs()
    }

    fn push(&mut self, pos: usize) {
        self.positions.push(pos);
        self.coeffs.push(Cplx::zero());
    }

    fn gather(&self, buf: &[Cplx<T>]) -> Vec<Cplx<T>> {
        self.positions.iter().map(|&i| buf[i]).collect()
    }

    fn synth(&mut self, v: &[Cplx<T>]) -> Vec<Cplx<T>> {
        let mut out = std::mem::take(&mut self.work);
        self.plan.synthesize_indexed(&self.positions, v, &mut out);
        out
    }

    /// Fourier coefficients of `|h/s|^{p-2} h` over the whole grid, `s = max |h|`.
    fn dual_spectrum(&self, scale: T) -> Vec<Cplx<T>> {
        let e = T::lit(self.p - 2.0);
        let mut buf: Vec<Cplx<T>> = self
            .residual
            .iter()
            .map(|h| {
                let a = h.norm() / scale;
                if a == T::zero() {
                    Cplx::zero()
                } else {
                    *h * a.powf(e)
                }
            })
            .collect();
        self.plan.forward_in_place(&mut buf);
        buf
    }

    fn scaled_power_mean(&self, h: &[Cplx<T>], scale: T) -> T {
        let pt = T::lit(self.p);
        let s = h
            .iter()
            .fold(T::zero(), |a, v| a + (v.norm() / scale).powf(pt));
        s / T::from_count(h.len())
    }

    /// Damped Newton on `mean |F - G|^p` over the current coefficients.
    fn project(&mut self, cfg: &WcgaConfig) -> Stats {
        let p = self.p;
        let pt = T::lit(p);
        let n = self.positions.len();
        let mut stats = Stats {
            iterations: 0,
            converged: false,
        };
        if n == 0 {
            stats.converged = true;
            return stats;
        }
        let mut g0_norm: Option<T> = None;
        for it in 0..cfg.max_iterations {
            stats.iterations = it + 1;
            let scale = self.max_abs();
            if scale == T::zero() {
                stats.converged = true;
                break;
            }
            let before = self.error();
            // weights |h/s|^{p-2} and the unit phase field h/|h|
            let e = T::lit(p - 2.0);
            let w: Vec<T> = self
                .residual
                .iter()
                .map(|h| (h.norm() / scale).powf(e))
                .collect();
            let mut buf: Vec<Cplx<T>> = self
                .residual
                .iter()
                .zip(&w)
                .map(|(h, &wi)| *h * wi)
                .collect();
            self.plan.forward_in_place(&mut buf);
            let grad: Vec<Cplx<T>> = self.gather(&buf).into_iter().map(|u| -u * pt).collect();
            let gnorm = dot(&grad, &grad).sqrt();
            let gref = *g0_norm.get_or_insert(gnorm);
            if gnorm == T::zero() {
                stats.converged = true;
                break;
            }
            let mean_w = w.iter().fold(T::zero(), |a, &x| a + x) / T::from_count(w.len());
            let damping = pt * mean_w * T::lit(1e-10);
            let eta = T::lit(0.1).min((gnorm / gref).max(T::lit(1e-6)));
            let (delta, v_delta) =
                self.newton_direction(&grad, &w, damping, eta, cfg.cg_iterations);
            self.work = buf;

            // Armijo backtracking along delta; v_delta is its grid synthesis
            let phi0 = self.scaled_power_mean(&self.residual, scale);
            let slope = dot(&grad, &delta);
            let mut alpha = T::one();
            let mut trial = vec![Cplx::zero(); self.residual.len()];
            let mut accepted = false;
            for _ in 0..40 {
                for ((t, h), v) in trial.iter_mut().zip(&self.residual).zip(&v_delta) {
                    *t = *h - *v * alpha;
                }
                let phi = self.scaled_power_mean(&trial, scale);
                if phi <= phi0 + T::lit(1e-4) * alpha * slope.min(T::zero()) && phi <= phi0 {
                    accepted = true;
                    break;
                }
                alpha = alpha * T::lit(0.5);
            }
            if !accepted {
                // no descent possible at working precision
                stats.converged = true;
                break;
            }
            for (c, d) in self.coeffs.iter_mut().zip(&delta) {
                *c += *d * alpha;
            }
            self.residual = trial;
            let after = self.error();
            if before == T::zero() || (before - after) <= T::lit(cfg.tolerance) * before {
                stats.converged = true;
                break;
            }
        }
        stats
    }

    /// Inexact Newton direction by CG on `(H + damping) x = -grad` in the real inner product.
    /// Returns the direction and its grid synthesis.
    fn newton_direction(
        &mut self,
        grad: &[Cplx<T>],
        w: &[T],
        damping: T,
        eta: T,
        max_cg: usize,
    ) -> (Vec<Cplx<T>>, Vec<Cplx<T>>) {
        let n = grad.len();
        let mut x = vec![Cplx::zero(); n];
        let mut xv = vec![Cplx::zero(); self.residual.len()];
        let mut r: Vec<Cplx<T>> = grad.iter().map(|g| -*g).collect();
        let mut d = r.clone();
        let mut rr = dot(&r, &r);
        let stop = eta * eta * rr;
        for _ in 0..max_cg.max(1) {
            let dv = self.synth(&d);
            let hd = self.hessian_apply(&dv, w, &d, damping);
            let dhd = dot(&d, &hd);
            if !(dhd > T::zero()) {
                self.work = dv;
                break;
            }
            let a = rr / dhd;
            for i in 0..n {
                x[i] += d[i] * a;
                r[i] -= hd[i] * a;
            }
            for (xs, ds) in xv.iter_mut().zip(&dv) {
                *xs += *ds * a;
            }
            self.work = dv;
            let rr_new = dot(&r, &r);
            if rr_new <= stop {
                break;
            }
            let b = rr_new / rr;
            for i in 0..n {
                d[i] = r[i] + d[i] * b;
            }
            rr = rr_new;
        }
        if x.iter().all(|c| c.is_zero()) {
            // CG broke down on the first step: fall back to steepest descent
            x = grad.iter().map(|g| -*g).collect();
            xv = self.synth(&x);
            let back = xv.clone();
            self.work = back;
        }
        (x, xv)
    }

    /// Hessian of `mean |h|^p` (scaled) applied to a direction with grid values `v`.
    fn hessian_apply(&self, v: &[Cplx<T>], w: &[T], dir: &[Cplx<T>], damping: T) -> Vec<Cplx<T>> {
        let pt = T::lit(self.p);
        let pp = pt * T::lit(self.p - 2.0);
        let mut buf: Vec<Cplx<T>> = self
            .residual
            .iter()
            .zip(v)
            .zip(w)
            .map(|((h, vi), &wi)| {
                let a2 = h.norm_sqr();
                let mut out = *vi * (pt * wi);
                if a2 > T::zero() {
                    let re = (h.conj() * *vi).re;
                    out += *h * (pp * wi * re / a2);
                }
                out
            })
            .collect();
        self.plan.forward_in_place(&mut buf);
        self.gather(&buf)
            .into_iter()
            .zip(dir)
            .map(|(u, di)| u + *di * damping)
            .collect()
    }

    fn terms(&self, support: &[FrequencyIndex], dim: usize) -> SpectralFunction<T> {
        let mut g = SpectralFunction::zero(dim);
        for (k, c) in support.iter().zip(&self.coeffs) {
            g.set(k.clone(), *c);
        }
        g
    }
}

/// Real inner product `Re sum conj(a_i) b_i`.
fn dot<T: Real>(a: &[Cplx<T>], b: &[Cplx<T>]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |s, (x, y)| s + x.re * y.re + x.im * y.im)
}

fn grid_for<T: Real>(
    f: &SpectralFunction<T>,
    extra: &[FrequencyIndex],
    oversample: usize,
) -> GridPlan<T> {
    let mut mx = f.max_abs_per_axis();
    for k in extra {
        for (m, c) in mx.iter_mut().zip(k.coords()) {
            *m = (*m).max(c.abs());
        }
    }
    GridPlan::for_max_freq(&mx, oversample)
}

/// `|<u, e^{i(k,x)}>|` for `u = |h|^{p-2} h`: the norming-functional scores of a residual.
pub fn norming_scores<T: Real>(
    residual: &SpectralFunction<T>,
    p: f64,
    candidates: &[FrequencyIndex],
) -> Result<BTreeMap<FrequencyIndex, T>> {
    norming_scores_with(residual, p, candidates, DEFAULT_OVERSAMPLE)
}

pub fn norming_scores_with<T: Real>(
    residual: &SpectralFunction<T>,
    p: f64,
    candidates: &[FrequencyIndex],
    oversample: usize,
) -> Result<BTreeMap<FrequencyIndex, T>> {
    let p = check_p(p)?;
    if residual.is_zero() {
        return Err(Error::invalid("norming scores of the zero residual"));
    }
    if p == 2.0 {
        return Ok(candidates
            .iter()
            .map(|k| (k.clone(), residual.get(k).norm()))
            .collect());
    }
    let plan = grid_for(residual, candidates, oversample.max(2));
    let engine = Engine::new(&plan, residual, p);
    let scale = engine.max_abs();
    let spec = engine.dual_spectrum(scale);
    let unscale = scale.powf(T::lit(p - 2.0));
    Ok(candidates
        .iter()
        .map(|k| (k.clone(), spec[plan.flat_index(k)].norm() * unscale))
        .collect())
}

/// Best `L_p` approximation of `f` from the span of `{e^{i(k,x)} : k in support}`.
pub fn chebyshev_project<T: Real>(
    f: &SpectralFunction<T>,
    support: &[FrequencyIndex],
    p: f64,
    cfg: &WcgaConfig,
) -> Result<Projection<T>> {
    let p = check_p(p)?;
    cfg.validate()?;
    if support.is_empty() {
        return Err(Error::invalid("projection support is empty"));
    }
    let support: Vec<FrequencyIndex> = support
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if p == 2.0 {
        let g = f.restrict(&support);
        let error = f.minus(&g).l2_coeff_norm();
        return Ok(Projection {
            g,
            error,
            iterations: 0,
            converged: true,
        });
    }
    let plan = grid_for(f, &support, cfg.oversample);
    let mut engine = Engine::new(&plan, f, p);
    for k in &support {
        engine.push(plan.flat_index(k));
    }
    let stats = engine.project(cfg);
    Ok(Projection {
        g: engine.terms(&support, f.dim()),
        error: engine.error(),
        iterations: stats.iterations,
        converged: stats.converged,
    })
}

fn error_tag(p: f64) -> String {
    if p.is_infinite() {
        "Linf".to_string()
    } else {
        format!("L{p}")
    }
}

/// `m` steps of the WCGA in `L_p`. For `p = 2` this is exact keep-largest selection.
pub fn wcga<T: Real>(
    f: &SpectralFunction<T>,
    m: usize,
    p: f64,
    cfg: &WcgaConfig,
) -> Result<ApproxResult<T>> {
    let p_run = check_p(p)?;
    cfg.validate()?;
    let mut candidates: Vec<FrequencyIndex> = match &cfg.candidates {
        Some(c) => c.clone(),
        None => f.support(),
    };
    candidates.sort();
    candidates.dedup();
    if let Some(k) = f
        .support()
        .into_iter()
        .find(|k| candidates.binary_search(k).is_err())
    {
        return Err(Error::invalid(format!(
            "candidate set misses support frequency {k:?}"
        )));
    }
    if p_run == 2.0 {
        return Ok(wcga_l2(f, m, cfg.weakness, &candidates));
    }

    let plan = grid_for(f, &candidates, cfg.oversample);
    let mut engine = Engine::new(&plan, f, p_run);
    let positions: Vec<usize> = candidates.iter().map(|k| plan.flat_index(k)).collect();
    let mut chosen = vec![false; candidates.len()];
    let mut support: Vec<FrequencyIndex> = Vec::new();
    let mut log = Vec::new();
    let mut flags = RunFlags::default();
    let f_norm = engine.error();
    for step in 1..=m {
        let scale = engine.max_abs();
        if scale == T::zero() || engine.error() <= f_norm * T::lit(1e-13) {
            flags.exact = true;
            break;
        }
        let spec = engine.dual_spectrum(scale);
        let scores: Vec<T> = positions
            .iter()
            .zip(&chosen)
            .map(|(&pos, &c)| if c { T::zero() } else { spec[pos].norm() })
            .collect();
        let best = scores.iter().fold(T::zero(), |a, &b| a.max(b));
        if best == T::zero() {
            flags.exact = true;
            break;
        }
        let threshold = best * T::lit(cfg.weakness);
        let idx = scores
            .iter()
            .position(|&s| s >= threshold)
            .expect("maximum exists");
        chosen[idx] = true;
        support.push(candidates[idx].clone());
        engine.push(positions[idx]);
        let stats = engine.project(cfg);
        if !stats.converged {
            flags.non_converged = true;
        }
        log.push(StepRecord {
            step,
            frequency: candidates[idx].coords().to_vec(),
            score: (scores[idx] * scale.powf(T::lit(p_run - 2.0))).as_f64(),
            error: if p.is_infinite() {
                engine.sup_error()
            } else {
                engine.error()
            }
            .as_f64(),
            projection_iterations: stats.iterations,
        });
    }
    let terms = engine.terms(&support, f.dim());
    let mut errors = BTreeMap::new();
    let err = if p.is_infinite() {
        engine.sup_error()
    } else {
        engine.error()
    };
    errors.insert(error_tag(p), err.as_f64());
    errors.insert("L2".to_string(), f.minus(&terms).l2_coeff_norm().as_f64());
    let n_terms = support.len();
    Ok(ApproxResult::new(terms, n_terms, errors, log, flags))
}

/// Keep-largest selection with the same weakness and tie rules as the general loop.
fn wcga_l2<T: Real>(
    f: &SpectralFunction<T>,
    m: usize,
    weakness: f64,
    candidates: &[FrequencyIndex],
) -> ApproxResult<T> {
    let mods: Vec<T> = candidates.iter().map(|k| f.get(k).norm()).collect();
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by(|&a, &b| {
        mods[b]
            .partial_cmp(&mods[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut chosen = vec![false; candidates.len()];
    let mut selected = Vec::new();
    let mut flags = RunFlags::default();
    let mut log = Vec::new();
    let total_sq = f.l2_coeff_norm().powi(2);
    let mut kept_sq = T::zero();
    let mut cursor = 0;
    for step in 1..=m {
        while cursor < order.len() && chosen[order[cursor]] {
            cursor += 1;
        }
        let best = if cursor < order.len() {
            mods[order[cursor]]
        } else {
            T::zero()
        };
        if best == T::zero() {
            flags.exact = true;
            break;
        }
        let idx = if weakness >= 1.0 {
            order[cursor]
        } else {
            let th = best * T::lit(weakness);
            (0..candidates.len())
                .find(|&i| !chosen[i] && mods[i] >= th)
                .expect("maximum exists")
        };
        chosen[idx] = true;
        selected.push(idx);
        kept_sq += mods[idx] * mods[idx];
        log.push(StepRecord {
            step,
            frequency: candidates[idx].coords().to_vec(),
            score: mods[idx].as_f64(),
            error: (total_sq - kept_sq).max(T::zero()).sqrt().as_f64(),
            projection_iterations: 0,
        });
    }
    let support: Vec<FrequencyIndex> = selected.iter().map(|&i| candidates[i].clone()).collect();
    let terms = f.restrict(&support);
    let err = f.minus(&terms).l2_coeff_norm().as_f64();
    let mut errors = BTreeMap::new();
    errors.insert("L2".to_string(), err);
    ApproxResult::new(terms, selected.len(), errors, log, flags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::lp_norm;

    fn k1(k: i64) -> FrequencyIndex {
        FrequencyIndex::new(&[k])
    }

    fn c(re: f64, im: f64) -> Cplx<f64> {
        Cplx::new(re, im)
    }

    #[test]
    fn p2_keep_largest() {
        let f = SpectralFunction::from_entries(
            1,
            vec![
                (k1(0), c(3.0, 0.0)),
                (k1(1), c(0.0, 2.0)),
                (k1(2), c(-1.0, 0.0)),
            ],
        )
        .unwrap();
        let r = wcga(&f, 1, 2.0, &WcgaConfig::default()).unwrap();
        assert!((r.errors["L2"] - 5f64.sqrt()).abs() < 1e-14);
        let r0 = wcga(&f, 0, 2.0, &WcgaConfig::default()).unwrap();
        assert!((r0.errors["L2"] - 14f64.sqrt()).abs() < 1e-14);
        assert!(r0.terms.is_empty());
        let all = wcga(&f, 5, 2.0, &WcgaConfig::default()).unwrap();
        assert!(all.flags.exact && all.m_used == 3);
    }

    #[test]
    fn scores_p2_are_moduli_and_single_exponential_peaks() {
        let f =
            SpectralFunction::from_entries(1, vec![(k1(-2), c(0.5, 0.5)), (k1(3), c(1.0, 0.0))])
                .unwrap();
        let cand: Vec<_> = (-4..=4).map(k1).collect();
        let s = norming_scores(&f, 2.0, &cand).unwrap();
        assert_eq!(s[&k1(-2)], c(0.5, 0.5).norm());
        let e = SpectralFunction::monomial(k1(2), c(0.0, 2.0));
        let s4 = norming_scores(&e, 4.0, &cand).unwrap();
        let (arg, _) = s4.iter().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
        assert_eq!(*arg, k1(2));
        assert!(norming_scores(&SpectralFunction::<f64>::zero(1), 4.0, &cand).is_err());
    }

    #[test]
    fn scores_match_direct_quadrature() {
        let f = SpectralFunction::from_entries(
            1,
            vec![
                (k1(-1), c(0.3, -0.2)),
                (k1(0), c(0.1, 0.0)),
                (k1(2), c(-0.4, 0.7)),
                (k1(3), c(0.2, 0.2)),
            ],
        )
        .unwrap();
        let cand: Vec<_> = (-6..=6).map(k1).collect();
        let s = norming_scores(&f, 4.0, &cand).unwrap();
        // dense midpoint rule, exact for polynomials of degree < M
        let m = 997;
        for k in &cand {
            let mut acc = Cplx::new(0.0, 0.0);
            for j in 0..m {
                let x = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
                let h = f.eval(&[x]);
                acc += h.conj() * h.norm_sqr() * Cplx::from_polar(1.0, k.coords()[0] as f64 * x);
            }
            acc /= m as f64;
            assert!((acc.norm() - s[k]).abs() < 1e-12, "{k:?}");
        }
    }

    #[test]
    fn projection_examples() {
        let f = SpectralFunction::from_entries(
            1,
            vec![
                (k1(0), c(1.0, 0.0)),
                (k1(1), c(1.0, 0.0)),
                (k1(5), c(1.0, 0.0)),
            ],
        )
        .unwrap();
        let cfg = WcgaConfig::default();
        let p2 = chebyshev_project(&f, &[k1(0), k1(1)], 2.0, &cfg).unwrap();
        assert!(p2.g.same_as(&f.restrict(&[k1(0), k1(1)])));
        let full = chebyshev_project(&f, &[k1(0), k1(1), k1(5), k1(7)], 4.0, &cfg).unwrap();
        assert!(full.error < 1e-8);
        let pr = chebyshev_project(&f, &[k1(0), k1(1)], 4.0, &cfg).unwrap();
        assert!(pr.converged);
        assert!(pr.error <= 1.0 + 1e-12);
        let direct = lp_norm(&f.minus(&pr.g), 4.0, 4).unwrap();
        assert!((direct - pr.error).abs() < 1e-10);
    }

    #[test]
    fn wcga_p4_monotone_and_exact_in_the_limit() {
        let f = SpectralFunction::from_entries(
            1,
            (-6..=6i64).map(|k| {
                (
                    k1(k),
                    c(1.0 / (1.0 + k.abs() as f64), 0.3 * (k as f64).sin()),
                )
            }),
        )
        .unwrap();
        let r = wcga(&f, 13, 4.0, &WcgaConfig::default()).unwrap();
        for w in r.log.windows(2) {
            assert!(w[1].error <= w[0].error * (1.0 + 1e-12));
        }
        assert!(r.errors["L4"] < 1e-8 * lp_norm(&f, 4.0, 4).unwrap());
        assert!(!r.flags.non_converged);
    }

    #[test]
    fn f32_runs() {
        let f = SpectralFunction::<f32>::from_entries(
            1,
            (-5..=5i64).map(|k| (k1(k), Cplx::new(1.0 / (1.0 + k.abs() as f32), 0.0))),
        )
        .unwrap();
        let cfg = WcgaConfig {
            tolerance: 1e-5,
            ..Default::default()
        };
        let r = wcga(&f, 4, 4.0, &cfg).unwrap();
        assert_eq!(r.m_used, 4);
        assert!(r.errors["L4"] < lp_norm(&f, 4.0, 4).unwrap() as f64);
    }
}
