use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::greedy::{wcga, WcgaConfig};
use crate::kernels::KernelSpec;
use crate::pipelines::{approx_with_schedule, make_schedule_at, split_ga_g0, Regime};
use crate::result::ApproxResult;
use crate::scalar::Real;
use crate::spectral::{measured_norm, SmoothnessParams, SpectralFunction};

use super::fit::{fit_slope, SlopeFit, Window};
use super::oracle::l2_oracle;

pub const CSV_HEADER: &str = "regime,q,p,a,b,d,seed,m,m_used,norm,error,seconds";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// The regime's constructive method.
    #[default]
    Pipeline,
    /// Plain greedy algorithm with `m` steps.
    Wcga,
    /// Best `m`-term `L_2` approximation.
    Oracle,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Precision {
    #[default]
    F64,
    F32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub method: Method,
    /// Regime override; inferred from `params` when absent.
    #[serde(default)]
    pub regime: Option<Regime>,
    pub params: SmoothnessParams,
    pub kernel: KernelSpec,
    pub m_grid: Vec<usize>,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub wcga: WcgaConfig,
    #[serde(default)]
    pub precision: Precision,
    /// Wall time per row; off by default so reruns are byte-identical.
    #[serde(default)]
    pub record_timing: bool,
    /// Thread count for the row pool (0 = rayon default).
    #[serde(default)]
    pub jobs: usize,
    #[serde(default)]
    pub window: Window,
    /// Relative position of `kappa` inside its admissible interval.
    #[serde(default = "half")]
    pub kappa_position: f64,
}

fn half() -> f64 {
    0.5
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m_grid.is_empty() || self.m_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(
                "m-grid must be nonempty and strictly increasing",
            ));
        }
        if !(self.kappa_position > 0.0 && self.kappa_position < 1.0) {
            return Err(Error::invalid(format!(
                "kappa_position must lie in (0, 1), got {}",
                self.kappa_position
            )));
        }
        if self.seeds.is_empty() {
            return Err(Error::invalid("at least one seed is required"));
        }
        self.wcga.validate()
    }

    pub fn regime(&self) -> Result<Regime> {
        match self.regime {
            Some(r) => Ok(r),
            None => Regime::classify(&self.params),
        }
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let js = serde_json::to_string(self).expect("serializable");
        let digest = Sha256::digest(js.as_bytes());
        digest.iter().take(8).fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }
}

/// One `(m, seed)` run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateRow {
    pub regime: String,
    pub q: f64,
    pub p: f64,
    pub a: f64,
    pub b: f64,
    pub d: usize,
    pub seed: u64,
    pub m: usize,
    pub m_used: usize,
    pub norm: String,
    pub error: f64,
    pub seconds: f64,
    /// `L_2` error of the same approximant.
    pub l2_error: f64,
    /// `sigma_{m_used}(f)_2`.
    pub oracle_l2: f64,
    pub declared_terms: usize,
    /// `g_A + g_0 + S_{Q_n}(f) = f` coefficientwise, when the run has a schedule.
    pub split_exact: Option<bool>,
    /// Measured error at most `||g_0||_p + greedy error` (two-part methods).
    pub dominance_ok: Option<bool>,
    pub non_converged: bool,
    pub failure: Option<String>,
}

impl RateRow {
    /// The approximant's `L_2` error is not below the best `m_used`-term error.
    pub fn oracle_dominance(&self) -> bool {
        self.l2_error >= self.oracle_l2 * (1.0 - 1e-12) - 1e-15
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateTable {
    pub rows: Vec<RateRow>,
    pub config: RunConfig,
    pub config_hash: String,
}

impl RateTable {
    /// `(m, max error over seeds)`, failed rows skipped.
    pub fn aggregate_max(&self) -> Vec<(usize, f64)> {
        let mut out: BTreeMap<usize, f64> = BTreeMap::new();
        for r in self.rows.iter().filter(|r| r.failure.is_none()) {
            let e = out.entry(r.m).or_insert(0.0);
            *e = e.max(r.error);
        }
        out.into_iter().collect()
    }

    pub fn fit(&self) -> Result<SlopeFit> {
        fit_slope(self, self.config.window)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from(CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{},{:e},{}",
                r.regime,
                r.q,
                r.p,
                r.a,
                r.b,
                r.d,
                r.seed,
                r.m,
                r.m_used,
                r.norm,
                r.error,
                r.seconds
            );
        }
        s
    }

    /// Metadata record: config, hash, fitted slope and per-row diagnostics.
    pub fn metadata_json(&self) -> String {
        let fit = self.fit().ok();
        let v = serde_json::json!({
            "config": self.config,
            "config_hash": self.config_hash,
            "fit": fit,
            "rows": self.rows,
        });
        serde_json::to_string_pretty(&v).expect("serializable")
    }
}

fn norm_tag(p: f64) -> String {
    if p.is_infinite() {
        "Linf".into()
    } else {
        format!("L{p}")
    }
}

fn run_one<T: Real>(
    cfg: &RunConfig,
    regime: Regime,
    f: &SpectralFunction<T>,
    m: usize,
) -> Result<ApproxResult<T>> {
    match cfg.method {
        Method::Pipeline => approx_with_schedule(
            f,
            make_schedule_at(m, &cfg.params, regime, cfg.kappa_position)?,
            &cfg.params,
            &cfg.wcga,
        ),
        Method::Wcga => wcga(f, m, cfg.params.p, &cfg.wcga),
        Method::Oracle => {
            let (_, support) = l2_oracle(f, m);
            let terms = f.restrict(&support);
            let diff = f.minus(&terms);
            let mut errors = BTreeMap::new();
            errors.insert("L2".to_string(), diff.l2_coeff_norm().as_f64());
            if cfg.params.p != 2.0 {
                errors.insert(
                    norm_tag(cfg.params.p),
                    measured_norm(&diff, cfg.params.p)?.as_f64(),
                );
            }
            let n = terms.len();
            Ok(ApproxResult::new(
                terms,
                n,
                errors,
                Vec::new(),
                Default::default(),
            ))
        }
    }
}

fn row<T: Real>(
    cfg: &RunConfig,
    regime: Regime,
    f: &SpectralFunction<T>,
    seed: u64,
    m: usize,
) -> RateRow {
    let pr = &cfg.params;
    let tag = match cfg.method {
        Method::Oracle if pr.p == 2.0 => "L2".to_string(),
        _ => norm_tag(pr.p),
    };
    let label = match cfg.method {
        Method::Pipeline => regime.tag().to_string(),
        Method::Wcga => "wcga".to_string(),
        Method::Oracle => "oracle".to_string(),
    };
    let mut out = RateRow {
        regime: label,
        q: pr.q,
        p: pr.p,
        a: pr.a,
        b: pr.b,
        d: pr.d,
        seed,
        m,
        m_used: 0,
        norm: tag.clone(),
        error: f64::NAN,
        seconds: 0.0,
        l2_error: f64::NAN,
        oracle_l2: f64::NAN,
        declared_terms: 0,
        split_exact: None,
        dominance_ok: None,
        non_converged: false,
        failure: None,
    };
    let start = Instant::now();
    let res = run_one(cfg, regime, f, m);
    let elapsed = start.elapsed().as_secs_f64();
    match res {
        Err(e) => out.failure = Some(e.to_string()),
        Ok(r) => {
            out.m_used = r.m_used;
            out.declared_terms = r.declared_terms;
            out.error = r.errors.get(&tag).copied().unwrap_or(f64::NAN);
            out.l2_error = r.errors.get("L2").copied().unwrap_or(f64::NAN);
            out.oracle_l2 = l2_oracle(f, r.m_used).0.as_f64();
            out.non_converged = r.flags.non_converged;
            if let Some(s) = &r.schedule {
                let (ga, g0) = split_ga_g0(f, s);
                out.split_exact = Some(ga.plus(&g0).plus(&f.cross_partial_sum(s.n)).same_as(f));
                if let (Some(g), Some(dn)) = (r.components.greedy_error, r.components.dropped_norm)
                {
                    out.dominance_ok = Some(out.error <= dn + g + 1e-9);
                }
            }
            if cfg.record_timing {
                out.seconds = elapsed;
            }
        }
    }
    out
}

fn sweep_typed<T: Real>(cfg: &RunConfig, regime: Regime) -> Result<Vec<RateRow>> {
    let per_seed: Vec<Result<Vec<RateRow>>> = cfg
        .seeds
        .par_iter()
        .map(|&seed| {
            let spec = cfg.kernel.with_seed(seed);
            let f: SpectralFunction<T> = spec.generate()?;
            Ok(cfg
                .m_grid
                .par_iter()
                .map(|&m| row(cfg, regime, &f, seed, m))
                .collect())
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_seed {
        rows.extend(r?);
    }
    rows.sort_by(|a, b| (a.m, a.seed).cmp(&(b.m, b.seed)));
    Ok(rows)
}

/// Runs every `(m, seed)` pair of the config. Row failures are recorded, not raised.
pub fn rate_sweep(cfg: &RunConfig) -> Result<RateTable> {
    cfg.validate()?;
    let regime = cfg.regime()?;
    if cfg.method == Method::Pipeline {
        regime.check_guard(&cfg.params)?;
    }
    let work = || match cfg.precision {
        Precision::F64 => sweep_typed::<f64>(cfg, regime),
        Precision::F32 => sweep_typed::<f32>(cfg, regime),
    };
    let rows = if cfg.jobs > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::invalid(e.to_string()))?;
        pool.install(work)?
    } else {
        work()?
    };
    Ok(RateTable {
        rows,
        config: cfg.clone(),
        config_hash: cfg.hash(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{SampleLaw, SampleSupport};

    fn cfg(method: Method) -> RunConfig {
        let params = SmoothnessParams::w(2.0, 2.0, 0.8, 1);
        RunConfig {
            name: "t".into(),
            method,
            regime: None,
            params,
            kernel: KernelSpec::ClassSample {
                params,
                support: SampleSupport::Cross(64),
                law: SampleLaw::Iid,
                seed: None,
            },
            m_grid: vec![16, 32],
            seeds: vec![1],
            wcga: WcgaConfig::default(),
            precision: Precision::F64,
            record_timing: false,
            jobs: 1,
            window: Window::All,
            kappa_position: 0.5,
        }
    }

    #[test]
    fn rows_and_determinism() {
        let c = cfg(Method::Oracle);
        let t = rate_sweep(&c).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert_eq!(t.to_csv(), rate_sweep(&c).unwrap().to_csv());
        assert!(t.to_csv().starts_with(CSV_HEADER));
    }

    #[test]
    fn oracle_method_matches_l2_oracle() {
        let c = cfg(Method::Oracle);
        let t = rate_sweep(&c).unwrap();
        let f: SpectralFunction<f64> = c.kernel.with_seed(1).generate().unwrap();
        for r in &t.rows {
            let o = l2_oracle(&f, r.m).0;
            assert!((r.error - o).abs() <= 1e-14 * o);
        }
        let w = rate_sweep(&cfg(Method::Wcga)).unwrap();
        for (a, b) in w.rows.iter().zip(&t.rows) {
            assert!((a.error - b.error).abs() <= 1e-12 * b.error.max(1e-300));
        }
    }

    #[test]
    fn bad_grid_rejected() {
        let mut c = cfg(Method::Oracle);
        c.m_grid = vec![32, 16];
        assert!(rate_sweep(&c).is_err());
    }
}
