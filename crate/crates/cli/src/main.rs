use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde::Deserialize;

use trigreedy::bench::{l2_oracle, rate_sweep, run_suite, Method, RunConfig, Suite, CSV_HEADER};
use trigreedy::greedy::wcga;
use trigreedy::kernels::KernelSpec;
use trigreedy::pipelines::{approx_with_schedule, make_schedule_at};
use trigreedy::{Error, Regime, SmoothnessParams, SpectralFunction64, WcgaConfig};

#[derive(Parser)]
#[command(
    name = "trigreedy",
    version,
    about = "Greedy m-term trigonometric approximation experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON config for the subcommand.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (created if missing).
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Overrides the seed of random kernels (and the seed list of `rates`).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a kernel or class sample; config is a kernel spec.
    Gen,
    /// One approximation run.
    Approx,
    /// Rate sweep to CSV plus JSON metadata.
    Rates,
    /// Best m-term L2 approximation.
    Oracle,
    /// Invariant suites.
    Check {
        /// Run only this suite.
        #[arg(long)]
        suite: Option<String>,
    },
}

/// Target function: a kernel spec or a path to a function JSON file.
#[derive(Deserialize)]
struct Source {
    #[serde(default)]
    kernel: Option<KernelSpec>,
    #[serde(default)]
    function: Option<PathBuf>,
}

#[derive(Deserialize)]
struct ApproxConfig {
    #[serde(flatten)]
    source: Source,
    m: usize,
    params: SmoothnessParams,
    #[serde(default)]
    regime: Option<Regime>,
    #[serde(default)]
    method: Method,
    #[serde(default)]
    wcga: WcgaConfig,
    /// Position of `kappa` inside its admissible interval.
    #[serde(default = "half")]
    kappa_position: f64,
}

fn half() -> f64 {
    0.5
}

#[derive(Deserialize)]
struct OracleConfig {
    #[serde(flatten)]
    source: Source,
    m: usize,
}

fn read_config<T: for<'de> Deserialize<'de>>(path: &Option<PathBuf>) -> anyhow::Result<T> {
    let path = path
        .as_ref()
        .context("--config <path> is required for this subcommand")?;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load(source: &Source, seed: Option<u64>) -> anyhow::Result<SpectralFunction64> {
    match (&source.kernel, &source.function) {
        (Some(k), None) => {
            let k = match seed {
                Some(s) => k.with_seed(s),
                None => k.clone(),
            };
            Ok(k.generate()?)
        }
        (None, Some(p)) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(SpectralFunction64::from_json(&text)?)
        }
        _ => bail!("config needs exactly one of `kernel` or `function`"),
    }
}

fn write(dir: &Path, name: &str, body: &str) -> anyhow::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn append_csv(dir: &Path, name: &str, line: &str) -> anyhow::Result<()> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let fresh = !path.exists();
    let mut f = OpenOptions::new().create(true).append(true).open(&path)?;
    if fresh {
        writeln!(f, "{CSV_HEADER}")?;
    }
    writeln!(f, "{line}")?;
    Ok(())
}

fn norm_tag(p: f64) -> String {
    if p.is_infinite() {
        "Linf".into()
    } else {
        format!("L{p}")
    }
}

/// `Ok(true)` when a numerical solve did not converge.
fn run(cli: &Cli) -> anyhow::Result<bool> {
    match &cli.command {
        Command::Gen => {
            let spec: KernelSpec = read_config(&cli.config)?;
            let f = load(
                &Source {
                    kernel: Some(spec),
                    function: None,
                },
                cli.seed,
            )?;
            let path = write(&cli.out, "function.json", &f.to_json_pretty())?;
            println!("{} terms -> {}", f.len(), path.display());
            Ok(false)
        }
        Command::Approx => {
            let cfg: ApproxConfig = read_config(&cli.config)?;
            let f = load(&cfg.source, cli.seed)?;
            let regime = match cfg.regime {
                Some(r) => r,
                None => Regime::classify(&cfg.params)?,
            };
            let start = Instant::now();
            let res = match cfg.method {
                Method::Pipeline => {
                    regime.check_guard(&cfg.params)?;
                    let sched = make_schedule_at(cfg.m, &cfg.params, regime, cfg.kappa_position)?;
                    approx_with_schedule(&f, sched, &cfg.params, &cfg.wcga)?
                }
                Method::Wcga => wcga(&f, cfg.m, cfg.params.p, &cfg.wcga)?,
                Method::Oracle => bail!("use the `oracle` subcommand"),
            };
            let secs = start.elapsed().as_secs_f64();
            let tag = norm_tag(cfg.params.p);
            let err = res.errors.get(&tag).copied().unwrap_or(f64::NAN);
            let pr = &cfg.params;
            let label = if cfg.method == Method::Pipeline {
                regime.tag()
            } else {
                "wcga"
            };
            let line = format!(
                "{label},{},{},{},{},{},{},{},{},{tag},{err:e},{secs}",
                pr.q,
                pr.p,
                pr.a,
                pr.b,
                pr.d,
                cli.seed.map_or(String::new(), |s| s.to_string()),
                cfg.m,
                res.m_used
            );
            write(&cli.out, "approx.json", &res.to_json())?;
            append_csv(&cli.out, "runs.csv", &line)?;
            println!(
                "{label} m={} m_used={} {tag} error={err:e}",
                cfg.m, res.m_used
            );
            Ok(res.flags.non_converged)
        }
        Command::Rates => {
            let mut cfg: RunConfig = read_config(&cli.config)?;
            if let Some(s) = cli.seed {
                cfg.seeds = vec![s];
            }
            if let Some(j) = cli.jobs {
                cfg.jobs = j;
            }
            let table = rate_sweep(&cfg)?;
            let stem = if cfg.name.is_empty() {
                "rates".to_string()
            } else {
                cfg.name.clone()
            };
            let csv = write(&cli.out, &format!("{stem}.csv"), &table.to_csv())?;
            write(&cli.out, &format!("{stem}.json"), &table.metadata_json())?;
            for r in table.rows.iter().filter(|r| r.failure.is_some()) {
                log::warn!(
                    "m={} seed={}: {}",
                    r.m,
                    r.seed,
                    r.failure.as_deref().unwrap_or("")
                );
            }
            match table.fit() {
                Ok(fit) => println!(
                    "{} rows -> {}; slope {:.4} (residual {:.2e})",
                    table.rows.len(),
                    csv.display(),
                    fit.slope,
                    fit.residual
                ),
                Err(e) => println!(
                    "{} rows -> {}; no slope fit: {e}",
                    table.rows.len(),
                    csv.display()
                ),
            }
            Ok(table.rows.iter().any(|r| r.non_converged))
        }
        Command::Oracle => {
            let cfg: OracleConfig = read_config(&cli.config)?;
            let f = load(&cfg.source, cli.seed)?;
            let (err, support) = l2_oracle(&f, cfg.m);
            let body = serde_json::json!({ "m": cfg.m, "error": err, "support": support });
            write(
                &cli.out,
                "oracle.json",
                &serde_json::to_string_pretty(&body)?,
            )?;
            println!("sigma_{}(f)_2 = {err:e}", cfg.m);
            Ok(false)
        }
        Command::Check { suite } => {
            let suites = match suite {
                Some(name) => {
                    vec![Suite::parse(name).with_context(|| format!("unknown suite {name}"))?]
                }
                None => Suite::ALL.to_vec(),
            };
            let seed = cli.seed.unwrap_or(0);
            let mut failed = 0;
            for s in suites {
                let o = run_suite(s, seed);
                println!(
                    "{} {}: {} ({:.2}s)",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.name,
                    o.detail,
                    o.seconds
                );
                failed += usize::from(!o.passed);
            }
            if failed > 0 {
                bail!("{failed} suite(s) failed");
            }
            Ok(false)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("warning: numerical solve did not converge");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::GuardViolation { .. }) => ExitCode::from(2),
                Some(Error::NonConvergence { .. }) => ExitCode::from(3),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
