//! Invariant suites with fixed seeds; each returns pass/fail plus a one-line detail.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::greedy::{rearrangement_bound_lqp, rearrangement_bound_lqpw, wcga, WcgaConfig};
use crate::kernels::fejer_kernel;
use crate::scalar::Cplx;
use crate::spectral::{
    box_dim, compositions, full_cross, lp_norm, shell_frequencies, shell_layer, step_cross,
    DyadicShell, FrequencyIndex, SpectralFunction,
};

use super::oracle::l2_oracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Geometry,
    Fejer,
    Rearrangement,
    Parseval,
    GreedyShape,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Geometry,
        Suite::Fejer,
        Suite::Rearrangement,
        Suite::Parseval,
        Suite::GreedyShape,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Geometry => "geometry",
            Suite::Fejer => "fejer",
            Suite::Rearrangement => "rearrangement",
            Suite::Parseval => "parseval",
            Suite::GreedyShape => "greedy_shape",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

pub fn run_suite(suite: Suite, seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let (passed, detail) = match suite {
        Suite::Geometry => geometry(),
        Suite::Fejer => fejer(),
        Suite::Rearrangement => rearrangement(seed, 1000),
        Suite::Parseval => parseval(seed, 100),
        Suite::GreedyShape => greedy_shape(seed, 20),
    };
    CheckOutcome {
        name: suite.name().to_string(),
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Every frequency of the box `[-64, 64]^d`, `d <= 3`, lies in exactly one shell, the one its
/// coordinates' bit lengths name; shell enumeration and layer sizes agree with that.
fn geometry() -> (bool, String) {
    const B: i64 = 64;
    for d in 1..=3usize {
        let max_level = crate::spectral::level_of(B);
        let shells = all_shells(max_level, d);
        let mut covered = 0u64;
        let mut idx = vec![-B; d];
        loop {
            let k = FrequencyIndex::new(&idx);
            let s = k.shell();
            let hits = shells.iter().filter(|t| t.contains(&k)).count();
            if hits != 1 || !s.contains(&k) {
                return (false, format!("d={d}: {k:?} lies in {hits} shells"));
            }
            covered += 1;
            // odometer over the box
            let mut j = d;
            loop {
                if j == 0 {
                    break;
                }
                j -= 1;
                if idx[j] < B {
                    idx[j] += 1;
                    break;
                }
                idx[j] = -B;
                if j == 0 {
                    j = usize::MAX;
                    break;
                }
            }
            if j == usize::MAX {
                break;
            }
        }
        if covered as u128 != box_dim(&vec![B as u64; d]) {
            return (false, format!("d={d}: covered {covered} points"));
        }
        for n in 0..=6u32 {
            for s in compositions(n, d) {
                let fr = shell_frequencies(&s);
                if fr.len() as u64 != s.cardinality() || fr.iter().any(|k| k.shell() != s) {
                    return (false, format!("shell {s:?} enumeration"));
                }
            }
            let layer = shell_layer(n, d);
            let mut q = step_cross(n, d);
            let before = q.len();
            q.dedup();
            if q.len() != before || layer.iter().any(|k| k.shell().l1() != n) {
                return (false, format!("d={d}, n={n}: layers overlap"));
            }
        }
    }
    let g2 = full_cross(2, 2).len();
    let theta = box_dim(&[2, 3]);
    if g2 != 21 || theta != 35 {
        return (false, format!("|Gamma(2)|={g2}, theta((2,3))={theta}"));
    }
    (
        true,
        "box [-64,64]^d partitioned for d<=3; |Gamma(2)|=21; theta((2,3))=35".into(),
    )
}

fn all_shells(max_level: u32, d: usize) -> Vec<DyadicShell> {
    let mut out = vec![Vec::<u32>::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max_level).map(move |l| {
                    let mut w = v.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(DyadicShell::new).collect()
}

/// `||K_N||_1 = 1` for `N = 1..64` in `d = 1` and for `(N, N)`, `(N, 65 - N)` in `d = 2`.
fn fejer() -> (bool, String) {
    let mut worst = 0.0f64;
    let mut cases: Vec<Vec<u64>> = (1..=64).map(|n| vec![n]).collect();
    cases.extend((1..=64).map(|n| vec![n, n]));
    cases.extend((1..=64).map(|n| vec![n, 65 - n]));
    for nv in &cases {
        let k = fejer_kernel::<f64>(nv).expect("valid widths");
        let v = lp_norm(&k, 1.0, 4).expect("valid norm");
        worst = worst.max((v - 1.0).abs());
    }
    (
        worst <= 1e-10,
        format!(
            "{} kernels, max | ||K_N||_1 - 1 | = {worst:.2e}",
            cases.len()
        ),
    )
}

fn random_sorted(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let mut a: Vec<f64> = (0..len)
        .map(|_| rng.gen_range(0.0..10.0f64).powf(rng.gen_range(0.5..3.0)))
        .collect();
    a.sort_by(|x, y| y.total_cmp(x));
    a
}

fn exponents(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let q = rng.gen_range(1.0..4.0);
    let p = if rng.gen_bool(0.1) {
        f64::INFINITY
    } else {
        q + rng.gen_range(0.0..4.0)
    };
    (q, p)
}

/// Rearrangement inequalities on random instances. Both sides are computed in floating point,
/// so a comparison allows a relative rounding margin of `1e-12`.
fn rearrangement(seed: u64, trials: usize) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    for _ in 0..trials {
        let len = rng.gen_range(2..60);
        let a = random_sorted(&mut rng, len);
        let (q, p) = exponents(&mut rng);
        let m = rng.gen_range(1..len);
        let (l, r) = rearrangement_bound_lqp(&a, q, p, m).expect("valid instance");
        if l > r * (1.0 + 1e-12) {
            violations += 1;
        }
        worst = worst.min(r - l);
        let w: Vec<f64> = (0..len).map(|_| rng.gen_range(0.01..100.0)).collect();
        let (l, r) = rearrangement_bound_lqpw(&a, &w, q, p, m).expect("valid instance");
        if l > r * (1.0 + 1e-12) {
            violations += 1;
        }
        worst = worst.min(r - l);
    }
    (
        violations == 0,
        format!("{trials} unweighted + {trials} weighted instances, {violations} violations"),
    )
}

fn random_poly(rng: &mut ChaCha8Rng, freqs: &[FrequencyIndex]) -> SpectralFunction<f64> {
    SpectralFunction::from_entries(
        1,
        freqs.iter().map(|k| {
            (
                k.clone(),
                Cplx::new(rng.sample(StandardNormal), rng.sample(StandardNormal)),
            )
        }),
    )
    .expect("valid polynomial")
}

/// Greedy `L_2` runs on random polynomials over `Gamma(64)` agree with the best `m`-term error.
fn parseval(seed: u64, count: usize) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let freqs = full_cross(64, 1);
    let mut worst = 0.0f64;
    for _ in 0..count {
        let f = random_poly(&mut rng, &freqs);
        for e in 0..=6 {
            let m = 1usize << e;
            let g = wcga(&f, m, 2.0, &WcgaConfig::default())
                .expect("valid run")
                .errors["L2"];
            let o = l2_oracle(&f, m).0;
            worst = worst.max((g - o).abs() / o.max(1e-300));
        }
    }
    (
        worst <= 1e-8,
        format!("{count} polynomials, m=1..64, max relative gap {worst:.2e}"),
    )
}

/// `L_4` greedy on random `||f||_A = 1` polynomials over `Gamma(32)`: `error * sqrt(m)` for
/// every `m = 4..64` stays within twice its value at `m = 4`.
fn greedy_shape(seed: u64, count: usize) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let freqs = full_cross(32, 1);
    let mut worst = 0.0f64;
    for _ in 0..count {
        let f = random_poly(&mut rng, &freqs);
        let f = f.scale(Cplx::new(1.0 / f.a_norm(), 0.0));
        let run = wcga(&f, 64, 4.0, &WcgaConfig::default()).expect("valid run");
        let err_at = |m: usize| run.log.get(m - 1).map_or(0.0, |s| s.error);
        let at4 = err_at(4) * 2.0;
        for m in 4..=64 {
            worst = worst.max(err_at(m) * (m as f64).sqrt() / at4);
        }
    }
    (
        worst <= 2.0,
        format!(
            "{count} polynomials, m=4..64, max (err*sqrt(m)) / (err*sqrt(m))|_(m=4) = {worst:.3}"
        ),
    )
}
