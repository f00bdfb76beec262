//! End-to-end behavior of the pipelines beyond the per-module examples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trigreedy::bench::{rate_sweep, RunConfig};
use trigreedy::kernels::{class_sample, SampleLaw, SampleSupport};
use trigreedy::pipelines::{
    approx_p_gt_2, approx_regime, diagnostic_lemma_l43, make_schedule, split_ga_g0, Regime,
};
use trigreedy::spectral::{measured_norm, step_cross, SpectralFunction};
use trigreedy::{Cplx, SmoothnessParams, WcgaConfig};

#[test]
fn kappa_position_does_not_change_the_rate() {
    let mk = |pos: f64| -> RunConfig {
        serde_json::from_value(serde_json::json!({
            "params": {"q": 1.2, "p": 2.0, "a": 0.5, "b": 0.0, "d": 2},
            "kernel": {"kind": "boundary_sample", "params": {"q": 1.2, "p": 2.0, "a": 0.5, "b": 0.0, "d": 2},
                       "top_level": 9, "law": "coherent"},
            "m_grid": [64, 128, 256, 512, 1024, 2048, 4096],
            "seeds": [1],
            "kappa_position": pos,
            "window": {"kind": "all"},
        }))
        .unwrap()
    };
    let slope = |pos| rate_sweep(&mk(pos)).unwrap().fit().unwrap().slope;
    let mid = slope(0.5);
    for pos in [0.25, 0.75] {
        let s = slope(pos);
        assert!(
            (s - mid).abs() <= 0.08,
            "kappa at {pos}: slope {s} vs {mid}"
        );
    }
}

#[test]
fn empty_greedy_target_leaves_only_the_dropped_part() {
    let params = SmoothnessParams::w(2.0, 4.0, 0.42, 1);
    let m = 64;
    let sched = make_schedule(m, &params, Regime::P3Main).unwrap();
    let f: SpectralFunction<f64> = class_sample(
        &params,
        SampleSupport::Step(sched.big_n + 3),
        5,
        SampleLaw::Iid,
    )
    .unwrap()
    .filter(|k| {
        let l = k.shell().l1();
        l <= sched.n || l > sched.big_n
    });
    let (ga, g0) = split_ga_g0(&f, &sched);
    assert!(ga.is_zero());
    let r = approx_p_gt_2(&f, m, &params, &WcgaConfig::default()).unwrap();
    let want = measured_norm(&g0, 4.0).unwrap();
    assert!((r.errors["L4"] - want).abs() <= 1e-12 * want);
}

#[test]
fn lemma_l43_ratio_is_bounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let mut ratios = Vec::new();
    for i in 0..100 {
        let n = 4 + (i % 5) as u32;
        let t = SpectralFunction::from_entries(
            2,
            step_cross(n, 2).into_iter().map(|k| {
                (
                    k,
                    Cplx::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                )
            }),
        )
        .unwrap();
        let (lhs, rhs) = diagnostic_lemma_l43(&t, n, 2.0).unwrap();
        ratios.push(lhs / rhs);
    }
    // constant fitted on the first 20 instances
    let c = ratios[..20].iter().copied().fold(0.0, f64::max);
    assert!(
        ratios.iter().all(|&r| r <= 1.5 * c),
        "fitted {c}, max {}",
        ratios.iter().copied().fold(0.0, f64::max)
    );
}

#[test]
fn single_and_double_precision_agree() {
    let params = SmoothnessParams::w(2.0, 4.0, 0.42, 1);
    let f: SpectralFunction<f64> =
        class_sample(&params, SampleSupport::Step(8), 2, SampleLaw::Coherent).unwrap();
    let cfg = WcgaConfig::default();
    let a = approx_regime(&f, 128, &params, Regime::P3Main, &cfg).unwrap();
    let b = approx_regime(&f.cast::<f32>(), 128, &params, Regime::P3Main, &cfg).unwrap();
    assert_eq!(a.m_used, b.m_used);
    let (ea, eb) = (a.errors["L4"], b.errors["L4"]);
    assert!((ea - eb).abs() <= 1e-4 * ea, "{ea} vs {eb}");
}

#[test]
fn result_record_serializes() {
    let params = SmoothnessParams::new(1.2, 2.0, 0.5, 0.0, 2);
    let f: SpectralFunction<f64> =
        class_sample(&params, SampleSupport::Cross(32), 1, SampleLaw::Iid).unwrap();
    let r = approx_regime(&f, 64, &params, Regime::WabMid, &WcgaConfig::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    for key in [
        "terms",
        "m_used",
        "declared_terms",
        "errors",
        "schedule",
        "components",
        "log",
        "flags",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["schedule"]["regime"], "Wab_mid");
}
