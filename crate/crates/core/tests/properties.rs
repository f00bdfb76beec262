//! Property tests for the pipeline and greedy invariants.

use proptest::prelude::*;

use trigreedy::bench::{fit_points, l2_oracle, Window};
use trigreedy::greedy::{
    chebyshev_project, norming_scores, rearrangement_bound_lqp, rearrangement_bound_lqpw, wcga,
};
use trigreedy::kernels::{class_sample, SampleLaw, SampleSupport};
use trigreedy::pipelines::approx::approx_regime;
use trigreedy::pipelines::{make_schedule, make_schedule_at, split_ga_g0, Regime};
use trigreedy::spectral::{full_cross, measured_norm, step_cross, SpectralFunction};
use trigreedy::{Cplx, FrequencyIndex, SmoothnessParams, WcgaConfig};

/// Parameters inside some regime's guard: a family, exponents, then `a` placed relative to the
/// family's split points (`sub`: 0 below, 1 above, 2 on the critical value).
fn params_strategy() -> impl Strategy<Value = SmoothnessParams> {
    (
        0usize..4,
        0usize..3,
        0.0f64..1.0,
        0.0f64..1.0,
        0.05f64..0.95,
        0.0f64..1.0,
        1usize..=3,
    )
        .prop_map(|(family, sub, x, y, t, b, d)| {
            let lerp = |lo: f64, hi: f64| lo + t * (hi - lo);
            let (q, p) = match family {
                0 => {
                    let q = 1.05 + 0.9 * x;
                    (q, q + y * (2.0 - q))
                }
                1 => (1.05 + 0.95 * x, 2.05 + 3.95 * y),
                2 => (1.0, 2.0 + 3.0 * y),
                _ => (1.0, 1.05 + 0.9 * y),
            };
            let beta = 1.0 / q - 1.0 / p;
            let a = match (family, sub) {
                (1, 2) => 1.0 / q,
                (1, _) => lerp(beta * p / (p - 1.0), 1.0 / q),
                (2, 0) => lerp(beta, 1.0),
                (2, 1) => 1.0 + 1.5 * t,
                (2, _) => 1.0,
                (_, 0) => lerp(beta, 2.0 * beta),
                (_, 1) => 2.0 * beta + 1.5 * t + 0.01,
                _ => 2.0 * beta,
            };
            SmoothnessParams::new(q, p, a, b, d)
        })
}

fn poly(coeffs: &[(f64, f64)], freqs: &[FrequencyIndex]) -> SpectralFunction<f64> {
    SpectralFunction::from_entries(
        freqs[0].dim(),
        freqs
            .iter()
            .zip(coeffs)
            .map(|(k, &(re, im))| (k.clone(), Cplx::new(re, im))),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kappa_strictly_inside_interval(pr in params_strategy(), m in 8usize..200_000, pos in 0.01f64..0.99) {
        let regime = Regime::classify(&pr).unwrap();
        prop_assume!(regime.check_guard(&pr).is_ok());
        let s = make_schedule_at(m, &pr, regime, pos).unwrap();
        if let (Some(k), Some((lo, hi))) = (s.kappa, regime.kappa_interval(&pr)) {
            prop_assert!(lo < k && k < hi, "{regime}: {k} not in ({lo}, {hi})");
        }
        prop_assert!(s.declared_terms <= 4 * m as u64, "{regime}: declared {} > 4m", s.declared_terms);
        prop_assert!(s.n <= s.big_n);
    }

    #[test]
    fn rearrangement_inequalities(
        mut a in prop::collection::vec(0.0f64..100.0, 2..80),
        w_seed in prop::collection::vec(0.01f64..50.0, 80),
        q in 1.0f64..4.0,
        dp in 0.0f64..4.0,
        m_frac in 0.0f64..1.0,
    ) {
        a.sort_by(|x, y| y.total_cmp(x));
        let p = q + dp;
        let m = 1 + ((a.len() - 1) as f64 * m_frac) as usize % (a.len() - 1);
        let (l, r) = rearrangement_bound_lqp(&a, q, p, m).unwrap();
        prop_assert!(l <= r * (1.0 + 1e-12));
        let w = &w_seed[..a.len()];
        let (l, r) = rearrangement_bound_lqpw(&a, w, q, p, m).unwrap();
        prop_assert!(l <= r * (1.0 + 1e-12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn l2_greedy_is_optimal(coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 129), m in 0usize..140) {
        let f = poly(&coeffs, &full_cross(64, 1));
        let g = wcga(&f, m, 2.0, &WcgaConfig::default()).unwrap();
        let o = l2_oracle(&f, m).0;
        prop_assert!((g.errors["L2"] - o).abs() <= 1e-10 * o.max(1e-300));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn projection_is_stationary(
        coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 33),
        picks in prop::collection::btree_set(0usize..33, 1..8),
        p in prop::sample::select(vec![3.0, 4.0, 6.0]),
    ) {
        let freqs = full_cross(16, 1);
        let f = poly(&coeffs, &freqs);
        let support: Vec<FrequencyIndex> = picks.iter().map(|&i| freqs[i].clone()).collect();
        let cfg = WcgaConfig { oversample: 4, ..WcgaConfig::default() };
        let pr = chebyshev_project(&f, &support, p, &cfg).unwrap();
        prop_assert!(pr.converged);
        let h = f.minus(&pr.g);
        let scores = norming_scores(&h, p, &support).unwrap();
        let scale = measured_norm(&h, p).unwrap().powf(p - 1.0);
        for (k, s) in scores {
            prop_assert!(s <= 1e-6 * scale, "{k:?}: {s} vs {scale}");
        }
        prop_assert!(pr.error <= measured_norm(&f, p).unwrap() * (1.0 + 1e-9));
    }

    #[test]
    fn pipeline_invariants(pr in params_strategy(), seed in 0u64..1000, e in 3u32..7) {
        let pr = SmoothnessParams { d: pr.d.min(2), ..pr };
        let regime = Regime::classify(&pr).unwrap();
        prop_assume!(regime.check_guard(&pr).is_ok());
        // keep the greedy stages small
        prop_assume!(pr.p <= 4.0 || pr.d == 1);
        let m = 1usize << e;
        let support = SampleSupport::Cross(if pr.d == 1 { 64 } else { 16 });
        let f: SpectralFunction<f64> = class_sample(&pr, support, seed, SampleLaw::Iid).unwrap();
        let cfg = WcgaConfig { max_iterations: 60, ..WcgaConfig::default() };
        let small = approx_regime(&f, m, &pr, regime, &cfg).unwrap();
        let big = approx_regime(&f, 2 * m, &pr, regime, &cfg).unwrap();
        let tag = if pr.p == 2.0 { "L2".to_string() } else { format!("L{}", pr.p) };
        // budget accounting
        for r in [&small, &big] {
            prop_assert!(r.terms.len() <= r.declared_terms);
            prop_assert!(r.declared_terms <= 4 * r.schedule.as_ref().unwrap().m);
        }
        // monotone improvement with granularity slack
        prop_assert!(big.errors[&tag] <= small.errors[&tag] * 1.05 + 1e-12,
            "{regime}: {} -> {}", small.errors[&tag], big.errors[&tag]);
        // split exactness
        let s = small.schedule.as_ref().unwrap();
        let (ga, g0) = split_ga_g0(&f, s);
        prop_assert!(ga.plus(&g0).plus(&f.cross_partial_sum(s.n)).same_as(&f));
        // g_A: all of levels (n, N], at most u_l blocks of each level l > N
        for (l, fl) in ga.levels() {
            prop_assert!(l > s.n);
            if l > s.big_n {
                prop_assert!(fl.blocks().len() as u64 <= s.budget(l));
            }
        }
        // two-part error dominance
        if let (Some(g), Some(dn)) = (small.components.greedy_error, small.components.dropped_norm) {
            prop_assert!(small.errors[&tag] <= dn + g + 1e-9);
        }
    }

    #[test]
    fn exact_recovery_inside_selected_set(pr in params_strategy(), seed in 0u64..1000, e in 4u32..9) {
        let pr = SmoothnessParams { d: pr.d.min(2), ..pr };
        let regime = Regime::classify(&pr).unwrap();
        prop_assume!(regime.check_guard(&pr).is_ok());
        let m = 1usize << e;
        let n = make_schedule(m, &pr, regime).unwrap().n;
        // a polynomial on Q_n is kept whole by every schedule
        let full: SpectralFunction<f64> =
            class_sample(&pr, SampleSupport::Step(n.min(6)), seed, SampleLaw::Iid).unwrap();
        let f = full.filter(|k| step_cross(n, pr.d).contains(k));
        prop_assume!(!f.is_zero());
        let r = approx_regime(&f, m, &pr, regime, &WcgaConfig::default()).unwrap();
        for (name, err) in &r.errors {
            prop_assert!(*err < 1e-9, "{regime} {name}: {err}");
        }
    }

    #[test]
    fn planted_slopes_are_recovered(slope in -2.0f64..0.0, c in 0.1f64..10.0, k in 4usize..10) {
        let pts: Vec<(usize, f64)> = (0..k).map(|i| (16usize << i, c * ((16usize << i) as f64).powf(slope))).collect();
        let fit = fit_points(&pts, Window::All).unwrap();
        prop_assert!((fit.slope - slope).abs() < 1e-12);
    }
}
