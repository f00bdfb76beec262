//! Norm sweeps over the extremal functions and class samples.

use trigreedy::kernels::{
    class_sample, dirichlet_shell, fejer_kernel, fejer_packed, layered_example, SampleLaw,
    SampleSupport,
};
use trigreedy::spectral::{compositions, lp_norm, norm, wab_norm};
use trigreedy::SmoothnessParams;

#[test]
fn dirichlet_shell_lq_growth() {
    let q = 4.0 / 3.0;
    let ratios: Vec<f64> = (4..=10)
        .map(|n| {
            norm(&dirichlet_shell::<f64>(n, 1).unwrap(), q).unwrap()
                / 2f64.powf(f64::from(n) * (1.0 - 1.0 / q))
        })
        .collect();
    let (lo, hi) = ratios
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    assert!(lo > 0.2 && hi / lo < 2.0, "{ratios:?}");
}

#[test]
fn layered_examples_stay_in_the_class() {
    let (q, b, d) = (1.5, 0.5, 2);
    let mut values = Vec::new();
    for n in 1..=3u32 {
        for big_n in n + 1..=n + 4 {
            let g = layered_example::<f64>(n, big_n, q, b, d).unwrap();
            values.push(wab_norm(&g, 1.0 / q, b, q).unwrap());
        }
    }
    // constant fitted on the smallest case, never exceeded by more than 2x
    let c = values[0];
    assert!(values.iter().all(|&v| v <= 2.0 * c), "{values:?}");
}

#[test]
fn fejer_kernel_values() {
    for widths in [vec![1u64], vec![5], vec![3, 4], vec![7, 2]] {
        let k = fejer_kernel::<f64>(&widths).unwrap();
        let prod: f64 = widths.iter().map(|&w| w as f64).product();
        assert!((k.eval(&vec![0.0; widths.len()]).re - prod).abs() < 1e-9 * prod);
        assert!((k.a_norm() - prod).abs() < 1e-9 * prod);
        assert!((lp_norm(&k, 1.0, 4).unwrap() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn fejer_packed_l1_bound() {
    for n in 4..=7u32 {
        let g = fejer_packed::<f64>(n, 2).unwrap();
        let count = compositions(n, 2).len() as f64;
        assert!(lp_norm(&g, 1.0, 4).unwrap() <= count * (1.0 + 1e-9));
        assert!(g.iter().all(|(_, c)| c.norm() <= 1.0 + 1e-12));
    }
}

#[test]
fn class_samples_decay_per_level() {
    let r = 0.7;
    for d in 1..=2usize {
        let params = SmoothnessParams::w(2.0, 4.0, r, d);
        for seed in 0..10 {
            for law in [SampleLaw::Iid, SampleLaw::Coherent] {
                let f = class_sample::<f64>(&params, SampleSupport::Step(6), seed, law).unwrap();
                for (l, fl) in f.levels() {
                    let bound = 2f64.powf(r * d as f64) * 2f64.powf(-r * f64::from(l));
                    assert!(
                        fl.l2_coeff_norm() <= bound * (1.0 + 1e-12),
                        "d={d} seed={seed} l={l}"
                    );
                }
            }
        }
    }
}
