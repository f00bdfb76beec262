//! Norms of trigonometric polynomials on the torus with normalized measure.

use super::function::SpectralFunction;
use super::grid::{mean_power_norm, GridPlan};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default per-axis oversampling for finite `p`.
pub const DEFAULT_OVERSAMPLE: usize = 4;
/// Default per-axis oversampling for the grid maximum.
pub const SUP_OVERSAMPLE: usize = 8;

fn check_p(p: f64) -> Result<()> {
    if p.is_nan() || p <= 0.0 {
        return Err(Error::invalid(format!(
            "exponent p must be positive, got {p}"
        )));
    }
    Ok(())
}

/// `||f||_p` by grid quadrature. `p = 2` is evaluated exactly through Parseval.
///
/// The quadrature is exact whenever `|f|^p` is a trigonometric polynomial resolved by the
/// grid (even integer `p` with `oversample >= p/2`); otherwise it is a Riemann sum whose error
/// shrinks with `oversample`. The sup norm is a grid maximum and is biased low.
pub fn lp_norm<T: Real>(f: &SpectralFunction<T>, p: f64, oversample: usize) -> Result<T> {
    check_p(p)?;
    if p == 2.0 {
        return Ok(f.l2_coeff_norm());
    }
    lp_norm_grid(f, p, oversample)
}

/// `||f||_p` always through grid synthesis, including `p = 2`.
pub fn lp_norm_grid<T: Real>(f: &SpectralFunction<T>, p: f64, oversample: usize) -> Result<T> {
    check_p(p)?;
    if oversample < 2 {
        return Err(Error::invalid("oversample must be at least 2"));
    }
    if f.is_zero() {
        return Ok(T::zero());
    }
    let plan = GridPlan::for_function(f, oversample);
    Ok(plan.synthesize(f).lp_norm(p))
}

/// Oversampling that makes grid quadrature exact for even integer `p` (`|f|^p` is then a
/// polynomial of degree `p/2` times that of `f`); the default otherwise.
pub fn quadrature_oversample(p: f64) -> usize {
    if p.is_finite() && p >= 2.0 && p.fract() == 0.0 && (p as usize) % 2 == 0 {
        ((p as usize) / 2).max(2)
    } else if p.is_infinite() {
        SUP_OVERSAMPLE
    } else {
        DEFAULT_OVERSAMPLE
    }
}

/// `lp_norm` at [`quadrature_oversample`].
pub fn measured_norm<T: Real>(f: &SpectralFunction<T>, p: f64) -> Result<T> {
    lp_norm(f, p, quadrature_oversample(p))
}

/// `lp_norm` with the default oversampling for the given `p`.
pub fn norm<T: Real>(f: &SpectralFunction<T>, p: f64) -> Result<T> {
    let os = if p.is_infinite() {
        SUP_OVERSAMPLE
    } else {
        DEFAULT_OVERSAMPLE
    };
    lp_norm(f, p, os)
}

fn bar(l: u32) -> f64 {
    f64::from(l.max(1))
}

/// `||f||_{W^{a,b}_q} = sup_l ||f_l||_q 2^{al} (max(l,1))^{-(d-1)b}`.
pub fn wab_norm<T: Real>(f: &SpectralFunction<T>, a: f64, b: f64, q: f64) -> Result<T> {
    let d = f.dim() as f64;
    let mut sup = T::zero();
    for (l, fl) in f.levels() {
        let w = 2f64.powf(a * f64::from(l)) * bar(l).powf(-(d - 1.0) * b);
        sup = sup.max(norm(&fl, q)? * T::lit(w));
    }
    Ok(sup)
}

/// `||f||_{H^r_q} = sup_s ||delta_s(f)||_q 2^{r ||s||_1}`.
pub fn hrq_norm<T: Real>(f: &SpectralFunction<T>, r: f64, q: f64) -> Result<T> {
    let mut sup = T::zero();
    for (s, block) in f.blocks() {
        let w = 2f64.powf(r * f64::from(s.l1()));
        sup = sup.max(norm(&block, q)? * T::lit(w));
    }
    Ok(sup)
}

/// Littlewood–Paley ratio `|| (sum_s |delta_s f|^2)^{1/2} ||_p / ||f||_p`.
pub fn lp_square_ratio<T: Real>(f: &SpectralFunction<T>, p: f64) -> Result<T> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::invalid(format!(
            "square-function ratio needs 1 < p < inf, got {p}"
        )));
    }
    if f.is_zero() {
        return Err(Error::invalid("square-function ratio of the zero function"));
    }
    let plan = GridPlan::for_function(f, DEFAULT_OVERSAMPLE);
    let mut square = vec![T::zero(); plan.len()];
    for (_, block) in f.blocks() {
        let g = plan.synthesize(&block);
        for (acc, v) in square.iter_mut().zip(&g.samples) {
            *acc = *acc + v.norm_sqr();
        }
    }
    let sq: Vec<_> = square
        .into_iter()
        .map(|s| crate::scalar::Cplx::new(s.sqrt(), T::zero()))
        .collect();
    let num = mean_power_norm(&sq, p);
    let den = plan.synthesize(f).lp_norm(p);
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Cplx;
    use crate::spectral::index::FrequencyIndex;

    fn k1(k: i64) -> FrequencyIndex {
        FrequencyIndex::new(&[k])
    }

    #[test]
    fn constant_and_exponential() {
        let c = SpectralFunction::constant(2, Cplx::<f64>::new(-3.0, 4.0));
        for p in [1.0, 1.5, 2.0, 3.0, 4.0, f64::INFINITY] {
            assert!((norm(&c, p).unwrap() - 5.0).abs() < 1e-12, "p={p}");
        }
        let e = SpectralFunction::monomial(k1(7), Cplx::<f64>::new(1.0, 0.0));
        assert!((lp_norm_grid(&e, 2.0, 4).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sup_of_one_plus_exponential() {
        let f = SpectralFunction::from_entries(
            1,
            vec![
                (k1(0), Cplx::<f64>::new(1.0, 0.0)),
                (k1(1), Cplx::<f64>::new(1.0, 0.0)),
            ],
        )
        .unwrap();
        assert!((norm(&f, f64::INFINITY).unwrap() - 2.0).abs() < 1e-12);
        // dense-grid oracle
        let dense = (0..20000)
            .map(|i| {
                f.eval(&[2.0 * std::f64::consts::PI * i as f64 / 20000.0])
                    .norm()
            })
            .fold(0.0, f64::max);
        assert!((dense - 2.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_exponent() {
        let f = SpectralFunction::<f64>::constant(1, Cplx::<f64>::new(1.0, 0.0));
        assert!(lp_norm(&f, 0.0, 4).is_err());
        assert!(lp_norm(&f, -1.0, 4).is_err());
        assert!(lp_norm_grid(&f, 3.0, 1).is_err());
    }

    #[test]
    fn wab_and_hrq_examples() {
        let e = SpectralFunction::monomial(k1(1), Cplx::<f64>::new(1.0, 0.0));
        assert!((wab_norm(&e, 1.0, 0.0, 2.0).unwrap() - 2.0).abs() < 1e-12);
        assert!((hrq_norm(&e, 1.0, 2.0).unwrap() - 2.0).abs() < 1e-12);
        let z = SpectralFunction::<f64>::zero(1);
        assert_eq!(wab_norm(&z, 1.0, 0.0, 2.0).unwrap(), 0.0);
        assert_eq!(hrq_norm(&z, 1.0, 2.0).unwrap(), 0.0);
        let f = SpectralFunction::from_entries(
            1,
            vec![
                (k1(3), Cplx::<f64>::new(1.0, 2.0)),
                (k1(-9), Cplx::<f64>::new(0.5, 0.0)),
            ],
        )
        .unwrap();
        let h = hrq_norm(&f, 0.7, 1.5).unwrap();
        let h3 = hrq_norm(&f.scale(Cplx::<f64>::new(0.0, -3.0)), 0.7, 1.5).unwrap();
        assert!((h3 - 3.0 * h).abs() < 1e-12 * h3);
    }

    #[test]
    fn class_boundary_has_unit_wab_norm() {
        // ||f_l||_2 = 2^{-al} on every level
        let a = 0.7;
        let mut f = SpectralFunction::zero(1);
        for l in 0..6u32 {
            let k = if l == 0 { 0 } else { 1i64 << (l - 1) };
            f.set(k1(k), Cplx::<f64>::new(2f64.powf(-a * l as f64), 0.0));
        }
        assert!((wab_norm(&f, a, 0.0, 2.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn square_ratio_trivial_cases() {
        let e = SpectralFunction::monomial(k1(5), Cplx::<f64>::new(1.0, 0.0));
        assert!((lp_square_ratio(&e, 4.0).unwrap() - 1.0).abs() < 1e-12);
        let shell = SpectralFunction::from_entries(
            1,
            vec![
                (k1(4), Cplx::<f64>::new(1.0, 0.0)),
                (k1(-6), Cplx::<f64>::new(0.0, 1.0)),
            ],
        )
        .unwrap();
        assert!((lp_square_ratio(&shell, 1.5).unwrap() - 1.0).abs() < 1e-12);
        assert!(lp_square_ratio(&SpectralFunction::<f64>::zero(1), 2.0).is_err());
    }
}
