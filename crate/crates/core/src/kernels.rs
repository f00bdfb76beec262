//! Explicit functions: Bernoulli and Fejér kernels, extremal examples on dyadic layers,
//! and random representatives of the smoothness classes.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Cplx, Real};
use crate::spectral::{
    compositions, full_cross, norm, shell_layer, step_cross, FrequencyIndex, SmoothnessParams,
    SpectralFunction,
};

/// Univariate coefficient of `F_r(x) = 1 + 2 sum_k k^{-r} cos(kx - r pi/2)` at `k`.
pub fn bernoulli_coeff(r: f64, k: i64) -> Cplx<f64> {
    if k == 0 {
        return Cplx::new(1.0, 0.0);
    }
    let m = (k.unsigned_abs() as f64).powf(-r);
    let phase = -k.signum() as f64 * r * PI / 2.0;
    Cplx::from_polar(m, phase)
}

/// Tensor-product coefficient `prod_j F_r^(k_j)`.
pub fn bernoulli_coeff_nd(r: f64, k: &FrequencyIndex) -> Cplx<f64> {
    k.coords()
        .iter()
        .map(|&kj| bernoulli_coeff(r, kj))
        .product()
}

fn to_t<T: Real>(c: Cplx<f64>) -> Cplx<T> {
    Cplx::new(T::lit(c.re), T::lit(c.im))
}

/// `F_r` truncated to the hyperbolic cross `Gamma(N)`.
pub fn bernoulli_kernel<T: Real>(r: f64, d: usize, truncation: u64) -> Result<SpectralFunction<T>> {
    if !(r > 0.0) {
        return Err(Error::invalid(format!(
            "Bernoulli kernel needs r > 0, got {r}"
        )));
    }
    if truncation < 1 {
        return Err(Error::invalid("truncation must be at least 1"));
    }
    SpectralFunction::from_entries(
        d,
        full_cross(truncation, d).into_iter().map(|k| {
            let c = bernoulli_coeff_nd(r, &k);
            (k, to_t(c))
        }),
    )
}

/// `L_2` mass of the univariate `F_r` outside `|k| <= N`: `(2 sum_{k>N} k^{-2r})^{1/2}`,
/// bounded through the integral test. Infinite for `r <= 1/2`.
pub fn bernoulli_tail_bound(r: f64, truncation: u64) -> f64 {
    if r <= 0.5 {
        return f64::INFINITY;
    }
    let n = truncation as f64;
    (2.0 * n.powf(1.0 - 2.0 * r) / (2.0 * r - 1.0)).sqrt()
}

/// Product Fejér kernel `K_N(x) = prod_j sum_{|k|<N_j} (1 - |k|/N_j) e^{ikx_j}`.
pub fn fejer_kernel<T: Real>(nvec: &[u64]) -> Result<SpectralFunction<T>> {
    if nvec.is_empty() || nvec.iter().any(|&n| n < 1) {
        return Err(Error::invalid("Fejér widths must be positive"));
    }
    let bounds: Vec<u64> = nvec.iter().map(|&n| n - 1).collect();
    let freqs = crate::spectral::box_frequencies(&bounds);
    SpectralFunction::from_entries(
        nvec.len(),
        freqs.into_iter().map(|k| {
            let w: f64 = k
                .coords()
                .iter()
                .zip(nvec)
                .map(|(&kj, &n)| 1.0 - kj.unsigned_abs() as f64 / n as f64)
                .product();
            (k, Cplx::new(T::lit(w), T::zero()))
        }),
    )
}

/// Unit coefficients on `Delta Q_N = Q_N \ Q_{N-1}`.
pub fn dirichlet_shell<T: Real>(level: u32, d: usize) -> Result<SpectralFunction<T>> {
    if level < 1 {
        return Err(Error::invalid("Dirichlet shell level must be at least 1"));
    }
    SpectralFunction::from_entries(
        d,
        shell_layer(level, d)
            .into_iter()
            .map(|k| (k, Cplx::new(T::one(), T::zero()))),
    )
}

/// Per-level coefficient of the layered extremal function:
/// `2^{-l/q} l^{b(d-1)} (2^{l(1-1/q)} l^{(d-1)/q})^{-1}`.
pub fn layered_coefficient(l: u32, q: f64, b: f64, d: usize) -> f64 {
    let lf = f64::from(l);
    let dm1 = d as f64 - 1.0;
    2f64.powf(-lf / q) * lf.powf(b * dm1) / (2f64.powf(lf * (1.0 - 1.0 / q)) * lf.powf(dm1 / q))
}

/// Layered extremal function supported on `Q_N \ Q_n`, constant on each layer `Delta Q_l`.
pub fn layered_example<T: Real>(
    n: u32,
    big_n: u32,
    q: f64,
    b: f64,
    d: usize,
) -> Result<SpectralFunction<T>> {
    if n >= big_n {
        return Err(Error::invalid(format!(
            "layered example needs n < N, got n={n}, N={big_n}"
        )));
    }
    let mut f = SpectralFunction::zero(d);
    for l in n + 1..=big_n {
        let c = Cplx::new(T::lit(layered_coefficient(l, q, b, d)), T::zero());
        for k in shell_layer(l, d) {
            f.set(k, c);
        }
    }
    Ok(f)
}

/// Shells of level `n` with every coordinate at least 2 (where `2^{s_j - 2}` is an integer width).
pub fn fejer_packed_shells(n: u32, d: usize) -> Vec<crate::spectral::DyadicShell> {
    compositions(n, d)
        .into_iter()
        .filter(|s| s.levels().iter().all(|&sj| sj >= 2))
        .collect()
}

/// `sum_{||s||_1 = n} K_{2^{s-2}}(x) e^{i(2^s - 2^{s-2}, x)}` over shells with all `s_j >= 2`.
///
/// Each summand is spectrally contained in its own shell.
pub fn fejer_packed<T: Real>(n: u32, d: usize) -> Result<SpectralFunction<T>> {
    if (n as usize) < 2 * d {
        return Err(Error::invalid(format!(
            "Fejér-packed example needs n >= 2d, got n={n}, d={d}"
        )));
    }
    let mut g = SpectralFunction::zero(d);
    for s in fejer_packed_shells(n, d) {
        let widths: Vec<u64> = s.levels().iter().map(|&sj| 1u64 << (sj - 2)).collect();
        let shift = FrequencyIndex::from(
            s.levels()
                .iter()
                .map(|&sj| (1i64 << sj) - (1i64 << (sj - 2)))
                .collect::<Vec<_>>(),
        );
        g.add_assign(&fejer_kernel::<T>(&widths)?.modulate(&shift));
    }
    Ok(g)
}

/// How the random factor of a class sample is drawn.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleLaw {
    /// i.i.d. standard complex Gaussian coefficients, Hermitian-symmetrized.
    #[default]
    Iid,
    /// One randomly translated, randomly signed Dirichlet block per dyadic layer
    /// (Fejér-packed for `q = 1`), each with the same `L_q` norm.
    Coherent,
}

/// Frequency domain of a random sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleSupport {
    /// Hyperbolic cross `Gamma(N)`.
    Cross(u64),
    /// Step hyperbolic cross `Q_T`.
    Step(u32),
}

impl SampleSupport {
    fn frequencies(self, d: usize) -> Vec<FrequencyIndex> {
        match self {
            SampleSupport::Cross(n) => full_cross(n, d),
            SampleSupport::Step(t) => step_cross(t, d),
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_c(rng: &mut ChaCha8Rng) -> Cplx<f64> {
    Cplx::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Whether `k` is the lexicographically positive member of `{k, -k}`.
fn is_positive(k: &FrequencyIndex) -> bool {
    k.coords()
        .iter()
        .find(|&&c| c != 0)
        .map_or(false, |&c| c > 0)
}

/// Hermitian-symmetric i.i.d. Gaussian polynomial on a negation-closed frequency set.
fn iid_polynomial<T: Real>(
    freqs: &[FrequencyIndex],
    d: usize,
    rng: &mut ChaCha8Rng,
) -> SpectralFunction<T> {
    let mut f = SpectralFunction::zero(d);
    for k in freqs {
        if k.coords().iter().all(|&c| c == 0) {
            let re: f64 = rng.sample(StandardNormal);
            f.set(k.clone(), Cplx::new(T::lit(re), T::zero()));
        } else if is_positive(k) {
            let c = gaussian_c(rng);
            f.set(k.neg(), to_t(c.conj()));
            f.set(k.clone(), to_t(c));
        }
    }
    f
}

/// Real-valued coherent block of layer `l`, restricted to `allowed`.
fn coherent_block<T: Real>(
    l: u32,
    d: usize,
    q: f64,
    allowed: &dyn Fn(&FrequencyIndex) -> bool,
    rng: &mut ChaCha8Rng,
) -> Result<SpectralFunction<T>> {
    let x0: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
    let sign = if rng.gen_bool(0.5) {
        T::one()
    } else {
        -T::one()
    };
    let base: SpectralFunction<T> = if q <= 1.0 && (l as usize) >= 2 * d {
        let g = fejer_packed::<T>(l, d)?;
        let reflected =
            SpectralFunction::from_entries(d, g.iter().map(|(k, c)| (k.neg(), c.conj())))?;
        g.plus(&reflected)
    } else if l == 0 {
        SpectralFunction::constant(d, Cplx::new(T::one(), T::zero()))
    } else {
        dirichlet_shell(l, d)?
    };
    Ok(base
        .filter(|k| allowed(k))
        .translate(&x0)
        .scale(Cplx::new(sign, T::zero())))
}

/// Random representative of `W^r_q` (`r = params.a`): `f = phi * F_r` with `||phi||_q = 1`.
///
/// `phi` lives on `support`; the convolution is the coefficientwise product with the
/// Bernoulli kernel, so `f` lies in the class by construction.
pub fn class_sample<T: Real>(
    params: &SmoothnessParams,
    support: SampleSupport,
    seed: u64,
    law: SampleLaw,
) -> Result<SpectralFunction<T>> {
    let r = params.a;
    if !(r > 0.0) {
        return Err(Error::invalid(format!("class sample needs r > 0, got {r}")));
    }
    if !(params.q >= 1.0) {
        return Err(Error::invalid(format!(
            "class sample needs q >= 1, got {}",
            params.q
        )));
    }
    let phi = random_phi::<T>(params, support, seed, law)?;
    Ok(phi.map(|k, c| c * to_t::<T>(bernoulli_coeff_nd(r, k))))
}

/// The random factor `phi` of [`class_sample`], normalized in `L_q`.
pub fn random_phi<T: Real>(
    params: &SmoothnessParams,
    support: SampleSupport,
    seed: u64,
    law: SampleLaw,
) -> Result<SpectralFunction<T>> {
    let d = params.d;
    let freqs = support.frequencies(d);
    let mut rng = rng(seed);
    let phi = match law {
        SampleLaw::Iid => iid_polynomial::<T>(&freqs, d, &mut rng),
        SampleLaw::Coherent => {
            let set: std::collections::BTreeSet<FrequencyIndex> = freqs.iter().cloned().collect();
            let top = freqs.iter().map(|k| k.shell().l1()).max().unwrap_or(0);
            let mut phi = SpectralFunction::zero(d);
            for l in 0..=top {
                let block = coherent_block::<T>(l, d, params.q, &|k| set.contains(k), &mut rng)?;
                if block.is_zero() {
                    continue;
                }
                let nq = norm(&block, params.q)?;
                phi.add_assign(&block.scale(Cplx::new(T::one() / nq, T::zero())));
            }
            phi
        }
    };
    let nq = norm(&phi, params.q)?;
    if nq == T::zero() {
        return Err(Error::invalid("empty sample support"));
    }
    Ok(phi.scale(Cplx::new(T::one() / nq, T::zero())))
}

/// Random function on the boundary of `W^{a,b}_q`: levels `0..=top_level` with
/// `||f_l||_q = 2^{-al} (max(l,1))^{(d-1)b}` exactly.
pub fn boundary_sample<T: Real>(
    params: &SmoothnessParams,
    top_level: u32,
    seed: u64,
    law: SampleLaw,
) -> Result<SpectralFunction<T>> {
    let d = params.d;
    let mut rng = rng(seed);
    let mut f = SpectralFunction::zero(d);
    for l in 0..=top_level {
        let block: SpectralFunction<T> = match law {
            SampleLaw::Iid => iid_polynomial(&shell_layer(l, d), d, &mut rng),
            SampleLaw::Coherent => coherent_block(l, d, params.q, &|_| true, &mut rng)?,
        };
        let nq = norm(&block, params.q)?;
        let target = 2f64.powf(-params.a * f64::from(l))
            * f64::from(l.max(1)).powf((d as f64 - 1.0) * params.b);
        f.add_assign(&block.scale(Cplx::new(T::lit(target) / nq, T::zero())));
    }
    Ok(f)
}

/// Serializable description of a generated function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KernelSpec {
    Bernoulli {
        r: f64,
        d: usize,
        truncation: u64,
    },
    Fejer {
        widths: Vec<u64>,
    },
    DirichletShell {
        level: u32,
        d: usize,
    },
    Layered {
        n: u32,
        big_n: u32,
        q: f64,
        b: f64,
        d: usize,
    },
    FejerPacked {
        n: u32,
        d: usize,
    },
    ClassSample {
        params: SmoothnessParams,
        support: SampleSupport,
        #[serde(default)]
        law: SampleLaw,
        #[serde(default)]
        seed: Option<u64>,
    },
    BoundarySample {
        params: SmoothnessParams,
        top_level: u32,
        #[serde(default)]
        law: SampleLaw,
        #[serde(default)]
        seed: Option<u64>,
    },
}

impl KernelSpec {
    pub fn is_random(&self) -> bool {
        matches!(
            self,
            KernelSpec::ClassSample { .. } | KernelSpec::BoundarySample { .. }
        )
    }

    /// Same spec with the seed replaced (random kinds only).
    pub fn with_seed(&self, s: u64) -> Self {
        let mut out = self.clone();
        match &mut out {
            KernelSpec::ClassSample { seed, .. } | KernelSpec::BoundarySample { seed, .. } => {
                *seed = Some(s)
            }
            _ => {}
        }
        out
    }

    pub fn generate<T: Real>(&self) -> Result<SpectralFunction<T>> {
        let need_seed =
            |s: &Option<u64>| s.ok_or_else(|| Error::invalid("random samples require a seed"));
        match self {
            KernelSpec::Bernoulli { r, d, truncation } => bernoulli_kernel(*r, *d, *truncation),
            KernelSpec::Fejer { widths } => fejer_kernel(widths),
            KernelSpec::DirichletShell { level, d } => dirichlet_shell(*level, *d),
            KernelSpec::Layered { n, big_n, q, b, d } => layered_example(*n, *big_n, *q, *b, *d),
            KernelSpec::FejerPacked { n, d } => fejer_packed(*n, *d),
            KernelSpec::ClassSample {
                params,
                support,
                law,
                seed,
            } => class_sample(params, *support, need_seed(seed)?, *law),
            KernelSpec::BoundarySample {
                params,
                top_level,
                law,
                seed,
            } => boundary_sample(params, *top_level, need_seed(seed)?, *law),
        }
    }
}
