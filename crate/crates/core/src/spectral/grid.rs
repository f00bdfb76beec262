//! Uniform tensor grids on `T^d` and FFT synthesis/analysis of trigonometric polynomials.

use std::sync::Arc;

use num_traits::Zero;
use rustfft::{Fft, FftPlanner};

use super::function::SpectralFunction;
use super::index::FrequencyIndex;
use crate::scalar::{Cplx, Real};

/// Smallest `m >= n` whose only prime factors are 2, 3 and 5.
pub fn smooth_size(n: usize) -> usize {
    let mut m = n.max(1);
    loop {
        let mut r = m;
        for p in [2, 3, 5] {
            while r % p == 0 {
                r /= p;
            }
        }
        if r == 1 {
            return m;
        }
        m += 1;
    }
}

/// Samples of a function on the grid `x_j = 2 pi i / M_j` (row-major, last axis fastest).
#[derive(Clone, Debug)]
pub struct GridFunction<T: Real> {
    pub sizes: Vec<usize>,
    pub samples: Vec<Cplx<T>>,
}

impl<T: Real> GridFunction<T> {
    pub fn dim(&self) -> usize {
        self.sizes.len()
    }

    /// `(mean |f|^p)^{1/p}`; grid maximum for `p = inf`.
    pub fn lp_norm(&self, p: f64) -> T {
        mean_power_norm(&self.samples, p)
    }
}

pub(crate) fn mean_power_norm<T: Real>(samples: &[Cplx<T>], p: f64) -> T {
    if samples.is_empty() {
        return T::zero();
    }
    if p.is_infinite() {
        return samples.iter().fold(T::zero(), |m, v| m.max(v.norm()));
    }
    let n = T::from_count(samples.len());
    if p == 2.0 {
        let s = samples.iter().fold(T::zero(), |a, v| a + v.norm_sqr());
        return (s / n).sqrt();
    }
    let pt = T::lit(p);
    // factor out the max so large dynamic ranges do not under/overflow
    let mx = samples.iter().fold(T::zero(), |m, v| m.max(v.norm()));
    if mx == T::zero() {
        return T::zero();
    }
    let s = samples
        .iter()
        .fold(T::zero(), |a, v| a + (v.norm() / mx).powf(pt));
    mx * (s / n).powf(T::one() / pt)
}

/// Reusable FFT plans for one grid shape.
#[derive(Clone)]
pub struct GridPlan<T: Real> {
    sizes: Vec<usize>,
    strides: Vec<usize>,
    forward: Vec<Arc<dyn Fft<T>>>,
    inverse: Vec<Arc<dyn Fft<T>>>,
}

impl<T: Real> std::fmt::Debug for GridPlan<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GridPlan")
            .field("sizes", &self.sizes)
            .finish()
    }
}

impl<T: Real> GridPlan<T> {
    pub fn new(sizes: Vec<usize>) -> Self {
        assert!(
            !sizes.is_empty() && sizes.iter().all(|&m| m >= 1),
            "grid sizes"
        );
        let mut planner = FftPlanner::new();
        let forward = sizes.iter().map(|&m| planner.plan_fft_forward(m)).collect();
        let inverse = sizes.iter().map(|&m| planner.plan_fft_inverse(m)).collect();
        let mut strides = vec![1usize; sizes.len()];
        for j in (0..sizes.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * sizes[j + 1];
        }
        Self {
            sizes,
            strides,
            forward,
            inverse,
        }
    }

    /// Grid with `M_j = smooth(oversample * (2 K_j + 1))` for per-axis max frequency `K_j`.
    pub fn for_max_freq(max_freq: &[i64], oversample: usize) -> Self {
        let os = oversample.max(1);
        Self::new(
            max_freq
                .iter()
                .map(|&k| smooth_size(os * (2 * k.max(0) as usize + 1)))
                .collect(),
        )
    }

    pub fn for_function(f: &SpectralFunction<T>, oversample: usize) -> Self {
        Self::for_max_freq(&f.max_abs_per_axis(), oversample)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.sizes.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Whether a frequency is represented without aliasing (`2|k_j| < M_j`).
    pub fn resolves(&self, k: &FrequencyIndex) -> bool {
        k.coords()
            .iter()
            .zip(&self.sizes)
            .all(|(&c, &m)| 2 * c.unsigned_abs() < m as u64)
    }

    /// Flat buffer position of frequency `k` (wrapped modulo `M_j`).
    pub fn flat_index(&self, k: &FrequencyIndex) -> usize {
        k.coords()
            .iter()
            .zip(self.sizes.iter().zip(&self.strides))
            .map(|(&c, (&m, &st))| (c.rem_euclid(m as i64) as usize) * st)
            .sum()
    }

    /// Places coefficients into a spectrum buffer.
    pub fn scatter(&self, f: &SpectralFunction<T>) -> Vec<Cplx<T>> {
        let mut buf = vec![Cplx::zero(); self.len()];
        for (k, c) in f.iter() {
            debug_assert!(self.resolves(k), "grid too small for {k:?}");
            buf[self.flat_index(k)] += *c;
        }
        buf
    }

    /// Values `sum_k c_k e^{i(k,x)}` on the grid.
    pub fn synthesize(&self, f: &SpectralFunction<T>) -> GridFunction<T> {
        let mut buf = self.scatter(f);
        self.inverse_in_place(&mut buf);
        GridFunction {
            sizes: self.sizes.clone(),
            samples: buf,
        }
    }

    /// Synthesis from coefficients at precomputed flat positions.
    pub fn synthesize_indexed(
        &self,
        positions: &[usize],
        coeffs: &[Cplx<T>],
        out: &mut Vec<Cplx<T>>,
    ) {
        out.clear();
        out.resize(self.len(), Cplx::zero());
        for (&pos, &c) in positions.iter().zip(coeffs) {
            out[pos] += c;
        }
        self.inverse_in_place(out);
    }

    /// Unnormalized inverse DFT on every axis: spectrum buffer -> samples.
    pub fn inverse_in_place(&self, buf: &mut [Cplx<T>]) {
        self.transform(buf, &self.inverse);
    }

    /// Normalized forward DFT: samples -> coefficients `mean(u e^{-i(k,x)})`.
    pub fn forward_in_place(&self, buf: &mut [Cplx<T>]) {
        self.transform(buf, &self.forward);
        let scale = T::one() / T::from_count(self.len());
        for v in buf.iter_mut() {
            *v = *v * scale;
        }
    }

    /// Analysis of grid values back to a [`SpectralFunction`] restricted to `support`.
    pub fn analyze_on(
        &self,
        values: &GridFunction<T>,
        support: &[FrequencyIndex],
    ) -> SpectralFunction<T> {
        let mut buf = values.samples.clone();
        self.forward_in_place(&mut buf);
        let mut out = SpectralFunction::zero(self.sizes.len());
        for k in support {
            out.set(k.clone(), buf[self.flat_index(k)]);
        }
        out
    }

    fn transform(&self, buf: &mut [Cplx<T>], plans: &[Arc<dyn Fft<T>>]) {
        assert_eq!(buf.len(), self.len(), "buffer length");
        let d = self.sizes.len();
        for axis in 0..d {
            let m = self.sizes[axis];
            if m == 1 {
                continue;
            }
            let plan = &plans[axis];
            let stride = self.strides[axis];
            if stride == 1 {
                plan.process(buf);
                continue;
            }
            let mut line = vec![Cplx::zero(); m];
            let mut scratch = vec![Cplx::zero(); plan.get_inplace_scratch_len()];
            let block = m * stride;
            for outer in (0..buf.len()).step_by(block) {
                for inner in 0..stride {
                    let base = outer + inner;
                    for (i, v) in line.iter_mut().enumerate() {
                        *v = buf[base + i * stride];
                    }
                    plan.process_with_scratch(&mut line, &mut scratch);
                    for (i, v) in line.iter().enumerate() {
                        buf[base + i * stride] = *v;
                    }
                }
            }
        }
    }
}
