use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::index::{DyadicShell, FrequencyIndex};
use crate::error::{Error, Result};
use crate::scalar::{compensated_sum, Cplx, Real};

/// A trigonometric polynomial stored as a sparse map from frequency to coefficient.
///
/// Keys absent from the map are zero coefficients. Explicit zeros are allowed and are
/// ignored by comparisons ([`SpectralFunction::same_as`]) and norms.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralFunction<T: Real> {
    dim: usize,
    coeffs: BTreeMap<FrequencyIndex, Cplx<T>>,
}

impl<T: Real> SpectralFunction<T> {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        Self {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds from `(k, c)` pairs; repeated keys accumulate.
    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FrequencyIndex, Cplx<T>)>,
    {
        let mut f = Self::zero(dim);
        for (k, c) in entries {
            if k.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: k.dim(),
                });
            }
            f.add_at(k, c);
        }
        Ok(f)
    }

    /// Single exponential `c e^{i(k,x)}`.
    pub fn monomial(k: FrequencyIndex, c: Cplx<T>) -> Self {
        let mut f = Self::zero(k.dim());
        f.coeffs.insert(k, c);
        f
    }

    /// Constant function.
    pub fn constant(dim: usize, c: Cplx<T>) -> Self {
        Self::monomial(FrequencyIndex::zero(dim), c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored entries (including explicit zeros).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when every stored coefficient is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.is_zero())
    }

    pub fn get(&self, k: &FrequencyIndex) -> Cplx<T> {
        self.coeffs.get(k).copied().unwrap_or_else(Cplx::zero)
    }

    pub fn set(&mut self, k: FrequencyIndex, c: Cplx<T>) {
        debug_assert_eq!(k.dim(), self.dim);
        self.coeffs.insert(k, c);
    }

    pub fn add_at(&mut self, k: FrequencyIndex, c: Cplx<T>) {
        debug_assert_eq!(k.dim(), self.dim);
        *self.coeffs.entry(k).or_insert_with(Cplx::zero) += c;
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FrequencyIndex, &Cplx<T>)> {
        self.coeffs.iter()
    }

    /// Frequencies carrying a nonzero coefficient, in lexicographic order.
    pub fn support(&self) -> Vec<FrequencyIndex> {
        self.coeffs
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| k.clone())
            .collect()
    }

    /// Drops explicit zero entries.
    pub fn pruned(mut self) -> Self {
        self.coeffs.retain(|_, c| !c.is_zero());
        self
    }

    /// Coefficientwise equality with absent keys read as zero.
    pub fn same_as(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.coeffs.iter().all(|(k, c)| other.get(k) == *c)
            && other.coeffs.iter().all(|(k, c)| self.get(k) == *c)
    }

    /// Largest `|k_j|` over the support, per axis.
    pub fn max_abs_per_axis(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.dim];
        for (k, c) in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            for (o, &kj) in out.iter_mut().zip(k.coords()) {
                *o = (*o).max(kj.abs());
            }
        }
        out
    }

    pub fn filter<F: Fn(&FrequencyIndex) -> bool>(&self, keep: F) -> Self {
        Self {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), *c))
                .collect(),
        }
    }

    /// Restriction to an explicit frequency set.
    pub fn restrict(&self, support: &[FrequencyIndex]) -> Self {
        let mut out = Self::zero(self.dim);
        for k in support {
            if let Some(c) = self.coeffs.get(k) {
                out.coeffs.insert(k.clone(), *c);
            }
        }
        out
    }

    /// `delta_s(f)`: the coefficients of `f` inside `rho(s)`.
    pub fn block_project(&self, s: &DyadicShell) -> Self {
        assert_eq!(s.dim(), self.dim, "shell dimension");
        self.filter(|k| s.contains(k))
    }

    /// `f_l = sum_{||s||_1 = l} delta_s(f)`.
    pub fn level_sum(&self, l: u32) -> Self {
        self.filter(|k| k.shell().l1() == l)
    }

    /// Sum of the levels `lo < l <= hi`.
    pub fn level_band(&self, lo_exclusive: Option<u32>, hi_inclusive: Option<u32>) -> Self {
        self.filter(|k| {
            let l = k.shell().l1();
            lo_exclusive.map_or(true, |lo| l > lo) && hi_inclusive.map_or(true, |hi| l <= hi)
        })
    }

    /// `S_{Q_n}(f)`: restriction to the step hyperbolic cross `Q_n`.
    pub fn cross_partial_sum(&self, n: u32) -> Self {
        self.level_band(None, Some(n))
    }

    /// All nonzero blocks `delta_s(f)`, keyed by shell.
    pub fn blocks(&self) -> BTreeMap<DyadicShell, Self> {
        let mut out: BTreeMap<DyadicShell, Self> = BTreeMap::new();
        for (k, c) in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            out.entry(k.shell())
                .or_insert_with(|| Self::zero(self.dim))
                .coeffs
                .insert(k.clone(), *c);
        }
        out
    }

    /// All nonzero level sums `f_l`, keyed by `l`.
    pub fn levels(&self) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (k, c) in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            out.entry(k.shell().l1())
                .or_insert_with(|| Self::zero(self.dim))
                .coeffs
                .insert(k.clone(), *c);
        }
        out
    }

    /// Highest level `||s||_1` carrying a nonzero coefficient.
    pub fn top_level(&self) -> Option<u32> {
        self.coeffs
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| k.shell().l1())
            .max()
    }

    /// `||f||_A = sum_k |f^(k)|`.
    pub fn a_norm(&self) -> T {
        self.coeffs
            .values()
            .fold(T::zero(), |acc, c| acc + c.norm())
    }

    /// Coefficient `l_2` norm; equals `||f||_2` on the normalized torus.
    pub fn l2_coeff_norm(&self) -> T {
        compensated_sum(self.coeffs.values().map(|c| c.norm_sqr())).sqrt()
    }

    pub fn scale(&self, s: Cplx<T>) -> Self {
        self.map(|_, c| c * s)
    }

    pub fn map<F: Fn(&FrequencyIndex, Cplx<T>) -> Cplx<T>>(&self, f: F) -> Self {
        Self {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (k.clone(), f(k, *c)))
                .collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.dim, other.dim, "dimension");
        for (k, c) in &other.coeffs {
            self.add_at(k.clone(), *c);
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        assert_eq!(self.dim, other.dim, "dimension");
        for (k, c) in &other.coeffs {
            self.add_at(k.clone(), -*c);
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    /// Coefficientwise product (the convolution theorem on the torus).
    pub fn hadamard(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension");
        let mut out = Self::zero(self.dim);
        for (k, c) in &self.coeffs {
            if let Some(o) = other.coeffs.get(k) {
                out.coeffs.insert(k.clone(), *c * *o);
            }
        }
        out
    }

    /// Multiplication by `e^{i(shift,x)}`.
    pub fn modulate(&self, shift: &FrequencyIndex) -> Self {
        Self {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (k.add(shift), *c))
                .collect(),
        }
    }

    /// Translation `f(x - x0)`.
    pub fn translate(&self, x0: &[f64]) -> Self {
        assert_eq!(x0.len(), self.dim, "dimension");
        self.map(|k, c| {
            let phase: f64 = -k
                .coords()
                .iter()
                .zip(x0)
                .map(|(&kj, &xj)| kj as f64 * xj)
                .sum::<f64>();
            c * Cplx::new(T::lit(phase.cos()), T::lit(phase.sin()))
        })
    }

    /// Evaluates `sum_k c_k e^{i(k,x)}` at one point directly.
    pub fn eval(&self, x: &[f64]) -> Cplx<T> {
        assert_eq!(x.len(), self.dim, "dimension");
        self.coeffs.iter().fold(Cplx::zero(), |acc, (k, c)| {
            let ph: f64 = k
                .coords()
                .iter()
                .zip(x)
                .map(|(&kj, &xj)| kj as f64 * xj)
                .sum();
            acc + *c * Cplx::new(T::lit(ph.cos()), T::lit(ph.sin()))
        })
    }

    /// Converts to another scalar type.
    pub fn cast<U: Real>(&self) -> SpectralFunction<U> {
        SpectralFunction {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| {
                    (
                        k.clone(),
                        Cplx::new(U::lit(c.re.as_f64()), U::lit(c.im.as_f64())),
                    )
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SpectralRepr::from(self)).expect("serializable")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&SpectralRepr::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let repr: SpectralRepr = serde_json::from_str(s)?;
        repr.try_into()
    }
}

/// On-disk form: `{dim, entries: [{k, re, im}]}` with entries sorted by `k`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralRepr {
    pub dim: usize,
    pub entries: Vec<EntryRepr>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntryRepr {
    pub k: Vec<i64>,
    pub re: f64,
    pub im: f64,
}

impl<T: Real> From<&SpectralFunction<T>> for SpectralRepr {
    fn from(f: &SpectralFunction<T>) -> Self {
        Self {
            dim: f.dim,
            entries: f
                .coeffs
                .iter()
                .map(|(k, c)| EntryRepr {
                    k: k.coords().to_vec(),
                    re: c.re.as_f64(),
                    im: c.im.as_f64(),
                })
                .collect(),
        }
    }
}

impl<T: Real> TryFrom<SpectralRepr> for SpectralFunction<T> {
    type Error = Error;

    fn try_from(r: SpectralRepr) -> Result<Self> {
        if r.dim == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        SpectralFunction::from_entries(
            r.dim,
            r.entries.into_iter().map(|e| {
                (
                    FrequencyIndex::from(e.k),
                    Cplx::new(T::lit(e.re), T::lit(e.im)),
                )
            }),
        )
    }
}
