use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Inline capacity; dimensions up to 4 never allocate.
pub(crate) const INLINE_DIM: usize = 4;

/// A point `k` of the integer lattice `Z^d`, naming the dictionary element `e^{i(k,x)}`.
///
/// Ordering is lexicographic on the coordinates, which is the tie-break order used
/// by every selection rule in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FrequencyIndex(SmallVec<[i64; INLINE_DIM]>);

impl FrequencyIndex {
    pub fn new(coords: &[i64]) -> Self {
        Self(SmallVec::from_slice(coords))
    }

    pub fn zero(dim: usize) -> Self {
        Self(SmallVec::from_elem(0, dim))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// `prod_j max(|k_j|, 1)`, the quantity bounded in the hyperbolic cross.
    pub fn cross_weight(&self) -> u128 {
        self.0
            .iter()
            .map(|c| c.unsigned_abs().max(1) as u128)
            .product()
    }

    /// The unique dyadic shell containing this frequency.
    pub fn shell(&self) -> DyadicShell {
        DyadicShell::new(self.0.iter().map(|&c| level_of(c)).collect::<Vec<_>>())
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl From<Vec<i64>> for FrequencyIndex {
    fn from(v: Vec<i64>) -> Self {
        Self(SmallVec::from_vec(v))
    }
}

impl fmt::Debug for FrequencyIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Dyadic level of one coordinate: `0` for `k = 0`, otherwise the bit length of `|k|`,
/// so that `[2^{s-1}] <= |k| < 2^s`.
#[inline]
pub fn level_of(k: i64) -> u32 {
    64 - k.unsigned_abs().leading_zeros()
}

/// Multi-index `s` of nonnegative levels naming the Littlewood–Paley block `rho(s)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DyadicShell {
    levels: SmallVec<[u32; INLINE_DIM]>,
}

impl DyadicShell {
    pub fn new(levels: impl Into<Vec<u32>>) -> Self {
        Self {
            levels: SmallVec::from_vec(levels.into()),
        }
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    /// `||s||_1`.
    pub fn l1(&self) -> u32 {
        self.levels.iter().sum()
    }

    /// Number of frequencies in `rho(s)`; always `2^{||s||_1}`.
    pub fn cardinality(&self) -> u64 {
        1u64 << self.l1()
    }

    /// Per-axis range of `|k_j|`: `[floor(2^{s_j-1}), 2^{s_j})`.
    pub fn axis_range(&self, axis: usize) -> (i64, i64) {
        let s = self.levels[axis];
        if s == 0 {
            (0, 1)
        } else {
            (1i64 << (s - 1), 1i64 << s)
        }
    }

    pub fn contains(&self, k: &FrequencyIndex) -> bool {
        k.dim() == self.dim()
            && k.coords()
                .iter()
                .zip(self.levels.iter())
                .all(|(&c, &s)| level_of(c) == s)
    }
}

impl fmt::Debug for DyadicShell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{:?}", self.levels.as_slice())
    }
}
