//! Frequency-domain data model: dyadic shells, hyperbolic crosses, block projections and norms.

pub mod function;
pub mod geometry;
pub mod grid;
pub mod index;
pub mod norms;
pub mod params;

pub use function::{EntryRepr, SpectralFunction, SpectralRepr};
pub use geometry::{
    binomial, box_dim, box_frequencies, compositions, full_cross, shell_frequencies, shell_layer,
    shell_layer_size, shells_up_to, step_cross, step_cross_size,
};
pub use grid::{smooth_size, GridFunction, GridPlan};
pub use index::{level_of, DyadicShell, FrequencyIndex};
pub use norms::{
    hrq_norm, lp_norm, lp_norm_grid, lp_square_ratio, measured_norm, norm, quadrature_oversample,
    wab_norm, DEFAULT_OVERSAMPLE, SUP_OVERSAMPLE,
};
pub use params::SmoothnessParams;
