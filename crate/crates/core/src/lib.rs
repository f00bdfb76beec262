//! Constructive greedy m-term trigonometric approximation of functions with mixed smoothness.
//!
//! The crate is generic over the real scalar type (see [`Real`]); the `*64` / `*32`
//! aliases below fix it for the common cases.

pub mod bench;
pub mod error;
pub mod greedy;
pub mod kernels;
pub mod pipelines;
pub mod result;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use greedy::WcgaConfig;
pub use pipelines::{Regime, Schedule};
pub use result::ApproxResult;
pub use scalar::{Cplx, Real};
pub use spectral::{DyadicShell, FrequencyIndex, SmoothnessParams};

pub type SpectralFunction64 = spectral::SpectralFunction<f64>;
pub type SpectralFunction32 = spectral::SpectralFunction<f32>;
pub type ApproxResult64 = result::ApproxResult<f64>;
pub type ApproxResult32 = result::ApproxResult<f32>;
