//! Experiment harness: exact `L_2` oracle, rate sweeps, slope fits and invariant suites.

pub mod checks;
pub mod fit;
pub mod oracle;
pub mod sweep;

pub use checks::{run_suite, CheckOutcome, Suite};
pub use fit::{fit_points, fit_slope, SlopeFit, Window};
pub use oracle::l2_oracle;
pub use sweep::{rate_sweep, Method, Precision, RateRow, RateTable, RunConfig, CSV_HEADER};
