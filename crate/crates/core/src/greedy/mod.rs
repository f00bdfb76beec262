//! Selection mechanisms: block rearrangement and the Weak Chebyshev Greedy Algorithm.

pub mod rearrange;
pub mod select;
pub mod wcga;

pub use rearrange::{rearrangement_bound_lqp, rearrangement_bound_lqpw};
pub use select::{top_blocks, weighted_budget_select, BlockScore, WeightedSelection};
pub use wcga::{chebyshev_project, norming_scores, wcga, Projection, WcgaConfig};
