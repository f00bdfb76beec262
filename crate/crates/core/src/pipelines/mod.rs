//! The constructive m-term methods: block schedules for `p <= 2`, the two-part greedy method
//! for `p > 2`, and the `q = 1` methods.

pub mod approx;
pub mod schedule;

pub use approx::{
    approx_auto, approx_p_gt_2, approx_q1, approx_regime, approx_small_q_le_p_le_2,
    approx_weighted_critical, approx_with_schedule, diagnostic_lemma_l43, split_ga_g0,
};
pub use schedule::{
    make_schedule, make_schedule_at, shells_on_level, BudgetKind, Regime, Schedule, CRITICAL_TOL,
};
