//! Output record shared by the greedy engine and the pipelines.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::pipelines::Schedule;
use crate::scalar::Real;
use crate::spectral::{DyadicShell, SpectralFunction, SpectralRepr};

/// One greedy step.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepRecord {
    pub step: usize,
    pub frequency: Vec<i64>,
    pub score: f64,
    /// Residual error after the projection of this step.
    pub error: f64,
    pub projection_iterations: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RunFlags {
    /// The residual vanished before the budget was spent.
    pub exact: bool,
    /// Some projection stopped at its iteration cap.
    pub non_converged: bool,
    /// A weighted selection ran out of blocks before reaching its budget.
    pub exhausted: bool,
}

/// Sizes and errors of the parts an approximant is assembled from.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Components {
    /// Terms contributed by the partial sum over `Q_n`.
    pub partial_sum_terms: usize,
    /// Blocks kept whole.
    pub selected_shells: Vec<DyadicShell>,
    /// Terms chosen by the greedy algorithm.
    pub greedy_terms: usize,
    /// `L_p` error of the greedy part on its own target.
    pub greedy_error: Option<f64>,
    /// `L_p` norm of the discarded remainder `g_0`.
    pub dropped_norm: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(bound = "")]
pub struct ApproxResult<T: Real> {
    #[serde(serialize_with = "serialize_terms")]
    pub terms: SpectralFunction<T>,
    /// Number of stored terms of the approximant.
    pub m_used: usize,
    /// Term bound declared by the schedule (equals `m_used` for plain greedy runs).
    pub declared_terms: usize,
    /// Error per norm tag (`"L2"`, `"L4"`, `"Linf"`, ...).
    pub errors: BTreeMap<String, f64>,
    pub schedule: Option<Schedule>,
    pub components: Components,
    pub log: Vec<StepRecord>,
    pub flags: RunFlags,
}

fn serialize_terms<T: Real, S: serde::Serializer>(
    f: &SpectralFunction<T>,
    s: S,
) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&SpectralRepr::from(f), s)
}

impl<T: Real> ApproxResult<T> {
    pub fn new(
        terms: SpectralFunction<T>,
        m_used: usize,
        errors: BTreeMap<String, f64>,
        log: Vec<StepRecord>,
        flags: RunFlags,
    ) -> Self {
        let components = Components {
            greedy_terms: m_used,
            ..Default::default()
        };
        Self {
            terms,
            m_used,
            declared_terms: m_used,
            errors,
            schedule: None,
            components,
            log,
            flags,
        }
    }

    /// The error under tag `L{p}` (`Linf` for infinite `p`).
    pub fn error(&self, p: f64) -> Option<f64> {
        let tag = if p.is_infinite() {
            "Linf".to_string()
        } else {
            format!("L{p}")
        };
        self.errors.get(&tag).copied()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}
