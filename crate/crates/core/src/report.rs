use serde::{Deserialize, Serialize};

use crate::probability::Probability;
use crate::protocol::ObservationCondition;

/// Empirical conditional frequency of Heads next to its closed-form value.
///
/// For [`ObservationCondition::NoteDraw`] the sampling unit is a note
/// rather than a trial, so `n_conditioned` counts notes and may exceed
/// `n_trials`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CredenceReport {
    pub condition: ObservationCondition,
    pub n_trials: u64,
    pub n_conditioned: u64,
    pub n_heads: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub analytic: Probability,
    pub seed: u64,
}
