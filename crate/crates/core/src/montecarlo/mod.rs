//! Trial-by-trial simulation of the protocol and the exact enumerator used
//! to check it.

mod enumerate;
mod estimate;
mod rng;
mod trial;

pub use enumerate::{brute_force_conditional, MAX_ENUM_DAYS, MAX_ENUM_LABS, MAX_ENUM_TICKS};
pub use estimate::{estimate, estimate_with, EstimateOptions, Tally};
pub use rng::{TrialRng, TrialSeed};
pub use trial::{observe, simulate_trial, simulate_trial_with_outcome, TimeObservation};
