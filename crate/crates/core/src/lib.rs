//! Exact credences and Monte Carlo checks for Sleeping Beauty style protocols.
//!
//! The crate is split along the lines of the experiment itself:
//!
//! * [`protocol`] holds the data model: configurations, coin outcomes,
//!   simulated timelines and the observation events a credence is
//!   conditioned on.
//! * [`analytic`] computes closed-form credences by direct Bayesian
//!   conditioning, and [`elga`] computes the same per-awakening credences a
//!   second way, by distributing weight over centered worlds.
//! * [`montecarlo`] simulates the physical protocol trial by trial, and also
//!   carries an exhaustive enumerator used as an exact oracle.
//! * [`stats`] turns counts into Wilson intervals and agreement verdicts.

pub mod analytic;
pub mod elga;
pub mod error;
pub mod montecarlo;
pub mod probability;
pub mod protocol;
pub mod report;
pub mod stats;

pub use analytic::Route;
pub use elga::{CenteredWorld, CenteredWorldDist};
pub use error::{AnalyticError, ConfigError, ParseError, SimError, StatsError};
pub use montecarlo::{
    brute_force_conditional, estimate, estimate_with, observe, simulate_trial, EstimateOptions,
    TimeObservation, TrialSeed,
};
pub use probability::{Probability, Rational};
pub use protocol::{
    CoinOutcome, HeadsDayPolicy, ObservationCondition, ProtocolConfig, ValidatedConfig, Variant,
    WorldTrace,
};
pub use report::CredenceReport;
pub use stats::{check_agreement, wilson_interval, AgreementVerdict};
