use std::ops::Add;

use rayon::prelude::*;

use super::rng::StreamFactory;
use super::trial::{observe, simulate_with, TimeObservation};
use crate::analytic::{credence, Route};
use crate::error::SimError;
use crate::protocol::{CoinOutcome, ObservationCondition, ValidatedConfig};
use crate::report::CredenceReport;
use crate::stats::{wilson_interval, REPORT_CONFIDENCE};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateOptions {
    /// Worker threads. Results do not depend on this.
    pub workers: usize,
    /// Confidence of the reported Wilson interval.
    pub confidence: f64,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        EstimateOptions {
            workers: 1,
            confidence: REPORT_CONFIDENCE,
        }
    }
}

/// Counts accumulated over trials. Merging is plain integer addition, so
/// any partition of the trials over workers yields the same totals.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub n_trials: u64,
    pub n_conditioned: u64,
    pub n_heads: u64,
}

impl Add for Tally {
    type Output = Tally;

    fn add(self, rhs: Tally) -> Tally {
        Tally {
            n_trials: self.n_trials + rhs.n_trials,
            n_conditioned: self.n_conditioned + rhs.n_conditioned,
            n_heads: self.n_heads + rhs.n_heads,
        }
    }
}

fn run_trial(
    cfg: &ValidatedConfig,
    cond: ObservationCondition,
    streams: &StreamFactory,
    index: u64,
) -> Tally {
    let mut rng = streams.rng(index);
    let trace = simulate_with(cfg, &mut rng, None);
    let heads = trace.outcome() == CoinOutcome::Heads;

    // One note per awakening goes into the bowl.
    if cond == ObservationCondition::NoteDraw {
        let notes = u64::from(trace.realized_awakenings());
        return Tally {
            n_trials: 1,
            n_conditioned: notes,
            n_heads: if heads { notes } else { 0 },
        };
    }

    let obs = TimeObservation::sample(cfg, &mut rng);
    let hit = observe(&trace, obs, cond).expect("variant checked by caller");
    Tally {
        n_trials: 1,
        n_conditioned: u64::from(hit),
        n_heads: u64::from(hit && heads),
    }
}

/// Counts over trials `0..n_trials` of `master_seed`.
pub(crate) fn tally(
    cfg: &ValidatedConfig,
    cond: ObservationCondition,
    n_trials: u64,
    master_seed: u64,
    workers: usize,
) -> Tally {
    let streams = StreamFactory::new(master_seed);
    if workers <= 1 {
        return (0..n_trials)
            .map(|i| run_trial(cfg, cond, &streams, i))
            .fold(Tally::default(), Add::add);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    pool.install(|| {
        (0..n_trials)
            .into_par_iter()
            .map(|i| run_trial(cfg, cond, &streams, i))
            .reduce(Tally::default, Add::add)
    })
}

/// Estimates `P(Heads | cond)` from `n_trials` single-worker trials and
/// reports a 95% Wilson interval.
pub fn estimate(
    cfg: &ValidatedConfig,
    cond: ObservationCondition,
    n_trials: u64,
    master_seed: u64,
) -> Result<CredenceReport, SimError> {
    estimate_with(cfg, cond, n_trials, master_seed, EstimateOptions::default())
}

pub fn estimate_with(
    cfg: &ValidatedConfig,
    cond: ObservationCondition,
    n_trials: u64,
    master_seed: u64,
    opts: EstimateOptions,
) -> Result<CredenceReport, SimError> {
    cond.check_variant(cfg.variant())?;
    if n_trials == 0 {
        return Err(SimError::NoTrials);
    }
    let analytic = credence(cfg, cond, Route::Bayes)?;
    let t = tally(cfg, cond, n_trials, master_seed, opts.workers);
    if t.n_conditioned == 0 {
        return Err(SimError::NoConditionedSamples);
    }
    let (ci_low, ci_high) = wilson_interval(t.n_heads, t.n_conditioned, opts.confidence)?;
    Ok(CredenceReport {
        condition: cond,
        n_trials: t.n_trials,
        n_conditioned: t.n_conditioned,
        n_heads: t.n_heads,
        estimate: t.n_heads as f64 / t.n_conditioned as f64,
        ci_low,
        ci_high,
        analytic,
        seed: master_seed,
    })
}
