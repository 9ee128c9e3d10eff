use rand::Rng;

use super::rng::{TrialRng, TrialSeed};
use crate::error::SimError;
use crate::protocol::{
    CoinOutcome, HeadsDayPolicy, ObservationCondition, ValidatedConfig, Variant, WorldTrace,
};

/// Where and when an outside observer looks: a uniformly drawn tick of the
/// whole experiment span (original variant) or a uniformly drawn lab door
/// (copy variant).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TimeObservation {
    pub tick: u64,
    pub lab: u32,
}

impl TimeObservation {
    pub fn sample(cfg: &ValidatedConfig, rng: &mut impl Rng) -> Self {
        match cfg.variant() {
            Variant::Original => TimeObservation {
                tick: rng.gen_range(0..cfg.total_ticks()),
                lab: 0,
            },
            Variant::Copy => TimeObservation {
                tick: 0,
                lab: rng.gen_range(0..cfg.num_labs()),
            },
        }
    }
}

fn bernoulli(rng: &mut impl Rng, (num, den): (u64, u64)) -> bool {
    if num == den {
        return true;
    }
    rng.gen_range(0..den) < num
}

/// Runs one trial of the protocol.
pub fn simulate_trial(cfg: &ValidatedConfig, ts: TrialSeed) -> WorldTrace {
    simulate_with(cfg, &mut ts.rng(), None)
}

/// Runs one trial with the coin replaced by a fixed outcome. The remaining
/// randomness (heads day, waking device, lab choice) still comes from `ts`.
pub fn simulate_trial_with_outcome(
    cfg: &ValidatedConfig,
    ts: TrialSeed,
    outcome: CoinOutcome,
) -> WorldTrace {
    simulate_with(cfg, &mut ts.rng(), Some(outcome))
}

pub(crate) fn simulate_with(
    cfg: &ValidatedConfig,
    rng: &mut TrialRng,
    forced: Option<CoinOutcome>,
) -> WorldTrace {
    let heads = bernoulli(rng, cfg.bias_parts());
    let outcome = forced.unwrap_or(if heads {
        CoinOutcome::Heads
    } else {
        CoinOutcome::Tails
    });

    match cfg.variant() {
        Variant::Original => {
            let wake = cfg.wake_parts();
            let mut intervals = Vec::with_capacity(match outcome {
                CoinOutcome::Heads => 1,
                CoinOutcome::Tails => cfg.num_days() as usize,
            });
            match outcome {
                CoinOutcome::Heads => {
                    let day = match cfg.heads_day_policy() {
                        HeadsDayPolicy::FirstDay => 0,
                        HeadsDayPolicy::UniformRandomDay => rng.gen_range(0..cfg.num_days()),
                    };
                    if bernoulli(rng, wake) {
                        intervals.push(cfg.awakening_on(day));
                    }
                }
                CoinOutcome::Tails => {
                    for day in 0..cfg.num_days() {
                        if bernoulli(rng, wake) {
                            intervals.push(cfg.awakening_on(day));
                        }
                    }
                }
            }
            WorldTrace {
                variant: Variant::Original,
                outcome,
                realized_awakenings: intervals.len() as u32,
                awake_intervals: vec![intervals],
                occupancy: Vec::new(),
            }
        }
        Variant::Copy => {
            let labs = cfg.num_labs();
            let mut occupancy = vec![false; labs as usize];
            let first = rng.gen_range(0..labs);
            occupancy[first as usize] = true;
            if outcome == CoinOutcome::Tails {
                let mut second = rng.gen_range(0..labs - 1);
                if second >= first {
                    second += 1;
                }
                occupancy[second as usize] = true;
            }
            WorldTrace {
                variant: Variant::Copy,
                outcome,
                awake_intervals: Vec::new(),
                realized_awakenings: occupancy.iter().filter(|&&o| o).count() as u32,
                occupancy,
            }
        }
    }
}

/// Whether `cond` holds for `trace` as seen from `obs`.
///
/// For [`ObservationCondition::NoteDraw`] this only says whether the trial
/// put any note in the bowl; the per-note weighting happens in
/// [`estimate`](super::estimate).
pub fn observe(
    trace: &WorldTrace,
    obs: TimeObservation,
    cond: ObservationCondition,
) -> Result<bool, SimError> {
    cond.check_variant(trace.variant())?;
    use ObservationCondition::*;
    Ok(match cond {
        AwakeNow | PrinceFindsAwake => trace.is_awake_at(obs.tick),
        AsleepNow | PrinceFindsAsleep => !trace.is_awake_at(obs.tick),
        PrinceFindsSb => trace.occupancy()[obs.lab as usize],
        PrinceFindsEmpty => !trace.occupancy()[obs.lab as usize],
        AwakeAtLeastOnce | NoteDraw => trace.realized_awakenings() >= 1,
        // The highest-numbered lab plays the part of "Lab 2".
        SelfExists => *trace.occupancy().last().expect("at least two labs"),
    })
}
