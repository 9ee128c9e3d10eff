//! Exact conditionals by exhaustive enumeration.
//!
//! This walks every (coin, heads day, device outcome, tick) or
//! (coin, occupancy, door) cell with its exact rational weight. It shares
//! no code with the sampler or with the closed forms, which makes it the
//! reference both are tested against.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::SimError;
use crate::probability::{Probability, Rational};
use crate::protocol::{HeadsDayPolicy, ObservationCondition, ValidatedConfig, Variant};

pub const MAX_ENUM_DAYS: u32 = 4;
pub const MAX_ENUM_TICKS: u64 = 96;
pub const MAX_ENUM_LABS: u32 = 6;
const MAX_WAKE_DENOMINATOR: u64 = 4;

fn r(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// One realised run: whether the coin was Heads, its probability, and the
/// days on which Beauty was actually woken.
struct World {
    heads: bool,
    weight: Rational,
    awake_days: Vec<u32>,
}

fn original_worlds(cfg: &ValidatedConfig) -> Vec<World> {
    let h = cfg.coin_bias().value().clone();
    let t = Rational::one() - &h;
    let c = cfg.wake_probability().value().clone();
    let miss = Rational::one() - &c;
    let n = cfg.num_days();

    let mut worlds = Vec::new();
    let heads_days: Vec<u32> = match cfg.heads_day_policy() {
        HeadsDayPolicy::FirstDay => vec![0],
        HeadsDayPolicy::UniformRandomDay => (0..n).collect(),
    };
    let per_day = Rational::one() / r(heads_days.len() as u64);
    for &d in &heads_days {
        let base = &h * &per_day;
        worlds.push(World {
            heads: true,
            weight: &base * &c,
            awake_days: vec![d],
        });
        worlds.push(World {
            heads: true,
            weight: &base * &miss,
            awake_days: vec![],
        });
    }
    for mask in 0u32..(1 << n) {
        let woken: Vec<u32> = (0..n).filter(|d| mask & (1 << d) != 0).collect();
        let k = woken.len();
        let weight = &t
            * num_traits::pow(c.clone(), k)
            * num_traits::pow(miss.clone(), n as usize - k);
        worlds.push(World {
            heads: false,
            weight,
            awake_days: woken,
        });
    }
    worlds
}

fn enumerate_original(
    cfg: &ValidatedConfig,
    cond: ObservationCondition,
) -> (Rational, Rational) {
    let per_day = cfg.ticks_per_day();
    let total = per_day * u64::from(cfg.num_days());
    let (offset, len) = (cfg.offset_ticks(), cfg.awake_ticks());
    let tick_weight = Rational::one() / r(total);

    let mut heads_mass = Rational::zero();
    let mut tails_mass = Rational::zero();
    for w in original_worlds(cfg) {
        let mass = match cond {
            ObservationCondition::AwakeAtLeastOnce => {
                if w.awake_days.is_empty() {
                    Rational::zero()
                } else {
                    w.weight.clone()
                }
            }
            ObservationCondition::NoteDraw => &w.weight * r(w.awake_days.len() as u64),
            _ => {
                let want_awake = matches!(
                    cond,
                    ObservationCondition::AwakeNow | ObservationCondition::PrinceFindsAwake
                );
                let hits = (0..total)
                    .filter(|&tick| {
                        let day = (tick / per_day) as u32;
                        let into_day = tick % per_day;
                        let awake = w.awake_days.contains(&day)
                            && into_day >= offset
                            && into_day < offset + len;
                        awake == want_awake
                    })
                    .count() as u64;
                &w.weight * &tick_weight * r(hits)
            }
        };
        if w.heads {
            heads_mass += mass;
        } else {
            tails_mass += mass;
        }
    }
    (heads_mass, tails_mass)
}

fn enumerate_copy(cfg: &ValidatedConfig, cond: ObservationCondition) -> (Rational, Rational) {
    let labs = cfg.num_labs();
    let h = cfg.coin_bias().value().clone();
    let t = Rational::one() - &h;

    let mut layouts: Vec<(bool, Rational, Vec<bool>)> = Vec::new();
    for a in 0..labs {
        let mut occ = vec![false; labs as usize];
        occ[a as usize] = true;
        layouts.push((true, &h / r(u64::from(labs)), occ));
    }
    let pairs = u64::from(labs * (labs - 1) / 2);
    for a in 0..labs {
        for b in a + 1..labs {
            let mut occ = vec![false; labs as usize];
            occ[a as usize] = true;
            occ[b as usize] = true;
            layouts.push((false, &t / r(pairs), occ));
        }
    }

    let door = Rational::one() / r(u64::from(labs));
    let mut heads_mass = Rational::zero();
    let mut tails_mass = Rational::zero();
    for (heads, weight, occ) in layouts {
        let mass = match cond {
            ObservationCondition::SelfExists => {
                if occ[labs as usize - 1] {
                    weight
                } else {
                    Rational::zero()
                }
            }
            _ => {
                let want = cond == ObservationCondition::PrinceFindsSb;
                let doors = occ.iter().filter(|&&o| o == want).count() as u64;
                weight * &door * r(doors)
            }
        };
        if heads {
            heads_mass += mass;
        } else {
            tails_mass += mass;
        }
    }
    (heads_mass, tails_mass)
}

fn check_size(cfg: &ValidatedConfig) -> Result<(), SimError> {
    let too_large = |what: String| Err(SimError::TooLargeToEnumerate(what));
    match cfg.variant() {
        Variant::Original => {
            if cfg.num_days() > MAX_ENUM_DAYS {
                return too_large(format!("{} days", cfg.num_days()));
            }
            let ticks = cfg.total_ticks();
            if ticks > MAX_ENUM_TICKS {
                return too_large(format!("{ticks} ticks"));
            }
            let c = cfg.wake_probability();
            let den = c.value().denom().to_u64().unwrap_or(u64::MAX);
            if !c.is_one() && den > MAX_WAKE_DENOMINATOR {
                return too_large(format!("wake probability {c}"));
            }
        }
        Variant::Copy => {
            if cfg.num_labs() > MAX_ENUM_LABS {
                return too_large(format!("{} labs", cfg.num_labs()));
            }
        }
    }
    Ok(())
}

/// Exact `P(Heads | cond)` by full enumeration of a small configuration.
pub fn brute_force_conditional(
    cfg: &ValidatedConfig,
    cond: ObservationCondition,
) -> Result<Probability, SimError> {
    cond.check_variant(cfg.variant())?;
    check_size(cfg)?;
    let (heads, tails) = match cfg.variant() {
        Variant::Original => enumerate_original(cfg, cond),
        Variant::Copy => enumerate_copy(cfg, cond),
    };
    Ok(Probability::posterior(heads, tails)?)
}
