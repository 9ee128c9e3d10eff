//! Closed-form credences by direct Bayesian conditioning.
//!
//! Every function here has the shape `P(H | E) = h·P(E|H) / (h·P(E|H) + (1-h)·P(E|T))`
//! with the likelihoods written out for the event in question. The inputs
//! are plain probabilities in `[0, 1]`; the boundary values 0 and 1 are
//! allowed so the formulas can be probed at their limits.

use num_bigint::BigInt;
use num_traits::One;

use crate::elga::elga_centered_distribution;
use crate::error::AnalyticError;
use crate::probability::{int, Probability, Rational};
use crate::protocol::{ObservationCondition, ValidatedConfig, HOURS_PER_DAY};

fn n_rat(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn bayes(h: &Probability, given_heads: Rational, given_tails: Rational) -> Probability {
    let h = h.value();
    let tails = Rational::one() - h;
    Probability::posterior(h * given_heads, tails * given_tails)
        .expect("likelihoods with a nonzero total")
}

/// Credence in Heads on finding Beauty awake at a uniformly random moment.
///
/// Under Heads one of the `n` days holds an awakening, under Tails all of
/// them do, so `P(awake|H) : P(awake|T) = 1/n : 1` whatever the length of
/// an awakening.
pub fn heads_given_awake(n: u32, h: &Probability) -> Probability {
    assert!(n >= 1, "need at least one day");
    bayes(h, Rational::new(1.into(), n.into()), Rational::one())
}

/// Credence in Heads on finding Beauty asleep, with `z` awake hours per
/// awakening and every scheduled awakening happening.
pub fn heads_given_asleep(n: u32, h: &Probability, z: &Rational) -> Probability {
    heads_given_asleep_with_device(n, h, z, &Probability::one())
}

/// [`heads_given_asleep`] when each scheduled awakening only happens with
/// probability `c`.
///
/// The expected awake fraction of the `24n`-hour span is `c·z/(24n)` under
/// Heads and `c·z/24` under Tails.
pub fn heads_given_asleep_with_device(
    n: u32,
    h: &Probability,
    z: &Rational,
    c: &Probability,
) -> Probability {
    assert!(n >= 1, "need at least one day");
    let day = int(HOURS_PER_DAY);
    let span = &day * n_rat(u64::from(n));
    let asleep_heads = Rational::one() - c.value() * z / span;
    let asleep_tails = Rational::one() - c.value() * z / day;
    bayes(h, asleep_heads, asleep_tails)
}

/// The Prince opens one of `labs` doors at random. Heads fills one lab,
/// Tails fills two. The answer `h/(2-h)` does not depend on `labs`.
pub fn copy_heads_given_found(h: &Probability, labs: u32) -> Probability {
    assert!(labs >= 2, "the copy protocol needs two labs");
    let l = n_rat(u64::from(labs));
    bayes(h, Rational::one() / &l, int(2) / &l)
}

/// The Prince opens a random door and finds the lab empty.
///
/// Undefined when the event is impossible (`h = 0` with two labs).
pub fn copy_heads_given_empty(h: &Probability, labs: u32) -> Result<Probability, AnalyticError> {
    assert!(labs >= 2, "the copy protocol needs two labs");
    let l = n_rat(u64::from(labs));
    let empty_heads = (&l - int(1)) / &l;
    let empty_tails = (&l - int(2)) / &l;
    let hv = h.value();
    Probability::posterior(hv * empty_heads, (Rational::one() - hv) * empty_tails)
}

/// Beauty conditions on her own existence in the lab she labels "Lab 2":
/// occupied with probability 1/2 under Heads and 1 under Tails.
pub fn copy_heads_given_self_exists(h: &Probability) -> Probability {
    bayes(h, Rational::new(1.into(), 2.into()), Rational::one())
}

/// Credence in Heads given Beauty is woken at least once, when a device
/// wakes her at each scheduled awakening with probability `c`.
pub fn white_heads_given_awake_at_least_once(
    c: &Probability,
    n: u32,
    h: &Probability,
) -> Probability {
    assert!(n >= 1, "need at least one day");
    let c = c.value();
    let miss = Rational::one() - c;
    let all_missed = num_traits::pow(miss, n as usize);
    bayes(h, c.clone(), Rational::one() - all_missed)
}

/// Long-run fraction of "Heads" notes when one note goes in the bowl per
/// awakening: `h / (h + n·(1-h))`.
pub fn groisman_heads_note_fraction(n: u32, h: &Probability) -> Probability {
    assert!(n >= 1, "need at least one day");
    let hv = h.value().clone();
    let tail_notes = n_rat(u64::from(n)) * (Rational::one() - &hv);
    Probability::posterior(hv, tail_notes).expect("n >= 1 keeps the bowl nonempty")
}

/// Which calculation produces an analytic value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Direct conditioning on the observed event.
    Bayes,
    /// Indifference over centered worlds.
    Elga,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Bayes => "bayes",
            Route::Elga => "elga",
        }
    }
}

impl std::str::FromStr for Route {
    type Err = crate::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bayes" => Ok(Route::Bayes),
            "elga" => Ok(Route::Elga),
            _ => Err(crate::ParseError::UnknownName {
                kind: "route",
                value: s.to_string(),
            }),
        }
    }
}

/// The closed-form credence in Heads matching `cond` under `cfg`.
pub fn credence(
    cfg: &ValidatedConfig,
    cond: ObservationCondition,
    route: Route,
) -> Result<Probability, AnalyticError> {
    if !cond.applies_to(cfg.variant()) {
        return Err(AnalyticError::IncompatibleCondition {
            condition: cond.name(),
            variant: cfg.variant().name(),
        });
    }
    let h = cfg.coin_bias();
    let n = cfg.num_days();
    use ObservationCondition::*;
    match route {
        Route::Bayes => Ok(match cond {
            AwakeNow | PrinceFindsAwake => heads_given_awake(n, h),
            AsleepNow | PrinceFindsAsleep => {
                heads_given_asleep_with_device(n, h, cfg.awake_hours(), cfg.wake_probability())
            }
            AwakeAtLeastOnce => white_heads_given_awake_at_least_once(cfg.wake_probability(), n, h),
            NoteDraw => groisman_heads_note_fraction(n, h),
            PrinceFindsSb => copy_heads_given_found(h, cfg.num_labs()),
            PrinceFindsEmpty => copy_heads_given_empty(h, cfg.num_labs())?,
            SelfExists => copy_heads_given_self_exists(h),
        }),
        Route::Elga => {
            // Centered worlds are the awakenings (original) or the Beauties
            // (copy, where Tails yields two of them).
            let worlds = match cond {
                AwakeNow | PrinceFindsAwake | NoteDraw => n,
                PrinceFindsSb | SelfExists => 2,
                _ => {
                    return Err(AnalyticError::RouteNotApplicable {
                        route: Route::Elga.name(),
                        condition: cond.name(),
                    })
                }
            };
            Ok(elga_centered_distribution(worlds, h).heads_marginal())
        }
    }
}
