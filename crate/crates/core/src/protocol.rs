//! The experiment's data model.
//!
//! All clock times are exact rationals in hours; a day is 24 hours. Inside a
//! validated configuration the clock is discretised into ticks of
//! `tick_hours`, and simulated timelines are stored in tick units.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ConfigError, ParseError, SimError};
use crate::probability::{
    deserialize_rational, format_rational, int, serialize_rational, Probability, Rational,
};

pub const HOURS_PER_DAY: i64 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// One Beauty, woken once under Heads and on each of N days under Tails.
    Original,
    /// Beauty is duplicated under Tails and the copies are put in separate labs.
    Copy,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Original => "original",
            Variant::Copy => "copy",
        }
    }
}

impl FromStr for Variant {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "original" => Ok(Variant::Original),
            "copy" => Ok(Variant::Copy),
            _ => Err(ParseError::UnknownName {
                kind: "variant",
                value: s.to_string(),
            }),
        }
    }
}

/// Which day carries the single awakening under Heads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HeadsDayPolicy {
    FirstDay,
    UniformRandomDay,
}

impl FromStr for HeadsDayPolicy {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "first-day" | "first" => Ok(HeadsDayPolicy::FirstDay),
            "uniform-random-day" | "uniform" => Ok(HeadsDayPolicy::UniformRandomDay),
            _ => Err(ParseError::UnknownName {
                kind: "heads-day policy",
                value: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoinOutcome {
    Heads,
    Tails,
}

/// The event a credence is conditioned on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObservationCondition {
    AwakeNow,
    AsleepNow,
    PrinceFindsAwake,
    PrinceFindsAsleep,
    PrinceFindsSb,
    PrinceFindsEmpty,
    AwakeAtLeastOnce,
    SelfExists,
    NoteDraw,
}

impl ObservationCondition {
    pub const ALL: [ObservationCondition; 9] = [
        ObservationCondition::AwakeNow,
        ObservationCondition::AsleepNow,
        ObservationCondition::PrinceFindsAwake,
        ObservationCondition::PrinceFindsAsleep,
        ObservationCondition::PrinceFindsSb,
        ObservationCondition::PrinceFindsEmpty,
        ObservationCondition::AwakeAtLeastOnce,
        ObservationCondition::SelfExists,
        ObservationCondition::NoteDraw,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ObservationCondition::AwakeNow => "awake-now",
            ObservationCondition::AsleepNow => "asleep-now",
            ObservationCondition::PrinceFindsAwake => "prince-finds-awake",
            ObservationCondition::PrinceFindsAsleep => "prince-finds-asleep",
            ObservationCondition::PrinceFindsSb => "prince-finds-sb",
            ObservationCondition::PrinceFindsEmpty => "prince-finds-empty",
            ObservationCondition::AwakeAtLeastOnce => "awake-at-least-once",
            ObservationCondition::SelfExists => "self-exists",
            ObservationCondition::NoteDraw => "note-draw",
        }
    }

    pub fn variant(self) -> Variant {
        match self {
            ObservationCondition::PrinceFindsSb
            | ObservationCondition::PrinceFindsEmpty
            | ObservationCondition::SelfExists => Variant::Copy,
            _ => Variant::Original,
        }
    }

    pub fn applies_to(self, variant: Variant) -> bool {
        self.variant() == variant
    }

    /// Conditions decided by where a single uniformly drawn tick lands.
    pub fn is_time_based(self) -> bool {
        matches!(
            self,
            ObservationCondition::AwakeNow
                | ObservationCondition::AsleepNow
                | ObservationCondition::PrinceFindsAwake
                | ObservationCondition::PrinceFindsAsleep
        )
    }

    pub(crate) fn check_variant(self, variant: Variant) -> Result<(), SimError> {
        if self.applies_to(variant) {
            Ok(())
        } else {
            Err(SimError::IncompatibleCondition {
                condition: self.name(),
                variant: variant.name(),
            })
        }
    }
}

impl fmt::Display for ObservationCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ObservationCondition {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ObservationCondition::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| ParseError::UnknownName {
                kind: "condition",
                value: s.to_string(),
            })
    }
}

/// Full parameterisation of one experiment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProtocolConfig {
    pub variant: Variant,
    pub num_days: u32,
    pub coin_bias: Probability,
    #[serde(
        serialize_with = "serialize_rational",
        deserialize_with = "deserialize_rational"
    )]
    pub awake_hours: Rational,
    pub wake_probability: Probability,
    pub heads_day_policy: HeadsDayPolicy,
    pub num_labs: u32,
    #[serde(
        serialize_with = "serialize_rational",
        deserialize_with = "deserialize_rational"
    )]
    pub tick_hours: Rational,
}

impl Default for ProtocolConfig {
    fn default() -> Self {
        ProtocolConfig {
            variant: Variant::Original,
            num_days: 2,
            coin_bias: Probability::half(),
            awake_hours: int(1),
            wake_probability: Probability::one(),
            heads_day_policy: HeadsDayPolicy::FirstDay,
            num_labs: 2,
            tick_hours: int(1),
        }
    }
}

impl ProtocolConfig {
    pub fn original(num_days: u32, coin_bias: Probability) -> Self {
        ProtocolConfig {
            num_days,
            coin_bias,
            ..Default::default()
        }
    }

    pub fn copy(coin_bias: Probability, num_labs: u32) -> Self {
        ProtocolConfig {
            variant: Variant::Copy,
            coin_bias,
            num_labs,
            ..Default::default()
        }
    }

    pub fn with_awake_hours(mut self, hours: Rational) -> Self {
        self.awake_hours = hours;
        self
    }

    pub fn with_wake_probability(mut self, c: Probability) -> Self {
        self.wake_probability = c;
        self
    }

    pub fn with_tick_hours(mut self, tick: Rational) -> Self {
        self.tick_hours = tick;
        self
    }

    pub fn with_heads_day_policy(mut self, policy: HeadsDayPolicy) -> Self {
        self.heads_day_policy = policy;
        self
    }

    pub fn validate(self) -> Result<ValidatedConfig, ConfigError> {
        ValidatedConfig::new(self)
    }
}

/// A configuration whose invariants have been checked, together with the
/// integer tick quantities the simulator and enumerator work in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedConfig {
    cfg: ProtocolConfig,
    ticks_per_day: u64,
    awake_ticks: u64,
    offset_ticks: u64,
    bias: (u64, u64),
    wake: (u64, u64),
}

pub fn validate_config(cfg: ProtocolConfig) -> Result<ValidatedConfig, ConfigError> {
    ValidatedConfig::new(cfg)
}

impl ValidatedConfig {
    fn new(cfg: ProtocolConfig) -> Result<Self, ConfigError> {
        let day = int(HOURS_PER_DAY);
        let z = &cfg.awake_hours;
        if !z.is_positive() || *z >= day {
            return Err(ConfigError::ZOutOfRange(format_rational(z)));
        }
        let h = cfg.coin_bias.value();
        if h.is_zero() || h.is_one() {
            return Err(ConfigError::BiasOutOfRange(cfg.coin_bias.to_string()));
        }
        if cfg.wake_probability.is_zero() {
            return Err(ConfigError::WakeProbabilityOutOfRange(
                cfg.wake_probability.to_string(),
            ));
        }
        if cfg.num_labs < 2 {
            return Err(ConfigError::TooFewLabs(cfg.num_labs));
        }
        if cfg.num_days == 0 {
            return Err(ConfigError::NoDays);
        }

        let tick = &cfg.tick_hours;
        let mismatch = |reason| ConfigError::TickMismatch {
            tick: format_rational(tick),
            reason,
        };
        if !tick.is_positive() {
            return Err(mismatch("tick must be positive"));
        }
        let per_day = &day / tick;
        if !per_day.is_integer() {
            return Err(mismatch("tick does not divide the 24-hour day"));
        }
        let awake = z / tick;
        if !awake.is_integer() {
            return Err(mismatch("awake hours are not a whole number of ticks"));
        }
        let ticks_per_day = per_day
            .to_integer()
            .to_u64()
            .ok_or(mismatch("tick too fine"))?;
        ticks_per_day
            .checked_mul(u64::from(cfg.num_days))
            .ok_or(mismatch("tick too fine"))?;
        let awake_ticks = awake.to_integer().to_u64().expect("awake < day");

        let bias = cfg
            .coin_bias
            .to_u64_parts()
            .ok_or(ConfigError::DenominatorTooLarge("coin bias"))?;
        let wake = cfg
            .wake_probability
            .to_u64_parts()
            .ok_or(ConfigError::DenominatorTooLarge("wake probability"))?;

        Ok(ValidatedConfig {
            cfg,
            ticks_per_day,
            awake_ticks,
            offset_ticks: 0,
            bias,
            wake,
        })
    }

    /// Test hook: start every awakening `hours` into its day instead of at
    /// hour 0. The awake interval must still end within the day.
    pub fn with_awake_offset(mut self, hours: &Rational) -> Result<Self, SimError> {
        let bad = || SimError::BadPlacement(format_rational(hours));
        let ticks = hours / &self.cfg.tick_hours;
        if hours.is_negative() || !ticks.is_integer() {
            return Err(bad());
        }
        let ticks = ticks.to_integer().to_u64().ok_or_else(bad)?;
        if ticks + self.awake_ticks > self.ticks_per_day {
            return Err(bad());
        }
        self.offset_ticks = ticks;
        Ok(self)
    }

    pub fn config(&self) -> &ProtocolConfig {
        &self.cfg
    }

    pub fn variant(&self) -> Variant {
        self.cfg.variant
    }

    pub fn num_days(&self) -> u32 {
        self.cfg.num_days
    }

    pub fn num_labs(&self) -> u32 {
        self.cfg.num_labs
    }

    pub fn coin_bias(&self) -> &Probability {
        &self.cfg.coin_bias
    }

    pub fn wake_probability(&self) -> &Probability {
        &self.cfg.wake_probability
    }

    pub fn awake_hours(&self) -> &Rational {
        &self.cfg.awake_hours
    }

    pub fn heads_day_policy(&self) -> HeadsDayPolicy {
        self.cfg.heads_day_policy
    }

    pub fn ticks_per_day(&self) -> u64 {
        self.ticks_per_day
    }

    pub fn total_ticks(&self) -> u64 {
        self.ticks_per_day * u64::from(self.cfg.num_days)
    }

    pub fn awake_ticks(&self) -> u64 {
        self.awake_ticks
    }

    pub fn offset_ticks(&self) -> u64 {
        self.offset_ticks
    }

    /// Coin bias as `(numerator, denominator)`.
    pub(crate) fn bias_parts(&self) -> (u64, u64) {
        self.bias
    }

    pub(crate) fn wake_parts(&self) -> (u64, u64) {
        self.wake
    }

    /// The awake interval of an awakening on `day` (0-based).
    pub fn awakening_on(&self, day: u32) -> TickInterval {
        let start = u64::from(day) * self.ticks_per_day + self.offset_ticks;
        TickInterval {
            start,
            end: start + self.awake_ticks,
        }
    }

    pub fn tick_to_hours(&self, tick: u64) -> Rational {
        Rational::from_integer(BigInt::from(tick)) * &self.cfg.tick_hours
    }

    /// Checks every structural invariant a trace produced under this
    /// configuration must satisfy.
    pub fn audit(&self, trace: &WorldTrace) -> Result<(), String> {
        if trace.variant != self.variant() {
            return Err("trace variant differs from config".into());
        }
        let n = self.cfg.num_days as usize;
        match trace.variant {
            Variant::Original => {
                if trace.awake_intervals.len() != 1 {
                    return Err("original trace must have exactly one lab timeline".into());
                }
                let intervals = &trace.awake_intervals[0];
                if intervals.len() != trace.realized_awakenings as usize {
                    return Err("interval count differs from realized awakenings".into());
                }
                let cap = match trace.outcome {
                    CoinOutcome::Heads => 1,
                    CoinOutcome::Tails => n,
                };
                if intervals.len() > cap {
                    return Err(format!("{} awakenings exceed cap {cap}", intervals.len()));
                }
                let mut last_day = None;
                for iv in intervals {
                    if iv.len() != self.awake_ticks {
                        return Err(format!("interval {iv:?} has wrong length"));
                    }
                    if iv.end > self.total_ticks() {
                        return Err(format!("interval {iv:?} runs past the experiment"));
                    }
                    let day = iv.start / self.ticks_per_day;
                    if (iv.end - 1) / self.ticks_per_day != day {
                        return Err(format!("interval {iv:?} spans two days"));
                    }
                    if last_day.is_some_and(|d| d >= day) {
                        return Err("more than one awakening on a day, or unsorted".into());
                    }
                    last_day = Some(day);
                }
                if self.wake_probability().is_one() && intervals.len() != cap {
                    return Err("with a certain wake-up every scheduled awakening happens".into());
                }
                let awake: u64 = intervals.iter().map(TickInterval::len).sum();
                if awake != self.awake_ticks * u64::from(trace.realized_awakenings) {
                    return Err("total awake time differs from z times awakenings".into());
                }
            }
            Variant::Copy => {
                if trace.occupancy.len() != self.cfg.num_labs as usize {
                    return Err("occupancy length differs from lab count".into());
                }
                let occupied = trace.occupancy.iter().filter(|&&o| o).count();
                let want = match trace.outcome {
                    CoinOutcome::Heads => 1,
                    CoinOutcome::Tails => 2,
                };
                if occupied != want {
                    return Err(format!("{occupied} labs occupied, expected {want}"));
                }
                if trace.realized_awakenings as usize != want {
                    return Err("copy trace counts one Beauty per occupied lab".into());
                }
            }
        }
        Ok(())
    }
}

/// Half-open tick range `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TickInterval {
    pub start: u64,
    pub end: u64,
}

impl TickInterval {
    pub fn len(&self) -> u64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }

    pub fn contains(&self, tick: u64) -> bool {
        self.start <= tick && tick < self.end
    }
}

/// One simulated run of the protocol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorldTrace {
    pub(crate) variant: Variant,
    pub(crate) outcome: CoinOutcome,
    pub(crate) awake_intervals: Vec<Vec<TickInterval>>,
    pub(crate) occupancy: Vec<bool>,
    pub(crate) realized_awakenings: u32,
}

impl WorldTrace {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn outcome(&self) -> CoinOutcome {
        self.outcome
    }

    /// Awake tick intervals per lab. Empty for the copy variant.
    pub fn awake_intervals(&self) -> &[Vec<TickInterval>] {
        &self.awake_intervals
    }

    /// Awake intervals of the single original-variant lab, in hours.
    pub fn awake_hours(&self, cfg: &ValidatedConfig) -> Vec<(Rational, Rational)> {
        self.awake_intervals
            .iter()
            .flatten()
            .map(|iv| (cfg.tick_to_hours(iv.start), cfg.tick_to_hours(iv.end)))
            .collect()
    }

    pub fn occupancy(&self) -> &[bool] {
        &self.occupancy
    }

    pub fn realized_awakenings(&self) -> u32 {
        self.realized_awakenings
    }

    pub fn is_awake_at(&self, tick: u64) -> bool {
        self.awake_intervals
            .iter()
            .flatten()
            .any(|iv| iv.contains(tick))
    }

    pub fn total_awake_ticks(&self) -> u64 {
        self.awake_intervals.iter().flatten().map(TickInterval::len).sum()
    }
}
