use thiserror::Error;

/// Rejection reasons for a [`ProtocolConfig`](crate::ProtocolConfig).
///
/// Every variant carries a stable diagnostic code, see [`ConfigError::code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("awake hours must lie strictly between 0 and 24, got {0}")]
    ZOutOfRange(String),
    #[error("coin bias must lie strictly between 0 and 1, got {0}")]
    BiasOutOfRange(String),
    #[error("wake probability must lie in (0, 1], got {0}")]
    WakeProbabilityOutOfRange(String),
    #[error("the copy protocol needs at least 2 labs, got {0}")]
    TooFewLabs(u32),
    #[error("the experiment needs at least one day")]
    NoDays,
    #[error("tick of {tick} hours does not fit: {reason}")]
    TickMismatch { tick: String, reason: &'static str },
    #[error("{0} has a denominator too large to sample exactly")]
    DenominatorTooLarge(&'static str),
}

impl ConfigError {
    pub fn code(&self) -> &'static str {
        match self {
            ConfigError::ZOutOfRange(_) => "Z_OUT_OF_RANGE",
            ConfigError::BiasOutOfRange(_) => "BIAS_OUT_OF_RANGE",
            ConfigError::WakeProbabilityOutOfRange(_) => "WAKE_PROBABILITY_OUT_OF_RANGE",
            ConfigError::TooFewLabs(_) => "TOO_FEW_LABS",
            ConfigError::NoDays => "NO_DAYS",
            ConfigError::TickMismatch { .. } => "TICK_MISMATCH",
            ConfigError::DenominatorTooLarge(_) => "DENOMINATOR_TOO_LARGE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("cannot parse {0:?} as a rational number")]
    Rational(String),
    #[error("{0} is not a probability in [0, 1]")]
    NotAProbability(String),
    #[error("unknown {kind} {value:?}")]
    UnknownName { kind: &'static str, value: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyticError {
    /// The conditioning event has probability zero.
    #[error("conditioning event has zero probability")]
    UndefinedConditional,
    #[error("route {route} does not apply to condition {condition}")]
    RouteNotApplicable {
        route: &'static str,
        condition: &'static str,
    },
    #[error("condition {condition} does not apply to the {variant} variant")]
    IncompatibleCondition {
        condition: &'static str,
        variant: &'static str,
    },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("condition {condition} does not apply to the {variant} variant")]
    IncompatibleCondition {
        condition: &'static str,
        variant: &'static str,
    },
    #[error("no trial satisfied the condition; the conditional is undefined")]
    NoConditionedSamples,
    #[error("state space has {0} cells, too large to enumerate")]
    TooLargeToEnumerate(String),
    #[error("need at least one trial")]
    NoTrials,
    #[error("awakening offset {0} pushes the awake interval past the end of the day")]
    BadPlacement(String),
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error(transparent)]
    Stats(#[from] StatsError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("empty sample")]
    EmptySample,
    #[error("{successes} successes out of {n} trials")]
    TooManySuccesses { successes: u64, n: u64 },
    #[error("confidence must lie strictly between 0 and 1, got {0}")]
    BadConfidence(f64),
}
