use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand};
use sbeauty_core::{HeadsDayPolicy, ObservationCondition, Probability, Route, Variant};

use crate::sweep::SweepParam;

#[derive(Debug, Parser)]
#[command(name = "sbeauty", version, about = "Sleeping Beauty credences: exact values and simulation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the closed-form credence in Heads.
    #[command(disable_help_flag = true)]
    Analytic(AnalyticArgs),
    /// Estimate the credence by simulation and print the report.
    #[command(disable_help_flag = true)]
    Simulate(SimulateArgs),
    /// Simulate and test the analytic value against the Wilson interval.
    #[command(disable_help_flag = true)]
    Check(CheckArgs),
    /// Vary one parameter and write one CSV row per value and condition.
    #[command(disable_help_flag = true)]
    Sweep(SweepArgs),
}

/// Protocol flags shared by every command. `-h` is the coin bias, so help
/// is only available as `--help`.
#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    /// JSON config file; flags given on the command line override it.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// original or copy.
    #[arg(long)]
    pub variant: Option<Variant>,
    /// Number of days.
    #[arg(short = 'N', long = "days")]
    pub days: Option<u32>,
    /// Probability of Heads, as p/q or a decimal.
    #[arg(short = 'h', long = "bias")]
    pub bias: Option<Probability>,
    /// Hours awake per awakening.
    #[arg(short = 'z', long = "awake-hours")]
    pub awake_hours: Option<String>,
    /// Probability that a scheduled awakening happens.
    #[arg(short = 'c', long = "wake-prob")]
    pub wake_prob: Option<Probability>,
    /// Number of labs (copy variant).
    #[arg(short = 'L', long = "labs")]
    pub labs: Option<u32>,
    /// Clock resolution in hours; must divide 24 and the awake hours.
    #[arg(long)]
    pub tick_hours: Option<String>,
    /// first-day or uniform-random-day.
    #[arg(long)]
    pub heads_day: Option<HeadsDayPolicy>,
    /// Print help.
    #[arg(long, action = ArgAction::Help)]
    pub help: Option<bool>,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyticArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Conditioning event, e.g. awake-now or prince-finds-sb.
    #[arg(long)]
    pub cond: ObservationCondition,
    /// bayes or elga.
    #[arg(long, default_value = "bayes")]
    pub route: Route,
    /// Decimal digits in `analytic_decimal`.
    #[arg(long, default_value_t = 6)]
    pub precision: usize,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long)]
    pub cond: ObservationCondition,
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, default_value_t = sbeauty_core::stats::REPORT_CONFIDENCE)]
    pub confidence: f64,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long)]
    pub cond: ObservationCondition,
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, default_value_t = sbeauty_core::stats::CHECK_CONFIDENCE)]
    pub confidence: f64,
    /// Test this value instead of the closed form.
    #[arg(long)]
    pub expect: Option<Probability>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Parameter to vary: N, h, c, z or L.
    #[arg(long)]
    pub param: SweepParam,
    /// Comma-separated values.
    #[arg(long, value_delimiter = ',', required = true)]
    pub values: Vec<String>,
    /// One or more conditions, comma-separated or repeated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub cond: Vec<ObservationCondition>,
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, default_value_t = sbeauty_core::stats::CHECK_CONFIDENCE)]
    pub confidence: f64,
    /// Output CSV path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
