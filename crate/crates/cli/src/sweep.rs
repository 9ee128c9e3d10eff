use std::io::Write;
use std::str::FromStr;

use sbeauty_core::probability::{format_rational, parse_rational};
use sbeauty_core::{
    check_agreement, estimate_with, EstimateOptions, ObservationCondition, Probability,
    ProtocolConfig, SimError, ValidatedConfig,
};
use serde::Serialize;

use crate::Failure;

pub const CSV_HEADER: [&str; 9] = [
    "param",
    "value",
    "condition",
    "analytic",
    "estimate",
    "ci_low",
    "ci_high",
    "n_conditioned",
    "pass",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Days,
    Bias,
    WakeProbability,
    AwakeHours,
    Labs,
}

impl SweepParam {
    pub fn symbol(self) -> &'static str {
        match self {
            SweepParam::Days => "N",
            SweepParam::Bias => "h",
            SweepParam::WakeProbability => "c",
            SweepParam::AwakeHours => "z",
            SweepParam::Labs => "L",
        }
    }
}

impl FromStr for SweepParam {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "N" | "days" => SweepParam::Days,
            "h" | "bias" => SweepParam::Bias,
            "c" | "wake-prob" => SweepParam::WakeProbability,
            "z" | "awake-hours" => SweepParam::AwakeHours,
            "L" | "labs" => SweepParam::Labs,
            _ => return Err(format!("unknown sweep parameter {s:?} (expected N, h, c, z or L)")),
        })
    }
}

/// One parameter varied over explicit values with everything else fixed.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub parameter: SweepParam,
    pub values: Vec<String>,
    pub fixed: ProtocolConfig,
    pub conditions: Vec<ObservationCondition>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub param: &'static str,
    pub value: String,
    pub condition: ObservationCondition,
    pub analytic: String,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub n_conditioned: u64,
    pub pass: bool,
}

impl SweepSpec {
    /// Validated configs for every value, with the value rendered exactly.
    pub fn configs(&self) -> Result<Vec<(String, ValidatedConfig)>, Failure> {
        if self.values.is_empty() {
            return Err(Failure::usage("sweep needs at least one value"));
        }
        if self.conditions.is_empty() {
            return Err(Failure::usage("sweep needs at least one condition"));
        }
        self.values
            .iter()
            .map(|raw| {
                let bad = |e: &dyn std::fmt::Display| {
                    Failure::usage(format!("bad value {raw:?} for {}: {e}", self.parameter.symbol()))
                };
                let mut cfg = self.fixed.clone();
                let rendered = match self.parameter {
                    SweepParam::Days | SweepParam::Labs => {
                        let n: u32 = raw.trim().parse().map_err(|e| bad(&e))?;
                        if self.parameter == SweepParam::Days {
                            cfg.num_days = n;
                        } else {
                            cfg.num_labs = n;
                        }
                        n.to_string()
                    }
                    SweepParam::Bias | SweepParam::WakeProbability => {
                        let p: Probability = raw.parse().map_err(|e| bad(&e))?;
                        let text = p.to_string();
                        if self.parameter == SweepParam::Bias {
                            cfg.coin_bias = p;
                        } else {
                            cfg.wake_probability = p;
                        }
                        text
                    }
                    SweepParam::AwakeHours => {
                        let z = parse_rational(raw).map_err(|e| bad(&e))?;
                        let text = format_rational(&z);
                        cfg.awake_hours = z;
                        text
                    }
                };
                let cfg = cfg
                    .validate()
                    .map_err(|e| bad(&format!("[{}] {e}", e.code())))?;
                for cond in &self.conditions {
                    if !cond.applies_to(cfg.variant()) {
                        return Err(Failure::usage(format!(
                            "condition {cond} does not apply to the {} variant",
                            cfg.variant().name()
                        )));
                    }
                }
                Ok((rendered, cfg))
            })
            .collect()
    }

    /// Every (value, condition) row; all rows share the master seed.
    pub fn run(
        &self,
        trials: u64,
        seed: u64,
        opts: EstimateOptions,
    ) -> Result<Vec<SweepRow>, Failure> {
        let mut rows = Vec::new();
        for (value, cfg) in self.configs()? {
            for &cond in &self.conditions {
                let report = estimate_with(&cfg, cond, trials, seed, opts)?;
                let verdict = check_agreement(&report, opts.confidence)
                    .map_err(|e| Failure::from(SimError::from(e)))?;
                rows.push(SweepRow {
                    param: self.parameter.symbol(),
                    value: value.clone(),
                    condition: cond,
                    analytic: report.analytic.to_string(),
                    estimate: report.estimate,
                    ci_low: report.ci_low,
                    ci_high: report.ci_high,
                    n_conditioned: report.n_conditioned,
                    pass: verdict.pass,
                });
            }
        }
        Ok(rows)
    }
}

pub fn write_csv(rows: &[SweepRow], sink: impl Write) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(sink);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
