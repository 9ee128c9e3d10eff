use std::fs::File;
use std::io::{BufWriter, Write};

use sbeauty_core::analytic::credence;
use sbeauty_core::probability::parse_rational;
use sbeauty_core::{
    check_agreement, estimate_with, EstimateOptions, ObservationCondition, ProtocolConfig,
    ValidatedConfig,
};
use serde::Serialize;

use crate::args::{
    AnalyticArgs, CheckArgs, Cli, Command, ScenarioArgs, SimulateArgs, SweepArgs,
};
use crate::sweep::{write_csv, SweepSpec};
use crate::{Failure, EXIT_DISAGREE, EXIT_OK};

pub(crate) fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Analytic(a) => analytic(a, out),
        Command::Simulate(a) => simulate(a, out),
        Command::Check(a) => check(a, out),
        Command::Sweep(a) => sweep(a, out),
    }
}

impl ScenarioArgs {
    /// The config file (or defaults) with command-line overrides applied.
    pub(crate) fn protocol(&self) -> Result<ProtocolConfig, Failure> {
        let mut cfg = match &self.config {
            Some(path) => {
                let file = File::open(path)
                    .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
                serde_json::from_reader(file)
                    .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?
            }
            None => ProtocolConfig::default(),
        };
        if let Some(v) = self.variant {
            cfg.variant = v;
        }
        if let Some(n) = self.days {
            cfg.num_days = n;
        }
        if let Some(h) = &self.bias {
            cfg.coin_bias = h.clone();
        }
        if let Some(z) = &self.awake_hours {
            cfg.awake_hours = parse_rational(z).map_err(|e| Failure::usage(e.to_string()))?;
        }
        if let Some(c) = &self.wake_prob {
            cfg.wake_probability = c.clone();
        }
        if let Some(l) = self.labs {
            cfg.num_labs = l;
        }
        if let Some(t) = &self.tick_hours {
            cfg.tick_hours = parse_rational(t).map_err(|e| Failure::usage(e.to_string()))?;
        }
        if let Some(p) = self.heads_day {
            cfg.heads_day_policy = p;
        }
        Ok(cfg)
    }

    pub(crate) fn validated(&self, cond: ObservationCondition) -> Result<ValidatedConfig, Failure> {
        let cfg = self
            .protocol()?
            .validate()
            .map_err(|e| Failure::usage(format!("[{}] {e}", e.code())))?;
        if !cond.applies_to(cfg.variant()) {
            return Err(Failure::usage(format!(
                "condition {cond} does not apply to the {} variant",
                cfg.variant().name()
            )));
        }
        Ok(cfg)
    }
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serialisable");
    writeln!(out, "{text}").map_err(|e| Failure::usage(e.to_string()))
}

#[derive(Serialize)]
struct AnalyticOutput {
    condition: ObservationCondition,
    analytic_exact: String,
    analytic_decimal: String,
    formula_route: &'static str,
}

fn analytic(a: AnalyticArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = a.scenario.validated(a.cond)?;
    let p = credence(&cfg, a.cond, a.route).map_err(|e| Failure::usage(e.to_string()))?;
    emit_json(
        out,
        &AnalyticOutput {
            condition: a.cond,
            analytic_exact: p.to_string(),
            analytic_decimal: p.to_decimal(a.precision),
            formula_route: a.route.name(),
        },
    )?;
    Ok(EXIT_OK)
}

fn options(workers: usize, confidence: f64) -> Result<EstimateOptions, Failure> {
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Failure::usage(format!(
            "confidence must lie strictly between 0 and 1, got {confidence}"
        )));
    }
    Ok(EstimateOptions {
        workers: workers.max(1),
        confidence,
    })
}

fn simulate(a: SimulateArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = a.scenario.validated(a.cond)?;
    let opts = options(a.run.workers, a.confidence)?;
    let report = estimate_with(&cfg, a.cond, a.run.trials, a.run.seed, opts)?;
    emit_json(out, &report)?;
    Ok(EXIT_OK)
}

fn check(a: CheckArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = a.scenario.validated(a.cond)?;
    let opts = options(a.run.workers, a.confidence)?;
    let mut report = estimate_with(&cfg, a.cond, a.run.trials, a.run.seed, opts)?;
    if let Some(expect) = a.expect {
        report.analytic = expect;
    }
    let verdict = check_agreement(&report, a.confidence)
        .map_err(|e| Failure::usage(e.to_string()))?;
    emit_json(out, &verdict)?;
    Ok(if verdict.pass { EXIT_OK } else { EXIT_DISAGREE })
}

fn sweep(a: SweepArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let spec = SweepSpec {
        parameter: a.param,
        values: a.values,
        fixed: a.scenario.protocol()?,
        conditions: a.cond,
    };
    let opts = options(a.run.workers, a.confidence)?;
    // Validate everything and open --out before spending time on simulation.
    spec.configs()?;
    let sink: Option<BufWriter<File>> = match &a.out {
        Some(path) => Some(BufWriter::new(File::create(path).map_err(|e| {
            Failure::usage(format!("{}: {e}", path.display()))
        })?)),
        None => None,
    };
    let rows = spec.run(a.run.trials, a.run.seed, opts)?;
    let written = match sink {
        Some(file) => write_csv(&rows, file),
        None => write_csv(&rows, out),
    };
    written.map_err(|e| Failure::usage(e.to_string()))?;
    Ok(EXIT_OK)
}
