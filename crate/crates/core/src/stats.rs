//! Wilson score intervals and analytic-vs-empirical verdicts.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::StatsError;
use crate::probability::Probability;
use crate::report::CredenceReport;

/// Confidence used by acceptance-style checks ("3 sigma").
pub const CHECK_CONFIDENCE: f64 = 0.997;
/// Confidence used for interactive reports.
pub const REPORT_CONFIDENCE: f64 = 0.95;

/// Two-sided standard normal quantile for `confidence`.
pub fn normal_quantile(confidence: f64) -> Result<f64, StatsError> {
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(StatsError::BadConfidence(confidence));
    }
    let std = Normal::standard();
    Ok(std.inverse_cdf(1.0 - (1.0 - confidence) / 2.0))
}

/// Wilson score interval for `successes` out of `n`.
pub fn wilson_interval(successes: u64, n: u64, confidence: f64) -> Result<(f64, f64), StatsError> {
    if n == 0 {
        return Err(StatsError::EmptySample);
    }
    if successes > n {
        return Err(StatsError::TooManySuccesses { successes, n });
    }
    let z = normal_quantile(confidence)?;
    let nf = n as f64;
    let p = successes as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let center = (p + z2 / (2.0 * nf)) / denom;
    let half = z * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;

    // The closed form touches 0 and 1 exactly at the boundaries; rounding
    // must not push the point estimate outside.
    let low = if successes == 0 { 0.0 } else { (center - half).clamp(0.0, p) };
    let high = if successes == n { 1.0 } else { (center + half).clamp(p, 1.0) };
    Ok((low, high))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementVerdict {
    pub pass: bool,
    /// `None` when the analytic value is 0 or 1 and the binomial variance vanishes.
    pub z_score: Option<f64>,
    pub interval: (f64, f64),
    pub analytic: Probability,
}

/// Tests whether `report.analytic` lies in the Wilson interval of the
/// report's counts at `confidence`.
pub fn check_agreement(report: &CredenceReport, confidence: f64) -> Result<AgreementVerdict, StatsError> {
    let interval = wilson_interval(report.n_heads, report.n_conditioned, confidence)?;
    let a = report.analytic.to_f64();
    let z_score = if report.analytic.is_zero() || report.analytic.is_one() {
        None
    } else {
        let se = (a * (1.0 - a) / report.n_conditioned as f64).sqrt();
        Some((report.estimate - a) / se)
    };
    Ok(AgreementVerdict {
        pass: interval.0 <= a && a <= interval.1,
        z_score,
        interval,
        analytic: report.analytic.clone(),
    })
}
