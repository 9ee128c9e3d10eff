//! Acceptance run: one line per criterion, non-zero exit if any fails.
//!
//! Tolerances are fixed here: Wilson containment at 0.997 confidence,
//! exact rational equality for every analytic comparison.

use std::time::{Duration, Instant};

use sbeauty_cli::run;
use sbeauty_core::analytic::{
    copy_heads_given_empty, copy_heads_given_found, copy_heads_given_self_exists, credence,
    groisman_heads_note_fraction, heads_given_asleep, heads_given_asleep_with_device,
    heads_given_awake, white_heads_given_awake_at_least_once,
};
use sbeauty_core::elga::elga_centered_distribution;
use sbeauty_core::probability::parse_rational;
use sbeauty_core::{
    brute_force_conditional, HeadsDayPolicy, ObservationCondition, Probability, ProtocolConfig,
    Rational, Route, ValidatedConfig,
};
use serde_json::Value;

const CONFIDENCE: &str = "0.997";
const RUNTIME_BUDGET: Duration = Duration::from_secs(10);
/// Master seed for the sweep criteria (the CLI default).
const SWEEP_SEED: &str = "0";

type Outcome = Result<String, String>;
/// Parsed sweep row: (value, condition, analytic, pass).
type Row = (String, String, String, bool);
type Criterion = (&'static str, fn() -> Outcome);

fn sbeauty(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["sbeauty"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(s: &str) -> Probability {
    s.parse().unwrap()
}

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn sweep(args: &[&str]) -> Result<Vec<Row>, String> {
    let (code, out, err) = sbeauty(args);
    ensure(code == 0, || format!("sweep exited {code}: {err}"))?;
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    let headers = reader.headers().map_err(|e| e.to_string())?.clone();
    ensure(
        headers.iter().collect::<Vec<_>>()
            == [
                "param",
                "value",
                "condition",
                "analytic",
                "estimate",
                "ci_low",
                "ci_high",
                "n_conditioned",
                "pass",
            ],
        || format!("bad header {headers:?}"),
    )?;
    reader
        .records()
        .map(|r| {
            let r = r.map_err(|e| e.to_string())?;
            Ok((
                r[1].to_string(),
                r[2].to_string(),
                r[3].to_string(),
                &r[8] == "true",
            ))
        })
        .collect()
}

fn thirder_baseline() -> Outcome {
    let base = [
        "check", "--variant", "original", "-N", "2", "-h", "1/2", "-z", "1", "-c", "1",
        "--cond", "awake-now", "--trials", "1000000", "--seed", "42", "--confidence", CONFIDENCE,
        "--workers", "1",
    ];
    let start = Instant::now();
    let (code, out, err) = sbeauty(&base);
    let elapsed = start.elapsed();
    ensure(code == 0, || format!("thirder check exited {code}: {out}{err}"))?;
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    ensure(v["analytic"] == "1/3", || format!("analytic {}", v["analytic"]))?;
    ensure(elapsed < RUNTIME_BUDGET, || format!("took {elapsed:?}"))?;

    let mut halfer = base.to_vec();
    halfer.extend(["--expect", "1/2"]);
    let (code, _, _) = sbeauty(&halfer);
    ensure(code == 1, || format!("halfer check exited {code}, want 1"))?;
    Ok(format!(
        "1/3 in [{:.4}, {:.4}], halfer 1/2 rejected, {:.2?} for 1e6 trials",
        v["interval"][0].as_f64().unwrap_or(f64::NAN),
        v["interval"][1].as_f64().unwrap_or(f64::NAN),
        elapsed
    ))
}

fn n_sweep() -> Outcome {
    let rows = sweep(&[
        "sweep", "--param", "N", "--values", "1,2,3,9", "--cond", "awake-now", "-h", "1/2",
        "--trials", "100000", "--seed", SWEEP_SEED, "--confidence", CONFIDENCE,
    ])?;
    let analytic: Vec<_> = rows.iter().map(|r| r.2.as_str()).collect();
    ensure(analytic == ["1/2", "1/3", "1/4", "1/10"], || {
        format!("analytic column {analytic:?}")
    })?;
    for (n, row) in [1u32, 2, 3, 9].iter().zip(&rows) {
        let exact = Probability::ratio(1, i64::from(*n) + 1);
        ensure(row.2 == exact.to_string(), || format!("N={n}: {}", row.2))?;
        ensure(row.3, || format!("N={n} simulation outside its interval"))?;
    }
    Ok("analytic 1/(N+1) for N in {1,2,3,9}, all rows contained".into())
}

fn dreaming_values() -> Outcome {
    let mut seen = Vec::new();
    for (z, want, printed) in [("23", "25/27", "0.926"), ("1", "47/93", "0.505")] {
        let cfg = ProtocolConfig::original(2, p("1/2"))
            .with_awake_hours(q(z))
            .validate()
            .map_err(|e| e.to_string())?;
        let got = brute_force_conditional(&cfg, ObservationCondition::AsleepNow)
            .map_err(|e| e.to_string())?;
        ensure(got == p(want), || format!("z={z}: {got}, want {want}"))?;
        ensure(got.to_decimal(3) == printed, || {
            format!("z={z}: renders {}", got.to_decimal(3))
        })?;
        seen.push(format!("{got}={}...", got.to_decimal(3)));
    }
    Ok(seen.join(", "))
}

fn copy_variant() -> Outcome {
    for (h, want) in [("1/2", "1/3"), ("1/4", "1/7")] {
        let (_, out, _) = sbeauty(&[
            "analytic", "--variant", "copy", "-h", h, "-L", "2", "--cond", "prince-finds-sb",
        ]);
        let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
        ensure(v["analytic_exact"] == want, || format!("h={h}: {}", v["analytic_exact"]))?;
        let (code, out, err) = sbeauty(&[
            "check", "--variant", "copy", "-h", h, "-L", "2", "--cond", "prince-finds-sb",
            "--trials", "1000000", "--seed", "42", "--confidence", CONFIDENCE,
        ]);
        ensure(code == 0, || format!("h={h} check exited {code}: {out}{err}"))?;
    }

    let (_, out, _) = sbeauty(&[
        "analytic", "--variant", "copy", "-h", "1/2", "-L", "2", "--cond", "prince-finds-empty",
    ]);
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    ensure(v["analytic_exact"] == "1", || format!("empty: {}", v["analytic_exact"]))?;
    let (code, out, err) = sbeauty(&[
        "simulate", "--variant", "copy", "-h", "1/2", "-L", "2", "--cond", "prince-finds-empty",
        "--trials", "1000000", "--seed", "42",
    ]);
    ensure(code == 0, || format!("empty simulate exited {code}: {err}"))?;
    let r: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    ensure(
        r["n_conditioned"].as_u64() > Some(0) && r["n_heads"] == r["n_conditioned"],
        || format!("empty lab: {} heads of {}", r["n_heads"], r["n_conditioned"]),
    )?;
    Ok(format!(
        "1/3 and 1/7 contained; empty lab {} of {} Heads",
        r["n_heads"], r["n_conditioned"]
    ))
}

fn white_contrast() -> Outcome {
    let rows = sweep(&[
        "sweep", "-N", "2", "-h", "1/2", "--param", "c", "--values", "0.25,0.5,1.0", "--cond",
        "awake-at-least-once,awake-now", "--trials", "100000", "--seed", SWEEP_SEED, "--confidence",
        CONFIDENCE,
    ])?;
    ensure(rows.len() == 6, || format!("{} rows", rows.len()))?;
    for row in &rows {
        let c = q(&row.0);
        let want = match row.1.as_str() {
            "awake-at-least-once" => Rational::from_integer(1.into()) / (q("3") - c),
            "awake-now" => q("1/3"),
            other => return Err(format!("unexpected condition {other}")),
        };
        ensure(q(&row.2) == want, || format!("c={} {}: {} vs {want}", row.0, row.1, row.2))?;
        ensure(row.3, || format!("c={} {} simulation outside its interval", row.0, row.1))?;
    }
    let at_least: Vec<_> = rows.iter().step_by(2).map(|r| r.2.clone()).collect();
    Ok(format!("at-least-once {at_least:?} = 1/(3-c); awake-now fixed at 1/3"))
}

fn route_equality() -> Outcome {
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for n in 1..=30u32 {
        for k in 0..=10 {
            let h = Probability::ratio(k, 10);
            let elga = elga_centered_distribution(n, &h).heads_marginal();
            if elga != heads_given_awake(n, &h) {
                mismatches.push(format!("N={n} h={h}"));
            }
            checked += 1;
        }
    }
    ensure(mismatches.is_empty(), || format!("mismatches {mismatches:?}"))?;
    Ok(format!("{checked} (N, h) pairs, zero mismatches"))
}

fn closed_form(cfg: &ValidatedConfig, cond: ObservationCondition) -> Probability {
    let (n, h, c) = (cfg.num_days(), cfg.coin_bias(), cfg.wake_probability());
    use ObservationCondition::*;
    match cond {
        AwakeNow | PrinceFindsAwake => heads_given_awake(n, h),
        AsleepNow | PrinceFindsAsleep if c.is_one() => heads_given_asleep(n, h, cfg.awake_hours()),
        AsleepNow | PrinceFindsAsleep => {
            heads_given_asleep_with_device(n, h, cfg.awake_hours(), c)
        }
        AwakeAtLeastOnce => white_heads_given_awake_at_least_once(c, n, h),
        NoteDraw => groisman_heads_note_fraction(n, h),
        PrinceFindsSb => copy_heads_given_found(h, cfg.num_labs()),
        PrinceFindsEmpty => copy_heads_given_empty(h, cfg.num_labs()).unwrap(),
        SelfExists => copy_heads_given_self_exists(h),
    }
}

fn oracle_equality() -> Outcome {
    let mut cases: Vec<(ValidatedConfig, ObservationCondition)> = Vec::new();
    let original_conds = [
        ObservationCondition::AwakeNow,
        ObservationCondition::AsleepNow,
        ObservationCondition::PrinceFindsAwake,
        ObservationCondition::PrinceFindsAsleep,
        ObservationCondition::AwakeAtLeastOnce,
        ObservationCondition::NoteDraw,
    ];
    for n in 1..=4 {
        for h in ["1/2", "1/4", "2/3"] {
            for c in ["1", "1/2"] {
                for z in ["1", "12", "23"] {
                    for policy in [HeadsDayPolicy::FirstDay, HeadsDayPolicy::UniformRandomDay] {
                        let cfg = ProtocolConfig::original(n, p(h))
                            .with_awake_hours(q(z))
                            .with_wake_probability(p(c))
                            .with_heads_day_policy(policy)
                            .validate()
                            .map_err(|e| e.to_string())?;
                        cases.extend(original_conds.iter().map(|&k| (cfg.clone(), k)));
                    }
                }
            }
        }
    }
    for labs in 2..=6 {
        for h in ["1/2", "1/4"] {
            let cfg = ProtocolConfig::copy(p(h), labs)
                .validate()
                .map_err(|e| e.to_string())?;
            for cond in [
                ObservationCondition::PrinceFindsSb,
                ObservationCondition::PrinceFindsEmpty,
                ObservationCondition::SelfExists,
            ] {
                cases.push((cfg.clone(), cond));
            }
        }
    }
    ensure(cases.len() >= 40, || format!("only {} cases", cases.len()))?;
    let mut mismatches = Vec::new();
    for (cfg, cond) in &cases {
        let brute = brute_force_conditional(cfg, *cond).map_err(|e| e.to_string())?;
        let exact = closed_form(cfg, *cond);
        let routed = credence(cfg, *cond, Route::Bayes).map_err(|e| e.to_string())?;
        if brute != exact || brute != routed {
            mismatches.push(format!("{:?} {cond}: {brute} vs {exact}", cfg.config()));
        }
    }
    ensure(mismatches.is_empty(), || format!("{mismatches:?}"))?;
    Ok(format!("{} enumerable configurations, exact equality", cases.len()))
}

fn determinism() -> Outcome {
    let triples: [&[&str]; 3] = [
        &["-N", "2", "--cond", "awake-now", "--seed", "42"],
        &["--variant", "copy", "-h", "1/4", "-L", "3", "--cond", "prince-finds-sb", "--seed", "7"],
        &["-N", "3", "-h", "1/3", "-c", "1/2", "-z", "5", "--cond", "asleep-now", "--seed", "2024"],
    ];
    for triple in triples {
        let outputs: Vec<String> = ["1", "2", "8"]
            .iter()
            .map(|w| {
                let mut args = vec!["simulate", "--trials", "200000", "--workers", w];
                args.extend_from_slice(triple);
                sbeauty(&args).1
            })
            .collect();
        ensure(!outputs[0].is_empty(), || format!("{triple:?} produced no output"))?;
        ensure(outputs.iter().all(|o| o == &outputs[0]), || {
            format!("{triple:?} differs across workers")
        })?;
    }
    Ok("3 configurations byte-identical for workers 1, 2, 8".into())
}

fn limit_property() -> Outcome {
    let half = Probability::half();
    let n = 1_000_000u32;
    let got = heads_given_awake(n, &half);
    ensure(got == Probability::ratio(1, 1_000_001), || format!("got {got}"))?;
    let trend: Vec<_> = [1, 10, 100, 1_000, 10_000, 100_000, n]
        .iter()
        .map(|&k| heads_given_awake(k, &half))
        .collect();
    ensure(trend.windows(2).all(|w| w[1] < w[0]), || format!("not decreasing: {trend:?}"))?;
    // The Prince learns nothing from an event that happens in every run.
    let prior = white_heads_given_awake_at_least_once(&Probability::one(), n, &half);
    ensure(prior == half, || format!("prior moved to {prior}"))?;
    Ok(format!("heads_given_awake(1e6, 1/2) = {got}; prior stays {prior}"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("thirder baseline", thirder_baseline),
        ("N-sweep", n_sweep),
        ("dreaming values", dreaming_values),
        ("copy variant", copy_variant),
        ("White contrast", white_contrast),
        ("route equality", route_equality),
        ("oracle equality", oracle_equality),
        ("determinism", determinism),
        ("limit property", limit_property),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS  {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {}. {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
