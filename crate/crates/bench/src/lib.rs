//! Experiment harness: rule x case grids, release sweeps, online comparison
//! and the cost-of-matching study. Every objective comes from a validated
//! trace.

pub mod config;
pub mod corpus;
pub mod grid;
pub mod matching;
pub mod online_cmp;
pub mod sweep;

use std::path::Path;

use anyhow::{Context, Result};
use coflow::{completion_report, run_schedule, Case, Instance, OrderingResult, Rational, Rule};

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn ratio(a: &Rational, b: &Rational) -> f64 {
    to_f64(&(a / b))
}

pub fn column_name(rule: Rule, case: Case) -> String {
    format!("{}_{}", rule.name(), case.name())
}

/// Schedules, validates and returns the weighted completion time.
pub fn evaluate(instance: &Instance, ordering: &OrderingResult, case: Case) -> Result<Rational> {
    let trace = run_schedule(instance, ordering, case)?;
    Ok(completion_report(instance, &trace)
        .with_context(|| format!("{} case {case} produced an invalid schedule", ordering.rule))?
        .objective)
}

/// Sidecar contents shared by all reports.
pub fn sidecar(command: &str, config: &config::Config, result: serde_json::Value) -> serde_json::Value {
    serde_json::json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "seeds": {
            "corpus": config.corpus.seed,
            "releases": config.corpus.release_seed,
        },
        "config": serde_json::to_value(config).expect("config serializes"),
        "result": result,
    })
}

/// Writes `csv` to `out` (stdout when absent), the sidecar to `out` with a
/// `.json` extension, and optional timings to `.timings.csv`.
pub fn write_outputs(
    out: Option<&Path>,
    csv: &str,
    summary: &serde_json::Value,
    timings: Option<&str>,
) -> Result<()> {
    let Some(path) = out else {
        print!("{csv}");
        return Ok(());
    };
    std::fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?;
    let json = serde_json::to_string_pretty(summary)? + "\n";
    let side = path.with_extension("json");
    std::fs::write(&side, json).with_context(|| format!("writing {}", side.display()))?;
    if let Some(t) = timings {
        let tp = path.with_extension("timings.csv");
        std::fs::write(&tp, t).with_context(|| format!("writing {}", tp.display()))?;
    }
    Ok(())
}
