//! Cost of the matching constraints: diagonal coflows against spread
//! coflows with identical row and column sums.

use std::fmt::Write as _;

use anyhow::{Context, Result};
use coflow::instances::{diagonalize, spread_diagonal};
use coflow::{Case, Rational, Rule};
use rayon::prelude::*;

use crate::corpus::{instance_seed, CorpusEntry};
use crate::grid::ordering_with_bound;
use crate::{evaluate, ratio};

#[derive(Debug, Clone)]
pub struct MatchingRow {
    pub index: usize,
    pub density: &'static str,
    /// `(rule, diagonal objective, spread objective)`.
    pub objectives: Vec<(Rule, Rational, Rational)>,
}

#[derive(Debug, Clone)]
pub struct MatchingReport {
    pub rules: Vec<Rule>,
    pub case: Case,
    pub rows: Vec<MatchingRow>,
}

pub fn run_matching(corpus: &[CorpusEntry], rules: &[Rule], case: Case, seed: u64) -> Result<MatchingReport> {
    let rows = corpus
        .par_iter()
        .map(|e| {
            let diag = diagonalize(&e.instance)?;
            let spread = spread_diagonal(&diag, instance_seed(seed, e.index))?;
            let objectives = rules
                .iter()
                .map(|&rule| {
                    let d = evaluate(&diag, &ordering_with_bound(&diag, rule)?.0, case)?;
                    let s = evaluate(&spread, &ordering_with_bound(&spread, rule)?.0, case)?;
                    Ok((rule, d, s))
                })
                .collect::<Result<Vec<_>>>()
                .with_context(|| format!("instance {}", e.index + 1))?;
            Ok(MatchingRow {
                index: e.index,
                density: e.density_name(),
                objectives,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MatchingReport {
        rules: rules.to_vec(),
        case,
        rows,
    })
}

impl MatchingReport {
    /// Batch means of the diagonal and spread objectives for `rule`.
    pub fn means(&self, rule: Rule) -> (f64, f64) {
        let mut d = 0.0;
        let mut s = 0.0;
        for row in &self.rows {
            if let Some((_, od, os)) = row.objectives.iter().find(|(r, _, _)| *r == rule) {
                d += crate::to_f64(od);
                s += crate::to_f64(os);
            }
        }
        let n = self.rows.len().max(1) as f64;
        (d / n, s / n)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("instance,density");
        for r in &self.rules {
            let _ = write!(out, ",{r}_spread_over_diagonal");
        }
        out.push('\n');
        for row in &self.rows {
            let _ = write!(out, "{},{}", row.index + 1, row.density);
            for (_, d, s) in &row.objectives {
                let _ = write!(out, ",{:.4}", ratio(s, d));
            }
            out.push('\n');
        }
        out
    }

    pub fn summary(&self) -> serde_json::Value {
        let means: serde_json::Map<String, serde_json::Value> = self
            .rules
            .iter()
            .map(|&r| {
                let (d, s) = self.means(r);
                (r.name().to_string(), serde_json::json!({"diagonal": d, "spread": s}))
            })
            .collect();
        serde_json::json!({
            "instances": self.rows.len(),
            "case": self.case.name(),
            "mean_objective": means,
        })
    }
}
