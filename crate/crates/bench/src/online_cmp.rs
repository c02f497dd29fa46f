//! Online versus offline runs of each rule, with the port-aggregation bound.

use std::fmt::Write as _;

use anyhow::{Context, Result};
use coflow::bounds::port_aggregation_bound;
use coflow::online::run_online;
use coflow::{completion_report, Case, Instance, Rational, Rule};
use rayon::prelude::*;

use crate::corpus::CorpusEntry;
use crate::grid::ordering_with_bound;
use crate::{column_name, evaluate, ratio};

#[derive(Debug, Clone)]
pub struct OnlineRow {
    pub index: usize,
    pub density: &'static str,
    /// Offline LP order, case (c).
    pub anchor: Rational,
    pub online: Vec<(Rule, Rational)>,
    pub offline: Vec<(Rule, Rational)>,
    pub bound: Rational,
    pub heuristic_bound: bool,
}

impl OnlineRow {
    pub fn online_objective(&self, rule: Rule) -> Option<Rational> {
        self.online.iter().find(|(r, _)| *r == rule).map(|(_, o)| *o)
    }

    /// Bound over the online LP objective.
    pub fn bound_over_online_lp(&self) -> Option<f64> {
        self.online_objective(Rule::Lp).map(|o| ratio(&self.bound, &o))
    }
}

#[derive(Debug, Clone)]
pub struct OnlineReport {
    pub rules: Vec<Rule>,
    pub rows: Vec<OnlineRow>,
}

pub fn online_objective(instance: &Instance, rule: Rule) -> Result<Rational> {
    let trace = run_online(instance, rule)?;
    Ok(completion_report(instance, &trace)?.objective)
}

fn run_row(entry: &CorpusEntry, rules: &[Rule]) -> Result<OnlineRow> {
    let inst = &entry.instance;
    let mut online = Vec::new();
    let mut offline = Vec::new();
    for &rule in rules {
        online.push((rule, online_objective(inst, rule)?));
        let (ord, _) = ordering_with_bound(inst, rule)?;
        offline.push((rule, evaluate(inst, &ord, Case::C)?));
    }
    let anchor = match offline.iter().find(|(r, _)| *r == Rule::Lp) {
        Some((_, o)) => *o,
        None => evaluate(inst, &ordering_with_bound(inst, Rule::Lp)?.0, Case::C)?,
    };
    let b = port_aggregation_bound(inst);
    Ok(OnlineRow {
        index: entry.index,
        density: entry.density_name(),
        anchor,
        online,
        offline,
        bound: b.value,
        heuristic_bound: b.heuristic,
    })
}

pub fn run_online_report(corpus: &[CorpusEntry], rules: &[Rule]) -> Result<OnlineReport> {
    let rows = corpus
        .par_iter()
        .map(|e| run_row(e, rules).with_context(|| format!("instance {}", e.index + 1)))
        .collect::<Result<Vec<_>>>()?;
    Ok(OnlineReport {
        rules: rules.to_vec(),
        rows,
    })
}

impl OnlineReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("instance,density,anchor_objective");
        for r in &self.rules {
            let _ = write!(out, ",{r}_online");
        }
        for r in &self.rules {
            let _ = write!(out, ",{}", column_name(*r, Case::C));
        }
        out.push_str(",lower_bound,heuristic_bound,bound_over_online_lp\n");
        for row in &self.rows {
            let _ = write!(
                out,
                "{},{},{}",
                row.index + 1,
                row.density,
                coflow::io::format_rational(&row.anchor)
            );
            for (_, o) in row.online.iter().chain(&row.offline) {
                let _ = write!(out, ",{:.4}", ratio(o, &row.anchor));
            }
            let _ = writeln!(
                out,
                ",{:.4},{},{}",
                ratio(&row.bound, &row.anchor),
                row.heuristic_bound,
                row.bound_over_online_lp().map_or(String::new(), |v| format!("{v:.4}"))
            );
        }
        out
    }

    pub fn summary(&self) -> serde_json::Value {
        let ratios: Vec<f64> = self.rows.iter().filter_map(OnlineRow::bound_over_online_lp).collect();
        let mean = (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64);
        serde_json::json!({
            "instances": self.rows.len(),
            "rules": self.rules.iter().map(|r| r.name()).collect::<Vec<_>>(),
            "mean_bound_over_online_lp": mean,
            "heuristic_bounds": self.rows.iter().filter(|r| r.heuristic_bound).count(),
        })
    }
}
