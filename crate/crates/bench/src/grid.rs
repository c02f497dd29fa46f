//! Rule x case grids normalized by an anchor variant.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use coflow::lp::{build_interval_lp, ordering_from_cbar};
use coflow::{Case, Instance, OrderingResult, Rational, Rule};
use rayon::prelude::*;

use crate::corpus::CorpusEntry;
use crate::{column_name, evaluate, ratio, to_f64};

#[derive(Debug, Clone)]
pub struct Cell {
    pub rule: Rule,
    pub case: Case,
    pub objective: Rational,
    pub order_ms: f64,
    pub schedule_ms: f64,
}

#[derive(Debug, Clone)]
pub struct GridRow {
    pub index: usize,
    pub density: &'static str,
    pub n: usize,
    pub m: usize,
    pub anchor: Rational,
    /// Interval-LP optimum, when requested.
    pub lp_bound: Option<f64>,
    pub cells: Vec<Cell>,
}

impl GridRow {
    pub fn objective(&self, rule: Rule, case: Case) -> Option<Rational> {
        self.cells
            .iter()
            .find(|c| c.rule == rule && c.case == case)
            .map(|c| c.objective)
    }

    pub fn ratio(&self, rule: Rule, case: Case) -> Option<f64> {
        self.objective(rule, case).map(|o| ratio(&o, &self.anchor))
    }
}

#[derive(Debug, Clone)]
pub struct GridSpec {
    pub rules: Vec<Rule>,
    pub cases: Vec<Case>,
    pub anchor: (Rule, Case),
    pub lower_bound: bool,
}

#[derive(Debug, Clone)]
pub struct GridReport {
    pub spec: GridSpec,
    pub rows: Vec<GridRow>,
}

/// Ordering for `rule`; for LP also returns the relaxation optimum.
pub fn ordering_with_bound(instance: &Instance, rule: Rule) -> Result<(OrderingResult, Option<f64>)> {
    if rule == Rule::Lp {
        let sol = build_interval_lp(instance)?.solve()?;
        return Ok((ordering_from_cbar(&sol.cbar), Some(sol.objective)));
    }
    Ok((coflow::order_by_rule(instance, rule)?, None))
}

fn run_row(entry: &CorpusEntry, spec: &GridSpec) -> Result<GridRow> {
    let inst = &entry.instance;
    let mut cells = Vec::new();
    let mut lp_bound = None;
    for &rule in &spec.rules {
        let t = Instant::now();
        let (ord, bound) = ordering_with_bound(inst, rule)?;
        let order_ms = t.elapsed().as_secs_f64() * 1e3;
        lp_bound = lp_bound.or(bound);
        for &case in &spec.cases {
            let t = Instant::now();
            let objective = evaluate(inst, &ord, case)?;
            cells.push(Cell {
                rule,
                case,
                objective,
                order_ms,
                schedule_ms: t.elapsed().as_secs_f64() * 1e3,
            });
        }
    }
    let (ar, ac) = spec.anchor;
    let anchor = match cells.iter().find(|c| c.rule == ar && c.case == ac) {
        Some(c) => c.objective,
        None => {
            let (ord, bound) = ordering_with_bound(inst, ar)?;
            lp_bound = lp_bound.or(bound);
            evaluate(inst, &ord, ac)?
        }
    };
    if anchor <= Rational::from_integer(0) {
        return Err(anyhow!("anchor {} objective is not positive", column_name(ar, ac)));
    }
    if spec.lower_bound && lp_bound.is_none() {
        lp_bound = Some(coflow::bounds::lp_lower_bound(inst)?);
    }
    Ok(GridRow {
        index: entry.index,
        density: entry.density_name(),
        n: inst.len(),
        m: inst.ports(),
        anchor,
        lp_bound: if spec.lower_bound { lp_bound } else { None },
        cells,
    })
}

pub fn run_grid(corpus: &[CorpusEntry], spec: &GridSpec) -> Result<GridReport> {
    let rows = corpus
        .par_iter()
        .map(|e| run_row(e, spec).with_context(|| format!("instance {}", e.index + 1)))
        .collect::<Result<Vec<_>>>()?;
    Ok(GridReport {
        spec: spec.clone(),
        rows,
    })
}

impl GridReport {
    pub fn columns(&self) -> Vec<(Rule, Case)> {
        self.spec
            .rules
            .iter()
            .flat_map(|&r| self.spec.cases.iter().map(move |&c| (r, c)))
            .collect()
    }

    pub fn mean_ratio(&self, rule: Rule, case: Case) -> Option<f64> {
        self.mean_ratio_where(rule, case, |_| true)
    }

    pub fn mean_ratio_where(&self, rule: Rule, case: Case, keep: impl Fn(&GridRow) -> bool) -> Option<f64> {
        let v: Vec<f64> = self
            .rows
            .iter()
            .filter(|r| keep(r))
            .filter_map(|r| r.ratio(rule, case))
            .collect();
        (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("instance,density,n,m,anchor_objective");
        if self.spec.lower_bound {
            out.push_str(",lp_bound");
        }
        for (r, c) in self.columns() {
            let _ = write!(out, ",{}", column_name(r, c));
        }
        out.push('\n');
        for row in &self.rows {
            let _ = write!(
                out,
                "{},{},{},{},{}",
                row.index + 1,
                row.density,
                row.n,
                row.m,
                coflow::io::format_rational(&row.anchor)
            );
            if self.spec.lower_bound {
                let lb = row.lp_bound.map(|b| b / to_f64(&row.anchor));
                let _ = write!(out, ",{}", lb.map_or(String::new(), |v| format!("{v:.4}")));
            }
            for (r, c) in self.columns() {
                let _ = write!(out, ",{:.4}", row.ratio(r, c).unwrap_or(f64::NAN));
            }
            out.push('\n');
        }
        out
    }

    pub fn timings_csv(&self) -> String {
        let mut out = String::from("instance,rule,case,order_ms,schedule_ms\n");
        for row in &self.rows {
            for c in &row.cells {
                let _ = writeln!(
                    out,
                    "{},{},{},{:.3},{:.3}",
                    row.index + 1,
                    c.rule,
                    c.case,
                    c.order_ms,
                    c.schedule_ms
                );
            }
        }
        out
    }

    pub fn summary(&self) -> serde_json::Value {
        let means: BTreeMap<String, f64> = self
            .columns()
            .into_iter()
            .filter_map(|(r, c)| self.mean_ratio(r, c).map(|v| (column_name(r, c), v)))
            .collect();
        serde_json::json!({
            "instances": self.rows.len(),
            "anchor": column_name(self.spec.anchor.0, self.spec.anchor.1),
            "mean_ratio": means,
        })
    }
}
