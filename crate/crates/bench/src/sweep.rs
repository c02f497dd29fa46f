//! Release-time scaling: average objective ratio of each rule to a reference
//! rule as inter-arrival gaps grow.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::Result;
use coflow::instances::{generate_synthetic, with_release_times, Density};
use coflow::{Case, Rule};
use rayon::prelude::*;

use crate::corpus::instance_seed;
use crate::grid::ordering_with_bound;
use crate::{evaluate, ratio};

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub m: usize,
    pub coflows: usize,
    pub density: Density,
    pub samples: usize,
    pub uppers: Vec<u64>,
    pub rules: Vec<Rule>,
    pub reference: Rule,
    pub case: Case,
    pub seed: u64,
    pub release_seed: u64,
}

#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub upper: u64,
    /// Mean over samples of `objective(rule) / objective(reference)`.
    pub mean_ratio: BTreeMap<Rule, f64>,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub spec: SweepSpec,
    pub points: Vec<SweepPoint>,
}

fn sample_ratios(spec: &SweepSpec, sample: usize, upper: u64) -> Result<Vec<f64>> {
    let base = generate_synthetic(spec.m, spec.coflows, spec.density, instance_seed(spec.seed, sample))?;
    let inst = with_release_times(&base, upper, instance_seed(spec.release_seed, sample))?;
    let mut rules = spec.rules.clone();
    if !rules.contains(&spec.reference) {
        rules.push(spec.reference);
    }
    let mut objectives = BTreeMap::new();
    for &rule in &rules {
        let (ord, _) = ordering_with_bound(&inst, rule)?;
        objectives.insert(rule, evaluate(&inst, &ord, spec.case)?);
    }
    let reference = objectives[&spec.reference];
    Ok(spec.rules.iter().map(|r| ratio(&objectives[r], &reference)).collect())
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepReport> {
    let jobs: Vec<(usize, usize)> = (0..spec.uppers.len())
        .flat_map(|u| (0..spec.samples).map(move |s| (u, s)))
        .collect();
    let results = jobs
        .par_iter()
        .map(|&(u, s)| sample_ratios(spec, s, spec.uppers[u]))
        .collect::<Result<Vec<_>>>()?;
    let points = spec
        .uppers
        .iter()
        .enumerate()
        .map(|(u, &upper)| {
            let rows = &results[u * spec.samples..(u + 1) * spec.samples];
            let mean_ratio = spec
                .rules
                .iter()
                .enumerate()
                .map(|(i, &r)| (r, rows.iter().map(|row| row[i]).sum::<f64>() / rows.len().max(1) as f64))
                .collect();
            SweepPoint { upper, mean_ratio }
        })
        .collect();
    Ok(SweepReport {
        spec: spec.clone(),
        points,
    })
}

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("upper,samples");
        for r in &self.spec.rules {
            let _ = write!(out, ",{r}");
        }
        out.push('\n');
        for p in &self.points {
            let _ = write!(out, "{},{}", p.upper, self.spec.samples);
            for r in &self.spec.rules {
                let _ = write!(out, ",{:.4}", p.mean_ratio[r]);
            }
            out.push('\n');
        }
        out
    }

    pub fn summary(&self) -> serde_json::Value {
        serde_json::json!({
            "reference": self.spec.reference.name(),
            "case": self.spec.case.name(),
            "samples": self.spec.samples,
            "density": self.spec.density.name(),
            "uppers": self.spec.uppers,
        })
    }
}
