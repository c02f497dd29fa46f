//! Coflow ordering rules.
//!
//! Every rule returns a permutation of coflow indices plus the per-coflow score
//! that produced it. Ties always break by ascending coflow index.

use std::fmt;
use std::str::FromStr;

use crate::error::{LpError, UnknownTag};
use crate::model::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Fifo,
    Stpt,
    Smpt,
    Smct,
    Ect,
    Lp,
}

impl Rule {
    pub const ALL: [Rule; 6] = [Rule::Fifo, Rule::Stpt, Rule::Smpt, Rule::Smct, Rule::Ect, Rule::Lp];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Fifo => "FIFO",
            Rule::Stpt => "STPT",
            Rule::Smpt => "SMPT",
            Rule::Smct => "SMCT",
            Rule::Ect => "ECT",
            Rule::Lp => "LP",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = UnknownTag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fifo" => Ok(Rule::Fifo),
            "stpt" => Ok(Rule::Stpt),
            "smpt" => Ok(Rule::Smpt),
            "smct" => Ok(Rule::Smct),
            "ect" => Ok(Rule::Ect),
            "lp" => Ok(Rule::Lp),
            _ => Err(UnknownTag {
                kind: "ordering rule",
                value: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderingResult {
    /// Coflow indices in scheduling order.
    pub permutation: Vec<usize>,
    /// Score per coflow index (not per position).
    pub scores: Vec<f64>,
    pub rule: Rule,
}

impl OrderingResult {
    pub fn new(rule: Rule, permutation: Vec<usize>, scores: Vec<f64>) -> Self {
        OrderingResult {
            permutation,
            scores,
            rule,
        }
    }

    /// True when `permutation` is a bijection on `0..n`.
    pub fn is_permutation_of(&self, n: usize) -> bool {
        if self.permutation.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &k in &self.permutation {
            if k >= n || seen[k] {
                return false;
            }
            seen[k] = true;
        }
        true
    }

    /// 1-based ids in order, as printed in reports.
    pub fn ids(&self) -> Vec<usize> {
        self.permutation.iter().map(|k| k + 1).collect()
    }
}

fn sort_by_score(rule: Rule, scores: Vec<f64>) -> OrderingResult {
    let mut perm: Vec<usize> = (0..scores.len()).collect();
    perm.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]).then(a.cmp(&b)));
    OrderingResult::new(rule, perm, scores)
}

/// Release order; with all releases zero, the instance order.
pub fn order_fifo(instance: &Instance) -> OrderingResult {
    if instance.zero_release() {
        let n = instance.len();
        return OrderingResult::new(
            Rule::Fifo,
            (0..n).collect(),
            (0..n).map(|k| k as f64).collect(),
        );
    }
    sort_by_score(
        Rule::Fifo,
        instance.coflows().iter().map(|c| c.release() as f64).collect(),
    )
}

/// Total demand plus release.
pub fn order_stpt(instance: &Instance) -> OrderingResult {
    sort_by_score(
        Rule::Stpt,
        instance
            .coflows()
            .iter()
            .map(|c| (c.total() + c.release()) as f64)
            .collect(),
    )
}

/// Load plus release.
pub fn order_smpt(instance: &Instance) -> OrderingResult {
    sort_by_score(
        Rule::Smpt,
        instance
            .coflows()
            .iter()
            .map(|c| (c.load() + c.release()) as f64)
            .collect(),
    )
}

/// Largest completion time over `2m` independent single-port machines, each
/// sequencing its jobs by `load + release` without preemption. Coflows that
/// put no load on a port are not jobs of that port's machine.
pub fn order_smct(instance: &Instance) -> OrderingResult {
    let n = instance.len();
    let loads: Vec<_> = instance.coflows().iter().map(|c| c.loads()).collect();
    let releases: Vec<u64> = instance.coflows().iter().map(|c| c.release()).collect();
    let mut worst = vec![0u64; n];
    let mut jobs: Vec<(u64, usize)> = Vec::with_capacity(n);
    for port in 0..2 * instance.ports() {
        jobs.clear();
        for (k, l) in loads.iter().enumerate() {
            let p = l.all().nth(port).unwrap_or(0);
            if p > 0 {
                jobs.push((p, k));
            }
        }
        jobs.sort_by_key(|&(p, k)| (p + releases[k], k));
        let mut t = 0u64;
        for &(p, k) in &jobs {
            t = t.max(releases[k]) + p;
            worst[k] = worst[k].max(t);
        }
    }
    sort_by_score(Rule::Smct, worst.into_iter().map(|c| c as f64).collect())
}

/// How ECT estimates the completion of a candidate coflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EctEstimator {
    /// Bottleneck of prefix load plus candidate load over all ports.
    Bottleneck,
    /// Candidate starts once released and the previous coflow has finished,
    /// and runs for its own load.
    Sequential,
}

/// Greedy earliest-completion sequence. Zero-release instances use the
/// bottleneck estimator, others the sequential one.
pub fn order_ect(instance: &Instance) -> OrderingResult {
    let estimator = if instance.zero_release() {
        EctEstimator::Bottleneck
    } else {
        EctEstimator::Sequential
    };
    order_ect_with(instance, estimator)
}

pub fn order_ect_with(instance: &Instance, estimator: EctEstimator) -> OrderingResult {
    match estimator {
        EctEstimator::Bottleneck => ect_bottleneck(instance),
        EctEstimator::Sequential => ect_sequential(instance),
    }
}

fn ect_bottleneck(instance: &Instance) -> OrderingResult {
    let n = instance.len();
    let loads: Vec<Vec<u64>> = instance
        .coflows()
        .iter()
        .map(|c| c.loads().all().collect())
        .collect();
    let mut acc = vec![0u64; 2 * instance.ports()];
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut perm = Vec::with_capacity(n);
    let mut scores = vec![0.0; n];
    while !remaining.is_empty() {
        let mut best_pos = 0;
        let mut best = u64::MAX;
        for (pos, &k) in remaining.iter().enumerate() {
            let est = acc
                .iter()
                .zip(&loads[k])
                .map(|(a, l)| a + l)
                .max()
                .unwrap_or(0);
            if est < best {
                best = est;
                best_pos = pos;
            }
        }
        let k = remaining.remove(best_pos);
        for (a, l) in acc.iter_mut().zip(&loads[k]) {
            *a += l;
        }
        scores[k] = best as f64;
        perm.push(k);
    }
    OrderingResult::new(Rule::Ect, perm, scores)
}

fn ect_sequential(instance: &Instance) -> OrderingResult {
    let n = instance.len();
    let rho: Vec<u64> = instance.coflows().iter().map(|c| c.load()).collect();
    let rel: Vec<u64> = instance.coflows().iter().map(|c| c.release()).collect();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut perm = Vec::with_capacity(n);
    let mut scores = vec![0.0; n];
    let mut finish = 0u64;
    while !remaining.is_empty() {
        let earliest = remaining.iter().map(|&k| rel[k]).min().unwrap_or(0);
        let now = finish.max(earliest);
        let mut best_pos = usize::MAX;
        let mut best = u64::MAX;
        for (pos, &k) in remaining.iter().enumerate() {
            if rel[k] > now {
                continue;
            }
            let est = now.max(rel[k]) + rho[k];
            if est < best {
                best = est;
                best_pos = pos;
            }
        }
        let k = remaining.remove(best_pos);
        finish = best;
        scores[k] = best as f64;
        perm.push(k);
    }
    OrderingResult::new(Rule::Ect, perm, scores)
}

/// Computes the ordering for `rule`; only the LP rule can fail.
pub fn order_by_rule(instance: &Instance, rule: Rule) -> Result<OrderingResult, LpError> {
    Ok(match rule {
        Rule::Fifo => order_fifo(instance),
        Rule::Stpt => order_stpt(instance),
        Rule::Smpt => order_smpt(instance),
        Rule::Smct => order_smct(instance),
        Rule::Ect => order_ect(instance),
        Rule::Lp => crate::lp::lp_ordering(instance)?,
    })
}
