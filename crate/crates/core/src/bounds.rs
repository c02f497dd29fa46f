//! Lower bounds on the optimal weighted completion time.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_traits::Zero;

use crate::error::LpError;
use crate::lp::interval_lp_value;
use crate::model::{Instance, Rational};

/// Optimal value of the interval-indexed relaxation.
pub fn lp_lower_bound(instance: &Instance) -> Result<f64, LpError> {
    interval_lp_value(instance)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PortBound {
    pub value: Rational,
    /// Port attaining the maximum: inputs `0..m`, then outputs `m..2m`.
    pub port: usize,
    /// Set when releases and unequal weights make the single-machine value
    /// a heuristic rather than a proven bound.
    pub heuristic: bool,
}

impl PortBound {
    pub fn as_f64(&self) -> f64 {
        *self.value.numer() as f64 / *self.value.denom() as f64
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Job {
    pub processing: u64,
    pub release: u64,
    pub weight: Rational,
}

/// Preemptive single-machine schedule that always runs the released job with
/// the smallest `remaining / weight` (ties by index). With zero releases this
/// is WSPT; with equal weights it is SRPT. Both are optimal there.
pub fn single_machine_value(jobs: &[Job]) -> Rational {
    let mut by_release: Vec<usize> = (0..jobs.len()).collect();
    by_release.sort_by_key(|&k| (jobs[k].release, k));
    let mut remaining: Vec<u64> = jobs.iter().map(|j| j.processing).collect();
    let mut heap: BinaryHeap<Reverse<(Rational, usize)>> = BinaryHeap::new();
    let mut next = 0;
    let mut t = 0u64;
    let mut total = Rational::zero();
    let key = |k: usize, rem: u64| Rational::from_integer(rem as i128) / jobs[k].weight;
    loop {
        while next < by_release.len() && jobs[by_release[next]].release <= t {
            let k = by_release[next];
            heap.push(Reverse((key(k, remaining[k]), k)));
            next += 1;
        }
        let Some(Reverse((_, k))) = heap.pop() else {
            if next == by_release.len() {
                break;
            }
            t = jobs[by_release[next]].release;
            continue;
        };
        let horizon = by_release.get(next).map_or(u64::MAX, |&j| jobs[j].release);
        let run = remaining[k].min(horizon - t);
        t += run;
        remaining[k] -= run;
        if remaining[k] == 0 {
            total += jobs[k].weight * Rational::from_integer(t as i128);
        } else {
            heap.push(Reverse((key(k, remaining[k]), k)));
        }
    }
    total
}

/// Maximum over the `2m` ports of the single-machine value of the port's loads.
pub fn port_aggregation_bound(instance: &Instance) -> PortBound {
    let m = instance.ports();
    let loads: Vec<_> = instance.coflows().iter().map(|c| c.loads()).collect();
    let first_weight = instance.coflows().first().map(|c| c.weight());
    let equal_weights = instance.coflows().iter().all(|c| Some(c.weight()) == first_weight);
    let heuristic = !instance.zero_release() && !equal_weights;
    let mut best = PortBound {
        value: Rational::zero(),
        port: 0,
        heuristic,
    };
    for port in 0..2 * m {
        let jobs: Vec<Job> = instance
            .coflows()
            .iter()
            .zip(&loads)
            .map(|(c, l)| Job {
                processing: if port < m {
                    l.input_loads[port]
                } else {
                    l.output_loads[port - m]
                },
                release: c.release(),
                weight: c.weight(),
            })
            .collect();
        let value = single_machine_value(&jobs);
        if value > best.value {
            best.value = value;
            best.port = port;
        }
    }
    best
}
