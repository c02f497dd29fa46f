//! Geometric grouping of an ordered instance.

use std::ops::Range;

use crate::lp::interval_index;
use crate::model::{prefix_loads, Instance};
use crate::ordering::OrderingResult;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPartition {
    /// Coflow indices of each group, ascending.
    pub groups: Vec<Vec<usize>>,
    /// Interval index `s_u` shared by the members of each group.
    pub thresholds: Vec<usize>,
    /// Positions in the ordering covered by each group.
    pub ranges: Vec<Range<usize>>,
}

impl GroupPartition {
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }
}

/// Groups consecutive coflows of `ordering` whose cumulative load `V_k`
/// falls into the same interval `(tau_{l-1}, tau_l]`.
pub fn group(instance: &Instance, ordering: &OrderingResult) -> GroupPartition {
    let loads = prefix_loads(instance, &ordering.permutation);
    let mut out = GroupPartition {
        groups: Vec::new(),
        thresholds: Vec::new(),
        ranges: Vec::new(),
    };
    for (pos, load) in loads.iter().enumerate() {
        let r = interval_index(load.total);
        if out.thresholds.last() == Some(&r) {
            out.ranges.last_mut().expect("open group").end = pos + 1;
        } else {
            out.thresholds.push(r);
            out.ranges.push(pos..pos + 1);
        }
    }
    out.groups = out
        .ranges
        .iter()
        .map(|range| {
            let mut ids = ordering.permutation[range.clone()].to_vec();
            ids.sort_unstable();
            ids
        })
        .collect();
    out
}
