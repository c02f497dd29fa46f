//! Event-wise simulation of BvN schedules with optional backfilling.
//!
//! Time advances per BvN term rather than per slot: during a term every
//! matched cell is busy for `duration` consecutive slots, and the engine fills
//! that window in bulk, first from the unit's own members, then (when
//! backfilling) from later coflows in ordering sequence. Release times of
//! backfill candidates split the window where needed.

use std::ops::Range;

use super::augment::{augment_with, Augmentation};
use super::bvn::{decompose_balanced, DecompositionError};
use crate::schedule::{ScheduleTrace, Transfer};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Outcome {
    Finished,
    Stopped,
}

pub(crate) struct Engine<'a> {
    m: usize,
    releases: &'a [u64],
    remaining: &'a mut [Vec<u64>],
    order: &'a [usize],
    /// Per cell: ordering positions with demand there, ascending.
    cells: Vec<Vec<usize>>,
    /// Per cell: entries before this index are exhausted.
    cursor: Vec<usize>,
    backfill: bool,
    augmentation: Augmentation,
    pub clock: u64,
    pub trace: &'a mut ScheduleTrace,
}

impl<'a> Engine<'a> {
    pub fn new(
        m: usize,
        releases: &'a [u64],
        remaining: &'a mut [Vec<u64>],
        order: &'a [usize],
        backfill: bool,
        augmentation: Augmentation,
        clock: u64,
        trace: &'a mut ScheduleTrace,
    ) -> Self {
        let mut cells = vec![Vec::new(); m * m];
        for (pos, &k) in order.iter().enumerate() {
            for (cell, &v) in remaining[k].iter().enumerate() {
                if v > 0 {
                    cells[cell].push(pos);
                }
            }
        }
        Engine {
            m,
            releases,
            remaining,
            order,
            cursor: vec![0; m * m],
            cells,
            backfill,
            augmentation,
            clock,
            trace,
        }
    }

    /// Runs the units (ranges of ordering positions) in sequence. With `stop`,
    /// nothing is served at or after that slot and partial terms are dropped.
    pub fn run(
        &mut self,
        units: &[Range<usize>],
        stop: Option<u64>,
    ) -> Result<Outcome, DecompositionError> {
        let m = self.m;
        for unit in units {
            let mut aggregate = vec![0u64; m * m];
            let mut release = 0;
            for &k in &self.order[unit.clone()] {
                release = release.max(self.releases[k]);
                for (a, &v) in aggregate.iter_mut().zip(&self.remaining[k]) {
                    *a += v;
                }
            }
            if aggregate.iter().all(|&v| v == 0) {
                continue;
            }
            let start = self.clock.max(release);
            if stop.is_some_and(|s| start >= s) {
                return Ok(Outcome::Stopped);
            }
            let augmented = augment_with(m, &aggregate, self.augmentation);
            let bvn = decompose_balanced(m, &augmented.augmented)?;
            let mut t = start;
            for term in &bvn.terms {
                let end = t + term.duration;
                let cut = stop.map_or(end, |s| end.min(s));
                for (i, &j) in term.perm.iter().enumerate() {
                    self.serve_cell(i, j, t, cut, unit);
                }
                t = cut;
                if cut < end {
                    self.clock = t;
                    return Ok(Outcome::Stopped);
                }
            }
            self.clock = t;
        }
        Ok(Outcome::Finished)
    }

    fn emit(&mut self, k: usize, cell: usize, start: u64, len: u64) {
        self.remaining[k][cell] -= len;
        self.trace.push(Transfer {
            start,
            len,
            input: cell / self.m,
            output: cell % self.m,
            coflow: k,
        });
    }

    fn serve_cell(&mut self, i: usize, j: usize, from: u64, to: u64, unit: &Range<usize>) {
        let cell = i * self.m + j;
        let mut cur = from;
        for pos in unit.clone() {
            let k = self.order[pos];
            let left = self.remaining[k][cell];
            if left > 0 {
                let take = left.min(to - cur);
                self.emit(k, cell, cur, take);
                cur += take;
                if cur == to {
                    return;
                }
            }
        }
        if !self.backfill {
            return;
        }
        while cur < to {
            let list = &self.cells[cell];
            let mut c = self.cursor[cell];
            while c < list.len() && self.remaining[self.order[list[c]]][cell] == 0 {
                c += 1;
            }
            self.cursor[cell] = c;
            let mut next_release = u64::MAX;
            let mut pick = None;
            for &pos in &list[c..] {
                if pos < unit.end {
                    continue;
                }
                let k = self.order[pos];
                if self.remaining[k][cell] == 0 {
                    continue;
                }
                if self.releases[k] <= cur {
                    pick = Some(k);
                    break;
                }
                next_release = next_release.min(self.releases[k]);
            }
            match pick {
                Some(k) => {
                    let window = to.min(next_release);
                    let take = self.remaining[k][cell].min(window - cur);
                    self.emit(k, cell, cur, take);
                    cur += take;
                }
                None if next_release < to => cur = next_release,
                None => break,
            }
        }
    }
}
