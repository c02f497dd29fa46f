//! Schedule traces, the validator, and completion-time accounting.
//!
//! A trace is stored as runs: coflow `k` moves one data unit from `input` to
//! `output` in each of the slots `start..start + len`. A per-slot trace is the
//! special case `len == 1`.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::error::TraceError;
use crate::model::{Instance, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transfer {
    pub start: u64,
    pub len: u64,
    pub input: usize,
    pub output: usize,
    pub coflow: usize,
}

impl Transfer {
    pub fn end(&self) -> u64 {
        self.start + self.len
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScheduleTrace {
    transfers: Vec<Transfer>,
}

impl ScheduleTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_transfers(transfers: Vec<Transfer>) -> Self {
        ScheduleTrace { transfers }
    }

    /// `slots[t]` lists the `(input, output, coflow)` triples served in slot `t`.
    pub fn from_slots(slots: &[Vec<(usize, usize, usize)>]) -> Self {
        let transfers = slots
            .iter()
            .enumerate()
            .flat_map(|(t, triples)| {
                triples.iter().map(move |&(input, output, coflow)| Transfer {
                    start: t as u64,
                    len: 1,
                    input,
                    output,
                    coflow,
                })
            })
            .collect();
        ScheduleTrace { transfers }
    }

    /// Appends a run, extending the previous run in place when it is contiguous.
    pub fn push(&mut self, t: Transfer) {
        if t.len == 0 {
            return;
        }
        if let Some(last) = self.transfers.last_mut() {
            if last.input == t.input
                && last.output == t.output
                && last.coflow == t.coflow
                && last.end() == t.start
            {
                last.len += t.len;
                return;
            }
        }
        self.transfers.push(t);
    }

    pub fn extend(&mut self, other: ScheduleTrace) {
        for t in other.transfers {
            self.push(t);
        }
    }

    pub fn transfers(&self) -> &[Transfer] {
        &self.transfers
    }

    pub fn is_empty(&self) -> bool {
        self.transfers.is_empty()
    }

    /// Total data units moved.
    pub fn units(&self) -> u64 {
        self.transfers.iter().map(|t| t.len).sum()
    }

    /// One past the last busy slot.
    pub fn span(&self) -> u64 {
        self.transfers.iter().map(Transfer::end).max().unwrap_or(0)
    }

    /// Expands runs into `(slot, input, output, coflow)` rows sorted by slot, then ports.
    pub fn unit_rows(&self) -> Vec<(u64, usize, usize, usize)> {
        let mut rows: Vec<_> = self
            .transfers
            .iter()
            .flat_map(|t| (t.start..t.end()).map(move |s| (s, t.input, t.output, t.coflow)))
            .collect();
        rows.sort_unstable();
        rows
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    InputConflict {
        slot: u64,
        input: usize,
        first: (usize, usize, usize),
        second: (usize, usize, usize),
    },
    OutputConflict {
        slot: u64,
        output: usize,
        first: (usize, usize, usize),
        second: (usize, usize, usize),
    },
    BeforeRelease {
        slot: u64,
        coflow: usize,
        release: u64,
        triple: (usize, usize, usize),
    },
    UnitCount {
        coflow: usize,
        input: usize,
        output: usize,
        served: u64,
        demand: u64,
    },
}

fn one_based(t: (usize, usize, usize)) -> (usize, usize, usize) {
    (t.0 + 1, t.1 + 1, t.2 + 1)
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::InputConflict {
                slot,
                input,
                first,
                second,
            } => write!(
                f,
                "input {} used twice in slot {slot}: {:?} and {:?}",
                input + 1,
                one_based(first),
                one_based(second)
            ),
            Violation::OutputConflict {
                slot,
                output,
                first,
                second,
            } => write!(
                f,
                "output {} used twice in slot {slot}: {:?} and {:?}",
                output + 1,
                one_based(first),
                one_based(second)
            ),
            Violation::BeforeRelease {
                slot,
                coflow,
                release,
                triple,
            } => write!(
                f,
                "coflow {} served before release ({release}) in slot {slot}: {:?}",
                coflow + 1,
                one_based(triple)
            ),
            Violation::UnitCount {
                coflow,
                input,
                output,
                served,
                demand,
            } => write!(
                f,
                "coflow {} at ({}, {}): served {served} units, demand {demand}",
                coflow + 1,
                input + 1,
                output + 1
            ),
        }
    }
}

/// Outcome of a structurally sound validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Violations(Vec<Violation>),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }

    pub fn violations(&self) -> &[Violation] {
        match self {
            Verdict::Ok => &[],
            Verdict::Violations(v) => v,
        }
    }
}

fn check_structure(instance: &Instance, trace: &ScheduleTrace) -> Result<(), TraceError> {
    let m = instance.ports();
    let n = instance.len();
    if trace.is_empty() && n > 0 {
        return Err(TraceError::EmptyTrace);
    }
    for (index, t) in trace.transfers.iter().enumerate() {
        if t.input >= m {
            return Err(TraceError::InputOutOfRange {
                index,
                port: t.input + 1,
                m,
            });
        }
        if t.output >= m {
            return Err(TraceError::OutputOutOfRange {
                index,
                port: t.output + 1,
                m,
            });
        }
        if t.coflow >= n {
            return Err(TraceError::UnknownCoflow {
                index,
                coflow: t.coflow + 1,
                n,
            });
        }
        if t.len == 0 {
            return Err(TraceError::EmptyRun { index });
        }
    }
    Ok(())
}

/// Per-port overlap sweep. `key` picks the port, `make` builds the violation.
fn port_conflicts<K, V>(transfers: &[Transfer], key: K, make: V, out: &mut Vec<Violation>)
where
    K: Fn(&Transfer) -> usize,
    V: Fn(u64, usize, &Transfer, &Transfer) -> Violation,
{
    let mut by_port: Vec<&Transfer> = transfers.iter().collect();
    by_port.sort_by_key(|t| (key(t), t.start, t.end()));
    let mut i = 0;
    while i < by_port.len() {
        let port = key(by_port[i]);
        let mut reach: &Transfer = by_port[i];
        i += 1;
        while i < by_port.len() && key(by_port[i]) == port {
            let t = by_port[i];
            if t.start < reach.end() {
                out.push(make(t.start, port, reach, t));
            }
            if t.end() > reach.end() {
                reach = t;
            }
            i += 1;
        }
    }
}

fn triple(t: &Transfer) -> (usize, usize, usize) {
    (t.input, t.output, t.coflow)
}

/// Checks the matching, release and exact-demand constraints.
pub fn validate_schedule(instance: &Instance, trace: &ScheduleTrace) -> Result<Verdict, TraceError> {
    check_structure(instance, trace)?;
    let mut violations = Vec::new();

    port_conflicts(
        &trace.transfers,
        |t| t.input,
        |slot, input, a, b| Violation::InputConflict {
            slot,
            input,
            first: triple(a),
            second: triple(b),
        },
        &mut violations,
    );
    port_conflicts(
        &trace.transfers,
        |t| t.output,
        |slot, output, a, b| Violation::OutputConflict {
            slot,
            output,
            first: triple(a),
            second: triple(b),
        },
        &mut violations,
    );

    let mut served: HashMap<(usize, usize, usize), u64> = HashMap::new();
    for t in &trace.transfers {
        let release = instance.coflow(t.coflow).release();
        if t.start < release {
            violations.push(Violation::BeforeRelease {
                slot: t.start,
                coflow: t.coflow,
                release,
                triple: triple(t),
            });
        }
        *served.entry((t.coflow, t.input, t.output)).or_insert(0) += t.len;
    }

    for (k, c) in instance.coflows().iter().enumerate() {
        let m = c.ports();
        for i in 0..m {
            for j in 0..m {
                let demand = c.get(i, j);
                let got = served.remove(&(k, i, j)).unwrap_or(0);
                if got != demand {
                    violations.push(Violation::UnitCount {
                        coflow: k,
                        input: i,
                        output: j,
                        served: got,
                        demand,
                    });
                }
            }
        }
    }

    if violations.is_empty() {
        Ok(Verdict::Ok)
    } else {
        Ok(Verdict::Violations(violations))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionReport {
    /// `C_k` per coflow index, in elapsed slots.
    pub completions: Vec<u64>,
    pub objective: Rational,
    pub makespan: u64,
}

/// Sum of `w_k * C_k` for arbitrary completion times.
pub fn weighted_sum(instance: &Instance, completions: &[u64]) -> Rational {
    instance
        .coflows()
        .iter()
        .zip(completions)
        .fold(Rational::zero(), |acc, (c, &ck)| {
            acc + c.weight() * Rational::from_integer(ck as i128)
        })
}

/// Completion times of a trace; refuses traces that do not validate.
pub fn completion_report(
    instance: &Instance,
    trace: &ScheduleTrace,
) -> Result<CompletionReport, TraceError> {
    match validate_schedule(instance, trace)? {
        Verdict::Ok => {}
        Verdict::Violations(v) => return Err(TraceError::Invalid(v)),
    }
    Ok(completion_report_unchecked(instance, trace))
}

pub(crate) fn completion_report_unchecked(
    instance: &Instance,
    trace: &ScheduleTrace,
) -> CompletionReport {
    let mut completions = vec![0u64; instance.len()];
    for t in trace.transfers() {
        let c = &mut completions[t.coflow];
        *c = (*c).max(t.end());
    }
    let objective = weighted_sum(instance, &completions);
    let makespan = completions.iter().copied().max().unwrap_or(0);
    CompletionReport {
        completions,
        objective,
        makespan,
    }
}
