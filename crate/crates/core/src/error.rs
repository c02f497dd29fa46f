use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("network must have at least one port")]
    ZeroPorts,
    #[error("coflow {id}: demand has {got} entries, expected {expected}")]
    DemandShape { id: usize, expected: usize, got: usize },
    #[error("coflow {id}: demand matrix is all zero")]
    EmptyCoflow { id: usize },
    #[error("coflow {id}: weight must be positive")]
    NonPositiveWeight { id: usize },
    #[error("coflow {id}: built for {got} ports, instance has {expected}")]
    PortMismatch { id: usize, expected: usize, got: usize },
    #[error("coflow at position {position} has id {id}; ids must be 1..n in order")]
    NonDenseIds { position: usize, id: usize },
    #[error("prefix length {k} outside 1..={n}")]
    PrefixOutOfRange { k: usize, n: usize },
}

/// A trace that does not even refer to the instance's ports or coflows.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TraceError {
    #[error("transfer {index}: input {port} outside 1..={m}")]
    InputOutOfRange { index: usize, port: usize, m: usize },
    #[error("transfer {index}: output {port} outside 1..={m}")]
    OutputOutOfRange { index: usize, port: usize, m: usize },
    #[error("transfer {index}: coflow {coflow} outside 1..={n}")]
    UnknownCoflow { index: usize, coflow: usize, n: usize },
    #[error("transfer {index}: zero-length run")]
    EmptyRun { index: usize },
    #[error("empty trace for a nonempty instance")]
    EmptyTrace,
    #[error("schedule violates {} constraint(s); first: {}", .0.len(), .0.first().map(|v| v.to_string()).unwrap_or_default())]
    Invalid(Vec<crate::schedule::Violation>),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("simplex stalled after {pivots} pivots")]
    Stalled { pivots: usize },
    #[error("linear program has no columns")]
    NoColumns,
    #[error("non-finite coefficient in {0}")]
    NonFinite(&'static str),
    #[error("horizon T = {horizon} exceeds the cap of {cap} for the unit-interval relaxation")]
    HorizonTooLarge { horizon: u64, cap: u64 },
    #[error("instance has no coflows")]
    EmptyInstance,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: u64, msg: String },
    #[error("duplicate flow for coflow {coflow}, input {input}, output {output}")]
    DuplicateFlow {
        coflow: usize,
        input: usize,
        output: usize,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown {kind} '{value}'")]
pub struct UnknownTag {
    pub kind: &'static str,
    pub value: String,
}
