//! Coflow scheduling on an `m x m` non-blocking switch.
//!
//! Orderings (FIFO, STPT, SMPT, SMCT, ECT, LP) feed a Birkhoff-von Neumann
//! scheduler with five variants (plain, backfilling, balanced backfilling,
//! and grouped versions of the latter two). The crate also provides the
//! interval-indexed LP relaxations, an online re-ordering loop, lower bounds,
//! instance generators and CSV formats.

pub mod bounds;
pub mod error;
pub mod instances;
pub mod io;
pub mod lp;
pub mod model;
pub mod online;
pub mod ordering;
pub mod schedule;
pub mod scheduler;

pub use error::{FormatError, LpError, ModelError, TraceError, UnknownTag};
pub use model::{cumulative_loads, CoflowMatrix, CumulativeLoad, Instance, PortLoads, Rational};
pub use ordering::{order_by_rule, OrderingResult, Rule};
pub use schedule::{
    completion_report, validate_schedule, CompletionReport, ScheduleTrace, Transfer, Verdict, Violation,
};
pub use scheduler::{run_schedule, Case};
