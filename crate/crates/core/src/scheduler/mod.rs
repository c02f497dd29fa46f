//! Turning an ordering into a slot schedule.
//!
//! | case | units      | augmentation | backfilling |
//! |------|------------|--------------|-------------|
//! | a    | coflows    | standard     | no          |
//! | b    | coflows    | standard     | yes         |
//! | c    | coflows    | balanced     | yes         |
//! | d    | groups     | standard     | yes         |
//! | e    | groups     | balanced     | yes         |

mod augment;
mod bvn;
pub(crate) mod engine;
mod group;

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use thiserror::Error;

pub use augment::{augment, augment_with, balanced_augment, AugmentedMatrix, Augmentation};
pub use bvn::{bvn_decompose, decompose_balanced, BvnDecomposition, BvnTerm, DecompositionError};
pub use group::{group, GroupPartition};

use crate::error::UnknownTag;
use crate::model::Instance;
use crate::ordering::OrderingResult;
use crate::schedule::ScheduleTrace;
use engine::Engine;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    A,
    B,
    C,
    D,
    E,
}

impl Case {
    pub const ALL: [Case; 5] = [Case::A, Case::B, Case::C, Case::D, Case::E];

    pub fn name(self) -> &'static str {
        match self {
            Case::A => "a",
            Case::B => "b",
            Case::C => "c",
            Case::D => "d",
            Case::E => "e",
        }
    }

    pub fn backfills(self) -> bool {
        self != Case::A
    }

    pub fn grouped(self) -> bool {
        matches!(self, Case::D | Case::E)
    }

    pub fn augmentation(self) -> Augmentation {
        match self {
            Case::C | Case::E => Augmentation::Balanced,
            _ => Augmentation::Standard,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = UnknownTag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" => Ok(Case::A),
            "b" => Ok(Case::B),
            "c" => Ok(Case::C),
            "d" => Ok(Case::D),
            "e" => Ok(Case::E),
            _ => Err(UnknownTag {
                kind: "case",
                value: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScheduleError {
    #[error("ordering is not a permutation of the {n} coflows")]
    InvalidOrdering { n: usize },
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

/// Simulates `case` on `instance` with coflows taken in `ordering`.
pub fn run_schedule(
    instance: &Instance,
    ordering: &OrderingResult,
    case: Case,
) -> Result<ScheduleTrace, ScheduleError> {
    let n = instance.len();
    if !ordering.is_permutation_of(n) {
        return Err(ScheduleError::InvalidOrdering { n });
    }
    let units: Vec<Range<usize>> = if case.grouped() {
        group(instance, ordering).ranges
    } else {
        (0..n).map(|p| p..p + 1).collect()
    };
    let releases: Vec<u64> = instance.coflows().iter().map(|c| c.release()).collect();
    let mut remaining: Vec<Vec<u64>> = instance.coflows().iter().map(|c| c.demand().to_vec()).collect();
    let mut trace = ScheduleTrace::new();
    let mut engine = Engine::new(
        instance.ports(),
        &releases,
        &mut remaining,
        &ordering.permutation,
        case.backfills(),
        case.augmentation(),
        0,
        &mut trace,
    );
    engine.run(&units, None)?;
    Ok(trace)
}
