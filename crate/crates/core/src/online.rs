//! Online scheduling: re-order on every arrival and run balanced backfilling
//! on the residual demands until the next arrival.

use thiserror::Error;

use crate::error::{LpError, ModelError};
use crate::model::{CoflowMatrix, Instance};
use crate::ordering::{order_by_rule, Rule};
use crate::schedule::ScheduleTrace;
use crate::scheduler::engine::{Engine, Outcome};
use crate::scheduler::{run_schedule, Augmentation, Case, ScheduleError};

#[derive(Debug, Error)]
pub enum OnlineError {
    #[error("ordering at slot {clock}: {source}")]
    Ordering { clock: u64, source: LpError },
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Residual state between epochs.
#[derive(Debug, Clone)]
pub struct SystemState {
    pub clock: u64,
    pub remaining: Vec<Vec<u64>>,
    pub trace: ScheduleTrace,
}

impl SystemState {
    pub fn new(instance: &Instance) -> Self {
        SystemState {
            clock: 0,
            remaining: instance.coflows().iter().map(|c| c.demand().to_vec()).collect(),
            trace: ScheduleTrace::new(),
        }
    }

    /// Coflows released by `clock` that still have demand.
    pub fn arrived(&self, instance: &Instance) -> Vec<usize> {
        (0..instance.len())
            .filter(|&k| {
                instance.coflow(k).release() <= self.clock && self.remaining[k].iter().any(|&v| v > 0)
            })
            .collect()
    }

    /// The arrived coflows as a zero-release instance over residual demands.
    /// Coflow `j` of the result is `arrived[j]` of the original.
    pub fn residual_instance(
        &self,
        instance: &Instance,
        arrived: &[usize],
    ) -> Result<Instance, ModelError> {
        let coflows = arrived
            .iter()
            .enumerate()
            .map(|(j, &k)| {
                let c = instance.coflow(k);
                CoflowMatrix::new(j + 1, c.ports(), self.remaining[k].clone(), c.weight(), 0)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Instance::new(instance.ports(), coflows, instance.label())
    }
}

/// Online run of `rule`. FIFO never re-orders, so it is the offline case (c)
/// schedule of the release order.
pub fn run_online(instance: &Instance, rule: Rule) -> Result<ScheduleTrace, OnlineError> {
    if rule == Rule::Fifo {
        let ord = crate::ordering::order_fifo(instance);
        return Ok(run_schedule(instance, &ord, Case::C)?);
    }
    let mut epochs: Vec<u64> = instance.coflows().iter().map(|c| c.release()).collect();
    epochs.sort_unstable();
    epochs.dedup();
    let releases: Vec<u64> = instance.coflows().iter().map(|c| c.release()).collect();
    let mut state = SystemState::new(instance);
    for (e, &epoch) in epochs.iter().enumerate() {
        state.clock = state.clock.max(epoch);
        let arrived = state.arrived(instance);
        if arrived.is_empty() {
            continue;
        }
        let residual = state.residual_instance(instance, &arrived)?;
        let local = order_by_rule(&residual, rule).map_err(|source| OnlineError::Ordering {
            clock: state.clock,
            source,
        })?;
        let order: Vec<usize> = local.permutation.iter().map(|&j| arrived[j]).collect();
        let units: Vec<_> = (0..order.len()).map(|p| p..p + 1).collect();
        let stop = epochs.get(e + 1).copied();
        let mut engine = Engine::new(
            instance.ports(),
            &releases,
            &mut state.remaining,
            &order,
            true,
            Augmentation::Balanced,
            state.clock,
            &mut state.trace,
        );
        let outcome = engine
            .run(&units, stop)
            .map_err(ScheduleError::from)?;
        state.clock = match outcome {
            Outcome::Finished => engine.clock,
            Outcome::Stopped => stop.expect("stopped without a stop time"),
        };
    }
    Ok(state.trace)
}
