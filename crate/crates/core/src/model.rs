//! Coflows, instances and port loads.
//!
//! Ports and coflows are 0-indexed inside the library. Every external format
//! (CSV, CLI output, violation messages) uses 1-based ids.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::ModelError;

/// Exact weights and objective values.
pub type Rational = num_rational::Ratio<i128>;

/// One coflow: an `m x m` demand matrix of data units plus weight and release slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoflowMatrix {
    id: usize,
    m: usize,
    demand: Vec<u64>,
    weight: Rational,
    release: u64,
}

impl CoflowMatrix {
    /// `demand` is row-major: entry `(i, j)` lives at `i * m + j`.
    pub fn new(
        id: usize,
        m: usize,
        demand: Vec<u64>,
        weight: Rational,
        release: u64,
    ) -> Result<Self, ModelError> {
        if m == 0 {
            return Err(ModelError::ZeroPorts);
        }
        if demand.len() != m * m {
            return Err(ModelError::DemandShape {
                id,
                expected: m * m,
                got: demand.len(),
            });
        }
        if demand.iter().all(|&d| d == 0) {
            return Err(ModelError::EmptyCoflow { id });
        }
        if weight <= Rational::zero() {
            return Err(ModelError::NonPositiveWeight { id });
        }
        Ok(CoflowMatrix {
            id,
            m,
            demand,
            weight,
            release,
        })
    }

    /// Unit-weight, zero-release coflow from nested rows.
    pub fn from_rows(id: usize, rows: &[Vec<u64>]) -> Result<Self, ModelError> {
        let m = rows.len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(ModelError::DemandShape {
                id,
                expected: m * m,
                got: rows.iter().map(Vec::len).sum(),
            });
        }
        let demand = rows.iter().flatten().copied().collect();
        Self::new(id, m, demand, Rational::one(), 0)
    }

    /// 1-based id.
    pub fn id(&self) -> usize {
        self.id
    }

    pub fn ports(&self) -> usize {
        self.m
    }

    pub fn demand(&self) -> &[u64] {
        &self.demand
    }

    pub fn get(&self, input: usize, output: usize) -> u64 {
        self.demand[input * self.m + output]
    }

    pub fn weight(&self) -> Rational {
        self.weight
    }

    pub fn release(&self) -> u64 {
        self.release
    }

    pub fn total(&self) -> u64 {
        self.demand.iter().sum()
    }

    pub fn loads(&self) -> PortLoads {
        PortLoads::of(self.m, &self.demand)
    }

    pub fn load(&self) -> u64 {
        self.loads().load
    }

    pub fn with_release(mut self, release: u64) -> Self {
        self.release = release;
        self
    }

    pub fn with_weight(mut self, weight: Rational) -> Result<Self, ModelError> {
        if weight <= Rational::zero() {
            return Err(ModelError::NonPositiveWeight { id: self.id });
        }
        self.weight = weight;
        Ok(self)
    }

    pub(crate) fn with_id(mut self, id: usize) -> Self {
        self.id = id;
        self
    }

    /// Nonzero entries as `(input, output, size)`, row-major.
    pub fn flows(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        let m = self.m;
        self.demand
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(move |(idx, &d)| (idx / m, idx % m, d))
    }
}

/// Per-port loads of a demand matrix: row sums, column sums and their maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PortLoads {
    pub input_loads: Vec<u64>,
    pub output_loads: Vec<u64>,
    pub load: u64,
}

impl PortLoads {
    pub fn of(m: usize, demand: &[u64]) -> Self {
        let mut input_loads = vec![0u64; m];
        let mut output_loads = vec![0u64; m];
        for i in 0..m {
            for j in 0..m {
                let d = demand[i * m + j];
                input_loads[i] += d;
                output_loads[j] += d;
            }
        }
        let load = input_loads
            .iter()
            .chain(output_loads.iter())
            .copied()
            .max()
            .unwrap_or(0);
        PortLoads {
            input_loads,
            output_loads,
            load,
        }
    }

    /// Loads of all `2m` ports: inputs first, then outputs.
    pub fn all(&self) -> impl Iterator<Item = u64> + '_ {
        self.input_loads
            .iter()
            .chain(self.output_loads.iter())
            .copied()
    }
}

/// Load of a row-major `m x m` matrix.
pub fn load_of(m: usize, demand: &[u64]) -> u64 {
    PortLoads::of(m, demand).load
}

/// An ordered set of coflows on an `m x m` switch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    m: usize,
    coflows: Vec<CoflowMatrix>,
    label: String,
}

impl Instance {
    /// Coflow ids must be exactly `1..=n` in list order.
    pub fn new(
        m: usize,
        coflows: Vec<CoflowMatrix>,
        label: impl Into<String>,
    ) -> Result<Self, ModelError> {
        if m == 0 {
            return Err(ModelError::ZeroPorts);
        }
        for (idx, c) in coflows.iter().enumerate() {
            if c.ports() != m {
                return Err(ModelError::PortMismatch {
                    id: c.id(),
                    expected: m,
                    got: c.ports(),
                });
            }
            if c.id() != idx + 1 {
                return Err(ModelError::NonDenseIds {
                    position: idx + 1,
                    id: c.id(),
                });
            }
        }
        Ok(Instance {
            m,
            coflows,
            label: label.into(),
        })
    }

    /// Builds an instance from coflows whose ids are reassigned densely in list order.
    pub fn renumbered(
        m: usize,
        coflows: Vec<CoflowMatrix>,
        label: impl Into<String>,
    ) -> Result<Self, ModelError> {
        let coflows = coflows
            .into_iter()
            .enumerate()
            .map(|(idx, c)| c.with_id(idx + 1))
            .collect();
        Self::new(m, coflows, label)
    }

    pub fn ports(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.coflows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coflows.is_empty()
    }

    pub fn coflows(&self) -> &[CoflowMatrix] {
        &self.coflows
    }

    pub fn coflow(&self, idx: usize) -> &CoflowMatrix {
        &self.coflows[idx]
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn zero_release(&self) -> bool {
        self.coflows.iter().all(|c| c.release() == 0)
    }

    /// Naive single-unit-per-slot horizon: `max r_k + sum of all demand`.
    pub fn horizon(&self) -> u64 {
        let max_release = self.coflows.iter().map(|c| c.release()).max().unwrap_or(0);
        max_release + self.coflows.iter().map(|c| c.total()).sum::<u64>()
    }

    /// Applies `f` to every coflow, keeping the id.
    pub fn map_coflows<F>(&self, mut f: F) -> Result<Instance, ModelError>
    where
        F: FnMut(&CoflowMatrix) -> Result<CoflowMatrix, ModelError>,
    {
        let coflows = self
            .coflows
            .iter()
            .map(|c| f(c).map(|n| n.with_id(c.id())))
            .collect::<Result<Vec<_>, _>>()?;
        Instance::new(self.m, coflows, self.label.clone())
    }

    /// Sum of `w_k * (r_k + rho_k)`: the per-coflow load bound on any schedule.
    pub fn trivial_bound(&self) -> Rational {
        self.coflows
            .iter()
            .map(|c| c.weight() * Rational::from_integer((c.release() + c.load()) as i128))
            .sum()
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}x{}, {} coflows)", self.label, self.m, self.m, self.len())
    }
}

/// Maximum cumulative loads after the first `prefix_length` coflows (in instance order).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CumulativeLoad {
    pub input: u64,
    pub output: u64,
    pub total: u64,
}

/// `(I_k, J_k, V_k)` for the first `prefix_length` coflows of `instance`.
pub fn cumulative_loads(
    instance: &Instance,
    prefix_length: usize,
) -> Result<CumulativeLoad, ModelError> {
    if prefix_length == 0 || prefix_length > instance.len() {
        return Err(ModelError::PrefixOutOfRange {
            k: prefix_length,
            n: instance.len(),
        });
    }
    let order: Vec<usize> = (0..prefix_length).collect();
    Ok(*prefix_loads(instance, &order)
        .last()
        .expect("nonempty prefix"))
}

/// Cumulative loads along an arbitrary sequence of coflow indices.
pub fn prefix_loads(instance: &Instance, order: &[usize]) -> Vec<CumulativeLoad> {
    let m = instance.ports();
    let mut rows = vec![0u64; m];
    let mut cols = vec![0u64; m];
    order
        .iter()
        .map(|&k| {
            let loads = instance.coflow(k).loads();
            for (acc, l) in rows.iter_mut().zip(&loads.input_loads) {
                *acc += l;
            }
            for (acc, l) in cols.iter_mut().zip(&loads.output_loads) {
                *acc += l;
            }
            let input = rows.iter().copied().max().unwrap_or(0);
            let output = cols.iter().copied().max().unwrap_or(0);
            CumulativeLoad {
                input,
                output,
                total: input.max(output),
            }
        })
        .collect()
}
