//! Time-indexed relaxations of coflow scheduling and the LP-based ordering.
//!
//! Both relaxations assign each coflow fractionally to a completion interval
//! and bound the cumulative input/output load that may finish by each
//! interval end. The geometric variant uses interval ends `0, 1, 2, 4, ...`;
//! the unit variant uses every slot `1..=T` and is tighter but much larger.
//!
//! Load rows whose right-hand side already covers the port's total load are
//! implied by the assignment rows and are not emitted.

mod mps;
pub mod simplex;

use std::collections::HashMap;

use crate::error::LpError;
use crate::model::Instance;
use crate::ordering::{OrderingResult, Rule};

pub use mps::write_mps;
pub use simplex::{
    solve_lp, solve_lp_with, LinearProgram, LpSolutionRaw, Row, RowKind, Sense, SimplexOptions,
};

/// Default cap on `T` for the unit-interval relaxation.
pub const DEFAULT_HORIZON_CAP: u64 = 5000;

/// Geometric interval ends `tau_0 = 0`, `tau_l = 2^(l-1)` with `tau_L >= T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalGrid {
    pub horizon: u64,
    pub intervals: usize,
}

impl IntervalGrid {
    pub fn for_horizon(horizon: u64) -> Self {
        IntervalGrid {
            horizon,
            intervals: interval_index(horizon.max(1)),
        }
    }

    pub fn for_instance(instance: &Instance) -> Self {
        Self::for_horizon(instance.horizon())
    }

    /// `tau_l` for `l` in `0..=L`.
    pub fn tau(&self, l: usize) -> u64 {
        tau(l)
    }

    pub fn taus(&self) -> Vec<u64> {
        (0..=self.intervals).map(tau).collect()
    }
}

pub fn tau(l: usize) -> u64 {
    if l == 0 {
        0
    } else {
        1u64 << (l - 1)
    }
}

/// Smallest `l >= 1` with `tau_l >= value`, i.e. `value` lies in `(tau_{l-1}, tau_l]`.
pub fn interval_index(value: u64) -> usize {
    let mut l = 1;
    while tau(l) < value {
        l += 1;
    }
    l
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelaxationKind {
    /// Geometric intervals.
    Interval,
    /// Unit intervals up to the horizon.
    UnitInterval,
}

/// A built relaxation with the variable layout needed to read solutions back.
#[derive(Debug, Clone)]
pub struct Relaxation {
    pub kind: RelaxationKind,
    pub lp: LinearProgram,
    /// `vars[k][l - 1]` is the column of coflow `k` in interval `l`.
    pub vars: Vec<Vec<usize>>,
    /// Completion-time estimate charged per interval: `tau_{l-1}` or `t`.
    pub charge: Vec<u64>,
    /// Interval ends `tau_1..tau_L` (or `1..T`).
    pub ends: Vec<u64>,
    /// Coflows with identical demand, weight and release share a class.
    pub classes: Vec<usize>,
    /// `(port, interval index)` of each load row, `None` for assignment rows.
    pub row_load: Vec<Option<(usize, usize)>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    /// `x[k][l - 1]`.
    pub x: Vec<Vec<f64>>,
    pub objective: f64,
    /// `sum_l charge_l * x[k][l]` per coflow.
    pub cbar: Vec<f64>,
    pub pivots: usize,
}

fn build(instance: &Instance, kind: RelaxationKind, ends: Vec<u64>, charge: Vec<u64>) -> Relaxation {
    let m = instance.ports();
    let n = instance.len();
    let intervals = ends.len();
    let mut lp = LinearProgram::new(Sense::Minimize);
    let mut row_load = Vec::new();
    let loads: Vec<_> = instance.coflows().iter().map(|c| c.loads()).collect();
    let mut vars = Vec::with_capacity(n);
    for (k, c) in instance.coflows().iter().enumerate() {
        let w = num_traits::ToPrimitive::to_f64(&c.weight()).unwrap_or(f64::NAN);
        let earliest = c.release() + loads[k].load;
        let mut row = Vec::with_capacity(intervals);
        for l in 0..intervals {
            let v = lp.add_var(w * charge[l] as f64, format!("x_{}_{}", k + 1, l + 1));
            if earliest > ends[l] {
                lp.fix_zero(v);
            }
            row.push(v);
        }
        vars.push(row);
    }
    for port in 0..2 * m {
        let (side, idx) = if port < m { ("in", port) } else { ("out", port - m) };
        let port_load = |k: usize| {
            if port < m {
                loads[k].input_loads[idx]
            } else {
                loads[k].output_loads[idx]
            }
        };
        let total: u64 = (0..n).map(port_load).sum();
        for l in 0..intervals {
            if total <= ends[l] {
                break;
            }
            let mut coeffs = Vec::new();
            for (k, kvars) in vars.iter().enumerate() {
                let p = port_load(k);
                if p == 0 {
                    continue;
                }
                for &v in &kvars[..=l] {
                    if !lp.fixed_zero[v] {
                        coeffs.push((v, p as f64));
                    }
                }
            }
            lp.add_row(
                format!("{side}{}_{}", idx + 1, l + 1),
                coeffs,
                RowKind::Le,
                ends[l] as f64,
            );
            row_load.push(Some((port, l)));
        }
    }
    for (k, kvars) in vars.iter().enumerate() {
        let coeffs = kvars
            .iter()
            .filter(|&&v| !lp.fixed_zero[v])
            .map(|&v| (v, 1.0))
            .collect();
        lp.add_row(format!("assign{}", k + 1), coeffs, RowKind::Eq, 1.0);
        row_load.push(None);
    }
    let mut first_of: HashMap<_, usize> = HashMap::new();
    let classes = instance
        .coflows()
        .iter()
        .enumerate()
        .map(|(k, c)| *first_of.entry((c.demand(), c.weight(), c.release())).or_insert(k))
        .collect();
    Relaxation {
        kind,
        lp,
        vars,
        charge,
        ends,
        classes,
        row_load,
    }
}

/// The geometric-interval relaxation.
pub fn build_interval_lp(instance: &Instance) -> Result<Relaxation, LpError> {
    if instance.is_empty() {
        return Err(LpError::EmptyInstance);
    }
    let grid = IntervalGrid::for_instance(instance);
    let ends: Vec<u64> = (1..=grid.intervals).map(tau).collect();
    let charge: Vec<u64> = (0..grid.intervals).map(tau).collect();
    Ok(build(instance, RelaxationKind::Interval, ends, charge))
}

/// The unit-interval relaxation; refuses horizons above `cap`.
pub fn build_exp_lp(instance: &Instance, cap: u64) -> Result<Relaxation, LpError> {
    if instance.is_empty() {
        return Err(LpError::EmptyInstance);
    }
    let horizon = instance.horizon();
    if horizon > cap {
        return Err(LpError::HorizonTooLarge { horizon, cap });
    }
    let ends: Vec<u64> = (1..=horizon).collect();
    let charge = ends.clone();
    Ok(build(instance, RelaxationKind::UnitInterval, ends, charge))
}

impl Relaxation {
    pub fn solve(&self) -> Result<LpSolution, LpError> {
        self.solve_with(&SimplexOptions::default())
    }

    pub fn solve_with(&self, opts: &SimplexOptions) -> Result<LpSolution, LpError> {
        let raw = match self.kind {
            RelaxationKind::Interval => solve_lp_with(&self.lp, opts)?,
            RelaxationKind::UnitInterval => self.solve_lazy(opts)?,
        };
        let mut x: Vec<Vec<f64>> = self
            .vars
            .iter()
            .map(|kv| kv.iter().map(|&v| raw.x[v]).collect())
            .collect();
        // Averaging over interchangeable coflows keeps the point optimal and
        // gives them equal estimates.
        let mut sums: HashMap<usize, (Vec<f64>, usize)> = HashMap::new();
        for (k, xs) in x.iter().enumerate() {
            let e = sums
                .entry(self.classes[k])
                .or_insert_with(|| (vec![0.0; xs.len()], 0));
            e.0.iter_mut().zip(xs).for_each(|(a, b)| *a += b);
            e.1 += 1;
        }
        for (k, xs) in x.iter_mut().enumerate() {
            let (sum, count) = &sums[&self.classes[k]];
            if *count > 1 {
                xs.iter_mut().zip(sum).for_each(|(a, s)| *a = s / *count as f64);
            }
        }
        let cbar = x
            .iter()
            .map(|xs| {
                xs.iter()
                    .zip(&self.charge)
                    .map(|(v, &c)| v * c as f64)
                    .sum()
            })
            .collect();
        Ok(LpSolution {
            x,
            objective: raw.objective,
            cbar,
            pivots: raw.pivots,
        })
    }
}

impl Relaxation {
    /// Solves with load rows added on demand. Starts from the assignment rows
    /// and the load rows at power-of-two interval ends, then repeatedly adds
    /// every violated row. The final point satisfies every row, so its value
    /// is the full optimum.
    fn solve_lazy(&self, opts: &SimplexOptions) -> Result<LpSolutionRaw, LpError> {
        let rows = &self.lp.rows;
        let mut active: Vec<bool> = self
            .row_load
            .iter()
            .map(|r| r.map_or(true, |(_, l)| (l + 1).is_power_of_two()))
            .collect();
        loop {
            let sub = LinearProgram {
                rows: rows
                    .iter()
                    .zip(&active)
                    .filter(|(_, &a)| a)
                    .map(|(r, _)| r.clone())
                    .collect(),
                ..self.lp.clone()
            };
            let raw = solve_lp_with(&sub, opts)?;
            let excess: Vec<f64> = rows
                .iter()
                .map(|r| {
                    let act: f64 = r.coeffs.iter().map(|&(j, a)| a * raw.x[j]).sum();
                    act - r.rhs - opts.tolerance * (1.0 + r.rhs.abs())
                })
                .collect();
            let mut added = false;
            for (on, &e) in active.iter_mut().zip(&excess) {
                if !*on && e > 0.0 {
                    *on = true;
                    added = true;
                }
            }
            if !added {
                return Ok(raw);
            }
        }
    }
}

/// Optimal value of the geometric-interval relaxation.
pub fn interval_lp_value(instance: &Instance) -> Result<f64, LpError> {
    Ok(build_interval_lp(instance)?.solve()?.objective)
}

/// Optimal value of the unit-interval relaxation.
pub fn exp_lp_value(instance: &Instance, cap: u64) -> Result<f64, LpError> {
    Ok(build_exp_lp(instance, cap)?.solve()?.objective)
}

/// Sorts coflows by `C-bar` (rounded to 1e-9), ties by index.
pub fn ordering_from_cbar(cbar: &[f64]) -> OrderingResult {
    let rounded: Vec<f64> = cbar.iter().map(|c| (c * 1e9).round() / 1e9).collect();
    let mut perm: Vec<usize> = (0..cbar.len()).collect();
    perm.sort_by(|&a, &b| rounded[a].total_cmp(&rounded[b]).then(a.cmp(&b)));
    OrderingResult::new(Rule::Lp, perm, rounded)
}

/// Coflow order by non-decreasing LP completion-time estimate.
pub fn lp_ordering(instance: &Instance) -> Result<OrderingResult, LpError> {
    let sol = build_interval_lp(instance)?.solve()?;
    Ok(ordering_from_cbar(&sol.cbar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{CoflowMatrix, Rational};

    fn single(rows: &[Vec<u64>]) -> Instance {
        let m = rows.len();
        Instance::new(m, vec![CoflowMatrix::from_rows(1, rows).unwrap()], "t").unwrap()
    }

    #[test]
    fn grid_arithmetic() {
        let g = IntervalGrid::for_horizon(30);
        assert_eq!(g.intervals, 6);
        assert_eq!(g.taus(), vec![0, 1, 2, 4, 8, 16, 32]);
        assert_eq!(IntervalGrid::for_horizon(1).intervals, 1);
        assert_eq!(IntervalGrid::for_horizon(3).intervals, 3);
        assert_eq!(interval_index(1), 1);
        assert_eq!(interval_index(2), 2);
        assert_eq!(interval_index(7), 4);
        assert_eq!(interval_index(8), 4);
        assert_eq!(interval_index(9), 5);
    }

    #[test]
    fn column_heavy_coflow_forced_into_last_interval() {
        let inst = single(&[vec![10, 0, 0], vec![10, 0, 0], vec![10, 0, 0]]);
        let relax = build_interval_lp(&inst).unwrap();
        for l in 0..5 {
            assert!(relax.lp.fixed_zero[relax.vars[0][l]]);
        }
        let sol = relax.solve().unwrap();
        assert!((sol.objective - 16.0).abs() < 1e-7);
        assert!((sol.x[0][5] - 1.0).abs() < 1e-9);
        assert!((sol.cbar[0] - 16.0).abs() < 1e-7);
    }

    #[test]
    fn two_unit_coflows() {
        let a = CoflowMatrix::from_rows(1, &[vec![1]]).unwrap();
        let b = CoflowMatrix::from_rows(2, &[vec![1]]).unwrap();
        let inst = Instance::new(1, vec![a, b], "").unwrap();
        assert!((interval_lp_value(&inst).unwrap() - 1.0).abs() < 1e-7);
    }

    #[test]
    fn unit_interval_relaxation_for_size_three() {
        let inst = single(&[vec![3]]);
        assert!((exp_lp_value(&inst, DEFAULT_HORIZON_CAP).unwrap() - 3.0).abs() < 1e-7);
        assert!((interval_lp_value(&inst).unwrap() - 2.0).abs() < 1e-7);
    }

    #[test]
    fn lazy_rows_reach_the_full_optimum() {
        for seed in 0..6u64 {
            let coflows = (0..4u64)
                .map(|k| {
                    let demand: Vec<u64> = (0..9).map(|c| (seed * 7 + k * 5 + c * 3) % 6).collect();
                    let weight = Rational::from_integer(1 + (k as i128 % 2));
                    CoflowMatrix::new(k as usize + 1, 3, demand, weight, seed * k).unwrap()
                })
                .collect();
            let inst = Instance::new(3, coflows, "lazy").unwrap();
            let relax = build_exp_lp(&inst, DEFAULT_HORIZON_CAP).unwrap();
            let full = solve_lp(&relax.lp).unwrap().objective;
            let lazy = relax.solve().unwrap().objective;
            assert!((full - lazy).abs() <= 1e-6 * full, "seed {seed}: {full} vs {lazy}");
        }
    }

    #[test]
    fn horizon_cap_refuses() {
        let inst = single(&[vec![30]]);
        assert_eq!(
            build_exp_lp(&inst, 10).unwrap_err(),
            LpError::HorizonTooLarge {
                horizon: 30,
                cap: 10
            }
        );
    }

    #[test]
    fn lp_order_small_first_and_ties_by_index() {
        let big = CoflowMatrix::from_rows(1, &[vec![1000]]).unwrap();
        let small = CoflowMatrix::from_rows(2, &[vec![10]]).unwrap();
        let inst = Instance::new(1, vec![big, small], "").unwrap();
        assert_eq!(lp_ordering(&inst).unwrap().permutation, vec![1, 0]);

        let same: Vec<_> = (1..=3)
            .map(|id| CoflowMatrix::from_rows(id, &[vec![1, 0], vec![0, 1]]).unwrap())
            .collect();
        let inst = Instance::new(2, same, "").unwrap();
        assert_eq!(lp_ordering(&inst).unwrap().permutation, vec![0, 1, 2]);

        let inst = single(&[vec![4]]);
        assert_eq!(lp_ordering(&inst).unwrap().permutation, vec![0]);
    }

    #[test]
    fn weight_scaling_scales_value_and_keeps_order() {
        let cs: Vec<_> = [[5u64, 1], [2, 7], [3, 3]]
            .iter()
            .enumerate()
            .map(|(k, d)| {
                CoflowMatrix::new(k + 1, 2, vec![d[0], 0, 0, d[1]], Rational::from_integer(k as i128 + 1), 0)
                    .unwrap()
            })
            .collect();
        let inst = Instance::new(2, cs, "").unwrap();
        let scaled = inst
            .map_coflows(|c| c.clone().with_weight(c.weight() * Rational::from_integer(3)))
            .unwrap();
        let v1 = interval_lp_value(&inst).unwrap();
        let v3 = interval_lp_value(&scaled).unwrap();
        assert!((v3 - 3.0 * v1).abs() < 1e-6 * v3.max(1.0));
        assert_eq!(
            lp_ordering(&inst).unwrap().permutation,
            lp_ordering(&scaled).unwrap().permutation
        );
    }
}
