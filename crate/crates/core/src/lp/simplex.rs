//! Dense revised simplex with an explicit basis inverse.
//!
//! Two phases (artificial variables for `=` and `>=` rows), Dantzig pricing,
//! and Bland's rule whenever the method is stuck on a run of degenerate pivots.
//! Rows are scaled to unit max-norm before solving; columns are stored sparse.

use crate::error::LpError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub name: String,
    pub coeffs: Vec<(usize, f64)>,
    pub kind: RowKind,
    pub rhs: f64,
}

/// `optimize c'x` subject to rows, `x >= 0`, and some columns fixed at zero.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub col_names: Vec<String>,
    pub fixed_zero: Vec<bool>,
    pub rows: Vec<Row>,
}

impl LinearProgram {
    pub fn new(sense: Sense) -> Self {
        LinearProgram {
            sense,
            objective: Vec::new(),
            col_names: Vec::new(),
            fixed_zero: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn add_var(&mut self, cost: f64, name: impl Into<String>) -> usize {
        self.objective.push(cost);
        self.col_names.push(name.into());
        self.fixed_zero.push(false);
        self.objective.len() - 1
    }

    pub fn fix_zero(&mut self, var: usize) {
        self.fixed_zero[var] = true;
    }

    pub fn add_row(
        &mut self,
        name: impl Into<String>,
        coeffs: Vec<(usize, f64)>,
        kind: RowKind,
        rhs: f64,
    ) -> usize {
        self.rows.push(Row {
            name: name.into(),
            coeffs,
            kind,
            rhs,
        });
        self.rows.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Objective value of `x` under this program's cost vector.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Largest violation of any row or bound by `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst = 0.0f64;
        for (j, &v) in x.iter().enumerate() {
            worst = worst.max(-v);
            if self.fixed_zero[j] {
                worst = worst.max(v.abs());
            }
        }
        for row in &self.rows {
            let act: f64 = row.coeffs.iter().map(|&(j, a)| a * x[j]).sum();
            let v = match row.kind {
                RowKind::Le => act - row.rhs,
                RowKind::Ge => row.rhs - act,
                RowKind::Eq => (act - row.rhs).abs(),
            };
            worst = worst.max(v);
        }
        worst
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    /// Primal feasibility and optimality tolerance.
    pub tolerance: f64,
    /// Smallest pivot element accepted in the ratio test.
    pub pivot_tolerance: f64,
    /// Pivot budget; `None` scales with problem size.
    pub max_pivots: Option<usize>,
    /// Consecutive degenerate pivots before switching to Bland's rule.
    pub degenerate_limit: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            tolerance: 1e-7,
            pivot_tolerance: 1e-9,
            max_pivots: None,
            degenerate_limit: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolutionRaw {
    pub x: Vec<f64>,
    pub objective: f64,
    pub pivots: usize,
}

pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolutionRaw, LpError> {
    solve_lp_with(lp, &SimplexOptions::default())
}

pub fn solve_lp_with(lp: &LinearProgram, opts: &SimplexOptions) -> Result<LpSolutionRaw, LpError> {
    if lp.num_vars() == 0 {
        return Err(LpError::NoColumns);
    }
    if lp.objective.iter().any(|c| !c.is_finite()) {
        return Err(LpError::NonFinite("objective"));
    }
    for row in &lp.rows {
        if !row.rhs.is_finite() || row.coeffs.iter().any(|(_, a)| !a.is_finite()) {
            return Err(LpError::NonFinite("constraints"));
        }
    }
    let mut tableau = Standard::build(lp, opts)?;
    let pivots = tableau.run()?;
    let mut x = vec![0.0; lp.num_vars()];
    for (r, &col) in tableau.basis.iter().enumerate() {
        if let Some(&orig) = tableau.structural.get(col) {
            x[orig] = tableau.xb[r].max(0.0);
        }
    }
    let objective = lp.evaluate(&x);
    Ok(LpSolutionRaw {
        x,
        objective,
        pivots,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum ColKind {
    Structural,
    Slack,
    Artificial,
}

struct Standard {
    rows: usize,
    /// Sparse columns, internal numbering.
    cols: Vec<Vec<(usize, f64)>>,
    kinds: Vec<ColKind>,
    /// Internal structural column -> original variable.
    structural: Vec<usize>,
    /// Phase-2 costs (minimization, normalized).
    cost: Vec<f64>,
    b: Vec<f64>,
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    binv: Vec<f64>,
    xb: Vec<f64>,
    opts: SimplexOptions,
    pivots: usize,
    max_pivots: usize,
}

impl Standard {
    fn build(lp: &LinearProgram, opts: &SimplexOptions) -> Result<Self, LpError> {
        let n = lp.num_vars();
        let mut map = vec![usize::MAX; n];
        let mut structural = Vec::new();
        for j in 0..n {
            if !lp.fixed_zero[j] {
                map[j] = structural.len();
                structural.push(j);
            }
        }
        let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); structural.len()];
        let mut kinds = vec![ColKind::Structural; structural.len()];
        let mut b = Vec::new();
        let mut row_kinds = Vec::new();
        let mut r = 0usize;
        for row in &lp.rows {
            let kept: Vec<(usize, f64)> = row
                .coeffs
                .iter()
                .filter(|&&(j, a)| map[j] != usize::MAX && a != 0.0)
                .map(|&(j, a)| (map[j], a))
                .collect();
            if kept.is_empty() {
                let ok = match row.kind {
                    RowKind::Le => row.rhs >= -opts.tolerance,
                    RowKind::Ge => row.rhs <= opts.tolerance,
                    RowKind::Eq => row.rhs.abs() <= opts.tolerance,
                };
                if !ok {
                    return Err(LpError::Infeasible);
                }
                continue;
            }
            let scale = kept.iter().fold(0.0f64, |acc, &(_, a)| acc.max(a.abs()));
            let mut sign = 1.0 / scale;
            let mut kind = row.kind;
            if row.rhs < 0.0 {
                sign = -sign;
                kind = match kind {
                    RowKind::Le => RowKind::Ge,
                    RowKind::Ge => RowKind::Le,
                    RowKind::Eq => RowKind::Eq,
                };
            }
            // Merge duplicate column entries within a row.
            let mut merged: Vec<(usize, f64)> = Vec::with_capacity(kept.len());
            let mut sorted = kept;
            sorted.sort_by_key(|&(j, _)| j);
            for (j, a) in sorted {
                match merged.last_mut() {
                    Some(last) if last.0 == j => last.1 += a,
                    _ => merged.push((j, a)),
                }
            }
            for (j, a) in merged {
                cols[j].push((r, a * sign));
            }
            b.push(row.rhs * sign);
            row_kinds.push(kind);
            r += 1;
        }
        let rows = r;
        let mut basis = vec![usize::MAX; rows];
        for (r, kind) in row_kinds.iter().enumerate() {
            match kind {
                RowKind::Le => {
                    cols.push(vec![(r, 1.0)]);
                    kinds.push(ColKind::Slack);
                    basis[r] = cols.len() - 1;
                }
                RowKind::Ge => {
                    cols.push(vec![(r, -1.0)]);
                    kinds.push(ColKind::Slack);
                    cols.push(vec![(r, 1.0)]);
                    kinds.push(ColKind::Artificial);
                    basis[r] = cols.len() - 1;
                }
                RowKind::Eq => {
                    cols.push(vec![(r, 1.0)]);
                    kinds.push(ColKind::Artificial);
                    basis[r] = cols.len() - 1;
                }
            }
        }
        let sign = match lp.sense {
            Sense::Minimize => 1.0,
            Sense::Maximize => -1.0,
        };
        let cmax = structural
            .iter()
            .fold(0.0f64, |acc, &j| acc.max(lp.objective[j].abs()));
        let cscale = if cmax > 0.0 { 1.0 / cmax } else { 1.0 };
        let mut cost = vec![0.0; cols.len()];
        for (internal, &orig) in structural.iter().enumerate() {
            cost[internal] = sign * lp.objective[orig] * cscale;
        }
        let mut in_basis = vec![false; cols.len()];
        for &c in &basis {
            in_basis[c] = true;
        }
        let mut binv = vec![0.0; rows * rows];
        for r in 0..rows {
            binv[r * rows + r] = 1.0;
        }
        let xb = b.clone();
        let max_pivots = opts
            .max_pivots
            .unwrap_or(50 * (rows + cols.len()) + 1000);
        Ok(Standard {
            rows,
            cols,
            kinds,
            structural,
            cost,
            b,
            basis,
            in_basis,
            binv,
            xb,
            opts: *opts,
            pivots: 0,
            max_pivots,
        })
    }

    fn run(&mut self) -> Result<usize, LpError> {
        if self.rows == 0 {
            // Every kept column is unconstrained apart from x >= 0.
            if self.cost.iter().any(|&c| c < -self.opts.tolerance) {
                return Err(LpError::Unbounded);
            }
            return Ok(0);
        }
        let has_artificial = self.kinds.contains(&ColKind::Artificial);
        if has_artificial {
            let phase1: Vec<f64> = self
                .kinds
                .iter()
                .map(|&k| if k == ColKind::Artificial { 1.0 } else { 0.0 })
                .collect();
            self.optimize(&phase1, true)?;
            self.refactor()?;
            let infeas: f64 = self
                .basis
                .iter()
                .zip(&self.xb)
                .filter(|(&c, _)| self.kinds[c] == ColKind::Artificial)
                .map(|(_, &v)| v.max(0.0))
                .sum();
            if infeas > self.opts.tolerance {
                return Err(LpError::Infeasible);
            }
            self.drive_out_artificials();
        }
        let cost = self.cost.clone();
        self.optimize(&cost, false)?;
        self.refactor()?;
        Ok(self.pivots)
    }

    fn optimize(&mut self, cost: &[f64], phase_one: bool) -> Result<(), LpError> {
        let rows = self.rows;
        let tol = self.opts.tolerance;
        let dtol = 1e-9;
        let mut degenerate_run = 0usize;
        let mut since_check = 0usize;
        let mut y = vec![0.0; rows];
        let mut alpha = vec![0.0; rows];
        loop {
            if self.pivots >= self.max_pivots {
                return Err(LpError::Stalled {
                    pivots: self.pivots,
                });
            }
            // Duals: y' = c_B' B^-1.
            y.iter_mut().for_each(|v| *v = 0.0);
            for r in 0..rows {
                let cb = cost[self.basis[r]];
                if cb != 0.0 {
                    let row = &self.binv[r * rows..(r + 1) * rows];
                    for (yi, &bv) in y.iter_mut().zip(row) {
                        *yi += cb * bv;
                    }
                }
            }
            let bland = degenerate_run >= self.opts.degenerate_limit;
            let mut entering = usize::MAX;
            let mut best = -dtol;
            for (j, col) in self.cols.iter().enumerate() {
                if self.in_basis[j] {
                    continue;
                }
                if !phase_one && self.kinds[j] == ColKind::Artificial {
                    continue;
                }
                let d = cost[j] - col.iter().map(|&(r, a)| y[r] * a).sum::<f64>();
                if bland {
                    if d < -dtol {
                        entering = j;
                        break;
                    }
                } else if d < best {
                    best = d;
                    entering = j;
                }
            }
            if entering == usize::MAX {
                return Ok(());
            }
            // alpha = B^-1 a_q
            alpha.iter_mut().for_each(|v| *v = 0.0);
            for &(row_idx, a) in &self.cols[entering] {
                for r in 0..rows {
                    alpha[r] += self.binv[r * rows + row_idx] * a;
                }
            }
            let mut leave = usize::MAX;
            let mut theta = f64::INFINITY;
            for r in 0..rows {
                let a = alpha[r];
                if a > self.opts.pivot_tolerance {
                    let ratio = self.xb[r].max(0.0) / a;
                    let better = if leave == usize::MAX || ratio < theta - 1e-12 {
                        true
                    } else if ratio <= theta + 1e-12 {
                        if bland {
                            self.basis[r] < self.basis[leave]
                        } else {
                            a > alpha[leave]
                        }
                    } else {
                        false
                    };
                    if better {
                        leave = r;
                        theta = ratio;
                    }
                }
            }
            if leave == usize::MAX {
                return Err(LpError::Unbounded);
            }
            if theta <= tol * 1e-3 {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
            self.pivot(leave, entering, &alpha, theta);
            since_check += 1;
            if since_check >= 64 {
                since_check = 0;
                if self.residual() > 1e-9 {
                    self.refactor()?;
                }
            }
        }
    }

    fn pivot(&mut self, leave: usize, entering: usize, alpha: &[f64], theta: f64) {
        let rows = self.rows;
        let pr = alpha[leave];
        {
            let row = &mut self.binv[leave * rows..(leave + 1) * rows];
            row.iter_mut().for_each(|v| *v /= pr);
        }
        let pivot_row: Vec<f64> = self.binv[leave * rows..(leave + 1) * rows].to_vec();
        for r in 0..rows {
            if r == leave {
                continue;
            }
            let f = alpha[r];
            if f != 0.0 {
                let row = &mut self.binv[r * rows..(r + 1) * rows];
                for (v, &p) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * p;
                }
                self.xb[r] -= f * theta;
            }
        }
        self.xb[leave] = theta;
        self.in_basis[self.basis[leave]] = false;
        self.basis[leave] = entering;
        self.in_basis[entering] = true;
        self.pivots += 1;
    }

    /// Max-norm of `B x_B - b`.
    fn residual(&self) -> f64 {
        let mut act = vec![0.0; self.rows];
        for (r, &c) in self.basis.iter().enumerate() {
            for &(row, a) in &self.cols[c] {
                act[row] += a * self.xb[r];
            }
        }
        act.iter()
            .zip(&self.b)
            .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()))
    }

    /// Recomputes `B^-1` by Gauss-Jordan elimination and `x_B = B^-1 b`.
    fn refactor(&mut self) -> Result<(), LpError> {
        let n = self.rows;
        let mut a = vec![0.0; n * n];
        for (r, &c) in self.basis.iter().enumerate() {
            for &(row, v) in &self.cols[c] {
                a[row * n + r] = v;
            }
        }
        let mut inv = vec![0.0; n * n];
        for r in 0..n {
            inv[r * n + r] = 1.0;
        }
        for col in 0..n {
            let mut p = col;
            let mut best = a[col * n + col].abs();
            for r in col + 1..n {
                let v = a[r * n + col].abs();
                if v > best {
                    best = v;
                    p = r;
                }
            }
            if best < 1e-12 {
                return Err(LpError::Stalled {
                    pivots: self.pivots,
                });
            }
            if p != col {
                for k in 0..n {
                    a.swap(p * n + k, col * n + k);
                    inv.swap(p * n + k, col * n + k);
                }
            }
            let d = a[col * n + col];
            for k in 0..n {
                a[col * n + k] /= d;
                inv[col * n + k] /= d;
            }
            let prow_a: Vec<f64> = a[col * n..(col + 1) * n].to_vec();
            let prow_i: Vec<f64> = inv[col * n..(col + 1) * n].to_vec();
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col];
                if f != 0.0 {
                    for k in 0..n {
                        a[r * n + k] -= f * prow_a[k];
                        inv[r * n + k] -= f * prow_i[k];
                    }
                }
            }
        }
        self.binv = inv;
        for r in 0..n {
            let row = &self.binv[r * n..(r + 1) * n];
            self.xb[r] = row.iter().zip(&self.b).map(|(x, y)| x * y).sum();
        }
        Ok(())
    }

    /// Pivots zero-valued artificials out of the basis where a structural or
    /// slack column can replace them. Rows where none can are redundant.
    fn drive_out_artificials(&mut self) {
        let rows = self.rows;
        for r in 0..rows {
            if self.kinds[self.basis[r]] != ColKind::Artificial {
                continue;
            }
            let binv_row: Vec<f64> = self.binv[r * rows..(r + 1) * rows].to_vec();
            let mut choice = None;
            for (j, col) in self.cols.iter().enumerate() {
                if self.in_basis[j] || self.kinds[j] == ColKind::Artificial {
                    continue;
                }
                let v: f64 = col.iter().map(|&(row, a)| binv_row[row] * a).sum();
                if v.abs() > 1e-7 {
                    choice = Some(j);
                    break;
                }
            }
            if let Some(j) = choice {
                let mut alpha = vec![0.0; rows];
                for &(row_idx, a) in &self.cols[j] {
                    for (rr, al) in alpha.iter_mut().enumerate() {
                        *al += self.binv[rr * rows + row_idx] * a;
                    }
                }
                let theta = self.xb[r].max(0.0) / alpha[r];
                self.pivot(r, j, &alpha, theta);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-7 * (1.0 + b.abs())
    }

    #[test]
    fn maximize_single_bound() {
        let mut lp = LinearProgram::new(Sense::Maximize);
        let x = lp.add_var(1.0, "x");
        lp.add_row("cap", vec![(x, 1.0)], RowKind::Le, 5.0);
        let sol = solve_lp(&lp).unwrap();
        assert!(approx(sol.x[0], 5.0));
        assert!(approx(sol.objective, 5.0));
    }

    #[test]
    fn duplicate_constraint_does_not_change_optimum() {
        let build = |copies: usize| {
            let mut lp = LinearProgram::new(Sense::Maximize);
            let x = lp.add_var(3.0, "x");
            let y = lp.add_var(2.0, "y");
            for c in 0..copies {
                lp.add_row(format!("r{c}"), vec![(x, 1.0), (y, 1.0)], RowKind::Le, 4.0);
            }
            lp.add_row("s", vec![(x, 1.0), (y, 3.0)], RowKind::Le, 6.0);
            lp.add_row("e", vec![(x, 1.0), (y, 1.0)], RowKind::Eq, 4.0);
            lp.add_row("e2", vec![(x, 2.0), (y, 2.0)], RowKind::Eq, 8.0);
            solve_lp(&lp).unwrap().objective
        };
        let one = build(1);
        let two = build(2);
        assert!(approx(one, 12.0));
        assert!(approx(two, one));
    }

    #[test]
    fn textbook_minimization_with_ge_rows() {
        // min 2x + 3y, x + y >= 4, x + 3y >= 6 -> x = 3, y = 1, obj 9
        let mut lp = LinearProgram::new(Sense::Minimize);
        let x = lp.add_var(2.0, "x");
        let y = lp.add_var(3.0, "y");
        lp.add_row("a", vec![(x, 1.0), (y, 1.0)], RowKind::Ge, 4.0);
        lp.add_row("b", vec![(x, 1.0), (y, 3.0)], RowKind::Ge, 6.0);
        let sol = solve_lp(&lp).unwrap();
        assert!(approx(sol.objective, 9.0), "{sol:?}");
        assert!(approx(sol.x[0], 3.0) && approx(sol.x[1], 1.0));
    }

    #[test]
    fn infeasible_and_unbounded_are_distinct() {
        let mut lp = LinearProgram::new(Sense::Minimize);
        let x = lp.add_var(1.0, "x");
        lp.add_row("lo", vec![(x, 1.0)], RowKind::Ge, 3.0);
        lp.add_row("hi", vec![(x, 1.0)], RowKind::Le, 2.0);
        assert_eq!(solve_lp(&lp), Err(LpError::Infeasible));

        let mut lp = LinearProgram::new(Sense::Maximize);
        let x = lp.add_var(1.0, "x");
        let y = lp.add_var(0.0, "y");
        lp.add_row("r", vec![(x, 1.0), (y, -1.0)], RowKind::Le, 1.0);
        assert_eq!(solve_lp(&lp), Err(LpError::Unbounded));
    }

    #[test]
    fn fixed_columns_stay_zero() {
        let mut lp = LinearProgram::new(Sense::Minimize);
        let a = lp.add_var(0.0, "a");
        let b = lp.add_var(5.0, "b");
        lp.fix_zero(a);
        lp.add_row("sum", vec![(a, 1.0), (b, 1.0)], RowKind::Eq, 1.0);
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.x[0], 0.0);
        assert!(approx(sol.objective, 5.0));
    }

    #[test]
    fn empty_row_feasibility() {
        let mut lp = LinearProgram::new(Sense::Minimize);
        let a = lp.add_var(1.0, "a");
        lp.fix_zero(a);
        lp.add_row("need", vec![(a, 1.0)], RowKind::Eq, 1.0);
        assert_eq!(solve_lp(&lp), Err(LpError::Infeasible));
        assert_eq!(
            solve_lp(&LinearProgram::new(Sense::Minimize)),
            Err(LpError::NoColumns)
        );
    }

    #[test]
    fn pivot_budget_reports_stall() {
        let mut lp = LinearProgram::new(Sense::Maximize);
        let x = lp.add_var(1.0, "x");
        let y = lp.add_var(1.0, "y");
        lp.add_row("a", vec![(x, 1.0)], RowKind::Le, 1.0);
        lp.add_row("b", vec![(y, 1.0)], RowKind::Le, 1.0);
        let opts = SimplexOptions {
            max_pivots: Some(1),
            ..SimplexOptions::default()
        };
        assert!(matches!(
            solve_lp_with(&lp, &opts),
            Err(LpError::Stalled { .. })
        ));
    }

    /// Brute-force vertex enumeration for tiny 2-variable programs.
    fn brute_force_2d(lp: &LinearProgram) -> Option<f64> {
        let mut lines: Vec<(f64, f64, f64)> = lp
            .rows
            .iter()
            .map(|r| {
                let mut a = [0.0; 2];
                for &(j, v) in &r.coeffs {
                    a[j] += v;
                }
                (a[0], a[1], r.rhs)
            })
            .collect();
        lines.push((1.0, 0.0, 0.0));
        lines.push((0.0, 1.0, 0.0));
        let mut best: Option<f64> = None;
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let (a1, b1, c1) = lines[i];
                let (a2, b2, c2) = lines[j];
                let det = a1 * b2 - a2 * b1;
                if det.abs() < 1e-12 {
                    continue;
                }
                let x = [(c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det];
                if lp.max_violation(&x) <= 1e-9 {
                    let v = lp.evaluate(&x);
                    best = Some(match (best, lp.sense) {
                        (None, _) => v,
                        (Some(b), Sense::Maximize) => b.max(v),
                        (Some(b), Sense::Minimize) => b.min(v),
                    });
                }
            }
        }
        best
    }

    proptest::proptest! {
        #[test]
        fn matches_vertex_enumeration(
            coefs in proptest::collection::vec((1u32..10, 1u32..10, 5u32..40), 1..5),
            c in (1u32..10, 1u32..10),
        ) {
            let mut lp = LinearProgram::new(Sense::Maximize);
            let x = lp.add_var(c.0 as f64, "x");
            let y = lp.add_var(c.1 as f64, "y");
            for (k, &(a, b, r)) in coefs.iter().enumerate() {
                lp.add_row(format!("r{k}"), vec![(x, a as f64), (y, b as f64)], RowKind::Le, r as f64);
            }
            let sol = solve_lp(&lp).unwrap();
            let brute = brute_force_2d(&lp).unwrap();
            proptest::prop_assert!((sol.objective - brute).abs() <= 1e-7 * (1.0 + brute.abs()));
            proptest::prop_assert!(lp.max_violation(&sol.x) <= 1e-7);
        }
    }
}
