use std::fmt::Write as _;

use super::simplex::{LinearProgram, RowKind, Sense};

/// Free-format MPS: ROWS, COLUMNS (in column order), RHS, BOUNDS.
/// Columns fixed at zero get an `FX` bound.
pub fn write_mps(lp: &LinearProgram, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "NAME {name}");
    if lp.sense == Sense::Maximize {
        let _ = writeln!(out, "OBJSENSE\n    MAX");
    }
    let _ = writeln!(out, "ROWS");
    let _ = writeln!(out, " N  obj");
    for row in &lp.rows {
        let tag = match row.kind {
            RowKind::Le => "L",
            RowKind::Ge => "G",
            RowKind::Eq => "E",
        };
        let _ = writeln!(out, " {tag}  {}", row.name);
    }
    let mut by_col: Vec<Vec<(usize, f64)>> = vec![Vec::new(); lp.num_vars()];
    for (r, row) in lp.rows.iter().enumerate() {
        for &(j, a) in &row.coeffs {
            by_col[j].push((r, a));
        }
    }
    let _ = writeln!(out, "COLUMNS");
    for (j, entries) in by_col.iter().enumerate() {
        let name = &lp.col_names[j];
        if lp.objective[j] != 0.0 {
            let _ = writeln!(out, "    {name}  obj  {}", lp.objective[j]);
        }
        for &(r, a) in entries {
            let _ = writeln!(out, "    {name}  {}  {a}", lp.rows[r].name);
        }
        if lp.objective[j] == 0.0 && entries.is_empty() {
            let _ = writeln!(out, "    {name}  obj  0");
        }
    }
    let _ = writeln!(out, "RHS");
    for row in &lp.rows {
        if row.rhs != 0.0 {
            let _ = writeln!(out, "    rhs  {}  {}", row.name, row.rhs);
        }
    }
    let fixed: Vec<usize> = (0..lp.num_vars()).filter(|&j| lp.fixed_zero[j]).collect();
    if !fixed.is_empty() {
        let _ = writeln!(out, "BOUNDS");
        for j in fixed {
            let _ = writeln!(out, " FX bnd  {}  0", lp.col_names[j]);
        }
    }
    let _ = writeln!(out, "ENDATA");
    out
}
