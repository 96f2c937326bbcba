//! CPLEX LP text format, readable by most external solvers.

use std::io::Write;

use super::{LpModel, Sense, VarRole};
use crate::error::Result;

fn var_name(role: VarRole) -> String {
    match role {
        VarRole::Edge(e) => format!("xe_{}", e + 1),
        VarRole::NodeColor { node, color } => format!("x_{}_{}", node + 1, color + 1),
        VarRole::Overlap(v) => format!("y_{}", v + 1),
        VarRole::Deletion(v) => format!("z_{}", v + 1),
    }
}

fn write_terms<W: Write>(out: &mut W, model: &LpModel, terms: &[(usize, f64)]) -> Result<()> {
    for (i, &(j, a)) in terms.iter().enumerate() {
        if i > 0 && i % 8 == 0 {
            write!(out, "\n   ")?;
        }
        let sign = if a < 0.0 {
            " -"
        } else if i == 0 {
            ""
        } else {
            " +"
        };
        let mag = a.abs();
        let name = var_name(model.vars[j].role);
        if mag == 1.0 {
            write!(out, "{sign} {name}")?;
        } else {
            write!(out, "{sign} {mag} {name}")?;
        }
    }
    Ok(())
}

pub fn write_lp_format<W: Write>(model: &LpModel, mut out: W) -> Result<()> {
    writeln!(out, "\\ edge-colored clustering relaxation, {}", model.variant)?;
    writeln!(out, "Minimize")?;
    write!(out, " obj:")?;
    let obj: Vec<(usize, f64)> = (0..model.num_vars())
        .filter(|&j| model.vars[j].obj != 0.0)
        .map(|j| (j, model.vars[j].obj))
        .collect();
    if obj.is_empty() {
        write!(
            out,
            " 0 {}",
            model.vars.first().map_or("xe_0".into(), |v| var_name(v.role))
        )?;
    } else {
        write_terms(&mut out, model, &obj)?;
    }
    writeln!(out)?;

    writeln!(out, "Subject To")?;
    for row in &model.rows {
        write!(out, " {}:", row.name)?;
        write_terms(&mut out, model, &row.coeffs)?;
        let op = match row.sense {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        };
        writeln!(out, " {op} {}", row.rhs)?;
    }

    writeln!(out, "Bounds")?;
    for v in &model.vars {
        let name = var_name(v.role);
        if v.upper.is_finite() {
            writeln!(out, " {} <= {name} <= {}", v.lower, v.upper)?;
        } else {
            writeln!(out, " {name} >= {}", v.lower)?;
        }
    }
    writeln!(out, "End")?;
    Ok(())
}
