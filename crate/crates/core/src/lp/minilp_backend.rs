use minilp::{ComparisonOp, LinearExpr, OptimizationDirection, Problem};

use super::{LpModel, LpSolver, Sense};
use crate::error::{EccError, Result};

/// Sparse revised simplex from the `minilp` crate.
#[derive(Debug, Clone, Copy, Default)]
pub struct MinilpSolver;

impl LpSolver for MinilpSolver {
    fn name(&self) -> &'static str {
        "minilp"
    }

    fn solve_raw(&self, model: &LpModel) -> Result<(Vec<f64>, Option<usize>)> {
        let mut problem = Problem::new(OptimizationDirection::Minimize);
        let vars: Vec<_> = model
            .vars
            .iter()
            .map(|v| problem.add_var(v.obj, (v.lower, v.upper)))
            .collect();
        for row in &model.rows {
            let mut expr = LinearExpr::empty();
            for &(j, a) in &row.coeffs {
                expr.add(vars[j], a);
            }
            let op = match row.sense {
                Sense::Le => ComparisonOp::Le,
                Sense::Ge => ComparisonOp::Ge,
                Sense::Eq => ComparisonOp::Eq,
            };
            problem.add_constraint(expr, op, row.rhs);
        }
        let solution = problem.solve().map_err(|e| EccError::Solver(e.to_string()))?;
        Ok((vars.iter().map(|&v| *solution.var_value(v)).collect(), None))
    }
}
