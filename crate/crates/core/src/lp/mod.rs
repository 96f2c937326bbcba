//! LP relaxations of the three budgeted clustering variants.
//!
//! Node-color variables exist only for colors incident to a node; absent
//! ones are implicitly 1, which is always optimal for them. Node rows are
//! shifted accordingly, e.g. `sum_c x_v^c >= d_chi(v) - b` for the local
//! variant instead of `>= k - b`. [`build_full_lp`] keeps all `k|V|`
//! node-color variables and is used to check that the two agree.

mod dense;
mod format;
mod minilp_backend;

use std::sync::Arc;

use crate::error::{EccError, Result};
use crate::model::{EdgeColoredHypergraph, Variant, VariantKind};

pub use dense::DenseSimplex;
pub use format::write_lp_format;
pub use minilp_backend::MinilpSolver;

/// Primal feasibility tolerance for solver output.
pub const FEASIBILITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarRole {
    /// `x_e`: edge `e` is a mistake.
    Edge(usize),
    /// `x_v^c`: distance from node `v` to color `c`.
    NodeColor { node: usize, color: usize },
    /// `y_v`: extra colors at `v` (global variant).
    Overlap(usize),
    /// `z_v`: node `v` is deleted (robust variant).
    Deletion(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpVar {
    pub role: VarRole,
    pub lower: f64,
    pub upper: f64,
    pub obj: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpRow {
    pub name: String,
    pub coeffs: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

/// Where each role's variable lives in the variable table.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LpLayout {
    pub edge: Vec<usize>,
    /// Per node, `(color, var)` sorted by color.
    pub node_color: Vec<Vec<(usize, usize)>>,
    pub overlap: Vec<Option<usize>>,
    pub deletion: Vec<Option<usize>>,
}

#[derive(Debug, Clone)]
pub struct LpModel {
    pub variant: Variant,
    pub vars: Vec<LpVar>,
    pub rows: Vec<LpRow>,
    pub layout: Arc<LpLayout>,
}

impl LpModel {
    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Largest bound or row violation of `values`.
    pub fn max_violation(&self, values: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for (var, &x) in self.vars.iter().zip(values) {
            worst = worst.max(var.lower - x).max(x - var.upper);
        }
        for row in &self.rows {
            let lhs: f64 = row.coeffs.iter().map(|&(j, a)| a * values[j]).sum();
            let v = match row.sense {
                Sense::Le => lhs - row.rhs,
                Sense::Ge => row.rhs - lhs,
                Sense::Eq => (lhs - row.rhs).abs(),
            };
            worst = worst.max(v);
        }
        worst
    }

    pub fn objective_value(&self, values: &[f64]) -> f64 {
        self.vars.iter().zip(values).map(|(v, &x)| v.obj * x).sum()
    }

    /// Builds a point from per-role values.
    pub fn point(&self, value: impl Fn(VarRole) -> f64) -> Vec<f64> {
        self.vars.iter().map(|v| value(v.role)).collect()
    }
}

struct Builder {
    vars: Vec<LpVar>,
    rows: Vec<LpRow>,
}

impl Builder {
    fn var(&mut self, role: VarRole, upper: f64, obj: f64) -> usize {
        self.vars.push(LpVar {
            role,
            lower: 0.0,
            upper,
            obj,
        });
        self.vars.len() - 1
    }

    fn row(&mut self, name: String, coeffs: Vec<(usize, f64)>, sense: Sense, rhs: f64) {
        if !coeffs.is_empty() {
            self.rows.push(LpRow {
                name,
                coeffs,
                sense,
                rhs,
            });
        }
    }
}

/// Builds the sparsified relaxation for `variant`.
pub fn build_lp(h: &EdgeColoredHypergraph, variant: Variant) -> LpModel {
    build(h, variant, false)
}

/// Builds the relaxation with a variable for every node-color pair.
pub fn build_full_lp(h: &EdgeColoredHypergraph, variant: Variant) -> LpModel {
    build(h, variant, true)
}

fn build(h: &EdgeColoredHypergraph, variant: Variant, full: bool) -> LpModel {
    let n = h.num_nodes();
    let mut b = Builder {
        vars: Vec::new(),
        rows: Vec::new(),
    };
    let mut layout = LpLayout {
        edge: Vec::with_capacity(h.num_edges()),
        node_color: Vec::with_capacity(n),
        overlap: vec![None; n],
        deletion: vec![None; n],
    };

    for e in 0..h.num_edges() {
        layout.edge.push(b.var(VarRole::Edge(e), 1.0, 1.0));
    }
    for v in 0..n {
        let colors: Vec<usize> = if full {
            (0..h.num_colors()).collect()
        } else {
            h.color_counts(v).iter().map(|&(c, _)| c).collect()
        };
        let vars = colors
            .into_iter()
            .map(|c| (c, b.var(VarRole::NodeColor { node: v, color: c }, 1.0, 0.0)))
            .collect();
        layout.node_color.push(vars);
    }
    match variant.kind {
        VariantKind::Local => {}
        VariantKind::Global => {
            for v in 0..n {
                layout.overlap[v] = Some(b.var(VarRole::Overlap(v), f64::INFINITY, 0.0));
            }
        }
        VariantKind::Robust => {
            for v in 0..n {
                layout.deletion[v] = Some(b.var(VarRole::Deletion(v), 1.0, 0.0));
            }
        }
    }

    // Node rows. `width` is the number of node-color variables present.
    let budget = variant.budget as f64;
    for v in 0..n {
        let mut coeffs: Vec<(usize, f64)> = layout.node_color[v].iter().map(|&(_, j)| (j, 1.0)).collect();
        if coeffs.is_empty() {
            continue;
        }
        let width = coeffs.len() as f64;
        let rhs = match variant.kind {
            VariantKind::Local => width - budget,
            VariantKind::Global => {
                coeffs.push((layout.overlap[v].unwrap(), 1.0));
                width - 1.0
            }
            VariantKind::Robust => width - 1.0,
        };
        b.row(format!("node_{}", v + 1), coeffs, Sense::Ge, rhs);
    }

    // Coverage rows: x_v^c (- z_v) - x_e <= 0 for v in e, c = color(e).
    for (i, e) in h.edges().iter().enumerate() {
        for &v in &e.members {
            let nc = &layout.node_color[v];
            let j = nc[nc.binary_search_by_key(&e.color, |&(c, _)| c).unwrap()].1;
            let mut coeffs = vec![(j, 1.0), (layout.edge[i], -1.0)];
            if let Some(z) = layout.deletion[v] {
                coeffs.insert(1, (z, -1.0));
            }
            b.row(format!("cover_{}_{}", i + 1, v + 1), coeffs, Sense::Le, 0.0);
        }
    }

    let budget_vars: Vec<(usize, f64)> = match variant.kind {
        VariantKind::Local => Vec::new(),
        VariantKind::Global => layout.overlap.iter().flatten().map(|&j| (j, 1.0)).collect(),
        VariantKind::Robust => layout.deletion.iter().flatten().map(|&j| (j, 1.0)).collect(),
    };
    b.row("budget".into(), budget_vars, Sense::Le, budget);

    LpModel {
        variant,
        vars: b.vars,
        rows: b.rows,
        layout: Arc::new(layout),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub variant: Variant,
    pub objective: f64,
    pub values: Vec<f64>,
    pub status: SolveStatus,
    /// Simplex iterations, when the backend reports them.
    pub iterations: Option<usize>,
    pub layout: Arc<LpLayout>,
}

impl LpSolution {
    pub fn edge(&self, e: usize) -> f64 {
        self.values[self.layout.edge[e]]
    }

    /// `x_v^c`; colors without a variable read as 1.
    pub fn node_color(&self, v: usize, c: usize) -> f64 {
        let nc = &self.layout.node_color[v];
        nc.binary_search_by_key(&c, |&(col, _)| col)
            .map_or(1.0, |i| self.values[nc[i].1])
    }

    /// `(color, x_v^c)` for every color with a variable at `v`.
    pub fn node_colors(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.layout.node_color[v].iter().map(|&(c, j)| (c, self.values[j]))
    }

    pub fn overlap(&self, v: usize) -> f64 {
        self.layout.overlap[v].map_or(0.0, |j| self.values[j])
    }

    pub fn deletion(&self, v: usize) -> f64 {
        self.layout.deletion[v].map_or(0.0, |j| self.values[j])
    }
}

/// Minimal solver interface: load a model, solve it, read back values.
pub trait LpSolver {
    fn name(&self) -> &'static str;

    /// Returns optimal variable values and the iteration count if known.
    fn solve_raw(&self, model: &LpModel) -> Result<(Vec<f64>, Option<usize>)>;

    /// Solves `model`, snaps values into their bounds and checks the result.
    fn solve(&self, model: &LpModel) -> Result<LpSolution> {
        let (mut values, iterations) = self.solve_raw(model)?;
        for (x, var) in values.iter_mut().zip(&model.vars) {
            *x = x.clamp(var.lower, var.upper);
        }
        let violation = model.max_violation(&values);
        if violation > FEASIBILITY_TOL {
            return Err(EccError::Solver(format!(
                "{} returned a point violating the model by {violation:e}",
                self.name()
            )));
        }
        let objective = model.objective_value(&values);
        if objective < -FEASIBILITY_TOL {
            return Err(EccError::Solver(format!("negative objective {objective}")));
        }
        Ok(LpSolution {
            variant: model.variant,
            objective: objective.max(0.0),
            values,
            status: SolveStatus::Optimal,
            iterations,
            layout: Arc::clone(&model.layout),
        })
    }
}

pub fn solve_lp(model: &LpModel) -> Result<LpSolution> {
    MinilpSolver.solve(model)
}

pub fn lp_lower_bound(h: &EdgeColoredHypergraph, variant: Variant) -> Result<f64> {
    Ok(solve_lp(&build_lp(h, variant))?.objective)
}
