//! Dense two-phase tableau simplex.
//!
//! Meant for small models and for cross-checking the sparse backend.
//! Pivoting uses the most negative reduced cost and falls back to Bland's
//! rule after a run of degenerate pivots, which rules out cycling.

use super::{LpModel, LpSolver, Sense};
use crate::error::{EccError, Result};

const PIVOT_TOL: f64 = 1e-10;
const COST_TOL: f64 = 1e-10;
const DEGENERATE_RUN: usize = 50;

#[derive(Debug, Clone, Copy)]
pub struct DenseSimplex {
    pub max_iterations: usize,
}

impl Default for DenseSimplex {
    fn default() -> Self {
        Self {
            max_iterations: 100_000,
        }
    }
}

struct Tableau {
    rows: usize,
    width: usize, // columns plus the rhs column
    a: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.width + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.width - 1)
    }

    fn pivot(&mut self, r: usize, c: usize, cost: &mut [f64]) {
        let w = self.width;
        let p = self.at(r, c);
        for j in 0..w {
            self.a[r * w + j] /= p;
        }
        let pivot_row: Vec<f64> = self.a[r * w..(r + 1) * w].to_vec();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.a[i * w + c];
            if f != 0.0 {
                for (x, &pj) in self.a[i * w..(i + 1) * w].iter_mut().zip(&pivot_row) {
                    *x -= f * pj;
                }
            }
        }
        let f = cost[c];
        if f != 0.0 {
            for (x, &pj) in cost.iter_mut().zip(&pivot_row) {
                *x -= f * pj;
            }
        }
        self.basis[r] = c;
    }

    /// Reduced-cost row for `obj` given the current basis.
    fn price(&self, obj: &[f64]) -> Vec<f64> {
        let mut cost = obj.to_vec();
        cost.push(0.0);
        for (i, &b) in self.basis.iter().enumerate() {
            let f = cost[b];
            if f != 0.0 {
                for (j, x) in cost.iter_mut().enumerate().take(self.width) {
                    *x -= f * self.at(i, j);
                }
            }
        }
        cost
    }

    /// Minimizes `obj` over the columns marked `allowed`.
    fn optimize(&mut self, obj: &[f64], allowed: &[bool], budget: &mut usize) -> Result<usize> {
        let mut cost = self.price(obj);
        let mut iterations = 0;
        let mut degenerate = 0;
        loop {
            let bland = degenerate >= DEGENERATE_RUN;
            let cols = 0..self.width - 1;
            let entering = if bland {
                cols.clone().find(|&j| allowed[j] && cost[j] < -COST_TOL)
            } else {
                cols.filter(|&j| allowed[j] && cost[j] < -COST_TOL)
                    .min_by(|&x, &y| cost[x].total_cmp(&cost[y]).then(x.cmp(&y)))
            };
            let Some(c) = entering else { return Ok(iterations) };

            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                let a = self.at(i, c);
                if a > PIVOT_TOL {
                    let ratio = self.rhs(i) / a;
                    leave = match leave {
                        Some((r, best)) if ratio > best + 1e-12 => Some((r, best)),
                        Some((r, best)) if ratio > best - 1e-12 && self.basis[r] < self.basis[i] => Some((r, best)),
                        _ => Some((i, ratio)),
                    };
                }
            }
            let Some((r, ratio)) = leave else {
                return Err(EccError::Solver("problem is unbounded".into()));
            };
            degenerate = if ratio.abs() < 1e-12 { degenerate + 1 } else { 0 };
            self.pivot(r, c, &mut cost);
            iterations += 1;
            if *budget == 0 {
                return Err(EccError::Solver("iteration limit reached".into()));
            }
            *budget -= 1;
        }
    }
}

type RawRow = (Vec<(usize, f64)>, Sense, f64);

impl LpSolver for DenseSimplex {
    fn name(&self) -> &'static str {
        "dense-simplex"
    }

    fn solve_raw(&self, model: &LpModel) -> Result<(Vec<f64>, Option<usize>)> {
        let n = model.num_vars();
        if model.vars.iter().any(|v| v.lower != 0.0) {
            return Err(EccError::Solver("dense simplex expects zero lower bounds".into()));
        }

        // Rows as (coeffs over structural columns, sense, rhs), bounds included.
        let mut rows: Vec<RawRow> = model.rows.iter().map(|r| (r.coeffs.clone(), r.sense, r.rhs)).collect();
        for (j, v) in model.vars.iter().enumerate() {
            if v.upper.is_finite() {
                rows.push((vec![(j, 1.0)], Sense::Le, v.upper));
            }
        }
        for row in &mut rows {
            if row.2 < 0.0 {
                for t in &mut row.0 {
                    t.1 = -t.1;
                }
                row.2 = -row.2;
                row.1 = match row.1 {
                    Sense::Le => Sense::Ge,
                    Sense::Ge => Sense::Le,
                    Sense::Eq => Sense::Eq,
                };
            }
        }

        let m = rows.len();
        let slacks = rows.iter().filter(|r| r.1 != Sense::Eq).count();
        let artificials = rows.iter().filter(|r| r.1 != Sense::Le).count();
        let cols = n + slacks + artificials;
        let width = cols + 1;
        let mut t = Tableau {
            rows: m,
            width,
            a: vec![0.0; m * width],
            basis: vec![0; m],
        };

        let mut next_slack = n;
        let mut next_art = n + slacks;
        for (i, (coeffs, sense, rhs)) in rows.iter().enumerate() {
            for &(j, a) in coeffs {
                t.a[i * width + j] += a;
            }
            t.a[i * width + cols] = *rhs;
            match sense {
                Sense::Le => {
                    t.a[i * width + next_slack] = 1.0;
                    t.basis[i] = next_slack;
                    next_slack += 1;
                }
                Sense::Ge => {
                    t.a[i * width + next_slack] = -1.0;
                    next_slack += 1;
                    t.a[i * width + next_art] = 1.0;
                    t.basis[i] = next_art;
                    next_art += 1;
                }
                Sense::Eq => {
                    t.a[i * width + next_art] = 1.0;
                    t.basis[i] = next_art;
                    next_art += 1;
                }
            }
        }

        let mut budget = self.max_iterations;
        let is_art = |j: usize| j >= n + slacks;
        let mut iterations = 0;

        if artificials > 0 {
            let phase1: Vec<f64> = (0..cols).map(|j| if is_art(j) { 1.0 } else { 0.0 }).collect();
            iterations += t.optimize(&phase1, &vec![true; cols], &mut budget)?;
            let infeasibility: f64 = (0..m).filter(|&i| is_art(t.basis[i])).map(|i| t.rhs(i)).sum();
            if infeasibility > 1e-7 {
                return Err(EccError::Solver("problem is infeasible".into()));
            }
            // Drive zero-valued artificials out of the basis where possible.
            let mut scratch = vec![0.0; width];
            for i in 0..m {
                if is_art(t.basis[i]) {
                    if let Some(c) = (0..n + slacks).find(|&j| t.at(i, j).abs() > 1e-9) {
                        t.pivot(i, c, &mut scratch);
                    }
                }
            }
        }

        let obj: Vec<f64> = (0..cols).map(|j| if j < n { model.vars[j].obj } else { 0.0 }).collect();
        let allowed: Vec<bool> = (0..cols).map(|j| !is_art(j)).collect();
        iterations += t.optimize(&obj, &allowed, &mut budget)?;

        let mut values = vec![0.0; n];
        for (i, &b) in t.basis.iter().enumerate() {
            if b < n {
                values[b] = t.rhs(i);
            }
        }
        Ok((values, Some(iterations)))
    }
}
