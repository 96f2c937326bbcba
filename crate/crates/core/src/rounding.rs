//! Threshold rounding of fractional LP solutions into colorings with
//! bicriteria guarantees.
//!
//! All strict thresholds are applied as `value < threshold - GUARD` so that
//! solver noise on values sitting exactly at a threshold cannot flip them.

use crate::error::{EccError, Result};
use crate::lp::LpSolution;
use crate::metrics::{measure_alpha, measure_beta};
use crate::model::{evaluate, ColorAssignment, EdgeColoredHypergraph, VariantKind};

pub const GUARD: f64 = 1e-9;

/// Relative slack allowed when comparing observed against promised ratios.
pub const RATIO_TOL: f64 = 1e-6;

/// Rounds `x` down if its fractional part is below `delta`, else up.
pub fn round_half(x: f64, delta: f64) -> usize {
    debug_assert!(x >= 0.0);
    let floor = x.floor();
    if x - floor < delta {
        floor as usize
    } else {
        x.ceil() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundingParams {
    /// `rho` for local, `delta` for global, `epsilon` for robust.
    pub threshold: f64,
    pub fill_unassigned: bool,
}

impl RoundingParams {
    /// Threshold with the variant's default fill behaviour.
    pub fn new(kind: VariantKind, threshold: f64) -> Self {
        Self {
            threshold,
            fill_unassigned: kind != VariantKind::Local,
        }
    }

    /// `rho = b/(b+1)`, which never exceeds the local budget.
    pub fn single_criteria(b: usize) -> Self {
        Self::new(VariantKind::Local, b as f64 / (b as f64 + 1.0))
    }

    pub fn with_fill(mut self, fill: bool) -> Self {
        self.fill_unassigned = fill;
        self
    }

    fn check(&self, kind: VariantKind) -> Result<()> {
        let t = self.threshold;
        let (ok, name, range) = match kind {
            VariantKind::Local => (t > 0.0 && t < 1.0, "rho", "(0, 1)"),
            VariantKind::Global => (t > 0.0 && t < 1.0, "delta", "(0, 1)"),
            VariantKind::Robust => (t > 0.0 && t < 0.5, "epsilon", "(0, 1/2)"),
        };
        if ok {
            Ok(())
        } else {
            Err(EccError::InvalidParameter(format!("{name} = {t} must lie in {range}")))
        }
    }
}

/// Promised and observed approximation factors of one rounding run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuaranteeCertificate {
    pub promised_alpha: f64,
    pub promised_beta: f64,
    pub observed_alpha: f64,
    pub observed_beta: f64,
    pub lp_value: f64,
    pub mistakes: usize,
    pub budget_used: usize,
}

impl GuaranteeCertificate {
    pub fn alpha_ok(&self) -> bool {
        self.observed_alpha <= self.promised_alpha * (1.0 + RATIO_TOL)
    }

    pub fn beta_ok(&self) -> bool {
        self.observed_beta <= self.promised_beta * (1.0 + RATIO_TOL)
    }

    pub fn holds(&self) -> bool {
        self.alpha_ok() && self.beta_ok()
    }
}

#[derive(Debug, Clone)]
pub struct RoundingOutcome {
    pub assignment: ColorAssignment,
    pub certificate: GuaranteeCertificate,
}

/// Promised `(alpha, beta)` for a variant, budget and threshold.
pub fn promised_factors(kind: VariantKind, b: usize, threshold: f64) -> (f64, f64) {
    let b = b as f64;
    match kind {
        VariantKind::Local => (1.0 / (1.0 - threshold), 1.0 / threshold - 1.0 / b),
        VariantKind::Global => ((b + 2.0) / (1.0 - threshold) + 1.0, 1.0 / threshold),
        VariantKind::Robust => (2.0 / (1.0 - 2.0 * threshold), 1.0 / threshold),
    }
}

/// Dispatches on the variant the solution was computed for.
pub fn round(h: &EdgeColoredHypergraph, sol: &LpSolution, params: RoundingParams) -> Result<RoundingOutcome> {
    params.check(sol.variant.kind)?;
    let b = sol.variant.budget;
    let mut assignment = match sol.variant.kind {
        VariantKind::Local => local_assignment(h, sol, params.threshold),
        VariantKind::Global => global_assignment(h, sol, params.threshold),
        VariantKind::Robust => robust_assignment(h, sol, params.threshold),
    };
    if params.fill_unassigned {
        fill_unassigned(h, &mut assignment);
    }

    let kind = sol.variant.kind;
    let report = evaluate(h, &assignment, kind);
    let (promised_alpha, promised_beta) = promised_factors(kind, b, params.threshold);
    let certificate = GuaranteeCertificate {
        promised_alpha,
        promised_beta,
        observed_alpha: measure_alpha(report.mistakes, sol.objective),
        observed_beta: measure_beta(kind, report.budget_used, b),
        lp_value: sol.objective,
        mistakes: report.mistakes,
        budget_used: report.budget_used,
    };
    Ok(RoundingOutcome {
        assignment,
        certificate,
    })
}

fn expect_kind(sol: &LpSolution, kind: VariantKind) -> Result<()> {
    if sol.variant.kind == kind {
        Ok(())
    } else {
        Err(EccError::InvalidParameter(format!(
            "LP solution is for the {} variant, not {kind}",
            sol.variant.kind
        )))
    }
}

/// Node `v` gets color `c` iff `x_v^c < 1 - rho`.
pub fn round_local(h: &EdgeColoredHypergraph, sol: &LpSolution, params: RoundingParams) -> Result<RoundingOutcome> {
    expect_kind(sol, VariantKind::Local)?;
    round(h, sol, params)
}

/// Node `v` gets color `c` iff `x_v^c < (1 - delta) / (round_half(y_v, delta) + 2)`.
pub fn round_global(h: &EdgeColoredHypergraph, sol: &LpSolution, params: RoundingParams) -> Result<RoundingOutcome> {
    expect_kind(sol, VariantKind::Global)?;
    round(h, sol, params)
}

/// Node `v` is deleted iff `z_v >= epsilon`; otherwise it gets color `c`
/// iff `x_v^c < 1/2`.
pub fn round_robust(h: &EdgeColoredHypergraph, sol: &LpSolution, params: RoundingParams) -> Result<RoundingOutcome> {
    expect_kind(sol, VariantKind::Robust)?;
    round(h, sol, params)
}

fn colors_below(sol: &LpSolution, v: usize, threshold: f64) -> Vec<usize> {
    sol.node_colors(v)
        .filter(|&(_, x)| x < threshold - GUARD)
        .map(|(c, _)| c)
        .collect()
}

fn local_assignment(h: &EdgeColoredHypergraph, sol: &LpSolution, rho: f64) -> ColorAssignment {
    ColorAssignment::from_sets((0..h.num_nodes()).map(|v| colors_below(sol, v, 1.0 - rho)).collect())
}

fn global_assignment(h: &EdgeColoredHypergraph, sol: &LpSolution, delta: f64) -> ColorAssignment {
    ColorAssignment::from_sets(
        (0..h.num_nodes())
            .map(|v| {
                let rho_v = (1.0 - delta) / (round_half(sol.overlap(v), delta) as f64 + 2.0);
                colors_below(sol, v, rho_v)
            })
            .collect(),
    )
}

fn robust_assignment(h: &EdgeColoredHypergraph, sol: &LpSolution, eps: f64) -> ColorAssignment {
    let mut a = ColorAssignment::empty(h.num_nodes());
    for v in 0..h.num_nodes() {
        if sol.deletion(v) >= eps - GUARD {
            a.delete(v);
        } else {
            a.set_colors(v, colors_below(sol, v, 0.5));
        }
    }
    a
}

/// Gives every non-deleted node without a color its favorite color.
pub fn fill_unassigned(h: &EdgeColoredHypergraph, a: &mut ColorAssignment) {
    for v in 0..h.num_nodes() {
        if !a.is_deleted(v) && a.colors(v).is_empty() {
            a.insert(v, h.favorite(v));
        }
    }
}
