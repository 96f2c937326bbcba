//! Exact algorithms: a brute-force oracle, edge-subset enumeration,
//! bounded search-tree branching on conflicts, and kernelization.

mod branching;
mod brute;
mod kernel;
mod xp;

pub use branching::{
    decide, decide_branching, optimize_via_decision, BranchingConfig, Conflict, Decision, SearchStats,
};
pub use brute::{brute_force_decide, brute_force_optimum, BruteForce, Objective};
pub use kernel::{kernelize, Kernel};
pub use xp::{xp_decide, xp_optimum};

use crate::model::{evaluate, ColorAssignment, EdgeColoredHypergraph, Variant, VariantKind};

/// Is there a set `X` of at most `t` edges such that the remaining edges
/// can all be satisfied within the variant's budget?
#[derive(Debug, Clone)]
pub struct DecisionInstance {
    pub hypergraph: EdgeColoredHypergraph,
    pub variant: Variant,
    pub t: usize,
}

impl DecisionInstance {
    pub fn new(hypergraph: EdgeColoredHypergraph, variant: Variant, t: usize) -> Self {
        Self { hypergraph, variant, t }
    }
}

/// Deleted edges plus a coloring satisfying every other edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionCertificate {
    pub deleted_edges: Vec<usize>,
    pub assignment: ColorAssignment,
}

impl DecisionCertificate {
    /// Describes why the certificate fails for `variant` and `t`, if it does.
    pub fn violation(&self, h: &EdgeColoredHypergraph, variant: Variant, t: usize) -> Option<String> {
        if self.deleted_edges.len() > t {
            return Some(format!("{} deleted edges exceed t = {t}", self.deleted_edges.len()));
        }
        if let Some(v) = variant.violation(&self.assignment) {
            return Some(v);
        }
        let report = evaluate(h, &self.assignment, variant.kind);
        (0..h.num_edges())
            .find(|e| !report.per_edge_satisfied[*e] && self.deleted_edges.binary_search(e).is_err())
            .map(|e| format!("edge {} is neither deleted nor satisfied", e + 1))
    }
}

/// Distinct colors of the kept edges at each node.
fn kept_colors(h: &EdgeColoredHypergraph, kept: &[bool]) -> Vec<Vec<usize>> {
    (0..h.num_nodes())
        .map(|v| {
            let mut cs: Vec<usize> = h
                .incident(v)
                .iter()
                .filter(|&&e| kept[e])
                .map(|&e| h.edge(e).color)
                .collect();
            cs.sort_unstable();
            cs.dedup();
            cs
        })
        .collect()
}

/// A feasible coloring satisfying every kept edge, if one exists.
pub fn satisfy_kept(h: &EdgeColoredHypergraph, variant: Variant, kept: &[bool]) -> Option<ColorAssignment> {
    let needs = kept_colors(h, kept);
    let b = variant.budget;
    let fits = match variant.kind {
        VariantKind::Local => needs.iter().all(|cs| cs.len() <= b),
        VariantKind::Global => needs.iter().map(|cs| cs.len().saturating_sub(1)).sum::<usize>() <= b,
        VariantKind::Robust => needs.iter().filter(|cs| cs.len() > 1).count() <= b,
    };
    if !fits {
        return None;
    }
    let mut a = ColorAssignment::empty(h.num_nodes());
    for (v, cs) in needs.into_iter().enumerate() {
        if variant.kind == VariantKind::Robust && cs.len() > 1 {
            a.delete(v);
        } else if cs.is_empty() {
            a.insert(v, h.favorite(v));
        } else {
            a.set_colors(v, cs);
        }
    }
    Some(a)
}
