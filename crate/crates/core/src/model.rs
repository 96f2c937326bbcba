//! Edge-colored hypergraphs, color assignments and the mistake objective.
//!
//! Nodes and colors are dense zero-based indices throughout the library.
//! The text and JSON formats in [`crate::io`] shift them to one-based ids.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{EccError, Result};

/// A hyperedge with its color label. Members are sorted and distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub color: usize,
    pub members: Vec<usize>,
}

impl Edge {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

/// Immutable edge-colored hypergraph with precomputed per-node incidence,
/// color counts and color preference orders.
#[derive(Debug, Clone)]
pub struct EdgeColoredHypergraph {
    num_nodes: usize,
    num_colors: usize,
    edges: Vec<Edge>,
    incidence: Vec<Vec<usize>>,
    // (color, count) pairs with count > 0, sorted by color.
    color_counts: Vec<Vec<(usize, usize)>>,
    // Incident colors ordered by count descending, ties by ascending color.
    preference: Vec<Vec<usize>>,
}

/// Checks a single raw edge against the node and color ranges.
pub(crate) fn check_edge(n: usize, k: usize, color: usize, members: &[usize]) -> Result<(), String> {
    if members.is_empty() {
        return Err("edge has no members".into());
    }
    if color >= k {
        return Err(format!("color {} out of range 1..={k}", color + 1));
    }
    let mut seen = members.to_vec();
    seen.sort_unstable();
    for w in seen.windows(2) {
        if w[0] == w[1] {
            return Err(format!("node {} appears twice in the edge", w[0] + 1));
        }
    }
    if let Some(&v) = seen.last() {
        if v >= n {
            return Err(format!("node {} out of range 1..={n}", v + 1));
        }
    }
    Ok(())
}

impl EdgeColoredHypergraph {
    /// Builds a hypergraph from `(color, members)` pairs. Edge order is kept.
    pub fn new(num_nodes: usize, num_colors: usize, raw_edges: Vec<(usize, Vec<usize>)>) -> Result<Self> {
        let mut edges = Vec::with_capacity(raw_edges.len());
        for (i, (color, mut members)) in raw_edges.into_iter().enumerate() {
            check_edge(num_nodes, num_colors, color, &members)
                .map_err(|msg| EccError::InvalidHypergraph(format!("edge {}: {msg}", i + 1)))?;
            members.sort_unstable();
            edges.push(Edge { color, members });
        }
        Ok(Self::from_checked_edges(num_nodes, num_colors, edges))
    }

    pub(crate) fn from_checked_edges(num_nodes: usize, num_colors: usize, edges: Vec<Edge>) -> Self {
        let mut incidence = vec![Vec::new(); num_nodes];
        for (i, e) in edges.iter().enumerate() {
            for &v in &e.members {
                incidence[v].push(i);
            }
        }

        let mut color_counts = Vec::with_capacity(num_nodes);
        let mut preference = Vec::with_capacity(num_nodes);
        for inc in &incidence {
            let mut colors: Vec<usize> = inc.iter().map(|&i| edges[i].color).collect();
            colors.sort_unstable();
            let mut counts: Vec<(usize, usize)> = Vec::new();
            for c in colors {
                match counts.last_mut() {
                    Some((last, n)) if *last == c => *n += 1,
                    _ => counts.push((c, 1)),
                }
            }
            let mut pref: Vec<(usize, usize)> = counts.clone();
            pref.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
            preference.push(pref.into_iter().map(|(c, _)| c).collect());
            color_counts.push(counts);
        }

        Self {
            num_nodes,
            num_colors,
            edges,
            incidence,
            color_counts,
            preference,
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    /// Edge ids incident to `v`, ascending.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    /// Number of distinct colors among the edges at `v`.
    pub fn chromatic_degree(&self, v: usize) -> usize {
        self.color_counts[v].len()
    }

    /// Number of edges of color `c` containing `v`.
    pub fn color_count(&self, v: usize, c: usize) -> usize {
        self.color_counts[v]
            .binary_search_by_key(&c, |&(col, _)| col)
            .map(|i| self.color_counts[v][i].1)
            .unwrap_or(0)
    }

    /// `(color, count)` pairs with positive count, ascending by color.
    pub fn color_counts(&self, v: usize) -> &[(usize, usize)] {
        &self.color_counts[v]
    }

    /// Incident colors of `v` from most to least frequent. Zero-count
    /// colors are omitted; they would follow in ascending id order.
    pub fn preference(&self, v: usize) -> &[usize] {
        &self.preference[v]
    }

    /// The most frequent incident color of `v`, or color 0 for an isolated node.
    pub fn favorite(&self, v: usize) -> usize {
        self.preference[v].first().copied().unwrap_or(0)
    }

    /// Edges at `v` whose color is not the favorite.
    pub fn non_dominant_degree(&self, v: usize) -> usize {
        let top = self.preference[v].first().map_or(0, |&c| self.color_count(v, c));
        self.degree(v) - top
    }

    /// Maximum edge size, 0 for an edgeless hypergraph.
    pub fn rank(&self) -> usize {
        self.edges.iter().map(Edge::len).max().unwrap_or(0)
    }

    pub fn max_chromatic_degree(&self) -> usize {
        (0..self.num_nodes).map(|v| self.chromatic_degree(v)).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantKind {
    /// Every node may take at most `b` colors.
    Local,
    /// One free color per node plus `b` extra colors shared by all nodes.
    Global,
    /// One color per node, at most `b` nodes may be deleted.
    Robust,
}

impl VariantKind {
    pub fn name(self) -> &'static str {
        match self {
            VariantKind::Local => "local",
            VariantKind::Global => "global",
            VariantKind::Robust => "robust",
        }
    }
}

impl fmt::Display for VariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for VariantKind {
    type Err = EccError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "local" => Ok(VariantKind::Local),
            "global" => Ok(VariantKind::Global),
            "robust" => Ok(VariantKind::Robust),
            other => Err(EccError::InvalidParameter(format!("unknown variant '{other}'"))),
        }
    }
}

/// A problem variant together with its budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Variant {
    pub kind: VariantKind,
    pub budget: usize,
}

impl Variant {
    pub fn new(kind: VariantKind, budget: usize) -> Result<Self> {
        if kind == VariantKind::Local && budget == 0 {
            return Err(EccError::InvalidParameter("local budget must be at least 1".into()));
        }
        Ok(Self { kind, budget })
    }

    pub fn local(budget: usize) -> Result<Self> {
        Self::new(VariantKind::Local, budget)
    }

    pub fn global(budget: usize) -> Self {
        Self {
            kind: VariantKind::Global,
            budget,
        }
    }

    pub fn robust(budget: usize) -> Self {
        Self {
            kind: VariantKind::Robust,
            budget,
        }
    }

    /// Describes the first constraint `assignment` violates, if any.
    pub fn violation(&self, assignment: &ColorAssignment) -> Option<String> {
        let b = self.budget;
        match self.kind {
            VariantKind::Local => {
                if let Some(v) = assignment.deleted_nodes().first() {
                    return Some(format!("node {} is deleted", v + 1));
                }
                (0..assignment.num_nodes())
                    .find(|&v| assignment.colors(v).len() > b)
                    .map(|v| format!("node {} has {} > {b} colors", v + 1, assignment.colors(v).len()))
            }
            VariantKind::Global => {
                if let Some(v) = assignment.deleted_nodes().first() {
                    return Some(format!("node {} is deleted", v + 1));
                }
                if let Some(v) = (0..assignment.num_nodes()).find(|&v| assignment.colors(v).is_empty()) {
                    return Some(format!("node {} has no color", v + 1));
                }
                let extra = assignment.extra_colors();
                (extra > b).then(|| format!("{extra} extra colors exceed budget {b}"))
            }
            VariantKind::Robust => {
                let deleted = assignment.num_deleted();
                if deleted > b {
                    return Some(format!("{deleted} deleted nodes exceed budget {b}"));
                }
                (0..assignment.num_nodes())
                    .find(|&v| !assignment.is_deleted(v) && assignment.colors(v).len() != 1)
                    .map(|v| format!("node {} has {} colors, expected 1", v + 1, assignment.colors(v).len()))
            }
        }
    }

    pub fn is_feasible(&self, assignment: &ColorAssignment) -> bool {
        self.violation(assignment).is_none()
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(b={})", self.kind, self.budget)
    }
}

/// Colors assigned to each node, plus the deleted nodes of the robust variant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorAssignment {
    colors: Vec<Vec<usize>>,
    deleted: Vec<bool>,
}

impl ColorAssignment {
    pub fn empty(num_nodes: usize) -> Self {
        Self {
            colors: vec![Vec::new(); num_nodes],
            deleted: vec![false; num_nodes],
        }
    }

    pub fn from_sets(sets: Vec<Vec<usize>>) -> Self {
        let n = sets.len();
        let mut a = Self {
            colors: sets,
            deleted: vec![false; n],
        };
        for c in &mut a.colors {
            c.sort_unstable();
            c.dedup();
        }
        a
    }

    pub fn num_nodes(&self) -> usize {
        self.colors.len()
    }

    /// Sorted colors of `v`.
    pub fn colors(&self, v: usize) -> &[usize] {
        &self.colors[v]
    }

    pub fn has(&self, v: usize, c: usize) -> bool {
        self.colors[v].binary_search(&c).is_ok()
    }

    /// Adds `c` to `v`; returns false if it was already present.
    pub fn insert(&mut self, v: usize, c: usize) -> bool {
        match self.colors[v].binary_search(&c) {
            Ok(_) => false,
            Err(pos) => {
                self.colors[v].insert(pos, c);
                true
            }
        }
    }

    pub fn set_colors(&mut self, v: usize, mut colors: Vec<usize>) {
        colors.sort_unstable();
        colors.dedup();
        self.colors[v] = colors;
    }

    pub fn delete(&mut self, v: usize) {
        self.deleted[v] = true;
    }

    pub fn is_deleted(&self, v: usize) -> bool {
        self.deleted[v]
    }

    pub fn deleted_nodes(&self) -> Vec<usize> {
        (0..self.deleted.len()).filter(|&v| self.deleted[v]).collect()
    }

    pub fn num_deleted(&self) -> usize {
        self.deleted.iter().filter(|&&d| d).count()
    }

    /// Whether node `v` satisfies its side of an edge of color `c`.
    pub fn covers(&self, v: usize, c: usize) -> bool {
        self.deleted[v] || self.has(v, c)
    }

    /// Colors beyond the first, summed over non-deleted nodes.
    pub fn extra_colors(&self) -> usize {
        (0..self.colors.len())
            .filter(|&v| !self.deleted[v])
            .map(|v| self.colors[v].len().saturating_sub(1))
            .sum()
    }

    pub fn max_colors(&self) -> usize {
        self.colors.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Budget consumed under `kind`: the largest color set for local, extra
    /// colors for global, deleted nodes for robust.
    pub fn budget_used(&self, kind: VariantKind) -> usize {
        match kind {
            VariantKind::Local => self.max_colors(),
            VariantKind::Global => self.extra_colors(),
            VariantKind::Robust => self.num_deleted(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationReport {
    pub mistakes: usize,
    pub satisfied: usize,
    /// Total node-edge errors.
    pub linear_penalty: usize,
    pub budget_used: usize,
    /// Nodes in no satisfied edge, isolated nodes included.
    pub unused_nodes: usize,
    pub per_edge_satisfied: Vec<bool>,
}

/// Number of members of `edge` that neither carry its color nor are deleted.
pub fn edge_penalty(edge: &Edge, assignment: &ColorAssignment) -> usize {
    edge.members
        .iter()
        .filter(|&&v| !assignment.covers(v, edge.color))
        .count()
}

pub fn evaluate(h: &EdgeColoredHypergraph, assignment: &ColorAssignment, kind: VariantKind) -> EvaluationReport {
    debug_assert_eq!(h.num_nodes(), assignment.num_nodes());
    let mut per_edge_satisfied = Vec::with_capacity(h.num_edges());
    let mut linear_penalty = 0;
    let mut used = vec![false; h.num_nodes()];
    for e in h.edges() {
        let p = edge_penalty(e, assignment);
        linear_penalty += p;
        per_edge_satisfied.push(p == 0);
        if p == 0 {
            for &v in &e.members {
                used[v] = true;
            }
        }
    }
    let satisfied = per_edge_satisfied.iter().filter(|&&s| s).count();
    EvaluationReport {
        mistakes: h.num_edges() - satisfied,
        satisfied,
        linear_penalty,
        budget_used: assignment.budget_used(kind),
        unused_nodes: used.iter().filter(|&&u| !u).count(),
        per_edge_satisfied,
    }
}

/// Unused nodes recomputed from a per-edge satisfaction vector.
pub fn unused_nodes(h: &EdgeColoredHypergraph, per_edge_satisfied: &[bool]) -> usize {
    let mut used = vec![false; h.num_nodes()];
    for (e, _) in h.edges().iter().zip(per_edge_satisfied).filter(|(_, &s)| s) {
        for &v in &e.members {
            used[v] = true;
        }
    }
    used.iter().filter(|&&u| !u).count()
}
