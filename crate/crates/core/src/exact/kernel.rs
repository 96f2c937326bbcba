//! Kernelization by removing easy nodes.
//!
//! A node is easy when it can be colored without conflict: at most `b`
//! incident colors for the local variant, a single one otherwise. Removing
//! easy nodes shrinks edges, possibly down to a single node. Every node
//! left over needs an edge deletion (or, outside the local variant, one
//! unit of budget), and one deleted edge helps at most `r` nodes, so more
//! than `r t` (`r t + b`) remaining nodes means the answer is no.

use super::{DecisionCertificate, DecisionInstance};
use crate::model::{ColorAssignment, Edge, EdgeColoredHypergraph, VariantKind};

#[derive(Debug, Clone)]
pub struct Kernel {
    pub instance: DecisionInstance,
    /// Original id of each kernel node.
    pub node_map: Vec<usize>,
    /// Original id of each kernel edge.
    pub edge_map: Vec<usize>,
    /// Original ids of removed easy nodes, in removal order.
    pub removed: Vec<usize>,
    /// The kernel is larger than the size bound, so the answer is no.
    pub exceeds_bound: bool,
}

fn is_easy(h: &EdgeColoredHypergraph, kind: VariantKind, budget: usize, v: usize) -> bool {
    match kind {
        VariantKind::Local => h.chromatic_degree(v) <= budget,
        VariantKind::Global | VariantKind::Robust => h.chromatic_degree(v) <= 1,
    }
}

pub fn kernelize(inst: &DecisionInstance) -> Kernel {
    let variant = inst.variant;
    let original = &inst.hypergraph;
    let rank = original.rank();

    let mut h = original.clone();
    let mut node_map: Vec<usize> = (0..h.num_nodes()).collect();
    let mut edge_map: Vec<usize> = (0..h.num_edges()).collect();
    let mut removed = Vec::new();

    loop {
        let easy: Vec<bool> = (0..h.num_nodes())
            .map(|v| is_easy(&h, variant.kind, variant.budget, v))
            .collect();
        if !easy.iter().any(|&e| e) {
            break;
        }
        let mut new_id = vec![usize::MAX; h.num_nodes()];
        let mut next_map = Vec::new();
        for v in 0..h.num_nodes() {
            if easy[v] {
                removed.push(node_map[v]);
            } else {
                new_id[v] = next_map.len();
                next_map.push(node_map[v]);
            }
        }
        let mut edges = Vec::new();
        let mut next_edges = Vec::new();
        for (i, e) in h.edges().iter().enumerate() {
            let members: Vec<usize> = e.members.iter().filter(|&&v| !easy[v]).map(|&v| new_id[v]).collect();
            if !members.is_empty() {
                edges.push(Edge {
                    color: e.color,
                    members,
                });
                next_edges.push(edge_map[i]);
            }
        }
        h = EdgeColoredHypergraph::from_checked_edges(next_map.len(), h.num_colors(), edges);
        node_map = next_map;
        edge_map = next_edges;
    }

    let bound = match variant.kind {
        VariantKind::Local => rank * inst.t,
        VariantKind::Global | VariantKind::Robust => rank * inst.t + variant.budget,
    };
    Kernel {
        exceeds_bound: h.num_nodes() > bound,
        instance: DecisionInstance::new(h, variant, inst.t),
        node_map,
        edge_map,
        removed,
    }
}

impl Kernel {
    /// Turns a certificate for the kernel into one for the original instance.
    pub fn lift(&self, original: &EdgeColoredHypergraph, cert: &DecisionCertificate) -> DecisionCertificate {
        let mut deleted_edges: Vec<usize> = cert.deleted_edges.iter().map(|&e| self.edge_map[e]).collect();
        deleted_edges.sort_unstable();

        let mut a = ColorAssignment::empty(original.num_nodes());
        for (kv, &v) in self.node_map.iter().enumerate() {
            if cert.assignment.is_deleted(kv) {
                a.delete(v);
            }
            a.set_colors(v, cert.assignment.colors(kv).to_vec());
        }
        for &v in &self.removed {
            let mut colors: Vec<usize> = original.color_counts(v).iter().map(|&(c, _)| c).collect();
            if colors.is_empty() {
                colors.push(original.favorite(v));
            }
            a.set_colors(v, colors);
        }
        DecisionCertificate {
            deleted_edges,
            assignment: a,
        }
    }
}
