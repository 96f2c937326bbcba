//! Bounded search trees over conflicts.
//!
//! A conflict is a node together with incident edges that cannot all be
//! kept without spending budget. Every branch deletes an edge (`t` drops)
//! or spends budget (`b` drops), so the tree depth is at most `t` for the
//! local variant and `t + b` otherwise.
//!
//! For the global variant every color assigned while branching is paid
//! from the budget. Once no conflicts remain each node is missing at most
//! one color, which it takes as its free color.

use super::{kernelize, DecisionCertificate, DecisionInstance};
use crate::error::{EccError, Result};
use crate::model::{ColorAssignment, EdgeColoredHypergraph, Variant, VariantKind};

#[derive(Debug, Clone, Copy)]
pub struct BranchingConfig {
    /// Largest admissible search depth (`t` for local, `t + b` otherwise).
    pub max_depth: usize,
    /// Abort after visiting this many search-tree nodes.
    pub max_search_nodes: u64,
}

impl Default for BranchingConfig {
    fn default() -> Self {
        Self {
            max_depth: 30,
            max_search_nodes: 100_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub search_nodes: u64,
    pub max_depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub certificate: Option<DecisionCertificate>,
    pub stats: SearchStats,
    /// Decided by the kernel size bound without searching.
    pub by_kernel_bound: bool,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        self.certificate.is_some()
    }
}

/// A node and witness edges whose colors it cannot all take for free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conflict {
    pub node: usize,
    /// `(edge, color)` pairs with pairwise distinct colors, ascending edge ids.
    pub witness: Vec<(usize, usize)>,
}

struct State<'a> {
    h: &'a EdgeColoredHypergraph,
    kind: VariantKind,
    budget: usize,
    alive: Vec<bool>,
    deleted_edges: Vec<usize>,
    // Colors paid for during the search (global variant).
    paid: Vec<Vec<usize>>,
    deleted_nodes: Vec<bool>,
    t_left: usize,
    b_left: usize,
    stats: SearchStats,
    limit: u64,
}

impl State<'_> {
    /// Distinct colors of alive edges at `v` not yet paid for, each with its
    /// smallest edge id, in order of first appearance.
    fn missing(&self, v: usize, want: usize) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &e in self.h.incident(v) {
            if !self.alive[e] {
                continue;
            }
            let c = self.h.edge(e).color;
            if self.paid[v].contains(&c) || out.iter().any(|&(_, oc)| oc == c) {
                continue;
            }
            out.push((e, c));
            if out.len() == want {
                break;
            }
        }
        out
    }

    fn find_conflict(&self) -> Option<Conflict> {
        let want = match self.kind {
            VariantKind::Local => self.budget + 1,
            VariantKind::Global | VariantKind::Robust => 2,
        };
        (0..self.h.num_nodes())
            .filter(|&v| !self.deleted_nodes[v])
            .find_map(|v| {
                let witness = self.missing(v, want);
                (witness.len() == want).then_some(Conflict { node: v, witness })
            })
    }

    fn leaf(&self) -> DecisionCertificate {
        let mut a = ColorAssignment::empty(self.h.num_nodes());
        for v in 0..self.h.num_nodes() {
            if self.deleted_nodes[v] {
                a.delete(v);
                continue;
            }
            let mut colors = self.paid[v].clone();
            colors.extend(self.missing(v, usize::MAX).into_iter().map(|(_, c)| c));
            if colors.is_empty() {
                colors.push(self.h.favorite(v));
            }
            a.set_colors(v, colors);
        }
        let mut deleted_edges = self.deleted_edges.clone();
        deleted_edges.sort_unstable();
        DecisionCertificate {
            deleted_edges,
            assignment: a,
        }
    }

    fn with_edge_deleted(&mut self, e: usize, depth: usize) -> Result<Option<DecisionCertificate>> {
        if self.t_left == 0 {
            return Ok(None);
        }
        self.alive[e] = false;
        self.deleted_edges.push(e);
        self.t_left -= 1;
        let found = self.search(depth + 1);
        self.t_left += 1;
        self.deleted_edges.pop();
        self.alive[e] = true;
        found
    }

    fn with_color_paid(&mut self, v: usize, c: usize, depth: usize) -> Result<Option<DecisionCertificate>> {
        if self.b_left == 0 {
            return Ok(None);
        }
        self.paid[v].push(c);
        self.b_left -= 1;
        let found = self.search(depth + 1);
        self.b_left += 1;
        self.paid[v].pop();
        found
    }

    fn with_node_deleted(&mut self, v: usize, depth: usize) -> Result<Option<DecisionCertificate>> {
        if self.b_left == 0 {
            return Ok(None);
        }
        self.deleted_nodes[v] = true;
        self.b_left -= 1;
        let found = self.search(depth + 1);
        self.b_left += 1;
        self.deleted_nodes[v] = false;
        found
    }

    fn search(&mut self, depth: usize) -> Result<Option<DecisionCertificate>> {
        self.stats.search_nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        if self.stats.search_nodes > self.limit {
            return Err(EccError::GuardExceeded(format!(
                "search exceeded {} tree nodes",
                self.limit
            )));
        }
        let Some(conflict) = self.find_conflict() else {
            return Ok(Some(self.leaf()));
        };
        let v = conflict.node;
        match self.kind {
            VariantKind::Global => {
                for &(_, c) in &conflict.witness {
                    if let Some(cert) = self.with_color_paid(v, c, depth)? {
                        return Ok(Some(cert));
                    }
                }
            }
            VariantKind::Robust => {
                if let Some(cert) = self.with_node_deleted(v, depth)? {
                    return Ok(Some(cert));
                }
            }
            VariantKind::Local => {}
        }
        for &(e, _) in &conflict.witness {
            if let Some(cert) = self.with_edge_deleted(e, depth)? {
                return Ok(Some(cert));
            }
        }
        Ok(None)
    }
}

fn search_depth(variant: Variant, t: usize) -> usize {
    match variant.kind {
        VariantKind::Local => t,
        VariantKind::Global | VariantKind::Robust => t + variant.budget,
    }
}

fn check_depth(variant: Variant, t: usize, config: &BranchingConfig) -> Result<()> {
    let depth = search_depth(variant, t);
    if depth > config.max_depth {
        return Err(EccError::GuardExceeded(format!(
            "search depth {depth} exceeds the limit {}",
            config.max_depth
        )));
    }
    Ok(())
}

/// Decides `inst` by branching on conflicts.
pub fn decide_branching(inst: &DecisionInstance, config: &BranchingConfig) -> Result<Decision> {
    check_depth(inst.variant, inst.t, config)?;
    let h = &inst.hypergraph;
    let mut state = State {
        h,
        kind: inst.variant.kind,
        budget: inst.variant.budget,
        alive: vec![true; h.num_edges()],
        deleted_edges: Vec::new(),
        paid: vec![Vec::new(); h.num_nodes()],
        deleted_nodes: vec![false; h.num_nodes()],
        t_left: inst.t,
        b_left: if inst.variant.kind == VariantKind::Local {
            0
        } else {
            inst.variant.budget
        },
        stats: SearchStats::default(),
        limit: config.max_search_nodes,
    };
    let certificate = state.search(0)?;
    Ok(Decision {
        certificate,
        stats: state.stats,
        by_kernel_bound: false,
    })
}

/// Decides `inst`, optionally reducing it to a kernel first. Certificates
/// always refer to the original instance.
pub fn decide(inst: &DecisionInstance, use_kernel: bool, config: &BranchingConfig) -> Result<Decision> {
    if !use_kernel {
        return decide_branching(inst, config);
    }
    let kernel = kernelize(inst);
    if kernel.exceeds_bound {
        return Ok(Decision {
            certificate: None,
            stats: SearchStats::default(),
            by_kernel_bound: true,
        });
    }
    let decision = decide_branching(&kernel.instance, config)?;
    Ok(Decision {
        certificate: decision.certificate.map(|c| kernel.lift(&inst.hypergraph, &c)),
        stats: decision.stats,
        by_kernel_bound: false,
    })
}

/// Smallest `t` for which the decision version answers yes, with its certificate.
pub fn optimize_via_decision(
    h: &EdgeColoredHypergraph,
    variant: Variant,
    config: &BranchingConfig,
) -> Result<(usize, DecisionCertificate)> {
    let mut inst = DecisionInstance::new(h.clone(), variant, 0);
    for t in 0..=h.num_edges() {
        inst.t = t;
        if let Some(cert) = decide(&inst, true, config)?.certificate {
            return Ok((t, cert));
        }
    }
    unreachable!("deleting every edge always succeeds")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::evaluate;
    use crate::model::tests::{instance_a, instance_b};

    fn run(h: &EdgeColoredHypergraph, variant: Variant, t: usize) -> Decision {
        let d = decide_branching(
            &DecisionInstance::new(h.clone(), variant, t),
            &BranchingConfig::default(),
        )
        .unwrap();
        if let Some(cert) = &d.certificate {
            assert_eq!(cert.violation(h, variant, t), None);
        }
        assert!(d.stats.max_depth <= search_depth(variant, t));
        d
    }

    #[test]
    fn instance_a_local() {
        let h = instance_a();
        let v = Variant::local(1).unwrap();
        assert!(!run(&h, v, 0).is_yes());
        let yes = run(&h, v, 1);
        let cert = yes.certificate.unwrap();
        assert_eq!(cert.deleted_edges.len(), 1);
        assert!(cert.deleted_edges[0] == 1 || cert.deleted_edges[0] == 2);
    }

    #[test]
    fn instance_b_robust() {
        let h = instance_b();
        assert!(!run(&h, Variant::robust(1), 0).is_yes());
        assert!(run(&h, Variant::robust(1), 1).is_yes());
        assert!(run(&h, Variant::robust(2), 0).is_yes());
    }

    #[test]
    fn global_pays_for_every_branch_color() {
        let h = instance_a();
        // nodes 2 and 3 each need a second color
        assert!(!run(&h, Variant::global(1), 0).is_yes());
        let d = run(&h, Variant::global(2), 0);
        let cert = d.certificate.unwrap();
        assert_eq!(cert.assignment.extra_colors(), 2);
        assert_eq!(evaluate(&h, &cert.assignment, VariantKind::Global).mistakes, 0);
        assert!(run(&h, Variant::global(1), 1).is_yes());
    }

    #[test]
    fn optimize_examples() {
        let cfg = BranchingConfig::default();
        let a = instance_a();
        assert_eq!(
            optimize_via_decision(&a, Variant::local(1).unwrap(), &cfg).unwrap().0,
            1
        );
        assert_eq!(
            optimize_via_decision(&a, Variant::local(2).unwrap(), &cfg).unwrap().0,
            0
        );
        let (t, cert) = optimize_via_decision(&instance_b(), Variant::robust(1), &cfg).unwrap();
        assert_eq!(t, 1);
        assert_eq!(
            evaluate(&instance_b(), &cert.assignment, VariantKind::Robust).mistakes,
            1
        );
    }

    #[test]
    fn depth_guard() {
        let cfg = BranchingConfig {
            max_depth: 3,
            ..Default::default()
        };
        let inst = DecisionInstance::new(instance_a(), Variant::global(2), 2);
        assert!(matches!(decide_branching(&inst, &cfg), Err(EccError::GuardExceeded(_))));
    }

    #[test]
    fn conflict_witness_is_lexicographic() {
        let h = instance_a();
        let state = State {
            h: &h,
            kind: VariantKind::Local,
            budget: 1,
            alive: vec![true; 3],
            deleted_edges: vec![],
            paid: vec![vec![]; 3],
            deleted_nodes: vec![false; 3],
            t_left: 0,
            b_left: 0,
            stats: SearchStats::default(),
            limit: 10,
        };
        assert_eq!(
            state.find_conflict(),
            Some(Conflict {
                node: 1,
                witness: vec![(0, 0), (1, 1)]
            })
        );
    }
}
