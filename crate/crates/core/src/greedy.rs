//! Greedy colorings that exactly minimize the number of node-edge errors
//! for each variant. Because an edge with a mistake has between 1 and `r`
//! node-edge errors, these are `r`-approximations for the mistake objective.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::io::Write;

use crate::error::Result;
use crate::model::{ColorAssignment, EdgeColoredHypergraph, Variant, VariantKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GreedyAction {
    AddColor(usize),
    Delete,
}

impl fmt::Display for GreedyAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GreedyAction::AddColor(c) => write!(f, "add {}", c + 1),
            GreedyAction::Delete => f.write_str("delete"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyStep {
    pub step: usize,
    pub node: usize,
    pub action: GreedyAction,
    pub errors_fixed: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GreedyTrace {
    pub steps: Vec<GreedyStep>,
    /// Budget left unspent because no remaining step could fix an error.
    pub budget_surplus: usize,
}

impl GreedyTrace {
    fn push(&mut self, node: usize, action: GreedyAction, errors_fixed: usize) {
        let step = self.steps.len() + 1;
        self.steps.push(GreedyStep {
            step,
            node,
            action,
            errors_fixed,
        });
    }

    pub fn total_fixed(&self) -> usize {
        self.steps.iter().map(|s| s.errors_fixed).sum()
    }

    /// Writes `step,node,action,gain` rows with one-based ids.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["step", "node", "action", "gain"])?;
        for s in &self.steps {
            w.write_record([
                s.step.to_string(),
                (s.node + 1).to_string(),
                s.action.to_string(),
                s.errors_fixed.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct GreedyOutcome {
    pub assignment: ColorAssignment,
    pub trace: GreedyTrace,
}

pub fn greedy(h: &EdgeColoredHypergraph, variant: Variant) -> GreedyOutcome {
    match variant.kind {
        VariantKind::Local => greedy_local(h, variant.budget),
        VariantKind::Global => greedy_global(h, variant.budget),
        VariantKind::Robust => greedy_robust(h, variant.budget),
    }
}

/// Gives every node its `b` favorite colors. The trace starts from the
/// empty coloring.
pub fn greedy_local(h: &EdgeColoredHypergraph, b: usize) -> GreedyOutcome {
    let mut assignment = ColorAssignment::empty(h.num_nodes());
    let mut trace = GreedyTrace::default();
    for v in 0..h.num_nodes() {
        for &c in h.preference(v).iter().take(b) {
            assignment.insert(v, c);
            trace.push(v, GreedyAction::AddColor(c), h.color_count(v, c));
        }
    }
    GreedyOutcome { assignment, trace }
}

fn favorites(h: &EdgeColoredHypergraph) -> ColorAssignment {
    ColorAssignment::from_sets((0..h.num_nodes()).map(|v| vec![h.favorite(v)]).collect())
}

/// Starts from every node's favorite color and spends the shared budget
/// one color at a time on the node whose next favorite fixes the most
/// errors. Ties go to the smaller node id.
pub fn greedy_global(h: &EdgeColoredHypergraph, b: usize) -> GreedyOutcome {
    let mut assignment = favorites(h);
    let mut trace = GreedyTrace::default();

    let next_gain = |v: usize, taken: usize| h.preference(v).get(taken).map(|&c| h.color_count(v, c));
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> = (0..h.num_nodes())
        .filter_map(|v| next_gain(v, 1).map(|g| (g, Reverse(v))))
        .collect();
    let mut taken = vec![1usize; h.num_nodes()];

    let mut remaining = b;
    while remaining > 0 {
        let Some((gain, Reverse(u))) = heap.pop() else { break };
        if gain == 0 {
            break;
        }
        let c = h.preference(u)[taken[u]];
        assignment.insert(u, c);
        trace.push(u, GreedyAction::AddColor(c), gain);
        taken[u] += 1;
        remaining -= 1;
        if let Some(g) = next_gain(u, taken[u]) {
            heap.push((g, Reverse(u)));
        }
    }
    trace.budget_surplus = remaining;
    GreedyOutcome { assignment, trace }
}

/// Starts from every node's favorite color and deletes the `b` nodes with
/// the largest non-dominant degree. Gains do not interact, so they are
/// computed once.
pub fn greedy_robust(h: &EdgeColoredHypergraph, b: usize) -> GreedyOutcome {
    let mut assignment = favorites(h);
    let mut trace = GreedyTrace::default();

    let mut order: Vec<(usize, usize)> = (0..h.num_nodes())
        .map(|v| (h.non_dominant_degree(v), v))
        .filter(|&(g, _)| g > 0)
        .collect();
    order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

    for &(gain, v) in order.iter().take(b) {
        assignment.delete(v);
        assignment.set_colors(v, Vec::new());
        trace.push(v, GreedyAction::Delete, gain);
    }
    trace.budget_surplus = b.saturating_sub(order.len());
    GreedyOutcome { assignment, trace }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::evaluate;
    use crate::model::tests::instance_a;

    #[test]
    fn local_instance_a() {
        let h = instance_a();
        let out = greedy_local(&h, 1);
        assert_eq!(
            out.assignment,
            ColorAssignment::from_sets(vec![vec![0], vec![0], vec![0]])
        );
        assert_eq!(evaluate(&h, &out.assignment, VariantKind::Local).mistakes, 1);

        let out = greedy_local(&h, 2);
        assert_eq!(
            out.assignment,
            ColorAssignment::from_sets(vec![vec![0], vec![0, 1], vec![0, 1]])
        );
        assert_eq!(evaluate(&h, &out.assignment, VariantKind::Local).mistakes, 0);
        // node 1 has a single incident color, so no zero-count color is added
        assert_eq!(out.assignment.colors(0), &[0]);
    }

    #[test]
    fn global_instance_a() {
        let h = instance_a();
        let out = greedy_global(&h, 2);
        let steps: Vec<_> = out
            .trace
            .steps
            .iter()
            .map(|s| (s.node, s.action, s.errors_fixed))
            .collect();
        assert_eq!(
            steps,
            vec![(1, GreedyAction::AddColor(1), 1), (2, GreedyAction::AddColor(1), 1)]
        );
        assert_eq!(evaluate(&h, &out.assignment, VariantKind::Global).mistakes, 0);
        assert_eq!(out.trace.budget_surplus, 0);

        let zero = greedy_global(&h, 0);
        assert_eq!(
            zero.assignment,
            ColorAssignment::from_sets(vec![vec![0], vec![0], vec![0]])
        );
    }

    #[test]
    fn global_monochromatic_spends_nothing() {
        let h = EdgeColoredHypergraph::new(3, 2, vec![(0, vec![0, 1]), (1, vec![2])]).unwrap();
        let out = greedy_global(&h, 5);
        assert!(out.trace.steps.is_empty());
        assert_eq!(out.trace.budget_surplus, 5);
        assert_eq!(out.assignment.extra_colors(), 0);
    }

    #[test]
    fn robust_instance_a() {
        let h = instance_a();
        let out = greedy_robust(&h, 1);
        assert_eq!(out.assignment.deleted_nodes(), vec![1]);
        assert_eq!(evaluate(&h, &out.assignment, VariantKind::Robust).mistakes, 1);
        assert_eq!(greedy_robust(&h, 0).assignment, greedy_global(&h, 0).assignment);
    }

    #[test]
    fn robust_star_deletes_center() {
        let q = 5;
        let edges = (0..q).map(|i| (i, vec![0, i + 1])).collect();
        let h = EdgeColoredHypergraph::new(q + 1, q, edges).unwrap();
        let out = greedy_robust(&h, 1);
        assert_eq!(out.assignment.deleted_nodes(), vec![0]);
        assert_eq!(out.trace.steps[0].errors_fixed, q - 1);
        assert_eq!(evaluate(&h, &out.assignment, VariantKind::Robust).mistakes, 0);
    }

    #[test]
    fn trace_csv() {
        let out = greedy_global(&instance_a(), 2);
        let mut buf = Vec::new();
        out.trace.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "step,node,action,gain\n1,2,add 2,1\n2,3,add 2,1\n"
        );
    }
}
