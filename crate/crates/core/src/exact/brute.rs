//! Exhaustive search over colorings, used as the reference oracle.
//!
//! Colors are restricted to each node's incident colors. Since adding a
//! color never adds a mistake, local nodes take exactly `min(b, d_chi)`
//! colors; a robust node with a single incident color is never deleted.

use itertools::Itertools;

use crate::error::{EccError, Result};
use crate::model::{ColorAssignment, EdgeColoredHypergraph, Variant, VariantKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// Edges with at least one unsatisfied member.
    Mistakes,
    /// Node-edge errors.
    Linear,
}

#[derive(Debug, Clone, Copy)]
pub struct BruteForce {
    /// Refuse instances whose search space exceeds this many colorings.
    pub limit: u128,
}

impl Default for BruteForce {
    fn default() -> Self {
        Self { limit: 10_000_000 }
    }
}

#[derive(Debug, Clone)]
struct Choice {
    colors: Vec<usize>,
    deleted: bool,
    cost: usize,
}

fn choices(h: &EdgeColoredHypergraph, variant: Variant) -> Vec<Vec<Choice>> {
    (0..h.num_nodes())
        .map(|v| {
            let incident: Vec<usize> = h.color_counts(v).iter().map(|&(c, _)| c).collect();
            let pick = |colors: Vec<usize>, cost| Choice {
                colors,
                deleted: false,
                cost,
            };
            if incident.is_empty() {
                let colors = if variant.kind == VariantKind::Local {
                    vec![]
                } else {
                    vec![0]
                };
                return vec![pick(colors, 0)];
            }
            match variant.kind {
                VariantKind::Local => {
                    let size = variant.budget.min(incident.len());
                    incident
                        .iter()
                        .copied()
                        .combinations(size)
                        .map(|cs| pick(cs, 0))
                        .collect()
                }
                VariantKind::Global => (1..=incident.len())
                    .flat_map(|s| incident.iter().copied().combinations(s).map(move |cs| pick(cs, s - 1)))
                    .collect(),
                VariantKind::Robust => {
                    let mut out: Vec<Choice> = incident.iter().map(|&c| pick(vec![c], 0)).collect();
                    if incident.len() > 1 {
                        out.push(Choice {
                            colors: vec![],
                            deleted: true,
                            cost: 1,
                        });
                    }
                    out
                }
            }
        })
        .collect()
}

/// Number of colorings within budget, by dynamic programming over nodes.
fn count_space(options: &[Vec<Choice>], budget: usize) -> u128 {
    let mut ways = vec![0u128; budget + 1];
    ways[0] = 1;
    for node in options {
        let mut next = vec![0u128; budget + 1];
        for (used, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for ch in node {
                if used + ch.cost <= budget {
                    next[used + ch.cost] = next[used + ch.cost].saturating_add(w);
                }
            }
        }
        ways = next;
    }
    ways.iter().fold(0u128, |acc, &w| acc.saturating_add(w))
}

struct Search<'a> {
    h: &'a EdgeColoredHypergraph,
    options: Vec<Vec<Choice>>,
    objective: Objective,
    budget: usize,
    failing: Vec<usize>,
    broken: usize,
    linear: usize,
    current: Vec<usize>,
    best: usize,
    best_choice: Vec<usize>,
}

impl Search<'_> {
    fn cost(&self) -> usize {
        match self.objective {
            Objective::Mistakes => self.broken,
            Objective::Linear => self.linear,
        }
    }

    fn apply(&mut self, v: usize, ch: usize, sign: bool) {
        let choice = &self.options[v][ch];
        if choice.deleted {
            return;
        }
        for &e in self.h.incident(v) {
            let color = self.h.edge(e).color;
            if choice.colors.binary_search(&color).is_ok() {
                continue;
            }
            if sign {
                self.failing[e] += 1;
                self.linear += 1;
                if self.failing[e] == 1 {
                    self.broken += 1;
                }
            } else {
                self.failing[e] -= 1;
                self.linear -= 1;
                if self.failing[e] == 0 {
                    self.broken -= 1;
                }
            }
        }
    }

    fn run(&mut self, v: usize, budget_left: usize) {
        if self.cost() >= self.best {
            return;
        }
        if v == self.options.len() {
            self.best = self.cost();
            self.best_choice = self.current.clone();
            return;
        }
        for ch in 0..self.options[v].len() {
            let cost = self.options[v][ch].cost;
            if cost > budget_left {
                continue;
            }
            self.apply(v, ch, true);
            self.current.push(ch);
            self.run(v + 1, budget_left - cost);
            self.current.pop();
            self.apply(v, ch, false);
        }
    }
}

impl BruteForce {
    pub fn with_limit(limit: u128) -> Self {
        Self { limit }
    }

    /// Size of the search space for `variant` on `h`.
    pub fn search_space(h: &EdgeColoredHypergraph, variant: Variant) -> u128 {
        let budget = if variant.kind == VariantKind::Local {
            0
        } else {
            variant.budget.min(h.num_nodes() * h.num_colors())
        };
        count_space(&choices(h, variant), budget)
    }

    /// Minimum of `objective` over all feasible colorings, with a witness.
    pub fn optimum(
        &self,
        h: &EdgeColoredHypergraph,
        variant: Variant,
        objective: Objective,
    ) -> Result<(usize, ColorAssignment)> {
        let space = Self::search_space(h, variant);
        if space > self.limit {
            return Err(EccError::GuardExceeded(format!(
                "brute force would visit {space} colorings (limit {})",
                self.limit
            )));
        }
        let budget = if variant.kind == VariantKind::Local {
            0
        } else {
            variant.budget.min(h.num_nodes() * h.num_colors())
        };
        let mut search = Search {
            h,
            options: choices(h, variant),
            objective,
            budget,
            failing: vec![0; h.num_edges()],
            broken: 0,
            linear: 0,
            current: Vec::with_capacity(h.num_nodes()),
            best: usize::MAX,
            best_choice: Vec::new(),
        };
        search.run(0, search.budget);

        let mut a = ColorAssignment::empty(h.num_nodes());
        for (v, &ch) in search.best_choice.iter().enumerate() {
            let choice = &search.options[v][ch];
            if choice.deleted {
                a.delete(v);
            } else {
                a.set_colors(v, choice.colors.clone());
            }
        }
        Ok((search.best, a))
    }
}

/// Minimum number of mistakes, refusing instances with more than 10^7 colorings.
pub fn brute_force_optimum(h: &EdgeColoredHypergraph, variant: Variant) -> Result<(usize, ColorAssignment)> {
    BruteForce::default().optimum(h, variant, Objective::Mistakes)
}

/// Whether some feasible coloring makes at most `t` mistakes.
pub fn brute_force_decide(h: &EdgeColoredHypergraph, variant: Variant, t: usize) -> Result<bool> {
    Ok(brute_force_optimum(h, variant)?.0 <= t)
}
