//! Random instance generators.

use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::{Edge, EdgeColoredHypergraph};

/// Bounds for small random instances.
#[derive(Debug, Clone, Copy)]
pub struct SmallInstanceBounds {
    pub max_nodes: usize,
    pub max_edges: usize,
    pub max_colors: usize,
    pub max_rank: usize,
}

impl Default for SmallInstanceBounds {
    fn default() -> Self {
        Self {
            max_nodes: 8,
            max_edges: 10,
            max_colors: 4,
            max_rank: 4,
        }
    }
}

pub fn random_instance<R: Rng>(rng: &mut R, bounds: SmallInstanceBounds) -> EdgeColoredHypergraph {
    let n = rng.gen_range(1..=bounds.max_nodes);
    let m = rng.gen_range(1..=bounds.max_edges);
    let k = rng.gen_range(1..=bounds.max_colors);
    let edges = (0..m)
        .map(|_| {
            let size = rng.gen_range(1..=bounds.max_rank.min(n));
            let mut members = sample(rng, n, size).into_vec();
            members.sort_unstable();
            Edge {
                color: rng.gen_range(0..k),
                members,
            }
        })
        .collect();
    EdgeColoredHypergraph::from_checked_edges(n, k, edges)
}

/// `count` small instances from a fixed seed.
pub fn random_suite(seed: u64, count: usize, bounds: SmallInstanceBounds) -> Vec<EdgeColoredHypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_instance(&mut rng, bounds)).collect()
}

/// Clustered hypergraph with overlapping ground-truth clusters.
#[derive(Debug, Clone, Copy)]
pub struct PlantedOverlap {
    pub nodes: usize,
    pub colors: usize,
    pub edges: usize,
    pub max_edge_size: usize,
    /// Fraction of nodes that belong to a second cluster.
    pub overlap: f64,
    /// Probability that an edge member is drawn from outside the cluster.
    pub noise: f64,
    pub seed: u64,
}

impl Default for PlantedOverlap {
    fn default() -> Self {
        Self {
            nodes: 200,
            colors: 6,
            edges: 400,
            max_edge_size: 5,
            overlap: 0.2,
            noise: 0.05,
            seed: 7,
        }
    }
}

impl PlantedOverlap {
    pub fn generate(&self) -> EdgeColoredHypergraph {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let k = self.colors.max(1);
        let mut clusters: Vec<Vec<usize>> = vec![Vec::new(); k];
        for v in 0..self.nodes {
            let primary = rng.gen_range(0..k);
            clusters[primary].push(v);
            if k > 1 && rng.gen_bool(self.overlap) {
                let secondary = (primary + rng.gen_range(1..k)) % k;
                clusters[secondary].push(v);
            }
        }

        let mut edges = Vec::with_capacity(self.edges);
        while edges.len() < self.edges {
            let color = rng.gen_range(0..k);
            let pool = &clusters[color];
            if pool.is_empty() {
                continue;
            }
            let size = rng.gen_range(2..=self.max_edge_size.max(2)).min(pool.len().max(1));
            let mut members: Vec<usize> = sample(&mut rng, pool.len(), size)
                .into_iter()
                .map(|i| pool[i])
                .collect();
            for m in &mut members {
                if rng.gen_bool(self.noise) {
                    *m = rng.gen_range(0..self.nodes);
                }
            }
            members.sort_unstable();
            members.dedup();
            edges.push(Edge { color, members });
        }
        EdgeColoredHypergraph::from_checked_edges(self.nodes, k, edges)
    }
}
