//! Per-node structure statistics and dataset summaries.

use serde::Serialize;

use crate::model::EdgeColoredHypergraph;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeStats {
    pub node: usize,
    pub degree: usize,
    pub chromatic_degree: usize,
    pub non_dominant_degree: usize,
    /// `non_dominant_degree / degree`, 0 for isolated nodes.
    pub non_dominant_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureStats {
    pub num_nodes: usize,
    pub num_edges: usize,
    pub num_colors: usize,
    pub rank: usize,
    pub mean_edge_size: f64,
    pub max_chromatic_degree: usize,
    pub mean_chromatic_degree: f64,
    pub max_non_dominant_degree: usize,
    pub mean_non_dominant_degree: f64,
    pub median_non_dominant_degree: f64,
    /// Fraction of nodes touching more than one color.
    pub frac_multicolor: f64,
    pub frac_non_dominant_5pct: f64,
    pub frac_non_dominant_10pct: f64,
    #[serde(skip)]
    pub nodes: Vec<NodeStats>,
}

fn mean(values: impl ExactSizeIterator<Item = usize>) -> f64 {
    let n = values.len();
    if n == 0 {
        return 0.0;
    }
    values.sum::<usize>() as f64 / n as f64
}

fn median(mut values: Vec<usize>) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_unstable();
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid] as f64
    } else {
        (values[mid - 1] + values[mid]) as f64 / 2.0
    }
}

pub fn structure_stats(h: &EdgeColoredHypergraph) -> StructureStats {
    let nodes: Vec<NodeStats> = (0..h.num_nodes())
        .map(|v| {
            let degree = h.degree(v);
            let nd = h.non_dominant_degree(v);
            NodeStats {
                node: v,
                degree,
                chromatic_degree: h.chromatic_degree(v),
                non_dominant_degree: nd,
                non_dominant_fraction: if degree == 0 { 0.0 } else { nd as f64 / degree as f64 },
            }
        })
        .collect();

    let n = nodes.len().max(1) as f64;
    let frac = |pred: &dyn Fn(&NodeStats) -> bool| nodes.iter().filter(|s| pred(s)).count() as f64 / n;

    StructureStats {
        num_nodes: h.num_nodes(),
        num_edges: h.num_edges(),
        num_colors: h.num_colors(),
        rank: h.rank(),
        mean_edge_size: mean(h.edges().iter().map(|e| e.len())),
        max_chromatic_degree: h.max_chromatic_degree(),
        mean_chromatic_degree: mean(nodes.iter().map(|s| s.chromatic_degree)),
        max_non_dominant_degree: nodes.iter().map(|s| s.non_dominant_degree).max().unwrap_or(0),
        mean_non_dominant_degree: mean(nodes.iter().map(|s| s.non_dominant_degree)),
        median_non_dominant_degree: median(nodes.iter().map(|s| s.non_dominant_degree).collect()),
        frac_multicolor: frac(&|s| s.chromatic_degree > 1),
        frac_non_dominant_5pct: frac(&|s| s.non_dominant_fraction >= 0.05),
        frac_non_dominant_10pct: frac(&|s| s.non_dominant_fraction >= 0.10),
        nodes,
    }
}
