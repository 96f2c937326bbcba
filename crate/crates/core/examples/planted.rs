//! Prints a planted-overlap hypergraph: `cargo run --example planted -- [nodes] [seed]`.

use ecc::io::format_hypergraph;
use ecc::synthetic::PlantedOverlap;

fn main() {
    let mut args = std::env::args().skip(1);
    let mut gen = PlantedOverlap::default();
    if let Some(n) = args.next() {
        gen.nodes = n.parse().expect("nodes must be an integer");
        gen.edges = 2 * gen.nodes;
    }
    if let Some(s) = args.next() {
        gen.seed = s.parse().expect("seed must be an integer");
    }
    print!(
        "# planted overlap: {} nodes, {} colors, seed {}\n{}",
        gen.nodes,
        gen.colors,
        gen.seed,
        format_hypergraph(&gen.generate())
    );
}
