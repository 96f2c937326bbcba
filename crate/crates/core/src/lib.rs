//! Budgeted overlapping and robust edge-colored clustering of hypergraphs.
//!
//! Every edge of the hypergraph carries a color and every node is given a
//! set of colors. An edge is satisfied when all of its members carry its
//! color, and the goal is to minimize unsatisfied edges (mistakes) under
//! one of three budgets:
//!
//! * **local**: each node takes at most `b` colors;
//! * **global**: each node takes one free color, plus `b` extra colors
//!   shared by all nodes;
//! * **robust**: each node takes one color, but up to `b` nodes may be
//!   deleted, which satisfies their side of every edge.
//!
//! The crate provides greedy `r`-approximations ([`greedy`]), LP relaxations
//! ([`lp`]) with bicriteria rounding ([`rounding`]), exact search-tree and
//! kernelization algorithms ([`exact`]) and a sweep harness ([`metrics`]).

pub mod error;
pub mod exact;
pub mod greedy;
pub mod io;
pub mod lp;
pub mod metrics;
pub mod model;
pub mod rounding;
pub mod stats;
pub mod synthetic;

pub use error::{EccError, Result};
pub use model::{evaluate, ColorAssignment, EdgeColoredHypergraph, EvaluationReport, Variant, VariantKind};
