//! Minimum bisection width (the rna number) of graphs.
//!
//! The rna number of `G` is the least number of edges joining the two classes
//! of a balanced 2-coloring; equivalently, the least number of negative edges
//! in a parity signature of `G`. For cycle powers `C_n^d` with `n >= 2d+1`
//! it equals `d(d+1)`; this crate provides exact and heuristic solvers, the
//! constructions behind that value, and a sweep that checks it.

pub mod bounds;
pub mod cli;
pub mod coloring;
pub mod exact;
pub mod graph;
pub mod heuristic;

pub use bounds::{
    contiguous_coloring, kang_bound, reduce_cycle_power, ska_bounds, theorem_value, BoundsError,
    ReductionResult,
};
pub use coloring::{
    coloring_to_labeling, cut_set, cut_size, is_balanced, labeling_to_coloring,
    labeling_to_signature, BalancedColoring, Color, ColoringError, CutSet, EdgeSignature, Sign,
    VertexLabeling,
};
pub use exact::{
    branch_and_bound_rna, brute_force_rna, brute_force_rna_with_guard, BnbOptions, Method,
    SolveError, SolveReport,
};
pub use graph::{
    cycle_power, gnp, make_family, parse_edge_list, serialize_edge_list, Edge, FamilyTag, Graph,
    GraphError,
};
pub use heuristic::{local_search_rna, LocalSearchOptions};
