//! Exact multiobjective discrete optimization over layered network models.
//!
//! A problem is written as a recursive formulation, compiled into a layered
//! weighted multi-digraph whose root-terminal paths are exactly its feasible
//! solutions, shrunk by validity-preserving operations that leave the Pareto
//! frontier untouched, and solved by multicriteria label propagation
//! (top-down, bottom-up, or bidirectional with a coupling layer). A
//! brute-force oracle provides independent verification, and five classic
//! problem classes ship with instance generators.

pub mod files;
pub mod network;
pub mod oracle;
pub mod problems;
pub mod recursion;
pub mod rng;
pub mod search;
pub mod solver;
pub mod vector;
pub mod vpo;

pub use network::{Arc, ArcId, Network, Node, NodeId, Violation};
pub use problems::{Instance, ProblemClass, Sense};
pub use recursion::{compile, CompileLimits, DpModel};
pub use search::{
    couple_sets, filter_labels, propagate_bottomup, propagate_topdown, run_bottomup, run_topdown,
    solve_bidirectional, Direction, LabelSets, NodeComparator, SearchLimits,
};
pub use solver::{solve, Algorithm, SolveConfig, SolveReport};
pub use vector::{dominates, nd_filter, ObjectiveVector};
pub use vpo::{
    is_isolating, local_arc_removal, node_merge, prune_parallel_arcs, reduce_sweep, weight_shift,
    MergePolicy, ReductionStats,
};
