//! Knapsack problems with graph constraints: the chosen vertex set must be
//! connected, form an `x`–`y` path, or form a shortest `x`–`y` path.
//!
//! Exact solvers run over nice tree decompositions ([`connected`],
//! [`path::solve_path_treewidth`]), by colour coding
//! ([`path::solve_path_color_coding`]) or by a Pareto-label Dijkstra
//! ([`shortest`]). [`approx`] wraps any of them in a value-scaling FPTAS,
//! [`oracle`] holds brute-force references and [`reductions`] the hardness
//! gadgets used as structured test inputs.

pub mod approx;
pub mod connected;
pub mod decomposition;
pub mod dp;
pub mod generate;
pub mod model;
pub mod oracle;
pub mod path;
pub mod reductions;
pub mod shortest;

pub use model::{
    verify_solution, Instance, InstanceBuilder, InstanceError, Pair, ParetoSet, RawInstance, SolveReport, SolveStats,
    Variant,
};
