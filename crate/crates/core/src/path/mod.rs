//! Path Knapsack solvers: the unique path on forests, colour coding, and a
//! segment-state DP over a nice tree decomposition pinned at both terminals.

mod color;
mod tree;
mod treewidth;

pub use color::{
    color_table, default_trials, solve_path_color_coding, solve_path_color_sweep, ColorTable, MAX_PALETTE,
};
pub use tree::solve_path_tree;
pub use treewidth::{solve_path_treewidth, solve_path_treewidth_with, PathRules};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("graph contains a cycle")]
    NotATree,
    #[error("x and y lie in different components")]
    NoPath,
    #[error("path length {k} outside 1..={max}")]
    BadLength { k: usize, max: usize },
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("solver does not handle {0} instances")]
    WrongVariant(crate::model::Variant),
    #[error("instance variant has no terminals")]
    NoTerminals,
    #[error(transparent)]
    Decomposition(#[from] crate::decomposition::DecompositionError),
}
