//! Instances, Pareto sets, solution verification and solver reports.

pub mod graph;
mod instance;
mod pareto;
mod report;
mod verify;

pub use instance::{Instance, InstanceBuilder, InstanceError, RawEdge, RawInstance, Variant, SCHEMA_VERSION};
pub use pareto::{retain_undominated, Pair, ParetoError, ParetoSet};
pub use report::{SolveReport, SolveStats};
pub use verify::{verify_solution, Verification, VerifyFailure};
