//! Benchmark problems for the HWENO solver: the problem catalog, exact
//! solutions of the smooth cases, error norms, convergence tables and shock
//! diagnostics.

pub mod catalog;
pub mod exact;
pub mod norms;
pub mod run;
pub mod shock;

use hweno_core::HwenoError;
use thiserror::Error;

pub use catalog::{problem_spec, ProblemName, ProblemSpec, Resolution};
pub use norms::{error_norms, ErrorNorms, ErrorReport, ErrorRow};
pub use run::{accuracy_table, forward_step_geometry_mask, run_catalog_problem, Overrides, RunResult, Snapshot};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BenchError {
    #[error("unknown problem '{0}'")]
    UnknownProblem(String),

    #[error(transparent)]
    Solver(#[from] HwenoError),

    #[error("invalid run configuration: {0}")]
    Config(String),

    #[error("{0}")]
    NoConvergence(String),
}

impl BenchError {
    /// True for failures of the numerical solution itself.
    pub fn is_numerical(&self) -> bool {
        match self {
            BenchError::Solver(e) => e.is_numerical(),
            BenchError::NoConvergence(_) => true,
            _ => false,
        }
    }
}
