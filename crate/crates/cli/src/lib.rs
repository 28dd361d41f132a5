//! Batch runner for the benchmark catalog: configuration files, run
//! orchestration, data files and plotting scripts.

pub mod app;
pub mod config;
pub mod output;
pub mod plots;

use std::io;
use std::path::PathBuf;

use hweno_bench::BenchError;
use thiserror::Error;

pub use app::{execute, Args, Summary};
pub use config::{parse_config, ManifestDraft, OutputFormat, RunManifest};
pub use output::{read_snapshot_binary, write_snapshot, BinarySnapshot};
pub use plots::{emit_error_plot, emit_snapshot_plot, CONTOUR_LEVELS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid {field}: {message}")]
    Invalid { field: &'static str, message: String },

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error(transparent)]
    Bench(#[from] BenchError),
}

impl CliError {
    pub(crate) fn invalid(field: &'static str, message: impl Into<String>) -> Self {
        CliError::Invalid {
            field,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Bench(e) if e.is_numerical() => EXIT_NUMERICAL,
            _ => EXIT_CONFIG,
        }
    }

    /// Final status line for a failed invocation.
    pub fn status_line(&self) -> String {
        let status = if self.exit_code() == EXIT_NUMERICAL {
            "numerical_failure"
        } else {
            "config_error"
        };
        format!("status={status} code={} message={:?}", self.exit_code(), self.to_string())
    }
}
