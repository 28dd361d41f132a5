use std::fmt;

use thiserror::Error;

/// Grid location attached to numerical failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellIndex {
    Line(isize),
    Plane(isize, isize),
}

impl fmt::Display for CellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellIndex::Line(i) => write!(f, "i={i}"),
            CellIndex::Plane(i, j) => write!(f, "(i={i}, j={j})"),
        }
    }
}

/// Where in a time step a failure was detected.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StageInfo {
    pub stage: Option<usize>,
    pub time: Option<f64>,
}

impl fmt::Display for StageInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.stage {
            write!(f, " stage {s}")?;
        }
        if let Some(t) = self.time {
            write!(f, " t={t:.6e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HwenoError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("non-physical state at {cell}{at}: {detail}")]
    Positivity {
        cell: CellIndex,
        at: StageInfo,
        detail: String,
    },

    #[error("non-finite {what} at {cell}{at}")]
    NonFinite {
        cell: CellIndex,
        at: StageInfo,
        what: &'static str,
    },

    #[error("boundary specification: {0}")]
    Boundary(String),

    #[error("singular or ill-conditioned system: {0}")]
    Singular(String),
}

impl HwenoError {
    /// Attaches stage/time information to positivity and finiteness errors.
    pub fn at_stage(self, stage: usize, time: f64) -> Self {
        let info = StageInfo {
            stage: Some(stage),
            time: Some(time),
        };
        match self {
            HwenoError::Positivity { cell, detail, .. } => HwenoError::Positivity {
                cell,
                at: info,
                detail,
            },
            HwenoError::NonFinite { cell, what, .. } => HwenoError::NonFinite {
                cell,
                at: info,
                what,
            },
            other => other,
        }
    }

    /// Replaces the cell location of positivity and finiteness errors.
    pub fn at_cell(self, cell: CellIndex) -> Self {
        match self {
            HwenoError::Positivity { at, detail, .. } => HwenoError::Positivity { cell, at, detail },
            HwenoError::NonFinite { at, what, .. } => HwenoError::NonFinite { cell, at, what },
            other => other,
        }
    }

    /// True for failures of the numerical solution itself (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            HwenoError::Positivity { .. } | HwenoError::NonFinite { .. }
        )
    }
}

pub type Result<T, E = HwenoError> = std::result::Result<T, E>;
