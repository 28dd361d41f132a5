//! Discrete error norms and convergence tables.

use std::fmt::Write as _;

use hweno_core::verification::{convergence_orders, kahan_sum};

use crate::BenchError;

/// Errors of one run against an exact solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorNorms {
    /// `dx (dy) * sum |e|` over interior cells.
    pub l1: f64,
    /// `sum |e| / cell count`, the cell-weighted sum divided by the domain measure.
    pub l1_mean: f64,
    pub linf: f64,
}

pub fn error_norms(numeric: &[f64], exact: &[f64], cell_volume: f64) -> Result<ErrorNorms, BenchError> {
    if numeric.len() != exact.len() || numeric.is_empty() {
        return Err(BenchError::Config(format!(
            "error norms need matching non-empty fields, got {} and {} values",
            numeric.len(),
            exact.len()
        )));
    }
    let abs: Vec<f64> = numeric.iter().zip(exact).map(|(a, b)| (a - b).abs()).collect();
    let sum = kahan_sum(abs.iter().copied());
    Ok(ErrorNorms {
        l1: sum * cell_volume,
        l1_mean: sum / abs.len() as f64,
        linf: abs.iter().copied().fold(0.0, f64::max),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRow {
    pub n: usize,
    pub norms: ErrorNorms,
    pub seconds: f64,
}

/// Error table of one accuracy problem over a sequence of resolutions.
///
/// Orders use the domain-mean L1 norm.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub problem: String,
    pub component: String,
    pub rows: Vec<ErrorRow>,
}

impl ErrorReport {
    pub fn new(problem: impl Into<String>, component: impl Into<String>) -> Self {
        Self {
            problem: problem.into(),
            component: component.into(),
            rows: Vec::new(),
        }
    }

    pub fn resolutions(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.n).collect()
    }

    pub fn l1(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.norms.l1_mean).collect()
    }

    pub fn linf(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.norms.linf).collect()
    }

    pub fn l1_orders(&self) -> Vec<f64> {
        convergence_orders(&self.resolutions(), &self.l1())
    }

    pub fn linf_orders(&self) -> Vec<f64> {
        convergence_orders(&self.resolutions(), &self.linf())
    }

    pub fn total_seconds(&self) -> f64 {
        self.rows.iter().map(|r| r.seconds).sum()
    }

    pub fn row(&self, n: usize) -> Option<&ErrorRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    /// Order between the rows at `coarse` and `fine`.
    pub fn order_between(&self, coarse: usize, fine: usize) -> Option<f64> {
        let a = self.row(coarse)?.norms.l1_mean;
        let b = self.row(fine)?.norms.l1_mean;
        Some((a / b).ln() / (fine as f64 / coarse as f64).ln())
    }

    /// Whitespace-delimited table: `N L1 order Linf order seconds`.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {} error of {} (L1 = mean |e|)", self.problem, self.component);
        let _ = writeln!(out, "# N L1 order Linf order seconds");
        let l1o = self.l1_orders();
        let lio = self.linf_orders();
        for (k, r) in self.rows.iter().enumerate() {
            let (a, b) = if k == 0 {
                ("-".to_string(), "-".to_string())
            } else {
                (format!("{:.3}", l1o[k - 1]), format!("{:.3}", lio[k - 1]))
            };
            let _ = writeln!(
                out,
                "{} {:.3E} {} {:.3E} {} {:.2}",
                r.n, r.norms.l1_mean, a, r.norms.linf, b, r.seconds
            );
        }
        out
    }
}
