//! Command-line flags and run orchestration.
//!
//! Each run writes into its own directory `<out>/<problem>_<resolution>/`:
//! `solution.dat` and/or `solution.bin`, plus `solution.gp` with plots.
//! Accuracy problems also get `<out>/<problem>_errors.dat` (and
//! `<problem>_errors.gp`). The resolved manifest is saved as
//! `<out>/manifest.txt`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;
use hweno_bench::run::error_component;
use hweno_bench::{problem_spec, run_catalog_problem, ErrorReport, ErrorRow, Resolution, RunResult};
use rayon::prelude::*;

use crate::config::{ManifestDraft, OutputFormat, RunManifest};
use crate::output::write_snapshot;
use crate::plots::{emit_error_plot, emit_snapshot_plot};
use crate::{CliError, EXIT_OK};

#[derive(Debug, Clone, Default, Parser)]
#[command(name = "hweno", version, about = "Runs benchmark problems of the Hermite WENO solver")]
pub struct Args {
    /// Configuration file in the `key = value` grammar; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Catalog problem, e.g. burgers1d_acc, shu_osher, double_mach.
    #[arg(long)]
    pub problem: Option<String>,
    /// Cells along x; replaces the configured resolutions.
    #[arg(long)]
    pub nx: Option<usize>,
    /// Cells along y; defaults to the problem's aspect ratio.
    #[arg(long)]
    pub ny: Option<usize>,
    /// Central linear weight of the interpolation.
    #[arg(long)]
    pub gamma0: Option<f64>,
    /// Central linear weight of the derivative limiter.
    #[arg(long)]
    pub d0: Option<f64>,
    #[arg(long)]
    pub cfl: Option<f64>,
    /// Final time; defaults to the problem's.
    #[arg(long)]
    pub tfinal: Option<f64>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Data formats, comma separated: table, binary.
    #[arg(long, value_delimiter = ',')]
    pub format: Vec<OutputFormat>,
    /// Also write gnuplot scripts.
    #[arg(long)]
    pub emit_plots: bool,
    /// Worker threads; runs of a resolution list proceed in parallel.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Diagnostic only, not a production setting: use the linear weights
    /// everywhere.
    #[arg(long)]
    pub linear_weights_only: bool,
}

impl Args {
    fn draft(&self) -> ManifestDraft {
        ManifestDraft {
            problem: self.problem.clone(),
            resolutions: None,
            nx: self.nx,
            ny: self.ny,
            gamma0: self.gamma0,
            d0: self.d0,
            epsilon: None,
            cfl: self.cfl,
            t_final: self.tfinal,
            out_dir: self.out.clone(),
            formats: (!self.format.is_empty()).then(|| self.format.clone()),
            seed: None,
            jobs: self.jobs,
            emit_plots: self.emit_plots.then_some(true),
            linear_weights_only: self.linear_weights_only.then_some(true),
        }
    }

    /// The configuration file, if any, overridden by the flags.
    pub fn manifest(&self) -> Result<RunManifest, CliError> {
        let mut draft = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                ManifestDraft::parse(&text)?
            }
            None => ManifestDraft::default(),
        };
        draft.apply(self.draft());
        draft.finish()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub resolution: Resolution,
    pub steps: usize,
    pub seconds: f64,
    pub directory: PathBuf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub manifest: RunManifest,
    pub runs: Vec<RunSummary>,
    pub report: Option<ErrorReport>,
    pub seconds: f64,
}

impl Summary {
    /// Human-readable account of the runs.
    pub fn report_text(&self) -> String {
        let mut s = String::new();
        for r in &self.runs {
            let _ = writeln!(
                s,
                "{} {}: {} steps in {:.2} s -> {}",
                self.manifest.problem,
                r.resolution,
                r.steps,
                r.seconds,
                r.directory.display()
            );
        }
        if let Some(report) = &self.report {
            s.push_str(&report.to_table());
        }
        s
    }

    pub fn status_line(&self) -> String {
        format!(
            "status=ok code={EXIT_OK} problem={} runs={} seconds={:.3}",
            self.manifest.problem,
            self.runs.len(),
            self.seconds
        )
    }
}

fn create_dir(path: &Path) -> Result<(), CliError> {
    fs::create_dir_all(path).map_err(|e| CliError::io(path, e))
}

/// Label of the weight configuration, used in plot legends.
fn configuration_label(manifest: &RunManifest) -> Result<String, CliError> {
    let spec = problem_spec(manifest.problem);
    let w = manifest.overrides().weights(&spec)?;
    let mut label = format!("gamma0={} d0={}", w.gamma[0], w.d[0]);
    if w.linear_only {
        label.push_str(" linear");
    }
    Ok(label)
}

fn write_run(manifest: &RunManifest, result: &RunResult) -> Result<PathBuf, CliError> {
    let dir = manifest.out_dir.join(format!("{}_{}", manifest.problem, result.resolution));
    create_dir(&dir)?;
    let mut formats = manifest.formats.clone();
    if manifest.emit_plots && !formats.contains(&OutputFormat::Table) {
        formats.push(OutputFormat::Table);
    }
    for f in formats {
        write_snapshot(&result.snapshot, &dir.join(format!("solution.{}", f.extension())), f)?;
    }
    if manifest.emit_plots {
        emit_snapshot_plot(&result.snapshot, Path::new("solution.dat"), &dir.join("solution.gp"))?;
    }
    Ok(dir)
}

/// Runs every resolution of the manifest and writes the outputs. Runs
/// proceed in parallel on `jobs` worker threads; outputs are written in
/// manifest order once all runs are done.
pub fn execute(manifest: &RunManifest) -> Result<Summary, CliError> {
    let start = Instant::now();
    create_dir(&manifest.out_dir)?;
    let manifest_path = manifest.out_dir.join("manifest.txt");
    fs::write(&manifest_path, manifest.to_config()).map_err(|e| CliError::io(&manifest_path, e))?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(manifest.jobs)
        .build()
        .map_err(|e| CliError::invalid("jobs", e.to_string()))?;
    let overrides = manifest.overrides();
    let results: Vec<_> = pool.install(|| {
        manifest
            .resolutions
            .par_iter()
            .map(|&r| run_catalog_problem(manifest.problem, r, &overrides))
            .collect()
    });

    let mut runs = Vec::with_capacity(results.len());
    let mut finished = Vec::with_capacity(results.len());
    let mut failure = None;
    for result in results {
        match result {
            Ok(r) => {
                let directory = write_run(manifest, &r)?;
                runs.push(RunSummary {
                    resolution: r.resolution,
                    steps: r.stats.steps,
                    seconds: r.seconds,
                    directory,
                });
                finished.push(r);
            }
            Err(e) => {
                failure.get_or_insert(e);
            }
        }
    }
    if let Some(e) = failure {
        return Err(e.into());
    }

    let report = if manifest.problem.is_accuracy() {
        let mut report = ErrorReport::new(manifest.problem.as_str(), error_component(manifest.problem));
        for r in &finished {
            if let Some(norms) = r.norms {
                report.rows.push(ErrorRow {
                    n: r.resolution.nx,
                    norms,
                    seconds: r.seconds,
                });
            }
        }
        let name = format!("{}_errors", manifest.problem);
        let table = manifest.out_dir.join(format!("{name}.dat"));
        fs::write(&table, report.to_table()).map_err(|e| CliError::io(&table, e))?;
        if manifest.emit_plots {
            let label = configuration_label(manifest)?;
            let data = PathBuf::from(format!("{name}.dat"));
            emit_error_plot(&[(label.as_str(), data.as_path())], &manifest.out_dir.join(format!("{name}.gp")))?;
        }
        Some(report)
    } else {
        None
    };

    Ok(Summary {
        manifest: manifest.clone(),
        runs,
        report,
        seconds: start.elapsed().as_secs_f64(),
    })
}
