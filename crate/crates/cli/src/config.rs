//! Run manifests and their line-oriented configuration grammar.
//!
//! One `key = value` pair per line; `#` starts a comment; blank lines are
//! ignored. Keys:
//!
//! | key | value |
//! |---|---|
//! | `problem` | catalog name, required |
//! | `resolutions` | comma list of `N` or `NxM` |
//! | `nx`, `ny` | a single resolution; replaces `resolutions` |
//! | `gamma0`, `d0` | central linear weights in (0, 1) |
//! | `epsilon` | weight regularization, positive |
//! | `cfl` | Courant number in (0, 1] |
//! | `tfinal` | final time, positive |
//! | `out` | output directory |
//! | `format` | comma list of `table`, `binary` |
//! | `seed` | recorded in the manifest, unused by the solver |
//! | `jobs` | worker threads, at least 1 |
//! | `emit_plots`, `linear_weights_only` | `true` or `false` |

use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;

use hweno_bench::{problem_spec, Overrides, ProblemName, Resolution};

use crate::CliError;

/// Smallest grid with one interior stencil plus corrections.
const MIN_CELLS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OutputFormat {
    Table,
    Binary,
}

impl OutputFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            OutputFormat::Table => "table",
            OutputFormat::Binary => "binary",
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Table => "dat",
            OutputFormat::Binary => "bin",
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "binary" => Ok(OutputFormat::Binary),
            other => Err(format!("unknown format '{other}', expected table or binary")),
        }
    }
}

/// A validated description of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub problem: ProblemName,
    pub resolutions: Vec<Resolution>,
    pub gamma0: Option<f64>,
    pub d0: Option<f64>,
    pub epsilon: Option<f64>,
    pub cfl: Option<f64>,
    pub t_final: Option<f64>,
    pub out_dir: PathBuf,
    pub formats: Vec<OutputFormat>,
    pub seed: u64,
    pub jobs: usize,
    pub emit_plots: bool,
    pub linear_weights_only: bool,
}

impl RunManifest {
    pub fn overrides(&self) -> Overrides {
        Overrides {
            gamma0: self.gamma0,
            d0: self.d0,
            epsilon: self.epsilon,
            cfl: self.cfl,
            t_final: self.t_final,
            linear_weights_only: self.linear_weights_only,
            checkpoints: Vec::new(),
        }
    }

    /// The manifest in the configuration grammar; parsing it gives back the
    /// same manifest.
    pub fn to_config(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "problem = {}", self.problem);
        let res: Vec<String> = self.resolutions.iter().map(|r| r.to_string()).collect();
        let _ = writeln!(out, "resolutions = {}", res.join(","));
        for (key, value) in [
            ("gamma0", self.gamma0),
            ("d0", self.d0),
            ("epsilon", self.epsilon),
            ("cfl", self.cfl),
            ("tfinal", self.t_final),
        ] {
            if let Some(v) = value {
                let _ = writeln!(out, "{key} = {v:?}");
            }
        }
        let _ = writeln!(out, "out = {}", self.out_dir.display());
        let formats: Vec<&str> = self.formats.iter().map(|f| f.as_str()).collect();
        let _ = writeln!(out, "format = {}", formats.join(","));
        let _ = writeln!(out, "seed = {}", self.seed);
        let _ = writeln!(out, "jobs = {}", self.jobs);
        let _ = writeln!(out, "emit_plots = {}", self.emit_plots);
        let _ = writeln!(out, "linear_weights_only = {}", self.linear_weights_only);
        out
    }
}

/// Resolution entry before the problem's dimension is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSize {
    pub nx: usize,
    pub ny: Option<usize>,
}

impl FromStr for GridSize {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let count = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("'{}' is not a cell count", t.trim()))
        };
        match s.split_once('x') {
            Some((a, b)) => Ok(GridSize {
                nx: count(a)?,
                ny: Some(count(b)?),
            }),
            None => Ok(GridSize { nx: count(s)?, ny: None }),
        }
    }
}

/// Manifest fields as read from a file or flags, before defaults and
/// validation. Later sources override earlier ones through [`Self::apply`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ManifestDraft {
    pub problem: Option<String>,
    pub resolutions: Option<Vec<GridSize>>,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub gamma0: Option<f64>,
    pub d0: Option<f64>,
    pub epsilon: Option<f64>,
    pub cfl: Option<f64>,
    pub t_final: Option<f64>,
    pub out_dir: Option<PathBuf>,
    pub formats: Option<Vec<OutputFormat>>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
    pub emit_plots: Option<bool>,
    pub linear_weights_only: Option<bool>,
}

fn parse_list<T: FromStr<Err = String>>(value: &str) -> Result<Vec<T>, String> {
    let items: Vec<&str> = value.split(',').map(str::trim).collect();
    if items.iter().any(|s| s.is_empty()) {
        return Err(format!("empty entry in list '{value}'"));
    }
    items.into_iter().map(T::from_str).collect()
}

fn parse_value<T: FromStr>(value: &str, what: &str) -> Result<T, String> {
    value.parse().map_err(|_| format!("'{value}' is not a valid {what}"))
}

impl ManifestDraft {
    /// Reads the configuration grammar. Unknown and repeated keys are errors.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut draft = ManifestDraft::default();
        let mut seen: Vec<String> = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fail = |message: String| CliError::Parse { line, message };
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| fail(format!("expected 'key = value', got '{content}'")))?;
            let (key, value) = (key.trim(), value.trim());
            if value.is_empty() {
                return Err(fail(format!("missing value for '{key}'")));
            }
            if seen.iter().any(|s| s == key) {
                return Err(fail(format!("'{key}' is set twice")));
            }
            draft.set(key, value).map_err(fail)?;
            seen.push(key.to_string());
        }
        Ok(draft)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "problem" => self.problem = Some(value.to_string()),
            "resolutions" => self.resolutions = Some(parse_list(value)?),
            "nx" => self.nx = Some(parse_value(value, "cell count")?),
            "ny" => self.ny = Some(parse_value(value, "cell count")?),
            "gamma0" => self.gamma0 = Some(parse_value(value, "number")?),
            "d0" => self.d0 = Some(parse_value(value, "number")?),
            "epsilon" => self.epsilon = Some(parse_value(value, "number")?),
            "cfl" => self.cfl = Some(parse_value(value, "number")?),
            "tfinal" => self.t_final = Some(parse_value(value, "number")?),
            "out" => self.out_dir = Some(PathBuf::from(value)),
            "format" => self.formats = Some(parse_list(value)?),
            "seed" => self.seed = Some(parse_value(value, "seed")?),
            "jobs" => self.jobs = Some(parse_value(value, "worker count")?),
            "emit_plots" => self.emit_plots = Some(parse_value(value, "boolean")?),
            "linear_weights_only" => self.linear_weights_only = Some(parse_value(value, "boolean")?),
            other => return Err(format!("unknown key '{other}'")),
        }
        Ok(())
    }

    /// Fields set in `later` replace the ones set here. A single grid size
    /// in `later` also replaces a resolution list set here.
    pub fn apply(&mut self, later: ManifestDraft) {
        if later.nx.is_some() {
            self.resolutions = None;
            self.ny = None;
        }
        macro_rules! take {
            ($($f:ident),*) => {
                $(if later.$f.is_some() {
                    self.$f = later.$f;
                })*
            };
        }
        take!(
            problem,
            resolutions,
            nx,
            ny,
            gamma0,
            d0,
            epsilon,
            cfl,
            t_final,
            out_dir,
            formats,
            seed,
            jobs,
            emit_plots,
            linear_weights_only
        );
    }

    /// Fills defaults and validates.
    pub fn finish(self) -> Result<RunManifest, CliError> {
        let name = self.problem.ok_or_else(|| CliError::invalid("problem", "a problem is required"))?;
        let problem: ProblemName = name.parse()?;
        let spec = problem_spec(problem);

        let sizes = match (self.nx, self.ny, self.resolutions) {
            (None, Some(_), _) => return Err(CliError::invalid("ny", "ny needs nx")),
            (Some(nx), ny, _) => vec![GridSize { nx, ny }],
            (None, None, Some(list)) => list,
            (None, None, None) => spec
                .default_resolutions
                .iter()
                .map(|r| GridSize { nx: r.nx, ny: r.ny })
                .collect(),
        };
        if sizes.is_empty() {
            return Err(CliError::invalid("resolutions", "at least one resolution is required"));
        }
        let mut resolutions = Vec::with_capacity(sizes.len());
        for size in sizes {
            if size.ny.is_some() && !problem.is_2d() {
                return Err(CliError::invalid("resolutions", format!("{problem} is one-dimensional")));
            }
            let r = spec.resolution(size.nx, size.ny);
            if r.nx < MIN_CELLS || r.ny.is_some_and(|ny| ny < MIN_CELLS) {
                return Err(CliError::invalid("resolutions", format!("{r} has fewer than {MIN_CELLS} cells per direction")));
            }
            resolutions.push(r);
        }

        for (field, value) in [("gamma0", self.gamma0), ("d0", self.d0)] {
            if let Some(v) = value {
                if !(v > 0.0 && v < 1.0) {
                    return Err(CliError::invalid(field, format!("linear weights must lie in (0, 1), got {v}")));
                }
            }
        }
        if let Some(e) = self.epsilon {
            if !(e > 0.0 && e.is_finite()) {
                return Err(CliError::invalid("epsilon", format!("must be positive, got {e}")));
            }
        }
        if let Some(c) = self.cfl {
            if !(c > 0.0 && c <= 1.0) {
                return Err(CliError::invalid("cfl", format!("must lie in (0, 1], got {c}")));
            }
        }
        if let Some(t) = self.t_final {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::invalid("tfinal", format!("must be positive, got {t}")));
            }
        }
        let jobs = self.jobs.unwrap_or(1);
        if jobs == 0 {
            return Err(CliError::invalid("jobs", "at least one worker is required"));
        }
        let mut formats = self.formats.unwrap_or_else(|| vec![OutputFormat::Table]);
        let mut unique = Vec::with_capacity(formats.len());
        formats.retain(|f| {
            let fresh = !unique.contains(f);
            unique.push(*f);
            fresh
        });

        Ok(RunManifest {
            problem,
            resolutions,
            gamma0: self.gamma0,
            d0: self.d0,
            epsilon: self.epsilon,
            cfl: self.cfl,
            t_final: self.t_final,
            out_dir: self.out_dir.unwrap_or_else(|| PathBuf::from("out")),
            formats,
            seed: self.seed.unwrap_or(0),
            jobs,
            emit_plots: self.emit_plots.unwrap_or(false),
            linear_weights_only: self.linear_weights_only.unwrap_or(false),
        })
    }
}

/// Parses and validates a configuration file on its own.
pub fn parse_config(text: &str) -> Result<RunManifest, CliError> {
    ManifestDraft::parse(text)?.finish()
}
