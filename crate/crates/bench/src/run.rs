//! Runs catalog problems end to end and collects snapshots and error norms.

use std::time::Instant;

use hweno_core::boundaries::StepObstacle;
use hweno_core::hweno::WeightConfig;
use hweno_core::integrator::{RunConfig, RunStats, SchemeOptions, Solver1D, Solver2D};
use hweno_core::mesh::{State1D, State2D, UniformGrid1D, UniformGrid2D};
use hweno_core::models::{ConservationLaw, Euler1D, Euler2D, ScalarModel};

use crate::catalog::{self, problem_spec, ProblemName, ProblemSpec, Resolution};
use crate::exact;
use crate::norms::{error_norms, ErrorNorms, ErrorReport, ErrorRow};
use crate::BenchError;

/// Time-step law exponent for the accuracy problems: `dt ~ h^(5/3)` keeps the
/// third-order time error at the size of the fifth-order space error.
pub const ACCURACY_SPACING_POWER: f64 = 5.0 / 3.0;

/// Changes to the catalog defaults of one run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub gamma0: Option<f64>,
    pub d0: Option<f64>,
    pub epsilon: Option<f64>,
    pub cfl: Option<f64>,
    pub t_final: Option<f64>,
    /// Diagnostic: skip the nonlinear weights.
    pub linear_weights_only: bool,
    /// Times before the final time at which snapshots are recorded.
    pub checkpoints: Vec<f64>,
}

impl Overrides {
    pub fn weights(&self, spec: &ProblemSpec) -> Result<WeightConfig<f64>, BenchError> {
        let base = spec.weights;
        let w = WeightConfig::symmetric(
            self.gamma0.unwrap_or(base.gamma[0]),
            self.d0.unwrap_or(base.d[0]),
            self.epsilon.unwrap_or(base.epsilon),
        )?;
        Ok(w.with_linear_only(self.linear_weights_only))
    }
}

/// Primitive variables of a solution on interior cells.
///
/// Values are stored per component in row-major order, `y` outer and `x`
/// inner. Cells inside a solid obstacle hold NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub problem: ProblemName,
    pub time: f64,
    pub x_range: (f64, f64),
    pub y_range: Option<(f64, f64)>,
    pub nx: usize,
    /// 1 for line data.
    pub ny: usize,
    pub components: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl Snapshot {
    pub fn is_2d(&self) -> bool {
        self.y_range.is_some()
    }

    pub fn dx(&self) -> f64 {
        (self.x_range.1 - self.x_range.0) / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        self.y_range.map_or(1.0, |(a, b)| (b - a) / self.ny as f64)
    }

    /// Center of cell `(i, j)`, 0-based.
    pub fn center(&self, i: usize, j: usize) -> (f64, f64) {
        let x = self.x_range.0 + (i as f64 + 0.5) * self.dx();
        let y = self.y_range.map_or(0.0, |(a, _)| a + (j as f64 + 0.5) * self.dy());
        (x, y)
    }

    pub fn component(&self, name: &str) -> Option<&[f64]> {
        let k = self.components.iter().position(|c| c == name)?;
        Some(&self.values[k])
    }

    pub fn value(&self, component: usize, i: usize, j: usize) -> f64 {
        self.values[component][j * self.nx + i]
    }

    /// Cell centers along `x`.
    pub fn x_centers(&self) -> Vec<f64> {
        (0..self.nx).map(|i| self.center(i, 0).0).collect()
    }

    /// True when every open cell has finite values and positive density and
    /// pressure (when present).
    pub fn is_physical(&self) -> bool {
        let positive = ["rho", "p"];
        self.components.iter().zip(&self.values).all(|(name, vals)| {
            vals.iter()
                .filter(|v| !v.is_nan())
                .all(|v| v.is_finite() && (!positive.contains(&name.as_str()) || *v > 0.0))
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub problem: ProblemName,
    pub resolution: Resolution,
    pub snapshot: Snapshot,
    pub checkpoints: Vec<Snapshot>,
    /// Error of the designated component for accuracy problems.
    pub norms: Option<ErrorNorms>,
    pub stats: RunStats<f64>,
    pub seconds: f64,
}

/// Step obstacle of the forward-facing step on `grid`, with the open/blocked
/// mask in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct StepMask {
    pub obstacle: StepObstacle,
    pub blocked: Vec<bool>,
}

pub const STEP_CORNER: (f64, f64) = (0.6, 0.2);

pub fn forward_step_geometry_mask(grid: &UniformGrid2D<f64>) -> Result<StepMask, BenchError> {
    let on_domain = |a: f64, b: f64| (a - b).abs() < 1e-12;
    if !(on_domain(grid.x.x_min, 0.0) && on_domain(grid.x.x_max, 3.0) && on_domain(grid.y.x_min, 0.0) && on_domain(grid.y.x_max, 1.0)) {
        return Err(BenchError::Config("the forward step needs the domain [0,3]x[0,1]".into()));
    }
    if grid.nx() % 10 != 0 || grid.ny() % 5 != 0 {
        return Err(BenchError::Config(format!(
            "the step corner must lie on cell interfaces: nx must be a multiple of 10 and ny of 5, got {}x{}",
            grid.nx(),
            grid.ny()
        )));
    }
    let obstacle = StepObstacle::new(grid, STEP_CORNER.0, STEP_CORNER.1)?;
    let mut blocked = Vec::with_capacity(grid.nx() * grid.ny());
    for j in 1..=grid.ny() as isize {
        for i in 1..=grid.nx() as isize {
            blocked.push(obstacle.is_blocked(i, j));
        }
    }
    Ok(StepMask { obstacle, blocked })
}

fn run_config(spec: &ProblemSpec, overrides: &Overrides) -> RunConfig<f64> {
    let mut config = RunConfig::new(overrides.t_final.unwrap_or(spec.t_final));
    if let Some(cfl) = overrides.cfl {
        config.cfl = cfl;
    }
    config.dt_initial_cap = spec.dt_initial;
    if spec.name.is_accuracy() {
        config.spacing_power = Some(ACCURACY_SPACING_POWER);
    }
    config
}

/// Runs `advance` up to each checkpoint and then to the final time.
fn segmented_run<S>(
    state: &mut S,
    config: &RunConfig<f64>,
    checkpoints: &[f64],
    mut advance: impl FnMut(&mut S, f64, &RunConfig<f64>) -> Result<RunStats<f64>, BenchError>,
    mut record: impl FnMut(&S, f64),
) -> Result<RunStats<f64>, BenchError> {
    let mut stops: Vec<f64> = checkpoints.iter().copied().filter(|&t| t > 0.0 && t < config.t_final).collect();
    stops.sort_by(f64::total_cmp);
    stops.dedup();
    let mut total = RunStats {
        steps: 0,
        time: 0.0,
        min_dt: f64::INFINITY,
        max_dt: 0.0,
    };
    let mut t = 0.0;
    let mut segment = *config;
    for (k, stop) in stops.iter().copied().chain([config.t_final]).enumerate() {
        segment.t_final = stop;
        if k > 0 {
            segment.dt_initial_cap = None;
        }
        let stats = advance(state, t, &segment)?;
        total.steps += stats.steps;
        total.min_dt = total.min_dt.min(stats.min_dt);
        total.max_dt = total.max_dt.max(stats.max_dt);
        t = stop;
        total.time = t;
        if k < stops.len() {
            record(state, t);
        }
    }
    if total.steps == 0 {
        total.min_dt = 0.0;
    }
    Ok(total)
}

fn line_snapshot<const M: usize>(
    name: ProblemName,
    grid: &UniformGrid1D<f64>,
    state: &State1D<f64, M>,
    t: f64,
    components: &[&str],
    primitive: impl Fn(&[f64; M]) -> Vec<f64>,
) -> Snapshot {
    let mut values = vec![Vec::with_capacity(grid.n_cells); components.len()];
    for q in state.u.interior() {
        for (k, p) in primitive(q).into_iter().enumerate() {
            values[k].push(p);
        }
    }
    Snapshot {
        problem: name,
        time: t,
        x_range: (grid.x_min, grid.x_max),
        y_range: None,
        nx: grid.n_cells,
        ny: 1,
        components: components.iter().map(|s| s.to_string()).collect(),
        values,
    }
}

fn plane_snapshot<const M: usize>(
    name: ProblemName,
    grid: &UniformGrid2D<f64>,
    state: &State2D<f64, M>,
    t: f64,
    obstacle: Option<&StepObstacle>,
    components: &[&str],
    primitive: impl Fn(&[f64; M]) -> Vec<f64>,
) -> Snapshot {
    let (nx, ny) = (grid.nx(), grid.ny());
    let mut values = vec![Vec::with_capacity(nx * ny); components.len()];
    for j in 1..=ny as isize {
        for i in 1..=nx as isize {
            let blocked = obstacle.is_some_and(|o| o.is_blocked(i, j));
            let p = if blocked { vec![f64::NAN; components.len()] } else { primitive(&state.u.get(i, j)) };
            for (k, v) in p.into_iter().enumerate() {
                values[k].push(v);
            }
        }
    }
    Snapshot {
        problem: name,
        time: t,
        x_range: (grid.x.x_min, grid.x.x_max),
        y_range: Some((grid.y.x_min, grid.y.x_max)),
        nx,
        ny,
        components: components.iter().map(|s| s.to_string()).collect(),
        values,
    }
}

fn euler1d_primitive(model: &Euler1D<f64>) -> impl Fn(&[f64; 3]) -> Vec<f64> + '_ {
    |q| match model.primitive_from_conserved(q) {
        Ok(p) => vec![p.rho, p.vel[0], p.pressure],
        Err(_) => vec![f64::NAN; 3],
    }
}

fn euler2d_primitive(model: &Euler2D<f64>) -> impl Fn(&[f64; 4]) -> Vec<f64> + '_ {
    |q| match model.primitive_from_conserved(q) {
        Ok(p) => vec![p.rho, p.vel[0], p.vel[1], p.pressure],
        Err(_) => vec![f64::NAN; 4],
    }
}

const EULER_1D: [&str; 3] = ["rho", "u", "p"];
const EULER_2D: [&str; 4] = ["rho", "u", "v", "p"];

struct Outcome {
    snapshot: Snapshot,
    checkpoints: Vec<Snapshot>,
    stats: RunStats<f64>,
}

#[allow(clippy::too_many_arguments)]
fn solve_line<const M: usize, L: ConservationLaw<f64, M>>(
    spec: &ProblemSpec,
    model: &L,
    grid: UniformGrid1D<f64>,
    options: SchemeOptions<f64>,
    mut state: State1D<f64, M>,
    config: &RunConfig<f64>,
    overrides: &Overrides,
    components: &[&str],
    primitive: impl Fn(&[f64; M]) -> Vec<f64>,
) -> Result<Outcome, BenchError> {
    let boundary = boundary_1d::<M>(spec.name)?;
    let solver = Solver1D::new(model, grid, boundary, options)?;
    let mut checkpoints = Vec::new();
    let stats = segmented_run(
        &mut state,
        config,
        &overrides.checkpoints,
        |s, t, c| Ok(solver.run(s, t, c)?),
        |s, t| checkpoints.push(line_snapshot(spec.name, &grid, s, t, components, &primitive)),
    )?;
    let snapshot = line_snapshot(spec.name, &grid, &state, stats.time, components, &primitive);
    Ok(Outcome {
        snapshot,
        checkpoints,
        stats,
    })
}

/// Line boundaries are either the Euler ones of the catalog or periodic.
fn boundary_1d<const M: usize>(name: ProblemName) -> Result<hweno_core::BoundarySpec1D<f64, M>, BenchError> {
    use hweno_core::BoundaryCondition as Bc;
    let b = catalog::boundary_1d(name);
    let convert = |c: &Bc<f64, 3>| -> Result<Bc<f64, M>, BenchError> {
        match c {
            Bc::Periodic => Ok(Bc::Periodic),
            Bc::Reflective => Ok(Bc::Reflective),
            Bc::Outflow => Ok(Bc::Outflow),
            _ => Err(BenchError::Config("line problems use periodic, reflective or outflow sides".into())),
        }
    };
    Ok(hweno_core::BoundarySpec1D {
        left: convert(&b.left)?,
        right: convert(&b.right)?,
    })
}

#[allow(clippy::too_many_arguments)]
fn solve_plane<const M: usize, L: ConservationLaw<f64, M>>(
    spec: &ProblemSpec,
    model: &L,
    grid: UniformGrid2D<f64>,
    boundary: hweno_core::BoundarySpec2D<f64, M>,
    obstacle: Option<StepObstacle>,
    options: SchemeOptions<f64>,
    mut state: State2D<f64, M>,
    config: &RunConfig<f64>,
    overrides: &Overrides,
    components: &[&str],
    primitive: impl Fn(&[f64; M]) -> Vec<f64>,
) -> Result<Outcome, BenchError> {
    let mut solver = Solver2D::new(model, grid, boundary, options)?;
    if let Some(o) = obstacle {
        solver = solver.with_obstacle(o);
    }
    let mut checkpoints = Vec::new();
    let stats = segmented_run(
        &mut state,
        config,
        &overrides.checkpoints,
        |s, t, c| Ok(solver.run(s, t, c)?),
        |s, t| checkpoints.push(plane_snapshot(spec.name, &grid, s, t, obstacle.as_ref(), components, &primitive)),
    )?;
    let snapshot = plane_snapshot(spec.name, &grid, &state, stats.time, obstacle.as_ref(), components, &primitive);
    Ok(Outcome {
        snapshot,
        checkpoints,
        stats,
    })
}

/// Error of the designated component against the exact solution.
fn accuracy_norms(snapshot: &Snapshot) -> Result<Option<ErrorNorms>, BenchError> {
    let t = snapshot.time;
    let mut exact_values = Vec::with_capacity(snapshot.nx * snapshot.ny);
    for j in 0..snapshot.ny {
        for i in 0..snapshot.nx {
            let (x, y) = snapshot.center(i, j);
            exact_values.push(match snapshot.problem {
                ProblemName::Burgers1dAcc => exact::exact_burgers_1d(x, t)?,
                ProblemName::Burgers2dAcc => exact::exact_burgers_2d(x, y, t)?,
                ProblemName::Euler1dAcc => exact::exact_euler_advection_1d(x, t).rho,
                ProblemName::Euler2dAcc => exact::exact_euler_advection_2d(x, y, t).rho,
                _ => return Ok(None),
            });
        }
    }
    let volume = snapshot.dx() * snapshot.dy();
    error_norms(&snapshot.values[0], &exact_values, volume).map(Some)
}

/// Component whose error the accuracy tables report.
pub fn error_component(name: ProblemName) -> &'static str {
    match name {
        ProblemName::Burgers1dAcc | ProblemName::Burgers2dAcc => "u",
        _ => "rho",
    }
}

pub fn run_catalog_problem(name: ProblemName, resolution: Resolution, overrides: &Overrides) -> Result<RunResult, BenchError> {
    let spec = problem_spec(name);
    if resolution.ny.is_some() != spec.y_range.is_some() {
        return Err(BenchError::Config(format!("{name} needs a {} resolution", if name.is_2d() { "2D" } else { "1D" })));
    }
    let mut options = SchemeOptions::new(overrides.weights(&spec)?);
    options.source_in_derivatives = spec.source_in_derivatives;
    let config = run_config(&spec, overrides);
    config.validate()?;
    let gamma_gas = spec.gamma_gas.unwrap_or(1.4);
    let start = Instant::now();

    let outcome = match name {
        ProblemName::Burgers1dAcc => {
            let grid = UniformGrid1D::new(spec.x_range.0, spec.x_range.1, resolution.nx)?;
            let state = State1D::from_fn(&grid, catalog::burgers1d_initial);
            let model = ScalarModel::burgers();
            solve_line(&spec, &model, grid, options, state, &config, overrides, &["u"], |q| vec![q[0]])?
        }
        ProblemName::Euler1dAcc | ProblemName::ShuOsher | ProblemName::BlastWave => {
            let grid = UniformGrid1D::new(spec.x_range.0, spec.x_range.1, resolution.nx)?;
            let model = Euler1D::new(gamma_gas)?;
            let initial = match name {
                ProblemName::Euler1dAcc => catalog::euler1d_acc_initial,
                ProblemName::ShuOsher => catalog::shu_osher_initial,
                _ => catalog::blast_wave_initial,
            };
            let state = State1D::from_fn(&grid, |x| initial(&model, x));
            solve_line(&spec, &model, grid, options, state, &config, overrides, &EULER_1D, euler1d_primitive(&model))?
        }
        ProblemName::Burgers2dAcc => {
            let grid = plane_grid(&spec, resolution)?;
            let state = State2D::from_fn(&grid, catalog::burgers2d_initial);
            let model = ScalarModel::burgers();
            let boundary = hweno_core::BoundarySpec2D::periodic();
            solve_plane(&spec, &model, grid, boundary, None, options, state, &config, overrides, &["u"], |q| vec![q[0]])?
        }
        _ => {
            let grid = plane_grid(&spec, resolution)?;
            let model = if spec.gravity != 0.0 {
                Euler2D::with_gravity(gamma_gas, spec.gravity)?
            } else {
                Euler2D::new(gamma_gas)?
            };
            let obstacle = match name {
                ProblemName::ForwardStep => Some(forward_step_geometry_mask(&grid)?.obstacle),
                _ => None,
            };
            let mut state = State2D::from_fn(&grid, |x, y| match name {
                ProblemName::Euler2dAcc => catalog::euler2d_acc_initial(&model, x, y),
                ProblemName::DoubleMach => catalog::double_mach_initial(&model, x, y),
                ProblemName::ForwardStep => catalog::forward_step_initial(&model),
                ProblemName::Mach2000Jet => catalog::jet_initial(&model),
                _ => catalog::rayleigh_taylor_initial(&model, x, y),
            });
            if name == ProblemName::RayleighTaylor {
                catalog::symmetrize_about_midline(&model, &mut state);
            }
            let boundary = catalog::boundary_2d(name, &model);
            solve_plane(&spec, &model, grid, boundary, obstacle, options, state, &config, overrides, &EULER_2D, euler2d_primitive(&model))?
        }
    };
    let seconds = start.elapsed().as_secs_f64();
    let norms = accuracy_norms(&outcome.snapshot)?;
    Ok(RunResult {
        problem: name,
        resolution,
        snapshot: outcome.snapshot,
        checkpoints: outcome.checkpoints,
        norms,
        stats: outcome.stats,
        seconds,
    })
}

fn plane_grid(spec: &ProblemSpec, resolution: Resolution) -> Result<UniformGrid2D<f64>, BenchError> {
    let y_range = spec.y_range.ok_or_else(|| BenchError::Config("not a 2D problem".into()))?;
    let ny = resolution.ny.ok_or_else(|| BenchError::Config("missing ny".into()))?;
    Ok(UniformGrid2D::new(spec.x_range, resolution.nx, y_range, ny)?)
}

/// Runs an accuracy problem at each resolution (`nx`; square grids in 2D).
pub fn accuracy_table(name: ProblemName, resolutions: &[usize], overrides: &Overrides) -> Result<ErrorReport, BenchError> {
    if !name.is_accuracy() {
        return Err(BenchError::Config(format!("{name} has no exact solution")));
    }
    let spec = problem_spec(name);
    let mut report = ErrorReport::new(name.as_str(), error_component(name));
    for &n in resolutions {
        let r = run_catalog_problem(name, spec.resolution(n, None), overrides)?;
        report.rows.push(ErrorRow {
            n,
            norms: r.norms.expect("accuracy problems report norms"),
            seconds: r.seconds,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_mask_alignment() {
        let g = UniformGrid2D::new((0.0, 3.0), 960, (0.0, 1.0), 320).unwrap();
        let m = forward_step_geometry_mask(&g).unwrap();
        assert_eq!(m.obstacle.i_wall, 192);
        assert_eq!(m.obstacle.j_top, 64);
        assert_eq!(m.blocked.iter().filter(|b| **b).count(), (960 - 192) * 64);
        let g = UniformGrid2D::new((0.0, 3.0), 961, (0.0, 1.0), 320).unwrap();
        assert!(matches!(forward_step_geometry_mask(&g), Err(BenchError::Config(_))));
        let g = UniformGrid2D::new((0.0, 3.0), 960, (0.0, 1.0), 322).unwrap();
        assert!(forward_step_geometry_mask(&g).is_err());
        let g = UniformGrid2D::new((0.0, 2.0), 960, (0.0, 1.0), 320).unwrap();
        assert!(forward_step_geometry_mask(&g).is_err());
    }

    #[test]
    fn overrides_reach_the_weights() {
        let spec = problem_spec(ProblemName::Mach2000Jet);
        let w = Overrides::default().weights(&spec).unwrap();
        assert_eq!(w.gamma[0], 0.8);
        let o = Overrides {
            gamma0: Some(1.0 / 3.0),
            linear_weights_only: true,
            ..Default::default()
        };
        let w = o.weights(&spec).unwrap();
        assert_eq!(w.gamma[0], 1.0 / 3.0);
        assert!(w.linear_only);
        let bad = Overrides {
            gamma0: Some(1.2),
            ..Default::default()
        };
        assert!(bad.weights(&spec).is_err());
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let r = run_catalog_problem(ProblemName::Burgers1dAcc, Resolution::plane(10, 10), &Overrides::default());
        assert!(matches!(r, Err(BenchError::Config(_))));
    }

    #[test]
    fn checkpoints_are_recorded_in_order() {
        let o = Overrides {
            t_final: Some(0.1),
            checkpoints: vec![0.05, 0.02, 0.5],
            ..Default::default()
        };
        let r = run_catalog_problem(ProblemName::Burgers1dAcc, Resolution::line(40), &o).unwrap();
        let times: Vec<f64> = r.checkpoints.iter().map(|s| s.time).collect();
        assert_eq!(times, vec![0.02, 0.05]);
        assert_eq!(r.snapshot.time, 0.1);
        let e = r.norms.unwrap().linf;
        assert!(e < 2e-3, "{e}");
    }

    #[test]
    fn blocked_cells_are_nan() {
        let o = Overrides {
            t_final: Some(0.002),
            ..Default::default()
        };
        let r = run_catalog_problem(ProblemName::ForwardStep, Resolution::plane(30, 10), &o).unwrap();
        let s = &r.snapshot;
        assert!(s.value(0, 29, 0).is_nan());
        assert!(s.value(0, 29, 2).is_finite());
        assert!(s.value(0, 5, 0).is_finite());
        assert!(s.is_physical());
    }
}
