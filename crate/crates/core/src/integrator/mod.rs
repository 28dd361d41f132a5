//! Semi-discrete operators, SSP-RK3 time stepping with limited derivatives,
//! and CFL time-step control.
//!
//! The spatial operator works line by line: rows for the x-direction and
//! columns for the y-direction. Each line is copied with its ghost cells into
//! scratch storage, so walls inside the domain (the forward-facing step) are
//! applied to the copy without touching the field.

mod sweep;

pub use sweep::{sweep_line, LineOutput, LineScratch};

use rayon::prelude::*;

use crate::boundaries::{fill_ghosts_1d, fill_ghosts_2d, fill_line, BoundaryCondition, BoundarySpec1D, BoundarySpec2D, End, StepObstacle};
use crate::error::{CellIndex, HwenoError, Result};
use crate::flux::CorrectionVariant;
use crate::hweno::WeightConfig;
use crate::mesh::{Field1D, Field2D, State1D, State2D, UniformGrid1D, UniformGrid2D, GHOST};
use crate::models::{Axis, ConservationLaw, FaceAverage};
use crate::scalar::Real;

/// Default Courant number.
pub const DEFAULT_CFL: f64 = 0.6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeOptions<T> {
    pub weights: WeightConfig<T>,
    pub correction: CorrectionVariant,
    pub average: FaceAverage,
    /// Interpolate in characteristic variables when the model has a basis.
    pub characteristic: bool,
    /// Replace derivatives by their limited values between stages. Turning
    /// this off is a diagnostic hook.
    pub limit_derivatives: bool,
    /// Add the source Jacobian to the derivative equations.
    pub source_in_derivatives: bool,
}

impl<T: Real> SchemeOptions<T> {
    pub fn new(weights: WeightConfig<T>) -> Self {
        Self {
            weights,
            correction: CorrectionVariant::Outer,
            average: FaceAverage::Roe,
            characteristic: true,
            limit_derivatives: true,
            source_in_derivatives: false,
        }
    }
}

impl SchemeOptions<f64> {
    pub fn default_1d() -> Self {
        Self::new(WeightConfig::default_1d())
    }

    pub fn default_2d() -> Self {
        Self::new(WeightConfig::default_2d())
    }
}

/// Time integration settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig<T> {
    pub cfl: T,
    pub t_final: T,
    /// Ceiling on the first step only.
    pub dt_initial_cap: Option<T>,
    /// Ceiling on every step.
    pub dt_max: Option<T>,
    /// When set, the CFL law uses `h^p` in place of `h`. With `p = 5/3` the
    /// third-order time error scales like the fifth-order space error.
    pub spacing_power: Option<T>,
    pub max_steps: Option<usize>,
}

impl<T: Real> RunConfig<T> {
    pub fn new(t_final: T) -> Self {
        Self {
            cfl: T::lit(DEFAULT_CFL),
            t_final,
            dt_initial_cap: None,
            dt_max: None,
            spacing_power: None,
            max_steps: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > T::zero() && self.cfl <= T::one()) {
            return Err(HwenoError::InvalidConfig(format!("cfl must lie in (0, 1], got {}", self.cfl)));
        }
        if !(self.t_final >= T::zero()) || !self.t_final.is_finite() {
            return Err(HwenoError::InvalidConfig(format!("invalid final time {}", self.t_final)));
        }
        if let Some(p) = self.spacing_power {
            if !(p >= T::one()) {
                return Err(HwenoError::InvalidConfig(format!("spacing power must be at least 1, got {p}")));
            }
        }
        for cap in [self.dt_initial_cap, self.dt_max].into_iter().flatten() {
            if !(cap > T::zero()) {
                return Err(HwenoError::InvalidConfig(format!("time-step caps must be positive, got {cap}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunStats<T> {
    pub steps: usize,
    pub time: T,
    pub min_dt: T,
    pub max_dt: T,
}

/// `cfl / sum(alpha_d / h_d)`, capped and clipped so the step lands on `t_final`.
/// With all wave speeds zero the step is `t_final - t`.
pub fn compute_dt<T: Real>(speeds: &[(T, T)], cfl: T, t: T, t_final: T, cap: Option<T>) -> T {
    let mut rate = T::zero();
    for &(alpha, h) in speeds {
        rate = rate + alpha / h;
    }
    let remaining = t_final - t;
    let mut dt = if rate > T::zero() { cfl / rate } else { remaining };
    if let Some(c) = cap {
        dt = dt.min(c);
    }
    if t + dt >= t_final {
        dt = remaining;
    }
    dt
}

/// Storage that the Runge-Kutta stages combine, ghosts included.
pub trait StageVector<T>: Clone {
    /// `self += dt * rate`
    fn add_scaled(&mut self, dt: T, rate: &Self);
    /// `self = a * x + b * self`
    fn blend(&mut self, a: T, x: &Self, b: T);
}

impl<T: Real> StageVector<T> for Vec<T> {
    fn add_scaled(&mut self, dt: T, rate: &Self) {
        for (s, r) in self.iter_mut().zip(rate) {
            *s = *s + dt * *r;
        }
    }

    fn blend(&mut self, a: T, x: &Self, b: T) {
        for (s, xi) in self.iter_mut().zip(x) {
            *s = a * *xi + b * *s;
        }
    }
}

fn add_scaled_cells<T: Real, const M: usize>(s: &mut [[T; M]], dt: T, r: &[[T; M]]) {
    for (a, b) in s.iter_mut().zip(r) {
        for c in 0..M {
            a[c] = a[c] + dt * b[c];
        }
    }
}

fn blend_cells<T: Real, const M: usize>(s: &mut [[T; M]], a: T, x: &[[T; M]], b: T) {
    for (si, xi) in s.iter_mut().zip(x) {
        for c in 0..M {
            si[c] = a * xi[c] + b * si[c];
        }
    }
}

impl<T: Real, const M: usize> StageVector<T> for State1D<T, M> {
    fn add_scaled(&mut self, dt: T, rate: &Self) {
        add_scaled_cells(self.u.as_mut_slice(), dt, rate.u.as_slice());
        add_scaled_cells(self.v.as_mut_slice(), dt, rate.v.as_slice());
    }

    fn blend(&mut self, a: T, x: &Self, b: T) {
        blend_cells(self.u.as_mut_slice(), a, x.u.as_slice(), b);
        blend_cells(self.v.as_mut_slice(), a, x.v.as_slice(), b);
    }
}

impl<T: Real, const M: usize> StageVector<T> for State2D<T, M> {
    fn add_scaled(&mut self, dt: T, rate: &Self) {
        add_scaled_cells(self.u.as_mut_slice(), dt, rate.u.as_slice());
        add_scaled_cells(self.v.as_mut_slice(), dt, rate.v.as_slice());
        add_scaled_cells(self.w.as_mut_slice(), dt, rate.w.as_slice());
    }

    fn blend(&mut self, a: T, x: &Self, b: T) {
        blend_cells(self.u.as_mut_slice(), a, x.u.as_slice(), b);
        blend_cells(self.v.as_mut_slice(), a, x.v.as_slice(), b);
        blend_cells(self.w.as_mut_slice(), a, x.w.as_slice(), b);
    }
}

/// Third-order SSP Runge-Kutta step.
///
/// `op(state, stage, t)` returns the rate of `state` and overwrites the
/// derivative parts of `state` with their limited values; every stage then
/// starts from the limited derivatives, as in
/// `v1 = ṽn + dt L`, `v2 = 3/4 ṽn + 1/4 (ṽ1 + dt L)`, `vn+1 = 1/3 ṽn + 2/3 (ṽ2 + dt L)`.
pub fn ssp_rk3<T: Real, S: StageVector<T>>(
    state: &mut S,
    t: T,
    dt: T,
    mut op: impl FnMut(&mut S, usize, T) -> Result<S>,
) -> Result<()> {
    let rate = op(state, 1, t).map_err(|e| e.at_stage(1, t.to_f64_lossy()))?;
    let base = state.clone();
    state.add_scaled(dt, &rate);

    let t1 = t + dt;
    let rate = op(state, 2, t1).map_err(|e| e.at_stage(2, t1.to_f64_lossy()))?;
    state.add_scaled(dt, &rate);
    state.blend(T::lit(0.75), &base, T::lit(0.25));

    let t2 = t + T::lit(0.5) * dt;
    let rate = op(state, 3, t2).map_err(|e| e.at_stage(3, t2.to_f64_lossy()))?;
    state.add_scaled(dt, &rate);
    state.blend(T::one() / T::lit(3.0), &base, T::lit(2.0) / T::lit(3.0));
    Ok(())
}

/// Rates of a 1D state together with the limited derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct SemiDiscrete1D<T, const M: usize> {
    pub rate: State1D<T, M>,
    pub v_tilde: Field1D<T, M>,
}

/// Rates of a 2D state together with the limited derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct SemiDiscrete2D<T, const M: usize> {
    pub rate: State2D<T, M>,
    pub v_tilde: Field2D<T, M>,
    pub w_tilde: Field2D<T, M>,
}

fn located(err: HwenoError, cell: CellIndex) -> HwenoError {
    err.at_cell(cell)
}

/// Semi-discrete operator of a 1D state whose ghosts are already filled.
pub fn spatial_operator_1d<T: Real, const M: usize, L: ConservationLaw<T, M> + ?Sized>(
    model: &L,
    state: &State1D<T, M>,
    grid: &UniformGrid1D<T>,
    opts: &SchemeOptions<T>,
) -> Result<SemiDiscrete1D<T, M>> {
    let n = state.n_cells();
    let alpha = crate::models::max_wave_speed(model, state.u.as_slice(), Axis::X)
        .map_err(|e| relocate_storage_1d(e))?;
    let mut scratch = LineScratch::new();
    scratch.u.extend_from_slice(state.u.as_slice());
    scratch.along.extend_from_slice(state.v.as_slice());
    let mut out = LineOutput::new();
    sweep_line(model, Axis::X, grid.dx, alpha, opts, n, false, &mut scratch, &mut out)
        .map_err(|(i, e)| located(e, CellIndex::Line(i as isize)))?;
    let mut rate = State1D::zeros(n);
    let mut v_tilde = state.v.clone();
    rate.u.interior_mut().copy_from_slice(&out.du);
    rate.v.interior_mut().copy_from_slice(&out.d_along);
    v_tilde.interior_mut().copy_from_slice(&out.tilde);
    if model.has_source() {
        for i in 1..=n as isize {
            let u = state.u.get(i);
            let s = model.source(&u);
            let r = rate.u.get_mut(i);
            for c in 0..M {
                r[c] = r[c] + s[c];
            }
            if opts.source_in_derivatives {
                let s = model.source_jacobian_apply(&u, &state.v.get(i));
                let r = rate.v.get_mut(i);
                for c in 0..M {
                    r[c] = r[c] + s[c];
                }
            }
        }
    }
    Ok(SemiDiscrete1D { rate, v_tilde })
}

/// Storage index to 1-based cell index.
fn relocate_storage_1d(e: HwenoError) -> HwenoError {
    match e {
        HwenoError::Positivity { cell: CellIndex::Line(k), .. } | HwenoError::NonFinite { cell: CellIndex::Line(k), .. } => {
            e.at_cell(CellIndex::Line(k + 1 - GHOST as isize))
        }
        other => other,
    }
}

/// One-dimensional solver: model, grid, boundaries and scheme settings.
pub struct Solver1D<'a, T, const M: usize, L: ?Sized> {
    pub model: &'a L,
    pub grid: UniformGrid1D<T>,
    pub boundary: BoundarySpec1D<T, M>,
    pub options: SchemeOptions<T>,
}

impl<'a, T: Real, const M: usize, L: ConservationLaw<T, M> + ?Sized> Solver1D<'a, T, M, L> {
    pub fn new(model: &'a L, grid: UniformGrid1D<T>, boundary: BoundarySpec1D<T, M>, options: SchemeOptions<T>) -> Result<Self> {
        boundary.validate(&grid)?;
        Ok(Self { model, grid, boundary, options })
    }

    pub fn fill_ghosts(&self, state: &mut State1D<T, M>, t: T) {
        fill_ghosts_1d(self.model, state, &self.boundary, &self.grid, t);
    }

    /// Fills ghosts at `t` and evaluates the semi-discrete operator.
    pub fn operator(&self, state: &mut State1D<T, M>, t: T) -> Result<SemiDiscrete1D<T, M>> {
        self.fill_ghosts(state, t);
        spatial_operator_1d(self.model, state, &self.grid, &self.options)
    }

    pub fn stable_dt(&self, state: &mut State1D<T, M>, t: T, config: &RunConfig<T>, first: bool) -> Result<T> {
        self.fill_ghosts(state, t);
        let alpha = crate::models::max_wave_speed(self.model, state.u.as_slice(), Axis::X).map_err(relocate_storage_1d)?;
        Ok(compute_dt(&[(alpha, effective_spacing(config, self.grid.dx))], config.cfl, t, config.t_final, step_cap(config, first)))
    }

    pub fn step(&self, state: &mut State1D<T, M>, t: T, dt: T) -> Result<()> {
        ssp_rk3(state, t, dt, |s, _, ts| {
            let sd = self.operator(s, ts)?;
            s.v = sd.v_tilde;
            Ok(sd.rate)
        })
    }

    /// Advances from `t0` to `config.t_final`.
    pub fn run(&self, state: &mut State1D<T, M>, t0: T, config: &RunConfig<T>) -> Result<RunStats<T>> {
        config.validate()?;
        run_loop(
            state,
            config,
            t0,
            |s, t, first| self.stable_dt(s, t, config, first),
            |s, t, dt| {
                self.step(s, t, dt)?;
                s.check_finite()
            },
        )
    }
}

fn effective_spacing<T: Real>(config: &RunConfig<T>, h: T) -> T {
    config.spacing_power.map_or(h, |p| h.powf(p))
}

fn step_cap<T: Real>(config: &RunConfig<T>, first: bool) -> Option<T> {
    let first_cap = if first { config.dt_initial_cap } else { None };
    match (first_cap, config.dt_max) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

fn run_loop<T: Real, S>(
    state: &mut S,
    config: &RunConfig<T>,
    t0: T,
    mut dt_at: impl FnMut(&mut S, T, bool) -> Result<T>,
    mut advance: impl FnMut(&mut S, T, T) -> Result<()>,
) -> Result<RunStats<T>> {
    let mut t = t0;
    let mut stats = RunStats {
        steps: 0,
        time: t0,
        min_dt: T::infinity(),
        max_dt: T::zero(),
    };
    while t < config.t_final {
        if let Some(max) = config.max_steps {
            if stats.steps >= max {
                break;
            }
        }
        let dt = dt_at(state, t, stats.steps == 0)?;
        if !(dt > T::zero()) {
            return Err(HwenoError::NonFinite {
                cell: CellIndex::Line(0),
                at: crate::error::StageInfo { stage: None, time: Some(t.to_f64_lossy()) },
                what: "time step",
            });
        }
        advance(state, t, dt)?;
        let last = t + dt >= config.t_final;
        t = if last { config.t_final } else { t + dt };
        stats.steps += 1;
        stats.min_dt = stats.min_dt.min(dt);
        stats.max_dt = stats.max_dt.max(dt);
    }
    stats.time = t;
    Ok(stats)
}

/// Two-dimensional solver with an optional step obstacle.
pub struct Solver2D<'a, T, const M: usize, L: ?Sized> {
    pub model: &'a L,
    pub grid: UniformGrid2D<T>,
    pub boundary: BoundarySpec2D<T, M>,
    pub options: SchemeOptions<T>,
    pub obstacle: Option<StepObstacle>,
}

impl<'a, T: Real, const M: usize, L: ConservationLaw<T, M> + ?Sized> Solver2D<'a, T, M, L> {
    pub fn new(model: &'a L, grid: UniformGrid2D<T>, boundary: BoundarySpec2D<T, M>, options: SchemeOptions<T>) -> Result<Self> {
        boundary.validate(&grid)?;
        Ok(Self {
            model,
            grid,
            boundary,
            options,
            obstacle: None,
        })
    }

    pub fn with_obstacle(mut self, obstacle: StepObstacle) -> Self {
        self.obstacle = Some(obstacle);
        self
    }

    pub fn fill_ghosts(&self, state: &mut State2D<T, M>, t: T) {
        fill_ghosts_2d(self.model, state, &self.boundary, &self.grid, t);
    }

    fn is_blocked(&self, i: isize, j: isize) -> bool {
        self.obstacle.map_or(false, |o| o.is_blocked(i, j))
    }

    /// Max spectral radius along each axis over all open cells and ghosts.
    pub fn wave_speeds(&self, state: &State2D<T, M>) -> Result<(T, T)> {
        let g = GHOST as isize;
        let (nx, ny) = (state.nx() as isize, state.ny() as isize);
        let rows: Vec<isize> = ((1 - g)..=(ny + g)).collect();
        let per_row: Vec<Result<(T, T)>> = rows
            .par_iter()
            .map(|&j| {
                let mut ax = T::zero();
                let mut ay = T::zero();
                for i in (1 - g)..=(nx + g) {
                    let inside_x = i >= 1 && i <= nx;
                    let inside_y = j >= 1 && j <= ny;
                    if (!inside_x && !inside_y) || self.is_blocked(i, j) {
                        continue;
                    }
                    let u = state.u.get(i, j);
                    if let Err(detail) = self.model.validate(&u) {
                        return Err(HwenoError::Positivity {
                            cell: CellIndex::Plane(i, j),
                            at: Default::default(),
                            detail,
                        });
                    }
                    ax = ax.max(self.model.spectral_radius(&u, Axis::X));
                    ay = ay.max(self.model.spectral_radius(&u, Axis::Y));
                }
                Ok((ax, ay))
            })
            .collect();
        let mut ax = T::zero();
        let mut ay = T::zero();
        for r in per_row {
            let (a, b) = r?;
            ax = ax.max(a);
            ay = ay.max(b);
        }
        Ok((ax, ay))
    }

    /// Semi-discrete operator of a state whose ghosts are already filled.
    pub fn spatial_operator(&self, state: &State2D<T, M>) -> Result<SemiDiscrete2D<T, M>> {
        let (ax, ay) = self.wave_speeds(state)?;
        self.spatial_operator_with_speeds(state, ax, ay)
    }

    pub fn spatial_operator_with_speeds(&self, state: &State2D<T, M>, ax: T, ay: T) -> Result<SemiDiscrete2D<T, M>> {
        let (nx, ny) = (state.nx(), state.ny());
        let g = GHOST as isize;
        let model = self.model;
        let opts = &self.options;
        let sx = model.reflection_signs(Axis::X);
        let sy = model.reflection_signs(Axis::Y);

        // x-sweeps over rows
        let rows: Vec<Result<(usize, LineOutput<T, M>)>> = (1..=ny as isize)
            .into_par_iter()
            .map_init(LineScratch::new, |scratch, j| {
                let n = self.obstacle.and_then(|o| o.row_end(j)).unwrap_or(nx);
                let start = state.u.offset(1 - g, j);
                let len = n + 2 * GHOST;
                scratch.u.clear();
                scratch.u.extend_from_slice(&state.u.as_slice()[start..start + len]);
                scratch.along.clear();
                scratch.along.extend_from_slice(&state.v.as_slice()[start..start + len]);
                scratch.cross.clear();
                scratch.cross.extend_from_slice(&state.w.as_slice()[start..start + len]);
                if n < nx {
                    wall(&sx, End::High, n, scratch);
                }
                let mut out = LineOutput::new();
                sweep_line(model, Axis::X, self.grid.x.dx, ax, opts, n, true, scratch, &mut out)
                    .map_err(|(i, e)| located(e, CellIndex::Plane(i as isize, j)))?;
                Ok((n, out))
            })
            .collect();

        // y-sweeps over columns
        let cols: Vec<Result<(usize, LineOutput<T, M>)>> = (1..=nx as isize)
            .into_par_iter()
            .map_init(LineScratch::new, |scratch, i| {
                let j0 = self.obstacle.and_then(|o| o.column_start(i)).unwrap_or(1);
                let n = ny + 1 - j0;
                let mut col = Vec::new();
                state.u.column_into(i, &mut col);
                let skip = j0 - 1;
                scratch.u.clear();
                scratch.u.extend_from_slice(&col[skip..]);
                state.w.column_into(i, &mut col);
                scratch.along.clear();
                scratch.along.extend_from_slice(&col[skip..]);
                state.v.column_into(i, &mut col);
                scratch.cross.clear();
                scratch.cross.extend_from_slice(&col[skip..]);
                if j0 > 1 {
                    wall(&sy, End::Low, n, scratch);
                }
                let mut out = LineOutput::new();
                sweep_line(model, Axis::Y, self.grid.y.dx, ay, opts, n, true, scratch, &mut out)
                    .map_err(|(k, e)| located(e, CellIndex::Plane(i, (k + skip) as isize)))?;
                Ok((skip, out))
            })
            .collect();

        let mut rate = State2D::zeros(nx, ny);
        let mut v_tilde = state.v.clone();
        let mut w_tilde = state.w.clone();
        for (jm1, r) in rows.into_iter().enumerate() {
            let (n, out) = r?;
            let j = jm1 as isize + 1;
            for i in 1..=n {
                let ii = i as isize;
                rate.u.set(ii, j, out.du[i - 1]);
                rate.v.set(ii, j, out.d_along[i - 1]);
                rate.w.set(ii, j, out.d_cross[i - 1]);
                v_tilde.set(ii, j, out.tilde[i - 1]);
            }
        }
        for (im1, r) in cols.into_iter().enumerate() {
            let (skip, out) = r?;
            let i = im1 as isize + 1;
            for (k, ((du, dw), (tw, dv))) in out
                .du
                .iter()
                .zip(&out.d_along)
                .zip(out.tilde.iter().zip(&out.d_cross))
                .enumerate()
            {
                let j = (k + 1 + skip) as isize;
                add_into(rate.u.get_mut(i, j), du);
                add_into(rate.w.get_mut(i, j), dw);
                add_into(rate.v.get_mut(i, j), dv);
                w_tilde.set(i, j, *tw);
            }
        }

        if model.has_source() {
            for j in 1..=ny as isize {
                for i in 1..=nx as isize {
                    if self.is_blocked(i, j) {
                        continue;
                    }
                    let u = state.u.get(i, j);
                    add_into(rate.u.get_mut(i, j), &model.source(&u));
                    if opts.source_in_derivatives {
                        add_into(rate.v.get_mut(i, j), &model.source_jacobian_apply(&u, &state.v.get(i, j)));
                        add_into(rate.w.get_mut(i, j), &model.source_jacobian_apply(&u, &state.w.get(i, j)));
                    }
                }
            }
        }
        Ok(SemiDiscrete2D { rate, v_tilde, w_tilde })
    }

    /// Fills ghosts at `t` and evaluates the semi-discrete operator.
    pub fn operator(&self, state: &mut State2D<T, M>, t: T) -> Result<SemiDiscrete2D<T, M>> {
        self.fill_ghosts(state, t);
        self.spatial_operator(state)
    }

    pub fn stable_dt(&self, state: &mut State2D<T, M>, t: T, config: &RunConfig<T>, first: bool) -> Result<T> {
        self.fill_ghosts(state, t);
        let (ax, ay) = self.wave_speeds(state)?;
        Ok(compute_dt(
            &[
                (ax, effective_spacing(config, self.grid.x.dx)),
                (ay, effective_spacing(config, self.grid.y.dx)),
            ],
            config.cfl,
            t,
            config.t_final,
            step_cap(config, first),
        ))
    }

    pub fn step(&self, state: &mut State2D<T, M>, t: T, dt: T) -> Result<()> {
        ssp_rk3(state, t, dt, |s, _, ts| {
            let sd = self.operator(s, ts)?;
            s.v = sd.v_tilde;
            s.w = sd.w_tilde;
            Ok(sd.rate)
        })
    }

    pub fn run(&self, state: &mut State2D<T, M>, t0: T, config: &RunConfig<T>) -> Result<RunStats<T>> {
        self.run_with(state, t0, config, |_, _, _| {})
    }

    /// Like [`run`](Self::run), calling `observe(state, t, step)` after every step.
    pub fn run_with(
        &self,
        state: &mut State2D<T, M>,
        t0: T,
        config: &RunConfig<T>,
        mut observe: impl FnMut(&State2D<T, M>, T, usize),
    ) -> Result<RunStats<T>> {
        config.validate()?;
        let mut step = 0;
        run_loop(
            state,
            config,
            t0,
            |s, t, first| self.stable_dt(s, t, config, first),
            |s, t, dt| {
                self.step(s, t, dt)?;
                s.check_finite()?;
                step += 1;
                observe(s, t + dt, step);
                Ok(())
            },
        )
    }
}

fn add_into<T: Real, const M: usize>(acc: &mut [T; M], x: &[T; M]) {
    for c in 0..M {
        acc[c] = acc[c] + x[c];
    }
}

/// Reflective fill of the scratch ghosts at an internal wall.
fn wall<T: Real, const M: usize>(signs: &[T; M], end: End, n: usize, s: &mut LineScratch<T, M>) {
    fill_line(
        &BoundaryCondition::Reflective,
        end,
        n,
        signs,
        &mut s.u,
        &mut s.along,
        Some(&mut s.cross),
        |_| (T::zero(), T::zero()),
        T::zero(),
    );
}
