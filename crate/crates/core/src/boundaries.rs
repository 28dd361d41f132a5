//! Ghost-cell fills.
//!
//! Each side of the domain carries a [`BoundaryCondition`]. Reflective walls
//! mirror the state with the model's sign pattern `S`: values become `S u`,
//! derivatives normal to the wall become `-S v` and derivatives along the wall
//! become `S w`. Inflow and exact-shock fills set derivative ghosts to zero;
//! outflow copies the nearest interior cell.
//!
//! In 2D the x-sides are filled first on interior rows, then the y-sides on
//! every column, so corner ghosts take the y-side rule applied to the already
//! extended rows.

use crate::error::{HwenoError, Result};
use crate::mesh::{State1D, State2D, UniformGrid1D, UniformGrid2D, GHOST};
use crate::models::{Axis, ConservationLaw};
use crate::scalar::Real;

/// Analytic pre/post-shock states of a straight oblique shock, used as a
/// time-dependent boundary fill.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockFill<T, const M: usize> {
    /// Conserved state behind the shock (`x < x_s`).
    pub behind: [T; M],
    /// Conserved state ahead of the shock.
    pub ahead: [T; M],
    pub geometry: ShockGeometry<T>,
}

/// Shock line `x_s(y, t) = x0 + (y + speed * t) * slope`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockGeometry<T> {
    pub x0: T,
    pub slope: T,
    pub speed: T,
}

impl<T: Real> ShockGeometry<T> {
    /// Mach 10 shock at 60 degrees to the wall, starting at `x = 1/6`.
    pub fn double_mach() -> Self {
        Self {
            x0: T::lit(1.0 / 6.0),
            slope: T::one() / T::lit(3.0).sqrt(),
            speed: T::lit(20.0),
        }
    }

    #[inline]
    pub fn position(&self, y: T, t: T) -> T {
        self.x0 + (y + self.speed * t) * self.slope
    }
}

/// Shock position of the double Mach reflection problem.
pub fn double_mach_shock_position<T: Real>(y: T, t: T) -> T {
    ShockGeometry::double_mach().position(y, t)
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryCondition<T, const M: usize> {
    Periodic,
    Reflective,
    /// Prescribed conserved state with zero derivatives.
    Inflow([T; M]),
    Outflow,
    /// Different conditions on consecutive intervals of the side.
    Segmented(Vec<Segment<T, M>>),
    ExactShock(ShockFill<T, M>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Segment<T, const M: usize> {
    pub start: T,
    pub end: T,
    pub condition: BoundaryCondition<T, M>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySpec1D<T, const M: usize> {
    pub left: BoundaryCondition<T, M>,
    pub right: BoundaryCondition<T, M>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySpec2D<T, const M: usize> {
    pub left: BoundaryCondition<T, M>,
    pub right: BoundaryCondition<T, M>,
    pub bottom: BoundaryCondition<T, M>,
    pub top: BoundaryCondition<T, M>,
}

impl<T: Real, const M: usize> BoundarySpec1D<T, M> {
    pub fn periodic() -> Self {
        Self {
            left: BoundaryCondition::Periodic,
            right: BoundaryCondition::Periodic,
        }
    }

    pub fn validate(&self, grid: &UniformGrid1D<T>) -> Result<()> {
        check_pair(&self.left, &self.right, "left/right")?;
        check_side(&self.left, grid.x_min, grid.x_max, false)?;
        check_side(&self.right, grid.x_min, grid.x_max, false)
    }
}

impl<T: Real, const M: usize> BoundarySpec2D<T, M> {
    pub fn periodic() -> Self {
        Self::uniform(BoundaryCondition::Periodic)
    }

    pub fn uniform(condition: BoundaryCondition<T, M>) -> Self {
        Self {
            left: condition.clone(),
            right: condition.clone(),
            bottom: condition.clone(),
            top: condition,
        }
    }

    pub fn validate(&self, grid: &UniformGrid2D<T>) -> Result<()> {
        check_pair(&self.left, &self.right, "left/right")?;
        check_pair(&self.bottom, &self.top, "bottom/top")?;
        check_side(&self.left, grid.y.x_min, grid.y.x_max, true)?;
        check_side(&self.right, grid.y.x_min, grid.y.x_max, true)?;
        check_side(&self.bottom, grid.x.x_min, grid.x.x_max, true)?;
        check_side(&self.top, grid.x.x_min, grid.x.x_max, true)
    }
}

fn is_periodic<T, const M: usize>(c: &BoundaryCondition<T, M>) -> bool {
    matches!(c, BoundaryCondition::Periodic)
}

fn check_pair<T, const M: usize>(a: &BoundaryCondition<T, M>, b: &BoundaryCondition<T, M>, which: &str) -> Result<()> {
    if is_periodic(a) != is_periodic(b) {
        return Err(HwenoError::Boundary(format!("unmatched periodic pairing on {which} sides")));
    }
    Ok(())
}

fn check_side<T: Real, const M: usize>(c: &BoundaryCondition<T, M>, lo: T, hi: T, two_d: bool) -> Result<()> {
    match c {
        BoundaryCondition::Segmented(segs) => {
            if !two_d {
                return Err(HwenoError::Boundary("segmented sides need a 2D grid".into()));
            }
            if segs.is_empty() {
                return Err(HwenoError::Boundary("empty segment list".into()));
            }
            let tol = T::lit(1e-12) * (hi - lo);
            if (segs[0].start - lo).abs() > tol || (segs[segs.len() - 1].end - hi).abs() > tol {
                return Err(HwenoError::Boundary("segments do not cover the side".into()));
            }
            for pair in segs.windows(2) {
                if (pair[0].end - pair[1].start).abs() > tol {
                    return Err(HwenoError::Boundary("segments do not tile the side".into()));
                }
            }
            for s in segs {
                if !(s.end > s.start) {
                    return Err(HwenoError::Boundary("empty segment".into()));
                }
                if matches!(s.condition, BoundaryCondition::Segmented(_) | BoundaryCondition::Periodic) {
                    return Err(HwenoError::Boundary("segments cannot be periodic or nested".into()));
                }
            }
            Ok(())
        }
        BoundaryCondition::ExactShock(_) if !two_d => Err(HwenoError::Boundary("exact-shock fill needs a 2D grid".into())),
        _ => Ok(()),
    }
}

/// Resolves a segmented side at coordinate `s` along it.
fn resolve<T: Real, const M: usize>(c: &BoundaryCondition<T, M>, s: T) -> &BoundaryCondition<T, M> {
    match c {
        BoundaryCondition::Segmented(segs) => {
            let seg = segs
                .iter()
                .find(|seg| s < seg.end)
                .unwrap_or(&segs[segs.len() - 1]);
            &seg.condition
        }
        other => other,
    }
}

#[inline]
fn scale<T: Real, const M: usize>(s: &[T; M], x: [T; M]) -> [T; M] {
    std::array::from_fn(|k| s[k] * x[k])
}

#[inline]
fn neg_scale<T: Real, const M: usize>(s: &[T; M], x: [T; M]) -> [T; M] {
    std::array::from_fn(|k| -(s[k] * x[k]))
}

/// Where a ghost layer sits: low or high end of a line of `n` cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    Low,
    High,
}

/// Interior cell that ghost `m` (1 = nearest) mirrors, in 1-based indices.
#[inline]
pub fn mirror_index(end: End, m: usize, n: usize) -> (isize, isize) {
    match end {
        End::Low => (1 - m as isize, m as isize),
        End::High => ((n + m) as isize, (n + 1 - m) as isize),
    }
}

/// Interior cell copied into ghost `m` under periodicity.
#[inline]
pub fn periodic_index(end: End, m: usize, n: usize) -> (isize, isize) {
    match end {
        End::Low => (1 - m as isize, (n + 1 - m) as isize),
        End::High => ((n + m) as isize, m as isize),
    }
}

/// Ghost fill of one line: `u`, the derivative normal to the side `normal`,
/// and any derivatives along the side in `tangential`. All slices are whole
/// storage lines (ghosts included); `n` is the interior length. `at` is the
/// position of each ghost cell, used by the exact-shock fill.
#[allow(clippy::too_many_arguments)]
pub fn fill_line<T: Real, const M: usize>(
    condition: &BoundaryCondition<T, M>,
    end: End,
    n: usize,
    signs: &[T; M],
    u: &mut [[T; M]],
    normal: &mut [[T; M]],
    mut tangential: Option<&mut [[T; M]]>,
    shock_at: impl Fn(usize) -> (T, T),
    t: T,
) {
    let off = |i: isize| (i + GHOST as isize - 1) as usize;
    for m in 1..=GHOST {
        match condition {
            BoundaryCondition::Periodic => {
                let (g, s) = periodic_index(end, m, n);
                u[off(g)] = u[off(s)];
                normal[off(g)] = normal[off(s)];
                if let Some(w) = tangential.as_deref_mut() {
                    w[off(g)] = w[off(s)];
                }
            }
            BoundaryCondition::Reflective => {
                let (g, s) = mirror_index(end, m, n);
                u[off(g)] = scale(signs, u[off(s)]);
                normal[off(g)] = neg_scale(signs, normal[off(s)]);
                if let Some(w) = tangential.as_deref_mut() {
                    w[off(g)] = scale(signs, w[off(s)]);
                }
            }
            BoundaryCondition::Outflow => {
                let (g, _) = mirror_index(end, m, n);
                let s = match end {
                    End::Low => 1,
                    End::High => n as isize,
                };
                u[off(g)] = u[off(s)];
                normal[off(g)] = normal[off(s)];
                if let Some(w) = tangential.as_deref_mut() {
                    w[off(g)] = w[off(s)];
                }
            }
            BoundaryCondition::Inflow(state) => {
                let (g, _) = mirror_index(end, m, n);
                set_state(u, normal, tangential.as_deref_mut(), off(g), *state);
            }
            BoundaryCondition::ExactShock(fill) => {
                let (g, _) = mirror_index(end, m, n);
                let (x, y) = shock_at(m);
                let state = if x < fill.geometry.position(y, t) {
                    fill.behind
                } else {
                    fill.ahead
                };
                set_state(u, normal, tangential.as_deref_mut(), off(g), state);
            }
            BoundaryCondition::Segmented(_) => unreachable!("segments are resolved per line"),
        }
    }
}

fn set_state<T: Real, const M: usize>(
    u: &mut [[T; M]],
    normal: &mut [[T; M]],
    tangential: Option<&mut [[T; M]]>,
    k: usize,
    state: [T; M],
) {
    u[k] = state;
    normal[k] = [T::zero(); M];
    if let Some(w) = tangential {
        w[k] = [T::zero(); M];
    }
}

pub fn fill_ghosts_1d<T: Real, const M: usize, L: ConservationLaw<T, M> + ?Sized>(
    model: &L,
    state: &mut State1D<T, M>,
    spec: &BoundarySpec1D<T, M>,
    grid: &UniformGrid1D<T>,
    t: T,
) {
    let n = state.n_cells();
    let signs = model.reflection_signs(Axis::X);
    let at = |end: End| {
        move |m: usize| {
            let (g, _) = mirror_index(end, m, n);
            (grid.center(g), T::zero())
        }
    };
    for (cond, end) in [(&spec.left, End::Low), (&spec.right, End::High)] {
        fill_line(
            cond,
            end,
            n,
            &signs,
            state.u.as_mut_slice(),
            state.v.as_mut_slice(),
            None,
            at(end),
            t,
        );
    }
}

pub fn fill_ghosts_2d<T: Real, const M: usize, L: ConservationLaw<T, M> + ?Sized>(
    model: &L,
    state: &mut State2D<T, M>,
    spec: &BoundarySpec2D<T, M>,
    grid: &UniformGrid2D<T>,
    t: T,
) {
    let (nx, ny) = (state.nx(), state.ny());
    let sx = model.reflection_signs(Axis::X);
    let sy = model.reflection_signs(Axis::Y);
    let stride = state.u.stride();
    let g = GHOST as isize;

    // x-sides on interior rows; rows are contiguous in storage
    for j in 1..=ny as isize {
        let y = grid.y.center(j);
        let start = state.u.offset(1 - g, j);
        let range = start..start + stride;
        for (cond, end) in [(&spec.left, End::Low), (&spec.right, End::High)] {
            let cond = resolve(cond, y);
            fill_line(
                cond,
                end,
                nx,
                &sx,
                &mut state.u.as_mut_slice()[range.clone()],
                &mut state.v.as_mut_slice()[range.clone()],
                Some(&mut state.w.as_mut_slice()[range.clone()]),
                |m| (grid.x.center(mirror_index(end, m, nx).0), y),
                t,
            );
        }
    }

    // y-sides on every column, ghost columns included
    let rows = ny + 2 * GHOST;
    let mut cu = Vec::with_capacity(rows);
    let mut cw = Vec::with_capacity(rows);
    let mut cv = Vec::with_capacity(rows);
    for i in (1 - g)..=(nx as isize + g) {
        let x = grid.x.center(i);
        state.u.column_into(i, &mut cu);
        state.w.column_into(i, &mut cw);
        state.v.column_into(i, &mut cv);
        for (cond, end) in [(&spec.bottom, End::Low), (&spec.top, End::High)] {
            let cond = resolve(cond, x);
            fill_line(
                cond,
                end,
                ny,
                &sy,
                &mut cu,
                &mut cw,
                Some(&mut cv),
                |m| (x, grid.y.center(mirror_index(end, m, ny).0)),
                t,
            );
        }
        for m in 1..=GHOST {
            for end in [End::Low, End::High] {
                let (gj, _) = mirror_index(end, m, ny);
                let k = (gj + g - 1) as usize;
                state.u.set(i, gj, cu[k]);
                state.v.set(i, gj, cv[k]);
                state.w.set(i, gj, cw[k]);
            }
        }
    }
}

/// Solid rectangle `[x_step, x_max] x [y_min, y_step]` in the lower right
/// corner of a 2D domain, with reflective walls on its exposed faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepObstacle {
    /// Last open column below the step top; columns beyond it are blocked up to `j_top`.
    pub i_wall: usize,
    /// Last blocked row.
    pub j_top: usize,
}

impl StepObstacle {
    /// Requires the step corner to lie on cell interfaces.
    pub fn new<T: Real>(grid: &UniformGrid2D<T>, x_step: T, y_step: T) -> Result<Self> {
        let i_wall = aligned(x_step - grid.x.x_min, grid.x.dx, "x")?;
        let j_top = aligned(y_step - grid.y.x_min, grid.y.dx, "y")?;
        if i_wall < 3 || i_wall >= grid.nx() || j_top < 1 || j_top + 3 > grid.ny() {
            return Err(HwenoError::InvalidGrid("step leaves too few open cells".into()));
        }
        Ok(Self { i_wall, j_top })
    }

    #[inline]
    pub fn is_blocked(&self, i: isize, j: isize) -> bool {
        i > self.i_wall as isize && j <= self.j_top as isize && j >= 1
    }

    /// Number of open cells in row `j` when the row ends at the step face.
    #[inline]
    pub fn row_end(&self, j: isize) -> Option<usize> {
        (j >= 1 && j <= self.j_top as isize).then_some(self.i_wall)
    }

    /// First open row of column `i` when the column starts on the step top.
    #[inline]
    pub fn column_start(&self, i: isize) -> Option<usize> {
        (i > self.i_wall as isize).then_some(self.j_top + 1)
    }
}

fn aligned<T: Real>(len: T, h: T, axis: &str) -> Result<usize> {
    let k = (len / h).round();
    if ((len / h) - k).abs() > T::lit(1e-9) || k < T::zero() {
        return Err(HwenoError::InvalidGrid(format!(
            "step corner does not lie on a cell interface along {axis}"
        )));
    }
    Ok(k.to_f64_lossy() as usize)
}
