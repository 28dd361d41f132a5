//! Diagnostics for the discontinuous problems: a first-order baseline, front
//! detection, comparison against fine-grid references and symmetry checks.

use hweno_core::boundaries::fill_ghosts_2d;
use hweno_core::mesh::{State2D, UniformGrid2D};
use hweno_core::models::{Axis, ConservationLaw, Euler1D, Euler2D};

use crate::catalog::{self, ProblemName};
use crate::run::Snapshot;
use crate::BenchError;

/// Side treatment of the first-order baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineSide {
    Outflow,
    Reflective,
}

/// First-order finite-volume scheme with the global Lax-Friedrichs flux and
/// forward Euler steps. Returns the conserved states at the final time.
pub fn lax_friedrichs_1d(
    model: &Euler1D<f64>,
    x_range: (f64, f64),
    initial: &[[f64; 3]],
    sides: (LineSide, LineSide),
    t_final: f64,
    cfl: f64,
) -> Result<Vec<[f64; 3]>, BenchError> {
    let n = initial.len();
    let dx = (x_range.1 - x_range.0) / n as f64;
    let mut u: Vec<[f64; 3]> = Vec::with_capacity(n + 2);
    u.push([0.0; 3]);
    u.extend_from_slice(initial);
    u.push([0.0; 3]);
    let mut flux = vec![[0.0; 3]; n + 1];
    let mut t = 0.0;
    while t < t_final {
        let fill = |side: LineSide, q: [f64; 3]| match side {
            LineSide::Outflow => q,
            LineSide::Reflective => [q[0], -q[1], q[2]],
        };
        u[0] = fill(sides.0, u[1]);
        u[n + 1] = fill(sides.1, u[n]);
        let mut alpha: f64 = 0.0;
        for (i, q) in u.iter().enumerate() {
            model
                .validate(q)
                .map_err(|d| BenchError::NoConvergence(format!("baseline lost positivity at cell {i}, t = {t}: {d}")))?;
            alpha = alpha.max(model.spectral_radius(q, Axis::X));
        }
        let dt = (cfl * dx / alpha).min(t_final - t);
        for (k, f) in flux.iter_mut().enumerate() {
            let (a, b) = (&u[k], &u[k + 1]);
            let (fa, fb) = (model.flux(a, Axis::X), model.flux(b, Axis::X));
            *f = std::array::from_fn(|c| 0.5 * (fa[c] + fb[c]) - 0.5 * alpha * (b[c] - a[c]));
        }
        for i in 1..=n {
            for c in 0..3 {
                u[i][c] -= dt / dx * (flux[i][c] - flux[i - 1][c]);
            }
        }
        t += dt;
    }
    Ok(u[1..=n].to_vec())
}

/// Positions of the `count` steepest jumps of `values`, each the midpoint of
/// the two cells around the jump. Peaks closer than `min_separation` cells to
/// a steeper one are skipped. Sorted by position.
pub fn shock_fronts(x: &[f64], values: &[f64], count: usize, min_separation: usize) -> Vec<f64> {
    let mut jumps: Vec<(usize, f64)> = values.windows(2).map(|w| (w[1] - w[0]).abs()).enumerate().collect();
    jumps.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut picked: Vec<usize> = Vec::with_capacity(count);
    for (k, _) in jumps {
        if picked.len() == count {
            break;
        }
        if picked.iter().all(|&p| p.abs_diff(k) >= min_separation) {
            picked.push(k);
        }
    }
    let mut fronts: Vec<f64> = picked.into_iter().map(|k| 0.5 * (x[k] + x[k + 1])).collect();
    fronts.sort_by(f64::total_cmp);
    fronts
}

/// Piecewise-linear interpolation of `(xs, values)` at `x`, clamped at the
/// ends. `xs` must be increasing.
pub fn interpolate(xs: &[f64], values: &[f64], x: f64) -> f64 {
    let k = xs.partition_point(|&p| p <= x);
    if k == 0 {
        return values[0];
    }
    if k == xs.len() {
        return values[xs.len() - 1];
    }
    let (x0, x1) = (xs[k - 1], xs[k]);
    if x == x0 {
        return values[k - 1];
    }
    let s = (x - x0) / (x1 - x0);
    values[k - 1] + s * (values[k] - values[k - 1])
}

/// `dx * sum |coarse - reference|` over coarse cells with centers in
/// `window`, sampling the reference at the coarse centers.
pub fn windowed_l1_difference(
    x: &[f64],
    coarse: &[f64],
    reference_x: &[f64],
    reference: &[f64],
    window: (f64, f64),
) -> f64 {
    let dx = if x.len() > 1 { x[1] - x[0] } else { 1.0 };
    x.iter()
        .zip(coarse)
        .filter(|(p, _)| **p >= window.0 && **p <= window.1)
        .map(|(p, v)| (v - interpolate(reference_x, reference, *p)).abs())
        .sum::<f64>()
        * dx
}

/// Largest `|q(i, j) - q(nx - 1 - i, j)|` of a 2D snapshot component, the
/// deviation from mirror symmetry about the vertical center line.
pub fn mirror_asymmetry(snapshot: &Snapshot, component: usize) -> f64 {
    let (nx, ny) = (snapshot.nx, snapshot.ny);
    let mut worst: f64 = 0.0;
    for j in 0..ny {
        for i in 0..nx / 2 {
            let d = (snapshot.value(component, i, j) - snapshot.value(component, nx - 1 - i, j)).abs();
            worst = worst.max(d);
        }
    }
    worst
}

/// Largest deviation of the double Mach ghost cells at `t = 0` from their
/// expected fills: the reflected interior under the reflective wall, the
/// post-shock state over the inflow strip and left side, copies of the last
/// column on the right, and the exact shock states above the domain.
pub fn double_mach_fill_deviation(nx: usize, ny: usize) -> Result<f64, BenchError> {
    let spec = catalog::problem_spec(ProblemName::DoubleMach);
    let model = Euler2D::new(spec.gamma_gas.unwrap_or(1.4))?;
    let grid = UniformGrid2D::new(spec.x_range, nx, spec.y_range.unwrap_or((0.0, 1.0)), ny)?;
    let boundary = catalog::boundary_2d(ProblemName::DoubleMach, &model);
    let mut state = State2D::from_fn(&grid, |x, y| catalog::double_mach_initial(&model, x, y));
    fill_ghosts_2d(&model, &mut state, &boundary, &grid, 0.0);

    let post = catalog::primitive_to_conserved(&model, catalog::double_mach_post_shock());
    let ahead = catalog::primitive_to_conserved(&model, catalog::DOUBLE_MACH_AHEAD);
    let wall_start = catalog::double_mach_post_shock_wall();
    let zero = [0.0; 4];
    let mut worst: f64 = 0.0;
    let mut compare = |a: [f64; 4], b: [f64; 4]| {
        for c in 0..4 {
            worst = worst.max((a[c] - b[c]).abs());
        }
    };
    let flip = |q: [f64; 4], k: usize| {
        let mut r = q;
        r[k] = -r[k];
        r
    };
    let negate = |q: [f64; 4]| q.map(|v| -v);
    let (nxi, nyi) = (nx as isize, ny as isize);
    for i in 1..=nxi {
        let x = grid.x.center(i);
        for m in 1..=3isize {
            // bottom
            let g = 1 - m;
            if x < wall_start {
                compare(state.u.get(i, g), post);
                compare(state.v.get(i, g), zero);
                compare(state.w.get(i, g), zero);
            } else {
                compare(state.u.get(i, g), flip(state.u.get(i, m), 2));
                compare(state.v.get(i, g), flip(state.v.get(i, m), 2));
                compare(state.w.get(i, g), negate(flip(state.w.get(i, m), 2)));
            }
            // top
            let g = nyi + m;
            let y = grid.y.center(g);
            let want = if x < catalog::double_mach_shock_x(y, 0.0) { post } else { ahead };
            compare(state.u.get(i, g), want);
            compare(state.w.get(i, g), zero);
        }
    }
    for j in 1..=nyi {
        for m in 1..=3isize {
            compare(state.u.get(1 - m, j), post);
            compare(state.v.get(1 - m, j), zero);
            compare(state.u.get(nxi + m, j), state.u.get(nxi, j));
            compare(state.v.get(nxi + m, j), state.v.get(nxi, j));
        }
    }
    Ok(worst)
}
