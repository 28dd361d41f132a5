//! Exact solutions of the smooth accuracy problems.

use std::f64::consts::PI;

use crate::BenchError;

const MAX_NEWTON: usize = 100;
const RESIDUAL_TOL: f64 = 1e-13;

/// Solves `u = 0.5 + sin(z - s u)` for `u` by Newton iteration with bisection
/// fallback. `s` is the characteristic speed factor times `t`.
fn implicit_sine(z: f64, s: f64) -> Result<f64, BenchError> {
    if !(s < 1.0) {
        return Err(BenchError::NoConvergence(format!(
            "characteristics have crossed (s = {s} >= 1); the solution is no longer single valued"
        )));
    }
    let z = reduce(z);
    let g = |u: f64| u - 0.5 - (z - s * u).sin();
    let dg = |u: f64| 1.0 + s * (z - s * u).cos();
    // the root is bracketed by the range of 0.5 + sin
    let (mut lo, mut hi): (f64, f64) = (-0.5 - 1e-12, 1.5 + 1e-12);
    let mut u = 0.5 + z.sin();
    for _ in 0..MAX_NEWTON {
        let r = g(u);
        if r.abs() < RESIDUAL_TOL {
            return Ok(u);
        }
        if r > 0.0 {
            hi = hi.min(u);
        } else {
            lo = lo.max(u);
        }
        let d = dg(u);
        let next = u - r / d;
        u = if d > 0.0 && next > lo && next < hi { next } else { 0.5 * (lo + hi) };
    }
    Err(BenchError::NoConvergence(format!(
        "implicit Burgers solution at z = {z}, s = {s} did not converge (too close to shock time?)"
    )))
}

/// Maps `z` into `[-pi, pi)`.
fn reduce(z: f64) -> f64 {
    (z + PI).rem_euclid(2.0 * PI) - PI
}

/// `u_t + (u^2/2)_x = 0`, `u(x, 0) = 0.5 + sin(x)`.
pub fn exact_burgers_1d(x: f64, t: f64) -> Result<f64, BenchError> {
    implicit_sine(x, t)
}

/// `u_t + (u^2/2)_x + (u^2/2)_y = 0`, `u(x, y, 0) = 0.5 + sin((x + y)/2)`.
/// Along `xi = x + y` the solution is transported with speed `2u`.
pub fn exact_burgers_2d(x: f64, y: f64, t: f64) -> Result<f64, BenchError> {
    // U = 0.5 + sin((xi - 2 U t)/2) = 0.5 + sin(xi/2 - U t)
    implicit_sine(0.5 * (x + y), t)
}

/// Density, velocity and pressure of the advected density wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdvectedWave {
    pub rho: f64,
    pub velocity: [f64; 2],
    pub pressure: f64,
}

pub fn exact_euler_advection_1d(x: f64, t: f64) -> AdvectedWave {
    AdvectedWave {
        rho: 1.0 + 0.2 * (PI * (x - t)).sin(),
        velocity: [1.0, 0.0],
        pressure: 1.0,
    }
}

pub fn exact_euler_advection_2d(x: f64, y: f64, t: f64) -> AdvectedWave {
    AdvectedWave {
        rho: 1.0 + 0.2 * (PI * (x + y - 2.0 * t)).sin(),
        velocity: [1.0, 1.0],
        pressure: 1.0,
    }
}
