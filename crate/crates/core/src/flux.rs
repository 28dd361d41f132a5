//! Face flux assembly: Lax-Friedrichs fluxes for the solution and derivative
//! equations, the central high-order corrections, and the linear flux used
//! for mixed-derivative terms in 2D.

use crate::error::{HwenoError, Result};
use crate::scalar::Scalar;

/// Numerical fluxes of the solution (`f_hat`) and derivative (`h_hat`)
/// equations at one face.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaceFluxPair<T> {
    pub f_hat: T,
    pub h_hat: T,
}

/// Flux values at `x_{i-1}..x_{i+2}` and derivative-flux values at the two
/// outer points, for the face `x_{i+1/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionStencil<T> {
    pub f_m1: T,
    pub f_0: T,
    pub f_p1: T,
    pub f_p2: T,
    pub h_m1: T,
    pub h_p2: T,
    pub dx: T,
}

/// Same four flux values, but derivative-flux values at the two inner points
/// `x_i`, `x_{i+1}`. Only used to cross-check [`central_corrections`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerCorrectionStencil<T> {
    pub f_m1: T,
    pub f_0: T,
    pub f_p1: T,
    pub f_p2: T,
    pub h_0: T,
    pub h_p1: T,
    pub dx: T,
}

/// Which Hermite stencil supplies the correction terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CorrectionVariant {
    /// Derivative fluxes at `x_{i-1}` and `x_{i+2}`.
    #[default]
    Outer,
    /// Derivative fluxes at `x_i` and `x_{i+1}`; sensitive near shocks.
    Inner,
}

/// Scaled face derivatives `dx^2 P''`, `dx^2 P'''`, `dx^4 P''''`, `dx^4 P'''''`
/// of the quintic Hermite interpolant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaceDerivatives<T> {
    pub d2: T,
    pub d3: T,
    pub d4: T,
    pub d5: T,
}

#[inline(always)]
pub fn lf_flux_u<T: Scalar>(u_minus: T, u_plus: T, flux_fn: impl Fn(T) -> T, alpha: T) -> T {
    lf_combine(flux_fn(u_minus), flux_fn(u_plus), u_minus, u_plus, alpha)
}

/// `(f_minus + f_plus - alpha (q_plus - q_minus)) / 2`, the Lax-Friedrichs
/// combination of precomputed flux values.
#[inline(always)]
pub fn lf_combine<T: Scalar>(f_minus: T, f_plus: T, q_minus: T, q_plus: T, alpha: T) -> T {
    (f_minus + f_plus - alpha * (q_plus - q_minus)) * T::ratio(1, 2)
}

/// Lax-Friedrichs flux of the derivative equation; `hflux_fn(u, v)` is `f'(u) v`.
#[inline(always)]
pub fn lf_flux_v<T: Scalar>(
    u_minus: T,
    v_minus: T,
    u_plus: T,
    v_plus: T,
    hflux_fn: impl Fn(T, T) -> T,
    alpha: T,
) -> T {
    lf_combine(hflux_fn(u_minus, v_minus), hflux_fn(u_plus, v_plus), v_minus, v_plus, alpha)
}

/// Checked variant of [`lf_flux_u`] for `f64`.
pub fn lf_flux_u_checked(u_minus: f64, u_plus: f64, flux_fn: impl Fn(f64) -> f64, alpha: f64) -> Result<f64> {
    finite(lf_flux_u(u_minus, u_plus, flux_fn, alpha), "Lax-Friedrichs flux")
}

pub fn lf_flux_v_checked(
    u_minus: f64,
    v_minus: f64,
    u_plus: f64,
    v_plus: f64,
    hflux_fn: impl Fn(f64, f64) -> f64,
    alpha: f64,
) -> Result<f64> {
    finite(
        lf_flux_v(u_minus, v_minus, u_plus, v_plus, hflux_fn, alpha),
        "Lax-Friedrichs derivative flux",
    )
}

fn finite(x: f64, what: &'static str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(HwenoError::NonFinite {
            cell: crate::error::CellIndex::Line(0),
            at: Default::default(),
            what,
        })
    }
}

#[inline(always)]
pub fn face_derivatives<T: Scalar>(c: &CorrectionStencil<T>) -> FaceDerivatives<T> {
    let r = T::ratio;
    // paired sums keep mirrored faces bitwise mirrored
    let even = (c.f_m1 + c.f_p2) - (c.f_0 + c.f_p1);
    let (outer, inner) = (c.f_m1 - c.f_p2, c.f_0 - c.f_p1);
    let hdiff = c.h_m1 - c.h_p2;
    let hsum = c.h_m1 + c.h_p2;
    let odd_a = outer * r(101, 36) - inner * r(27, 4);
    let odd_b = outer * r(130, 9) - inner * r(30, 1);
    FaceDerivatives {
        d2: even * r(9, 8) + c.dx * hdiff * r(5, 12),
        d3: -odd_a / c.dx - hsum * r(5, 6),
        d4: -even * r(3, 1) - c.dx * hdiff * r(2, 1),
        d5: odd_b / c.dx + hsum * r(20, 3),
    }
}

#[inline(always)]
pub fn face_derivatives_inner<T: Scalar>(c: &InnerCorrectionStencil<T>) -> FaceDerivatives<T> {
    let r = T::ratio;
    let even = (c.f_m1 + c.f_p2) - (c.f_0 + c.f_p1);
    let (outer, inner) = (c.f_m1 - c.f_p2, c.f_0 - c.f_p1);
    let hdiff = c.h_0 - c.h_p1;
    let hsum = c.h_0 + c.h_p1;
    FaceDerivatives {
        d2: -even * r(1, 8) - c.dx * hdiff * r(5, 4),
        d3: (outer + inner * r(57, 1)) / (c.dx * r(4, 1)) + hsum * r(15, 2),
        d4: even * r(3, 1) + c.dx * hdiff * r(6, 1),
        d5: -(outer + inner * r(9, 1)) * r(10, 1) / c.dx - hsum * r(60, 1),
    }
}

#[inline(always)]
fn corrections_from<T: Scalar>(d: &FaceDerivatives<T>) -> (T, T) {
    let a = T::ratio(1, 24);
    let b = T::ratio(7, 5760);
    (-a * d.d2 + b * d.d4, -a * d.d3 + b * d.d5)
}

/// `(D(f), D(h))` at the face.
#[inline(always)]
pub fn central_corrections<T: Scalar>(c: &CorrectionStencil<T>) -> (T, T) {
    corrections_from(&face_derivatives(c))
}

pub fn central_corrections_inner<T: Scalar>(c: &InnerCorrectionStencil<T>) -> (T, T) {
    corrections_from(&face_derivatives_inner(c))
}

/// Lax-Friedrichs plus central correction for a scalar law with flux `f` and
/// derivative flux `h(u, v) = f'(u) v`.
pub fn assemble_face_fluxes<T: Scalar>(
    minus: (T, T),
    plus: (T, T),
    correction: &CorrectionStencil<T>,
    flux_fn: impl Fn(T) -> T,
    hflux_fn: impl Fn(T, T) -> T,
    alpha: T,
) -> FaceFluxPair<T> {
    let (df, dh) = central_corrections(correction);
    FaceFluxPair {
        f_hat: lf_flux_u(minus.0, plus.0, flux_fn, alpha) + df,
        h_hat: lf_flux_v(minus.0, minus.1, plus.0, plus.1, hflux_fn, alpha) + dh,
    }
}

/// Fourth-order linear face value from point values at `x_{i-1}..x_{i+2}`.
#[inline(always)]
pub fn mixed_face_flux<T: Scalar>(eta_m1: T, eta_0: T, eta_p1: T, eta_p2: T) -> T {
    let r = T::ratio;
    (eta_0 + eta_p1) * r(7, 12) - (eta_m1 + eta_p2) * r(1, 12)
}
