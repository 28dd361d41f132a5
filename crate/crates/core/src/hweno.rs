//! Per-face Hermite WENO interpolation.
//!
//! Everything here works on a single three-point stencil centered on cell `i`:
//! solution values at `x_{i-1}, x_i, x_{i+1}` and derivative values at the two
//! outer points only. From it we get
//!
//! * the left state `(u^-, v^-)` at the face `x_{i+1/2}`,
//! * the limited derivative `ṽ_i` at the cell center,
//!
//! both sharing one set of smoothness indicators. The right state at
//! `x_{i+1/2}` is produced by running the same formulas on the stencil of cell
//! `i+1` reflected about the face.
//!
//! All functions are pure and generic over [`Scalar`], so they can be
//! evaluated in exact rational arithmetic.

use crate::error::{HwenoError, Result};
use crate::scalar::Scalar;

/// Values on the stencil `{x_{i-1}, x_i, x_{i+1}}`. The derivative at `x_i`
/// is intentionally not part of the stencil.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilData<T> {
    pub u_m1: T,
    pub u_0: T,
    pub u_p1: T,
    pub v_m1: T,
    pub v_p1: T,
    pub dx: T,
}

impl<T: Scalar> StencilData<T> {
    pub fn new(u: [T; 3], v: [T; 2], dx: T) -> Self {
        Self {
            u_m1: u[0],
            u_0: u[1],
            u_p1: u[2],
            v_m1: v[0],
            v_p1: v[1],
            dx,
        }
    }

    /// Reflection about `x_i`: `u(x) -> u(2x_i - x)`, so derivatives flip sign.
    pub fn reflected(&self) -> Self {
        Self {
            u_m1: self.u_p1,
            u_0: self.u_0,
            u_p1: self.u_m1,
            v_m1: -self.v_p1,
            v_p1: -self.v_m1,
            dx: self.dx,
        }
    }

    /// Multiplies all values (not `dx`) by `lambda`.
    pub fn scaled(&self, lambda: T) -> Self {
        Self {
            u_m1: self.u_m1 * lambda,
            u_0: self.u_0 * lambda,
            u_p1: self.u_p1 * lambda,
            v_m1: self.v_m1 * lambda,
            v_p1: self.v_p1 * lambda,
            dx: self.dx,
        }
    }
}

/// Linear weights for the face interpolation (`gamma`) and for the derivative
/// limiter (`d`), plus the WENO regularization `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightConfig<T> {
    pub gamma: [T; 3],
    pub d: [T; 3],
    pub epsilon: T,
    /// Diagnostic hook: use the linear weights unchanged (ω = γ, ω = d).
    /// Never the default.
    pub linear_only: bool,
}

pub const DEFAULT_EPSILON: f64 = 1e-10;
pub const DEFAULT_GAMMA0_1D: f64 = 0.95;
pub const DEFAULT_GAMMA0_2D: f64 = 0.99;
pub const DEFAULT_D0: f64 = 0.9;

impl<T: Scalar> WeightConfig<T> {
    pub fn new(gamma: [T; 3], d: [T; 3], epsilon: T) -> Result<Self> {
        validate_triple("gamma", &gamma)?;
        validate_triple("d", &d)?;
        if !(epsilon > T::zero()) {
            return Err(HwenoError::InvalidWeights(format!(
                "epsilon must be positive, got {epsilon:?}"
            )));
        }
        Ok(Self {
            gamma,
            d,
            epsilon,
            linear_only: false,
        })
    }

    /// `{w0, (1-w0)/2, (1-w0)/2}` for both sets.
    pub fn symmetric(gamma0: T, d0: T, epsilon: T) -> Result<Self> {
        Self::new(symmetric_triple(gamma0), symmetric_triple(d0), epsilon)
    }

    pub fn with_linear_only(mut self, on: bool) -> Self {
        self.linear_only = on;
        self
    }
}

impl WeightConfig<f64> {
    /// Settings used for one-dimensional problems.
    pub fn default_1d() -> Self {
        Self::symmetric(DEFAULT_GAMMA0_1D, DEFAULT_D0, DEFAULT_EPSILON).expect("valid defaults")
    }

    /// Settings used for two-dimensional problems.
    pub fn default_2d() -> Self {
        Self::symmetric(DEFAULT_GAMMA0_2D, DEFAULT_D0, DEFAULT_EPSILON).expect("valid defaults")
    }
}

fn symmetric_triple<T: Scalar>(w0: T) -> [T; 3] {
    let side = (T::one() - w0) * T::ratio(1, 2);
    [w0, side, side]
}

fn validate_triple<T: Scalar>(name: &str, w: &[T; 3]) -> Result<()> {
    if w.iter().any(|x| !(*x > T::zero())) {
        return Err(HwenoError::InvalidWeights(format!(
            "{name} weights must be positive: {w:?}"
        )));
    }
    let sum = w[0] + w[1] + w[2];
    if (sum - T::one()).magnitude() > T::ratio(1, 100_000_000_000_000) {
        return Err(HwenoError::InvalidWeights(format!(
            "{name} weights must sum to 1: {w:?}"
        )));
    }
    Ok(())
}

/// `p0(x_{i+1/2})`, `p1(x_{i+1/2})`, `p2(x_{i+1/2})` and `p0'(x_{i+1/2})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaceCandidates<T> {
    pub p0: T,
    pub p1: T,
    pub p2: T,
    pub p0_prime: T,
}

/// Derivatives of the three candidates at the cell center `x_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CenterDerivatives<T> {
    pub p0: T,
    pub p1: T,
    pub p2: T,
}

/// Interpolated face state with the diagnostics that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaceInterpolant<T> {
    pub u_face: T,
    pub v_face: T,
    pub beta: [T; 3],
    pub omega: [T; 3],
}

/// Candidate values at the right face. `p0` is the quartic Hermite
/// interpolant of the five stencil conditions; `p1`, `p2` are the two linear
/// interpolants.
#[inline(always)]
pub fn candidate_values_at_face<T: Scalar>(s: &StencilData<T>) -> FaceCandidates<T> {
    let r = T::ratio;
    let p0 = -s.u_m1 * r(1, 8) + s.u_0 * r(9, 16) + s.u_p1 * r(9, 16)
        - s.dx * (s.v_m1 * r(3, 64) + s.v_p1 * r(9, 64));
    let p1 = -s.u_m1 * r(1, 2) + s.u_0 * r(3, 2);
    let p2 = (s.u_0 + s.u_p1) * r(1, 2);
    let p0_prime = (s.u_m1 * r(3, 16) - s.u_0 * r(3, 2) + s.u_p1 * r(21, 16)) / s.dx
        + s.v_m1 * r(1, 16)
        - s.v_p1 * r(3, 16);
    FaceCandidates {
        p0,
        p1,
        p2,
        p0_prime,
    }
}

#[inline(always)]
pub fn candidate_derivatives_at_center<T: Scalar>(s: &StencilData<T>) -> CenterDerivatives<T> {
    let r = T::ratio;
    CenterDerivatives {
        p0: (s.u_p1 - s.u_m1) * r(3, 4) / s.dx - (s.v_m1 + s.v_p1) * r(1, 4),
        p1: (s.u_0 - s.u_m1) / s.dx,
        p2: (s.u_p1 - s.u_0) / s.dx,
    }
}

/// Smoothness indicators of the three candidates on the target cell.
#[inline(always)]
pub fn smoothness_indicators<T: Scalar>(s: &StencilData<T>) -> [T; 3] {
    let r = T::ratio;
    let quarter_dx = s.dx * r(1, 4);
    let vsum = s.v_m1 + s.v_p1;
    let vdiff = s.v_m1 - s.v_p1;
    let second = (s.u_m1 + s.u_p1) - (s.u_0 + s.u_0);
    let a1 = -quarter_dx * vsum + (s.u_p1 - s.u_m1) * r(3, 4);
    let a2 = quarter_dx * vdiff + second;
    let a3 = quarter_dx * vsum + (s.u_m1 - s.u_p1) * r(1, 4);
    let a4 = -quarter_dx * vdiff - second * r(1, 2);

    let t1 = a1 + a3 * r(1, 4);
    let t2 = a2 + a4 * r(63, 130);
    let beta0 = t1 * t1 + r(13, 3) * t2 * t2 + r(781, 20) * a3 * a3 + r(1421461, 2275) * a4 * a4;
    let d1 = s.u_0 - s.u_m1;
    let d2 = s.u_0 - s.u_p1;
    [beta0, d1 * d1, d2 * d2]
}

/// Normalized nonlinear weights for linear weights `linear`.
#[inline(always)]
pub fn nonlinear_weights<T: Scalar>(beta: &[T; 3], linear: &[T; 3], epsilon: T) -> [T; 3] {
    let spread = (beta[0] - beta[1]).magnitude() + (beta[0] - beta[2]).magnitude();
    let tau = spread * spread * T::ratio(1, 4);
    let w0 = linear[0] * (T::one() + tau / (beta[0] + epsilon));
    let w1 = linear[1] * (T::one() + tau / (beta[1] + epsilon));
    let w2 = linear[2] * (T::one() + tau / (beta[2] + epsilon));
    let inv = T::one() / (w0 + (w1 + w2));
    [w0 * inv, w1 * inv, w2 * inv]
}

#[inline(always)]
fn combine<T: Scalar>(omega: &[T; 3], linear: &[T; 3], c0: T, c1: T, c2: T) -> T {
    // side candidates are paired so a reversed stencil gives a negated result
    omega[0] * (c0 / linear[0] - (linear[1] / linear[0] * c1 + linear[2] / linear[0] * c2))
        + (omega[1] * c1 + omega[2] * c2)
}

#[inline(always)]
fn weights_for<T: Scalar>(beta: &[T; 3], linear: &[T; 3], w: &WeightConfig<T>) -> [T; 3] {
    if w.linear_only {
        *linear
    } else {
        nonlinear_weights(beta, linear, w.epsilon)
    }
}

/// `(u^-, v^-)` at `x_{i+1/2}` from the stencil of cell `i`. The derivative is
/// the quartic candidate's slope with no nonlinear weighting.
#[inline(always)]
pub fn interpolate_face_minus<T: Scalar>(s: &StencilData<T>, w: &WeightConfig<T>) -> FaceInterpolant<T> {
    let c = candidate_values_at_face(s);
    let beta = smoothness_indicators(s);
    let omega = weights_for(&beta, &w.gamma, w);
    FaceInterpolant {
        u_face: combine(&omega, &w.gamma, c.p0, c.p1, c.p2),
        v_face: c.p0_prime,
        beta,
        omega,
    }
}

/// `(u^+, v^+)` at `x_{i+1/2}`. The caller passes the stencil of cell `i+1`
/// reflected about the face: `u = (u_{i+2}, u_{i+1}, u_i)`,
/// `v = (-v_{i+2}, -v_i)`. See [`mirrored_stencil`].
#[inline(always)]
pub fn interpolate_face_plus<T: Scalar>(s_mirror: &StencilData<T>, w: &WeightConfig<T>) -> FaceInterpolant<T> {
    let mut out = interpolate_face_minus(s_mirror, w);
    out.v_face = -out.v_face;
    out
}

/// Builds the reflected stencil for [`interpolate_face_plus`] from the
/// unreflected values `u_i, u_{i+1}, u_{i+2}` and `v_i, v_{i+2}`.
#[inline(always)]
pub fn mirrored_stencil<T: Scalar>(u: [T; 3], v_outer: [T; 2], dx: T) -> StencilData<T> {
    StencilData {
        u_m1: u[2],
        u_0: u[1],
        u_p1: u[0],
        v_m1: -v_outer[1],
        v_p1: -v_outer[0],
        dx,
    }
}

/// Limited derivative `ṽ_i` at the cell center.
#[inline(always)]
pub fn modified_derivative<T: Scalar>(s: &StencilData<T>, w: &WeightConfig<T>) -> T {
    let beta = smoothness_indicators(s);
    modified_derivative_with_beta(s, &beta, w)
}

/// Same as [`modified_derivative`], reusing indicators already computed for
/// the face interpolation on the same stencil.
#[inline(always)]
pub fn modified_derivative_with_beta<T: Scalar>(s: &StencilData<T>, beta: &[T; 3], w: &WeightConfig<T>) -> T {
    let c = candidate_derivatives_at_center(s);
    let omega = weights_for(beta, &w.d, w);
    combine(&omega, &w.d, c.p0, c.p1, c.p2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;
    use proptest::prelude::*;

    type Q = Ratio<i128>;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    fn stencil_from_poly(coef: &[f64], xc: f64, dx: f64) -> StencilData<f64> {
        let p = |x: f64| coef.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let dp = |x: f64| {
            coef.iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0.0, |acc, (k, c)| acc * x + k as f64 * c)
        };
        StencilData::new(
            [p(xc - dx), p(xc), p(xc + dx)],
            [dp(xc - dx), dp(xc + dx)],
            dx,
        )
    }

    #[test]
    fn constants_are_reproduced() {
        let s = StencilData::new([3.5; 3], [0.0; 2], 0.1);
        let c = candidate_values_at_face(&s);
        assert_eq!((c.p0, c.p1, c.p2, c.p0_prime), (3.5, 3.5, 3.5, 0.0));
        let w = WeightConfig::default_1d();
        let f = interpolate_face_minus(&s, &w);
        assert_eq!(f.u_face, 3.5);
        assert_eq!(f.v_face, 0.0);
        assert_eq!(f.omega, w.gamma);
        assert_eq!(f.beta, [0.0; 3]);
        let p = interpolate_face_plus(&s.reflected(), &w);
        assert_eq!((p.u_face, p.v_face), (3.5, 0.0));
        assert_eq!(modified_derivative(&s, &w), 0.0);
    }

    #[test]
    fn linear_data_reproduced() {
        // u = x, v = 1, x_i = 0, dx = 1
        let s = StencilData::new([-1.0, 0.0, 1.0], [1.0, 1.0], 1.0);
        let c = candidate_values_at_face(&s);
        assert_eq!((c.p0, c.p1, c.p2, c.p0_prime), (0.5, 0.5, 0.5, 1.0));
    }

    #[test]
    fn center_derivative_examples() {
        // u = x^2, v = 2x at x_i = 0
        let s = StencilData::new([1.0, 0.0, 1.0], [-2.0, 2.0], 1.0);
        let c = candidate_derivatives_at_center(&s);
        assert_eq!((c.p0, c.p1, c.p2), (0.0, -1.0, 1.0));
        let s = StencilData::new([0.0, 1.0, 4.0], [-2.0, 6.0], 1.0);
        let c = candidate_derivatives_at_center(&s);
        assert_eq!((c.p0, c.p1, c.p2), (2.0, 1.0, 3.0));
        let s = StencilData::new([2.0; 3], [0.0; 2], 0.3);
        let c = candidate_derivatives_at_center(&s);
        assert_eq!((c.p0, c.p1, c.p2), (0.0, 0.0, 0.0));
    }

    #[test]
    fn smoothness_examples() {
        assert_eq!(
            smoothness_indicators(&StencilData::new([7.0; 3], [0.0; 2], 1.0)),
            [0.0; 3]
        );
        let b = smoothness_indicators(&StencilData::new([0.0, 1.0, 2.0], [1.0, 1.0], 1.0));
        assert_eq!(b, [1.0, 1.0, 1.0]);
    }

    #[test]
    fn nonlinear_weight_limits() {
        let g = [0.95f64, 0.025, 0.025];
        assert_eq!(nonlinear_weights(&[0.0; 3], &g, 1e-10), g);
        let w = nonlinear_weights(&[2.5; 3], &g, 1e-10);
        for k in 0..3 {
            assert!((w[k] - g[k]).abs() < 1e-16);
        }
        let w = nonlinear_weights(&[1e-12, 1.0, 1.0], &g, 1e-10);
        assert!(w[0] > 0.999);
    }

    #[test]
    fn symmetric_quadratic_limiter_cancels() {
        let s = StencilData::new([1.0, 0.0, 1.0], [-2.0, 2.0], 1.0);
        let w = WeightConfig::default_1d();
        assert_eq!(modified_derivative(&s, &w), 0.0);
        assert_eq!(modified_derivative(&s, &w.with_linear_only(true)), 0.0);
    }

    #[test]
    fn weight_validation() {
        assert!(WeightConfig::symmetric(1.2, 0.9, 1e-10).is_err());
        assert!(WeightConfig::symmetric(0.95, 0.9, 0.0).is_err());
        assert!(WeightConfig::new([0.5, 0.5, 0.1], [0.9, 0.05, 0.05], 1e-10).is_err());
        assert!(WeightConfig::symmetric(1.0 / 3.0, 0.9, 1e-10).is_ok());
    }

    /// Quartic exactness of the linear scheme, verified in exact arithmetic.
    #[test]
    fn exact_rational_quartic_reproduction() {
        let w = WeightConfig::<Q>::symmetric(q(19, 20), q(9, 10), q(1, 10_000_000_000))
            .unwrap()
            .with_linear_only(true);
        let coef = [q(3, 1), q(-2, 7), q(5, 3), q(1, 11), q(-4, 9)];
        let p = |x: Q| coef.iter().rev().fold(Q::from_integer(0), |acc, c| acc * x + *c);
        let dp = |x: Q| {
            coef.iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(Q::from_integer(0), |acc, (k, c)| acc * x + Q::from_integer(k as i128) * *c)
        };
        let xi = q(2, 5);
        let dx = q(1, 3);
        let s = StencilData::new([p(xi - dx), p(xi), p(xi + dx)], [dp(xi - dx), dp(xi + dx)], dx);
        let face = xi + dx / Q::from_integer(2);
        let f = interpolate_face_minus(&s, &w);
        assert_eq!(f.u_face, p(face));
        assert_eq!(f.v_face, dp(face));
        // the quartic candidate's center slope is exact as well
        assert_eq!(candidate_derivatives_at_center(&s).p0, dp(xi));
    }

    proptest! {
        #[test]
        fn weights_normalized(b0 in 0.0..1e3f64, b1 in 0.0..1e3f64, b2 in 0.0..1e3f64, g0 in 0.05..0.98f64) {
            let g = [g0, (1.0 - g0) / 2.0, (1.0 - g0) / 2.0];
            let w = nonlinear_weights(&[b0, b1, b2], &g, 1e-10);
            prop_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-13);
            prop_assert!(w.iter().all(|x| *x >= 0.0));
        }

        #[test]
        fn quartic_exact_under_linear_weights(
            c in proptest::array::uniform5(-2.0..2.0f64),
            xc in -1.0..1.0f64,
            dx in 0.01..0.5f64,
        ) {
            let w = WeightConfig::default_1d().with_linear_only(true);
            let s = stencil_from_poly(&c, xc, dx);
            let xf = xc + 0.5 * dx;
            let exact = c.iter().rev().fold(0.0, |acc, k| acc * xf + k);
            let dexact = c.iter().enumerate().skip(1).rev().fold(0.0, |acc, (k, ck)| acc * xf + k as f64 * ck);
            let scale = 1.0 + c.iter().map(|x| x.abs()).sum::<f64>();
            let f = interpolate_face_minus(&s, &w);
            prop_assert!((f.u_face - exact).abs() < 1e-11 * scale);
            // derivative face value does not depend on the weights
            let nonlinear = interpolate_face_minus(&s, &WeightConfig::default_1d());
            prop_assert_eq!(nonlinear.v_face, f.v_face);
            prop_assert!((f.v_face - dexact).abs() < 1e-10 * scale / dx);
        }

        #[test]
        fn mirror_property(
            u in proptest::array::uniform4(-5.0..5.0f64),
            v in proptest::array::uniform4(-5.0..5.0f64),
            dx in 0.01..1.0f64,
        ) {
            // cells i-1, i, i+1, i+2 -> u[0..4]; reflect about x_{i+1/2}
            let w = WeightConfig::default_1d();
            let minus = interpolate_face_minus(&StencilData::new([u[0], u[1], u[2]], [v[0], v[2]], dx), &w);
            let plus_of_reflected = interpolate_face_plus(
                &mirrored_stencil([u[2], u[1], u[0]], [-v[2], -v[0]], dx), &w);
            prop_assert_eq!(minus.u_face.to_bits(), plus_of_reflected.u_face.to_bits());
            prop_assert_eq!(minus.v_face.to_bits(), (-plus_of_reflected.v_face).to_bits());
        }

        #[test]
        fn smoothness_scales_quadratically(
            u in proptest::array::uniform3(-5.0..5.0f64),
            v in proptest::array::uniform2(-5.0..5.0f64),
            lambda in 0.1..10.0f64,
        ) {
            let s = StencilData::new(u, v, 0.5);
            let b = smoothness_indicators(&s);
            prop_assume!(b.iter().all(|x| *x > 1e-8));
            let bs = smoothness_indicators(&s.scaled(lambda));
            for k in 0..3 {
                prop_assert!((bs[k] - lambda * lambda * b[k]).abs() <= 1e-10 * bs[k].max(1.0));
            }
            // tau grows like lambda^4, so the weight perturbation tau/beta grows like lambda^2
            let g = [0.95f64, 0.025, 0.025];
            let w = nonlinear_weights(&b, &g, 0.0);
            let ws = nonlinear_weights(&bs, &g, 0.0);
            let tau = |b: &[f64; 3]| 0.25 * ((b[0] - b[1]).abs() + (b[0] - b[2]).abs()).powi(2);
            let unnorm = |b: &[f64; 3], t: f64| -> [f64; 3] { std::array::from_fn(|k| g[k] * (1.0 + t / b[k])) };
            let raw = unnorm(&b, tau(&b) * lambda * lambda);
            let sum: f64 = raw.iter().sum();
            for k in 0..3 {
                prop_assert!((ws[k] - raw[k] / sum).abs() < 1e-10);
            }
            if (lambda - 1.0).abs() > 0.5 && tau(&b) > 1e-3 * b.iter().cloned().fold(0.0, f64::max) {
                prop_assert!((0..3).any(|k| (w[k] - ws[k]).abs() > 0.0));
            }
        }

        #[test]
        fn symmetric_data_gives_symmetric_face_states(
            a in -3.0..3.0f64, b in -3.0..3.0f64, va in -3.0..3.0f64, vb in -3.0..3.0f64,
        ) {
            // u_{i-1} = u_{i+2} = a, u_i = u_{i+1} = b; v_{i-1} = -v_{i+2}, v_i = -v_{i+1}
            let w = WeightConfig::default_1d();
            let minus = interpolate_face_minus(&StencilData::new([a, b, b], [va, -vb], 0.2), &w);
            let plus = interpolate_face_plus(&mirrored_stencil([b, b, a], [vb, -va], 0.2), &w);
            prop_assert_eq!(minus.u_face, plus.u_face);
            prop_assert_eq!(minus.v_face, -plus.v_face);
        }

        #[test]
        fn reversed_stencil_negates_limited_derivative(
            u in proptest::array::uniform3(-3.0..3.0f64), v in proptest::array::uniform2(-3.0..3.0f64),
        ) {
            let w = WeightConfig::default_1d();
            let forward = modified_derivative(&StencilData::new(u, v, 0.2), &w);
            let reversed = modified_derivative(&StencilData::new([u[2], u[1], u[0]], [-v[1], -v[0]], 0.2), &w);
            prop_assert_eq!(forward, -reversed);
        }
    }
}
