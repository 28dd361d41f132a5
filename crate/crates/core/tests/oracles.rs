//! Closed-form kernel coefficients checked against dense polynomial fits,
//! quadrature and exact rational arithmetic.

use hweno_core::flux::{face_derivatives, face_derivatives_inner, CorrectionStencil, InnerCorrectionStencil};
use hweno_core::hweno::{
    candidate_derivatives_at_center, candidate_values_at_face, nonlinear_weights, smoothness_indicators, StencilData,
};
use hweno_core::models::{Axis, ConservationLaw, Euler1D};
use hweno_core::verification::{finite_difference_jacobian, fit_hermite_polynomial, integrate, FittedPolynomial, HermiteCondition};
use nalgebra::Matrix3;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= 1e-10 * scale.max(1.0)
}

/// Quartic through `u` at `-dx, 0, dx` and `v` at `-dx, dx`.
fn quartic(u: [f64; 3], v: [f64; 2], dx: f64) -> FittedPolynomial {
    fit_hermite_polynomial(&[
        HermiteCondition::new(-dx, 0, u[0]),
        HermiteCondition::new(0.0, 0, u[1]),
        HermiteCondition::new(dx, 0, u[2]),
        HermiteCondition::new(-dx, 1, v[0]),
        HermiteCondition::new(dx, 1, v[1]),
    ])
    .unwrap()
}

/// Sum over derivative orders of `dx^(2a-1) * integral over the cell of (p^(a))^2`.
fn indicator(p: impl Fn(f64, usize) -> f64, degree: usize, dx: f64) -> f64 {
    (1..=degree)
        .map(|a| dx.powi(2 * a as i32 - 1) * integrate(|x| p(x, a).powi(2), -0.5 * dx, 0.5 * dx, 8))
        .sum()
}

fn stencil() -> impl Strategy<Value = ([f64; 3], [f64; 2], f64)> {
    (
        prop::array::uniform3(-2.0..2.0f64),
        prop::array::uniform2(-5.0..5.0f64),
        0.05..1.0f64,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn face_candidates_match_fitted_polynomials((u, v, dx) in stencil()) {
        let c = candidate_values_at_face(&StencilData::new(u, v, dx));
        let p0 = quartic(u, v, dx);
        let face = 0.5 * dx;
        let scale = u.iter().chain(&v).fold(0.0f64, |m, x| m.max(x.abs()));
        prop_assert!(close(c.p0, p0.eval(face), scale));
        prop_assert!(close(c.p0_prime, p0.derivative(face, 1), scale / dx));
        let p1 = fit_hermite_polynomial(&[HermiteCondition::new(-dx, 0, u[0]), HermiteCondition::new(0.0, 0, u[1])]).unwrap();
        let p2 = fit_hermite_polynomial(&[HermiteCondition::new(0.0, 0, u[1]), HermiteCondition::new(dx, 0, u[2])]).unwrap();
        prop_assert!(close(c.p1, p1.eval(face), scale));
        prop_assert!(close(c.p2, p2.eval(face), scale));

        let d = candidate_derivatives_at_center(&StencilData::new(u, v, dx));
        prop_assert!(close(d.p0, p0.derivative(0.0, 1), scale / dx));
        prop_assert!(close(d.p1, p1.derivative(0.0, 1), scale / dx));
        prop_assert!(close(d.p2, p2.derivative(0.0, 1), scale / dx));
    }

    #[test]
    fn indicators_match_quadrature((u, v, dx) in stencil()) {
        let beta = smoothness_indicators(&StencilData::new(u, v, dx));
        let p0 = quartic(u, v, dx);
        let b0 = indicator(|x, a| p0.derivative(x, a), 4, dx);
        prop_assert!((beta[0] - b0).abs() <= 1e-10 * b0.max(1e-6), "{} vs {}", beta[0], b0);
        let s1 = (u[1] - u[0]) / dx;
        let s2 = (u[2] - u[1]) / dx;
        let b1 = indicator(|_, a| if a == 1 { s1 } else { 0.0 }, 1, dx);
        let b2 = indicator(|_, a| if a == 1 { s2 } else { 0.0 }, 1, dx);
        prop_assert!(close(beta[1], b1, b1));
        prop_assert!(close(beta[2], b2, b2));
    }

    #[test]
    fn correction_derivatives_match_fitted_quintics(
        f in prop::array::uniform4(-2.0..2.0f64),
        h in prop::array::uniform4(-5.0..5.0f64),
        dx in 0.05..1.0f64,
    ) {
        let values = |h_at: [f64; 2], h_pts: [f64; 2]| {
            let mut c: Vec<_> = (0..4).map(|k| HermiteCondition::new((k as f64 - 1.0) * dx, 0, f[k])).collect();
            c.push(HermiteCondition::new(h_pts[0], 1, h_at[0]));
            c.push(HermiteCondition::new(h_pts[1], 1, h_at[1]));
            fit_hermite_polynomial(&c).unwrap()
        };
        let face = 0.5 * dx;
        let scale = f.iter().chain(&h).fold(0.0f64, |m, x| m.max(x.abs())) / dx;
        let check = |p: &FittedPolynomial, d: [f64; 4]| {
            let dx2 = dx * dx;
            let dx4 = dx2 * dx2;
            close(d[0], dx2 * p.derivative(face, 2), scale)
                && close(d[1], dx2 * p.derivative(face, 3), scale / dx)
                && close(d[2], dx4 * p.derivative(face, 4), scale)
                && close(d[3], dx4 * p.derivative(face, 5), scale / dx)
        };

        let outer = face_derivatives(&CorrectionStencil {
            f_m1: f[0], f_0: f[1], f_p1: f[2], f_p2: f[3], h_m1: h[0], h_p2: h[3], dx,
        });
        let p = values([h[0], h[3]], [-dx, 2.0 * dx]);
        prop_assert!(check(&p, [outer.d2, outer.d3, outer.d4, outer.d5]));

        let inner = face_derivatives_inner(&InnerCorrectionStencil {
            f_m1: f[0], f_0: f[1], f_p1: f[2], f_p2: f[3], h_0: h[1], h_p1: h[2], dx,
        });
        let p = values([h[1], h[2]], [0.0, dx]);
        prop_assert!(check(&p, [inner.d2, inner.d3, inner.d4, inner.d5]));
    }
}

fn big(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap()
}

fn to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap()
}

#[test]
fn weights_match_exact_rational_evaluation() {
    let beta = [1e-12, 1.0, 1.0];
    let gamma = [0.95, 0.025, 0.025];
    let eps = 1e-10;
    let w = nonlinear_weights(&beta, &gamma, eps);

    let b: Vec<BigRational> = beta.iter().map(|x| big(*x)).collect();
    let g: Vec<BigRational> = gamma.iter().map(|x| big(*x)).collect();
    let e = big(eps);
    let one = BigRational::from_integer(BigInt::from(1));
    let quarter = BigRational::new(BigInt::from(1), BigInt::from(4));
    let abs = |q: BigRational| if q < BigRational::from_integer(BigInt::from(0)) { -q } else { q };
    let spread = abs(&b[0] - &b[1]) + abs(&b[0] - &b[2]);
    let tau = &spread * &spread * quarter;
    let bar: Vec<BigRational> = (0..3).map(|k| &g[k] * (&one + &tau / (&b[k] + &e))).collect();
    let sum = &bar[0] + &bar[1] + &bar[2];
    for k in 0..3 {
        let exact = to_f64(&(&bar[k] / &sum));
        assert!((w[k] - exact).abs() <= 1e-15 * exact.abs().max(1e-300), "{k}: {} vs {exact}", w[k]);
    }
    assert!(w[0] > 0.999);
}

#[test]
fn euler_jacobian_eigenvalues() {
    let model = Euler1D::new(1.4).unwrap();
    let u = [1.0, 1.0, 3.0];
    let j = finite_difference_jacobian(|q| model.flux(q, Axis::X), &u, 1e-6);
    let m = Matrix3::from_fn(|r, c| j[r][c]);
    let mut eig: Vec<f64> = m.complex_eigenvalues().iter().map(|z| z.re).collect();
    eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let p = model.primitive_from_conserved(&u).unwrap();
    let c = (1.4 * p.pressure / p.rho).sqrt();
    let mu = p.vel[0];
    for (got, want) in eig.iter().zip([mu - c, mu, mu + c]) {
        assert!((got - want).abs() < 1e-6, "{got} vs {want}");
    }
}
