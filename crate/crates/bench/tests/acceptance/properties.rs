//! Randomized property checks of the solver building blocks. Each check
//! returns a description of the first counterexample.

use std::f64::consts::PI;

use hweno_core::boundaries::fill_ghosts_1d;
use hweno_core::flux::{central_corrections, mixed_face_flux, CorrectionStencil};
use hweno_core::hweno::{interpolate_face_minus, interpolate_face_plus, mirrored_stencil, modified_derivative, nonlinear_weights, StencilData};
use hweno_core::integrator::ssp_rk3;
use hweno_core::models::mat_mul;
use hweno_core::{
    Axis, BoundaryCondition, BoundarySpec1D, BoundarySpec2D, ConservationLaw, Euler1D, Euler2D, FaceAverage, Primitive, ScalarModel,
    SchemeOptions, Solver1D, Solver2D, State1D, State2D, UniformGrid1D, UniformGrid2D, WeightConfig,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn check<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn poly(c: &[f64], x: f64, k: usize) -> f64 {
    let mut s = 0.0;
    for (n, a) in c.iter().enumerate().skip(k) {
        let falling: f64 = (0..k).map(|m| (n - m) as f64).product();
        s += a * falling * x.powi((n - k) as i32);
    }
    s
}

fn weight_normalization() -> Result<(), String> {
    check(256, (prop::array::uniform3(0.0..1e3f64), 0.05..0.99f64), |(beta, g0)| {
        let g = (1.0 - g0) / 2.0;
        let w = nonlinear_weights(&beta, &[g0, g, g], 1e-10);
        prop_assert!(w.iter().all(|x| *x > 0.0), "{w:?}");
        prop_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-14, "{w:?}");
        Ok(())
    })
}

fn constant_preservation() -> Result<(), String> {
    check(256, (-1e3..1e3f64, 1e-3..1.0f64), |(c, dx)| {
        let w = WeightConfig::default_1d();
        let s = StencilData::new([c; 3], [0.0; 2], dx);
        let f = interpolate_face_minus(&s, &w);
        let scale = 1e-13 * (1.0 + c.abs());
        prop_assert!((f.u_face - c).abs() <= scale, "u {}", f.u_face);
        prop_assert!(f.v_face.abs() <= scale / dx, "v {}", f.v_face);
        prop_assert!(modified_derivative(&s, &w).abs() <= scale / dx);
        Ok(())
    })
}

fn quartic_exactness() -> Result<(), String> {
    check(256, (prop::array::uniform5(-1.0..1.0f64), -1.0..1.0f64, 0.01..0.5f64), |(c, x0, dx)| {
        let w = WeightConfig::default_1d().with_linear_only(true);
        let u = [poly(&c, x0 - dx, 0), poly(&c, x0, 0), poly(&c, x0 + dx, 0)];
        let v = [poly(&c, x0 - dx, 1), poly(&c, x0 + dx, 1)];
        let s = StencilData::new(u, v, dx);
        let f = interpolate_face_minus(&s, &w);
        let xf = x0 + 0.5 * dx;
        prop_assert!((f.u_face - poly(&c, xf, 0)).abs() < 1e-12, "u");
        prop_assert!((f.v_face - poly(&c, xf, 1)).abs() < 1e-10, "v");
        prop_assert!((modified_derivative(&s, &w) - poly(&c, x0, 1)).abs() < 1e-10, "v tilde");
        Ok(())
    })
}

fn mirror_property() -> Result<(), String> {
    let data = (prop::array::uniform2(-5.0..5.0f64), prop::array::uniform2(-50.0..50.0f64), 0.01..1.0f64);
    check(256, data, |([a, b], [c, e], dx)| {
        // data symmetric about the face between cells i and i+1
        let w = WeightConfig::default_1d();
        let minus = interpolate_face_minus(&StencilData::new([a, b, b], [c, -e], dx), &w);
        let plus = interpolate_face_plus(&mirrored_stencil([b, b, a], [e, -c], dx), &w);
        prop_assert_eq!(minus.u_face, plus.u_face);
        prop_assert_eq!(minus.v_face, -plus.v_face);
        Ok(())
    })
}

fn correction_exactness() -> Result<(), String> {
    check(256, (prop::array::uniform6(-1.0..1.0f64), -1.0..1.0f64, 0.05..0.5f64), |(c, x0, dx)| {
        let f = |k: f64| poly(&c, x0 + k * dx, 0);
        let h = |k: f64| poly(&c, x0 + k * dx, 1);
        let (df, dh) = central_corrections(&CorrectionStencil {
            f_m1: f(-1.0),
            f_0: f(0.0),
            f_p1: f(1.0),
            f_p2: f(2.0),
            h_m1: h(-1.0),
            h_p2: h(2.0),
            dx,
        });
        let xm = x0 + 0.5 * dx;
        let (a, b) = (-dx * dx / 24.0, 7.0 * dx.powi(4) / 5760.0);
        let want_f = a * poly(&c, xm, 2) + b * poly(&c, xm, 4);
        let want_h = a * poly(&c, xm, 3) + b * poly(&c, xm, 5);
        prop_assert!((df - want_f).abs() < 1e-12, "D(f) {df} vs {want_f}");
        prop_assert!((dh - want_h).abs() < 1e-10, "D(h) {dh} vs {want_h}");
        Ok(())
    })
}

fn mixed_flux_exactness() -> Result<(), String> {
    check(256, (prop::array::uniform4(-1.0..1.0f64), -1.0..1.0f64, 0.01..1.0f64), |(c, x0, dx)| {
        let e = |k: f64| poly(&c, x0 + k * dx, 0);
        let face = mixed_face_flux(e(-1.0), e(0.0), e(1.0), e(2.0));
        let left = mixed_face_flux(e(-2.0), e(-1.0), e(0.0), e(1.0));
        let xf = x0 + 0.5 * dx;
        // the flux whose cell differences are point derivatives
        let want = poly(&c, xf, 0) - dx * dx / 24.0 * poly(&c, xf, 2);
        prop_assert!((face - want).abs() < 1e-13, "{face} vs {want}");
        prop_assert!(((face - left) / dx - poly(&c, x0, 1)).abs() < 1e-12 / dx);
        Ok(())
    })
}

fn eos_round_trip() -> Result<(), String> {
    let model = Euler2D::new(1.4).unwrap();
    check(256, (1e-2..1e2f64, prop::array::uniform2(-10.0..10.0f64), 1e-2..1e2f64), |(rho, vel, p)| {
        let q = model.conserved_from_primitive(&Primitive::new(rho, vel, p)).unwrap();
        let back = model.primitive_from_conserved(&q).unwrap();
        let kinetic = rho * (vel[0] * vel[0] + vel[1] * vel[1]);
        prop_assert!((back.rho - rho).abs() <= 1e-14 * rho);
        for k in 0..2 {
            prop_assert!((back.vel[k] - vel[k]).abs() <= 1e-14 * (1.0 + vel[k].abs()));
        }
        prop_assert!((back.pressure - p).abs() <= 1e-14 * (p + kinetic), "{} vs {p}", back.pressure);
        Ok(())
    })
}

fn eigenvector_inverse() -> Result<(), String> {
    let model = Euler2D::new(1.4).unwrap();
    let state = (0.1..10.0f64, prop::array::uniform2(-3.0..3.0f64), 0.1..10.0f64);
    check(256, (state.clone(), state, any::<bool>()), |((r0, v0, p0), (r1, v1, p1), along_x)| {
        let a = model.conserved_from_primitive(&Primitive::new(r0, v0, p0)).unwrap();
        let b = model.conserved_from_primitive(&Primitive::new(r1, v1, p1)).unwrap();
        let axis = if along_x { Axis::X } else { Axis::Y };
        let basis = model.characteristic_basis(&a, &b, axis, FaceAverage::Roe).unwrap().unwrap();
        let lr = mat_mul(&basis.left, &basis.right);
        for (i, row) in lr.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((x - want).abs() < 1e-12, "L R [{i}][{j}] = {x}");
            }
        }
        Ok(())
    })
}

fn periodic_conservation() -> Result<(), String> {
    let model = ScalarModel::burgers();
    let grid = UniformGrid1D::new(0.0, 2.0, 64).unwrap();
    let solver = Solver1D::new(&model, grid, BoundarySpec1D::periodic(), SchemeOptions::default_1d()).unwrap();
    check(16, (prop::array::uniform3(-0.5..0.5f64), 0.005..0.02f64), |(a, dt)| {
        let mut s = State1D::from_fn(&grid, |x| {
            let u = 0.7 + a[0] * (PI * x).sin() + a[1] * (2.0 * PI * x).cos() + a[2] * (3.0 * PI * x).sin();
            let v = PI * (a[0] * (PI * x).cos() - 2.0 * a[1] * (2.0 * PI * x).sin() + 3.0 * a[2] * (3.0 * PI * x).cos());
            ([u], [v])
        });
        let mass = |s: &State1D<f64, 1>| s.u.interior().iter().map(|u| u[0]).sum::<f64>();
        let total = |s: &State1D<f64, 1>| s.u.interior().iter().map(|u| u[0].abs()).sum::<f64>();
        let m0 = mass(&s);
        solver.step(&mut s, 0.0, dt).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!((mass(&s) - m0).abs() <= 1e-12 * total(&s), "{} vs {m0}", mass(&s));
        Ok(())
    })
}

fn free_stream() -> Result<(), String> {
    let model = Euler2D::new(1.4).unwrap();
    let grid = UniformGrid2D::new((0.0, 1.0), 12, (0.0, 1.0), 12).unwrap();
    let solver = Solver2D::new(&model, grid, BoundarySpec2D::periodic(), SchemeOptions::default_2d()).unwrap();
    check(8, (0.1..5.0f64, prop::array::uniform2(-2.0..2.0f64), 0.1..5.0f64), |(rho, vel, p)| {
        let q = model.conserved_from_primitive(&Primitive::new(rho, vel, p)).unwrap();
        let mut s = State2D::from_fn(&grid, |_, _| (q, [0.0; 4], [0.0; 4]));
        solver.step(&mut s, 0.0, 1e-3).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let scale = q.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        for j in 1..=12 {
            for i in 1..=12 {
                let (u, v, w) = (s.u.get(i, j), s.v.get(i, j), s.w.get(i, j));
                for c in 0..4 {
                    prop_assert!((u[c] - q[c]).abs() <= 1e-13 * scale, "u at ({i}, {j})");
                    prop_assert!(v[c].abs() <= 1e-13 * scale && w[c].abs() <= 1e-13 * scale, "derivatives at ({i}, {j})");
                }
            }
        }
        Ok(())
    })
}

fn rk3_stability_polynomial() -> Result<(), String> {
    check(256, (-2.5..0.5f64, 0.01..1.0f64), |(z, dt)| {
        let lambda = z / dt;
        let mut s = vec![1.0f64];
        ssp_rk3(&mut s, 0.0, dt, |x, _, _| Ok(x.iter().map(|v| lambda * v).collect())).unwrap();
        let want = 1.0 + z + z * z / 2.0 + z * z * z / 6.0;
        prop_assert!((s[0] - want).abs() < 1e-14, "{} vs {want}", s[0]);
        Ok(())
    })
}

fn reflective_involution() -> Result<(), String> {
    let model = Euler1D::new(1.4).unwrap();
    let n = 8usize;
    let grid = UniformGrid1D::new(0.0, 1.0, n).unwrap();
    let walls = BoundarySpec1D {
        left: BoundaryCondition::Reflective,
        right: BoundaryCondition::Reflective,
    };
    let cell = (0.5..2.0f64, -1.0..1.0f64, 0.5..2.0f64, prop::array::uniform3(-5.0..5.0f64));
    check(64, prop::collection::vec(cell, n), |cells| {
        let states: Vec<([f64; 3], [f64; 3])> = cells
            .iter()
            .map(|&(rho, u, p, dq)| (model.conserved_from_primitive(&Primitive::new(rho, [u], p)).unwrap(), dq))
            .collect();
        let mut s = State1D::from_fn(&grid, |x| states[((x * n as f64) as usize).min(n - 1)]);
        fill_ghosts_1d(&model, &mut s, &walls, &grid, 0.0);
        let signs = model.reflection_signs(Axis::X);
        let mirror_u = |q: [f64; 3]| std::array::from_fn::<f64, 3, _>(|c| signs[c] * q[c]);
        let mirror_v = |q: [f64; 3]| std::array::from_fn::<f64, 3, _>(|c| -signs[c] * q[c]);
        let ni = n as isize;
        for m in 1..=3isize {
            for (ghost, inner) in [(1 - m, m), (ni + m, ni + 1 - m)] {
                prop_assert_eq!(s.u.get(ghost), mirror_u(s.u.get(inner)));
                prop_assert_eq!(s.v.get(ghost), mirror_v(s.v.get(inner)));
                prop_assert_eq!(mirror_u(s.u.get(ghost)), s.u.get(inner));
                prop_assert_eq!(mirror_v(s.v.get(ghost)), s.v.get(inner));
            }
        }
        Ok(())
    })
}

fn worker_count_determinism() -> Result<(), String> {
    let model = Euler2D::new(1.4).unwrap();
    let grid = UniformGrid2D::new((0.0, 2.0), 16, (0.0, 2.0), 16).unwrap();
    let solver = Solver2D::new(&model, grid, BoundarySpec2D::periodic(), SchemeOptions::default_2d()).unwrap();
    check(4, (0.05..0.3f64, prop::array::uniform2(-1.0..1.0f64)), |(amp, vel)| {
        let init = State2D::from_fn(&grid, |x, y| {
            let rho = 1.0 + amp * (PI * (x + 2.0 * y)).sin();
            let q = model.conserved_from_primitive(&Primitive::new(rho, vel, 1.0)).unwrap();
            (q, [0.0; 4], [0.0; 4])
        });
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| {
                let mut s = init.clone();
                for _ in 0..2 {
                    solver.step(&mut s, 0.0, 0.01).unwrap();
                }
                s
            })
        };
        prop_assert!(run(1) == run(4));
        Ok(())
    })
}

/// Runs every property; returns `(name, failure)` for each that failed.
pub fn run_all() -> Vec<(&'static str, String)> {
    let checks: [(&str, fn() -> Result<(), String>); 13] = [
        ("weight normalization", weight_normalization),
        ("constant preservation", constant_preservation),
        ("quartic exactness", quartic_exactness),
        ("mirror property", mirror_property),
        ("degree-5 correction exactness", correction_exactness),
        ("cubic mixed-flux exactness", mixed_flux_exactness),
        ("EOS round trip", eos_round_trip),
        ("L R = I", eigenvector_inverse),
        ("periodic conservation", periodic_conservation),
        ("free-stream preservation", free_stream),
        ("SSP-RK3 stability polynomial", rk3_stability_polynomial),
        ("reflective-fill involution", reflective_involution),
        ("worker-count determinism", worker_count_determinism),
    ];
    checks
        .into_iter()
        .filter_map(|(name, f)| f().err().map(|e| (name, e)))
        .collect()
}
