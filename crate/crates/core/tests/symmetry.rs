use std::f64::consts::PI;

use hweno_core::{
    Axis, BoundaryCondition, BoundarySpec2D, ConservationLaw, Euler2D, Primitive, SchemeOptions, Solver2D, State2D, UniformGrid2D,
};

/// Largest deviation of `s` from its mirror image about the vertical midline.
fn asymmetry(model: &Euler2D<f64>, s: &State2D<f64, 4>) -> f64 {
    let signs = model.reflection_signs(Axis::X);
    let (nx, ny) = (s.nx() as isize, s.ny() as isize);
    let mut worst: f64 = 0.0;
    for j in 1..=ny {
        for i in 1..=nx {
            let m = nx + 1 - i;
            for c in 0..4 {
                worst = worst
                    .max((s.u.get(i, j)[c] - signs[c] * s.u.get(m, j)[c]).abs())
                    .max((s.v.get(i, j)[c] + signs[c] * s.v.get(m, j)[c]).abs())
                    .max((s.w.get(i, j)[c] - signs[c] * s.w.get(m, j)[c]).abs());
            }
        }
    }
    worst
}

#[test]
fn mirror_symmetric_data_stays_bitwise_symmetric() {
    let model = Euler2D::with_gravity(5.0 / 3.0, 1.0).unwrap();
    let (nx, ny) = (16, 24);
    let grid = UniformGrid2D::new((0.0, 1.0), nx, (0.0, 1.5), ny).unwrap();
    let walls = BoundarySpec2D::uniform(BoundaryCondition::Reflective);
    // tabulate a symmetric profile per column pair so the data is exactly mirrored
    let h = 1.0 / nx as f64;
    let mut s = State2D::from_fn(&grid, |_, _| ([0.0; 4], [0.0; 4], [0.0; 4]));
    for j in 1..=ny as isize {
        let y = grid.y.center(j);
        for i in 1..=(nx / 2) as isize {
            let d = (nx as f64 / 2.0 - i as f64 + 0.5) * h;
            let rho = if y < 0.75 + 0.1 * (2.0 * PI * d).cos() { 2.0 } else { 1.0 };
            let vy = 0.05 * (2.0 * PI * d).cos();
            let q = model.conserved_from_primitive(&Primitive::new(rho, [0.3 * d, vy], 2.0 - y)).unwrap();
            let dq = [0.1 * d, -0.2, 0.05 * d, 0.3];
            s.u.set(i, j, q);
            s.v.set(i, j, dq);
            let m = nx as isize + 1 - i;
            let signs = model.reflection_signs(Axis::X);
            s.u.set(m, j, std::array::from_fn(|c| signs[c] * q[c]));
            s.v.set(m, j, std::array::from_fn(|c| -signs[c] * dq[c]));
        }
    }
    assert_eq!(asymmetry(&model, &s), 0.0);
    let mut options = SchemeOptions::default_2d();
    options.source_in_derivatives = true;
    for characteristic in [true, false] {
        options.characteristic = characteristic;
        let solver = Solver2D::new(&model, grid, walls.clone(), options.clone()).unwrap();
        let mut state = s.clone();
        for _ in 0..5 {
            solver.step(&mut state, 0.0, 1e-3).unwrap();
        }
        assert_eq!(asymmetry(&model, &state), 0.0, "characteristic = {characteristic}");
    }
}
