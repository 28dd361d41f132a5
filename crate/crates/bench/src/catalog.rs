//! Benchmark problems: domains, initial data, boundary conditions and
//! default settings.
//!
//! Initial derivatives are the analytic `x` (and `y`) derivatives of the
//! initial conserved variables, zero on each side of a jump.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use hweno_core::boundaries::{BoundaryCondition, BoundarySpec1D, BoundarySpec2D, Segment, ShockFill, ShockGeometry};
use hweno_core::hweno::WeightConfig;
use hweno_core::mesh::State2D;
use hweno_core::models::{Axis, ConservationLaw, Euler1D, Euler2D, Primitive};

use crate::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemName {
    Burgers1dAcc,
    Euler1dAcc,
    ShuOsher,
    BlastWave,
    Burgers2dAcc,
    Euler2dAcc,
    DoubleMach,
    ForwardStep,
    Mach2000Jet,
    RayleighTaylor,
}

impl ProblemName {
    pub const ALL: [ProblemName; 10] = [
        ProblemName::Burgers1dAcc,
        ProblemName::Euler1dAcc,
        ProblemName::ShuOsher,
        ProblemName::BlastWave,
        ProblemName::Burgers2dAcc,
        ProblemName::Euler2dAcc,
        ProblemName::DoubleMach,
        ProblemName::ForwardStep,
        ProblemName::Mach2000Jet,
        ProblemName::RayleighTaylor,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ProblemName::Burgers1dAcc => "burgers1d_acc",
            ProblemName::Euler1dAcc => "euler1d_acc",
            ProblemName::ShuOsher => "shu_osher",
            ProblemName::BlastWave => "blast_wave",
            ProblemName::Burgers2dAcc => "burgers2d_acc",
            ProblemName::Euler2dAcc => "euler2d_acc",
            ProblemName::DoubleMach => "double_mach",
            ProblemName::ForwardStep => "forward_step",
            ProblemName::Mach2000Jet => "mach2000_jet",
            ProblemName::RayleighTaylor => "rayleigh_taylor",
        }
    }

    /// Smooth problems with an exact solution.
    pub fn is_accuracy(self) -> bool {
        matches!(
            self,
            ProblemName::Burgers1dAcc | ProblemName::Euler1dAcc | ProblemName::Burgers2dAcc | ProblemName::Euler2dAcc
        )
    }

    pub fn is_2d(self) -> bool {
        !matches!(
            self,
            ProblemName::Burgers1dAcc | ProblemName::Euler1dAcc | ProblemName::ShuOsher | ProblemName::BlastWave
        )
    }
}

impl fmt::Display for ProblemName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProblemName {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ProblemName::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| BenchError::UnknownProblem(s.to_string()))
    }
}

/// Grid size; `ny` is `None` for 1D problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resolution {
    pub nx: usize,
    pub ny: Option<usize>,
}

impl Resolution {
    pub fn line(nx: usize) -> Self {
        Self { nx, ny: None }
    }

    pub fn plane(nx: usize, ny: usize) -> Self {
        Self { nx, ny: Some(ny) }
    }
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ny {
            Some(ny) => write!(f, "{}x{}", self.nx, ny),
            None => write!(f, "{}", self.nx),
        }
    }
}

/// Settings of one catalog entry.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub name: ProblemName,
    pub x_range: (f64, f64),
    pub y_range: Option<(f64, f64)>,
    pub t_final: f64,
    pub default_resolutions: Vec<Resolution>,
    /// `ny / nx` for 2D problems.
    pub aspect: f64,
    pub gamma_gas: Option<f64>,
    pub gravity: f64,
    pub weights: WeightConfig<f64>,
    pub dt_initial: Option<f64>,
    /// Add the source Jacobian to the derivative equations.
    pub source_in_derivatives: bool,
}

impl ProblemSpec {
    pub fn resolution(&self, nx: usize, ny: Option<usize>) -> Resolution {
        if self.y_range.is_some() {
            Resolution::plane(nx, ny.unwrap_or_else(|| ((nx as f64) * self.aspect).round() as usize))
        } else {
            Resolution::line(nx)
        }
    }
}

fn weights(gamma0: f64) -> WeightConfig<f64> {
    WeightConfig::symmetric(gamma0, 0.9, 1e-10).expect("catalog weights are valid")
}

pub fn problem_spec(name: ProblemName) -> ProblemSpec {
    let one_d = |x_range, t_final, res: &[usize]| ProblemSpec {
        name,
        x_range,
        y_range: None,
        t_final,
        default_resolutions: res.iter().map(|&n| Resolution::line(n)).collect(),
        aspect: 0.0,
        gamma_gas: Some(1.4),
        gravity: 0.0,
        weights: weights(0.95),
        dt_initial: None,
        source_in_derivatives: false,
    };
    let two_d = |x_range, y_range, t_final, res: &[(usize, usize)]| ProblemSpec {
        name,
        x_range,
        y_range: Some(y_range),
        t_final,
        default_resolutions: res.iter().map(|&(a, b)| Resolution::plane(a, b)).collect(),
        aspect: res[0].1 as f64 / res[0].0 as f64,
        gamma_gas: Some(1.4),
        gravity: 0.0,
        weights: weights(0.99),
        dt_initial: None,
        source_in_derivatives: false,
    };
    match name {
        ProblemName::Burgers1dAcc => ProblemSpec {
            gamma_gas: None,
            ..one_d((-PI, PI), 0.5, &[40, 80, 160, 320, 640])
        },
        ProblemName::Euler1dAcc => one_d((0.0, 2.0), 2.0, &[20, 40, 80, 160, 320]),
        ProblemName::ShuOsher => one_d((-5.0, 5.0), 1.8, &[400]),
        ProblemName::BlastWave => one_d((0.0, 1.0), 0.038, &[800]),
        ProblemName::Burgers2dAcc => ProblemSpec {
            gamma_gas: None,
            ..two_d(
                (-2.0 * PI, 2.0 * PI),
                (-2.0 * PI, 2.0 * PI),
                0.5,
                &[(20, 20), (40, 40), (80, 80), (160, 160), (320, 320)],
            )
        },
        ProblemName::Euler2dAcc => two_d((0.0, 2.0), (0.0, 2.0), 2.0, &[(10, 10), (20, 20), (40, 40), (80, 80), (160, 160)]),
        ProblemName::DoubleMach => two_d((0.0, 4.0), (0.0, 1.0), 0.2, &[(480, 120)]),
        ProblemName::ForwardStep => two_d((0.0, 3.0), (0.0, 1.0), 4.0, &[(480, 160)]),
        ProblemName::Mach2000Jet => ProblemSpec {
            gamma_gas: Some(5.0 / 3.0),
            weights: weights(0.8),
            dt_initial: Some(1e-7),
            ..two_d((0.0, 1.0), (-0.25, 0.25), 0.001, &[(160, 80)])
        },
        ProblemName::RayleighTaylor => ProblemSpec {
            gamma_gas: Some(5.0 / 3.0),
            gravity: 1.0,
            source_in_derivatives: true,
            ..two_d((0.0, 0.25), (0.0, 1.0), 1.95, &[(60, 240)])
        },
    }
}

/// Conserved state and its derivative from primitive variables `(rho, vel, p)`
/// and their derivatives along one direction.
pub fn conserved_with_derivative_1d(model: &Euler1D<f64>, w: [f64; 3], dw: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let g = model.params.gamma_gas;
    let [rho, u, p] = w;
    let [dr, du, dp] = dw;
    let q = [rho, rho * u, p / (g - 1.0) + 0.5 * rho * u * u];
    let dq = [dr, dr * u + rho * du, dp / (g - 1.0) + 0.5 * dr * u * u + rho * u * du];
    (q, dq)
}

/// As [`conserved_with_derivative_1d`] for `(rho, u, v, p)`.
pub fn conserved_with_derivative_2d(model: &Euler2D<f64>, w: [f64; 4], dw: [f64; 4]) -> ([f64; 4], [f64; 4]) {
    let g = model.params.gamma_gas;
    let [rho, u, v, p] = w;
    let [dr, du, dv, dp] = dw;
    let q = [rho, rho * u, rho * v, p / (g - 1.0) + 0.5 * rho * (u * u + v * v)];
    let dq = [
        dr,
        dr * u + rho * du,
        dr * v + rho * dv,
        dp / (g - 1.0) + 0.5 * dr * (u * u + v * v) + rho * (u * du + v * dv),
    ];
    (q, dq)
}

pub fn burgers1d_initial(x: f64) -> ([f64; 1], [f64; 1]) {
    ([0.5 + x.sin()], [x.cos()])
}

/// `(u, u_x, u_y)`.
pub fn burgers2d_initial(x: f64, y: f64) -> ([f64; 1], [f64; 1], [f64; 1]) {
    let z = 0.5 * (x + y);
    let d = 0.5 * z.cos();
    ([0.5 + z.sin()], [d], [d])
}

pub fn euler1d_acc_initial(model: &Euler1D<f64>, x: f64) -> ([f64; 3], [f64; 3]) {
    let rho = 1.0 + 0.2 * (PI * x).sin();
    let dr = 0.2 * PI * (PI * x).cos();
    conserved_with_derivative_1d(model, [rho, 1.0, 1.0], [dr, 0.0, 0.0])
}

pub fn euler2d_acc_initial(model: &Euler2D<f64>, x: f64, y: f64) -> ([f64; 4], [f64; 4], [f64; 4]) {
    let rho = 1.0 + 0.2 * (PI * (x + y)).sin();
    let dr = 0.2 * PI * (PI * (x + y)).cos();
    let w = [rho, 1.0, 1.0, 1.0];
    let (q, dq) = conserved_with_derivative_2d(model, w, [dr, 0.0, 0.0, 0.0]);
    (q, dq, dq)
}

/// Post-shock state left of `x = -4`.
pub const SHU_OSHER_LEFT: [f64; 3] = [3.857143, 2.629369, 10.333333];

pub fn shu_osher_initial(model: &Euler1D<f64>, x: f64) -> ([f64; 3], [f64; 3]) {
    if x < -4.0 {
        conserved_with_derivative_1d(model, SHU_OSHER_LEFT, [0.0; 3])
    } else {
        let rho = 1.0 + 0.2 * (5.0 * x).sin();
        conserved_with_derivative_1d(model, [rho, 0.0, 1.0], [(5.0 * x).cos(), 0.0, 0.0])
    }
}

pub fn blast_wave_initial(model: &Euler1D<f64>, x: f64) -> ([f64; 3], [f64; 3]) {
    let p = if x < 0.1 {
        1000.0
    } else if x < 0.9 {
        0.01
    } else {
        100.0
    };
    conserved_with_derivative_1d(model, [1.0, 0.0, p], [0.0; 3])
}

/// `(rho, u, v, p)` behind the Mach 10 shock.
pub fn double_mach_post_shock() -> [f64; 4] {
    [8.0, 8.25 * (PI / 6.0).cos(), -8.25 * (PI / 6.0).sin(), 116.5]
}

pub const DOUBLE_MACH_AHEAD: [f64; 4] = [1.4, 0.0, 0.0, 1.0];

/// Start of the reflecting wall on the bottom side.
pub fn double_mach_post_shock_wall() -> f64 {
    ShockGeometry::<f64>::double_mach().x0
}

/// Shock position at height `y` and time `t`.
pub fn double_mach_shock_x(y: f64, t: f64) -> f64 {
    ShockGeometry::double_mach().position(y, t)
}

pub fn double_mach_initial(model: &Euler2D<f64>, x: f64, y: f64) -> ([f64; 4], [f64; 4], [f64; 4]) {
    let w = if x < double_mach_shock_x(y, 0.0) {
        double_mach_post_shock()
    } else {
        DOUBLE_MACH_AHEAD
    };
    (primitive_to_conserved(model, w), [0.0; 4], [0.0; 4])
}

pub const FORWARD_STEP_STATE: [f64; 4] = [1.4, 3.0, 0.0, 1.0];

pub fn forward_step_initial(model: &Euler2D<f64>) -> ([f64; 4], [f64; 4], [f64; 4]) {
    (primitive_to_conserved(model, FORWARD_STEP_STATE), [0.0; 4], [0.0; 4])
}

pub const JET_AMBIENT: [f64; 4] = [0.5, 0.0, 0.0, 0.4127];
pub const JET_INFLOW: [f64; 4] = [5.0, 800.0, 0.0, 0.4127];
pub const JET_HALF_WIDTH: f64 = 0.05;

pub fn jet_initial(model: &Euler2D<f64>) -> ([f64; 4], [f64; 4], [f64; 4]) {
    (primitive_to_conserved(model, JET_AMBIENT), [0.0; 4], [0.0; 4])
}

/// Rayleigh-Taylor initial data with `x` and `y` derivatives.
pub fn rayleigh_taylor_initial(model: &Euler2D<f64>, x: f64, y: f64) -> ([f64; 4], [f64; 4], [f64; 4]) {
    let g = model.params.gamma_gas;
    let (rho, p, dp) = if y < 0.5 { (2.0, 2.0 * y + 1.0, 2.0) } else { (1.0, y + 1.5, 1.0) };
    let c = (g * p / rho).sqrt();
    let dc_dy = g * dp / (2.0 * rho * c);
    let k = 8.0 * PI;
    let v = -0.025 * c * (k * x).cos();
    let dv_dx = 0.025 * c * k * (k * x).sin();
    let dv_dy = -0.025 * dc_dy * (k * x).cos();
    let w = [rho, 0.0, v, p];
    let (q, dqx) = conserved_with_derivative_2d(model, w, [0.0, 0.0, dv_dx, 0.0]);
    let (_, dqy) = conserved_with_derivative_2d(model, w, [0.0, 0.0, dv_dy, dp]);
    (q, dqx, dqy)
}

/// Replaces each cell and its mirror about the vertical midline by their
/// reflected mean, so data symmetric in exact arithmetic is symmetric bitwise.
pub fn symmetrize_about_midline(model: &Euler2D<f64>, state: &mut State2D<f64, 4>) {
    let signs = model.reflection_signs(Axis::X);
    let (nx, ny) = (state.nx() as isize, state.ny() as isize);
    let mean = |a: [f64; 4], b: [f64; 4], odd: f64| -> [f64; 4] { std::array::from_fn(|c| 0.5 * (a[c] + odd * signs[c] * b[c])) };
    let reflect = |a: [f64; 4], odd: f64| -> [f64; 4] { std::array::from_fn(|c| odd * signs[c] * a[c]) };
    for j in 1..=ny {
        for i in 1..=nx / 2 {
            let m = nx + 1 - i;
            let u = mean(state.u.get(i, j), state.u.get(m, j), 1.0);
            let v = mean(state.v.get(i, j), state.v.get(m, j), -1.0);
            let w = mean(state.w.get(i, j), state.w.get(m, j), 1.0);
            state.u.set(i, j, u);
            state.v.set(i, j, v);
            state.w.set(i, j, w);
            state.u.set(m, j, reflect(u, 1.0));
            state.v.set(m, j, reflect(v, -1.0));
            state.w.set(m, j, reflect(w, 1.0));
        }
    }
}

pub const RT_BOTTOM: [f64; 4] = [2.0, 0.0, 0.0, 1.0];
pub const RT_TOP: [f64; 4] = [1.0, 0.0, 0.0, 2.5];

pub fn primitive_to_conserved(model: &Euler2D<f64>, w: [f64; 4]) -> [f64; 4] {
    model
        .conserved_from_primitive(&Primitive::new(w[0], [w[1], w[2]], w[3]))
        .expect("catalog states are physical")
}

pub fn boundary_1d(name: ProblemName) -> BoundarySpec1D<f64, 3> {
    match name {
        ProblemName::BlastWave => BoundarySpec1D {
            left: BoundaryCondition::Reflective,
            right: BoundaryCondition::Reflective,
        },
        ProblemName::ShuOsher => BoundarySpec1D {
            left: BoundaryCondition::Outflow,
            right: BoundaryCondition::Outflow,
        },
        _ => BoundarySpec1D::periodic(),
    }
}

pub fn boundary_2d(name: ProblemName, model: &Euler2D<f64>) -> BoundarySpec2D<f64, 4> {
    let state = |w| primitive_to_conserved(model, w);
    match name {
        ProblemName::DoubleMach => {
            let behind = state(double_mach_post_shock());
            let ahead = state(DOUBLE_MACH_AHEAD);
            let geometry = ShockGeometry::double_mach();
            let wall = double_mach_post_shock_wall();
            BoundarySpec2D {
                left: BoundaryCondition::Inflow(behind),
                right: BoundaryCondition::Outflow,
                bottom: BoundaryCondition::Segmented(vec![
                    Segment {
                        start: 0.0,
                        end: wall,
                        condition: BoundaryCondition::Inflow(behind),
                    },
                    Segment {
                        start: wall,
                        end: 4.0,
                        condition: BoundaryCondition::Reflective,
                    },
                ]),
                top: BoundaryCondition::ExactShock(ShockFill { behind, ahead, geometry }),
            }
        }
        ProblemName::ForwardStep => BoundarySpec2D {
            left: BoundaryCondition::Inflow(state(FORWARD_STEP_STATE)),
            right: BoundaryCondition::Outflow,
            bottom: BoundaryCondition::Reflective,
            top: BoundaryCondition::Reflective,
        },
        ProblemName::Mach2000Jet => BoundarySpec2D {
            left: BoundaryCondition::Segmented(vec![
                Segment {
                    start: -0.25,
                    end: -JET_HALF_WIDTH,
                    condition: BoundaryCondition::Inflow(state(JET_AMBIENT)),
                },
                Segment {
                    start: -JET_HALF_WIDTH,
                    end: JET_HALF_WIDTH,
                    condition: BoundaryCondition::Inflow(state(JET_INFLOW)),
                },
                Segment {
                    start: JET_HALF_WIDTH,
                    end: 0.25,
                    condition: BoundaryCondition::Inflow(state(JET_AMBIENT)),
                },
            ]),
            right: BoundaryCondition::Outflow,
            bottom: BoundaryCondition::Outflow,
            top: BoundaryCondition::Outflow,
        },
        ProblemName::RayleighTaylor => BoundarySpec2D {
            left: BoundaryCondition::Reflective,
            right: BoundaryCondition::Reflective,
            bottom: BoundaryCondition::Inflow(state(RT_BOTTOM)),
            top: BoundaryCondition::Inflow(state(RT_TOP)),
        },
        _ => BoundarySpec2D::periodic(),
    }
}
