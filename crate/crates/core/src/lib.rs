//! Fifth-order Hermite WENO finite-difference solver for hyperbolic
//! conservation laws in one and two space dimensions.
//!
//! Every cell carries the solution and its first derivatives. Face values
//! come from Hermite interpolation with nonlinear weights, fluxes are
//! Lax-Friedrichs plus central high-order corrections, and time stepping is
//! third-order SSP Runge-Kutta with a derivative limiter between stages.
//!
//! Kernels are generic over [`Scalar`] so exact rational arithmetic can check
//! them; the solver is generic over [`Real`]. The aliases below fix `f64`.

pub mod boundaries;
pub mod error;
pub mod flux;
pub mod hweno;
pub mod integrator;
pub mod mesh;
pub mod models;
pub mod scalar;
pub mod verification;

pub use boundaries::{BoundaryCondition, BoundarySpec1D, BoundarySpec2D, StepObstacle};
pub use error::{CellIndex, HwenoError, Result, StageInfo};
pub use hweno::WeightConfig;
pub use integrator::{RunConfig, RunStats, SchemeOptions, Solver1D, Solver2D};
pub use mesh::{Field1D, Field2D, State1D, State2D, UniformGrid1D, UniformGrid2D, GHOST};
pub use models::{Axis, ConservationLaw, Euler1D, Euler2D, FaceAverage, Primitive, ScalarModel};
pub use scalar::{Real, Scalar};

pub type Grid1D = UniformGrid1D<f64>;
pub type Grid2D = UniformGrid2D<f64>;
pub type ScalarState1D = State1D<f64, 1>;
pub type ScalarState2D = State2D<f64, 1>;
pub type EulerState1D = State1D<f64, 3>;
pub type EulerState2D = State2D<f64, 4>;
pub type Weights = WeightConfig<f64>;
pub type Options = SchemeOptions<f64>;
pub type Run = RunConfig<f64>;
