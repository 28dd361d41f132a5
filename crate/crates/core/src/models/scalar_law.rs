use super::{Axis, ConservationLaw};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarFlux<T> {
    /// `f(u) = a_x u`, `g(u) = a_y u`.
    Linear { ax: T, ay: T },
    /// `f(u) = g(u) = u^2 / 2`.
    Burgers,
}

/// Scalar conservation law `u_t + f(u)_x [+ g(u)_y] = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarModel<T> {
    pub kind: ScalarFlux<T>,
}

impl<T: Real> ScalarModel<T> {
    pub fn burgers() -> Self {
        Self { kind: ScalarFlux::Burgers }
    }

    pub fn advection(ax: T) -> Self {
        Self::advection_2d(ax, T::zero())
    }

    pub fn advection_2d(ax: T, ay: T) -> Self {
        Self {
            kind: ScalarFlux::Linear { ax, ay },
        }
    }

    #[inline(always)]
    pub fn f(&self, u: T, axis: Axis) -> T {
        match self.kind {
            ScalarFlux::Linear { ax, ay } => match axis {
                Axis::X => ax * u,
                Axis::Y => ay * u,
            },
            ScalarFlux::Burgers => T::lit(0.5) * u * u,
        }
    }

    /// `f'(u)`.
    #[inline(always)]
    pub fn df(&self, u: T, axis: Axis) -> T {
        match self.kind {
            ScalarFlux::Linear { ax, ay } => match axis {
                Axis::X => ax,
                Axis::Y => ay,
            },
            ScalarFlux::Burgers => u,
        }
    }
}

impl<T: Real> ConservationLaw<T, 1> for ScalarModel<T> {
    fn name(&self) -> &str {
        match self.kind {
            ScalarFlux::Linear { .. } => "linear advection",
            ScalarFlux::Burgers => "burgers",
        }
    }

    #[inline(always)]
    fn flux(&self, u: &[T; 1], axis: Axis) -> [T; 1] {
        [self.f(u[0], axis)]
    }

    #[inline(always)]
    fn jacobian_apply(&self, u: &[T; 1], v: &[T; 1], axis: Axis) -> [T; 1] {
        [self.df(u[0], axis) * v[0]]
    }

    #[inline(always)]
    fn spectral_radius(&self, u: &[T; 1], axis: Axis) -> T {
        self.df(u[0], axis).abs()
    }

    fn validate(&self, u: &[T; 1]) -> Result<(), String> {
        if u[0].is_finite() {
            Ok(())
        } else {
            Err(format!("non-finite value {}", u[0]))
        }
    }

    fn reflection_signs(&self, _axis: Axis) -> [T; 1] {
        [T::one()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::max_wave_speed;
    use proptest::prelude::*;

    #[test]
    fn wave_speeds() {
        let b = ScalarModel::<f64>::burgers();
        let states: Vec<[f64; 1]> = [-1.0, 0.5, 2.0, 1.0].iter().map(|u| [*u]).collect();
        assert_eq!(max_wave_speed(&b, &states, Axis::X).unwrap(), 2.0);
        let a = ScalarModel::advection(-0.75);
        assert_eq!(max_wave_speed(&a, &states, Axis::X).unwrap(), 0.75);
        assert!(b.characteristic_basis(&[1.0], &[2.0], Axis::X, Default::default()).unwrap().is_none());
        assert_eq!(b.source(&[3.0]), [0.0]);
    }

    proptest! {
        #[test]
        fn derivative_matches_flux(u in -5.0..5.0f64) {
            let b = ScalarModel::<f64>::burgers();
            let h = 1e-6;
            let fd = (b.f(u + h, Axis::X) - b.f(u - h, Axis::X)) / (2.0 * h);
            prop_assert!((fd - b.df(u, Axis::X)).abs() < 1e-8);
        }
    }
}
