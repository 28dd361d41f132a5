//! Conservation-law systems.
//!
//! A model supplies the physical flux along each axis, the action of the flux
//! Jacobian on a derivative vector (the flux of the derivative equations), a
//! spectral radius bound, state validation, and optionally a characteristic
//! basis and a source term.

mod euler;
mod scalar_law;

pub use euler::{Euler1D, Euler2D, EulerParams, Primitive};
pub use scalar_law::{ScalarFlux, ScalarModel};

use crate::error::{CellIndex, HwenoError, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

/// State used to build the characteristic basis at a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FaceAverage {
    #[default]
    Roe,
    Arithmetic,
}

pub type Matrix<T, const M: usize> = [[T; M]; M];

/// Left and right eigenvector matrices of a flux Jacobian; `left * right = I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicBasis<T, const M: usize> {
    pub left: Matrix<T, M>,
    pub right: Matrix<T, M>,
}

impl<T: Real, const M: usize> CharacteristicBasis<T, M> {
    pub fn identity() -> Self {
        let id = identity();
        Self { left: id, right: id }
    }

    #[inline(always)]
    pub fn to_characteristic(&self, q: &[T; M]) -> [T; M] {
        mat_vec(&self.left, q)
    }

    /// Fields are summed in outside-in pairs, so a reflection that swaps the
    /// two acoustic fields gives bitwise reflected states.
    #[inline(always)]
    pub fn to_physical(&self, w: &[T; M]) -> [T; M] {
        std::array::from_fn(|i| {
            let r = &self.right[i];
            let mut s = T::zero();
            for j in 0..M / 2 {
                s = s + (r[j] * w[j] + r[M - 1 - j] * w[M - 1 - j]);
            }
            if M % 2 == 1 {
                s = s + r[M / 2] * w[M / 2];
            }
            s
        })
    }
}

pub fn identity<T: Real, const M: usize>() -> Matrix<T, M> {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { T::one() } else { T::zero() }))
}

#[inline(always)]
pub fn mat_vec<T: Real, const M: usize>(a: &Matrix<T, M>, x: &[T; M]) -> [T; M] {
    std::array::from_fn(|i| {
        let mut s = T::zero();
        for j in 0..M {
            s = s + a[i][j] * x[j];
        }
        s
    })
}

pub fn mat_mul<T: Real, const M: usize>(a: &Matrix<T, M>, b: &Matrix<T, M>) -> Matrix<T, M> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut s = T::zero();
            for k in 0..M {
                s = s + a[i][k] * b[k][j];
            }
            s
        })
    })
}

pub trait ConservationLaw<T: Real, const M: usize>: Send + Sync {
    fn name(&self) -> &str;

    fn flux(&self, u: &[T; M], axis: Axis) -> [T; M];

    /// `A(u) v`, where `A` is the flux Jacobian along `axis`.
    fn jacobian_apply(&self, u: &[T; M], v: &[T; M], axis: Axis) -> [T; M];

    /// Largest eigenvalue magnitude of the flux Jacobian.
    fn spectral_radius(&self, u: &[T; M], axis: Axis) -> T;

    /// Rejects states outside the admissible set with a short description.
    fn validate(&self, _u: &[T; M]) -> std::result::Result<(), String> {
        Ok(())
    }

    /// `None` means the identity basis (componentwise interpolation).
    fn characteristic_basis(
        &self,
        _left: &[T; M],
        _right: &[T; M],
        _axis: Axis,
        _average: FaceAverage,
    ) -> Result<Option<CharacteristicBasis<T, M>>> {
        Ok(None)
    }

    fn has_source(&self) -> bool {
        false
    }

    /// Source term `S(u)`; zero unless [`has_source`](Self::has_source).
    fn source(&self, _u: &[T; M]) -> [T; M] {
        [T::zero(); M]
    }

    /// Source Jacobian applied to a derivative vector.
    fn source_jacobian_apply(&self, _u: &[T; M], _v: &[T; M]) -> [T; M] {
        [T::zero(); M]
    }

    /// Sign pattern of a mirror image across a wall normal to `axis`.
    fn reflection_signs(&self, axis: Axis) -> [T; M];
}

/// Maximum spectral radius over `states`; errors on the first invalid state.
pub fn max_wave_speed<T: Real, const M: usize, L: ConservationLaw<T, M> + ?Sized>(
    model: &L,
    states: &[[T; M]],
    axis: Axis,
) -> Result<T> {
    let mut alpha = T::zero();
    for (k, u) in states.iter().enumerate() {
        if let Err(detail) = model.validate(u) {
            return Err(HwenoError::Positivity {
                cell: CellIndex::Line(k as isize),
                at: Default::default(),
                detail,
            });
        }
        let s = model.spectral_radius(u, axis);
        if !s.is_finite() {
            return Err(HwenoError::NonFinite {
                cell: CellIndex::Line(k as isize),
                at: Default::default(),
                what: "wave speed",
            });
        }
        if s > alpha {
            alpha = s;
        }
    }
    Ok(alpha)
}
