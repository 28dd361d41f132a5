//! Ideal-gas Euler equations in one and two dimensions.
//!
//! Conserved variables are `(rho, rho*u, E)` in 1D and `(rho, rho*u, rho*v, E)`
//! in 2D, with `E = P/(gamma-1) + rho*|vel|^2/2`.

use super::{Axis, CharacteristicBasis, ConservationLaw, FaceAverage, Matrix};
use crate::error::{CellIndex, HwenoError, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerParams<T> {
    pub gamma_gas: T,
    /// Body force along +y in 2D; enters the y-momentum and energy equations.
    pub gravity: T,
}

impl<T: Real> EulerParams<T> {
    pub fn new(gamma_gas: T) -> Result<Self> {
        Self::with_gravity(gamma_gas, T::zero())
    }

    pub fn with_gravity(gamma_gas: T, gravity: T) -> Result<Self> {
        if !(gamma_gas > T::one()) || !gamma_gas.is_finite() {
            return Err(HwenoError::InvalidConfig(format!(
                "ratio of specific heats must exceed 1, got {gamma_gas}"
            )));
        }
        if !gravity.is_finite() {
            return Err(HwenoError::InvalidConfig("non-finite gravity".into()));
        }
        Ok(Self { gamma_gas, gravity })
    }
}

/// Density, velocity components and pressure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Primitive<T, const D: usize> {
    pub rho: T,
    pub vel: [T; D],
    pub pressure: T,
}

impl<T: Real, const D: usize> Primitive<T, D> {
    pub fn new(rho: T, vel: [T; D], pressure: T) -> Self {
        Self { rho, vel, pressure }
    }

    fn kinetic(&self) -> T {
        let mut q2 = T::zero();
        for c in self.vel {
            q2 = q2 + c * c;
        }
        T::lit(0.5) * self.rho * q2
    }

    pub fn sound_speed(&self, gamma_gas: T) -> T {
        (gamma_gas * self.pressure / self.rho).sqrt()
    }

    fn check(&self) -> Result<()> {
        if self.rho > T::zero() && self.pressure > T::zero() && self.vel.iter().all(|c| c.is_finite()) {
            Ok(())
        } else {
            Err(positivity(format!(
                "rho = {}, P = {}",
                self.rho, self.pressure
            )))
        }
    }
}

fn positivity(detail: String) -> HwenoError {
    HwenoError::Positivity {
        cell: CellIndex::Line(0),
        at: Default::default(),
        detail,
    }
}

/// Velocity components and pressure from conserved values, unchecked.
#[inline(always)]
fn unpack<T: Real, const D: usize>(gamma_gas: T, rho: T, mom: [T; D], energy: T) -> ([T; D], T) {
    let inv = T::one() / rho;
    let vel = mom.map(|m| m * inv);
    let mut ke = T::zero();
    for k in 0..D {
        ke = ke + mom[k] * vel[k];
    }
    (vel, (gamma_gas - T::one()) * (energy - T::lit(0.5) * ke))
}

fn validate_conserved<T: Real, const D: usize>(gamma_gas: T, rho: T, mom: [T; D], energy: T) -> std::result::Result<(), String> {
    if !(rho > T::zero()) || !rho.is_finite() {
        return Err(format!("density {rho}"));
    }
    let (_, p) = unpack(gamma_gas, rho, mom, energy);
    if !(p > T::zero()) || !p.is_finite() {
        return Err(format!("pressure {p} (rho = {rho})"));
    }
    Ok(())
}

/// Face state for the characteristic basis: velocity, total enthalpy, sound speed.
fn face_state<T: Real, const D: usize>(
    gamma_gas: T,
    left: (T, [T; D], T),
    right: (T, [T; D], T),
    average: FaceAverage,
) -> Result<([T; D], T, T)> {
    let g1 = gamma_gas - T::one();
    let enthalpy = |rho: T, mom: [T; D], e: T| -> Result<([T; D], T)> {
        validate_conserved(gamma_gas, rho, mom, e).map_err(positivity)?;
        let (vel, p) = unpack(gamma_gas, rho, mom, e);
        Ok((vel, (e + p) / rho))
    };
    let (vel, h) = match average {
        FaceAverage::Roe => {
            let (vl, hl) = enthalpy(left.0, left.1, left.2)?;
            let (vr, hr) = enthalpy(right.0, right.1, right.2)?;
            let wl = left.0.sqrt();
            let wr = right.0.sqrt();
            let inv = T::one() / (wl + wr);
            let vel: [T; D] = std::array::from_fn(|k| (wl * vl[k] + wr * vr[k]) * inv);
            (vel, (wl * hl + wr * hr) * inv)
        }
        FaceAverage::Arithmetic => {
            let half = T::lit(0.5);
            let rho = half * (left.0 + right.0);
            let mom: [T; D] = std::array::from_fn(|k| half * (left.1[k] + right.1[k]));
            enthalpy(rho, mom, half * (left.2 + right.2))?
        }
    };
    let mut q2 = T::zero();
    for c in vel {
        q2 = q2 + c * c;
    }
    let c2 = g1 * (h - T::lit(0.5) * q2);
    if !(c2 > T::zero()) {
        return Err(positivity(format!("averaged sound speed squared {c2}")));
    }
    Ok((vel, h, c2.sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Euler1D<T> {
    pub params: EulerParams<T>,
}

impl<T: Real> Euler1D<T> {
    pub fn new(gamma_gas: T) -> Result<Self> {
        Ok(Self {
            params: EulerParams::new(gamma_gas)?,
        })
    }

    pub fn conserved_from_primitive(&self, p: &Primitive<T, 1>) -> Result<[T; 3]> {
        p.check()?;
        let e = p.pressure / (self.params.gamma_gas - T::one()) + p.kinetic();
        Ok([p.rho, p.rho * p.vel[0], e])
    }

    pub fn primitive_from_conserved(&self, u: &[T; 3]) -> Result<Primitive<T, 1>> {
        validate_conserved(self.params.gamma_gas, u[0], [u[1]], u[2]).map_err(positivity)?;
        let (vel, p) = unpack(self.params.gamma_gas, u[0], [u[1]], u[2]);
        Ok(Primitive::new(u[0], vel, p))
    }

    #[inline(always)]
    fn pressure(&self, u: &[T; 3]) -> T {
        unpack(self.params.gamma_gas, u[0], [u[1]], u[2]).1
    }
}

impl<T: Real> ConservationLaw<T, 3> for Euler1D<T> {
    fn name(&self) -> &str {
        "euler 1d"
    }

    #[inline(always)]
    fn flux(&self, u: &[T; 3], _axis: Axis) -> [T; 3] {
        let vel = u[1] / u[0];
        let p = self.pressure(u);
        [u[1], u[1] * vel + p, vel * (u[2] + p)]
    }

    #[inline(always)]
    fn jacobian_apply(&self, u: &[T; 3], v: &[T; 3], _axis: Axis) -> [T; 3] {
        let g = self.params.gamma_gas;
        let g1 = g - T::one();
        let vel = u[1] / u[0];
        let p = self.pressure(u);
        let h = (u[2] + p) / u[0];
        let half = T::lit(0.5);
        let q2 = vel * vel;
        [
            v[1],
            half * (g - T::lit(3.0)) * q2 * v[0] + (T::lit(3.0) - g) * vel * v[1] + g1 * v[2],
            vel * (half * g1 * q2 - h) * v[0] + (h - g1 * q2) * v[1] + g * vel * v[2],
        ]
    }

    #[inline(always)]
    fn spectral_radius(&self, u: &[T; 3], _axis: Axis) -> T {
        let vel = u[1] / u[0];
        let c = (self.params.gamma_gas * self.pressure(u) / u[0]).sqrt();
        vel.abs() + c
    }

    fn validate(&self, u: &[T; 3]) -> std::result::Result<(), String> {
        validate_conserved(self.params.gamma_gas, u[0], [u[1]], u[2])
    }

    fn characteristic_basis(
        &self,
        left: &[T; 3],
        right: &[T; 3],
        _axis: Axis,
        average: FaceAverage,
    ) -> Result<Option<CharacteristicBasis<T, 3>>> {
        let g1 = self.params.gamma_gas - T::one();
        let ([vel], h, c) = face_state(
            self.params.gamma_gas,
            (left[0], [left[1]], left[2]),
            (right[0], [right[1]], right[2]),
            average,
        )?;
        let one = T::one();
        let half = T::lit(0.5);
        let b1 = g1 / (c * c);
        let b2 = half * b1 * vel * vel;
        let right_m: Matrix<T, 3> = [
            [one, one, one],
            [vel - c, vel, vel + c],
            [h - vel * c, half * vel * vel, h + vel * c],
        ];
        let left_m: Matrix<T, 3> = [
            [half * (b2 + vel / c), -half * (b1 * vel + one / c), half * b1],
            [one - b2, b1 * vel, -b1],
            [half * (b2 - vel / c), -half * (b1 * vel - one / c), half * b1],
        ];
        Ok(Some(CharacteristicBasis {
            left: left_m,
            right: right_m,
        }))
    }

    fn reflection_signs(&self, _axis: Axis) -> [T; 3] {
        [T::one(), -T::one(), T::one()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Euler2D<T> {
    pub params: EulerParams<T>,
}

impl<T: Real> Euler2D<T> {
    pub fn new(gamma_gas: T) -> Result<Self> {
        Ok(Self {
            params: EulerParams::new(gamma_gas)?,
        })
    }

    pub fn with_gravity(gamma_gas: T, gravity: T) -> Result<Self> {
        Ok(Self {
            params: EulerParams::with_gravity(gamma_gas, gravity)?,
        })
    }

    pub fn conserved_from_primitive(&self, p: &Primitive<T, 2>) -> Result<[T; 4]> {
        p.check()?;
        let e = p.pressure / (self.params.gamma_gas - T::one()) + p.kinetic();
        Ok([p.rho, p.rho * p.vel[0], p.rho * p.vel[1], e])
    }

    pub fn primitive_from_conserved(&self, u: &[T; 4]) -> Result<Primitive<T, 2>> {
        validate_conserved(self.params.gamma_gas, u[0], [u[1], u[2]], u[3]).map_err(positivity)?;
        let (vel, p) = unpack(self.params.gamma_gas, u[0], [u[1], u[2]], u[3]);
        Ok(Primitive::new(u[0], vel, p))
    }

    #[inline(always)]
    fn pressure(&self, u: &[T; 4]) -> T {
        unpack(self.params.gamma_gas, u[0], [u[1], u[2]], u[3]).1
    }

    /// Basis along x for normal velocity `un` and tangential velocity `ut`.
    fn basis_x(&self, un: T, ut: T, h: T, c: T) -> CharacteristicBasis<T, 4> {
        let g1 = self.params.gamma_gas - T::one();
        let one = T::one();
        let zero = T::zero();
        let half = T::lit(0.5);
        let q2 = un * un + ut * ut;
        let b1 = g1 / (c * c);
        let b2 = half * b1 * q2;
        let right: Matrix<T, 4> = [
            [one, one, zero, one],
            [un - c, un, zero, un + c],
            [ut, ut, one, ut],
            [h - un * c, half * q2, ut, h + un * c],
        ];
        let left: Matrix<T, 4> = [
            [half * (b2 + un / c), -half * (b1 * un + one / c), -half * b1 * ut, half * b1],
            [one - b2, b1 * un, b1 * ut, -b1],
            [-ut, zero, one, zero],
            [half * (b2 - un / c), -half * (b1 * un - one / c), -half * b1 * ut, half * b1],
        ];
        CharacteristicBasis { left, right }
    }
}

/// Swaps the two momentum components (rows of `right`, columns of `left`).
fn swap_momentum<T: Copy>(b: &mut CharacteristicBasis<T, 4>) {
    b.right.swap(1, 2);
    for row in b.left.iter_mut() {
        row.swap(1, 2);
    }
}

impl<T: Real> ConservationLaw<T, 4> for Euler2D<T> {
    fn name(&self) -> &str {
        "euler 2d"
    }

    #[inline(always)]
    fn flux(&self, u: &[T; 4], axis: Axis) -> [T; 4] {
        let p = self.pressure(u);
        match axis {
            Axis::X => {
                let a = u[1] / u[0];
                [u[1], u[1] * a + p, u[2] * a, a * (u[3] + p)]
            }
            Axis::Y => {
                let b = u[2] / u[0];
                [u[2], u[1] * b, u[2] * b + p, b * (u[3] + p)]
            }
        }
    }

    #[inline(always)]
    fn jacobian_apply(&self, u: &[T; 4], v: &[T; 4], axis: Axis) -> [T; 4] {
        let g = self.params.gamma_gas;
        let g1 = g - T::one();
        let inv = T::one() / u[0];
        let (n, t) = match axis {
            Axis::X => (1, 2),
            Axis::Y => (2, 1),
        };
        let un = u[n] * inv;
        let ut = u[t] * inv;
        let q2 = un * un + ut * ut;
        let p = g1 * (u[3] - T::lit(0.5) * u[0] * q2);
        let h = (u[3] + p) * inv;
        let phi = T::lit(0.5) * g1 * q2;
        let mut out = [T::zero(); 4];
        out[0] = v[n];
        out[n] = (phi - un * un) * v[0] + (T::lit(3.0) - g) * un * v[n] - g1 * ut * v[t] + g1 * v[3];
        out[t] = -un * ut * v[0] + ut * v[n] + un * v[t];
        out[3] = un * (phi - h) * v[0] + (h - g1 * un * un) * v[n] - g1 * un * ut * v[t] + g * un * v[3];
        out
    }

    #[inline(always)]
    fn spectral_radius(&self, u: &[T; 4], axis: Axis) -> T {
        let vel = match axis {
            Axis::X => u[1],
            Axis::Y => u[2],
        } / u[0];
        let c = (self.params.gamma_gas * self.pressure(u) / u[0]).sqrt();
        vel.abs() + c
    }

    fn validate(&self, u: &[T; 4]) -> std::result::Result<(), String> {
        validate_conserved(self.params.gamma_gas, u[0], [u[1], u[2]], u[3])
    }

    fn characteristic_basis(
        &self,
        left: &[T; 4],
        right: &[T; 4],
        axis: Axis,
        average: FaceAverage,
    ) -> Result<Option<CharacteristicBasis<T, 4>>> {
        let ([a, b], h, c) = face_state(
            self.params.gamma_gas,
            (left[0], [left[1], left[2]], left[3]),
            (right[0], [right[1], right[2]], right[3]),
            average,
        )?;
        Ok(Some(match axis {
            Axis::X => self.basis_x(a, b, h, c),
            Axis::Y => {
                let mut basis = self.basis_x(b, a, h, c);
                swap_momentum(&mut basis);
                basis
            }
        }))
    }

    fn has_source(&self) -> bool {
        self.params.gravity != T::zero()
    }

    #[inline(always)]
    fn source(&self, u: &[T; 4]) -> [T; 4] {
        let g = self.params.gravity;
        [T::zero(), T::zero(), g * u[0], g * u[2]]
    }

    /// The gravity source is linear in the conserved variables.
    #[inline(always)]
    fn source_jacobian_apply(&self, _u: &[T; 4], v: &[T; 4]) -> [T; 4] {
        self.source(v)
    }

    fn reflection_signs(&self, axis: Axis) -> [T; 4] {
        let one = T::one();
        match axis {
            Axis::X => [one, -one, one, one],
            Axis::Y => [one, one, -one, one],
        }
    }
}
