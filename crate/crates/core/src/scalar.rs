//! Scalar abstractions.
//!
//! The stencil formulas only need field arithmetic, so they are written against
//! [`Scalar`], which exact rationals also implement. Everything that needs
//! square roots or transcendental functions (wave speeds, characteristic
//! bases, time stepping) requires [`Real`].

use std::fmt::{Debug, Display, LowerExp};
use std::ops::Neg;

use num_rational::Ratio;
use num_traits::{Float, FloatConst, FromPrimitive, Num};

/// Field arithmetic plus exact rational literals.
pub trait Scalar: Copy + PartialOrd + Debug + Num + Neg<Output = Self> {
    /// The value `num / den`, exact whenever the type can represent it.
    fn ratio(num: i64, den: i64) -> Self;

    #[inline]
    fn int(n: i64) -> Self {
        Self::ratio(n, 1)
    }

    #[inline]
    fn magnitude(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }
}

impl Scalar for f64 {
    #[inline(always)]
    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    #[inline(always)]
    fn magnitude(self) -> Self {
        self.abs()
    }
}

impl Scalar for f32 {
    #[inline(always)]
    fn ratio(num: i64, den: i64) -> Self {
        (num as f64 / den as f64) as f32
    }
}

impl Scalar for Ratio<i64> {
    fn ratio(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }
}

impl Scalar for Ratio<i128> {
    fn ratio(num: i64, den: i64) -> Self {
        Ratio::new(num as i128, den as i128)
    }
}

/// Floating-point scalar used by the solver.
pub trait Real:
    Scalar + Float + FloatConst + FromPrimitive + Send + Sync + Display + LowerExp + 'static
{
    /// Converts an `f64` literal.
    #[inline(always)]
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 literal representable")
    }

    #[inline(always)]
    fn to_f64_lossy(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f64 {}
impl Real for f32 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals_are_exact() {
        let r: Ratio<i64> = Scalar::ratio(9, 16);
        assert_eq!(r, Ratio::new(9, 16));
        assert_eq!(<f64 as Scalar>::ratio(9, 16), 0.5625);
        assert_eq!(<f32 as Scalar>::ratio(1, 4), 0.25f32);
        assert_eq!(Ratio::<i128>::int(-3).magnitude(), Ratio::from_integer(3));
    }
}
