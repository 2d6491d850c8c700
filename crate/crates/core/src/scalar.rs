//! Scalar abstractions.
//!
//! Geometry is generic over [`Real`] (implemented for `f32` and `f64`).
//! The Lie-algebra layer only needs ring/field operations and is generic
//! over [`Coefficient`], which additionally covers exact rationals so the
//! structure constants can be computed without rounding.

use std::fmt::{Debug, Display};

use num_rational::Rational64;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point scalar used by the group, frame and invariant code.
pub trait Real:
    Float + FloatConst + NumAssign + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Never fails for the implemented types.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal is representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar converts to f64")
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Field element for affine vector fields and structure constants.
pub trait Coefficient: num_traits::Num + std::ops::Neg<Output = Self> + Copy + Debug + Send + Sync + 'static {
    /// Zero test used when decomposing brackets in the generator basis.
    /// Exact for rationals, absolute 1e-12 (scaled for `f32`) for floats.
    fn is_negligible(&self) -> bool;

    fn from_i64(v: i64) -> Self;

    fn to_f64(&self) -> f64;
}

impl Coefficient for f64 {
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-12
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Coefficient for f32 {
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-6
    }
    fn from_i64(v: i64) -> Self {
        v as f32
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

impl Coefficient for Rational64 {
    fn is_negligible(&self) -> bool {
        *self.numer() == 0
    }
    fn from_i64(v: i64) -> Self {
        Rational64::from_integer(v)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_angle<T: Real>(a: T) -> T {
    let two_pi = T::TAU();
    let mut r = a % two_pi;
    if r <= -T::PI() {
        r += two_pi;
    } else if r > T::PI() {
        r -= two_pi;
    }
    r
}
