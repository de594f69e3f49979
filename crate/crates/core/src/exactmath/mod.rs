//! Exact integer/rational helpers and sparse bivariate polynomials.

mod combinatorics;
mod poly;
pub mod serial;
mod symmetric;

pub use combinatorics::{
    binomial, factorial, falling_factorial, falling_factorial_poly, inv_factorial, multinomial,
    shifted_rising_poly,
};
pub use poly::{BiPoly, Var};
pub use symmetric::{to_elementary, ElementaryForm};

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Float, FloatConst, FromPrimitive, One, Zero};

/// Coefficient ring for [`BiPoly`]: anything that behaves like a commutative
/// ring with a conversion from machine integers.
///
/// Implemented for `BigInt`, `BigRational`, `Ratio<i64>`, `f32`, `f64`, ...
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + FromPrimitive
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer not representable in coefficient ring")
    }
}

impl<T> Coeff for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + FromPrimitive
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Send
        + Sync
{
}

/// Floating point scalar for the numerical cross-checks: `f32` or `f64`.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {}

impl Real for f32 {}
impl Real for f64 {}
