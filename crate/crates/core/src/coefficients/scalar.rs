use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::lattice::isqrt;

/// Field arithmetic needed to evaluate the closed-form kernels.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn from_i64(n: i64) -> Self;
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }
    /// `sqrt(norm_sq)`, or `None` when it is not representable.
    fn radius(norm_sq: i64) -> Option<Self>;
    fn abs_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn radius(norm_sq: i64) -> Option<Self> {
        (norm_sq >= 0).then(|| (norm_sq as f64).sqrt())
    }
    fn abs_f64(&self) -> f64 {
        self.abs()
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn radius(norm_sq: i64) -> Option<Self> {
        let r = isqrt(norm_sq);
        (r * r == norm_sq).then(|| Self::from_i64(r))
    }
    fn abs_f64(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

pub(crate) fn one<T: Scalar>() -> T {
    T::from_i64(1)
}
