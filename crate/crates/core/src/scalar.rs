//! Ordered-field scalars for the simplex kernel.
//!
//! Exact types (`BigRational`) compare with zero tolerance. Floats carry a
//! fixed absolute tolerance and are only meant for quick exploration, never
//! for verdicts that feed an equivalence check.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, One, Zero};

pub trait Scalar: Num + Neg<Output = Self> + Clone + PartialOrd + Debug + FromPrimitive + Send + Sync {
    /// Absolute tolerance used for sign tests; zero for exact types.
    fn tolerance() -> Self;

    /// Whether arithmetic on this type is exact.
    const EXACT: bool;

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("small integers are representable")
    }

    #[inline]
    fn is_positive_tol(&self) -> bool {
        *self > Self::tolerance()
    }

    #[inline]
    fn is_negative_tol(&self) -> bool {
        *self < -Self::tolerance()
    }

    #[inline]
    fn is_zero_tol(&self) -> bool {
        !self.is_positive_tol() && !self.is_negative_tol()
    }

    /// Lossy conversion for display and JSON output.
    fn to_f64_lossy(&self) -> f64;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-9
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-5
    }

    fn to_f64_lossy(&self) -> f64 {
        f64::from(*self)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn tolerance() -> Self {
        Self::zero()
    }

    fn to_f64_lossy(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Exact rational from an integer fraction.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    Ratio::new(BigInt::from(numer), BigInt::from(denom))
}

/// `true` when `x` is an integer.
pub fn is_integral(x: &BigRational) -> bool {
    x.denom().is_one()
}
