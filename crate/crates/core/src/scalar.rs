//! Scalar abstraction shared by the linear algebra, Killing-form and descent code.
//!
//! Everything that only needs field operations is written against [`Field`], so the
//! same routine runs exactly over [`crate::Rational`] and approximately over `f64`
//! or `f32`.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, Zero};

/// A field of characteristic zero, exact or floating point.
pub trait Field:
    Clone + Debug + PartialEq + Num + Neg<Output = Self> + FromPrimitive + Send + Sync
{
    /// Whether `self` should be treated as zero (exact test for rationals, tolerance for floats).
    fn is_negligible(&self) -> bool;

    /// Sign of the element: -1, 0 or 1. Zero is decided by [`Field::is_negligible`].
    fn sign(&self) -> i8;

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("every field embeds the integers")
    }
}

macro_rules! impl_float_field {
    ($f:ty, $eps:expr) => {
        impl Field for $f {
            fn is_negligible(&self) -> bool {
                self.abs() < $eps
            }

            fn sign(&self) -> i8 {
                if self.is_negligible() {
                    0
                } else if *self > 0.0 {
                    1
                } else {
                    -1
                }
            }
        }
    };
}

impl_float_field!(f64, 1e-9);
impl_float_field!(f32, 1e-4);

impl Field for BigRational {
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn sign(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}

impl Field for Ratio<i64> {
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn sign(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}

impl Field for Ratio<i128> {
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn sign(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}

/// Builds an exact rational `num / den`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the exact integer `v` as a rational.
pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Serializes any displayable value as its string form.
pub fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_sign_uses_tolerance() {
        assert_eq!(1e-12f64.sign(), 0);
        assert_eq!((-0.5f64).sign(), -1);
        assert_eq!(2.0f32.sign(), 1);
    }

    #[test]
    fn exact_sign() {
        assert_eq!(rat(-1, 3).sign(), -1);
        assert_eq!(int(0).sign(), 0);
        assert!(Ratio::<i64>::new(0, 5).is_negligible());
    }
}
