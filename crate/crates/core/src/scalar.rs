//! Scalar abstraction for the geometric kernels.
//!
//! With [`Rational`](crate::Rational) every predicate is exact and the
//! answers are proofs. Floating point types flush values below a small
//! relative threshold to zero after each elimination step, so their answers
//! are only as good as the rounding of the input data.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed};

/// An ordered field usable by the LP, elimination and hull routines.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Signed + FromPrimitive + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer is representable")
    }

    /// Strictly greater than zero. Unlike [`Signed::is_positive`], false for `-0.0` and `0.0` alike.
    fn gt_zero(&self) -> bool {
        *self > Self::zero()
    }

    /// Strictly less than zero.
    fn lt_zero(&self) -> bool {
        *self < Self::zero()
    }

    /// Replaces round-off residue by an exact zero. The identity for exact fields.
    fn snap(self) -> Self {
        self
    }
}

impl Scalar for Ratio<BigInt> {}

impl Scalar for f64 {
    fn snap(self) -> Self {
        if self.abs() < 1e-9 {
            0.0
        } else {
            self
        }
    }
}

impl Scalar for f32 {
    fn snap(self) -> Self {
        if self.abs() < 1e-5 {
            0.0
        } else {
            self
        }
    }
}
