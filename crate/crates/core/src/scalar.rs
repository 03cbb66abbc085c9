//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

/// Real floating point scalar: `f32` or `f64`.
///
/// Linear algebra goes through [`RealField`]; conversions to and from the
/// `f64` literals used for tolerances and file IO go through `num-traits`.
pub trait Scalar:
    RealField + Copy + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Lossy conversion used for serialization and reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Unit roundoff of the type.
    fn epsilon() -> Self;
}

impl Scalar for f64 {
    fn epsilon() -> Self {
        f64::EPSILON
    }
}

impl Scalar for f32 {
    fn epsilon() -> Self {
        f32::EPSILON
    }
}

/// Sum of squares of a slice.
pub(crate) fn norm_sq<T: Scalar>(xs: &[T]) -> T {
    xs.iter().fold(T::zero(), |acc, &x| acc + x * x)
}

/// Error-free transformation `a + b = s + e` (Knuth's TwoSum).
#[inline]
pub(crate) fn two_sum<T: Scalar>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}
