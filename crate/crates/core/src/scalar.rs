//! Scalar abstraction: the numeric kernel is generic over the floating-point
//! type through `num-traits`. Concrete aliases for the binary64 instantiation
//! live at the crate root.

use num_traits::{Float, FloatConst, FromPrimitive, Signed};
use std::fmt::{Debug, Display};

/// Floating-point scalar usable by every module in this crate: `f32` or `f64`.
///
/// All documented tolerances and crossover thresholds assume binary64; the
/// `f32` instantiation compiles and runs but is not tuned.
pub trait Real:
    Float + FloatConst + FromPrimitive + Signed + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal into `Self`. Panics only if the type cannot
    /// represent ordinary finite literals, which cannot happen for f32/f64.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal must convert")
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::one() / Self::two()
    }
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + Signed + Debug + Display + Send + Sync + 'static
{
}
