//! Scalar abstraction for offsets, radii and complex evaluation.
//!
//! Everything that depends only on constraint normals (cones, lineality,
//! boundedness, unimodular search) is integer arithmetic. Offsets, radii and
//! map evaluation are carried in a generic [`Real`], instantiated with `f64`
//! by the aliases at the crate root and with `f32` where a cheaper type is
//! acceptable.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal, rounding to the nearest representable value.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal is representable")
    }

    #[inline]
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer is representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
