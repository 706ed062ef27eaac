//! Scalar abstraction shared by every geometric routine.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Floating-point coordinate type. Implemented for `f32` and `f64`.
pub trait Scalar: Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// Converts an `f64` literal into this scalar.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    /// Relative slack used only to decide when a query sits close enough to a
    /// breakpoint that the neighbouring piece must be inspected as well.
    fn near_tol(scale: Self) -> Self {
        Self::epsilon().sqrt() * (Self::one() + scale.abs())
    }
}

impl<T> Scalar for T where T: Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {}

/// Total order on scalars (NaN sorts last), used by every sort in the crate.
#[inline]
pub(crate) fn cmp<T: Scalar>(a: T, b: T) -> std::cmp::Ordering {
    a.partial_cmp(&b).unwrap_or_else(|| a.is_nan().cmp(&b.is_nan()))
}
