//! Real scalar abstraction: every numerical routine in this crate is generic
//! over [`Real`], implemented for `f32` and `f64`.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar: `f32` or `f64`.
///
/// Default tolerances throughout the crate are chosen for `f64`; `f32`
/// instantiations should supply their own via [`crate::Context`].
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into `Self`. Panics only if the literal is
    /// not representable, which cannot happen for the finite constants used
    /// in this crate.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    fn two() -> Self {
        Self::of(2.0)
    }

    fn half() -> Self {
        Self::of(0.5)
    }
}

impl Real for f32 {}
impl Real for f64 {}
