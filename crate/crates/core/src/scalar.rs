use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Scalar type the whole crate is generic over.
///
/// Implemented for `f32` and `f64` through the blanket impl. The stated
/// default tolerances assume `f64`; an `f32` instantiation works but needs
/// correspondingly looser tolerances.
pub trait Real:
    Float
    + FloatConst
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Lossless-enough conversion for tolerance constants and literals.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("constant representable in the scalar type")
    }

    /// Conversion to `f64` for diagnostics and serialization.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + NumAssign
        + FromPrimitive
        + ToPrimitive
        + Debug
        + Display
        + Default
        + Send
        + Sync
        + 'static
{
}
