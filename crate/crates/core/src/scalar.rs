use std::fmt;
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Scalar type for all floating-point computation in this crate.
///
/// Everything numeric (Laplacians, eigensolver, bounds, sweep probabilities)
/// is generic over `Real`; `f64` is the default used by the concrete aliases
/// at the crate root and by the CLI.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Sum<Self> + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Lossy conversion from a vertex count or degree.
    fn from_count(c: u64) -> Self {
        Self::from_u64(c).expect("count representable in scalar type")
    }

    /// Half, written once so generic code does not litter `from_f64(0.5)`.
    fn half() -> Self {
        Self::from_f64(0.5).expect("0.5 representable")
    }
}

impl<T> Real for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + Sum<T>
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static
{
}
