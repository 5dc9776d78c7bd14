use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar used by every metric.
pub trait Scalar:
    Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count representable as float")
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable as float")
    }

    fn hundred() -> Self {
        Self::from_u8(100).unwrap()
    }
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

/// Integer ratio as a scalar, `None` when the denominator is zero.
pub fn ratio<F: Scalar>(num: u64, den: u64) -> Option<F> {
    if den == 0 {
        None
    } else {
        Some(F::from_count(num) / F::from_count(den))
    }
}
