//! Coefficient field abstraction.
//!
//! Every exact module is written against [`Scalar`]. The crate root pins the
//! concrete exact choice (`BigRational`); `f64` and `Ratio<i64>` also satisfy
//! the bound and are handy for quick experiments, but only the arbitrary
//! precision rationals make verdicts exact.

use std::fmt;

use num_traits::{FromPrimitive, Signed};

/// Ordered field coefficients for jets and tensors.
pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialOrd + Signed + FromPrimitive + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("scalar type cannot represent integer")
    }
}

impl<T> Scalar for T where
    T: Clone + fmt::Debug + fmt::Display + PartialOrd + Signed + FromPrimitive + Send + Sync + 'static
{
}
