//! Scalar traits shared by the numeric and exact parts of the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Float, FloatConst, FromPrimitive, Num, NumAssign, Signed, ToPrimitive};
use std::fmt::{Debug, Display};

/// Floating point scalar used by the period engine and the local models.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Conversion back to `f64` for reporting.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Exact integer scalar for lattice computations.
pub trait Int:
    Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + std::hash::Hash + Send + Sync + 'static
{
}

impl Int for i64 {}
impl Int for i128 {}
impl Int for BigInt {}

/// Exact coefficient ring for Laurent polynomials.
pub trait Coeff: Num + Clone + Debug + Display + PartialEq + std::ops::Neg<Output = Self> + Send + Sync {}

impl<T> Coeff for T where T: Num + Clone + Debug + Display + PartialEq + std::ops::Neg<Output = T> + Send + Sync {}
