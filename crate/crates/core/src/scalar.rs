//! Scalar abstraction for the dense numerical code.
//!
//! Spectra, Gram matrices, exact walk distributions and the collinearity
//! geometry are written once against [`Scalar`] and instantiated for `f32`
//! and `f64`. The sampling side of the tester always works in `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point type usable by the dense routines.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from `f64`; every constant in the crate goes through here.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 is representable")
    }

    /// Conversion from a count.
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("count is representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Euclidean inner product.
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// Squared Euclidean norm.
pub fn norm_sq<T: Scalar>(a: &[T]) -> T {
    dot(a, a)
}

pub fn norm<T: Scalar>(a: &[T]) -> T {
    norm_sq(a).sqrt()
}
