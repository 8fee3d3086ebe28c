//! The scalar abstraction every matrix and coordinate type is generic over.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Float, One, ToPrimitive, Zero};

use crate::ring::{int, Rat, RatFn};

/// A commutative field with exact (or floating) arithmetic and rational
/// constants. `Rat` and `RatFn` are exact; `f32`/`f64` are provided for quick
/// numeric spot checks only.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rat(r: &Rat) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn try_inv(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rat(&int(n))
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        Some(self.clone() * rhs.try_inv()?)
    }

    /// Whether arithmetic is exact, so equality tests are certificates.
    fn is_exact() -> bool {
        true
    }
}

impl Scalar for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn try_inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl Scalar for RatFn {
    fn from_rat(r: &Rat) -> Self {
        RatFn::constant(r.clone())
    }

    fn try_inv(&self) -> Option<Self> {
        self.recip().ok()
    }
}

macro_rules! float_scalar {
    ($($t:ty => $conv:ident),*) => {$(
        impl Scalar for $t {
            fn from_rat(r: &Rat) -> Self {
                r.$conv().unwrap_or(<$t>::NAN)
            }

            fn try_inv(&self) -> Option<Self> {
                (*self != 0.0).then(|| self.recip())
            }

            fn is_exact() -> bool {
                false
            }
        }
    )*};
}
float_scalar!(f64 => to_f64, f32 => to_f32);

/// Approximate equality for the floating scalars.
pub fn approx_eq<F: Float>(a: F, b: F, tol: F) -> bool {
    (a - b).abs() <= tol * (F::one() + a.abs().max(b.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    #[test]
    fn rational_constants() {
        assert_eq!(<Rat as Scalar>::from_i64(3), int(3));
        assert_eq!(<f64 as Scalar>::from_rat(&rat(3, 4)), 0.75);
        assert_eq!(<RatFn as Scalar>::from_rat(&rat(1, 2)).as_constant(), Some(rat(1, 2)));
    }

    #[test]
    fn inverses() {
        assert_eq!(int(4).try_inv(), Some(rat(1, 4)));
        assert_eq!(Rat::zero().try_inv(), None);
        assert_eq!(0.0f64.try_inv(), None);
        assert!(RatFn::zero().try_inv().is_none());
        assert!(!<f32 as Scalar>::is_exact());
    }
}
