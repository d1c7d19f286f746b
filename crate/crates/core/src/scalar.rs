use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact, totally ordered numbers usable as weights, list entries and labels.
///
/// Floating point types are deliberately not implementors: every check in
/// this crate is an equality test, which needs exact arithmetic.
pub trait Scalar:
    Clone + Ord + Hash + Debug + Display + Signed + FromPrimitive + Send + Sync + 'static
{
    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("scalar type cannot represent i64")
    }

    fn is_integral(&self) -> bool;

    /// The value as an `i64`, if it is an integer in range.
    fn to_int(&self) -> Option<i64>;
}

macro_rules! impl_scalar_int {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn is_integral(&self) -> bool {
                true
            }

            fn to_int(&self) -> Option<i64> {
                self.to_i64()
            }
        }
    )*};
}

impl_scalar_int!(i64, i128, BigInt);

impl<T> Scalar for Ratio<T>
where
    T: Clone + Integer + Hash + Debug + Display + Signed + FromPrimitive + ToPrimitive,
    T: Send + Sync + 'static,
    Ratio<T>: FromPrimitive,
{
    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn to_int(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn rational_integrality() {
        let half = Rational::new(1.into(), 2.into());
        assert!(!half.is_integral());
        assert_eq!(half.to_int(), None);
        assert_eq!(Rational::from_int(7).to_int(), Some(7));
        assert_eq!(<i64 as Scalar>::from_int(-3), -3);
        assert_eq!(Ratio::<i64>::from_int(4).to_int(), Some(4));
    }
}
