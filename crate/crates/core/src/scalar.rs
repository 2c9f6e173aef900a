use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed};

/// Exact coefficient field. Only rational types qualify: the symmetrisation
/// map divides by factorials, and every identity is checked for equality.
pub trait Scalar:
    Clone + Debug + Display + Eq + Ord + Hash + Send + Sync + Signed + 'static
{
    fn from_i64(n: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// `Some(n)` when the value is an integer that fits in an `i64`.
    fn to_i64(&self) -> Option<i64>;
}

impl<T> Scalar for Ratio<T>
where
    T: Clone
        + Integer
        + Signed
        + Hash
        + Debug
        + Display
        + FromPrimitive
        + num_traits::ToPrimitive
        + Send
        + Sync
        + 'static,
{
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(T::from_i64(n).expect("integer out of range for scalar type"))
    }

    fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

pub fn factorial<S: Scalar>(n: usize) -> S {
    (1..=n as i64).fold(S::one(), |acc, k| acc * S::from_i64(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn rationals_are_reduced_with_positive_denominator() {
        let q: Ratio<BigInt> = Scalar::from_ratio(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        let r: Ratio<i64> = Scalar::from_ratio(-10, -15);
        assert_eq!((*r.numer(), *r.denom()), (2, 3));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial::<Ratio<i64>>(0), Ratio::from_integer(1));
        assert_eq!(factorial::<Ratio<i64>>(5), Ratio::from_integer(120));
        assert_eq!(Scalar::to_i64(&factorial::<Ratio<BigInt>>(6)), Some(720));
    }
}
