use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rational::is_power_of_two;

/// A rational of the form `odd_part / 2^exponent`, i.e. an element of Z[1/2].
///
/// The representation is canonical: `odd_part` is odd whenever `exponent > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    odd_part: BigInt,
    exponent: u64,
}

impl DyadicRational {
    pub fn new(numerator: BigInt, exponent: u64) -> Self {
        let mut odd_part = numerator;
        let mut exponent = exponent;
        if odd_part.is_zero() {
            exponent = 0;
        }
        while exponent > 0 && odd_part.is_even() {
            odd_part >>= 1;
            exponent -= 1;
        }
        DyadicRational { odd_part, exponent }
    }

    pub fn zero() -> Self {
        DyadicRational::new(BigInt::zero(), 0)
    }

    pub fn from_integer(n: BigInt) -> Self {
        DyadicRational::new(n, 0)
    }

    /// Returns `None` when the denominator of `x` is not a power of two.
    pub fn from_rational(x: &BigRational) -> Option<Self> {
        if !is_power_of_two(x.denom()) {
            return None;
        }
        let exponent = x.denom().bits() - 1;
        Some(DyadicRational::new(x.numer().clone(), exponent))
    }

    pub fn odd_part(&self) -> &BigInt {
        &self.odd_part
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.odd_part.clone(), BigInt::one() << self.exponent)
    }

    /// `2^-exponent` as a dyadic rational.
    pub fn unit(exponent: u64) -> Self {
        DyadicRational::new(BigInt::one(), exponent)
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u64) {
        let e = self.exponent.max(other.exponent);
        (
            &self.odd_part << (e - self.exponent),
            &other.odd_part << (e - other.exponent),
            e,
        )
    }
}

impl Add for &DyadicRational {
    type Output = DyadicRational;
    fn add(self, rhs: &DyadicRational) -> DyadicRational {
        let (a, b, e) = self.aligned(rhs);
        DyadicRational::new(a + b, e)
    }
}

impl Sub for &DyadicRational {
    type Output = DyadicRational;
    fn sub(self, rhs: &DyadicRational) -> DyadicRational {
        let (a, b, e) = self.aligned(rhs);
        DyadicRational::new(a - b, e)
    }
}

impl Neg for DyadicRational {
    type Output = DyadicRational;
    fn neg(self) -> DyadicRational {
        DyadicRational::new(-self.odd_part, self.exponent)
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_rational(), f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::ratio;

    #[test]
    fn canonical_form() {
        let d = DyadicRational::new(BigInt::from(12), 5);
        assert_eq!(d.odd_part(), &BigInt::from(3));
        assert_eq!(d.exponent(), 3);
        assert_eq!(d.to_rational(), ratio(3, 8));
        assert_eq!(DyadicRational::new(BigInt::zero(), 9).exponent(), 0);
    }

    #[test]
    fn rational_round_trip() {
        assert_eq!(
            DyadicRational::from_rational(&ratio(-5, 16)).unwrap().to_rational(),
            ratio(-5, 16)
        );
        assert!(DyadicRational::from_rational(&ratio(1, 6)).is_none());
    }

    #[test]
    fn arithmetic_and_order() {
        let a = DyadicRational::unit(2);
        let b = DyadicRational::unit(4);
        assert_eq!((&a - &b).to_rational(), ratio(3, 16));
        assert_eq!((&a + &a).to_rational(), ratio(1, 2));
        assert!(b < a);
    }
}
