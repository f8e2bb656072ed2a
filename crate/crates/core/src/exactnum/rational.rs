use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Builds the reduced rational `num/den` with a positive denominator.
pub fn rational_normalize(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<BigRational> {
    let den = den.into();
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(num.into(), den))
}

/// True iff the denominator of the reduced rational `x` is a power of two.
pub fn is_dyadic(x: &BigRational) -> bool {
    is_power_of_two(x.denom())
}

pub(crate) fn is_power_of_two(n: &BigInt) -> bool {
    n.is_positive() && (n & (n - BigInt::one())).is_zero()
}

/// Largest integer not exceeding `x`.
pub fn floor(x: &BigRational) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// `x - floor(x)`, always in `[0, 1)`.
pub fn fract(x: &BigRational) -> BigRational {
    x - BigRational::from_integer(floor(x))
}

#[cfg(test)]
pub(crate) fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

#[cfg(test)]
pub(crate) fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(int(n), int(d))
}
