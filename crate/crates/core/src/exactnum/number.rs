use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::rational::{floor as rational_floor, is_dyadic};
use super::surd::{QuadParts, QuadraticSurd};
use crate::error::{Error, Result};

/// A number the crate can represent exactly: a rational or a quadratic surd.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExactNumber {
    Rational(BigRational),
    Surd(QuadraticSurd),
}

impl ExactNumber {
    /// `(p + q*sqrt(d)) / r`, collapsing to a rational when the radical vanishes.
    pub fn quadratic(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        r: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let (p, q, r, d) = (p.into(), q.into(), r.into(), d.into());
        if r.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if d < BigInt::zero() {
            return Err(Error::OutOfRange {
                value: d.to_string(),
                expected: "non-negative radicands",
            });
        }
        let parts = QuadParts {
            a: BigRational::new(p, r.clone()),
            b: BigRational::new(q, r),
            d,
        };
        Ok(parts.into_number())
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        ExactNumber::Rational(BigRational::from_integer(n.into()))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactNumber::Rational(x) => Some(x),
            ExactNumber::Surd(_) => None,
        }
    }

    pub fn as_surd(&self) -> Option<&QuadraticSurd> {
        match self {
            ExactNumber::Surd(s) => Some(s),
            ExactNumber::Rational(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExactNumber::Rational(x) if x.is_zero())
    }

    pub fn is_dyadic(&self) -> bool {
        matches!(self, ExactNumber::Rational(x) if is_dyadic(x))
    }

    /// The radicand, `None` for rationals.
    pub fn radicand(&self) -> Option<&BigInt> {
        self.as_surd().map(QuadraticSurd::d)
    }

    pub fn floor(&self) -> BigInt {
        match self {
            ExactNumber::Rational(x) => rational_floor(x),
            ExactNumber::Surd(s) => s.floor(),
        }
    }

    /// `self - floor(self)`.
    pub fn fract(&self) -> ExactNumber {
        let f = ExactNumber::integer(self.floor());
        self.checked_sub(&f).expect("integers are compatible with every field")
    }

    pub fn signum(&self) -> Ordering {
        self.parts().sign()
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactNumber::Rational(x) => x.to_f64().unwrap_or(f64::NAN),
            ExactNumber::Surd(s) => s.to_f64(),
        }
    }

    /// A rational lower bound within `2^-bits`.
    pub fn lower_bound(&self, bits: u32) -> BigRational {
        match self {
            ExactNumber::Rational(x) => x.clone(),
            ExactNumber::Surd(s) => s.lower_bound(bits),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Ok(self.parts().add(&other.parts())?.into_number())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        Ok(self.parts().add(&other.parts().neg())?.into_number())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        Ok(self.parts().mul(&other.parts())?.into_number())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = other.parts().recip()?;
        Ok(self.parts().mul(&inv)?.into_number())
    }

    pub fn recip(&self) -> Result<Self> {
        ExactNumber::integer(1).checked_div(self)
    }

    pub fn neg(&self) -> Self {
        self.parts().neg().into_number()
    }

    pub(crate) fn parts(&self) -> QuadParts {
        match self {
            ExactNumber::Rational(x) => QuadParts::rational(x.clone()),
            ExactNumber::Surd(s) => s.parts(),
        }
    }
}

impl From<BigRational> for ExactNumber {
    fn from(x: BigRational) -> Self {
        ExactNumber::Rational(x)
    }
}

impl From<QuadraticSurd> for ExactNumber {
    fn from(s: QuadraticSurd) -> Self {
        ExactNumber::Surd(s)
    }
}

/// Ordering is defined within one quadratic field; numbers from different
/// fields are incomparable.
impl PartialOrd for ExactNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let diff = self.parts().add(&other.parts().neg()).ok()?;
        Some(diff.sign())
    }
}

impl fmt::Display for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactNumber::Rational(x) => fmt::Display::fmt(x, f),
            ExactNumber::Surd(s) => fmt::Display::fmt(s, f),
        }
    }
}
