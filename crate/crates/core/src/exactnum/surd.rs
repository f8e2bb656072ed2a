use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::factor::{isqrt, squarefree_decomposition};
use super::number::ExactNumber;
use crate::error::{Error, Result};

/// A quadratic irrational `(p + q*sqrt(d)) / r`.
///
/// Invariants: `r > 0`, `q != 0`, `gcd(p, q, r) = 1` and `d >= 2` squarefree.
/// Construction goes through [`QuadraticSurd::new`], which pulls square factors
/// out of the radicand, so two surds are equal iff their fields are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    d: BigInt,
}

/// Arithmetic operations accepted by [`surd_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurdOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl QuadraticSurd {
    /// Builds `(p + q*sqrt(d)) / r`, failing when the value is rational.
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        r: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        match ExactNumber::quadratic(p, q, r, d)? {
            ExactNumber::Surd(s) => Ok(s),
            ExactNumber::Rational(x) => Err(Error::NotIrrational(x.to_string())),
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    /// The squarefree radicand.
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// The Galois conjugate `(p - q*sqrt(d)) / r`.
    pub fn conjugate(&self) -> QuadraticSurd {
        QuadraticSurd {
            p: self.p.clone(),
            q: -&self.q,
            r: self.r.clone(),
            d: self.d.clone(),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.parts().sign() == Ordering::Greater
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        // q*sqrt(d) lies strictly between two consecutive integers.
        let t = (&self.q * &self.q * &self.d).magnitude().clone();
        let s = BigInt::from(isqrt(&t));
        if self.q.is_positive() {
            (&self.p + s).div_floor(&self.r)
        } else {
            (&self.p - s - BigInt::one()).div_floor(&self.r)
        }
    }

    /// A rational lower bound within `2^-bits` of the value.
    pub fn lower_bound(&self, bits: u32) -> BigRational {
        let scale = BigInt::one() << bits;
        let t = (&self.q * &self.q * &self.d * &scale * &scale)
            .magnitude()
            .clone();
        let s = BigInt::from(isqrt(&t));
        // |q|sqrt(d)*2^bits lies in (s, s + 1).
        let surd_part = if self.q.is_positive() { s } else { -s - BigInt::one() };
        BigRational::new(&self.p * &scale + surd_part, &self.r * scale)
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        ToPrimitive::to_f64(&self.lower_bound(80)).unwrap_or(f64::NAN)
    }

    pub(crate) fn parts(&self) -> QuadParts {
        QuadParts {
            a: BigRational::new(self.p.clone(), self.r.clone()),
            b: BigRational::new(self.q.clone(), self.r.clone()),
            d: self.d.clone(),
        }
    }

    pub(crate) fn from_canonical(p: BigInt, q: BigInt, r: BigInt, d: BigInt) -> Self {
        QuadraticSurd { p, q, r, d }
    }
}

/// `a op b` for two numbers of the same quadratic field.
///
/// Either operand may also be rational. The result is rational when the
/// irrational parts cancel, e.g. `(1+sqrt(5))/2 * (-1+sqrt(5))/2 = 1`.
pub fn surd_arith(a: &ExactNumber, b: &ExactNumber, op: SurdOp) -> Result<ExactNumber> {
    match op {
        SurdOp::Add => a.checked_add(b),
        SurdOp::Sub => a.checked_sub(b),
        SurdOp::Mul => a.checked_mul(b),
        SurdOp::Div => a.checked_div(b),
    }
}

/// `a + b*sqrt(d)` with rational `a`, `b`; `d = 0` marks a plain rational.
#[derive(Clone, Debug)]
pub(crate) struct QuadParts {
    pub a: BigRational,
    pub b: BigRational,
    pub d: BigInt,
}

impl QuadParts {
    pub fn rational(a: BigRational) -> Self {
        QuadParts {
            a,
            b: BigRational::zero(),
            d: BigInt::zero(),
        }
    }

    fn common_radicand(&self, other: &Self) -> Result<BigInt> {
        let x = if self.b.is_zero() { &BigInt::zero() } else { &self.d };
        let y = if other.b.is_zero() { &BigInt::zero() } else { &other.d };
        if x.is_zero() {
            Ok(y.clone())
        } else if y.is_zero() || x == y {
            Ok(x.clone())
        } else {
            Err(Error::MismatchedRadicand {
                left: x.to_string(),
                right: y.to_string(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(QuadParts {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d,
        })
    }

    pub fn neg(&self) -> Self {
        QuadParts {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let dr = BigRational::from_integer(d.clone());
        Ok(QuadParts {
            a: &self.a * &other.a + &self.b * &other.b * dr,
            b: &self.a * &other.b + &self.b * &other.a,
            d,
        })
    }

    pub fn recip(&self) -> Result<Self> {
        // 1/(a + b√d) = (a - b√d)/(a² - b²d)
        let dr = BigRational::from_integer(self.d.clone());
        let norm = &self.a * &self.a - &self.b * &self.b * dr;
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QuadParts {
            a: &self.a / &norm,
            b: -&self.b / &norm,
            d: self.d.clone(),
        })
    }

    pub fn sign(&self) -> Ordering {
        let sa = self.a.numer().sign();
        let sb = if self.d.is_zero() { Sign::NoSign } else { self.b.numer().sign() };
        match (sa, sb) {
            (_, Sign::NoSign) => sign_ord(sa),
            (Sign::NoSign, _) => sign_ord(sb),
            (x, y) if x == y => sign_ord(x),
            (x, _) => {
                // a and b√d have opposite signs: compare a² with b²d.
                let dr = BigRational::from_integer(self.d.clone());
                let lhs = &self.a * &self.a;
                let rhs = &self.b * &self.b * dr;
                match lhs.cmp(&rhs) {
                    Ordering::Greater => sign_ord(x),
                    Ordering::Less => sign_ord(x).reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    /// Normalizes into a rational or a canonical surd.
    pub fn into_number(self) -> ExactNumber {
        if self.b.is_zero() || self.d.is_zero() {
            return ExactNumber::Rational(self.a);
        }
        let (root, free) = squarefree_decomposition(self.d.magnitude());
        let root = BigInt::from(root);
        let free = BigInt::from(free);
        let b = self.b * BigRational::from_integer(root);
        if free.is_one() {
            return ExactNumber::Rational(self.a + b);
        }
        let r = self.a.denom().lcm(b.denom());
        let p = self.a.numer() * (&r / self.a.denom());
        let q = b.numer() * (&r / b.denom());
        let g = p.gcd(&q).gcd(&r);
        ExactNumber::Surd(QuadraticSurd::from_canonical(p / &g, q / &g, r / &g, free))
    }
}

fn sign_ord(s: Sign) -> Ordering {
    match s {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

impl PartialOrd for QuadraticSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let diff = self.parts().add(&other.parts().neg()).ok()?;
        Some(diff.sign())
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num = String::new();
        let qa = self.q.abs();
        if self.q.is_negative() {
            num.push('-');
        }
        if !qa.is_one() {
            num.push_str(&format!("{qa}*"));
        }
        num.push_str(&format!("sqrt({})", self.d));
        if self.p.is_positive() {
            num.push_str(&format!("+{}", self.p));
        } else if self.p.is_negative() {
            num.push_str(&format!("{}", self.p));
        }
        if self.r.is_one() {
            f.write_str(&num)
        } else if self.p.is_zero() {
            write!(f, "{num}/{}", self.r)
        } else {
            write!(f, "({num})/{}", self.r)
        }
    }
}
