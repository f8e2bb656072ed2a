//! Regular continued fractions `a0 + 1/(a1 + 1/(a2 + ...))`.
//!
//! Rationals expand to finite fractions, quadratic surds to eventually periodic
//! ones (found exactly from the integer recurrence on `(P + sqrt(D)) / Q`),
//! and anything else can be supplied as a [`DigitStream`].
//!
//! ```
//! use qmark::contfrac::{cf_expand, cf_value};
//! use qmark::ExactNumber;
//!
//! let x: ExactNumber = "sqrt(3)".parse().unwrap();
//! let cf = cf_expand(&x);
//! assert_eq!(cf.to_string(), "[1; (1, 2)]");
//! assert_eq!(cf_value(&cf).unwrap(), x);
//! ```

mod stream;
mod syntax;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::factor::isqrt;
use crate::exactnum::{ExactNumber, QuadraticSurd};
use crate::periodic;

pub use stream::DigitStream;

/// Partial quotients after the integer part.
#[derive(Clone, Debug, PartialEq)]
pub enum Tail {
    Finite(Vec<BigInt>),
    Periodic {
        preperiod: Vec<BigInt>,
        period: Vec<BigInt>,
    },
    Stream(DigitStream),
}

/// A continued fraction `[a0; a1, a2, ...]` with `a_k >= 1` for `k >= 1`.
///
/// Finite fractions are kept in the form whose last quotient is at least 2,
/// so `[0; 2, 1]` is stored as `[0; 3]` and `[0; 1]` as `[1]`. Periodic
/// tails are kept with the shortest period and preperiod.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuedFraction {
    a0: BigInt,
    tail: Tail,
}

fn check_digits(digits: &[BigInt]) -> Result<()> {
    match digits.iter().find(|d| !d.is_positive()) {
        Some(d) => Err(Error::InvalidDigit(format!(
            "partial quotients must be positive, found {d}"
        ))),
        None => Ok(()),
    }
}

impl ContinuedFraction {
    pub fn integer(a0: impl Into<BigInt>) -> Self {
        ContinuedFraction {
            a0: a0.into(),
            tail: Tail::Finite(Vec::new()),
        }
    }

    /// `[a0; digits...]` with the quotients kept as given; see
    /// [`ContinuedFraction::canonical`] for the form without a trailing 1.
    pub fn finite(a0: impl Into<BigInt>, digits: Vec<BigInt>) -> Result<Self> {
        check_digits(&digits)?;
        Ok(ContinuedFraction {
            a0: a0.into(),
            tail: Tail::Finite(digits),
        })
    }

    /// Folds a trailing quotient 1 into its predecessor, so that
    /// `[0; 2, 1]` becomes `[0; 3]` and `[0; 1]` becomes `[1]`. Other
    /// fractions are returned unchanged.
    pub fn canonical(&self) -> Self {
        let mut out = self.clone();
        if let Tail::Finite(digits) = &mut out.tail {
            if digits.last().is_some_and(One::is_one) {
                digits.pop();
                match digits.last_mut() {
                    Some(d) => *d += 1,
                    None => out.a0 += 1,
                }
            }
        }
        out
    }

    /// `[a0; preperiod..., (period...)]` with the period repeated forever.
    pub fn periodic(
        a0: impl Into<BigInt>,
        preperiod: Vec<BigInt>,
        period: Vec<BigInt>,
    ) -> Result<Self> {
        check_digits(&preperiod)?;
        check_digits(&period)?;
        if period.is_empty() {
            return Err(Error::InvalidDigit("empty period".into()));
        }
        let (preperiod, period) = periodic::minimize(preperiod, period);
        Ok(ContinuedFraction {
            a0: a0.into(),
            tail: Tail::Periodic { preperiod, period },
        })
    }

    pub fn stream(a0: impl Into<BigInt>, digits: DigitStream) -> Self {
        ContinuedFraction {
            a0: a0.into(),
            tail: Tail::Stream(digits),
        }
    }

    /// Euler's number `e = [2; 1, 2, 1, 1, 4, 1, 1, 6, ...]`, as a stream
    /// declared aperiodic.
    pub fn euler() -> Self {
        let digits = (1u64..).flat_map(|j| [1, 2 * j, 1]).map(BigInt::from);
        ContinuedFraction::stream(2, DigitStream::aperiodic(digits))
    }

    pub fn a0(&self) -> &BigInt {
        &self.a0
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.tail, Tail::Finite(_))
    }

    /// Partial quotient `a_i` for `i >= 1`, `None` past the end.
    pub fn digit(&self, i: usize) -> Option<BigInt> {
        assert!(i >= 1, "partial quotients are numbered from 1");
        match &self.tail {
            Tail::Finite(d) => d.get(i - 1).cloned(),
            Tail::Periodic { preperiod, period } => {
                Some(periodic::nth(preperiod, period, i - 1).clone())
            }
            Tail::Stream(s) => s.get(i - 1),
        }
    }

    /// `a_1, ..., a_n`, shorter if the fraction ends first.
    pub fn prefix(&self, n: usize) -> Vec<BigInt> {
        match &self.tail {
            Tail::Finite(d) => d.iter().take(n).cloned().collect(),
            Tail::Stream(s) => s.prefix(n),
            Tail::Periodic { .. } => (1..=n).filter_map(|i| self.digit(i)).collect(),
        }
    }
}

/// The finite expansion of a rational, by the Euclidean algorithm.
pub fn cf_expand_rational(x: &BigRational) -> ContinuedFraction {
    let (mut p, mut q) = (x.numer().clone(), x.denom().clone());
    let (a0, r) = p.div_mod_floor(&q);
    let mut digits = Vec::new();
    p = q;
    q = r;
    while !q.is_zero() {
        let (a, r) = p.div_mod_floor(&q);
        digits.push(a);
        p = q;
        q = r;
    }
    ContinuedFraction {
        a0,
        tail: Tail::Finite(digits),
    }
}

/// The eventually periodic expansion of a quadratic irrational.
pub fn cf_expand_surd(x: &QuadraticSurd) -> ContinuedFraction {
    // x = (P + sqrt(D)) / Q with Q | D - P^2.
    let sign = if x.q().is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut big_d = x.q() * x.q() * x.d();
    let mut p = x.p() * &sign;
    let mut q = x.r() * &sign;
    if !((&big_d - &p * &p) % &q).is_zero() {
        let s = q.abs();
        p *= &s;
        big_d *= &s * &s;
        q *= s;
    }
    let root = BigInt::from(isqrt(big_d.magnitude()));

    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut digits: Vec<BigInt> = Vec::new();
    let start = loop {
        if let Some(&i) = seen.get(&(p.clone(), q.clone())) {
            break i;
        }
        seen.insert((p.clone(), q.clone()), digits.len());
        let a = if q.is_positive() {
            (&p + &root).div_floor(&q)
        } else {
            (&p + &root + BigInt::one()).div_floor(&q)
        };
        p = &a * &q - &p;
        q = (&big_d - &p * &p) / &q;
        digits.push(a);
    };
    // digits[start..] repeats forever; digits[0] is a0.
    let a0 = digits[0].clone();
    let mut period = digits[start..].to_vec();
    let pre_end = start.max(1);
    let mut tail_pre = digits[1..pre_end].to_vec();
    if start == 0 {
        period.rotate_left(1);
        tail_pre.clear();
    }
    ContinuedFraction::periodic(a0, tail_pre, period).expect("surd digits are positive")
}

/// Expansion of any exact number.
pub fn cf_expand(x: &ExactNumber) -> ContinuedFraction {
    match x {
        ExactNumber::Rational(r) => cf_expand_rational(r),
        ExactNumber::Surd(s) => cf_expand_surd(s),
    }
}

fn fold_finite(a0: &BigInt, digits: &[BigInt]) -> BigRational {
    let mut acc: Option<BigRational> = None;
    for a in digits.iter().rev() {
        let a = BigRational::from_integer(a.clone());
        acc = Some(match acc {
            None => a,
            Some(v) => a + v.recip(),
        });
    }
    let a0 = BigRational::from_integer(a0.clone());
    match acc {
        None => a0,
        Some(v) => a0 + v.recip(),
    }
}

// Numerators and denominators (h_n, h_{n-1}, k_n, k_{n-1}) of [d0; d1, ...].
fn convergent_pair(digits: &[BigInt]) -> (BigInt, BigInt, BigInt, BigInt) {
    let (mut h, mut h1) = (BigInt::one(), BigInt::zero());
    let (mut k, mut k1) = (BigInt::zero(), BigInt::one());
    for a in digits {
        let nh = a * &h + &h1;
        let nk = a * &k + &k1;
        h1 = std::mem::replace(&mut h, nh);
        k1 = std::mem::replace(&mut k, nk);
    }
    (h, h1, k, k1)
}

/// The exact value: a rational for finite fractions, a surd for periodic ones.
///
/// Streams have no exact value and give [`Error::UnsupportedStream`].
pub fn cf_value(cf: &ContinuedFraction) -> Result<ExactNumber> {
    let (preperiod, period) = match &cf.tail {
        Tail::Finite(d) => return Ok(ExactNumber::Rational(fold_finite(&cf.a0, d))),
        Tail::Stream(_) => return Err(Error::UnsupportedStream),
        Tail::Periodic { preperiod, period } => (preperiod, period),
    };
    // y = [p1; p2, ..., pL, y] solves a y^2 + b y + c = 0 with y > 1.
    let (h, h1, k, k1) = convergent_pair(period);
    let (mut a, mut b, mut c) = (k, k1 - &h, -h1);
    let g = a.gcd(&b).gcd(&c);
    a /= &g;
    b /= &g;
    c /= &g;
    let disc = &b * &b - BigInt::from(4) * &a * &c;
    let y = ExactNumber::quadratic(-b, 1, 2 * a, disc)?;

    let mut head = vec![cf.a0.clone()];
    head.extend(preperiod.iter().cloned());
    let (h, h1, k, k1) = convergent_pair(&head);
    let num = y.checked_mul(&ExactNumber::integer(h))?.checked_add(&ExactNumber::integer(h1))?;
    let den = y.checked_mul(&ExactNumber::integer(k))?.checked_add(&ExactNumber::integer(k1))?;
    num.checked_div(&den)
}

/// The first `k` convergents `p_0/q_0, p_1/q_1, ...`; fewer if a finite
/// fraction runs out of quotients.
pub fn convergents(cf: &ContinuedFraction, k: usize) -> Vec<BigRational> {
    if k == 0 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(k);
    let (mut h, mut h1) = (cf.a0.clone(), BigInt::one());
    let (mut q, mut q1) = (BigInt::one(), BigInt::zero());
    out.push(BigRational::from_integer(h.clone()));
    for a in cf.prefix(k - 1) {
        let nh = &a * &h + &h1;
        let nq = &a * &q + &q1;
        h1 = std::mem::replace(&mut h, nh);
        q1 = std::mem::replace(&mut q, nq);
        out.push(BigRational::new(h.clone(), q.clone()));
    }
    out
}
