use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::contfrac::{ContinuedFraction, DigitStream, Tail};
use crate::error::{Error, Result};
use crate::exactnum::{floor, DyadicRational};
use crate::periodic;

/// Longest run of equal bits we are willing to materialize.
pub const MAX_RUN: usize = 1 << 24;

/// Fractional bits of a [`BinaryCode`].
#[derive(Clone, Debug, PartialEq)]
pub enum Bits {
    Finite(Vec<bool>),
    Periodic {
        preperiod: Vec<bool>,
        period: Vec<bool>,
    },
    Stream(BitStream),
}

/// A number written as `integer_part . b1 b2 b3 ...` in base 2.
///
/// Finite codes never end in 0 and periodic codes have a primitive period
/// that is neither all zeros nor all ones. The preperiod is kept as built,
/// which need not be the shortest possible: the code of `[0; (2)]` is
/// `0.0(1100)`, although `0.(0110)` spells the same number.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryCode {
    integer_part: BigInt,
    bits: Bits,
}

/// Bits produced on demand from the partial quotients of a continued fraction.
#[derive(Clone, Debug, PartialEq)]
pub struct BitStream {
    digits: DigitStream,
}

impl BitStream {
    /// Up to `n` leading bits.
    pub fn prefix(&self, n: usize) -> Vec<bool> {
        let mut out = Vec::with_capacity(n);
        let mut i = 0;
        while out.len() < n {
            let Some(d) = self.digits.get(i) else { break };
            let run = if i == 0 { d - 1 } else { d };
            let run = run.to_usize().unwrap_or(usize::MAX).min(n - out.len());
            out.extend(std::iter::repeat_n(i % 2 == 1, run));
            i += 1;
        }
        out
    }
}

fn value_of(bits: &[bool]) -> BigInt {
    bits.iter()
        .fold(BigInt::zero(), |acc, &b| (acc << 1) + if b { 1 } else { 0 })
}

impl BinaryCode {
    /// `integer_part . bits`, with trailing zeros dropped.
    pub fn finite(integer_part: impl Into<BigInt>, mut bits: Vec<bool>) -> Self {
        while bits.last() == Some(&false) {
            bits.pop();
        }
        BinaryCode {
            integer_part: integer_part.into(),
            bits: Bits::Finite(bits),
        }
    }

    /// `integer_part . preperiod (period)*`.
    ///
    /// A constant period is folded into a finite code (`0.0(1)` becomes `0.1`).
    pub fn periodic(integer_part: impl Into<BigInt>, preperiod: Vec<bool>, mut period: Vec<bool>) -> Self {
        assert!(!period.is_empty(), "empty period");
        let integer_part = integer_part.into();
        if period.iter().all(|&b| !b) {
            return BinaryCode::finite(integer_part, preperiod);
        }
        if period.iter().all(|&b| b) {
            // x.p0111... = x.p1 with p incremented as a binary number.
            let n = preperiod.len();
            let v = BinaryCode::finite(integer_part, preperiod).dyadic_value().to_rational()
                + BigRational::new(BigInt::one(), BigInt::one() << n);
            return binary_expansion(&v);
        }
        periodic::shrink_period(&mut period);
        BinaryCode {
            integer_part,
            bits: Bits::Periodic { preperiod, period },
        }
    }

    pub(crate) fn stream(integer_part: BigInt, digits: DigitStream) -> Self {
        BinaryCode {
            integer_part,
            bits: Bits::Stream(BitStream { digits }),
        }
    }

    pub fn integer_part(&self) -> &BigInt {
        &self.integer_part
    }

    pub fn bits(&self) -> &Bits {
        &self.bits
    }

    /// Up to `n` leading fractional bits.
    pub fn prefix(&self, n: usize) -> Vec<bool> {
        match &self.bits {
            Bits::Finite(b) => b.iter().take(n).copied().collect(),
            Bits::Periodic { preperiod, period } => {
                (0..n).map(|i| *periodic::nth(preperiod, period, i)).collect()
            }
            Bits::Stream(s) => s.prefix(n),
        }
    }

    fn dyadic_value(&self) -> DyadicRational {
        let Bits::Finite(bits) = &self.bits else {
            unreachable!("only called on finite codes")
        };
        let n = bits.len() as u64;
        let frac = DyadicRational::new(value_of(bits), n);
        &DyadicRational::from_integer(self.integer_part.clone()) + &frac
    }

    /// Exact value; streams have none.
    pub fn value(&self) -> Result<BigRational> {
        let int = BigRational::from_integer(self.integer_part.clone());
        match &self.bits {
            Bits::Finite(_) => Ok(self.dyadic_value().to_rational()),
            Bits::Periodic { preperiod, period } => {
                // 0.P(Q)* = (P + Q / (2^|Q| - 1)) / 2^|P|
                let p = BigRational::from_integer(value_of(preperiod));
                let q = BigRational::new(value_of(period), (BigInt::one() << period.len()) - 1);
                let scale = BigRational::from_integer(BigInt::one() << preperiod.len());
                Ok(int + (p + q) / scale)
            }
            Bits::Stream(_) => Err(Error::UnsupportedStream),
        }
    }

    /// Dyadic interval `[lo, hi]` of width `2^-n` containing the value,
    /// read off the first `n` bits.
    pub fn enclosure(&self, n: usize) -> (DyadicRational, DyadicRational) {
        let bits = self.prefix(n);
        let lo = &DyadicRational::from_integer(self.integer_part.clone())
            + &DyadicRational::new(value_of(&bits), n as u64);
        let hi = &lo + &DyadicRational::unit(n as u64);
        (lo, hi)
    }
}

/// The base-2 expansion of a rational: finite for dyadic rationals,
/// eventually periodic otherwise, with shortest preperiod and period.
pub fn binary_expansion(y: &BigRational) -> BinaryCode {
    let int = floor(y);
    let d = y.denom().clone();
    let mut r = y.numer().mod_floor(&d);
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    let mut bits = Vec::new();
    while !r.is_zero() {
        if let Some(&start) = seen.get(&r) {
            let period = bits.split_off(start);
            return BinaryCode {
                integer_part: int,
                bits: Bits::Periodic { preperiod: bits, period },
            };
        }
        seen.insert(r.clone(), bits.len());
        r <<= 1;
        let bit = r >= d;
        if bit {
            r -= &d;
        }
        bits.push(bit);
    }
    BinaryCode::finite(int, bits)
}

/// Run lengths of the bits of `?(x)`: `a1 - 1` zeros, `a2` ones, `a3` zeros, ...
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Runs {
    Finite(Vec<usize>),
    Periodic { pre: Vec<usize>, period: Vec<usize> },
    Stream(DigitStream),
}

pub(crate) fn run_length(d: &BigInt) -> Result<usize> {
    d.to_usize()
        .filter(|&n| n <= MAX_RUN)
        .ok_or_else(|| Error::RunTooLong(d.to_string()))
}

fn first_run(digits: &[BigInt]) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(digits.len());
    for (i, d) in digits.iter().enumerate() {
        out.push(run_length(d)? - usize::from(i == 0));
    }
    Ok(out)
}

/// Runs of a continued fraction, using the even-length form of finite
/// fractions so that the bits end in a run of ones.
pub(crate) fn runs(cf: &ContinuedFraction) -> Result<Runs> {
    match cf.tail() {
        Tail::Finite(d) => {
            let mut digits = d.clone();
            if digits.len() % 2 == 1 {
                *digits.last_mut().expect("odd length") -= 1;
                digits.push(BigInt::one());
            }
            Ok(Runs::Finite(first_run(&digits)?))
        }
        Tail::Periodic { preperiod, period } => {
            // With no preperiod the first copy of the period still starts with
            // the shortened run a1 - 1, so it becomes the preperiod.
            let pre = if preperiod.is_empty() { period } else { preperiod };
            let period = period.iter().map(run_length).collect::<Result<Vec<_>>>()?;
            Ok(Runs::Periodic {
                pre: first_run(pre)?,
                period,
            })
        }
        Tail::Stream(s) => Ok(Runs::Stream(s.clone())),
    }
}

/// Expands runs into bits, alternating from `start`; returns the next bit value.
pub(crate) fn expand_runs(runs: &[usize], start: bool, out: &mut Vec<bool>) -> bool {
    let mut bit = start;
    for &r in runs {
        out.extend(std::iter::repeat_n(bit, r));
        bit = !bit;
    }
    bit
}

/// The binary code of `?(x)` for `x = cf`: integer part `a0`, then runs of
/// `a1 - 1` zeros, `a2` ones, `a3` zeros, and so on.
///
/// ```
/// use qmark::minkowski::question_mark_binary;
///
/// let cf = "[0; (2)]".parse().unwrap();
/// assert_eq!(question_mark_binary(&cf).unwrap().to_string(), "0.0(1100)");
/// ```
pub fn question_mark_binary(cf: &ContinuedFraction) -> Result<BinaryCode> {
    let a0 = cf.a0().clone();
    match runs(cf)? {
        Runs::Finite(r) => {
            let mut bits = Vec::new();
            expand_runs(&r, false, &mut bits);
            Ok(BinaryCode::finite(a0, bits))
        }
        Runs::Periodic { pre, period } => {
            let mut pre_bits = Vec::new();
            let next = expand_runs(&pre, false, &mut pre_bits);
            let mut period_bits = Vec::new();
            let after = expand_runs(&period, next, &mut period_bits);
            if after != next {
                expand_runs(&period, after, &mut period_bits);
            }
            Ok(BinaryCode::periodic(a0, pre_bits, period_bits))
        }
        Runs::Stream(s) => Ok(BinaryCode::stream(a0, s)),
    }
}

fn bit_str(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl fmt::Display for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.integer_part)?;
        match &self.bits {
            Bits::Finite(b) if b.is_empty() => Ok(()),
            Bits::Finite(b) => write!(f, ".{}", bit_str(b)),
            Bits::Periodic { preperiod, period } => {
                write!(f, ".{}({})", bit_str(preperiod), bit_str(period))
            }
            Bits::Stream(s) => write!(f, ".{}...", bit_str(&s.prefix(32))),
        }
    }
}
