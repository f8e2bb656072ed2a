//! The Minkowski question-mark function `?(x)`.
//!
//! `?` sends the continued fraction `[0; a1, a2, a3, ...]` to the binary number
//! with `a1 - 1` zeros, then `a2` ones, then `a3` zeros, and so on. It maps
//! rationals onto dyadic rationals and quadratic irrationals onto the other
//! rationals, which is what makes an exact inverse possible.
//!
//! ```
//! use qmark::minkowski::{inverse_question_mark, question_mark_exact};
//! use qmark::exactnum::parse_rational;
//! use qmark::ExactNumber;
//!
//! let x: ExactNumber = "sqrt(2)-1".parse().unwrap();
//! let y = question_mark_exact(&x).unwrap();
//! assert_eq!(y.to_string(), "2/5");
//! assert_eq!(inverse_question_mark(&parse_rational("2/5").unwrap()).unwrap(), x);
//! ```

mod code;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::contfrac::{cf_expand, cf_value, ContinuedFraction, Tail};
use crate::error::{Error, Result};
use crate::exactnum::{DyadicRational, ExactNumber};

pub use code::{binary_expansion, question_mark_binary, BinaryCode, BitStream, Bits, MAX_RUN};
#[allow(unused_imports)]
pub(crate) use code::{expand_runs, run_length, runs, Runs};

/// Partial sums of `a0 + 2 * sum_k (-1)^(k+1) / 2^(a1 + ... + ak)`.
///
/// Returns a dyadic interval containing `?(cf)`. After `k` terms its width is
/// `2^-(a1 + ... + ak)`; a finite fraction with at most `k` quotients gives
/// the exact value as a zero-width interval.
pub fn question_mark_series(cf: &ContinuedFraction, k: usize) -> Result<(DyadicRational, DyadicRational)> {
    if k == 0 {
        return Err(Error::InvalidArgument("need at least one term".into()));
    }
    let digits = cf.prefix(k);
    let mut sum = DyadicRational::from_integer(cf.a0().clone());
    let mut exponent: u64 = 0;
    for (j, a) in digits.iter().enumerate() {
        exponent += run_length(a)? as u64;
        let term = DyadicRational::unit(exponent - 1);
        sum = if j % 2 == 0 { &sum + &term } else { &sum - &term };
    }
    let exact = matches!(cf.tail(), Tail::Finite(d) if d.len() <= k);
    if exact {
        return Ok((sum.clone(), sum));
    }
    let width = DyadicRational::unit(exponent);
    if digits.len().is_multiple_of(2) {
        let hi = &sum + &width;
        Ok((sum, hi))
    } else {
        let lo = &sum - &width;
        Ok((lo, sum))
    }
}

/// An exact value of `?`: dyadic for rational arguments, a non-dyadic
/// rational for quadratic irrationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QmImage {
    Dyadic(DyadicRational),
    NonDyadic(BigRational),
}

impl QmImage {
    pub fn to_rational(&self) -> BigRational {
        match self {
            QmImage::Dyadic(d) => d.to_rational(),
            QmImage::NonDyadic(r) => r.clone(),
        }
    }

    pub fn is_dyadic(&self) -> bool {
        matches!(self, QmImage::Dyadic(_))
    }
}

impl fmt::Display for QmImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QmImage::Dyadic(d) => d.fmt(f),
            QmImage::NonDyadic(r) => r.fmt(f),
        }
    }
}

fn unit_interval(x: &ExactNumber) -> Result<()> {
    let zero = ExactNumber::integer(0);
    let one = ExactNumber::integer(1);
    let inside = match x {
        ExactNumber::Rational(_) => x >= &zero && x <= &one,
        ExactNumber::Surd(_) => x > &zero && x < &one,
    };
    if inside {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            value: x.to_string(),
            expected: "numbers in [0, 1]",
        })
    }
}

/// `?(x)` for `x` in `[0, 1]`.
pub fn question_mark_exact(x: &ExactNumber) -> Result<QmImage> {
    unit_interval(x)?;
    let cf = cf_expand(x);
    match x {
        ExactNumber::Rational(_) => {
            let n = cf.prefix(usize::MAX).len().max(1);
            let (lo, _) = question_mark_series(&cf, n)?;
            Ok(QmImage::Dyadic(lo))
        }
        ExactNumber::Surd(_) => Ok(QmImage::NonDyadic(question_mark_binary(&cf)?.value()?)),
    }
}

// Run lengths of a finite bit string, starting with the (possibly empty) run of zeros.
fn bit_runs(bits: &[bool]) -> Vec<usize> {
    let mut runs = vec![0usize];
    let mut current = false;
    for &b in bits {
        if b != current {
            runs.push(0);
            current = b;
        }
        *runs.last_mut().expect("non-empty") += 1;
    }
    runs
}

fn runs_to_digits(runs: &[usize], first: bool) -> Vec<BigInt> {
    runs.iter()
        .enumerate()
        .map(|(i, &r)| BigInt::from(r + usize::from(first && i == 0)))
        .collect()
}

/// The `x` in `[0, 1]` with `?(x) = y`: rational when `y` is dyadic, a
/// quadratic irrational otherwise.
pub fn inverse_question_mark(y: &BigRational) -> Result<ExactNumber> {
    if y.is_negative() || y > &BigRational::one() {
        return Err(Error::OutOfRange {
            value: y.to_string(),
            expected: "numbers in [0, 1]",
        });
    }
    let code = binary_expansion(y);
    match code.bits() {
        Bits::Finite(bits) => {
            if bits.is_empty() {
                return Ok(ExactNumber::integer(code.integer_part().clone()));
            }
            let digits = runs_to_digits(&bit_runs(bits), true);
            cf_value(&ContinuedFraction::finite(0, digits)?)
        }
        Bits::Periodic { preperiod, period } => {
            // Cut the bits at a run boundary inside the first period so that
            // both pieces consist of whole runs.
            let (p, q) = (preperiod.len(), period.len());
            let bit = |i: usize| -> bool { *crate::periodic::nth(preperiod, period, i) };
            let cut = (p + 1..=p + q)
                .find(|&i| bit(i) != bit(i - 1))
                .expect("a non-constant period has a run boundary");
            let head: Vec<bool> = (0..cut).map(bit).collect();
            let cycle: Vec<bool> = (cut..cut + q).map(bit).collect();
            let pre = runs_to_digits(&bit_runs(&head), true);
            let mut cycle_runs = bit_runs(&cycle);
            if cycle_runs[0] == 0 {
                cycle_runs.remove(0);
            }
            let cf = ContinuedFraction::periodic(0, pre, runs_to_digits(&cycle_runs, false))?;
            cf_value(&cf)
        }
        Bits::Stream(_) => unreachable!("expansions of rationals are never streams"),
    }
}

/// Arithmetic type of an argument of `?`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainClass {
    Rational,
    QuadraticIrrational,
    /// A vector of dimension `m >= 2` with a (declared) periodic
    /// Jacobi-Perron expansion, spanning a field of the given degree.
    AlgebraicOfDegree(usize),
    OtherIrrational,
    Unknown { horizon: usize },
}

/// Arithmetic type of a value of `?`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImageClass {
    DyadicRational,
    NonDyadicRational,
    Irrational,
    Unknown { horizon: usize },
}

impl fmt::Display for DomainClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainClass::Rational => f.write_str("rational"),
            DomainClass::QuadraticIrrational => f.write_str("quadratic-irrational"),
            DomainClass::AlgebraicOfDegree(d) => write!(f, "algebraic-degree-{d}"),
            DomainClass::OtherIrrational => f.write_str("other-irrational"),
            DomainClass::Unknown { horizon } => write!(f, "unknown-at-{horizon}"),
        }
    }
}

impl fmt::Display for ImageClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImageClass::DyadicRational => f.write_str("dyadic-rational"),
            ImageClass::NonDyadicRational => f.write_str("non-dyadic-rational"),
            ImageClass::Irrational => f.write_str("irrational"),
            ImageClass::Unknown { horizon } => write!(f, "unknown-at-{horizon}"),
        }
    }
}

/// Result of [`classify`]: both classes, plus `?(x)` when it is computable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub domain: DomainClass,
    pub image: ImageClass,
    pub value: Option<BigRational>,
}

/// Classifies `x` and `?(x)`. The image class of a finite or periodic
/// fraction is read off the computed value of `?(x)`, not assumed.
///
/// Streams not declared aperiodic are reported as unknown at `horizon`.
pub fn classify_cf(cf: &ContinuedFraction, horizon: usize) -> Result<Classification> {
    let domain = match cf.tail() {
        Tail::Finite(_) => DomainClass::Rational,
        Tail::Periodic { .. } => DomainClass::QuadraticIrrational,
        Tail::Stream(s) if s.is_declared_aperiodic() => DomainClass::OtherIrrational,
        Tail::Stream(_) => DomainClass::Unknown { horizon },
    };
    let value = match cf.tail() {
        Tail::Stream(_) => None,
        _ => Some(question_mark_binary(cf)?.value()?),
    };
    let image = match (&value, domain) {
        (Some(v), _) if crate::exactnum::is_dyadic(v) => ImageClass::DyadicRational,
        (Some(_), _) => ImageClass::NonDyadicRational,
        (None, DomainClass::OtherIrrational) => ImageClass::Irrational,
        (None, _) => ImageClass::Unknown { horizon },
    };
    Ok(Classification { domain, image, value })
}

/// [`classify_cf`] applied to the expansion of an exact number.
pub fn classify(x: &ExactNumber) -> Result<Classification> {
    classify_cf(&cf_expand(x), 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contfrac::{cf_expand_rational, DigitStream};
    use crate::exactnum::ratio;

    fn num(s: &str) -> ExactNumber {
        s.parse().unwrap()
    }

    #[test]
    fn series_examples() {
        let exact = |s: &str, k| {
            let (lo, hi) = question_mark_series(&s.parse().unwrap(), k).unwrap();
            assert_eq!(lo, hi, "{s}");
            lo.to_rational()
        };
        assert_eq!(exact("[0; 2]", 1), ratio(1, 2));
        assert_eq!(exact("[0; 2, 2]", 2), ratio(3, 8));
        assert_eq!(exact("[3]", 1), ratio(3, 1));

        let cf: ContinuedFraction = "[0; (2)]".parse().unwrap();
        for k in 1..30 {
            let (lo, hi) = question_mark_series(&cf, k).unwrap();
            let (lo, hi) = (lo.to_rational(), hi.to_rational());
            assert!(lo < ratio(2, 5) && ratio(2, 5) < hi, "k = {k}");
            assert_eq!(&hi - &lo, BigRational::new(1.into(), BigInt::one() << (2 * k)));
        }
    }

    #[test]
    fn exact_examples() {
        assert_eq!(question_mark_exact(&num("1/3")).unwrap().to_string(), "1/4");
        assert_eq!(question_mark_exact(&num("sqrt(2)-1")).unwrap(), QmImage::NonDyadic(ratio(2, 5)));
        assert_eq!(question_mark_exact(&num("0")).unwrap().to_string(), "0");
        assert_eq!(question_mark_exact(&num("1")).unwrap().to_string(), "1");
        assert_eq!(question_mark_exact(&num("(sqrt(5)-1)/2")).unwrap().to_string(), "2/3");
        assert!(question_mark_exact(&num("sqrt(2)")).is_err());
        assert!(question_mark_exact(&num("-1/2")).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse_question_mark(&ratio(1, 2)).unwrap(), num("1/2"));
        assert_eq!(inverse_question_mark(&ratio(2, 5)).unwrap(), num("sqrt(2)-1"));
        assert_eq!(inverse_question_mark(&ratio(1, 4)).unwrap(), num("1/3"));
        assert_eq!(inverse_question_mark(&ratio(2, 3)).unwrap(), num("(sqrt(5)-1)/2"));
        assert_eq!(inverse_question_mark(&ratio(0, 1)).unwrap(), num("0"));
        assert_eq!(inverse_question_mark(&ratio(1, 1)).unwrap(), num("1"));
        assert!(inverse_question_mark(&ratio(3, 2)).is_err());
    }

    #[test]
    fn inverse_round_trips_small_denominators() {
        for d in 1..60i64 {
            for n in 0..=d {
                let y = ratio(n, d);
                let x = inverse_question_mark(&y).unwrap();
                assert_eq!(question_mark_exact(&x).unwrap().to_rational(), y, "{y}");
            }
        }
    }

    #[test]
    fn twin_fractions_agree() {
        // [0; 3, 4] and [0; 3, 3, 1] name the same number.
        let twin = question_mark_binary(&"[0; 3, 3, 1]".parse().unwrap()).unwrap();
        let canon = question_mark_binary(&cf_expand_rational(&ratio(4, 13))).unwrap();
        assert_eq!(twin.value().unwrap(), canon.value().unwrap());
    }

    #[test]
    fn classification() {
        let c = classify(&num("3/7")).unwrap();
        assert_eq!((c.domain, c.image), (DomainClass::Rational, ImageClass::DyadicRational));
        let c = classify(&num("sqrt(2)-1")).unwrap();
        assert_eq!((c.domain, c.image), (DomainClass::QuadraticIrrational, ImageClass::NonDyadicRational));
        assert_eq!(c.value, Some(ratio(2, 5)));
        let c = classify_cf(&ContinuedFraction::euler(), 64).unwrap();
        assert_eq!((c.domain, c.image), (DomainClass::OtherIrrational, ImageClass::Irrational));
        let plain = ContinuedFraction::stream(0, DigitStream::new(std::iter::repeat(BigInt::one())));
        let c = classify_cf(&plain, 64).unwrap();
        assert_eq!(c.image, ImageClass::Unknown { horizon: 64 });
    }
}
