//! Jacobi-Perron expansions of vectors `(x1, ..., xm)` in `[0, 1)^m`.
//!
//! One step divides by the first coordinate:
//! `x -> ({x2/x1}, ..., {xm/x1}, {1/x1})` with digit
//! `(floor(x2/x1), ..., floor(xm/x1), floor(1/x1))`. For `m = 1` this is the
//! Gauss map and the digits are the partial quotients of the regular
//! continued fraction.
//!
//! ```
//! use qmark::jacobiperron::{jp_convergent, jp_expand};
//! use qmark::ExactNumber;
//!
//! let theta: Vec<ExactNumber> = vec!["3/7".parse().unwrap(), "2/7".parse().unwrap()];
//! let exp = jp_expand(&theta, 20).unwrap();
//! assert_eq!(exp.to_string(), "(0, 2), (0, 1), (1, 2); terminated");
//! let back = jp_convergent(&exp, 3).unwrap();
//! assert_eq!(back[0].to_string(), "3/7");
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{floor, ExactNumber};
use crate::ktheory::IntegerMatrix;
use crate::minkowski::{DomainClass, ImageClass};
use crate::periodic;

const START_BITS: u32 = 64;
const MAX_BITS: u32 = 1 << 13;

/// How the digit list of a [`JPExpansion`] ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JpEnd {
    /// The first coordinate reached 0.
    Terminated,
    /// The step limit was reached.
    Truncated,
    /// Declared by the caller: the digits after `preperiod` repeat forever.
    Periodic { preperiod: usize },
    /// Declared by the caller: the (infinite) expansion never becomes periodic.
    Aperiodic,
}

/// Digits of a Jacobi-Perron expansion in dimension `m`.
///
/// Every digit has `m` non-negative entries, the last one at least 1.
#[derive(Clone, Debug, PartialEq)]
pub struct JPExpansion {
    dim: usize,
    digits: Vec<Vec<BigInt>>,
    end: JpEnd,
    remainder: Option<Vec<ExactNumber>>,
}

fn check_digit(d: &[BigInt], m: usize) -> Result<()> {
    if d.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: d.len(),
        });
    }
    if d.iter().any(Signed::is_negative) || d.last().is_none_or(|x| !x.is_positive()) {
        let shown: Vec<String> = d.iter().map(ToString::to_string).collect();
        return Err(Error::InvalidDigit(format!("({})", shown.join(", "))));
    }
    Ok(())
}

impl JPExpansion {
    /// An expansion given by its digits. For [`JpEnd::Periodic`] the list
    /// holds the preperiod followed by one period.
    pub fn from_digits(dim: usize, digits: Vec<Vec<BigInt>>, end: JpEnd) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        for d in &digits {
            check_digit(d, dim)?;
        }
        if let JpEnd::Periodic { preperiod } = end {
            if preperiod >= digits.len() {
                return Err(Error::InvalidArgument("empty period".into()));
            }
        }
        Ok(JPExpansion {
            dim,
            digits,
            end,
            remainder: None,
        })
    }

    /// A declared periodic expansion `preperiod, period, period, ...`,
    /// with the period and preperiod shortened where possible.
    pub fn periodic(dim: usize, preperiod: Vec<Vec<BigInt>>, period: Vec<Vec<BigInt>>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidArgument("empty period".into()));
        }
        let (pre, per) = periodic::minimize(preperiod, period);
        let preperiod = pre.len();
        let mut digits = pre;
        digits.extend(per);
        JPExpansion::from_digits(dim, digits, JpEnd::Periodic { preperiod })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The digits as stored; for periodic expansions, preperiod then one period.
    pub fn digits(&self) -> &[Vec<BigInt>] {
        &self.digits
    }

    pub fn end(&self) -> &JpEnd {
        &self.end
    }

    pub fn is_terminated(&self) -> bool {
        self.end == JpEnd::Terminated
    }

    /// Digit `i` (0-based), unrolling periodic expansions.
    pub fn digit(&self, i: usize) -> Option<&[BigInt]> {
        match self.end {
            JpEnd::Periodic { preperiod } => {
                let (pre, per) = self.digits.split_at(preperiod);
                Some(periodic::nth(pre, per, i))
            }
            _ => self.digits.get(i),
        }
        .map(Vec::as_slice)
    }

    /// Number of known digits, `None` for periodic expansions.
    pub fn len(&self) -> Option<usize> {
        match self.end {
            JpEnd::Periodic { .. } => None,
            _ => Some(self.digits.len()),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// The vector reached after the last digit, when it is known exactly.
    /// It is all zeros only if the expansion ends cleanly.
    pub fn remainder(&self) -> Option<&[ExactNumber]> {
        self.remainder.as_deref()
    }
}

impl fmt::Display for JPExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self
            .digits
            .iter()
            .map(|d| {
                let xs: Vec<String> = d.iter().map(ToString::to_string).collect();
                if xs.len() == 1 {
                    xs[0].clone()
                } else {
                    format!("({})", xs.join(", "))
                }
            })
            .collect();
        let end = match &self.end {
            JpEnd::Terminated => "terminated".to_string(),
            JpEnd::Truncated => "truncated".to_string(),
            JpEnd::Periodic { preperiod } => format!("periodic after {preperiod}"),
            JpEnd::Aperiodic => "aperiodic".to_string(),
        };
        write!(f, "{}; {end}", shown.join(", "))
    }
}

/// Current vector, kept as integer combinations of `(x1, ..., xm, 1)` of the
/// input. Row `i < m` is proportional to coordinate `i + 1`, row `m` to the
/// constant 1.
struct State<'a> {
    theta: &'a [ExactNumber],
    forms: Vec<Vec<BigInt>>,
}

enum Value {
    Exact(ExactNumber),
    Range(BigRational, BigRational),
}

impl State<'_> {
    fn exact(&self, form: &[BigInt]) -> Option<ExactNumber> {
        let m = self.theta.len();
        let mut acc = ExactNumber::integer(form[m].clone());
        for (c, t) in form.iter().zip(self.theta) {
            if !c.is_zero() {
                let term = t.checked_mul(&ExactNumber::integer(c.clone())).ok()?;
                acc = acc.checked_add(&term).ok()?;
            }
        }
        Some(acc)
    }

    fn value(&self, form: &[BigInt], bits: u32) -> Value {
        if let Some(v) = self.exact(form) {
            return Value::Exact(v);
        }
        let m = self.theta.len();
        let mut lo = BigRational::from_integer(form[m].clone());
        let mut hi = lo.clone();
        let width = BigRational::new(BigInt::one(), BigInt::one() << bits);
        for (c, t) in form.iter().zip(self.theta) {
            let l = t.lower_bound(bits);
            let h = &l + &width;
            let c = BigRational::from_integer(c.clone());
            if c.is_positive() {
                lo += &c * l;
                hi += &c * h;
            } else {
                lo += &c * h;
                hi += &c * l;
            }
        }
        Value::Range(lo, hi)
    }

    // floor(form_num / form_den), or None if undecided at this precision.
    fn floor_ratio(&self, num: &[BigInt], den: &[BigInt], bits: u32) -> Option<BigInt> {
        match (self.value(num, bits), self.value(den, bits)) {
            (Value::Exact(n), Value::Exact(d)) if n.checked_div(&d).is_ok() => {
                Some(n.checked_div(&d).ok()?.floor())
            }
            (n, d) => {
                let range = |v: Value| match v {
                    Value::Exact(x) => {
                        let l = x.lower_bound(bits);
                        let w = BigRational::new(BigInt::one(), BigInt::one() << bits);
                        let h = if x.as_rational().is_some() { l.clone() } else { &l + w };
                        (l, h)
                    }
                    Value::Range(l, h) => (l, h),
                };
                let (nl, nh) = range(n);
                let (dl, dh) = range(d);
                if !dl.is_positive() {
                    return None;
                }
                let q = [&nl / &dl, &nl / &dh, &nh / &dl, &nh / &dh];
                let lo = q.iter().min().expect("four values");
                let hi = q.iter().max().expect("four values");
                let f = floor(lo);
                (f == floor(hi)).then_some(f)
            }
        }
    }

    fn first_is_zero(&self) -> Option<bool> {
        self.exact(&self.forms[0]).map(|v| v.is_zero())
    }
}

fn check_coordinates(theta: &[ExactNumber]) -> Result<()> {
    if theta.is_empty() {
        return Err(Error::InvalidArgument("need at least one coordinate".into()));
    }
    let zero = ExactNumber::integer(0);
    let one = ExactNumber::integer(1);
    for t in theta {
        if !(t >= &zero && t < &one) {
            return Err(Error::OutOfRange {
                value: t.to_string(),
                expected: "coordinates in [0, 1)",
            });
        }
    }
    Ok(())
}

/// Expands `theta` for at most `max_steps` digits.
///
/// Coordinates that share a quadratic field (or are rational) are handled
/// exactly. Otherwise floors are certified from rational enclosures, and
/// [`Error::EnclosureTooWide`] reports the step at which that failed.
pub fn jp_expand(theta: &[ExactNumber], max_steps: usize) -> Result<JPExpansion> {
    check_coordinates(theta)?;
    let m = theta.len();
    let mut state = State {
        theta,
        forms: (0..=m)
            .map(|i| (0..=m).map(|j| BigInt::from(u8::from(i == j))).collect())
            .collect(),
    };
    let mut digits = Vec::new();
    let mut end = JpEnd::Truncated;
    for step in 0..max_steps {
        // With mixed fields x1 = 0 cannot be certified (None); the floors
        // below only succeed once x1 > 0 is.
        if state.first_is_zero() == Some(true) {
            end = JpEnd::Terminated;
            break;
        }
        let mut digit = Vec::with_capacity(m);
        for i in 1..=m {
            let mut bits = START_BITS;
            let a = loop {
                if let Some(a) = state.floor_ratio(&state.forms[i], &state.forms[0], bits) {
                    break a;
                }
                if bits >= MAX_BITS {
                    return Err(Error::EnclosureTooWide { step });
                }
                bits *= 2;
            };
            digit.push(a);
        }
        let w0 = state.forms[0].clone();
        let mut next: Vec<Vec<BigInt>> = (1..=m)
            .map(|i| {
                state.forms[i]
                    .iter()
                    .zip(&w0)
                    .map(|(x, y)| x - &digit[i - 1] * y)
                    .collect()
            })
            .collect();
        next.push(w0);
        state.forms = next;
        digits.push(digit);
    }
    if end == JpEnd::Truncated && state.first_is_zero() == Some(true) {
        end = JpEnd::Terminated;
    }

    let remainder = (0..m)
        .map(|i| {
            let num = state.exact(&state.forms[i])?;
            let den = state.exact(&state.forms[m])?;
            num.checked_div(&den).ok()
        })
        .collect::<Option<Vec<_>>>();
    Ok(JPExpansion {
        dim: m,
        digits,
        end,
        remainder,
    })
}

/// The `(m+1) x (m+1)` factor `[[0, 1], [I, a]]`: first row `(0, ..., 0, 1)`,
/// identity below-left, the digit in the last column.
///
/// ```
/// use qmark::jacobiperron::jp_factor_matrix;
/// use num_bigint::BigInt;
///
/// let f = jp_factor_matrix(&[BigInt::from(0), BigInt::from(2)], 2).unwrap();
/// assert_eq!(f.to_string(), "[[0, 0, 1], [1, 0, 0], [0, 1, 2]]");
/// ```
pub fn jp_factor_matrix(digit: &[BigInt], m: usize) -> Result<IntegerMatrix> {
    check_digit(digit, m)?;
    let mut f = IntegerMatrix::zeros(m + 1, m + 1);
    f[(0, m)] = BigInt::one();
    for i in 1..=m {
        f[(i, i - 1)] = BigInt::one();
        f[(i, m)] = digit[i - 1].clone();
    }
    Ok(f)
}

/// Product of the first `k` factor matrices.
pub fn jp_product(exp: &JPExpansion, k: usize) -> Result<IntegerMatrix> {
    if exp.len().is_some_and(|n| k > n) {
        return Err(Error::InvalidArgument(format!(
            "asked for {k} digits, only {} known",
            exp.digits.len()
        )));
    }
    let m = exp.dim;
    let mut p = IntegerMatrix::identity(m + 1);
    for i in 0..k {
        let d = exp.digit(i).expect("length checked");
        p = p.mul(&jp_factor_matrix(d, m)?)?;
    }
    Ok(p)
}

/// The `k`-th convergent: the last column of the product of the first `k`
/// factors, scaled so that its last entry is 1.
pub fn jp_convergent(exp: &JPExpansion, k: usize) -> Result<Vec<BigRational>> {
    if k == 0 {
        return Err(Error::EmptyProduct);
    }
    let p = jp_product(exp, k)?;
    let m = exp.dim;
    let last = p[(m, m)].clone();
    if last.is_zero() {
        return Err(Error::NonAdmissible { step: k });
    }
    Ok((0..m).map(|i| BigRational::new(p[(i, m)].clone(), last.clone())).collect())
}

/// Rebuilds the input exactly from all digits and the final remainder.
/// Equals the last convergent iff the remainder is zero.
pub fn jp_reconstruct(exp: &JPExpansion) -> Result<Vec<ExactNumber>> {
    let rest = exp.remainder().ok_or(Error::UnsupportedStream)?;
    let n = exp.len().ok_or(Error::UnsupportedStream)?;
    let m = exp.dim;
    let p = jp_product(exp, n)?;
    let mut w: Vec<ExactNumber> = rest.to_vec();
    w.push(ExactNumber::integer(1));
    let col = |i: usize| -> Result<ExactNumber> {
        let mut acc = ExactNumber::integer(0);
        for (j, x) in w.iter().enumerate() {
            acc = acc.checked_add(&x.checked_mul(&ExactNumber::integer(p[(i, j)].clone()))?)?;
        }
        Ok(acc)
    };
    let last = col(m)?;
    (0..m).map(|i| col(i)?.checked_div(&last)).collect()
}

/// Arithmetic type of the vector behind an expansion and of its image under
/// the `m`-dimensional question-mark map: terminating expansions come from
/// rational vectors (dyadic images), periodic ones from algebraic vectors of
/// degree `m + 1` (non-dyadic rational images), and the rest are irrational.
///
/// Periodicity for `m >= 2` is taken from the declaration in the expansion.
pub fn classify_jp(exp: &JPExpansion) -> (DomainClass, ImageClass) {
    match exp.end {
        JpEnd::Terminated => (DomainClass::Rational, ImageClass::DyadicRational),
        JpEnd::Periodic { .. } if exp.dim == 1 => {
            (DomainClass::QuadraticIrrational, ImageClass::NonDyadicRational)
        }
        JpEnd::Periodic { .. } => (DomainClass::AlgebraicOfDegree(exp.dim + 1), ImageClass::NonDyadicRational),
        JpEnd::Aperiodic => (DomainClass::OtherIrrational, ImageClass::Irrational),
        JpEnd::Truncated => {
            let horizon = exp.digits.len();
            (DomainClass::Unknown { horizon }, ImageClass::Unknown { horizon })
        }
    }
}
