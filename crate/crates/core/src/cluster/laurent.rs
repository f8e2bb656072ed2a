use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A Laurent polynomial with integer coefficients in `x1, ..., xn`.
///
/// Terms are keyed by exponent vectors (which may be negative); zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        LaurentPolynomial::monomial(vec![0; nvars], BigInt::one())
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        LaurentPolynomial::monomial(e, BigInt::one())
    }

    pub fn monomial(exponents: Vec<i64>, coeff: BigInt) -> Self {
        let nvars = exponents.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponents, coeff);
        }
        LaurentPolynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some((exponents, coefficient))` for a single term.
    pub fn as_monomial(&self) -> Option<(&Vec<i64>, &BigInt)> {
        match self.terms.len() {
            1 => self.terms.iter().next(),
            _ => None,
        }
    }

    fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPolynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// `self * x^shift`
    pub fn shift(&self, shift: &[i64]) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Smallest exponent of each variable over all terms.
    pub fn min_exponents(&self) -> Vec<i64> {
        (0..self.nvars)
            .map(|i| self.terms.keys().map(|e| e[i]).min().unwrap_or(0))
            .collect()
    }

    /// True when every coefficient is positive.
    pub fn has_positive_coefficients(&self) -> bool {
        self.terms.values().all(Signed::is_positive)
    }

    /// Exact quotient `self / divisor` in `Z[x^{+-1}]`, if there is one.
    pub fn divide(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        // Strip the monomial part of the divisor; what is left is a polynomial
        // not divisible by any variable, so divisibility can be tested with
        // ordinary polynomial division after clearing negative exponents.
        let dmin = divisor.min_exponents();
        let d = divisor.shift(&dmin.iter().map(|x| -x).collect::<Vec<_>>());
        let nmin = self.min_exponents();
        let mut r = self.shift(&nmin.iter().map(|x| -x).collect::<Vec<_>>());

        let (lead_e, lead_c) = d.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut q = LaurentPolynomial::zero(self.nvars);
        while let Some((e, c)) = r.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let diff: Vec<i64> = e.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            if diff.iter().any(|&x| x < 0) {
                return None;
            }
            let (coeff, rem) = c.div_rem(&lead_c);
            if !rem.is_zero() {
                return None;
            }
            let t = LaurentPolynomial::monomial(diff, coeff);
            r = r.sub(&t.mul(&d));
            q = q.add(&t);
        }
        let back: Vec<i64> = nmin.iter().zip(&dmin).map(|(n, d)| n - d).collect();
        Some(q.shift(&back))
    }
}

fn fmt_monomial(e: &[i64]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &p)| p != 0)
        .map(|(i, &p)| if p == 1 { format!("x{}", i + 1) } else { format!("x{}^{p}", i + 1) })
        .collect();
    parts.join("*")
}

/// Terms in increasing exponent order, e.g. `x1^-1 + x1^-1*x2`.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let m = fmt_monomial(e);
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (m.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => f.write_str(&m)?,
                (false, false) => write!(f, "{mag}*{m}")?,
            }
        }
        Ok(())
    }
}

/// A quotient of two Laurent polynomials.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

impl RationalFunction {
    /// `num / den`, reduced to a Laurent polynomial when `den` divides `num`.
    ///
    /// # Panics
    ///
    /// Panics if `den` is zero.
    pub fn new(num: LaurentPolynomial, den: LaurentPolynomial) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        match num.divide(&den) {
            Some(q) => RationalFunction::from(q),
            None => RationalFunction { num, den },
        }
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPolynomial {
        &self.den
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFunction::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        RationalFunction::new(num, self.den.mul(&other.den))
    }

    /// # Panics
    ///
    /// Panics on the zero function.
    pub fn recip(&self) -> Self {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        let nvars = self.num.nvars();
        (0..e).fold(RationalFunction::from(LaurentPolynomial::one(nvars)), |acc, _| acc.mul(self))
    }
}

impl From<LaurentPolynomial> for RationalFunction {
    fn from(p: LaurentPolynomial) -> Self {
        let nvars = p.nvars();
        RationalFunction {
            num: p,
            den: LaurentPolynomial::one(nvars),
        }
    }
}

/// Equality of functions: `a/b = c/d` iff `ad = bc`.
impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RationalFunction {}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPolynomial::one(self.den.nvars()) {
            self.num.fmt(f)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// The Laurent polynomial equal to `f`, if there is one.
pub fn is_laurent(f: &RationalFunction) -> Option<LaurentPolynomial> {
    f.num.divide(&f.den)
}
