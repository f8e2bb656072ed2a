//! Text input for exact numbers.
//!
//! Accepts integer, fraction and decimal literals combined with `+ - * /`,
//! parentheses and `sqrt(..)` of a non-negative rational, so `3/7`, `0.375`,
//! `(1+sqrt(5))/2` and `sqrt(2)-1` all parse.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed};

use super::number::ExactNumber;
use crate::error::{Error, Result};

impl FromStr for ExactNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser { src: s, pos: 0 };
        let value = parser.expr()?;
        parser.skip_ws();
        if parser.pos != s.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(value)
    }
}

/// Parses an exact rational; surds are rejected.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    match s.parse::<ExactNumber>()? {
        ExactNumber::Rational(x) => Ok(x),
        ExactNumber::Surd(_) => Err(Error::parse(s, "expected a rational number")),
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> Error {
        Error::parse(self.src, format!("{reason} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ExactNumber> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ExactNumber> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.checked_mul(&self.unary()?)?;
            } else if self.eat('/') {
                acc = acc.checked_div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ExactNumber> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<ExactNumber> {
        self.skip_ws();
        if self.eat('(') {
            let v = self.expr()?;
            if !self.eat(')') {
                return Err(self.error("expected ')'"));
            }
            return Ok(v);
        }
        if self.src[self.pos..].starts_with("sqrt") {
            self.pos += 4;
            if !self.eat('(') {
                return Err(self.error("expected '(' after sqrt"));
            }
            let arg = self.expr()?;
            if !self.eat(')') {
                return Err(self.error("expected ')'"));
            }
            return self.sqrt(arg);
        }
        self.literal()
    }

    fn sqrt(&self, arg: ExactNumber) -> Result<ExactNumber> {
        let x = match arg {
            ExactNumber::Rational(x) if !x.is_negative() => x,
            _ => return Err(self.error("sqrt needs a non-negative rational argument")),
        };
        // sqrt(n/m) = sqrt(n*m)/m
        ExactNumber::quadratic(0, 1, x.denom().clone(), x.numer() * x.denom())
    }

    fn literal(&mut self) -> Result<ExactNumber> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let int_end = self.pos;
        let mut frac = "";
        if self.peek() == Some('.') {
            self.pos += 1;
            let fs = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            frac = &self.src[fs..self.pos];
        }
        let int_part = &self.src[start..int_end];
        if int_part.is_empty() && frac.is_empty() {
            return Err(self.error("expected a number"));
        }
        let digits = format!("{int_part}{frac}");
        let numer: BigInt = digits.parse().map_err(|_| self.error("bad number"))?;
        let denom: BigInt = Pow::pow(BigInt::from(10u32), frac.len());
        Ok(ExactNumber::Rational(BigRational::new(numer, denom)))
    }
}
