//! `[a0; a1, a2]` and `[a0; a1, (p1, p2)]` text forms.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::{ContinuedFraction, Tail};
use crate::error::{Error, Result};

const STREAM_PREVIEW: usize = 10;

fn join(digits: &[BigInt]) -> String {
    digits.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.a0)?;
        match &self.tail {
            Tail::Finite(d) if d.is_empty() => {}
            Tail::Finite(d) => write!(f, "; {}", join(d))?,
            Tail::Periodic { preperiod, period } if preperiod.is_empty() => {
                write!(f, "; ({})", join(period))?
            }
            Tail::Periodic { preperiod, period } => {
                write!(f, "; {}, ({})", join(preperiod), join(period))?
            }
            Tail::Stream(s) => write!(f, "; {}, ...", join(&s.prefix(STREAM_PREVIEW)))?,
        }
        write!(f, "]")
    }
}

fn parse_list(src: &str, body: &str) -> Result<Vec<BigInt>> {
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::parse(src, format!("bad partial quotient {:?}", t.trim())))
        })
        .collect()
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::parse(s, "expected [a0; a1, ...]"))?;
        let (head, rest) = inner.split_once(';').unwrap_or((inner, ""));
        let a0: BigInt = head
            .trim()
            .parse()
            .map_err(|_| Error::parse(s, "bad integer part"))?;

        match rest.find('(') {
            None => ContinuedFraction::finite(a0, parse_list(s, rest)?),
            Some(open) => {
                let close = rest
                    .rfind(')')
                    .filter(|&c| c > open && rest[c + 1..].trim().is_empty())
                    .ok_or_else(|| Error::parse(s, "the periodic group must close the fraction"))?;
                let pre = rest[..open].trim().trim_end_matches(',');
                let preperiod = parse_list(s, pre)?;
                let period = parse_list(s, &rest[open + 1..close])?;
                ContinuedFraction::periodic(a0, preperiod, period)
            }
        }
    }
}
