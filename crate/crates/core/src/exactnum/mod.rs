//! Exact number types: reduced rationals, dyadic rationals and quadratic surds.
//!
//! All values are immutable once built and are `Send + Sync`.

mod dyadic;
pub mod factor;
mod number;
mod parse;
mod rational;
mod surd;

pub use dyadic::DyadicRational;
pub use num_rational::BigRational;
pub use number::ExactNumber;
pub use parse::parse_rational;
pub use rational::{floor, fract, is_dyadic, rational_normalize};
pub use surd::{surd_arith, QuadraticSurd, SurdOp};

#[cfg(test)]
pub(crate) use rational::{int, ratio};
