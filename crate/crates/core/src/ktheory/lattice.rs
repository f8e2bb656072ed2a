use std::fmt;

use crate::error::Result;
use crate::exactnum::ExactNumber;

/// The group `Z + Z*theta_1 + ... + Z*theta_m`, with generators reduced mod `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    generators: Vec<ExactNumber>,
}

/// Builds the lattice of `theta`.
pub fn lattice_lambda(theta: &[ExactNumber]) -> Result<Lattice> {
    Ok(Lattice {
        generators: theta.iter().map(ExactNumber::fract).collect(),
    })
}

impl Lattice {
    /// `theta_1, ..., theta_m` in `[0, 1)`; the generator 1 is implicit.
    pub fn generators(&self) -> &[ExactNumber] {
        &self.generators
    }

    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    /// Whether two lattices are equal as subgroups of the reals.
    ///
    /// Decided for `m = 1`: `Z + Z*a = Z + Z*b` iff `b = +-a mod Z` for
    /// irrationals, and iff `a`, `b` have the same denominator for rationals.
    /// For `m >= 2` identical generator lists give `Some(true)`; anything
    /// else is undecided (`None`).
    pub fn same_as(&self, other: &Lattice) -> Option<bool> {
        match (self.generators.as_slice(), other.generators.as_slice()) {
            ([a], [b]) => Some(match (a, b) {
                (ExactNumber::Rational(x), ExactNumber::Rational(y)) => x.denom() == y.denom(),
                (ExactNumber::Surd(_), ExactNumber::Surd(_)) => a == b || *a == b.neg().fract(),
                _ => false,
            }),
            (a, b) if a == b => Some(true),
            _ => None,
        }
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Z")?;
        for g in &self.generators {
            if !g.is_zero() {
                write!(f, " + Z({g})")?;
            }
        }
        Ok(())
    }
}
