use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::matrix::IntegerMatrix;
use super::snf::smith_normal_form;
use crate::exactnum::factor::factorize;

/// A finitely generated abelian group `Z^r + Z/d1 + ... + Z/dk` with
/// `d1 | d2 | ... | dk` and every `di >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroupPresentation {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl AbelianGroupPresentation {
    pub fn trivial() -> Self {
        AbelianGroupPresentation {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    /// `Z^free_rank` plus cyclic groups of the given orders, put into
    /// invariant-factor form. Orders 0 count as copies of `Z`, orders 1 vanish.
    pub fn from_cyclic(free_rank: usize, orders: &[BigInt]) -> Self {
        let mut free_rank = free_rank;
        // prime -> exponents of its powers among the orders
        let mut primary: BTreeMap<BigUint, Vec<u32>> = BTreeMap::new();
        for d in orders {
            if d.is_zero() {
                free_rank += 1;
                continue;
            }
            let d = d.magnitude();
            if d.is_one() {
                continue;
            }
            for (p, e) in factorize(d) {
                primary.entry(p).or_default().push(e);
            }
        }
        let k = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![BigInt::one(); k];
        for (p, mut exps) in primary {
            exps.sort_unstable();
            // largest exponents go to the last factors
            for (slot, e) in factors[k - exps.len()..].iter_mut().zip(exps) {
                *slot *= BigInt::from(p.pow(e));
            }
        }
        AbelianGroupPresentation {
            free_rank,
            invariant_factors: factors,
        }
    }

    /// Direct sum.
    pub fn sum(&self, other: &Self) -> Self {
        let mut orders = self.invariant_factors.clone();
        orders.extend(other.invariant_factors.iter().cloned());
        AbelianGroupPresentation::from_cyclic(self.free_rank + other.free_rank, &orders)
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// True when the group is finite.
    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }

    /// Number of elements, `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        self.is_torsion()
            .then(|| self.invariant_factors.iter().product())
    }
}

impl fmt::Display for AbelianGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `Z^rows / A Z^cols` for `A` viewed as a map `Z^cols -> Z^rows`.
pub fn cokernel(a: &IntegerMatrix) -> AbelianGroupPresentation {
    let diag = smith_normal_form(a).diagonal();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    AbelianGroupPresentation {
        free_rank: a.rows() - rank,
        invariant_factors: diag.into_iter().filter(|d| d > &BigInt::one()).collect(),
    }
}

/// Rank of the kernel of `A: Z^cols -> Z^rows`.
pub fn kernel_rank(a: &IntegerMatrix) -> usize {
    a.cols() - a.rank()
}
