use num_traits::{One, Zero};

use super::group::{cokernel, kernel_rank, AbelianGroupPresentation};
use super::matrix::IntegerMatrix;
use crate::error::{Error, Result};

/// Ways in which a 0/1 matrix falls outside the irreducible, non-permutation
/// setting where `K0 = coker(1 - A^t)` and `K1 = ker(1 - A^t)` is the classical
/// answer. The groups are still computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MatrixFlag {
    PermutationMatrix,
    /// No power of the matrix up to the Wielandt bound is strictly positive.
    NoPositivePower,
}

impl MatrixFlag {
    pub fn as_str(&self) -> &'static str {
        match self {
            MatrixFlag::PermutationMatrix => "permutation-matrix",
            MatrixFlag::NoPositivePower => "no-positive-power",
        }
    }
}

/// K-groups of the Cuntz-Krieger algebra of a square 0/1 matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuntzKrieger {
    pub k0: AbelianGroupPresentation,
    pub k1_rank: usize,
    pub flags: Vec<MatrixFlag>,
}

fn is_permutation(a: &IntegerMatrix) -> bool {
    let n = a.rows();
    let ones_in = |it: &mut dyn Iterator<Item = usize>| it.filter(|&x| x == 1).count();
    (0..n).all(|i| ones_in(&mut (0..n).map(|j| usize::from(a[(i, j)].is_one()))) == 1)
        && (0..n).all(|j| ones_in(&mut (0..n).map(|i| usize::from(a[(i, j)].is_one()))) == 1)
}

/// True when some power of the 0/1 matrix has all entries positive.
/// Checking up to `(n-1)^2 + 1` suffices.
pub fn has_positive_power(a: &IntegerMatrix) -> bool {
    let n = a.rows();
    let base: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| !a[(i, j)].is_zero()).collect())
        .collect();
    let mut power = base.clone();
    for _ in 0..(n - 1) * (n - 1) + 1 {
        if power.iter().flatten().all(|&b| b) {
            return true;
        }
        power = (0..n)
            .map(|i| (0..n).map(|j| (0..n).any(|k| power[i][k] && base[k][j])).collect())
            .collect();
    }
    false
}

/// `K0 = coker(1 - A^t)` and the rank of `K1 = ker(1 - A^t)`.
pub fn k0_cuntz_krieger(a: &IntegerMatrix) -> Result<CuntzKrieger> {
    if !a.is_square() {
        return Err(Error::InvalidMatrix("expected a square matrix".into()));
    }
    if !a.is_zero_one() {
        return Err(Error::InvalidMatrix("expected entries 0 and 1 only".into()));
    }
    let m = a.transpose().one_minus()?;
    let mut flags = Vec::new();
    if is_permutation(a) {
        flags.push(MatrixFlag::PermutationMatrix);
    }
    if !has_positive_power(a) {
        flags.push(MatrixFlag::NoPositivePower);
    }
    Ok(CuntzKrieger {
        k0: cokernel(&m),
        k1_rank: kernel_rank(&m),
        flags,
    })
}
