use num_bigint::BigInt;
use num_traits::Signed;

use super::group::{cokernel, AbelianGroupPresentation};
use super::matrix::IntegerMatrix;
use crate::blockcode::{Block, BlockSequence};
use crate::error::{Error, Result};

/// Truncated `K0` of a block sequence, see [`k0_blocks`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockK0 {
    pub truncation: usize,
    pub group: AbelianGroupPresentation,
    /// `|1 - s_i|` for each block, `s_i` its number of ones.
    pub factors: Vec<BigInt>,
    /// Indices of blocks with exactly one 1; each contributes a copy of `Z`.
    pub degenerate: Vec<usize>,
}

/// The `L x L` matrix whose columns all equal the block.
pub fn block_matrix(block: &Block) -> IntegerMatrix {
    let l = block.len();
    let mut m = IntegerMatrix::zeros(l, l);
    for (i, &b) in block.entries().iter().enumerate() {
        if b {
            for j in 0..l {
                m[(i, j)] = BigInt::from(1);
            }
        }
    }
    m
}

/// `coker(I - M^t)` for the block-diagonal matrix `M` of the first
/// `truncation` blocks, each block `B` taken as the square matrix with every
/// column equal to `B`.
///
/// A block with `s` ones contributes `Z/|1 - s|`, or `Z` when `s = 1`.
pub fn k0_blocks(seq: &BlockSequence, truncation: usize) -> Result<BlockK0> {
    if truncation == 0 {
        return Err(Error::InvalidArgument("truncation must be at least one block".into()));
    }
    let mut group = AbelianGroupPresentation::trivial();
    let mut factors = Vec::with_capacity(truncation);
    let mut degenerate = Vec::new();
    for i in 0..truncation {
        let block = seq.block(i).ok_or_else(|| {
            Error::InvalidArgument(format!("only {i} blocks available, asked for {truncation}"))
        })?;
        let summand = cokernel(&block_matrix(block).transpose().one_minus()?);
        group = group.sum(&summand);
        factors.push((BigInt::from(1) - BigInt::from(block.weight())).abs());
        if block.weight() == 1 {
            degenerate.push(i);
        }
    }
    Ok(BlockK0 {
        truncation,
        group,
        factors,
        degenerate,
    })
}

/// The same group from one Smith normal form of the whole truncated matrix.
/// Quadratic in the truncation; meant for cross-checking.
pub fn k0_blocks_direct(seq: &BlockSequence, truncation: usize) -> Result<AbelianGroupPresentation> {
    let blocks = (0..truncation)
        .map(|i| {
            seq.block(i)
                .map(block_matrix)
                .ok_or_else(|| Error::InvalidArgument(format!("only {i} blocks available")))
        })
        .collect::<Result<Vec<_>>>()?;
    let m = IntegerMatrix::block_diagonal(&blocks)?;
    Ok(cokernel(&m.transpose().one_minus()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockcode::{encode_blocks, DigitSource, SurfaceData};

    #[test]
    fn single_blocks() {
        let g = |bits: &[bool]| cokernel(&block_matrix(&Block::new(bits.to_vec())).transpose().one_minus().unwrap());
        assert!(g(&[true, true]).is_trivial());
        assert_eq!(g(&[true, true, true]).to_string(), "Z/2");
        assert_eq!(g(&[true, false, false]).to_string(), "Z");
        assert!(g(&[false, false]).is_trivial());
        for n in 2..=10 {
            let group = g(&vec![true; n]);
            assert_eq!(group.order(), Some(BigInt::from(n - 1)), "n = {n}");
        }
    }

    #[test]
    fn periodic_example_torsion() {
        let cf = "[0; (2)]".parse().unwrap();
        let seq = encode_blocks(DigitSource::Cf(&cf), SurfaceData::new(1, 1).unwrap(), 5).unwrap();
        // blocks (1,1,0), then (1,1,1), (1,1,1), (1,1,0), (1,1,0) repeating
        let k = k0_blocks(&seq, 5).unwrap();
        let f: Vec<i64> = k.factors.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(f, vec![1, 2, 2, 1, 1]);
        assert_eq!(k.group.to_string(), "Z/2 + Z/2");
        for t in 1..=4 {
            let k = k0_blocks(&seq, 1 + 4 * t).unwrap();
            assert_eq!(k.group.order(), Some(BigInt::from(1) << (2 * t)));
            assert_eq!(k.group, k0_blocks_direct(&seq, 1 + 4 * t).unwrap());
        }
        assert!(k0_blocks(&seq, 0).is_err());
    }
}
