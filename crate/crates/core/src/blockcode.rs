//! Binary block sequences built from continued-fraction or Jacobi-Perron digits.
//!
//! A surface `S_{g,n}` has `m = 6g - 7 + 2n` moduli and blocks of length
//! `L = 2g + n`. Each block is a column of `L` bits: the first `L - s` are fixed
//! ones and the last `s = floor(L / 2)` are free slots. Slot `j` of successive
//! blocks spells out the run-length code of digit coordinate `j`: `a1 - 1`
//! zeros, then `a2` ones, then `a3` zeros, and so on.
//!
//! For `m = 1` the first slot carries exactly the binary code of `?(x)`:
//!
//! ```
//! use qmark::blockcode::{encode_blocks, DigitSource, SurfaceData};
//!
//! let cf = "[0; (2)]".parse().unwrap();
//! let seq = encode_blocks(DigitSource::Cf(&cf), SurfaceData::new(1, 1).unwrap(), 5).unwrap();
//! let shown: Vec<String> = seq.blocks().iter().map(|b| b.to_string()).collect();
//! assert_eq!(shown, ["(1,1,0)", "(1,1,1)", "(1,1,1)", "(1,1,0)", "(1,1,0)"]);
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::contfrac::{ContinuedFraction, DigitStream, Tail};
use crate::error::{Error, Result};
use crate::jacobiperron::{JPExpansion, JpEnd};
use crate::minkowski::{expand_runs, question_mark_binary, run_length, Bits, MAX_RUN};
use crate::periodic;

/// A punctured surface of genus `g` with `n` cusps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceData {
    g: u32,
    n: u32,
}

impl SurfaceData {
    /// Fails unless `6g - 7 + 2n >= 1`.
    pub fn new(g: u32, n: u32) -> Result<Self> {
        if 6 * i64::from(g) + 2 * i64::from(n) - 7 < 1 {
            return Err(Error::UnsupportedSurface { g, n });
        }
        Ok(SurfaceData { g, n })
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn cusps(&self) -> u32 {
        self.n
    }

    /// `m = 6g - 7 + 2n`
    pub fn dimension(&self) -> usize {
        (6 * self.g + 2 * self.n - 7) as usize
    }

    /// `L = 2g + n`
    pub fn block_length(&self) -> usize {
        (2 * self.g + self.n) as usize
    }

    /// Number of free slots, `floor(L / 2)`.
    pub fn slots(&self) -> usize {
        self.block_length() / 2
    }
}

impl fmt::Display for SurfaceData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{{{},{}}}", self.g, self.n)
    }
}

/// `(L, s)`: block length and slot count.
pub fn block_length(surface: SurfaceData) -> (usize, usize) {
    (surface.block_length(), surface.slots())
}

/// One column of a block sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    entries: Vec<bool>,
}

impl Block {
    pub fn new(entries: Vec<bool>) -> Self {
        Block { entries }
    }

    pub fn entries(&self) -> &[bool] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|&&b| b).count()
    }

    /// Entrywise `self <= other`.
    pub fn is_dominated_by(&self, other: &Block) -> bool {
        self.len() == other.len() && self.entries.iter().zip(&other.entries).all(|(a, b)| !a || *b)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: Vec<&str> = self.entries.iter().map(|&b| if b { "1" } else { "0" }).collect();
        write!(f, "({})", bits.join(","))
    }
}

/// What is known about the blocks after the listed prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockTail {
    /// The sequence has exactly `length` blocks.
    Finite { length: usize },
    /// Blocks `preperiod..preperiod + period` repeat forever; the period is primitive.
    Periodic { preperiod: usize, period: usize },
    /// The digit source was declared aperiodic; `horizon` blocks were produced.
    Aperiodic { horizon: usize },
    /// Only a prefix of the digits is known.
    Unknown { horizon: usize },
}

/// A prefix of a block sequence together with its tail structure.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockSequence {
    surface: SurfaceData,
    blocks: Vec<Block>,
    tail: BlockTail,
    // preperiod followed by one period, for periodic tails
    cycle: Vec<Block>,
}

impl BlockSequence {
    pub fn surface(&self) -> SurfaceData {
        self.surface
    }

    /// The listed blocks.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn tail(&self) -> &BlockTail {
        &self.tail
    }

    /// Block `i`, also past the listed prefix when the tail is periodic.
    pub fn block(&self, i: usize) -> Option<&Block> {
        match self.tail {
            BlockTail::Periodic { preperiod, .. } => {
                let (pre, per) = self.cycle.split_at(preperiod);
                Some(periodic::nth(pre, per, i))
            }
            _ => self.blocks.get(i),
        }
    }

    /// Entrywise domination of every listed block.
    pub fn is_dominated_by(&self, other: &BlockSequence) -> bool {
        (0..self.blocks.len()).all(|i| match other.block(i) {
            Some(b) => self.blocks[i].is_dominated_by(b),
            None => false,
        })
    }
}

/// Digits to encode.
#[derive(Clone, Copy, Debug)]
pub enum DigitSource<'a> {
    Cf(&'a ContinuedFraction),
    Jp(&'a JPExpansion),
}

/// Bits of one slot: finite, periodic, or a known prefix only.
enum SlotBits {
    Finite(Vec<bool>),
    Periodic(Vec<bool>, Vec<bool>),
    Prefix(Vec<bool>),
}

impl SlotBits {
    fn get(&self, i: usize) -> bool {
        match self {
            SlotBits::Finite(b) | SlotBits::Prefix(b) => b.get(i).copied().unwrap_or(false),
            SlotBits::Periodic(pre, per) => *periodic::nth(pre, per, i),
        }
    }
}

fn assemble(surface: SurfaceData, slots: &[SlotBits], i: usize) -> Block {
    let (l, s) = block_length(surface);
    let mut entries = vec![true; l - s];
    entries.extend((0..s).map(|j| slots.get(j).is_some_and(|b| b.get(i))));
    Block::new(entries)
}

fn slot_from_cf(cf: &ContinuedFraction, count: usize) -> Result<(SlotBits, Option<bool>)> {
    // second value: Some(aperiodic?) for streams
    let code = question_mark_binary(cf)?;
    Ok(match code.bits() {
        Bits::Finite(b) => (SlotBits::Finite(b.clone()), None),
        Bits::Periodic { preperiod, period } => {
            (SlotBits::Periodic(preperiod.clone(), period.clone()), None)
        }
        Bits::Stream(s) => {
            let aperiodic = matches!(cf.tail(), Tail::Stream(d) if d.is_declared_aperiodic());
            (SlotBits::Prefix(s.prefix(count)), Some(aperiodic))
        }
    })
}

// Runs for coordinate j: first run shortened by one (never below zero).
fn coordinate_runs(digits: &[Vec<BigInt>], j: usize, first: bool) -> Result<Vec<usize>> {
    digits
        .iter()
        .enumerate()
        .map(|(i, d)| Ok(run_length(&d[j])?.saturating_sub(usize::from(first && i == 0))))
        .collect()
}

fn slots_from_jp(exp: &JPExpansion, s: usize) -> Result<Vec<SlotBits>> {
    let used = s.min(exp.dim());
    let mut slots = Vec::with_capacity(used);
    for j in 0..used {
        let slot = match exp.end() {
            JpEnd::Periodic { preperiod } => {
                let (pre, per) = exp.digits().split_at(*preperiod);
                // An empty preperiod still has the shortened first run.
                let pre_digits = if pre.is_empty() { per } else { pre };
                let mut pre_bits = Vec::new();
                let next = expand_runs(&coordinate_runs(pre_digits, j, true)?, false, &mut pre_bits);
                let per_runs = coordinate_runs(per, j, false)?;
                if per_runs.iter().all(|&r| r == 0) {
                    SlotBits::Periodic(pre_bits, vec![false])
                } else {
                    let mut per_bits = Vec::new();
                    let after = expand_runs(&per_runs, next, &mut per_bits);
                    if after != next {
                        expand_runs(&per_runs, after, &mut per_bits);
                    }
                    SlotBits::Periodic(pre_bits, per_bits)
                }
            }
            end => {
                let mut bits = Vec::new();
                expand_runs(&coordinate_runs(exp.digits(), j, true)?, false, &mut bits);
                if bits.len() > MAX_RUN {
                    return Err(Error::RunTooLong(bits.len().to_string()));
                }
                if *end == JpEnd::Terminated {
                    SlotBits::Finite(bits)
                } else {
                    SlotBits::Prefix(bits)
                }
            }
        };
        slots.push(slot);
    }
    Ok(slots)
}

/// The first `count` blocks for the given digits, with the tail classified
/// exactly from the digit source.
///
/// Finite sources give [`BlockTail::Finite`] and may list fewer than `count`
/// blocks. For `m >= 2` slot `j` follows digit coordinate `j` (first run
/// `max(a - 1, 0)`), finite slots are padded with zeros, and slots beyond `m`
/// stay 0. Periodicity of Jacobi-Perron sources comes from their declaration.
pub fn encode_blocks(source: DigitSource<'_>, surface: SurfaceData, count: usize) -> Result<BlockSequence> {
    let m = surface.dimension();
    let s = surface.slots();
    let cf_storage;
    let cf = match source {
        DigitSource::Cf(cf) => {
            if m != 1 {
                return Err(Error::DimensionMismatch { expected: m, found: 1 });
            }
            Some(cf)
        }
        DigitSource::Jp(exp) if exp.dim() != m => {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: exp.dim(),
            })
        }
        DigitSource::Jp(exp) if m == 1 => {
            cf_storage = jp_as_cf(exp)?;
            Some(&cf_storage)
        }
        DigitSource::Jp(_) => None,
    };

    // (slots, declared aperiodic?) ; None for the aperiodic flag means exact
    let (slots, stream) = match (cf, source) {
        (Some(cf), _) => {
            let (slot, stream) = slot_from_cf(cf, count)?;
            (vec![slot], stream)
        }
        (None, DigitSource::Jp(exp)) => {
            let stream = match exp.end() {
                JpEnd::Truncated => Some(false),
                JpEnd::Aperiodic => Some(true),
                _ => None,
            };
            (slots_from_jp(exp, s)?, stream)
        }
        (None, DigitSource::Cf(_)) => unreachable!("handled above"),
    };

    let (tail, available) = if let Some(aperiodic) = stream {
        let known = slots
            .iter()
            .map(|b| match b {
                SlotBits::Prefix(b) | SlotBits::Finite(b) => b.len(),
                SlotBits::Periodic(..) => usize::MAX,
            })
            .min()
            .unwrap_or(0);
        let n = known.min(count);
        let tail = if aperiodic {
            BlockTail::Aperiodic { horizon: n }
        } else {
            BlockTail::Unknown { horizon: n }
        };
        (tail, n)
    } else if slots.iter().all(|b| matches!(b, SlotBits::Finite(_))) {
        let length = slots
            .iter()
            .map(|b| match b {
                SlotBits::Finite(b) => b.len(),
                _ => 0,
            })
            .max()
            .unwrap_or(0);
        (BlockTail::Finite { length }, length.min(count))
    } else {
        let mut pre = 0;
        let mut per = 1;
        for b in &slots {
            if let SlotBits::Periodic(p, q) = b {
                pre = pre.max(p.len());
                per = per.lcm(&q.len());
            }
        }
        let mut period: Vec<Block> = (pre..pre + per).map(|i| assemble(surface, &slots, i)).collect();
        periodic::shrink_period(&mut period);
        let tail = BlockTail::Periodic {
            preperiod: pre,
            period: period.len(),
        };
        (tail, count)
    };

    let blocks: Vec<Block> = (0..available).map(|i| assemble(surface, &slots, i)).collect();
    let cycle = match tail {
        BlockTail::Periodic { preperiod, period } => {
            (0..preperiod + period).map(|i| assemble(surface, &slots, i)).collect()
        }
        _ => Vec::new(),
    };
    Ok(BlockSequence {
        surface,
        blocks,
        tail,
        cycle,
    })
}

fn jp_as_cf(exp: &JPExpansion) -> Result<ContinuedFraction> {
    let flat: Vec<BigInt> = exp.digits().iter().map(|d| d[0].clone()).collect();
    match exp.end() {
        JpEnd::Terminated => ContinuedFraction::finite(0, flat),
        JpEnd::Periodic { preperiod } => {
            let (pre, per) = flat.split_at(*preperiod);
            ContinuedFraction::periodic(0, pre.to_vec(), per.to_vec())
        }
        JpEnd::Truncated => Ok(ContinuedFraction::stream(0, DigitStream::new(flat.into_iter()))),
        JpEnd::Aperiodic => Ok(ContinuedFraction::stream(0, DigitStream::aperiodic(flat.into_iter()))),
    }
}

/// Outcome of [`detect_block_period`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockPeriod {
    Finite { length: usize },
    Periodic { preperiod: usize, period: usize },
    AperiodicAtHorizon { horizon: usize },
    /// Nothing certain; `candidate` is the shortest `(preperiod, period)`
    /// seen repeating at least three times within the horizon.
    Unknown {
        horizon: usize,
        candidate: Option<(usize, usize)>,
    },
}

/// Classifies the tail of a block sequence. Finite and periodic tails are
/// exact (they come from the digit source); otherwise the listed blocks up to
/// `horizon` are searched for a repeating pattern, which is only reported as
/// a candidate.
pub fn detect_block_period(seq: &BlockSequence, horizon: usize) -> BlockPeriod {
    match seq.tail() {
        BlockTail::Finite { length } => BlockPeriod::Finite { length: *length },
        BlockTail::Periodic { preperiod, period } => BlockPeriod::Periodic {
            preperiod: *preperiod,
            period: *period,
        },
        BlockTail::Aperiodic { .. } => BlockPeriod::AperiodicAtHorizon { horizon },
        BlockTail::Unknown { .. } => {
            let known = &seq.blocks()[..seq.blocks().len().min(horizon)];
            BlockPeriod::Unknown {
                horizon: known.len(),
                candidate: find_repetition(known),
            }
        }
    }
}

fn find_repetition(blocks: &[Block]) -> Option<(usize, usize)> {
    let n = blocks.len();
    for total in 1..=n {
        for period in 1..=total {
            let pre = total - period;
            if (n - pre) < 3 * period {
                continue;
            }
            if (pre + period..n).all(|i| blocks[i] == blocks[i - period]) {
                return Some((pre, period));
            }
        }
    }
    None
}

/// The first `length` letters of `L^(a1-1) R^(a2) L^(a3) ...`; the whole word
/// when the fraction is finite. With `L = 0` and `R = 1` this is the binary
/// code of `?(x)`.
pub fn lr_word(cf: &ContinuedFraction, length: usize) -> Result<String> {
    let code = question_mark_binary(cf)?;
    let bits = match code.bits() {
        Bits::Finite(b) => b.iter().take(length).copied().collect(),
        _ => code.prefix(length),
    };
    Ok(bits.into_iter().map(|b| if b { 'R' } else { 'L' }).collect())
}

/// `levels` all-ones blocks of length 3: the incidence data of the Farey
/// (`S_{1,1}`) Bratteli diagram. Every `S_{1,1}` block sequence is dominated
/// by it entrywise.
pub fn farey_incidence(levels: usize) -> BlockSequence {
    let one = Block::new(vec![true; 3]);
    BlockSequence {
        surface: SurfaceData::new(1, 1).expect("S_{1,1} is supported"),
        blocks: vec![one.clone(); levels],
        tail: BlockTail::Periodic {
            preperiod: 0,
            period: 1,
        },
        cycle: vec![one],
    }
}

/// Number of ones in each of the first `n` blocks; `None` if fewer are known.
pub fn block_weights(seq: &BlockSequence, n: usize) -> Option<Vec<usize>> {
    (0..n).map(|i| seq.block(i).map(Block::weight)).collect()
}

/// Bits of a block sequence's first slot, for comparison with `?(x)`.
pub fn first_slot_bits(seq: &BlockSequence) -> Vec<bool> {
    let l = seq.surface.block_length();
    let s = seq.surface.slots();
    seq.blocks.iter().map(|b| b.entries()[l - s]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contfrac::cf_expand_rational;
    use crate::exactnum::{int, ratio};

    fn s11() -> SurfaceData {
        SurfaceData::new(1, 1).unwrap()
    }

    fn shown(seq: &BlockSequence) -> Vec<String> {
        seq.blocks().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn surfaces() {
        assert_eq!(block_length(s11()), (3, 1));
        let s04 = SurfaceData::new(0, 4).unwrap();
        assert_eq!((block_length(s04), s04.dimension()), ((4, 2), 1));
        let s20 = SurfaceData::new(2, 0).unwrap();
        assert_eq!((block_length(s20), s20.dimension()), ((4, 2), 5));
        assert!(SurfaceData::new(0, 3).is_err());
        assert!(SurfaceData::new(1, 0).is_err());
    }

    #[test]
    fn periodic_example() {
        let cf = "[0; (2)]".parse().unwrap();
        let seq = encode_blocks(DigitSource::Cf(&cf), s11(), 5).unwrap();
        assert_eq!(shown(&seq), ["(1,1,0)", "(1,1,1)", "(1,1,1)", "(1,1,0)", "(1,1,0)"]);
        assert_eq!(
            detect_block_period(&seq, 64),
            BlockPeriod::Periodic { preperiod: 1, period: 4 }
        );
        assert_eq!(seq.block(101).unwrap().to_string(), "(1,1,1)");
    }

    #[test]
    fn finite_and_empty() {
        let cf = cf_expand_rational(&ratio(2, 5));
        let seq = encode_blocks(DigitSource::Cf(&cf), s11(), 10).unwrap();
        assert_eq!(shown(&seq), ["(1,1,0)", "(1,1,1)", "(1,1,1)"]);
        assert_eq!(detect_block_period(&seq, 64), BlockPeriod::Finite { length: 3 });

        let zero = ContinuedFraction::integer(0);
        let seq = encode_blocks(DigitSource::Cf(&zero), s11(), 10).unwrap();
        assert!(seq.blocks().is_empty());
        assert_eq!(seq.tail(), &BlockTail::Finite { length: 0 });
    }

    #[test]
    fn streams() {
        let e = ContinuedFraction::euler();
        let seq = encode_blocks(DigitSource::Cf(&e), s11(), 64).unwrap();
        assert_eq!(seq.blocks().len(), 64);
        assert_eq!(detect_block_period(&seq, 64), BlockPeriod::AperiodicAtHorizon { horizon: 64 });

        let ones = ContinuedFraction::stream(0, DigitStream::new(std::iter::repeat(int(2))));
        let seq = encode_blocks(DigitSource::Cf(&ones), s11(), 40).unwrap();
        assert_eq!(
            detect_block_period(&seq, 40),
            BlockPeriod::Unknown { horizon: 40, candidate: Some((0, 4)) }
        );
    }

    #[test]
    fn second_slot_of_s04_is_zero() {
        let cf = cf_expand_rational(&ratio(2, 5));
        let seq = encode_blocks(DigitSource::Cf(&cf), SurfaceData::new(0, 4).unwrap(), 10).unwrap();
        assert_eq!(shown(&seq), ["(1,1,0,0)", "(1,1,1,0)", "(1,1,1,0)"]);
    }

    #[test]
    fn jacobi_perron_slots() {
        // m = 3 on S_{1,2}: L = 4, two slots fed by coordinates 0 and 1.
        let surface = SurfaceData::new(1, 2).unwrap();
        let digits = vec![
            vec![int(2), int(0), int(1)],
            vec![int(1), int(3), int(2)],
        ];
        let exp = JPExpansion::from_digits(3, digits.clone(), JpEnd::Terminated).unwrap();
        let seq = encode_blocks(DigitSource::Jp(&exp), surface, 10).unwrap();
        // slot 0: runs 1, 1 -> 0 1 ; slot 1: runs 0, 3 -> 1 1 1
        assert_eq!(shown(&seq), ["(1,1,0,1)", "(1,1,1,1)", "(1,1,0,1)"]);
        assert_eq!(seq.tail(), &BlockTail::Finite { length: 3 });

        let per = JPExpansion::periodic(3, vec![], digits).unwrap();
        let seq = encode_blocks(DigitSource::Jp(&per), surface, 12).unwrap();
        assert!(matches!(seq.tail(), BlockTail::Periodic { .. }));
        let trunc = JPExpansion::from_digits(3, vec![vec![int(2), int(2), int(1)]], JpEnd::Truncated).unwrap();
        let seq = encode_blocks(DigitSource::Jp(&trunc), surface, 12).unwrap();
        assert_eq!(seq.tail(), &BlockTail::Unknown { horizon: 1 });

        let wrong = JPExpansion::from_digits(2, vec![], JpEnd::Terminated).unwrap();
        assert!(encode_blocks(DigitSource::Jp(&wrong), surface, 3).is_err());
    }

    #[test]
    fn one_dimensional_jp_matches_cf() {
        let exp = crate::jacobiperron::jp_expand(&["5/13".parse().unwrap()], 20).unwrap();
        let a = encode_blocks(DigitSource::Jp(&exp), s11(), 20).unwrap();
        let cf = cf_expand_rational(&ratio(5, 13));
        let b = encode_blocks(DigitSource::Cf(&cf), s11(), 20).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn words() {
        let w = |s: &str, n| lr_word(&s.parse().unwrap(), n).unwrap();
        assert_eq!(w("[0; 2, 2]", 10), "LRR");
        assert_eq!(w("[0; 1, 1]", 10), "R");
        assert_eq!(w("[0; (2)]", 9), "LRRLLRRLL");
    }

    #[test]
    fn farey_domination() {
        let f = farey_incidence(2);
        assert_eq!(shown(&f), ["(1,1,1)", "(1,1,1)"]);
        assert!(farey_incidence(0).blocks().is_empty());
        let cf = cf_expand_rational(&ratio(3, 11));
        let seq = encode_blocks(DigitSource::Cf(&cf), s11(), 50).unwrap();
        assert!(seq.is_dominated_by(&farey_incidence(1)));
    }
}
