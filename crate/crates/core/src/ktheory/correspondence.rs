use num_rational::BigRational;

use super::blocks::k0_blocks;
use super::group::AbelianGroupPresentation;
use crate::blockcode::{detect_block_period, encode_blocks, BlockPeriod, DigitSource, SurfaceData};
use crate::contfrac::{ContinuedFraction, Tail};
use crate::error::{Error, Result};
use crate::minkowski::{classify_cf, DomainClass, ImageClass};

/// Shape of the continued fraction behind a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CfKind {
    Finite { length: usize },
    Periodic { preperiod: usize, period: usize },
    Stream { declared_aperiodic: bool },
}

/// How `x`, its blocks, their truncated `K0` and `?(x)` line up.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrespondenceReport {
    pub cf: ContinuedFraction,
    pub cf_kind: CfKind,
    pub blocks: BlockPeriod,
    /// `(truncation, K0)` pairs.
    pub k0: Vec<(usize, AbelianGroupPresentation)>,
    pub domain: DomainClass,
    pub image: ImageClass,
    pub value: Option<BigRational>,
    /// Named expectations and whether they held.
    pub checks: Vec<(&'static str, bool)>,
}

impl CorrespondenceReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Ties together the continued fraction of `x`, the block sequence on a
/// surface with `m = 1`, truncated `K0` groups and the class of `?(x)`:
///
/// * finite fraction -> finite blocks -> dyadic `?(x)`;
/// * periodic fraction -> periodic blocks with torsion `K0` whose order grows
///   with each period -> non-dyadic rational `?(x)`;
/// * stream declared aperiodic -> aperiodic blocks -> irrational `?(x)`.
///
/// In the aperiodic case every truncated `K0` is still a finite group, so
/// the check there is keyed to the declaration, not to `K0`.
pub fn classification_correspondence(
    cf: &ContinuedFraction,
    surface: SurfaceData,
    horizon: usize,
) -> Result<CorrespondenceReport> {
    if surface.dimension() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: surface.dimension(),
        });
    }
    let cf_kind = match cf.tail() {
        Tail::Finite(d) => CfKind::Finite { length: d.len() },
        Tail::Periodic { preperiod, period } => CfKind::Periodic {
            preperiod: preperiod.len(),
            period: period.len(),
        },
        Tail::Stream(s) => CfKind::Stream {
            declared_aperiodic: s.is_declared_aperiodic(),
        },
    };
    let class = classify_cf(cf, horizon)?;
    let seq = encode_blocks(DigitSource::Cf(cf), surface, horizon)?;
    let blocks = detect_block_period(&seq, horizon);

    let truncations: Vec<usize> = match &blocks {
        BlockPeriod::Finite { length } => vec![*length],
        BlockPeriod::Periodic { preperiod, period } => {
            vec![preperiod + period, preperiod + 2 * period]
        }
        _ => vec![seq.blocks().len()],
    };
    let k0 = truncations
        .into_iter()
        .filter(|&t| t > 0)
        .map(|t| Ok((t, k0_blocks(&seq, t)?.group)))
        .collect::<Result<Vec<_>>>()?;
    let torsion = k0.iter().all(|(_, g)| g.is_torsion());

    let mut checks = Vec::new();
    match cf_kind {
        CfKind::Finite { .. } => {
            checks.push(("finite blocks", matches!(blocks, BlockPeriod::Finite { .. })));
            checks.push(("dyadic image", class.image == ImageClass::DyadicRational));
            checks.push(("torsion K0", torsion));
        }
        CfKind::Periodic { .. } => {
            checks.push(("periodic blocks", matches!(blocks, BlockPeriod::Periodic { .. })));
            checks.push(("non-dyadic rational image", class.image == ImageClass::NonDyadicRational));
            checks.push(("torsion K0", torsion));
            let grows = match k0.as_slice() {
                [(_, a), (_, b)] => a.order() < b.order(),
                _ => false,
            };
            checks.push(("K0 order grows each period", grows));
        }
        CfKind::Stream { declared_aperiodic } => {
            checks.push(("declared aperiodic", declared_aperiodic));
            checks.push(("aperiodic blocks", matches!(blocks, BlockPeriod::AperiodicAtHorizon { .. })));
            checks.push(("irrational image", class.image == ImageClass::Irrational));
        }
    }

    Ok(CorrespondenceReport {
        cf: cf.clone(),
        cf_kind,
        blocks,
        k0,
        domain: class.domain,
        image: class.image,
        value: class.value,
        checks,
    })
}
