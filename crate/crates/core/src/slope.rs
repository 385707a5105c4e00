//! Rank, degree and slope arithmetic and the destabilizing sub-dimension
//! vectors of King's slope criterion. Everything here is exact.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::enumerate::{sub_dimension_count, sub_dimension_vectors};
use crate::error::{Error, Result};
use crate::quiver::{rat, DimensionVector, QuiverSetup, Rational, StabilityParameter};

/// Default limit on the number of candidates enumerated.
pub const DEFAULT_CANDIDATE_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeReport {
    pub rank: usize,
    pub degree: Rational,
    pub slope: Rational,
}

pub fn rank(v: &DimensionVector) -> usize {
    v.total()
}

/// `Σ -α_j v_j`.
pub fn degree_alpha(v: &DimensionVector, alpha: &StabilityParameter) -> Rational {
    -alpha.pairing(v)
}

pub fn slope_alpha(v: &DimensionVector, alpha: &StabilityParameter) -> Result<Rational> {
    Ok(slope_report(v, alpha)?.slope)
}

pub fn slope_report(v: &DimensionVector, alpha: &StabilityParameter) -> Result<SlopeReport> {
    let r = rank(v);
    if r == 0 {
        return Err(Error::ZeroRank);
    }
    let degree = degree_alpha(v, alpha);
    let slope = &degree / rat(r as i64);
    Ok(SlopeReport {
        rank: r,
        degree,
        slope,
    })
}

/// A trace-free parameter together with the uniform shift that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedAlpha {
    pub alpha: StabilityParameter,
    /// `c` with `α'_j = α_j + c`.
    pub shift: Rational,
}

/// Shifts `α` uniformly so that `Σ α'_j v_j = 0`. Slope comparisons are
/// unchanged by the shift.
pub fn normalize_alpha(setup: &QuiverSetup) -> Result<NormalizedAlpha> {
    let r = rank(setup.dims());
    if r == 0 {
        return Err(Error::ZeroRank);
    }
    let trace = setup.alpha().pairing(setup.dims());
    if trace.is_zero() {
        return Ok(NormalizedAlpha {
            alpha: setup.alpha().clone(),
            shift: Rational::zero(),
        });
    }
    let shift = -trace / rat(r as i64);
    Ok(NormalizedAlpha {
        alpha: setup.alpha().shifted(&shift),
        shift,
    })
}

/// A sub-dimension vector whose slope is at least the ambient slope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Destabilizer {
    pub sub: DimensionVector,
    /// Slope data under the normalized parameter.
    pub report: SlopeReport,
}

impl Destabilizer {
    /// Slope strictly above the ambient slope (which is zero after normalization).
    pub fn is_strict(&self) -> bool {
        self.report.slope.is_positive()
    }
}

/// Destabilizing sub-dimension vectors in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Destabilizers {
    pub normalization: NormalizedAlpha,
    pub candidates_examined: u128,
    pub items: Vec<Destabilizer>,
}

impl Destabilizers {
    pub fn strict(&self) -> impl Iterator<Item = &Destabilizer> {
        self.items.iter().filter(|d| d.is_strict())
    }
}

pub fn destabilizing_dimension_vectors(setup: &QuiverSetup) -> Result<Destabilizers> {
    destabilizing_dimension_vectors_capped(setup, DEFAULT_CANDIDATE_CAP)
}

/// As [`destabilizing_dimension_vectors`] with an explicit candidate cap.
pub fn destabilizing_dimension_vectors_capped(
    setup: &QuiverSetup,
    cap: u128,
) -> Result<Destabilizers> {
    let normalization = normalize_alpha(setup)?;
    let candidates = sub_dimension_count(setup.dims());
    if candidates > cap {
        return Err(Error::TooManyCandidates { candidates, cap });
    }
    let alpha = &normalization.alpha;
    let items = sub_dimension_vectors(setup.dims())
        .filter_map(|sub| {
            let degree = degree_alpha(&sub, alpha);
            if degree.is_negative() {
                return None;
            }
            let r = rank(&sub);
            let slope = &degree / rat(r as i64);
            Some(Destabilizer {
                sub,
                report: SlopeReport {
                    rank: r,
                    degree,
                    slope,
                },
            })
        })
        .collect();
    Ok(Destabilizers {
        normalization,
        candidates_examined: candidates,
        items,
    })
}
