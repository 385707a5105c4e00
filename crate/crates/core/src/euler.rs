//! Hom⁰/Hom¹ dimension counts, Euler characteristics and the minimal
//! dimension `d_min`, with the closed forms for the ADHM and polygon families.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::quiver::{DimensionVector, Quiver, QuiverSetup, Rational};
use crate::slope::{destabilizing_dimension_vectors_capped, DEFAULT_CANDIDATE_CAP, NormalizedAlpha};

/// Complex dimensions of `Hom⁰(π, π⊥)` and `Hom¹(π, π⊥)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomDims {
    pub hom0_complex: u64,
    pub hom1_complex: u64,
}

impl HomDims {
    pub fn hom0_real(&self) -> u64 {
        2 * self.hom0_complex
    }

    pub fn hom1_real(&self) -> u64 {
        2 * self.hom1_complex
    }

    /// `dim Hom⁰ - dim Hom¹`.
    pub fn euler(&self) -> i64 {
        self.hom0_complex as i64 - self.hom1_complex as i64
    }

    /// `dim_R Hom¹ - dim_R Hom⁰ = -2χ`.
    pub fn codimension_excess(&self) -> i64 {
        -2 * self.euler()
    }
}

fn check_sub(quiver: &Quiver, v: &DimensionVector, sub: &DimensionVector) -> Result<()> {
    if v.len() != quiver.vertex_count() || sub.len() != v.len() {
        return Err(Error::InvalidArgument(format!(
            "dimension vectors must have {} entries",
            quiver.vertex_count()
        )));
    }
    if let Some(j) = (0..v.len()).find(|&j| sub.get(j) > v.get(j)) {
        return Err(Error::SubExceedsAmbient(quiver.vertex_id(j).into()));
    }
    Ok(())
}

/// `hom0 = Σ_j v'_j (v_j - v'_j)`, `hom1 = Σ_a v'_{t(a)} (v_{h(a)} - v'_{h(a)})`.
pub fn hom_dims(quiver: &Quiver, v: &DimensionVector, sub: &DimensionVector) -> Result<HomDims> {
    check_sub(quiver, v, sub)?;
    Ok(hom_dims_unchecked(quiver, v, sub))
}

fn hom_dims_unchecked(quiver: &Quiver, v: &DimensionVector, sub: &DimensionVector) -> HomDims {
    let (v, s) = (v.as_slice(), sub.as_slice());
    let hom0_complex = (0..v.len()).map(|j| (s[j] * (v[j] - s[j])) as u64).sum();
    let hom1_complex = quiver
        .edges()
        .iter()
        .map(|e| (s[e.tail] * (v[e.head] - s[e.head])) as u64)
        .sum();
    HomDims {
        hom0_complex,
        hom1_complex,
    }
}

/// `χ(π, π⊥) = dim Hom⁰ - dim Hom¹`.
pub fn euler_characteristic(
    quiver: &Quiver,
    v: &DimensionVector,
    sub: &DimensionVector,
) -> Result<i64> {
    hom_dims(quiver, v, sub).map(|h| h.euler())
}

/// A minimal dimension, which is `+∞` over an empty destabilizing set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Dmin {
    Finite(i64),
    Infinite,
}

impl Dmin {
    pub fn finite(self) -> Option<i64> {
        match self {
            Dmin::Finite(d) => Some(d),
            Dmin::Infinite => None,
        }
    }

    /// Whether `n + 1 < d_min`.
    pub fn admits_degree(self, n: u32) -> bool {
        match self {
            Dmin::Finite(d) => (n as i64) + 1 < d,
            Dmin::Infinite => true,
        }
    }
}

impl fmt::Display for Dmin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dmin::Finite(d) => write!(f, "{d}"),
            Dmin::Infinite => f.write_str("inf"),
        }
    }
}

/// One destabilizing candidate and its value `-2χ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DminCandidate {
    pub sub: DimensionVector,
    pub slope: Rational,
    pub hom: HomDims,
}

impl DminCandidate {
    pub fn value(&self) -> i64 {
        self.hom.codimension_excess()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DminReport {
    pub d_min: Dmin,
    /// Lexicographically least minimizer.
    pub witness: Option<DimensionVector>,
    pub per_candidate: Vec<DminCandidate>,
    pub normalization: NormalizedAlpha,
}

impl DminReport {
    /// Every candidate attaining the minimum, in lexicographic order.
    pub fn minimizers(&self) -> impl Iterator<Item = &DimensionVector> {
        let best = self.d_min.finite();
        self.per_candidate
            .iter()
            .filter(move |c| Some(c.value()) == best)
            .map(|c| &c.sub)
    }
}

/// Minimum of `dim_R Hom¹ - dim_R Hom⁰` over the destabilizing
/// sub-dimension vectors.
pub fn d_min(setup: &QuiverSetup) -> Result<DminReport> {
    d_min_capped(setup, DEFAULT_CANDIDATE_CAP)
}

pub fn d_min_capped(setup: &QuiverSetup, cap: u128) -> Result<DminReport> {
    let destab = destabilizing_dimension_vectors_capped(setup, cap)?;
    let per_candidate: Vec<DminCandidate> = destab
        .items
        .into_iter()
        .map(|d| DminCandidate {
            hom: hom_dims_unchecked(setup.quiver(), setup.dims(), &d.sub),
            sub: d.sub,
            slope: d.report.slope,
        })
        .collect();
    // first minimum in lexicographic order
    let best = per_candidate
        .iter()
        .fold(None::<&DminCandidate>, |acc, c| match acc {
            Some(b) if b.value() <= c.value() => Some(b),
            _ => Some(c),
        });
    Ok(DminReport {
        d_min: best.map_or(Dmin::Infinite, |c| Dmin::Finite(c.value())),
        witness: best.map(|c| c.sub.clone()),
        per_candidate,
        normalization: destab.normalization,
    })
}

/// `2(k + n - 1)`, the exact `d_min` of the doubled ADHM quiver with zero
/// parameter (a lower bound analytically, attained by enumeration).
pub fn adhm_dmin_closed_form(k: usize, n: usize) -> Result<i64> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "ADHM closed form needs k, n >= 1, got k = {k}, n = {n}"
        )));
    }
    Ok(2 * (k as i64 + n as i64 - 1))
}

/// Largest `ℓ` such that every `ℓ`-element set of sides is strictly shorter
/// than its complement; 0 if even single sides fail.
///
/// Checking the `ℓ` longest sides suffices: if they are strictly short, so is
/// every other `ℓ`-subset, and subsets of short sets are short.
pub fn strictly_short_level(sides: &[Rational]) -> Result<usize> {
    if sides.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 sides, got {}",
            sides.len()
        )));
    }
    if let Some(s) = sides.iter().find(|s| !s.is_positive()) {
        return Err(Error::InvalidArgument(format!(
            "side lengths must be positive, got {s}"
        )));
    }
    let mut sorted: Vec<&Rational> = sides.iter().collect();
    sorted.sort_by(|a, b| b.cmp(a));
    let total: Rational = sides.iter().sum();
    let mut prefix = Rational::from_integer(0.into());
    let mut level = 0;
    for (i, s) in sorted.iter().enumerate() {
        prefix += *s;
        if &prefix + &prefix < total {
            level = i + 1;
        } else {
            break;
        }
    }
    Ok(level)
}

/// `d_min` of a polygon quiver as a function of its strictly-short level.
pub fn polygon_dmin_table(level: usize) -> i64 {
    match level {
        0 => 0,
        1 => 2,
        _ => 4,
    }
}
