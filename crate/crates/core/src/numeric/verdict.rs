use alloc::vec::Vec;

use super::flow::{flow, FlowOptions};
use super::subrep::{search_subrepresentation, ProjectionTuple, SearchOptions};
use crate::error::{Error, Result};
use crate::quiver::{DimensionVector, QuiverSetup, Rational, Representation};
use crate::slope::{destabilizing_dimension_vectors_capped, Destabilizer, DEFAULT_CANDIDATE_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Stable,
    StrictlySemistable,
    Unstable,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Stable => "Stable",
            Verdict::StrictlySemistable => "StrictlySemistable",
            Verdict::Unstable => "Unstable",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

/// A certified subrepresentation violating (or saturating) the slope bound.
#[derive(Debug, Clone, PartialEq)]
pub struct Evidence {
    pub sub: DimensionVector,
    pub slope: Rational,
    pub projections: ProjectionTuple,
    pub residual: f64,
}

/// Outcome of the search for one destabilizing dimension vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSearch {
    pub sub: DimensionVector,
    pub strict: bool,
    pub found: bool,
    pub exhausted: bool,
    pub best_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityVerdict {
    pub verdict: Verdict,
    pub evidence: Option<Evidence>,
    pub flow_energy: f64,
    pub flow_converged: bool,
    pub searches: Vec<CandidateSearch>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerdictOptions {
    pub search: SearchOptions,
    pub flow: FlowOptions,
    pub candidate_cap: u128,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        VerdictOptions {
            search: SearchOptions::default(),
            flow: FlowOptions::default(),
            candidate_cap: DEFAULT_CANDIDATE_CAP,
        }
    }
}

fn candidate_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Searches every destabilizing dimension vector for a realizing
/// subrepresentation: strictly destabilizing ones first (a hit means
/// Unstable), then those of slope zero (StrictlySemistable). With no hit the
/// verdict is Stable if every search ran to a stationary point and
/// Inconclusive otherwise. The flow energy is reported alongside.
pub fn stability_verdict(
    setup: &QuiverSetup,
    rep: &Representation,
    opts: &VerdictOptions,
) -> Result<StabilityVerdict> {
    if rep.dims() != setup.dims() {
        return Err(Error::ShapeMismatch(alloc::format!(
            "representation has dimensions {} but the setup has {}",
            rep.dims(),
            setup.dims()
        )));
    }
    let destab = destabilizing_dimension_vectors_capped(setup, opts.candidate_cap)?;
    let flowed = flow(setup.quiver(), rep, &destab.normalization.alpha, &opts.flow)?;

    let indexed: Vec<(usize, &Destabilizer)> = destab.items.iter().enumerate().collect();
    let ordered = indexed
        .iter()
        .filter(|(_, d)| d.is_strict())
        .chain(indexed.iter().filter(|(_, d)| !d.is_strict()));

    let mut searches = Vec::new();
    let mut evidence = None;
    for &(index, d) in ordered {
        let search_opts = SearchOptions {
            seed: candidate_seed(opts.search.seed, index),
            ..opts.search
        };
        let out = search_subrepresentation(setup.quiver(), rep, &d.sub, &search_opts)?;
        searches.push(CandidateSearch {
            sub: d.sub.clone(),
            strict: d.is_strict(),
            found: out.found.is_some(),
            exhausted: out.exhausted,
            best_residual: out.best_residual,
        });
        if let Some((projections, residual)) = out.found {
            evidence = Some(Evidence {
                sub: d.sub.clone(),
                slope: d.report.slope.clone(),
                projections,
                residual,
            });
            break;
        }
    }

    let verdict = match &evidence {
        Some(_) if searches.last().is_some_and(|s| s.strict) => Verdict::Unstable,
        Some(_) => Verdict::StrictlySemistable,
        None if searches.iter().all(|s| s.exhausted) => Verdict::Stable,
        None => Verdict::Inconclusive,
    };
    Ok(StabilityVerdict {
        verdict,
        evidence,
        flow_energy: flowed.final_energy(),
        flow_converged: flowed.converged,
        searches,
    })
}
