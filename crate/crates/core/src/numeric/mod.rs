//! Numerical certification of stability for explicit representations.
//!
//! Conventions: the moment map component at vertex `j` is `√-1 H_j` with
//! `H_j = Σ_{h(a)=j} A_a A_a* - Σ_{t(a)=j} A_a* A_a`, and a parameter `α`
//! corresponds to `H_j = α_j I`. Tangent vectors are one matrix per edge with
//! the real inner product `Re tr(X* Y)`.

mod endomorphism;
mod flow;
mod moment;
mod plant;
mod subrep;
mod verdict;

pub use endomorphism::{endomorphism_dimension, endomorphism_dimension_with, DEFAULT_NULLITY_THRESHOLD};
pub use flow::{flow, FlowOptions, FlowResult, FlowSample};
pub use moment::{
    directional_derivative, energy, energy_gradient, gauge_transform, moment_map, MomentValue,
};
pub use plant::{plant_instance, random_unitary, random_unitary_gauge};
pub use subrep::{
    find_subrepresentation, round_projections, search_subrepresentation, subrep_residual,
    ProjectionTuple, SearchOptions, SearchOutcome,
};
pub use verdict::{stability_verdict, Evidence, StabilityVerdict, Verdict, VerdictOptions};

use crate::quiver::CMatrix;

/// Real inner product `Σ Re tr(X_a* Y_a)` of two tangent vectors.
pub fn inner(x: &[CMatrix], y: &[CMatrix]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a.dotc(b).re).sum()
}

/// `Σ ‖X_a‖²_F`.
pub fn norm_squared(x: &[CMatrix]) -> f64 {
    x.iter().map(|m| m.norm_squared()).sum()
}
