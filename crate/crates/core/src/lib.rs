//! Stability data for quiver representations.
//!
//! The exact layer ([`slope`], [`euler`], [`homotopy`]) works with rational
//! stability parameters and enumerates sub-dimension vectors to compute the
//! minimal dimension `d_min` and the homotopy groups it controls. The
//! [`numeric`] layer certifies stability of explicit complex representations
//! through the moment map, its gradient flow and a Grassmannian search for
//! subrepresentations.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod abelian;
pub mod enumerate;
pub mod error;
pub mod euler;
pub mod families;
pub mod homotopy;
pub mod numeric;
pub mod quiver;
pub mod slope;

pub use abelian::FgAbelianGroup;
pub use enumerate::{sub_dimension_vectors, SubDimensionVectors};
pub use error::{Error, Result};
pub use euler::{
    adhm_dmin_closed_form, d_min, euler_characteristic, hom_dims, polygon_dmin_table,
    strictly_short_level, Dmin, DminReport, HomDims,
};
pub use families::{gen_adhm, gen_polygon, group_profile, GroupProfile};
pub use homotopy::{
    gauge_group_homotopy, homotopy_report, moduli_dimension, pg_homotopy, unitary_homotopy,
    HomotopyEntry, HomotopyReport,
};
pub use quiver::{
    rat, ratio, validate_setup, CMatrix, DimensionVector, Edge, Quiver, QuiverSetup, Rational,
    Representation, SetupDraft, StabilityParameter, ValidationReport, Violation, C64,
};
pub use slope::{
    degree_alpha, destabilizing_dimension_vectors, normalize_alpha, rank, slope_alpha,
    SlopeReport,
};
