//! Quivers, dimension vectors, stability parameters and representations.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number used for stability parameters, degrees and slopes.
pub type Rational = num_rational::BigRational;
/// Complex scalar of the numerical layer.
pub type C64 = Complex<f64>;
/// Dense complex matrix.
pub type CMatrix = DMatrix<C64>;

/// Builds an exact rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the exact rational `num / den`.
///
/// # Panics
/// If `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// An arrow of a quiver, stored by vertex index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// A finite directed multigraph. Loops and parallel edges are allowed; edges
/// are identified by their position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl Quiver {
    /// Builds a quiver from vertex ids and `(tail, head)` id pairs.
    pub fn new<S: AsRef<str>>(vertices: Vec<String>, edges: &[(S, S)]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidSetup(format!("duplicate vertex id `{v}`")));
            }
        }
        let lookup = |id: &str| {
            vertices
                .iter()
                .position(|v| v == id)
                .ok_or_else(|| Error::InvalidSetup(format!("unknown vertex `{id}`")))
        };
        let edges = edges
            .iter()
            .map(|(t, h)| {
                Ok(Edge {
                    tail: lookup(t.as_ref())?,
                    head: lookup(h.as_ref())?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Quiver { vertices, edges })
    }

    /// Builds a quiver from vertex ids and index pairs.
    pub fn from_indices(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let n = vertices.len();
        if let Some(e) = edges.iter().find(|e| e.tail >= n || e.head >= n) {
            return Err(Error::InvalidSetup(format!(
                "edge {}->{} refers to a vertex index out of range",
                e.tail, e.head
            )));
        }
        let ids: Vec<(String, String)> = Vec::new();
        let mut q = Quiver::new(vertices, &ids)?;
        q.edges = edges;
        Ok(q)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn vertex_id(&self, index: usize) -> &str {
        &self.vertices[index]
    }
}

/// Nonnegative dimension per vertex, in the quiver's vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimensionVector(Vec<usize>);

impl DimensionVector {
    pub fn new(dims: Vec<usize>) -> Self {
        DimensionVector(dims)
    }

    pub fn zero(len: usize) -> Self {
        DimensionVector(alloc::vec![0; len])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, vertex: usize) -> usize {
        self.0[vertex]
    }

    /// Total rank `Σ v_j`.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    /// Componentwise `self ≤ other`.
    pub fn fits_in(&self, other: &DimensionVector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other - self`, assuming `self ≤ other`.
    pub fn complement_in(&self, other: &DimensionVector) -> DimensionVector {
        DimensionVector(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }
}

impl From<Vec<usize>> for DimensionVector {
    fn from(v: Vec<usize>) -> Self {
        DimensionVector(v)
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// Exact rational weight `α_j` per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StabilityParameter(Vec<Rational>);

impl StabilityParameter {
    pub fn new(alphas: Vec<Rational>) -> Self {
        StabilityParameter(alphas)
    }

    pub fn zero(len: usize) -> Self {
        StabilityParameter(alloc::vec![Rational::zero(); len])
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, vertex: usize) -> &Rational {
        &self.0[vertex]
    }

    /// `Σ α_j v_j`.
    pub fn pairing(&self, dims: &DimensionVector) -> Rational {
        self.0
            .iter()
            .zip(dims.as_slice())
            .map(|(a, &d)| a * rat(d as i64))
            .sum()
    }

    /// Adds `c` to every component.
    pub fn shifted(&self, c: &Rational) -> Self {
        StabilityParameter(self.0.iter().map(|a| a + c).collect())
    }

    /// Multiplies every component by `lambda`.
    pub fn scaled(&self, lambda: &Rational) -> Self {
        StabilityParameter(self.0.iter().map(|a| a * lambda).collect())
    }

    /// Components as floating point, for the numerical layer.
    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rational_to_f64).collect()
    }
}

/// Nearest `f64` to an exact rational.
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(if r.is_negative() { f64::MIN } else { f64::MAX })
}

/// Unvalidated setup as read from a file or assembled by hand.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SetupDraft {
    pub vertices: Vec<String>,
    pub dims: Vec<i64>,
    pub alphas: Vec<Rational>,
    pub edges: Vec<(String, String)>,
}

/// A problem found by [`validate_setup`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateVertex(String),
    DimsLengthMismatch { expected: usize, found: usize },
    AlphaLengthMismatch { expected: usize, found: usize },
    NegativeDimension { vertex: String, dim: i64 },
    UnknownVertex { edge: usize, vertex: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertex(v) => write!(f, "duplicate vertex id `{v}`"),
            Violation::DimsLengthMismatch { expected, found } => {
                write!(f, "expected {expected} dimensions, found {found}")
            }
            Violation::AlphaLengthMismatch { expected, found } => {
                write!(f, "expected {expected} stability weights, found {found}")
            }
            Violation::NegativeDimension { vertex, dim } => {
                write!(f, "negative dimension {dim} at vertex `{vertex}`")
            }
            Violation::UnknownVertex { edge, vertex } => {
                write!(f, "edge {edge} refers to unknown vertex `{vertex}`")
            }
        }
    }
}

/// Outcome of [`validate_setup`]. A nonzero `trace_sum` is a warning only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// `Σ α_j v_j` over the vertices that could be read; `None` when the
    /// dimension or weight lists are malformed.
    pub trace_sum: Option<Rational>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn is_trace_free(&self) -> bool {
        self.trace_sum.as_ref().is_some_and(Zero::is_zero)
    }

    pub fn warnings(&self) -> Vec<String> {
        match &self.trace_sum {
            Some(s) if !s.is_zero() => {
                alloc::vec![format!("sum of alpha_j * v_j is {s}, not zero (normalizable)")]
            }
            _ => Vec::new(),
        }
    }
}

/// Checks a draft for schema errors and reports the trace `Σ α_j v_j`.
pub fn validate_setup(draft: &SetupDraft) -> ValidationReport {
    let mut violations = Vec::new();
    let mut seen = BTreeSet::new();
    for v in &draft.vertices {
        if !seen.insert(v.as_str()) {
            violations.push(Violation::DuplicateVertex(v.clone()));
        }
    }
    let n = draft.vertices.len();
    if draft.dims.len() != n {
        violations.push(Violation::DimsLengthMismatch {
            expected: n,
            found: draft.dims.len(),
        });
    }
    if draft.alphas.len() != n {
        violations.push(Violation::AlphaLengthMismatch {
            expected: n,
            found: draft.alphas.len(),
        });
    }
    for (v, &d) in draft.vertices.iter().zip(&draft.dims) {
        if d < 0 {
            violations.push(Violation::NegativeDimension {
                vertex: v.clone(),
                dim: d,
            });
        }
    }
    for (i, (t, h)) in draft.edges.iter().enumerate() {
        for end in [t, h] {
            if !seen.contains(end.as_str()) {
                violations.push(Violation::UnknownVertex {
                    edge: i,
                    vertex: end.clone(),
                });
            }
        }
    }
    let trace_sum = (draft.dims.len() == n && draft.alphas.len() == n).then(|| {
        draft
            .alphas
            .iter()
            .zip(&draft.dims)
            .map(|(a, &d)| a * rat(d))
            .sum()
    });
    ValidationReport {
        violations,
        trace_sum,
    }
}

/// The triple (quiver, dimension vector, stability parameter).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuiverSetup {
    quiver: Quiver,
    dims: DimensionVector,
    alpha: StabilityParameter,
}

impl QuiverSetup {
    pub fn new(quiver: Quiver, dims: DimensionVector, alpha: StabilityParameter) -> Result<Self> {
        let n = quiver.vertex_count();
        if dims.len() != n || alpha.len() != n {
            return Err(Error::InvalidSetup(format!(
                "quiver has {n} vertices but {} dimensions and {} weights were given",
                dims.len(),
                alpha.len()
            )));
        }
        Ok(QuiverSetup { quiver, dims, alpha })
    }

    /// Validates a draft and builds the setup; the trace warning is not an error.
    pub fn from_draft(draft: &SetupDraft) -> Result<Self> {
        let report = validate_setup(draft);
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidSetup(v.to_string()));
        }
        let quiver = Quiver::new(draft.vertices.clone(), &draft.edges)?;
        let dims = DimensionVector::new(draft.dims.iter().map(|&d| d as usize).collect());
        QuiverSetup::new(quiver, dims, StabilityParameter::new(draft.alphas.clone()))
    }

    pub fn to_draft(&self) -> SetupDraft {
        SetupDraft {
            vertices: self.quiver.vertices.clone(),
            dims: self.dims.as_slice().iter().map(|&d| d as i64).collect(),
            alphas: self.alpha.as_slice().to_vec(),
            edges: self
                .quiver
                .edges
                .iter()
                .map(|e| {
                    (
                        self.quiver.vertices[e.tail].clone(),
                        self.quiver.vertices[e.head].clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        validate_setup(&self.to_draft())
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &DimensionVector {
        &self.dims
    }

    pub fn alpha(&self) -> &StabilityParameter {
        &self.alpha
    }

    /// Same quiver and dimensions with a different parameter.
    pub fn with_alpha(&self, alpha: StabilityParameter) -> Result<Self> {
        QuiverSetup::new(self.quiver.clone(), self.dims.clone(), alpha)
    }

    /// Reads a sub-dimension vector given as `(vertex id, dim)` pairs;
    /// omitted vertices default to zero.
    pub fn sub_vector<S: AsRef<str>>(&self, pairs: &[(S, usize)]) -> Result<DimensionVector> {
        let mut out = alloc::vec![0; self.quiver.vertex_count()];
        for (id, d) in pairs {
            let id = id.as_ref();
            let j = self
                .quiver
                .vertex_index(id)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown vertex `{id}`")))?;
            if *d > self.dims.get(j) {
                return Err(Error::SubExceedsAmbient(id.to_string()));
            }
            out[j] = *d;
        }
        Ok(DimensionVector::new(out))
    }
}

/// One complex matrix per edge, of shape `v_head × v_tail`.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    dims: DimensionVector,
    matrices: Vec<CMatrix>,
}

impl Representation {
    pub fn new(quiver: &Quiver, dims: DimensionVector, matrices: Vec<CMatrix>) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::ShapeMismatch(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        if matrices.len() != quiver.edges().len() {
            return Err(Error::ShapeMismatch(format!(
                "{} matrices for {} edges",
                matrices.len(),
                quiver.edges().len()
            )));
        }
        for (i, (m, e)) in matrices.iter().zip(quiver.edges()).enumerate() {
            let want = (dims.get(e.head), dims.get(e.tail));
            if m.shape() != want {
                return Err(Error::ShapeMismatch(format!(
                    "edge {i} has shape {}x{}, expected {}x{}",
                    m.nrows(),
                    m.ncols(),
                    want.0,
                    want.1
                )));
            }
            if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::ShapeMismatch(format!("edge {i} has non-finite entries")));
            }
        }
        Ok(Representation { dims, matrices })
    }

    /// The zero representation.
    pub fn zero(quiver: &Quiver, dims: &DimensionVector) -> Self {
        let matrices = quiver
            .edges()
            .iter()
            .map(|e| CMatrix::zeros(dims.get(e.head), dims.get(e.tail)))
            .collect();
        Representation {
            dims: dims.clone(),
            matrices,
        }
    }

    pub fn dims(&self) -> &DimensionVector {
        &self.dims
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, edge: usize) -> &CMatrix {
        &self.matrices[edge]
    }

    /// Replaces the matrices, keeping shapes. Used by the flow integrator.
    pub(crate) fn with_matrices(&self, matrices: Vec<CMatrix>) -> Self {
        debug_assert!(matrices
            .iter()
            .zip(&self.matrices)
            .all(|(a, b)| a.shape() == b.shape()));
        Representation {
            dims: self.dims.clone(),
            matrices,
        }
    }

    /// `‖A‖²_F` summed over edges.
    pub fn norm_squared(&self) -> f64 {
        self.matrices.iter().map(|m| m.norm_squared()).sum()
    }
}
