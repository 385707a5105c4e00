use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::quiver::{CMatrix, Quiver, Representation};

/// Hermitian matrices `H_j`, one per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentValue(pub Vec<CMatrix>);

impl MomentValue {
    /// `Σ_j tr H_j`; zero up to roundoff since every term is a commutator.
    pub fn total_trace(&self) -> f64 {
        self.0.iter().map(|h| h.trace().re).sum()
    }

    /// Largest `‖H_j - H_j*‖_F`.
    pub fn hermitian_defect(&self) -> f64 {
        self.0
            .iter()
            .map(|h| (h - h.adjoint()).norm())
            .fold(0.0, f64::max)
    }
}

pub fn moment_map(quiver: &Quiver, rep: &Representation) -> MomentValue {
    let dims = rep.dims();
    let mut h: Vec<CMatrix> = (0..quiver.vertex_count())
        .map(|j| CMatrix::zeros(dims.get(j), dims.get(j)))
        .collect();
    for (e, a) in quiver.edges().iter().zip(rep.matrices()) {
        h[e.head] += a * a.adjoint();
        h[e.tail] -= a.adjoint() * a;
    }
    MomentValue(h)
}

/// `g_j = H_j - α_j I`.
fn moment_defect(quiver: &Quiver, rep: &Representation, alpha: &[f64]) -> Vec<CMatrix> {
    let MomentValue(mut h) = moment_map(quiver, rep);
    for (hj, &a) in h.iter_mut().zip(alpha) {
        for i in 0..hj.nrows() {
            hj[(i, i)].re -= a;
        }
    }
    h
}

fn check_alpha(quiver: &Quiver, alpha: &[f64]) -> Result<()> {
    if alpha.len() != quiver.vertex_count() {
        return Err(Error::InvalidArgument(alloc::format!(
            "{} weights for {} vertices",
            alpha.len(),
            quiver.vertex_count()
        )));
    }
    Ok(())
}

/// `f(A) = Σ_j ‖H_j - α_j I‖²_F`.
pub fn energy(quiver: &Quiver, rep: &Representation, alpha: &[f64]) -> Result<f64> {
    check_alpha(quiver, alpha)?;
    Ok(moment_defect(quiver, rep, alpha)
        .iter()
        .map(|g| g.norm_squared())
        .sum())
}

/// Gradient of [`energy`] for the inner product `Re tr(X* Y)`: the component
/// at edge `a` is `4 (g_h(a) A_a - A_a g_t(a))`.
pub fn energy_gradient(quiver: &Quiver, rep: &Representation, alpha: &[f64]) -> Result<Vec<CMatrix>> {
    check_alpha(quiver, alpha)?;
    let g = moment_defect(quiver, rep, alpha);
    Ok(quiver
        .edges()
        .iter()
        .zip(rep.matrices())
        .map(|(e, a)| (&g[e.head] * a - a * &g[e.tail]) * crate::quiver::C64::from(4.0))
        .collect())
}

/// `⟨∇f(A), direction⟩`.
pub fn directional_derivative(
    quiver: &Quiver,
    rep: &Representation,
    alpha: &[f64],
    direction: &[CMatrix],
) -> Result<f64> {
    Ok(super::inner(&energy_gradient(quiver, rep, alpha)?, direction))
}

/// `g · A = (g_h(a) A_a g_t(a)^{-1})_a` for unitary `g`.
pub fn gauge_transform(quiver: &Quiver, gauge: &[CMatrix], rep: &Representation) -> Representation {
    let matrices = quiver
        .edges()
        .iter()
        .zip(rep.matrices())
        .map(|(e, a)| &gauge[e.head] * a * gauge[e.tail].adjoint())
        .collect();
    rep.with_matrices(matrices)
}
