//! Search for subrepresentations over a product of Grassmannians.
//!
//! A tuple of orthonormal frames `U_j` (`v_j × v'_j`) spans candidate
//! subspaces `V'_j`; the residual `Σ_a ‖(I - P_h(a)) A_a P_t(a)‖²` vanishes
//! exactly when every `A_a` maps `V'_t(a)` into `V'_h(a)`. Riemannian
//! gradient descent with Armijo backtracking and QR retraction minimizes it
//! from several seeded random starts.

use alloc::vec::Vec;

use nalgebra::linalg::SymmetricEigen;
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::plant::gaussian_matrix;
use crate::error::{Error, Result};
use crate::quiver::{CMatrix, DimensionVector, Quiver, Representation, C64};

/// Orthogonal projections `P_j`, one per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionTuple(pub Vec<CMatrix>);

impl ProjectionTuple {
    fn from_frames(frames: &[CMatrix]) -> Self {
        ProjectionTuple(frames.iter().map(|u| u * u.adjoint()).collect())
    }

    /// `max_j ‖P_j² - P_j‖ + ‖P_j - P_j*‖`.
    pub fn projection_defect(&self) -> f64 {
        self.0
            .iter()
            .map(|p| (p * p - p).norm() + (p - p.adjoint()).norm())
            .fold(0.0, f64::max)
    }

    pub fn ranks(&self) -> Vec<f64> {
        self.0.iter().map(|p| p.trace().re).collect()
    }
}

/// `Σ_a ‖(I - P_h(a)) A_a P_t(a)‖²_F`.
pub fn subrep_residual(quiver: &Quiver, rep: &Representation, proj: &ProjectionTuple) -> f64 {
    quiver
        .edges()
        .iter()
        .zip(rep.matrices())
        .map(|(e, a)| {
            let ap = a * &proj.0[e.tail];
            let leak = &ap - &proj.0[e.head] * &ap;
            leak.norm_squared()
        })
        .sum()
}

/// Keeps the top `sub_j` eigenvectors of each `P_j`, giving exactly
/// idempotent projections.
pub fn round_projections(proj: &ProjectionTuple, sub: &DimensionVector) -> ProjectionTuple {
    ProjectionTuple(
        proj.0
            .iter()
            .zip(sub.as_slice())
            .map(|(p, &k)| {
                let n = p.nrows();
                if k == 0 {
                    return CMatrix::zeros(n, n);
                }
                if k == n {
                    return CMatrix::identity(n, n);
                }
                let herm = (p + p.adjoint()) * C64::from(0.5);
                let eig = SymmetricEigen::new(herm);
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
                let frame = CMatrix::from_fn(n, k, |i, c| eig.eigenvectors[(i, order[c])]);
                &frame * frame.adjoint()
            })
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub restarts: usize,
    pub max_iters: usize,
    /// Acceptance threshold on the residual divided by `‖A‖²_F`.
    pub tol: f64,
    /// A restart ends at a stationary point once the Riemannian gradient
    /// norm divided by `‖A‖²_F` drops below this.
    pub stationary_tol: f64,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            restarts: 20,
            max_iters: 5000,
            tol: 1e-8,
            stationary_tol: 1e-10,
            seed: 0,
        }
    }
}

/// Result of a multi-start search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    /// Certified projections and normalized residual, when one was found.
    pub found: Option<(ProjectionTuple, f64)>,
    /// Smallest normalized residual seen over all restarts.
    pub best_residual: f64,
    /// Every restart ended in success or at a stationary point.
    pub exhausted: bool,
    pub restarts_run: usize,
}

struct Problem<'a> {
    quiver: &'a Quiver,
    rep: &'a Representation,
    sub: &'a DimensionVector,
    scale: f64,
}

enum RestartEnd {
    Success(ProjectionTuple, f64),
    Stationary(f64),
    Budget(f64),
}

impl Problem<'_> {
    fn free(&self, j: usize) -> bool {
        let k = self.sub.get(j);
        k > 0 && k < self.rep.dims().get(j)
    }

    fn objective(&self, frames: &[CMatrix]) -> f64 {
        self.quiver
            .edges()
            .iter()
            .zip(self.rep.matrices())
            .map(|(e, a)| {
                let b = a * &frames[e.tail];
                let u = &frames[e.head];
                (&b - u * (u.adjoint() * &b)).norm_squared()
            })
            .sum()
    }

    /// Riemannian gradient (projected onto the horizontal space at each frame).
    fn gradient(&self, frames: &[CMatrix]) -> Vec<CMatrix> {
        let mut grad: Vec<CMatrix> = frames
            .iter()
            .map(|u| CMatrix::zeros(u.nrows(), u.ncols()))
            .collect();
        for (e, a) in self.quiver.edges().iter().zip(self.rep.matrices()) {
            let b = a * &frames[e.tail];
            let u = &frames[e.head];
            let leak = &b - u * (u.adjoint() * &b);
            grad[e.tail] += a.adjoint() * &leak * C64::from(2.0);
            grad[e.head] -= &b * (b.adjoint() * u) * C64::from(2.0);
        }
        for (j, (g, u)) in grad.iter_mut().zip(frames).enumerate() {
            if self.free(j) {
                let along = u * (u.adjoint() * &*g);
                *g -= along;
            } else {
                g.fill(C64::new(0.0, 0.0));
            }
        }
        grad
    }

    fn retract(&self, frames: &[CMatrix], dir: &[CMatrix], step: f64) -> Vec<CMatrix> {
        frames
            .iter()
            .zip(dir)
            .enumerate()
            .map(|(j, (u, d))| {
                if self.free(j) {
                    (u - d * C64::from(step)).qr().q()
                } else {
                    u.clone()
                }
            })
            .collect()
    }

    fn initial_frames(&self, rng: &mut ChaCha8Rng) -> Vec<CMatrix> {
        let dims = self.rep.dims();
        (0..dims.len())
            .map(|j| {
                let (n, k) = (dims.get(j), self.sub.get(j));
                if k == n {
                    CMatrix::identity(n, n)
                } else if k == 0 {
                    CMatrix::zeros(n, 0)
                } else {
                    gaussian_matrix(rng, n, k).qr().q()
                }
            })
            .collect()
    }

    fn certify(&self, frames: &[CMatrix], tol: f64) -> Option<(ProjectionTuple, f64)> {
        let rounded = round_projections(&ProjectionTuple::from_frames(frames), self.sub);
        let residual = subrep_residual(self.quiver, self.rep, &rounded) / self.scale;
        (residual < tol).then_some((rounded, residual))
    }

    fn run(&self, frames: Vec<CMatrix>, opts: &SearchOptions) -> RestartEnd {
        let mut frames = frames;
        let mut value = self.objective(&frames);
        let mut step = 1.0 / self.scale;
        for _ in 0..opts.max_iters {
            if value / self.scale < opts.tol {
                if let Some((p, r)) = self.certify(&frames, opts.tol) {
                    return RestartEnd::Success(p, r);
                }
            }
            let grad = self.gradient(&frames);
            let gnorm2 = super::norm_squared(&grad);
            if Float::sqrt(gnorm2) / self.scale < opts.stationary_tol {
                return RestartEnd::Stationary(value / self.scale);
            }
            // Armijo backtracking
            let mut accepted = false;
            for _ in 0..60 {
                let trial = self.retract(&frames, &grad, step);
                let trial_value = self.objective(&trial);
                if trial_value < value && trial_value <= value - 1e-4 * step * gnorm2 {
                    frames = trial;
                    value = trial_value;
                    accepted = true;
                    step *= 2.0;
                    break;
                }
                step *= 0.5;
            }
            if !accepted {
                // no descent possible at working precision
                return RestartEnd::Stationary(value / self.scale);
            }
        }
        if value / self.scale < opts.tol {
            if let Some((p, r)) = self.certify(&frames, opts.tol) {
                return RestartEnd::Success(p, r);
            }
        }
        RestartEnd::Budget(value / self.scale)
    }
}

fn check_sub(rep: &Representation, sub: &DimensionVector) -> Result<()> {
    if !sub.fits_in(rep.dims()) || sub.is_zero() || sub == rep.dims() {
        return Err(Error::InvalidArgument(alloc::format!(
            "sub-dimension vector {sub} must be proper, nonzero and at most {}",
            rep.dims()
        )));
    }
    Ok(())
}

/// Multi-start search for a subrepresentation of dimension vector `sub`.
/// Restart `i` draws its start from stream `i` of a ChaCha generator seeded
/// with `opts.seed`.
pub fn search_subrepresentation(
    quiver: &Quiver,
    rep: &Representation,
    sub: &DimensionVector,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    check_sub(rep, sub)?;
    let norm2 = rep.norm_squared();
    let problem = Problem {
        quiver,
        rep,
        sub,
        scale: if norm2 > 0.0 { norm2 } else { 1.0 },
    };
    // a point Grassmannian product needs a single evaluation
    let trivial = (0..sub.len()).all(|j| !problem.free(j));
    let restarts = if trivial { 1 } else { opts.restarts.max(1) };

    let mut best_residual = f64::INFINITY;
    let mut exhausted = true;
    for i in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(i as u64);
        let frames = problem.initial_frames(&mut rng);
        match problem.run(frames, opts) {
            RestartEnd::Success(p, r) => {
                return Ok(SearchOutcome {
                    found: Some((p, r)),
                    best_residual: r,
                    exhausted: true,
                    restarts_run: i + 1,
                });
            }
            RestartEnd::Stationary(r) => best_residual = best_residual.min(r),
            RestartEnd::Budget(r) => {
                best_residual = best_residual.min(r);
                exhausted = false;
            }
        }
    }
    Ok(SearchOutcome {
        found: None,
        best_residual,
        exhausted,
        restarts_run: restarts,
    })
}

/// Projections onto a subrepresentation of dimension vector `sub` together
/// with their normalized residual, if the search certifies one.
pub fn find_subrepresentation(
    quiver: &Quiver,
    rep: &Representation,
    sub: &DimensionVector,
    opts: &SearchOptions,
) -> Result<Option<(ProjectionTuple, f64)>> {
    Ok(search_subrepresentation(quiver, rep, sub, opts)?.found)
}
