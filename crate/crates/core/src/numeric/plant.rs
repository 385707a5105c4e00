//! Seeded test-instance generators.

use alloc::vec::Vec;

use nalgebra::ComplexField;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::quiver::{CMatrix, DimensionVector, QuiverSetup, Representation, C64};

pub(crate) fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(s * re, s * im)
    })
}

/// Haar-distributed unitary matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    let qr = gaussian_matrix(rng, n, n).qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let norm = d.modulus();
        if norm > 0.0 {
            let phase = d / C64::from(norm);
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// One Haar unitary per vertex.
pub fn random_unitary_gauge<R: Rng + ?Sized>(rng: &mut R, dims: &DimensionVector) -> Vec<CMatrix> {
    dims.as_slice().iter().map(|&d| random_unitary(rng, d)).collect()
}

/// Seeded representation. With `sub`, the matrices preserve the coordinate
/// subspaces of dimensions `sub` and are then conjugated by random unitaries;
/// without it, entries are i.i.d. standard complex Gaussians.
pub fn plant_instance(
    setup: &QuiverSetup,
    sub: Option<&DimensionVector>,
    seed: u64,
) -> Result<Representation> {
    let quiver = setup.quiver();
    let dims = setup.dims();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut matrices: Vec<CMatrix> = quiver
        .edges()
        .iter()
        .map(|e| gaussian_matrix(&mut rng, dims.get(e.head), dims.get(e.tail)))
        .collect();
    let Some(sub) = sub else {
        return Representation::new(quiver, dims.clone(), matrices);
    };
    if !sub.fits_in(dims) || sub.is_zero() || sub == dims {
        return Err(Error::InvalidArgument(alloc::format!(
            "planted dimension vector {sub} must be proper, nonzero and at most {dims}"
        )));
    }
    for (m, e) in matrices.iter_mut().zip(quiver.edges()) {
        let (sub_head, sub_tail) = (sub.get(e.head), sub.get(e.tail));
        for r in sub_head..m.nrows() {
            for c in 0..sub_tail {
                m[(r, c)] = C64::new(0.0, 0.0);
            }
        }
    }
    let rep = Representation::new(quiver, dims.clone(), matrices)?;
    let gauge = random_unitary_gauge(&mut rng, dims);
    Ok(super::gauge_transform(quiver, &gauge, &rep))
}
