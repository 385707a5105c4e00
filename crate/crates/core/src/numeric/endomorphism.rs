use alloc::vec::Vec;

use nalgebra::linalg::SVD;

use crate::quiver::{CMatrix, Quiver, Representation};

/// Relative singular-value threshold for the nullity count.
pub const DEFAULT_NULLITY_THRESHOLD: f64 = 1e-8;

/// Complex dimension of `{u : u_h(a) A_a = A_a u_t(a) for all a}`, the
/// endomorphisms of the representation (always contains the scalars).
pub fn endomorphism_dimension(quiver: &Quiver, rep: &Representation) -> usize {
    endomorphism_dimension_with(quiver, rep, DEFAULT_NULLITY_THRESHOLD)
}

pub fn endomorphism_dimension_with(quiver: &Quiver, rep: &Representation, threshold: f64) -> usize {
    let dims = rep.dims().as_slice();
    let mut col_offset = Vec::with_capacity(dims.len());
    let mut cols = 0;
    for &d in dims {
        col_offset.push(cols);
        cols += d * d;
    }
    let rows: usize = quiver
        .edges()
        .iter()
        .map(|e| dims[e.head] * dims[e.tail])
        .sum();
    if rows == 0 || cols == 0 {
        return cols;
    }

    // row (a, r, c) of u_h A_a - A_a u_t; column (j, r, s) is u_j[r, s]
    let mut system = CMatrix::zeros(rows, cols);
    let mut row0 = 0;
    for (e, a) in quiver.edges().iter().zip(rep.matrices()) {
        let (vh, vt) = (dims[e.head], dims[e.tail]);
        for r in 0..vh {
            for c in 0..vt {
                let row = row0 + r * vt + c;
                for s in 0..vh {
                    system[(row, col_offset[e.head] + r * vh + s)] += a[(s, c)];
                }
                for s in 0..vt {
                    system[(row, col_offset[e.tail] + s * vt + c)] -= a[(r, s)];
                }
            }
        }
        row0 += vh * vt;
    }

    let sv = SVD::new(system, false, false).singular_values;
    let largest = sv.iter().copied().fold(0.0, f64::max);
    if largest == 0.0 {
        return cols;
    }
    let rank = sv.iter().filter(|&&s| s > threshold * largest).count();
    cols - rank
}
