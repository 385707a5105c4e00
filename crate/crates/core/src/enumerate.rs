//! Lexicographic enumeration of proper nonzero sub-dimension vectors.

use alloc::vec::Vec;

use crate::quiver::DimensionVector;

/// Iterator over every `v'` with `0 ≤ v' ≤ v`, `v' ≠ 0`, `v' ≠ v`, in
/// lexicographic order (last vertex varies fastest).
#[derive(Debug, Clone)]
pub struct SubDimensionVectors {
    bound: Vec<usize>,
    current: Option<Vec<usize>>,
}

impl SubDimensionVectors {
    pub fn new(v: &DimensionVector) -> Self {
        let bound = v.as_slice().to_vec();
        let mut it = SubDimensionVectors {
            current: Some(alloc::vec![0; bound.len()]),
            bound,
        };
        // skip the zero vector
        it.advance();
        it
    }

    fn advance(&mut self) {
        let Some(cur) = self.current.as_mut() else {
            return;
        };
        for j in (0..cur.len()).rev() {
            if cur[j] < self.bound[j] {
                cur[j] += 1;
                return;
            }
            cur[j] = 0;
        }
        self.current = None;
    }
}

impl Iterator for SubDimensionVectors {
    type Item = DimensionVector;

    fn next(&mut self) -> Option<DimensionVector> {
        let cur = self.current.clone()?;
        self.advance();
        if cur == self.bound {
            self.current = None;
            return None;
        }
        Some(DimensionVector::new(cur))
    }
}

/// Streams the proper nonzero sub-dimension vectors of `v`.
pub fn sub_dimension_vectors(v: &DimensionVector) -> SubDimensionVectors {
    SubDimensionVectors::new(v)
}

/// `Π (v_j + 1) - 2`, saturating at zero, computed without overflow.
pub fn sub_dimension_count(v: &DimensionVector) -> u128 {
    v.as_slice()
        .iter()
        .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128 + 1))
        .unwrap_or(u128::MAX)
        .saturating_sub(2)
}
