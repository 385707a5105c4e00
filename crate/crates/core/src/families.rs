//! Generators for the ADHM and polygon example families, plus gauge group sizes.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::quiver::{
    rat, ratio, DimensionVector, Edge, Quiver, QuiverSetup, Rational, StabilityParameter,
};

/// The doubled ADHM quiver: vertex `ck` of dimension `k`, vertex `c` of
/// dimension 1, `n` edges `ck -> c`, `n` edges `c -> ck` and two loops at
/// `ck`, in that order. The parameter is zero.
pub fn gen_adhm(k: usize, n: usize) -> Result<QuiverSetup> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "ADHM quiver needs k >= 1 and n >= 1, got k = {k}, n = {n}"
        )));
    }
    let vertices = alloc::vec![String::from("ck"), String::from("c")];
    let mut edges = Vec::with_capacity(2 * n + 2);
    edges.extend((0..n).map(|_| Edge { tail: 0, head: 1 }));
    edges.extend((0..n).map(|_| Edge { tail: 1, head: 0 }));
    edges.extend((0..2).map(|_| Edge { tail: 0, head: 0 }));
    let quiver = Quiver::from_indices(vertices, edges)?;
    QuiverSetup::new(
        quiver,
        DimensionVector::new(alloc::vec![k, 1]),
        StabilityParameter::zero(2),
    )
}

/// Star-shaped quiver for polygons with the given side lengths: a central
/// vertex `c` of dimension 2 and outer vertices `e1..en` of dimension 1, with
/// one edge `ej -> c` each. Weights are `α_j = -s_j` and `α_c = Σ s_j / 2`.
pub fn gen_polygon(sides: &[Rational]) -> Result<QuiverSetup> {
    if sides.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "a polygon needs at least 3 sides, got {}",
            sides.len()
        )));
    }
    if let Some(s) = sides.iter().find(|s| !s.is_positive()) {
        return Err(Error::InvalidArgument(format!(
            "side lengths must be positive, got {s}"
        )));
    }
    let n = sides.len();
    let mut vertices = alloc::vec![String::from("c")];
    vertices.extend((1..=n).map(|j| format!("e{j}")));
    let edges = (1..=n).map(|j| Edge { tail: j, head: 0 }).collect();
    let quiver = Quiver::from_indices(vertices, edges)?;

    let total: Rational = sides.iter().sum();
    let mut alphas = alloc::vec![total * ratio(1, 2)];
    alphas.extend(sides.iter().map(|s| -s.clone()));
    let mut dims = alloc::vec![2];
    dims.extend(core::iter::repeat_n(1, n));
    QuiverSetup::new(
        quiver,
        DimensionVector::new(dims),
        StabilityParameter::new(alphas),
    )
}

/// Sizes of the unitary factors of the gauge group and its real dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupProfile {
    pub blocks: Vec<usize>,
    /// `Σ v_j²`
    pub dim_gauge: usize,
    /// `Σ v_j² - 1`, or 0 for the zero vector.
    pub dim_projective: usize,
}

pub fn group_profile(v: &DimensionVector) -> GroupProfile {
    let dim_gauge: usize = v.as_slice().iter().map(|d| d * d).sum();
    GroupProfile {
        blocks: v.as_slice().to_vec(),
        dim_gauge,
        dim_projective: dim_gauge.saturating_sub(1),
    }
}

/// Unit side lengths, as exact rationals.
pub fn unit_sides(n: usize) -> Vec<Rational> {
    core::iter::repeat_n(rat(1), n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn is_trace_free(setup: &QuiverSetup) -> bool {
        setup.alpha().pairing(setup.dims()).is_zero()
    }

    #[test]
    fn adhm_shapes() {
        let s = gen_adhm(2, 1).unwrap();
        assert_eq!(s.quiver().vertex_count(), 2);
        assert_eq!(s.quiver().edges().len(), 4);
        assert_eq!(s.dims().as_slice(), &[2, 1]);
        assert!(s.alpha().as_slice().iter().all(Zero::is_zero));
        assert_eq!(gen_adhm(1, 1).unwrap().quiver().edges().len(), 4);
        assert_eq!(gen_adhm(3, 2).unwrap().quiver().edges().len(), 6);
        let loops = s.quiver().edges().iter().filter(|e| e.is_loop()).count();
        assert_eq!(loops, 2);
    }

    #[test]
    fn adhm_rejects_zero() {
        assert!(gen_adhm(0, 1).is_err());
        assert!(gen_adhm(1, 0).is_err());
    }

    #[test]
    fn polygon_weights() {
        let s = gen_polygon(&unit_sides(4)).unwrap();
        assert_eq!(s.alpha().get(0), &rat(2));
        assert_eq!(s.dims().as_slice(), &[2, 1, 1, 1, 1]);
        assert!(is_trace_free(&s));

        let s = gen_polygon(&unit_sides(3)).unwrap();
        assert_eq!(s.alpha().get(0), &ratio(3, 2));

        let s = gen_polygon(&[rat(3), rat(1), rat(1), rat(1)]).unwrap();
        assert_eq!(s.alpha().get(0), &rat(3));
    }

    #[test]
    fn polygon_rejects_bad_sides() {
        assert!(gen_polygon(&unit_sides(2)).is_err());
        assert!(gen_polygon(&[rat(1), rat(0), rat(1)]).is_err());
        assert!(gen_polygon(&[rat(1), rat(-1), rat(1)]).is_err());
    }

    #[test]
    fn profiles() {
        let p = group_profile(gen_adhm(3, 2).unwrap().dims());
        assert_eq!(p.blocks, [3, 1]);
        assert_eq!(p.dim_gauge, 10);
        let p = group_profile(gen_polygon(&unit_sides(4)).unwrap().dims());
        assert_eq!(p.blocks, [2, 1, 1, 1, 1]);
        assert_eq!(p.dim_gauge, 8);
        assert_eq!(group_profile(&DimensionVector::new(alloc::vec![1])).dim_projective, 0);
    }
}
