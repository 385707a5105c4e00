//! Homotopy-group conclusions for the stable locus and its moduli space.
//!
//! When `n + 1 < d_min`, the stable locus has `π_n = 0`, and the fibration
//! `PG_v → Rep^st → M^st` gives `π_n(M^st) ≅ π_{n-1}(PG_v)`.
//!
//! `π_1(PG_v)`: the fibration `U(1) → G_v → PG_v` has the scalar circle
//! included with determinant degrees `(v_1, ..., v_m)` in
//! `π_1(G_v) = Z^m` (one `Z` per nonzero vertex). Since `π_2(G_v) = 0` and
//! `π_0(U(1)) = 0`, the long exact sequence collapses to
//! `0 → Z → Z^m → π_1(PG_v) → 0`, so `π_1(PG_v) = Z^m / ⟨(v_1, ..., v_m)⟩
//! = Z^{m-1} + Z/gcd(v)`. For `k ≥ 2` the circle contributes nothing and
//! `π_k(PG_v) = π_k(G_v)`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::abelian::FgAbelianGroup;
use crate::error::{Error, Result};
use crate::euler::{d_min, Dmin};
use crate::quiver::{DimensionVector, Quiver, QuiverSetup};

/// `π_k(U(n))` where it is classically determined by this table: the Bott
/// stable range `k ≤ 2n - 1`, all of `U(1)`, and `π_4(U(2)) = π_5(U(2)) = Z/2`.
/// Anything else is unknown.
pub fn unitary_homotopy(n: usize, k: u32) -> FgAbelianGroup {
    if n == 0 || k == 0 {
        return FgAbelianGroup::trivial();
    }
    if n == 1 {
        return if k == 1 {
            FgAbelianGroup::free(1)
        } else {
            FgAbelianGroup::trivial()
        };
    }
    if (k as usize) < 2 * n {
        return if k % 2 == 1 {
            FgAbelianGroup::free(1)
        } else {
            FgAbelianGroup::trivial()
        };
    }
    match (n, k) {
        (2, 4) | (2, 5) => FgAbelianGroup::cyclic(2),
        _ => FgAbelianGroup::unknown(),
    }
}

/// `π_k(G_v) = ⊕_j π_k(U(v_j))`.
pub fn gauge_group_homotopy(v: &DimensionVector, k: u32) -> FgAbelianGroup {
    v.as_slice()
        .iter()
        .filter(|&&d| d > 0)
        .map(|&d| unitary_homotopy(d, k))
        .sum()
}

/// `π_k` of the gauge group modulo its scalar circle.
pub fn pg_homotopy(v: &DimensionVector, k: u32) -> Result<FgAbelianGroup> {
    if v.is_zero() {
        return Err(Error::ZeroRank);
    }
    Ok(match k {
        0 => FgAbelianGroup::trivial(),
        1 => {
            let relation: Vec<i64> = v
                .as_slice()
                .iter()
                .filter(|&&d| d > 0)
                .map(|&d| d as i64)
                .collect();
            FgAbelianGroup::from_presentation(relation.len(), &[relation])
        }
        _ => gauge_group_homotopy(v, k),
    })
}

/// `π_{n-1}(PG_v)` with `π_{-1}` read as the trivial group.
fn pg_homotopy_shifted(v: &DimensionVector, n: u32) -> Result<FgAbelianGroup> {
    match n {
        0 => Ok(FgAbelianGroup::trivial()),
        _ => pg_homotopy(v, n - 1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomotopyEntry {
    /// `π_n(Rep^st) = 0` and `π_n(M^st) ≅ moduli`.
    Conclusion { degree: u32, moduli: FgAbelianGroup },
    NoConclusion { degree: u32 },
}

impl HomotopyEntry {
    pub fn degree(&self) -> u32 {
        match self {
            HomotopyEntry::Conclusion { degree, .. } | HomotopyEntry::NoConclusion { degree } => {
                *degree
            }
        }
    }

    pub fn moduli_group(&self) -> Option<&FgAbelianGroup> {
        match self {
            HomotopyEntry::Conclusion { moduli, .. } => Some(moduli),
            HomotopyEntry::NoConclusion { .. } => None,
        }
    }
}

/// Caveat attached to every report about how conclusions are indexed.
pub const INDEXING_NOTE: &str = "pi_n(M^st) is reported as pi_{n-1}(PG_v) (shifted by one \
from pi_n(PG_v)); closed-form family statements written without the shift are not reproduced";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyReport {
    pub d_min: Dmin,
    pub entries: Vec<HomotopyEntry>,
    pub notes: Vec<String>,
}

pub fn homotopy_report(setup: &QuiverSetup, max_degree: u32) -> Result<HomotopyReport> {
    let dmin = d_min(setup)?.d_min;
    let entries = (0..=max_degree)
        .map(|n| {
            Ok(if dmin.admits_degree(n) {
                HomotopyEntry::Conclusion {
                    degree: n,
                    moduli: pg_homotopy_shifted(setup.dims(), n)?,
                }
            } else {
                HomotopyEntry::NoConclusion { degree: n }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HomotopyReport {
        d_min: dmin,
        entries,
        notes: alloc::vec![String::from(INDEXING_NOTE)],
    })
}

/// Expected complex dimension of the stable moduli space:
/// `Σ_a v_t(a) v_h(a) - Σ_j v_j² + 1`.
pub fn moduli_dimension(quiver: &Quiver, v: &DimensionVector) -> Result<i64> {
    if v.is_zero() {
        return Err(Error::ZeroRank);
    }
    let d = v.as_slice();
    let edges: i64 = quiver
        .edges()
        .iter()
        .map(|e| (d[e.tail] * d[e.head]) as i64)
        .sum();
    let gauge: i64 = d.iter().map(|&x| (x * x) as i64).sum();
    Ok(edges - gauge + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_adhm, gen_polygon, unit_sides};
    use crate::quiver::{rat, StabilityParameter};
    use alloc::string::ToString;
    use alloc::vec;

    fn dv(v: &[usize]) -> DimensionVector {
        DimensionVector::new(v.to_vec())
    }

    #[test]
    fn unitary_table() {
        for n in 1..6 {
            assert_eq!(unitary_homotopy(n, 1).to_string(), "Z");
            assert_eq!(unitary_homotopy(n, 2).to_string(), "0");
            assert_eq!(unitary_homotopy(n, 0).to_string(), "0");
        }
        assert_eq!(unitary_homotopy(1, 3).to_string(), "0");
        assert_eq!(unitary_homotopy(2, 3).to_string(), "Z");
        assert_eq!(unitary_homotopy(2, 4).to_string(), "Z/2");
        assert_eq!(unitary_homotopy(2, 5).to_string(), "Z/2");
        assert_eq!(unitary_homotopy(3, 5).to_string(), "Z");
        assert_eq!(unitary_homotopy(3, 4).to_string(), "0");
        assert!(!unitary_homotopy(2, 6).is_known());
        assert!(!unitary_homotopy(3, 6).is_known());
        assert_eq!(unitary_homotopy(4, 7).to_string(), "Z");
        assert_eq!(unitary_homotopy(1, 40).to_string(), "0");
    }

    #[test]
    fn gauge_groups() {
        let poly = gen_polygon(&unit_sides(4)).unwrap();
        assert_eq!(gauge_group_homotopy(poly.dims(), 1).to_string(), "Z^5");
        assert_eq!(gauge_group_homotopy(gen_adhm(2, 3).unwrap().dims(), 3).to_string(), "Z");
        assert_eq!(gauge_group_homotopy(&dv(&[3, 0, 2, 1]), 2).to_string(), "0");
        assert!(!gauge_group_homotopy(&dv(&[2, 1]), 6).is_known());
    }

    #[test]
    fn projective_gauge_groups() {
        assert_eq!(pg_homotopy(&dv(&[2]), 1).unwrap().to_string(), "Z/2");
        assert_eq!(pg_homotopy(&dv(&[2, 1, 1, 1, 1]), 1).unwrap().to_string(), "Z^4");
        assert_eq!(pg_homotopy(&dv(&[6, 10, 15]), 1).unwrap().to_string(), "Z^2");
        assert_eq!(pg_homotopy(&dv(&[2, 4]), 1).unwrap().to_string(), "Z + Z/2");
        assert_eq!(pg_homotopy(&dv(&[3, 0, 1]), 1).unwrap().to_string(), "Z");
        assert_eq!(pg_homotopy(&dv(&[1]), 1).unwrap().to_string(), "0");
        assert_eq!(pg_homotopy(&dv(&[4, 1]), 0).unwrap().to_string(), "0");
        assert!(pg_homotopy(&dv(&[0, 0]), 1).is_err());
    }

    #[test]
    fn adhm_pg_matches_unitary_group() {
        for k in 1..=4 {
            let v = gen_adhm(k, 1).unwrap().dims().clone();
            for deg in 0..=5 {
                assert_eq!(pg_homotopy(&v, deg).unwrap(), unitary_homotopy(k, deg), "k={k} deg={deg}");
            }
        }
    }

    #[test]
    fn polygon_pg_matches_product() {
        for n in 3..=6 {
            let v = gen_polygon(&unit_sides(n)).unwrap().dims().clone();
            for deg in 0..=5 {
                let expected: FgAbelianGroup = core::iter::once(unitary_homotopy(2, deg))
                    .chain((1..n).map(|_| unitary_homotopy(1, deg)))
                    .sum();
                assert_eq!(pg_homotopy(&v, deg).unwrap(), expected);
            }
        }
    }

    #[test]
    fn adhm_report() {
        let r = homotopy_report(&gen_adhm(2, 2).unwrap(), 5).unwrap();
        assert_eq!(r.d_min, Dmin::Finite(6));
        let g = |n: usize| r.entries[n].moduli_group().map(|g| g.to_string());
        assert_eq!(g(0).as_deref(), Some("0"));
        assert_eq!(g(1).as_deref(), Some("0"));
        assert_eq!(g(2).as_deref(), Some("Z"));
        assert_eq!(g(3).as_deref(), Some("0"));
        assert_eq!(g(4).as_deref(), Some("Z"));
        assert_eq!(g(5), None);
    }

    #[test]
    fn polygon_reports() {
        let r = homotopy_report(&gen_polygon(&unit_sides(5)).unwrap(), 3).unwrap();
        assert_eq!(r.d_min, Dmin::Finite(4));
        assert_eq!(r.entries[1].moduli_group().unwrap().to_string(), "0");
        assert_eq!(r.entries[2].moduli_group().unwrap().to_string(), "Z^5");
        assert!(r.entries[3].moduli_group().is_none());

        let r = homotopy_report(&gen_polygon(&unit_sides(4)).unwrap(), 3).unwrap();
        assert!(r.entries[0].moduli_group().unwrap().is_trivial());
        assert!(r.entries[1..].iter().all(|e| e.moduli_group().is_none()));
        assert!(!r.notes.is_empty());
    }

    #[test]
    fn gate_boundary_and_nonpositive_dmin() {
        let r = homotopy_report(&gen_polygon(&[rat(3), rat(1), rat(1), rat(1)]).unwrap(), 2).unwrap();
        assert_eq!(r.d_min, Dmin::Finite(0));
        assert!(r.entries.iter().all(|e| e.moduli_group().is_none()));
    }

    #[test]
    fn infinite_dmin_concludes_everywhere() {
        let q = Quiver::new(vec!["a".to_string(), "b".to_string()], &[("a", "b")]).unwrap();
        let s = QuiverSetup::new(q, dv(&[1, 0]), StabilityParameter::zero(2)).unwrap();
        let r = homotopy_report(&s, 4).unwrap();
        assert_eq!(r.d_min, Dmin::Infinite);
        assert!(r.entries.iter().all(|e| e.moduli_group().is_some()));
    }

    #[test]
    fn moduli_dimensions() {
        let q = gen_polygon(&unit_sides(5)).unwrap();
        assert_eq!(moduli_dimension(q.quiver(), q.dims()).unwrap(), 2);
        for n in 3..8 {
            let q = gen_polygon(&unit_sides(n)).unwrap();
            assert_eq!(moduli_dimension(q.quiver(), q.dims()).unwrap(), n as i64 - 3);
        }
        for k in 1..=3 {
            for n in 1..=3 {
                let s = gen_adhm(k, n).unwrap();
                assert_eq!(moduli_dimension(s.quiver(), s.dims()).unwrap(), (k * k + 2 * k * n) as i64);
            }
        }
        let q = Quiver::new(vec!["a".to_string()], &[("a", "a")]).unwrap();
        assert_eq!(moduli_dimension(&q, &dv(&[1])).unwrap(), 1);
    }
}
