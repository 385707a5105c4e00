//! Finitely generated abelian groups in invariant-factor form, with a small
//! Smith normal form routine for presentations.

use alloc::vec::Vec;
use core::fmt;

/// `Z^r + Z/d1 + ... + Z/dk` with `d1 | d2 | ... | dk`, each `d_i ≥ 2`, or an
/// explicit unknown marker.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
    known: bool,
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
            known: true,
        }
    }

    /// `Z/d`; `d = 0` gives `Z` and `d = 1` the trivial group.
    pub fn cyclic(d: u64) -> Self {
        Self::from_presentation(1, &[alloc::vec![d as i64]])
    }

    pub fn unknown() -> Self {
        FgAbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
            known: false,
        }
    }

    /// The cokernel of the relation matrix: `Z^generators` modulo the span of
    /// the rows of `relations`.
    pub fn from_presentation(generators: usize, relations: &[Vec<i64>]) -> Self {
        let diag = smith_diagonal(relations, generators);
        let nonzero = diag.iter().filter(|&&d| d != 0).count();
        FgAbelianGroup {
            free_rank: generators - nonzero,
            torsion: diag.into_iter().filter(|&d| d > 1).collect(),
            known: true,
        }
    }

    pub fn is_known(&self) -> bool {
        self.known
    }

    pub fn is_trivial(&self) -> bool {
        self.known && self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Free rank, or `None` for an unknown group.
    pub fn free_rank(&self) -> Option<usize> {
        self.known.then_some(self.free_rank)
    }

    /// Invariant factors, or `None` for an unknown group.
    pub fn torsion(&self) -> Option<&[u64]> {
        self.known.then_some(self.torsion.as_slice())
    }

    /// Direct sum; unknown if either summand is unknown.
    pub fn direct_sum(&self, other: &Self) -> Self {
        if !self.known || !other.known {
            return Self::unknown();
        }
        let factors: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        let k = factors.len();
        let relations: Vec<Vec<i64>> = factors
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let mut row = alloc::vec![0; k];
                row[i] = d as i64;
                row
            })
            .collect();
        let mut sum = Self::from_presentation(k, &relations);
        sum.free_rank = self.free_rank + other.free_rank;
        sum
    }
}

impl core::iter::Sum for FgAbelianGroup {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::trivial(), |acc, g| acc.direct_sum(&g))
    }
}

/// Renders as `0`, `Z`, `Z^r`, `Z/d`, `Z^r + Z/d1 + Z/d2` or `unknown`.
impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.known {
            return f.write_str("unknown");
        }
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            let r = if first { Ok(()) } else { f.write_str(" + ") };
            first = false;
            r
        };
        match self.free_rank {
            0 => {}
            1 => {
                sep(f)?;
                f.write_str("Z")?;
            }
            r => {
                sep(f)?;
                write!(f, "Z^{r}")?;
            }
        }
        for d in &self.torsion {
            sep(f)?;
            write!(f, "Z/{d}")?;
        }
        Ok(())
    }
}

/// Diagonal of the Smith normal form of an integer matrix with `cols`
/// columns, as nonnegative invariant factors of length `min(rows, cols)`.
/// Each entry divides the next, zeros last.
#[allow(clippy::needless_range_loop)] // row operations read one row while writing another
pub fn smith_diagonal(rows: &[Vec<i64>], cols: usize) -> Vec<u64> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged relation matrix");
            r.iter().map(|&x| x as i128).collect()
        })
        .collect();
    let nrows = m.len();
    let size = nrows.min(cols);
    let mut diag = Vec::with_capacity(size);

    for t in 0..size {
        // smallest nonzero entry of the trailing block as pivot
        let pivot = (t..nrows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs());
        let Some((pi, pj)) = pivot else {
            diag.extend(core::iter::repeat_n(0, size - t));
            break;
        };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..nrows {
                let q = m[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                dirty |= m[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                dirty |= m[t][j] != 0;
            }
            if !dirty {
                // the pivot must divide the rest of the block
                let bad = (t + 1..nrows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| m[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let x = m[i][j];
                            m[t][j] += x;
                        }
                        continue;
                    }
                }
            }
            // move the smallest remaining entry of row/column t into the pivot
            let cand = (t..nrows)
                .map(|i| (i, t))
                .chain((t..cols).map(|j| (t, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs())
                .expect("pivot is nonzero");
            if cand.0 != t {
                m.swap(t, cand.0);
            } else if cand.1 != t {
                for row in m.iter_mut() {
                    row.swap(t, cand.1);
                }
            }
        }
        diag.push(m[t][t].unsigned_abs() as u64);
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn rendering() {
        assert_eq!(FgAbelianGroup::trivial().to_string(), "0");
        assert_eq!(FgAbelianGroup::free(1).to_string(), "Z");
        assert_eq!(FgAbelianGroup::free(4).to_string(), "Z^4");
        assert_eq!(FgAbelianGroup::cyclic(2).to_string(), "Z/2");
        assert_eq!(FgAbelianGroup::cyclic(0).to_string(), "Z");
        assert_eq!(FgAbelianGroup::cyclic(1).to_string(), "0");
        assert_eq!(FgAbelianGroup::unknown().to_string(), "unknown");
        let g = FgAbelianGroup::free(2)
            .direct_sum(&FgAbelianGroup::cyclic(4))
            .direct_sum(&FgAbelianGroup::cyclic(2));
        assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/4");
    }

    #[test]
    fn invariant_factors_combine() {
        let g = FgAbelianGroup::cyclic(2).direct_sum(&FgAbelianGroup::cyclic(3));
        assert_eq!(g.to_string(), "Z/6");
        let g = FgAbelianGroup::cyclic(4).direct_sum(&FgAbelianGroup::cyclic(6));
        assert_eq!(g.to_string(), "Z/2 + Z/12");
    }

    #[test]
    fn unknown_propagates() {
        let g = FgAbelianGroup::free(1).direct_sum(&FgAbelianGroup::unknown());
        assert!(!g.is_known());
        assert_eq!(g.free_rank(), None);
        let s: FgAbelianGroup = [FgAbelianGroup::free(1), FgAbelianGroup::unknown()].into_iter().sum();
        assert!(!s.is_known());
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_diagonal(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3), [2, 6, 12]);
        assert_eq!(smith_diagonal(&[vec![6, 10, 15]], 3), [1]);
        assert_eq!(smith_diagonal(&[vec![2, 4]], 2), [2]);
        assert_eq!(smith_diagonal(&[vec![0, 0]], 2), [0]);
        assert_eq!(smith_diagonal(&[], 3), Vec::<u64>::new());
    }

    fn det(m: &[Vec<i64>]) -> i128 {
        // cofactor expansion, fine for tiny matrices
        let n = m.len();
        if n == 1 {
            return m[0][0] as i128;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] as i128 * det(&minor)
            })
            .sum()
    }

    proptest! {
        #[test]
        fn snf_divisibility_and_determinant(m in proptest::collection::vec(proptest::collection::vec(-9i64..10, 3), 3)) {
            let d = smith_diagonal(&m, 3);
            prop_assert_eq!(d.len(), 3);
            for w in d.windows(2) {
                if w[0] == 0 { prop_assert_eq!(w[1], 0); } else { prop_assert_eq!(w[1] % w[0], 0); }
            }
            let prod: i128 = d.iter().map(|&x| x as i128).product();
            prop_assert_eq!(prod, det(&m).abs());
        }
    }
}
