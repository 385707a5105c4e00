use proptest::prelude::*;
use quiverstab_core::slope::destabilizing_dimension_vectors;
use quiverstab_core::*;

fn arb_setup() -> impl Strategy<Value = QuiverSetup> {
    (1usize..5)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(0usize..4, n),
                prop::collection::vec((-12i64..12, 1i64..5), n),
                prop::collection::vec((0..n, 0..n), 0..7),
            )
        })
        .prop_filter_map("positive rank", |(n, dims, alphas, edges)| {
            if dims.iter().all(|&d| d == 0) {
                return None;
            }
            let quiver = Quiver::from_indices(
                (0..n).map(|j| format!("v{j}")).collect(),
                edges.into_iter().map(|(tail, head)| Edge { tail, head }).collect(),
            )
            .ok()?;
            let alpha = alphas.into_iter().map(|(p, q)| ratio(p, q)).collect();
            QuiverSetup::new(quiver, DimensionVector::new(dims), StabilityParameter::new(alpha)).ok()
        })
}

/// Counts matrix positions by block: with `V = V' ⊕ V''` at every vertex, an
/// entry `(r, c)` of a `m × n` block lies in `Hom(V', V'')` iff `r ≥ m'` and
/// `c < n'`.
fn block_counts(rows: usize, rows_sub: usize, cols: usize, cols_sub: usize) -> [u64; 4] {
    let mut counts = [0u64; 4];
    for r in 0..rows {
        for c in 0..cols {
            let idx = usize::from(r >= rows_sub) * 2 + usize::from(c >= cols_sub);
            counts[idx] += 1;
        }
    }
    counts
}

proptest! {
    #[test]
    fn hom_dims_agree_with_block_counts(setup in arb_setup()) {
        let (q, v) = (setup.quiver(), setup.dims());
        let total_edges: u64 = q.edges().iter().map(|e| (v.get(e.tail) * v.get(e.head)) as u64).sum();
        for sub in sub_dimension_vectors(v) {
            let h = hom_dims(q, v, &sub).unwrap();
            let hom0: u64 = (0..v.len())
                .map(|j| block_counts(v.get(j), sub.get(j), v.get(j), sub.get(j))[2])
                .sum();
            let mut hom1 = 0;
            let mut all = 0;
            for e in q.edges() {
                let b = block_counts(v.get(e.head), sub.get(e.head), v.get(e.tail), sub.get(e.tail));
                hom1 += b[2];
                all += b.iter().sum::<u64>();
            }
            prop_assert_eq!(h.hom0_complex, hom0);
            prop_assert_eq!(h.hom1_complex, hom1);
            prop_assert_eq!(all, total_edges);
            prop_assert_eq!(euler_characteristic(q, v, &sub).unwrap(), hom0 as i64 - hom1 as i64);
        }
    }

    #[test]
    fn dmin_ignores_shift_and_scale(
        setup in arb_setup(),
        (cp, cq) in (-9i64..9, 1i64..5),
        (lp, lq) in (1i64..9, 1i64..5),
    ) {
        let base = d_min(&setup).unwrap();
        let subs = |s: &QuiverSetup| {
            destabilizing_dimension_vectors(s)
                .unwrap()
                .items
                .into_iter()
                .map(|d| (d.sub.clone(), d.is_strict()))
                .collect::<Vec<_>>()
        };
        let base_subs = subs(&setup);
        for alpha in [setup.alpha().shifted(&ratio(cp, cq)), setup.alpha().scaled(&ratio(lp, lq))] {
            let other = setup.with_alpha(alpha).unwrap();
            let report = d_min(&other).unwrap();
            prop_assert_eq!(report.d_min, base.d_min);
            prop_assert_eq!(&report.witness, &base.witness);
            prop_assert_eq!(subs(&other), base_subs.clone());
        }
    }

    #[test]
    fn witness_is_a_destabilizing_minimizer(setup in arb_setup()) {
        let report = d_min(&setup).unwrap();
        match (report.d_min, &report.witness) {
            (Dmin::Infinite, None) => prop_assert!(report.per_candidate.is_empty()),
            (Dmin::Finite(d), Some(w)) => {
                let listed = report.per_candidate.iter().find(|c| &c.sub == w).unwrap();
                prop_assert_eq!(listed.value(), d);
                prop_assert!(report.per_candidate.iter().all(|c| c.value() >= d));
                prop_assert_eq!(report.minimizers().next(), Some(w));
            }
            other => prop_assert!(false, "inconsistent report {:?}", other),
        }
    }
}
