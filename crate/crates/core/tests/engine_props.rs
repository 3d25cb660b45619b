use std::collections::BTreeMap;

use proptest::prelude::*;
use quotcoh_core::engine::{
    degeneration_status, e2_entry, quotient_report, field_u_from_equivariant, integral_u_from_equivariant, lefschetz_euler,
    Coefficients, DegreeInvariants, GradedInvariants,
};

fn graded(n_max: usize) -> impl Strategy<Value = GradedInvariants> {
    (1usize..=n_max, 0usize..4).prop_flat_map(|(n, pi)| {
        let p = [2u64, 3, 5, 7][pi];
        let degree = (0u64..4, 0u64..3, 0u64..3, proptest::collection::btree_map(1u32..=p as u32, 0u64..3, 0..3));
        (proptest::collection::vec(degree, 2 * n + 1), 0u64..20).prop_map(move |(ds, eta)| {
            let degrees = ds
                .into_iter()
                .enumerate()
                .map(|(k, (lp, lm, lf, t))| {
                    let mut d = DegreeInvariants::torsion_free(k, p, lp, lm, lf);
                    if k > 0 {
                        d.l_qt = t.into_iter().filter(|(_, c)| *c > 0).collect::<BTreeMap<_, _>>();
                    }
                    d
                })
                .collect();
            GradedInvariants::new(p, n, eta, degrees).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_and_integral_degeneration_agree(inv in graded(4), t in proptest::collection::vec(0i64..30, 9)) {
        let u = integral_u_from_equivariant(&inv, &t);
        let ubar = field_u_from_equivariant(&inv, &t);
        prop_assert_eq!(u.len(), 2 * inv.n + 1);
        prop_assert_eq!(ubar.len(), 2 * inv.n);
        for k in 0..2 * inv.n {
            prop_assert_eq!(ubar[k], u[k] + u[k + 1], "k = {}", k);
        }
    }

    #[test]
    fn second_page_columns_are_periodic(inv in graded(3), q in 0usize..7) {
        prop_assume!(q <= 2 * inv.n);
        for coeffs in [Coefficients::Integers, Coefficients::Field] {
            let a = e2_entry(&inv, 1, q, coeffs).unwrap();
            prop_assert_eq!(e2_entry(&inv, 3, q, coeffs).unwrap(), a);
            prop_assert_eq!(e2_entry(&inv, 5, q, coeffs).unwrap(), a);
            prop_assert_eq!(e2_entry(&inv, 2, q, coeffs).unwrap(), e2_entry(&inv, 4, q, coeffs).unwrap());
        }
    }

    #[test]
    fn degeneration_verdicts_are_coherent(inv in graded(3)) {
        let st = degeneration_status(&inv);
        let s = inv.parity_sums();
        let euler = lefschetz_euler(&inv);
        prop_assert_eq!(euler, s.plus_even as i64 - s.plus_odd as i64 - s.minus_even as i64 + s.minus_odd as i64);
        if st.too_few_fixed_points {
            prop_assert!(!st.c1.holds() && !st.c4.holds());
        }
        if st.c1.holds() {
            prop_assert!(st.c2.holds() && st.c3.holds());
        }
        prop_assert_eq!(st.c1, st.c4);
    }

    #[test]
    fn quotient_betti_drops_by_nontrivial_summands(
        pi in 0usize..4,
        n in 1usize..=3,
        counts in proptest::collection::vec((0u64..4, 0u64..3, 0u64..3), 3),
    ) {
        let p = [2u64, 3, 5, 7][pi];
        let degrees: Vec<DegreeInvariants> = (0..=2 * n)
            .map(|k| {
                let (lp, lm, lf) = counts[k.min(2 * n - k) % 3];
                if k == 0 || k == 2 * n {
                    DegreeInvariants::torsion_free(k, p, 1, 0, 0)
                } else if k % 2 == 1 {
                    DegreeInvariants::torsion_free(k, p, 0, 0, 0)
                } else {
                    DegreeInvariants::torsion_free(k, p, lp, lm, lf)
                }
            })
            .collect();
        let plus: u64 = degrees.iter().map(|d| d.l_plus).sum();
        let minus: u64 = degrees.iter().map(|d| d.l_minus).sum();
        prop_assume!(plus >= minus);
        let inv = GradedInvariants::new(p, n, plus - minus, degrees).unwrap();
        let r = quotient_report(&inv).unwrap();
        for d in &inv.degrees {
            prop_assert_eq!(d.rank - r.betti_m[d.k], (p - 1) * (d.l_minus + d.l_pf), "k = {}", d.k);
        }
    }
}
