mod common;

use proptest::prelude::*;
use quotcoh_core::linalg::ModpMatrix;
use quotcoh_core::profile::{
    curtis_reiner_check, cyclotomic_extension, direct_sum, jordan_profile, jordan_profile_modp, sym_power,
    sym_power_matrix, tensor,
};
use quotcoh_core::JordanProfile;

const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn profile(max_dim: u64) -> impl Strategy<Value = JordanProfile> {
    (0usize..4).prop_flat_map(move |pi| {
        let p = PRIMES[pi];
        proptest::collection::vec(0u64..3, p as usize).prop_filter_map("dimension", move |counts| {
            let blocks: Vec<(u32, u64)> = counts.iter().enumerate().map(|(i, &c)| (i as u32 + 1, c)).collect();
            let prof = JordanProfile::new(p, &blocks).ok()?;
            (prof.dimension() > 0 && prof.dimension() <= max_dim).then_some(prof)
        })
    })
}

fn conjugate(m: &ModpMatrix, ops: &[(usize, usize, i64)]) -> ModpMatrix {
    let n = m.rows();
    let u = common::unimodular(n, ops);
    let ui = common::inverse_unimodular(&u);
    let p = m.modulus();
    ModpMatrix::reduce(&u, p).mul(m).mul(&ModpMatrix::reduce(&ui, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn profile_survives_change_of_basis(
        prof in profile(30),
        ops in proptest::collection::vec((0usize..30, 0usize..30, -4i64..=4), 0..40),
    ) {
        let m = conjugate(&prof.representative(), &ops);
        prop_assert_eq!(jordan_profile_modp(&m).unwrap(), prof);
    }

    #[test]
    fn tensor_matches_kronecker(a in profile(6), b in profile(6)) {
        prop_assume!(a.p() == b.p());
        let dense = jordan_profile_modp(&a.representative().kronecker(&b.representative())).unwrap();
        prop_assert_eq!(tensor(&a, &b).unwrap(), dense);
    }

    #[test]
    fn sym_matches_monomial_action(a in profile(6), k in 0u32..4) {
        let dense = jordan_profile_modp(&sym_power_matrix(&a.representative(), k as usize)).unwrap();
        prop_assert_eq!(sym_power(&a, k).unwrap(), dense);
    }

    #[test]
    fn sym_of_sum_matches_monomial_action(a in profile(4), b in profile(4), k in 1u32..4) {
        prop_assume!(a.p() == b.p());
        let sum = direct_sum(&a, &b).unwrap();
        let rep = ModpMatrix::block_diag(a.p(), &[a.representative(), b.representative()]);
        let dense = jordan_profile_modp(&sym_power_matrix(&rep, k as usize)).unwrap();
        prop_assert_eq!(sym_power(&sum, k).unwrap(), dense.clone());
        let mut split = JordanProfile::zero(a.p()).unwrap();
        for i in 0..=k {
            let piece = tensor(&sym_power(&a, i).unwrap(), &sym_power(&b, k - i).unwrap()).unwrap();
            split = direct_sum(&split, &piece).unwrap();
        }
        prop_assert_eq!(split, dense);
    }

    #[test]
    fn integral_actions_have_no_middle_blocks(
        pi in 0usize..4,
        a in 0usize..3, b in 0usize..3, c in 0usize..3,
        ops in proptest::collection::vec((0usize..24, 0usize..24, -2i64..=2), 0..24),
    ) {
        let p = PRIMES[pi];
        prop_assume!(a + b + c > 0);
        let m = common::block_action(p, a, b, c);
        let u = common::unimodular(m.rows(), &ops);
        let act = u.mul(&m).mul(&common::inverse_unimodular(&u));
        let cr = curtis_reiner_check(&act, p).unwrap();
        prop_assert_eq!(cr.r, c as u64);
        if p == 2 {
            prop_assert_eq!(cr.s_plus_t, (a + b) as u64);
        } else {
            prop_assert_eq!((cr.s, cr.t), (Some(b as u64), Some(a as u64)));
        }
        let prof = jordan_profile(&act, p).unwrap();
        prop_assert_eq!(prof.middle_block(), None);
    }

    #[test]
    fn cyclotomic_extensions_have_rank_p(pi in 1usize..4, col in proptest::collection::vec(-3i64..=3, 6)) {
        let p = PRIMES[pi];
        let a = cyclotomic_extension(p, &col[..p as usize - 1]);
        let cr = curtis_reiner_check(&a, p).unwrap();
        prop_assert_eq!(p * cr.r + (p - 1) * cr.s.unwrap() + cr.t.unwrap(), p);
    }
}

#[test]
fn rejects_wrong_order() {
    let m = quotcoh_core::IntMatrix::from_i64(2, 2, &[1, 1, 0, 1]);
    assert!(curtis_reiner_check(&m, 3).is_err());
    assert!(jordan_profile(&quotcoh_core::IntMatrix::from_i64(1, 1, &[2]), 3).is_err());
}
