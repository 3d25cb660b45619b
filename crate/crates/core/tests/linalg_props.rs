mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use quotcoh_core::linalg::{
    coordinates, kernel_saturated, quotient_group, rank_mod_p, row_basis, saturate, smith_normal_form,
};
use quotcoh_core::IntMatrix;

fn matrix(max_dim: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(-range..=range, r * c).prop_map(move |v| IntMatrix::from_i64(r, c, &v))
    })
}

fn gcd_of_minors_k(m: &IntMatrix, k: usize) -> BigInt {
    // brute force gcd of all k x k minors
    fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = choose(n - 1, k);
        for mut c in choose(n - 1, k - 1) {
            c.push(n - 1);
            out.push(c);
        }
        out
    }
    let mut g = BigInt::zero();
    for rs in choose(m.rows(), k) {
        for cs in choose(m.cols(), k) {
            let mut sub = IntMatrix::zeros(k, k);
            for (a, &i) in rs.iter().enumerate() {
                for (b, &j) in cs.iter().enumerate() {
                    sub[(a, b)] = m[(i, j)].clone();
                }
            }
            g = g.gcd(&sub.det());
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalisation(m in matrix(5, 6)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.u.det().abs().is_one());
        prop_assert!(s.v.det().abs().is_one());
        prop_assert!(s.u.mul(&s.u_inv).is_identity());
        prop_assert!(s.v.mul(&s.v_inv).is_identity());
        let d = s.diagonal();
        for w in d.windows(2) {
            if !w[1].is_zero() {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }
    }

    #[test]
    fn smith_diagonal_matches_determinantal_divisors(m in matrix(4, 5)) {
        // d_1 ... d_k = gcd of k x k minors
        let s = smith_normal_form(&m);
        let d = s.diagonal();
        let mut prod = BigInt::one();
        for (k, dk) in d.iter().enumerate() {
            prod *= dk;
            prop_assert_eq!(prod.abs(), gcd_of_minors_k(&m, k + 1));
        }
    }

    #[test]
    fn rank_mod_p_counts_units_of_the_diagonal(m in matrix(6, 9), pi in 0usize..4) {
        let p = [2u64, 3, 5, 7][pi];
        let s = smith_normal_form(&m);
        let pb = BigInt::from(p);
        let expected = s.diagonal().iter().filter(|x| !x.is_zero() && !x.is_multiple_of(&pb)).count();
        prop_assert_eq!(rank_mod_p(&m, p).unwrap(), expected);
    }

    #[test]
    fn kernel_is_saturated_and_complete(m in matrix(5, 4)) {
        let k = kernel_saturated(&m);
        // rows x satisfy m x = 0
        if k.rows() > 0 {
            prop_assert!(m.mul(&k.transpose()).is_zero());
        }
        prop_assert_eq!(k.rows() + smith_normal_form(&m).rank(), m.cols());
        if k.rows() > 0 {
            prop_assert!(quotient_group(&k, m.cols()).unwrap().is_empty());
        }
    }

    #[test]
    fn row_basis_spans_the_same_lattice(m in matrix(5, 7)) {
        let b = row_basis(&m);
        prop_assert_eq!(b.rows(), smith_normal_form(&m).rank());
        if b.rows() > 0 {
            let c = coordinates(&b, &m).unwrap();
            prop_assert_eq!(c.mul(&b), m.clone());
            let sat = saturate(&m);
            prop_assert_eq!(sat.rows(), b.rows());
            prop_assert!(coordinates(&sat, &b).is_ok());
            prop_assert!(quotient_group(&sat, m.cols()).unwrap().is_empty());
        }
    }

    #[test]
    fn conjugation_keeps_elementary_divisors(
        m in matrix(4, 6),
        ops in proptest::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..8),
    ) {
        let u = common::unimodular(m.rows(), &ops);
        let v = common::unimodular(m.cols(), &ops);
        prop_assert_eq!(smith_normal_form(&u.mul(&m).mul(&v)).diagonal(), smith_normal_form(&m).diagonal());
    }
}
