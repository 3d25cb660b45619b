use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use quotcoh_core::toric::{
    hj_resolution, is_negative_definite, quotient_fan, resolve, resolve_surface, CyclicSingularity, Fan,
};
use quotcoh_core::IntMatrix;

fn singularity(n: usize) -> impl Strategy<Value = CyclicSingularity> {
    (0usize..5).prop_flat_map(move |pi| {
        let p = [2u64, 3, 5, 7, 11][pi];
        proptest::collection::vec(1..p, n).prop_map(move |w| CyclicSingularity::new(p, w).unwrap())
    })
}

fn ray_matrix(fan: &Fan, cone: &[usize]) -> IntMatrix {
    let n = fan.dim();
    let flat: Vec<i64> = cone.iter().flat_map(|&r| fan.rays()[r].clone()).collect();
    IntMatrix::from_i64(cone.len(), n, &flat)
}

/// Barycentric coordinates of `x` in the cone, scaled by `|det|`, and the sign of det.
fn cone_coordinates(fan: &Fan, cone: &[usize], x: &[i64]) -> Vec<BigInt> {
    let r = ray_matrix(fan, cone);
    let det = r.det();
    let xm = IntMatrix::from_i64(1, x.len(), x);
    let num = xm.mul(&r.adjugate());
    (0..cone.len()).map(|i| if det.is_negative() { -num[(0, i)].clone() } else { num[(0, i)].clone() }).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn resolution_is_a_regular_subdivision(s in singularity(3), coeffs in proptest::collection::vec(1i64..20, 3)) {
        let base = quotient_fan(&s);
        let det = ray_matrix(&base, &base.maximal_cones()[0]).det().abs();
        prop_assert_eq!(det, BigInt::from(s.p()));
        let fan = resolve(&base);
        prop_assert!(fan.is_regular());
        let orig = base.maximal_cones()[0].clone();
        for ray in fan.rays() {
            prop_assert!(cone_coordinates(&base, &orig, ray).iter().all(|c| !c.is_negative()));
        }
        // a generic interior point lies in at least one cone and in the
        // interior of at most one
        let mut x = vec![0i64; 3];
        for (k, &r) in orig.iter().enumerate() {
            for i in 0..3 {
                x[i] += coeffs[k] * base.rays()[r][i] * 7 + (k as i64 + 1) * (i as i64 + 2);
            }
        }
        prop_assume!(cone_coordinates(&base, &orig, &x).iter().all(|c| c.is_positive()));
        let mut containing = 0;
        let mut interior = 0;
        for cone in fan.maximal_cones() {
            let c = cone_coordinates(&fan, cone, &x);
            if c.iter().all(|v| !v.is_negative()) {
                containing += 1;
            }
            if c.iter().all(|v| v.is_positive()) {
                interior += 1;
            }
        }
        prop_assert!(containing >= 1);
        prop_assert!(interior <= 1);
    }

    #[test]
    fn surface_chain_is_the_continued_fraction(s in singularity(2)) {
        let w = s.weights();
        prop_assume!(w[0] == 1);
        let res = resolve_surface(&s).unwrap();
        let (chain, gram) = hj_resolution(s.p(), w[1]).unwrap();
        let mut sorted = res.chain.clone();
        sorted.sort_unstable();
        let mut expected = chain.clone();
        expected.sort_unstable();
        prop_assert_eq!(sorted, expected);
        prop_assert_eq!(res.det.abs(), BigInt::from(s.p()));
        prop_assert!(is_negative_definite(&gram).unwrap());
    }
}
