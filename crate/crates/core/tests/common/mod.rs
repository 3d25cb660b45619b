#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed};
use quotcoh_core::profile::{cyclic_shift, cyclotomic_companion};
use quotcoh_core::IntMatrix;

/// Product of elementary row operations `row_i += c * row_j`.
pub fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        for col in 0..n {
            let v = &u[(j, col)] * BigInt::from(c);
            u[(i, col)] += v;
        }
    }
    u
}

pub fn inverse_unimodular(u: &IntMatrix) -> IntMatrix {
    let det = u.det();
    assert!(det.abs().is_one());
    u.adjugate().scale(&det)
}

/// Trivial, cyclotomic and regular summands, in that order.
pub fn block_action(p: u64, a: usize, b: usize, c: usize) -> IntMatrix {
    let mut blocks = Vec::new();
    for _ in 0..a {
        blocks.push(IntMatrix::identity(1));
    }
    for _ in 0..b {
        blocks.push(cyclotomic_companion(p));
    }
    for _ in 0..c {
        blocks.push(cyclic_shift(p as usize));
    }
    IntMatrix::block_diag(&blocks)
}

/// `Σ (A^i)^T A^i`, positive definite and invariant.
pub fn invariant_gram(a: &IntMatrix, p: u64) -> IntMatrix {
    let n = a.rows();
    let mut g = IntMatrix::zeros(n, n);
    let mut power = IntMatrix::identity(n);
    for _ in 0..p {
        g = g.add(&power.transpose().mul(&power));
        power = power.mul(a);
    }
    g
}
