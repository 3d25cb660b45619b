//! Seeded generators for integral actions, lattices with an isometry, and
//! invariant tables.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use quotcoh_core::engine::{DegreeInvariants, GradedInvariants};
use quotcoh_core::lattice::GLattice;
use quotcoh_core::profile::{cyclic_shift, cyclotomic_companion};
use quotcoh_core::IntMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Numbers of trivial, cyclotomic and regular summands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Summands {
    pub trivial: usize,
    pub cyclotomic: usize,
    pub regular: usize,
}

impl Summands {
    pub fn rank(&self, p: u64) -> usize {
        let p = p as usize;
        self.trivial + (p - 1) * self.cyclotomic + p * self.regular
    }
}

pub fn block_action(p: u64, s: Summands) -> IntMatrix {
    let mut blocks = Vec::new();
    blocks.extend((0..s.trivial).map(|_| IntMatrix::identity(1)));
    blocks.extend((0..s.cyclotomic).map(|_| cyclotomic_companion(p)));
    blocks.extend((0..s.regular).map(|_| cyclic_shift(p as usize)));
    IntMatrix::block_diag(&blocks)
}

/// A product of random elementary operations, with its inverse.
pub fn unimodular(n: usize, steps: usize, rng: &mut impl Rng) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    if n < 2 {
        return (u, inv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        // u <- E u with E = 1 + c e_ij, inv <- inv E^-1
        for col in 0..n {
            let v = &u[(j, col)] * &c;
            u[(i, col)] += v;
        }
        for row in 0..n {
            let v = &inv[(row, i)] * &c;
            inv[(row, j)] -= v;
        }
    }
    (u, inv)
}

pub fn random_summands(p: u64, max_rank: usize, rng: &mut impl Rng) -> Summands {
    loop {
        let s = Summands {
            trivial: rng.gen_range(0..4),
            cyclotomic: rng.gen_range(0..3),
            regular: rng.gen_range(0..3),
        };
        if s.cyclotomic + s.regular > 0 && s.rank(p) <= max_rank {
            return s;
        }
    }
}

/// An integral matrix of exact order `p` with known summands, conjugated by
/// a random unimodular matrix.
pub fn order_p_action(p: u64, max_rank: usize, rng: &mut impl Rng) -> (IntMatrix, Summands) {
    let s = random_summands(p, max_rank, rng);
    let a = block_action(p, s);
    let (u, ui) = unimodular(a.rows(), 3 * a.rows(), rng);
    (u.mul(&a).mul(&ui), s)
}

/// A positive definite lattice with an isometry of order `p`, built by
/// averaging a random positive definite form over the group.
pub fn glattice(p: u64, max_rank: usize, rng: &mut impl Rng) -> (GLattice, Summands) {
    let (a, s) = order_p_action(p, max_rank, rng);
    let n = a.rows();
    let (d, _) = unimodular(n, n, rng);
    let base = d.transpose().mul(&d);
    let mut gram = IntMatrix::zeros(n, n);
    let mut power = IntMatrix::identity(n);
    for _ in 0..p {
        gram = gram.add(&power.transpose().mul(&base).mul(&power));
        power = power.mul(&a);
    }
    let gl = GLattice::new(gram, a, p).expect("averaged form is invariant and definite");
    (gl, s)
}

/// An invariant table with random counts and random `p`-torsion.
pub fn graded_invariants(p: u64, n: usize, rng: &mut impl Rng) -> GradedInvariants {
    let degrees = (0..=2 * n)
        .map(|k| {
            let mut d = DegreeInvariants::torsion_free(k, p, rng.gen_range(0..4), rng.gen_range(0..3), rng.gen_range(0..3));
            if k > 0 {
                let mut t = BTreeMap::new();
                for _ in 0..rng.gen_range(0..3) {
                    *t.entry(rng.gen_range(1..=p as u32)).or_insert(0) += 1;
                }
                d.l_qt = t;
            }
            d
        })
        .collect();
    GradedInvariants::new(p, n, rng.gen_range(0..30), degrees).expect("well-formed random table")
}
