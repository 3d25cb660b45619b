//! Integral lattices, lattices with an isometry of prime order, and the
//! constructions used to describe quotient lattices.
//!
//! Vectors are coordinate rows with respect to the lattice basis. An action
//! matrix `A` acts on coordinate columns, so `x -> A x`, and is an isometry
//! when `Aᵀ G A = G`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    kernel_saturated, quotient_group, relative_quotient, require_prime, row_basis,
    smith_normal_form, IntMatrix,
};
use crate::profile::jordan_profile;

/// A non-degenerate integral symmetric bilinear form on `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    gram: IntMatrix,
}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if gram.det().is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(Lattice { gram })
    }

    pub fn from_i64(n: usize, entries: &[i64]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(n, n, entries))
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// `L(c)`: the same group with the form multiplied by `c`.
    pub fn scaled(&self, c: i64) -> Result<Lattice> {
        Lattice::new(self.gram.scale(&BigInt::from(c)))
    }

    pub fn pairing(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                acc += xi * &self.gram[(i, j)] * yj;
            }
        }
        acc
    }
}

pub fn direct_sum(parts: &[Lattice]) -> Lattice {
    let grams: Vec<IntMatrix> = parts.iter().map(|l| l.gram.clone()).collect();
    Lattice { gram: IntMatrix::block_diag(&grams) }
}

pub fn discriminant(l: &Lattice) -> BigInt {
    l.gram.det().abs()
}

/// Elementary divisors of `L^∨ / L`.
pub fn discriminant_group(l: &Lattice) -> Vec<BigInt> {
    smith_normal_form(&l.gram).torsion()
}

/// `(n_plus, n_minus)` by exact congruence diagonalisation over `Q`.
pub fn signature(l: &Lattice) -> Result<(usize, usize)> {
    signature_of(&l.gram)
}

fn signature_of(gram: &IntMatrix) -> Result<(usize, usize)> {
    let n = gram.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from_integer(gram[(i, j)].clone())).collect())
        .collect();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                swap_sym(&mut a, k, i);
            } else {
                // every remaining diagonal entry vanishes: e_i + e_j has norm 2 a_ij
                let pair = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero());
                let Some((i, j)) = pair else { return Err(Error::Degenerate) };
                swap_sym(&mut a, k, i);
                add_sym(&mut a, k, j);
            }
        }
        eliminate(&mut a, k, &mut pos, &mut neg);
    }
    Ok((pos, neg))
}

fn swap_sym(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// basis vector k -> e_k + e_j; the new diagonal is 2 a_kj when a_kk = a_jj = 0
fn add_sym(a: &mut [Vec<BigRational>], k: usize, j: usize) {
    let n = a.len();
    for c in 0..n {
        let v = a[j][c].clone();
        a[k][c] += v;
    }
    for r in 0..n {
        let v = a[r][j].clone();
        a[r][k] += v;
    }
}

fn eliminate(a: &mut [Vec<BigRational>], k: usize, pos: &mut usize, neg: &mut usize) {
    let n = a.len();
    let pivot = a[k][k].clone();
    if pivot.is_positive() {
        *pos += 1;
    } else {
        *neg += 1;
    }
    for i in k + 1..n {
        if a[i][k].is_zero() {
            continue;
        }
        let f = &a[i][k] / &pivot;
        for j in k..n {
            let v = &f * &a[k][j];
            a[i][j] -= v;
        }
    }
    for i in k + 1..n {
        a[k][i] = BigRational::zero();
        a[i][k] = BigRational::zero();
    }
}

pub fn is_even(l: &Lattice) -> bool {
    (0..l.rank()).all(|i| l.gram[(i, i)].is_even())
}

/// The invariants by which lattices are compared throughout the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeInvariants {
    pub rank: usize,
    pub signature: (usize, usize),
    pub discriminant_group: Vec<BigInt>,
    pub even: bool,
}

pub fn invariants(l: &Lattice) -> Result<LatticeInvariants> {
    Ok(LatticeInvariants {
        rank: l.rank(),
        signature: signature(l)?,
        discriminant_group: discriminant_group(l),
        even: is_even(l),
    })
}

/// Gram matrix of the sublattice spanned by the rows of `basis`.
pub fn lattice_in_basis(l: &Lattice, basis: &IntMatrix) -> Result<Lattice> {
    Lattice::new(basis.mul(&l.gram).mul(&basis.transpose()))
}

/// `L^∨(n)`, i.e. the form `n G⁻¹`; fails unless it is integral.
pub fn dual_scaled(l: &Lattice, n: i64) -> Result<Lattice> {
    let det = l.gram.det();
    let adj = l.gram.adjugate().scale(&BigInt::from(n));
    let mut out = IntMatrix::zeros(l.rank(), l.rank());
    for i in 0..l.rank() {
        for j in 0..l.rank() {
            let (q, r) = adj[(i, j)].div_rem(&det);
            if !r.is_zero() {
                return Err(Error::NonIntegral {
                    i,
                    j,
                    value: format!("{}/{}", adj[(i, j)], det),
                });
            }
            out[(i, j)] = q;
        }
    }
    Lattice::new(out)
}

/// Standard Gram matrices, positive definite for root lattices, times `scale`.
///
/// Accepted names: `U`, `A<n>`, `E6`, `E7`, `E8`, `Lambda7`, `L17`,
/// `rank1(<d>)` and `sym2(<a>,<b>,<c>)` for `[[a, b], [b, c]]`.
pub fn named_lattice(name: &str, scale: i64) -> Result<Lattice> {
    let unknown = || Error::UnknownLattice(name.to_string());
    let gram = match name {
        "U" => IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]),
        "E6" => dynkin_e(6),
        "E7" => dynkin_e(7),
        "E8" => dynkin_e(8),
        "Lambda7" => IntMatrix::from_i64(2, 2, &[4, -3, -3, 4]),
        "L17" => IntMatrix::from_i64(4, 4, &[-2, 1, 0, 1, 1, -2, 0, 0, 0, 0, -2, 1, 1, 0, 1, -4]),
        _ => {
            if let Some(n) = name.strip_prefix('A') {
                let n: usize = n.parse().map_err(|_| unknown())?;
                if n == 0 {
                    return Err(unknown());
                }
                dynkin_a(n)
            } else if let Some(args) = parse_call(name, "rank1") {
                let [d] = args[..] else { return Err(unknown()) };
                IntMatrix::from_i64(1, 1, &[d])
            } else if let Some(args) = parse_call(name, "sym2") {
                let [a, b, c] = args[..] else { return Err(unknown()) };
                IntMatrix::from_i64(2, 2, &[a, b, b, c])
            } else {
                return Err(unknown());
            }
        }
    };
    Lattice::new(gram.scale(&BigInt::from(scale)))
}

fn parse_call(name: &str, head: &str) -> Option<Vec<i64>> {
    let inner = name.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|s| s.trim().parse().ok()).collect()
}

fn dynkin_a(n: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = BigInt::from(2);
        if i + 1 < n {
            m[(i, i + 1)] = BigInt::from(-1);
            m[(i + 1, i)] = BigInt::from(-1);
        }
    }
    m
}

/// A chain of `n - 1` nodes with one extra node attached at position `n - 4`.
fn dynkin_e(n: usize) -> IntMatrix {
    let mut m = dynkin_a(n - 1);
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            out[(i, j)] = m[(i, j)].clone();
        }
    }
    m = out;
    let branch = n - 4;
    m[(n - 1, n - 1)] = BigInt::from(2);
    m[(n - 1, branch)] = BigInt::from(-1);
    m[(branch, n - 1)] = BigInt::from(-1);
    m
}

/// A lattice with an isometry of order `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GLattice {
    lattice: Lattice,
    action: IntMatrix,
    p: u64,
}

impl GLattice {
    pub fn new(gram: IntMatrix, action: IntMatrix, p: u64) -> Result<Self> {
        let gl = Self::build(gram, action, p)?;
        if gl.action.is_identity() {
            return Err(Error::IdentityAction);
        }
        Ok(gl)
    }

    /// The identity action, which must be asked for explicitly.
    pub fn trivial(gram: IntMatrix, p: u64) -> Result<Self> {
        let n = gram.rows();
        Self::build(gram, IntMatrix::identity(n), p)
    }

    fn build(gram: IntMatrix, action: IntMatrix, p: u64) -> Result<Self> {
        require_prime(p)?;
        let lattice = Lattice::new(gram)?;
        if action.rows() != lattice.rank() || action.cols() != lattice.rank() {
            return Err(Error::Dimension(format!(
                "action is {}x{} on a lattice of rank {}",
                action.rows(),
                action.cols(),
                lattice.rank()
            )));
        }
        if action.transpose().mul(&lattice.gram).mul(&action) != lattice.gram {
            return Err(Error::NotIsometry);
        }
        if !action.pow(p as u32).is_identity() {
            return Err(Error::NotOrderP { p, detail: "A^p is not the identity".into() });
        }
        Ok(GLattice { lattice, action, p })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.lattice.gram
    }

    pub fn action(&self) -> &IntMatrix {
        &self.action
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn is_trivial(&self) -> bool {
        self.action.is_identity()
    }

    /// `σ = 1 + A + ... + A^(p-1)`.
    pub fn sigma(&self) -> IntMatrix {
        let n = self.rank();
        let mut acc = IntMatrix::zeros(n, n);
        let mut power = IntMatrix::identity(n);
        for _ in 0..self.p {
            acc = acc.add(&power);
            power = power.mul(&self.action);
        }
        acc
    }

    fn minus_one(&self) -> IntMatrix {
        self.action.sub(&IntMatrix::identity(self.rank()))
    }

    /// Basis rows of the invariant sublattice.
    pub fn invariant_basis(&self) -> IntMatrix {
        kernel_saturated(&self.minus_one())
    }

    /// Basis rows of `Ker σ`.
    pub fn norm_kernel_basis(&self) -> IntMatrix {
        kernel_saturated(&self.sigma())
    }

    /// Basis rows of `σ(T)`.
    pub fn norm_image_basis(&self) -> IntMatrix {
        row_basis(&self.sigma().transpose())
    }

    fn difference_image_basis(&self) -> IntMatrix {
        row_basis(&self.minus_one().transpose())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BnsInvariants {
    pub l_plus: u64,
    pub l_minus: u64,
    pub l_p: u64,
}

/// `(ℓ_+, ℓ_-, ℓ_p)` of the underlying `Z[G]`-module.
///
/// `ℓ_p` is read off `T / (T^G ⊕ Ker σ)`, which is elementary abelian of
/// exponent `p`; the result is cross-checked against the mod-`p` profile.
pub fn bns_invariants(gl: &GLattice) -> Result<BnsInvariants> {
    let p = gl.p;
    let n = gl.rank() as u64;
    let inv = gl.invariant_basis();
    let ker = gl.norm_kernel_basis();
    let stacked = IntMatrix::vstack(&inv, &ker);
    if stacked.rows() as u64 != n {
        return Err(Error::Inconsistent(format!(
            "invariants ({}) and Ker σ ({}) do not fill rank {n}",
            inv.rows(),
            ker.rows()
        )));
    }
    let divisors = quotient_group(&stacked, n as usize)?;
    let pb = BigInt::from(p);
    if let Some(d) = divisors.iter().find(|d| **d != pb) {
        return Err(Error::Inconsistent(format!("elementary divisor {d} in T/(T^G ⊕ Ker σ)")));
    }
    let l_p = divisors.len() as u64;
    let l_plus = (inv.rows() as u64)
        .checked_sub(l_p)
        .ok_or_else(|| Error::Inconsistent("ℓ_p exceeds the invariant rank".into()))?;
    let rest = n
        .checked_sub(l_plus + p * l_p)
        .ok_or_else(|| Error::Inconsistent("rank smaller than ℓ_+ + p ℓ_p".into()))?;
    if rest % (p - 1) != 0 {
        return Err(Error::Inconsistent(format!("{rest} is not divisible by p - 1")));
    }
    let l_minus = rest / (p - 1);

    let prof = jordan_profile(&gl.action, p)?;
    let pq = p as u32;
    let agrees = if p == 2 {
        prof.count(1) == l_plus + l_minus && prof.count(2) == l_p
    } else {
        prof.count(1) == l_plus
            && prof.count(pq - 1) == l_minus
            && prof.count(pq) == l_p
            && prof.middle_block().is_none()
    };
    if !agrees {
        return Err(Error::Inconsistent(format!(
            "lattice invariants ({l_plus}, {l_minus}, {l_p}) disagree with {prof:?}"
        )));
    }
    Ok(BnsInvariants { l_plus, l_minus, l_p })
}

/// `H^i(G, T)`: a free rank for `i = 0`, otherwise an elementary abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl CohomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Group cohomology, computed from `(ℓ_+, ℓ_-)` and independently as
/// `Ker σ / Im(φ - 1)` (odd degrees) or `Ker(φ - 1) / Im σ` (even degrees).
/// The two must agree.
pub fn group_cohomology(gl: &GLattice, i: u32) -> Result<CohomologyGroup> {
    if i == 0 {
        return Ok(CohomologyGroup { free_rank: gl.invariant_basis().rows(), torsion: Vec::new() });
    }
    let bns = bns_invariants(gl)?;
    let count = if i % 2 == 1 { bns.l_minus } else { bns.l_plus };
    let formula = CohomologyGroup { free_rank: 0, torsion: vec![BigInt::from(gl.p); count as usize] };
    let direct = group_cohomology_direct(gl, i)?;
    if direct != formula {
        return Err(Error::Inconsistent(format!(
            "H^{i}(G, T): formula gives {formula:?}, kernel/image gives {direct:?}"
        )));
    }
    Ok(formula)
}

/// Only the kernel/image computation, for `i > 0`.
pub fn group_cohomology_direct(gl: &GLattice, i: u32) -> Result<CohomologyGroup> {
    if i == 0 {
        return Ok(CohomologyGroup { free_rank: gl.invariant_basis().rows(), torsion: Vec::new() });
    }
    let (outer, inner) = if i % 2 == 1 {
        (gl.norm_kernel_basis(), gl.difference_image_basis())
    } else {
        (gl.invariant_basis(), gl.norm_image_basis())
    };
    let (free_rank, torsion) = relative_quotient(&outer, &inner)?;
    Ok(CohomologyGroup { free_rank, torsion })
}

/// The norm image `σ(T)` with the form `B / p`.
pub fn pushforward_quotient_lattice(gl: &GLattice) -> Result<Lattice> {
    let basis = gl.norm_image_basis();
    let raw = basis.mul(gl.gram()).mul(&basis.transpose());
    let pb = BigInt::from(gl.p);
    let mut gram = IntMatrix::zeros(raw.rows(), raw.cols());
    for i in 0..raw.rows() {
        for j in 0..raw.cols() {
            let (q, r) = raw[(i, j)].div_rem(&pb);
            if !r.is_zero() {
                return Err(Error::NonIntegral { i, j, value: format!("{}/{}", raw[(i, j)], gl.p) });
            }
            gram[(i, j)] = q;
        }
    }
    Lattice::new(gram)
}

/// A symmetric non-degenerate form with rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalLattice {
    gram: Vec<Vec<BigRational>>,
}

impl RationalLattice {
    pub fn new(gram: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("gram matrix must be square".into()));
        }
        if (0..n).any(|i| (0..i).any(|j| gram[i][j] != gram[j][i])) {
            return Err(Error::NotSymmetric);
        }
        let rl = RationalLattice { gram };
        let (_, l) = rl.clear_denominators();
        if l.det().is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(rl)
    }

    /// `lattice / d`.
    pub fn from_scaled(l: &Lattice, d: i64) -> Result<Self> {
        let dq = BigInt::from(d);
        let n = l.rank();
        Self::new(
            (0..n)
                .map(|i| (0..n).map(|j| BigRational::new(l.gram[(i, j)].clone(), dq.clone())).collect())
                .collect(),
        )
    }

    pub fn gram(&self) -> &[Vec<BigRational>] {
        &self.gram
    }

    fn clear_denominators(&self) -> (BigInt, IntMatrix) {
        let lcm = self.gram.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let n = self.gram.len();
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = (&self.gram[i][j] * BigRational::from_integer(lcm.clone())).to_integer();
            }
        }
        (lcm, m)
    }
}

/// The unique positive `c` with `c · gram` integral and primitive.
pub fn rescale_to_primitive(rl: &RationalLattice) -> (BigRational, Lattice) {
    let (lcm, m) = rl.clear_denominators();
    let g = m.gcd_of_entries();
    let c = BigRational::new(lcm, g.clone());
    let mut out = IntMatrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out[(i, j)] = &m[(i, j)] / &g;
        }
    }
    (c, Lattice { gram: out })
}

/// An overlattice together with its basis in the coordinates of the base.
#[derive(Clone, Debug)]
pub struct Overlattice {
    pub lattice: Lattice,
    pub basis: Vec<Vec<BigRational>>,
    pub index: BigInt,
}

pub fn overlattice_from_glue(base: &Lattice, glue: &[Vec<BigRational>]) -> Result<Lattice> {
    Ok(overlattice_with_basis(base, glue)?.lattice)
}

/// The lattice generated by `base` and rational `glue` vectors (in base
/// coordinates). Every pairing involving glue must be integral.
pub fn overlattice_with_basis(base: &Lattice, glue: &[Vec<BigRational>]) -> Result<Overlattice> {
    let n = base.rank();
    if let Some(v) = glue.iter().find(|v| v.len() != n) {
        return Err(Error::Dimension(format!("glue vector of length {} for rank {n}", v.len())));
    }
    let gram_q: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from_integer(base.gram[(i, j)].clone())).collect())
        .collect();
    let pair = |x: &[BigRational], y: &[BigRational]| -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                acc += &x[i] * &gram_q[i][j] * &y[j];
            }
        }
        acc
    };
    let unit = |k: usize| -> Vec<BigRational> {
        (0..n).map(|j| if j == k { BigRational::one() } else { BigRational::zero() }).collect()
    };
    for (gi, v) in glue.iter().enumerate() {
        for k in 0..n {
            let x = pair(v, &unit(k));
            if !x.is_integer() {
                return Err(Error::NonIntegral { i: n + gi, j: k, value: x.to_string() });
            }
        }
        for (gj, w) in glue.iter().enumerate().take(gi + 1) {
            let x = pair(v, w);
            if !x.is_integer() {
                return Err(Error::NonIntegral { i: n + gi, j: n + gj, value: x.to_string() });
            }
        }
    }

    let denom = glue.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut gens = IntMatrix::zeros(n + glue.len(), n);
    for i in 0..n {
        gens[(i, i)] = denom.clone();
    }
    for (gi, v) in glue.iter().enumerate() {
        for j in 0..n {
            gens[(n + gi, j)] = (&v[j] * BigRational::from_integer(denom.clone())).to_integer();
        }
    }
    let basis_int = row_basis(&gens);
    let basis: Vec<Vec<BigRational>> = (0..basis_int.rows())
        .map(|i| (0..n).map(|j| BigRational::new(basis_int[(i, j)].clone(), denom.clone())).collect())
        .collect();
    let mut gram = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let x = pair(&basis[i], &basis[j]);
            if !x.is_integer() {
                return Err(Error::NonIntegral { i, j, value: x.to_string() });
            }
            gram[(i, j)] = x.to_integer();
        }
    }
    let index = num_traits::pow(denom, n) / basis_int.det().abs();
    Ok(Overlattice { lattice: Lattice::new(gram)?, basis, index })
}

/// `C = (2m)! p^(2m-1) / (m! 2^m c^m)`.
pub fn fujiki_constant(p: u64, m: u32, c: &BigRational) -> Result<BigRational> {
    require_prime(p)?;
    if m < 2 {
        return Err(Error::OutOfRange(format!("m = {m} must be at least 2")));
    }
    let fact = |k: u32| (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i));
    let num = fact(2 * m) * num_traits::pow(BigInt::from(p), (2 * m - 1) as usize);
    let den = fact(m) * num_traits::pow(BigInt::from(2), m as usize);
    Ok(BigRational::new(num, den) / num_traits::pow(c.clone(), m as usize))
}
