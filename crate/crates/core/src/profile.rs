//! Jordan profiles of order-`p` actions over `F_p`.
//!
//! Over `F_p` the group ring of a cyclic group of order `p` is `F_p[X]/(X-1)^p`,
//! so every finite module is a sum of unipotent Jordan blocks `N_q` with
//! `1 <= q <= p`. A [`JordanProfile`] records how many blocks of each size
//! occur.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{require_prime, IntMatrix, ModpMatrix};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JordanProfile {
    p: u64,
    // counts[q - 1] = number of blocks of size q
    counts: Vec<u64>,
}

impl JordanProfile {
    pub fn zero(p: u64) -> Result<Self> {
        require_prime(p)?;
        Ok(JordanProfile { p, counts: vec![0; p as usize] })
    }

    /// Profile from `(q, count)` pairs. Repeated sizes add up.
    pub fn new(p: u64, blocks: &[(u32, u64)]) -> Result<Self> {
        let mut prof = Self::zero(p)?;
        for &(q, c) in blocks {
            if q == 0 || u64::from(q) > p {
                return Err(Error::OutOfRange(format!("block size {q} for p = {p}")));
            }
            prof.counts[q as usize - 1] += c;
        }
        Ok(prof)
    }

    /// `N_1^a ⊕ N_p^b`, the shape of every module met in the K3 computations.
    pub fn trivial_plus_free(p: u64, a: u64, b: u64) -> Result<Self> {
        Self::new(p, &[(1, a), (p as u32, b)])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Number of blocks of size `q`; zero outside `1..=p`.
    pub fn count(&self, q: u32) -> u64 {
        if q == 0 {
            return 0;
        }
        self.counts.get(q as usize - 1).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn dimension(&self) -> u64 {
        self.counts.iter().enumerate().map(|(i, &c)| (i as u64 + 1) * c).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// Non-zero `(q, count)` pairs in increasing `q`.
    pub fn blocks(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, &c)| (i as u32 + 1, c))
    }

    /// Largest `q` with `2 <= q <= p-2` and a non-zero count.
    pub fn middle_block(&self) -> Option<(u32, u64)> {
        let p = self.p as u32;
        (2..p.saturating_sub(1)).rev().map(|q| (q, self.count(q))).find(|&(_, c)| c > 0)
    }

    fn scaled(&self, k: u64) -> Self {
        JordanProfile { p: self.p, counts: self.counts.iter().map(|c| c * k).collect() }
    }

    fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    /// Block-diagonal matrix of unipotent Jordan blocks realising this profile.
    pub fn representative(&self) -> ModpMatrix {
        let mut blocks = Vec::new();
        for (q, c) in self.blocks() {
            for _ in 0..c {
                blocks.push(jordan_block(self.p, q as usize));
            }
        }
        ModpMatrix::block_diag(self.p, &blocks)
    }
}

impl fmt::Debug for JordanProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JordanProfile(p={}", self.p)?;
        for (q, c) in self.blocks() {
            write!(f, ", N{q}^{c}")?;
        }
        write!(f, ")")
    }
}

/// `I + (superdiagonal of ones)` of size `q` over `F_p`.
pub fn jordan_block(p: u64, q: usize) -> ModpMatrix {
    let mut m = ModpMatrix::identity(p, q);
    for i in 0..q.saturating_sub(1) {
        m.set(i, i + 1, 1);
    }
    m
}

pub fn jordan_profile(action: &IntMatrix, p: u64) -> Result<JordanProfile> {
    require_prime(p)?;
    if !action.is_square() {
        return Err(Error::Dimension("action matrix must be square".into()));
    }
    jordan_profile_modp(&ModpMatrix::reduce(action, p))
}

/// Profile of a matrix already reduced mod `p`.
///
/// Blocks of size at least `q` number `rank(N^(q-1)) - rank(N^q)` with `N = A - I`.
pub fn jordan_profile_modp(a: &ModpMatrix) -> Result<JordanProfile> {
    let p = a.modulus();
    require_prime(p)?;
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::Dimension("action matrix must be square".into()));
    }
    let nil = a.minus_identity();
    let mut ranks = Vec::with_capacity(p as usize + 1);
    ranks.push(n);
    let mut power = ModpMatrix::identity(p, n);
    for _ in 0..p {
        power = power.mul(&nil);
        let r = power.rank();
        ranks.push(r);
        if r == 0 {
            break;
        }
    }
    if *ranks.last().unwrap() != 0 {
        return Err(Error::NotOrderP { p, detail: "(A - I)^p is not zero mod p".into() });
    }
    ranks.resize(p as usize + 2, 0);
    let at_least: Vec<usize> = (1..=p as usize + 1).map(|q| ranks[q - 1] - ranks[q]).collect();
    let counts = (0..p as usize).map(|i| (at_least[i] - at_least[i + 1]) as u64).collect();
    Ok(JordanProfile { p, counts })
}

/// `dim_F H^i(G, M)` for the `F_p[G]`-module `M` with this profile.
pub fn cohomology_dim(prof: &JordanProfile, i: u32) -> u64 {
    let top = if i == 0 { prof.p as u32 } else { prof.p as u32 - 1 };
    (1..=top).map(|q| prof.count(q)).sum()
}

pub fn direct_sum(a: &JordanProfile, b: &JordanProfile) -> Result<JordanProfile> {
    if a.p != b.p {
        return Err(Error::PrimeMismatch(a.p, b.p));
    }
    let mut out = a.clone();
    out.add_assign(b);
    Ok(out)
}

pub fn tensor(a: &JordanProfile, b: &JordanProfile) -> Result<JordanProfile> {
    ProfileAlgebra::new(a.p)?.tensor(a, b)
}

pub fn sym_power(a: &JordanProfile, k: u32) -> Result<JordanProfile> {
    ProfileAlgebra::new(a.p)?.sym_power(a, k)
}

/// Tensor products and symmetric powers of profiles over a fixed prime,
/// memoised on single blocks.
///
/// Everything is reduced to products of single blocks. `N_1` is the unit,
/// `N_p` is free (so `N_p ⊗ M` is free of rank `dim M`), and the symmetric
/// powers of `N_p` are permutation modules on multisets. The remaining cases
/// are computed from explicit matrices.
#[derive(Debug, Clone)]
pub struct ProfileAlgebra {
    p: u64,
    tensor_memo: BTreeMap<(u32, u32), JordanProfile>,
    sym_memo: BTreeMap<(u32, u32), JordanProfile>,
}

impl ProfileAlgebra {
    pub fn new(p: u64) -> Result<Self> {
        require_prime(p)?;
        Ok(ProfileAlgebra { p, tensor_memo: BTreeMap::new(), sym_memo: BTreeMap::new() })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn check(&self, a: &JordanProfile) -> Result<()> {
        if a.p != self.p {
            return Err(Error::PrimeMismatch(self.p, a.p));
        }
        Ok(())
    }

    fn single(&self, q: u32, count: u64) -> JordanProfile {
        let mut z = JordanProfile { p: self.p, counts: vec![0; self.p as usize] };
        z.counts[q as usize - 1] = count;
        z
    }

    fn unit(&self) -> JordanProfile {
        self.single(1, 1)
    }

    fn block_tensor(&mut self, a: u32, b: u32) -> JordanProfile {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let p = self.p as u32;
        if a == 1 {
            return self.single(b, 1);
        }
        if b == p {
            return self.single(p, u64::from(a));
        }
        if let Some(hit) = self.tensor_memo.get(&(a, b)) {
            return hit.clone();
        }
        let m = jordan_block(self.p, a as usize).kronecker(&jordan_block(self.p, b as usize));
        let prof = jordan_profile_modp(&m).expect("tensor of unipotent blocks is unipotent");
        self.tensor_memo.insert((a, b), prof.clone());
        prof
    }

    pub fn tensor(&mut self, a: &JordanProfile, b: &JordanProfile) -> Result<JordanProfile> {
        self.check(a)?;
        self.check(b)?;
        let mut out = self.single(1, 0);
        for (qa, ca) in a.blocks() {
            for (qb, cb) in b.blocks() {
                out.add_assign(&self.block_tensor(qa, qb).scaled(ca * cb));
            }
        }
        Ok(out)
    }

    /// `Sym^k(N_q)`.
    fn block_sym(&mut self, q: u32, k: u32) -> JordanProfile {
        if k == 0 || q == 1 {
            return self.unit();
        }
        if k == 1 {
            return self.single(q, 1);
        }
        let p = self.p as u32;
        if q == p {
            // permutation module on multisets of size k; orbits have size 1
            // or p and only the balanced multiset is fixed, when p | k
            let total = binomial(u64::from(p + k - 1), u64::from(k));
            let fixed = u64::from(k % p == 0);
            let mut out = self.single(1, fixed);
            out.counts[p as usize - 1] = (total - fixed) / u64::from(p);
            return out;
        }
        if let Some(hit) = self.sym_memo.get(&(q, k)) {
            return hit.clone();
        }
        let m = sym_power_matrix(&jordan_block(self.p, q as usize), k as usize);
        let prof = jordan_profile_modp(&m).expect("symmetric power of a unipotent block is unipotent");
        self.sym_memo.insert((q, k), prof);
        self.sym_memo[&(q, k)].clone()
    }

    /// The graded pieces `Sym^0(a), ..., Sym^k(a)`.
    pub fn sym_series(&mut self, a: &JordanProfile, k: u32) -> Result<Vec<JordanProfile>> {
        self.check(a)?;
        let mut acc: Vec<JordanProfile> = (0..=k).map(|j| self.single(1, u64::from(j == 0))).collect();
        for (q, c) in a.blocks() {
            let series: Vec<JordanProfile> = if q == 1 {
                // Sym^j of a trivial module of dimension c
                (0..=k).map(|j| self.single(1, binomial(c + u64::from(j) - 1, u64::from(j)))).collect()
            } else {
                let one: Vec<JordanProfile> = (0..=k).map(|j| self.block_sym(q, j)).collect();
                let mut s = one.clone();
                for _ in 1..c {
                    s = self.convolve(&s, &one);
                }
                s
            };
            acc = self.convolve(&acc, &series);
        }
        Ok(acc)
    }

    pub fn sym_power(&mut self, a: &JordanProfile, k: u32) -> Result<JordanProfile> {
        Ok(self.sym_series(a, k)?.pop().expect("series has k + 1 terms"))
    }

    fn convolve(&mut self, x: &[JordanProfile], y: &[JordanProfile]) -> Vec<JordanProfile> {
        let k = x.len().min(y.len());
        let mut out: Vec<JordanProfile> = (0..k).map(|_| self.single(1, 0)).collect();
        for i in 0..k {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..k - i {
                if y[j].is_zero() {
                    continue;
                }
                let t = self.tensor(&x[i], &y[j]).expect("same prime");
                out[i + j].add_assign(&t);
            }
        }
        out
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc as u64
}

/// Matrix of the induced action on degree-`k` monomials.
///
/// Columns of `m` are the images of basis vectors; monomials are ordered
/// lexicographically by exponent vector.
pub fn sym_power_matrix(m: &ModpMatrix, k: usize) -> ModpMatrix {
    let p = m.modulus();
    let n = m.rows();
    let monomials = monomials(n, k);
    let index: BTreeMap<&[u32], usize> =
        monomials.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let mut out = ModpMatrix::zeros(p, monomials.len(), monomials.len());
    for (col, e) in monomials.iter().enumerate() {
        let mut poly: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        poly.insert(vec![0; n], 1);
        for (var, &exp) in e.iter().enumerate() {
            for _ in 0..exp {
                let mut next: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
                for (mono, coef) in &poly {
                    for j in 0..n {
                        let a = m.get(j, var);
                        if a == 0 {
                            continue;
                        }
                        let mut mm = mono.clone();
                        mm[j] += 1;
                        let slot = next.entry(mm).or_insert(0);
                        *slot = (*slot + coef * a) % p;
                    }
                }
                poly = next;
            }
        }
        for (mono, coef) in poly {
            if coef != 0 {
                out.add_to(index[mono.as_slice()], col, coef);
            }
        }
    }
    out
}

fn monomials(n: usize, k: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(n, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, k as u32, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Counts read off an integral action of exact order `p`.
///
/// For odd `p`, `r`, `s`, `t` are the numbers of free summands, summands
/// isomorphic to the cyclotomic ring, and trivial summands. For `p = 2` the
/// last two both reduce to `N_1` and only their sum is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurtisReiner {
    pub r: u64,
    pub s: Option<u64>,
    pub t: Option<u64>,
    pub s_plus_t: u64,
}

pub fn curtis_reiner_check(action: &IntMatrix, p: u64) -> Result<CurtisReiner> {
    require_prime(p)?;
    if !action.is_square() {
        return Err(Error::Dimension("action matrix must be square".into()));
    }
    if !action.pow(p as u32).is_identity() {
        return Err(Error::NotOrderP { p, detail: "A^p is not the identity over Z".into() });
    }
    let prof = jordan_profile(action, p)?;
    if let Some((q, count)) = prof.middle_block() {
        return Err(Error::MiddleBlocks { q, count });
    }
    let r = prof.count(p as u32);
    if p == 2 {
        return Ok(CurtisReiner { r, s: None, t: None, s_plus_t: prof.count(1) });
    }
    let s = prof.count(p as u32 - 1);
    let t = prof.count(1);
    Ok(CurtisReiner { r, s: Some(s), t: Some(t), s_plus_t: s + t })
}

/// Companion matrix of `1 + X + ... + X^(p-1)`: multiplication by `X` on
/// `Z[X]/(Φ_p)` in the basis `1, X, ..., X^(p-2)`.
pub fn cyclotomic_companion(p: u64) -> IntMatrix {
    let n = p as usize - 1;
    let mut m = IntMatrix::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = BigInt::one();
    }
    for i in 0..n {
        m[(i, n - 1)] = BigInt::from(-1);
    }
    m
}

/// The `n x n` cyclic shift `e_i -> e_(i+1)`.
pub fn cyclic_shift(n: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        m[((i + 1) % n, i)] = BigInt::one();
    }
    m
}

/// `A` acting as `[[C, a], [0, 1]]` with `C` the cyclotomic companion: an
/// integral lift of `N_p` that is not a permutation module.
pub fn cyclotomic_extension(p: u64, column: &[i64]) -> IntMatrix {
    let n = p as usize - 1;
    assert_eq!(column.len(), n);
    let c = cyclotomic_companion(p);
    let mut m = IntMatrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = c[(i, j)].clone();
        }
        m[(i, n)] = BigInt::from(column[i]);
    }
    m[(n, n)] = BigInt::one();
    m
}
