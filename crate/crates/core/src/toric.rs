//! Simplicial fans, cyclic quotient singularities `C^n / G` and their toric
//! resolutions.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{signature, Lattice};
use crate::linalg::{coordinates, require_prime, row_basis, smith_normal_form, IntMatrix};
use crate::profile::binomial;

fn ray_matrix(rays: &[Vec<i64>]) -> IntMatrix {
    let cols = rays.first().map_or(0, Vec::len);
    let flat: Vec<i64> = rays.iter().flatten().copied().collect();
    IntMatrix::from_i64(rays.len(), cols, &flat)
}

fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// A cone given by its rays, which must be primitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    rays: Vec<Vec<i64>>,
}

impl Cone {
    pub fn new(rays: Vec<Vec<i64>>) -> Result<Self> {
        let dim = rays.first().map_or(0, Vec::len);
        if rays.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension("rays of different lengths".into()));
        }
        if let Some(r) = rays.iter().find(|r| gcd_all(r) != 1) {
            return Err(Error::Invalid(format!("ray {r:?} is not primitive")));
        }
        Ok(Cone { rays })
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn is_simplicial(&self) -> bool {
        smith_normal_form(&ray_matrix(&self.rays)).rank() == self.rays.len()
    }
}

/// The rays span part of a basis of the lattice. Non-simplicial cones are
/// not regular.
pub fn is_regular(c: &Cone) -> bool {
    if c.rays.is_empty() {
        return true;
    }
    let snf = smith_normal_form(&ray_matrix(&c.rays));
    snf.rank() == c.rays.len() && snf.torsion().is_empty()
}

/// A simplicial fan stored by its rays and its maximal cones (as sets of
/// ray indices). Faces are implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Result<Self> {
        if rays.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension(format!("rays must have length {dim}")));
        }
        if let Some(r) = rays.iter().find(|r| gcd_all(r) != 1) {
            return Err(Error::Invalid(format!("ray {r:?} is not primitive")));
        }
        let mut cones = cones;
        for c in &mut cones {
            c.sort_unstable();
            c.dedup();
            if c.iter().any(|&i| i >= rays.len()) {
                return Err(Error::Invalid("cone refers to a missing ray".into()));
            }
        }
        let fan = Fan { dim, rays, cones };
        if let Some(c) = (0..fan.cones.len()).find(|&i| !fan.cone(i).is_simplicial()) {
            return Err(Error::Invalid(format!("cone {c} is not simplicial")));
        }
        Ok(fan)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn maximal_cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> Cone {
        Cone { rays: self.cones[i].iter().map(|&r| self.rays[r].clone()).collect() }
    }

    pub fn is_regular(&self) -> bool {
        (0..self.cones.len()).all(|i| is_regular(&self.cone(i)))
    }

    /// Number of cones of each dimension `0..=dim`, counting all faces.
    pub fn cone_counts(&self) -> Vec<u64> {
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for c in &self.cones {
            for mask in 0u64..(1u64 << c.len()) {
                let face: Vec<usize> =
                    c.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &r)| r).collect();
                faces.insert(face);
            }
        }
        let mut counts = vec![0u64; self.dim + 1];
        for f in faces {
            counts[f.len()] += 1;
        }
        counts
    }

    /// Every maximal cone is full-dimensional and every facet of one lies in
    /// exactly two of them.
    pub fn is_complete(&self) -> bool {
        if self.cones.is_empty() || self.cones.iter().any(|c| c.len() != self.dim) {
            return false;
        }
        let mut facets: alloc::collections::BTreeMap<Vec<usize>, u32> = Default::default();
        for c in &self.cones {
            for skip in 0..c.len() {
                let f: Vec<usize> = c.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &r)| r).collect();
                *facets.entry(f).or_default() += 1;
            }
        }
        facets.values().all(|&n| n == 2)
    }
}

/// `C^n / G` with `G` generated by `diag(ξ^(a_1), ..., ξ^(a_n))`, `ξ` a
/// primitive `p`-th root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSingularity {
    p: u64,
    weights: Vec<u64>,
}

impl CyclicSingularity {
    pub fn new(p: u64, weights: Vec<u64>) -> Result<Self> {
        require_prime(p)?;
        if weights.is_empty() {
            return Err(Error::Invalid("at least one weight is required".into()));
        }
        if let Some(a) = weights.iter().find(|&&a| a == 0 || a >= p) {
            return Err(Error::OutOfRange(format!("weight {a} must lie in 1..{p}")));
        }
        Ok(CyclicSingularity { p, weights })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }
}

/// The positive orthant in the refined lattice `Z^n + Z (a_1, ..., a_n)/p`,
/// rewritten in a basis of that lattice.
pub fn quotient_fan(s: &CyclicSingularity) -> Fan {
    let n = s.weights.len();
    let p = s.p as i64;
    // work in (1/p)-units so the refined lattice is integral
    let mut gens = IntMatrix::zeros(n + 1, n);
    for i in 0..n {
        gens[(i, i)] = BigInt::from(p);
        gens[(n, i)] = BigInt::from(s.weights[i]);
    }
    let basis = row_basis(&gens);
    let unit = IntMatrix::identity(n).scale(&BigInt::from(p));
    let coords = coordinates(&basis, &unit).expect("p e_i lies in the refined lattice");
    let rays = coords.to_i64_rows().expect("small coordinates");
    Fan { dim: n, rays, cones: vec![(0..n).collect()] }
}

/// Barycentric coordinates `λ` of the lattice points of the half-open
/// parallelepiped spanned by the rays of a simplicial cone.
fn parallelepiped_points(rays: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    let k = rays.len();
    let m = ray_matrix(rays);
    // the lattice points of the span, in a basis of Z^n ∩ span
    let sat = crate::linalg::saturate(&m);
    let r = coordinates(&sat, &m).expect("rays lie in their saturation");
    let det = r.det();
    let adj = r.adjugate();
    let snf = smith_normal_form(&r);
    let d: Vec<i64> = snf.diagonal().iter().map(|x| x.to_i64().expect("small index")).collect();
    let mut out = Vec::new();
    let mut y = vec![0i64; k];
    loop {
        // x = y v⁻¹ runs over Z^k / rowspan(R)
        let yrow = IntMatrix::from_i64(1, k, &y);
        let x = yrow.mul(&snf.v_inv);
        let num = x.mul(&adj);
        let lam: Vec<BigRational> = (0..k)
            .map(|i| {
                let q = BigRational::new(num[(0, i)].clone(), det.clone());
                &q - q.floor()
            })
            .collect();
        out.push(lam);
        let mut i = 0;
        while i < k {
            y[i] += 1;
            if y[i] < d[i] {
                break;
            }
            y[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    out
}

/// Stellar subdivisions until every maximal cone is regular.
///
/// A non-regular cone is subdivided at the non-zero point of its fundamental
/// parallelepiped with the smallest coordinate sum. Every cone containing
/// the carrying face of that point is subdivided, so the result is a fan.
pub fn resolve(f: &Fan) -> Fan {
    let mut fan = f.clone();
    while let Some(ci) = (0..fan.cones.len()).find(|&i| !is_regular(&fan.cone(i))) {
        let cone = fan.cones[ci].clone();
        let rays: Vec<Vec<i64>> = cone.iter().map(|&r| fan.rays[r].clone()).collect();
        let best = parallelepiped_points(&rays)
            .into_iter()
            .filter(|l| l.iter().any(|x| !x.is_zero()))
            .min_by(|a, b| {
                let sa: BigRational = a.iter().sum();
                let sb: BigRational = b.iter().sum();
                sa.cmp(&sb).then_with(|| a.cmp(b))
            })
            .expect("a non-regular cone has a non-zero parallelepiped point");
        let mut w = vec![BigRational::zero(); fan.dim];
        for (lam, ray) in best.iter().zip(&rays) {
            for (wj, &rj) in w.iter_mut().zip(ray) {
                *wj += lam * BigRational::from_integer(BigInt::from(rj));
            }
        }
        let w: Vec<i64> = w
            .iter()
            .map(|x| {
                debug_assert!(x.is_integer());
                x.to_integer().to_i64().expect("small ray")
            })
            .collect();
        let support: Vec<usize> =
            cone.iter().zip(&best).filter(|(_, l)| !l.is_zero()).map(|(&r, _)| r).collect();
        let new_ray = fan.rays.len();
        fan.rays.push(w);
        let mut cones = Vec::with_capacity(fan.cones.len() + support.len());
        for c in &fan.cones {
            if support.iter().all(|r| c.contains(r)) {
                for r in &support {
                    let mut nc: Vec<usize> = c.iter().map(|&x| if x == *r { new_ray } else { x }).collect();
                    nc.sort_unstable();
                    cones.push(nc);
                }
            } else {
                cones.push(c.clone());
            }
        }
        fan.cones = cones;
    }
    fan
}

/// A resolved two-dimensional cyclic quotient singularity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceResolution {
    pub rays_added: usize,
    /// Self-intersections of the exceptional curves, in order along the chain.
    pub chain: Vec<i64>,
    pub exceptional_gram: IntMatrix,
    pub det: BigInt,
}

/// Resolves the quotient fan of a surface singularity and reads the chain of
/// exceptional curves off the new rays: `v_(i-1) + v_(i+1) = b_i v_i`.
pub fn resolve_surface(s: &CyclicSingularity) -> Result<SurfaceResolution> {
    if s.weights.len() != 2 {
        return Err(Error::Dimension("surface singularities have two weights".into()));
    }
    let base = quotient_fan(s);
    let fan = resolve(&base);
    // walk the chain of 2-cones starting at the first original ray
    let mut order = vec![0usize];
    let mut prev: Option<usize> = None;
    while order.len() < fan.rays.len() {
        let cur = *order.last().unwrap();
        let next = fan
            .cones
            .iter()
            .filter(|c| c.contains(&cur))
            .flat_map(|c| c.iter().copied())
            .find(|&r| r != cur && Some(r) != prev)
            .ok_or_else(|| Error::Inconsistent("resolved fan is not a chain".into()))?;
        prev = Some(cur);
        order.push(next);
    }
    let mut chain = Vec::new();
    for w in order.windows(3) {
        let (a, b, c) = (&fan.rays[w[0]], &fan.rays[w[1]], &fan.rays[w[2]]);
        let sum = [a[0] + c[0], a[1] + c[1]];
        let k = if b[0] != 0 { sum[0] / b[0] } else { sum[1] / b[1] };
        if sum != [k * b[0], k * b[1]] {
            return Err(Error::Inconsistent("adjacent rays do not satisfy a chain relation".into()));
        }
        chain.push(-k);
    }
    let gram = chain_gram(&chain);
    let det = gram.det();
    Ok(SurfaceResolution { rays_added: fan.rays.len() - 2, chain, exceptional_gram: gram, det })
}

fn chain_gram(chain: &[i64]) -> IntMatrix {
    let r = chain.len();
    let mut g = IntMatrix::zeros(r, r);
    for i in 0..r {
        g[(i, i)] = BigInt::from(chain[i]);
        if i + 1 < r {
            g[(i, i + 1)] = BigInt::one();
            g[(i + 1, i)] = BigInt::one();
        }
    }
    g
}

/// Hirzebruch-Jung continued fraction `p/a = [b_1, ..., b_r]`, the chain
/// `(-b_1, ..., -b_r)` and its intersection matrix.
pub fn hj_resolution(p: u64, a: u64) -> Result<(Vec<i64>, IntMatrix)> {
    require_prime(p)?;
    if a == 0 || a >= p {
        return Err(Error::OutOfRange(format!("weight {a} must lie in 1..{p}")));
    }
    let (mut prev, mut cur) = (p as i64, a as i64);
    let mut chain = Vec::new();
    while cur != 0 {
        let b = (prev + cur - 1) / cur;
        chain.push(-b);
        (prev, cur) = (cur, b * cur - prev);
    }
    let gram = chain_gram(&chain);
    let det = gram.det().abs();
    if det != BigInt::from(p) {
        return Err(Error::Inconsistent(format!("|det| = {det} for p = {p}")));
    }
    Ok((chain, gram))
}

/// True when the chain Gram matrix is negative definite.
pub fn is_negative_definite(gram: &IntMatrix) -> Result<bool> {
    let l = Lattice::new(gram.clone())?;
    Ok(signature(&l)?.0 == 0)
}

/// A finitely generated abelian group `Z^free ⊕ (torsion)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AbelianGroup {
    pub free: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn z() -> Self {
        AbelianGroup { free: 1, torsion: Vec::new() }
    }

    pub fn z_mod(p: u64) -> Self {
        AbelianGroup { free: 0, torsion: vec![p] }
    }

    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }
}

/// `H^k((C^n \ 0) / G, Z)` for `k = 0..=2n`.
pub fn punctured_quotient_cohomology(p: u64, n: usize) -> Result<Vec<AbelianGroup>> {
    require_prime(p)?;
    if n < 2 {
        return Err(Error::OutOfRange(format!("dimension {n} must be at least 2")));
    }
    Ok((0..=2 * n)
        .map(|k| {
            if k == 0 || k == 2 * n - 1 {
                AbelianGroup::z()
            } else if k % 2 == 0 && k < 2 * n {
                AbelianGroup::z_mod(p)
            } else {
                AbelianGroup::zero()
            }
        })
        .collect())
}

/// `H^k(C^n / G, (C^n \ 0) / G; Z)` for `k = 0..=2n`.
pub fn relative_quotient_cohomology(p: u64, n: usize) -> Result<Vec<AbelianGroup>> {
    require_prime(p)?;
    if n < 2 {
        return Err(Error::OutOfRange(format!("dimension {n} must be at least 2")));
    }
    Ok((0..=2 * n)
        .map(|k| {
            if k == 2 * n {
                AbelianGroup::z()
            } else if k % 2 == 1 && k >= 3 {
                AbelianGroup::z_mod(p)
            } else {
                AbelianGroup::zero()
            }
        })
        .collect())
}

/// Even Betti numbers `b_0, b_2, ..., b_2n` of the smooth complete toric
/// variety of `f`; odd ones vanish.
pub fn betti_complete_smooth(f: &Fan) -> Result<Vec<u64>> {
    if !f.is_complete() {
        return Err(Error::Invalid("fan is not complete".into()));
    }
    if !f.is_regular() {
        return Err(Error::Invalid("fan is not regular".into()));
    }
    let n = f.dim;
    let d: Vec<i128> = f.cone_counts().iter().map(|&x| i128::from(x)).collect();
    (0..=n)
        .map(|k| {
            let mut acc: i128 = 0;
            for i in k..=n {
                let term = i128::from(binomial(i as u64, k as u64)) * d[n - i];
                acc += if (i - k) % 2 == 0 { term } else { -term };
            }
            u64::try_from(acc).map_err(|_| Error::Inconsistent(format!("negative Betti number {acc}")))
        })
        .collect()
}
