//! K3 surfaces with an automorphism of prime order, and the induced natural
//! automorphisms of their Hilbert schemes of points `S^[m]`.
//!
//! `H^*(S^[m], Z)` has an integral basis indexed by multi-partitions
//! `(λ, μ, ν^1, ..., ν^22)` of total weight `m`: parts of `λ` carry the unit
//! class, parts of `μ` the point class and parts of `ν^i` the `i`-th basis
//! class of `H^2(S)`. A part of size `r` raises the degree by `2r - 2`,
//! `2r + 2` or `2r` respectively. The automorphism acts only through the
//! `H^2` labels, so a degree-`k` piece is a sum over shapes of tensor
//! products of symmetric powers of `H^2(S)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::engine::{lefschetz_euler, DegreeInvariants, GradedInvariants};
use crate::error::{Error, Result};
use crate::lattice::{
    direct_sum, dual_scaled, invariants, named_lattice, overlattice_with_basis, pushforward_quotient_lattice,
    rescale_to_primitive, fujiki_constant, GLattice, Lattice, LatticeInvariants, RationalLattice,
};
use crate::linalg::{require_prime, IntMatrix};
use crate::profile::{binomial, JordanProfile, ProfileAlgebra};

/// Rank of `H^2` of a K3 surface.
pub const K3_H2_RANK: u64 = 22;

/// A basis label of `H^*(S^[m], Z)`. Partitions are stored with parts in
/// non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct NakajimaLabel {
    pub lambda: Vec<u32>,
    pub mu: Vec<u32>,
    pub nus: Vec<Vec<u32>>,
}

impl NakajimaLabel {
    pub fn weight(&self) -> u32 {
        self.lambda.iter().sum::<u32>() + self.mu.iter().sum::<u32>() + self.nus.iter().flatten().sum::<u32>()
    }

    pub fn degree(&self) -> u32 {
        self.lambda.iter().map(|r| 2 * r - 2).sum::<u32>()
            + self.mu.iter().map(|r| 2 * r + 2).sum::<u32>()
            + self.nus.iter().flatten().map(|r| 2 * r).sum::<u32>()
    }
}

/// Partitions of `n` with parts in non-increasing order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(left: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=left.min(max)).rev() {
            prefix.push(part);
            rec(left - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A label with the `H^2` classes forgotten: which part sizes carry the unit,
/// the point class, or some class of `H^2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Shape {
    pub lambda: Vec<u32>,
    pub mu: Vec<u32>,
    pub rho: Vec<u32>,
}

impl Shape {
    pub fn degree(&self) -> u32 {
        self.lambda.iter().map(|r| 2 * r - 2).sum::<u32>()
            + self.mu.iter().map(|r| 2 * r + 2).sum::<u32>()
            + self.rho.iter().map(|r| 2 * r).sum::<u32>()
    }

    /// `r -> c_r`, the number of `H^2`-labelled parts of size `r`.
    pub fn alpha_multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut out = BTreeMap::new();
        for &r in &self.rho {
            *out.entry(r).or_insert(0) += 1;
        }
        out
    }

    /// Number of labels with this shape.
    pub fn label_count(&self) -> u64 {
        self.alpha_multiplicities()
            .values()
            .map(|&c| binomial(K3_H2_RANK + u64::from(c) - 1, u64::from(c)))
            .product()
    }
}

pub fn shapes(m: u32) -> Vec<Shape> {
    let mut out = Vec::new();
    for wl in 0..=m {
        for wm in 0..=m - wl {
            let wa = m - wl - wm;
            for lambda in partitions(wl) {
                for mu in partitions(wm) {
                    for rho in partitions(wa) {
                        out.push(Shape { lambda: lambda.clone(), mu: mu.clone(), rho });
                    }
                }
            }
        }
    }
    out
}

/// Calls `f` on every basis label of `H^*(S^[m])`.
pub fn for_each_label(m: u32, mut f: impl FnMut(&NakajimaLabel)) {
    for shape in shapes(m) {
        let groups: Vec<(u32, u32)> = shape.alpha_multiplicities().into_iter().collect();
        let mut label = NakajimaLabel {
            lambda: shape.lambda.clone(),
            mu: shape.mu.clone(),
            nus: vec![Vec::new(); K3_H2_RANK as usize],
        };
        assign_classes(&groups, 0, &mut label, &mut f);
    }
}

fn assign_classes(groups: &[(u32, u32)], g: usize, label: &mut NakajimaLabel, f: &mut impl FnMut(&NakajimaLabel)) {
    if g == groups.len() {
        let mut normalised = label.clone();
        for nu in &mut normalised.nus {
            nu.sort_unstable_by(|a, b| b.cmp(a));
        }
        f(&normalised);
        return;
    }
    let (r, c) = groups[g];
    // multisets of size c from the 22 classes, as non-decreasing class sequences
    fn pick(
        r: u32,
        left: u32,
        min_class: usize,
        groups: &[(u32, u32)],
        g: usize,
        label: &mut NakajimaLabel,
        f: &mut impl FnMut(&NakajimaLabel),
    ) {
        if left == 0 {
            assign_classes(groups, g + 1, label, f);
            return;
        }
        for class in min_class..K3_H2_RANK as usize {
            label.nus[class].push(r);
            pick(r, left - 1, class, groups, g, label, f);
            label.nus[class].pop();
        }
    }
    pick(r, c, 0, groups, g, label, f);
}

/// All basis labels with their degrees.
pub fn enumerate_basis(m: u32) -> Result<Vec<(NakajimaLabel, u32)>> {
    if !(1..=6).contains(&m) {
        return Err(Error::OutOfRange(format!("m = {m} must lie in 1..=6")));
    }
    let mut out = Vec::new();
    for_each_label(m, |l| out.push((l.clone(), l.degree())));
    Ok(out)
}

/// Betti numbers `b_0, ..., b_4m` of `S^[m]` by counting labels shape by shape.
pub fn betti_numbers(m: u32) -> Vec<u64> {
    let mut b = vec![0u64; 4 * m as usize + 1];
    for s in shapes(m) {
        b[s.degree() as usize] += s.label_count();
    }
    b
}

/// Checks the degree assignment against the known Betti numbers of `S^[2]`
/// and `b_4(S^[3])` by explicit enumeration of labels.
pub fn validate_degree_rule() -> Result<()> {
    let mut b2 = [0u64; 9];
    for_each_label(2, |l| b2[l.degree() as usize] += 1);
    if b2 != [1, 0, 23, 0, 276, 0, 23, 0, 1] || b2.iter().sum::<u64>() != 324 {
        return Err(Error::Inconsistent(format!("Betti numbers of S^[2] came out as {b2:?}")));
    }
    let mut b4 = 0u64;
    for_each_label(3, |l| b4 += u64::from(l.degree() == 4));
    if b4 != 299 {
        return Err(Error::Inconsistent(format!("b_4(S^[3]) came out as {b4}")));
    }
    Ok(())
}

/// Jordan profiles of `H^k(S^[m], F_p)` for `k = 0..=4m`.
///
/// Only `m < p` is supported: then every symmetric power involved has
/// degree below `p`, where symmetric and divided powers agree.
pub fn graded_module_profiles(m: u32, h2: &JordanProfile) -> Result<Vec<JordanProfile>> {
    validate_degree_rule()?;
    let p = h2.p();
    if h2.dimension() != K3_H2_RANK {
        return Err(Error::Dimension(format!("H^2 profile has dimension {}", h2.dimension())));
    }
    if m == 0 || u64::from(m) >= p {
        return Err(Error::OutOfRange(format!("m = {m} must satisfy 1 <= m < p = {p}")));
    }
    let mut alg = ProfileAlgebra::new(p)?;
    let sym = alg.sym_series(h2, m)?;
    let mut out = vec![JordanProfile::zero(p)?; 4 * m as usize + 1];
    for s in shapes(m) {
        let mut piece = JordanProfile::new(p, &[(1, 1)])?;
        for (_, c) in s.alpha_multiplicities() {
            piece = alg.tensor(&piece, &sym[c as usize])?;
        }
        let slot = &mut out[s.degree() as usize];
        *slot = crate::profile::direct_sum(slot, &piece)?;
    }
    Ok(out)
}

/// The invariants table of `S^[m]` with the natural action whose `H^2(S)`
/// profile is `h2`. `η` is the Lefschetz number.
pub fn graded_profile(m: u32, h2: &JordanProfile) -> Result<GradedInvariants> {
    let p = h2.p();
    if p == 2 {
        return Err(Error::OutOfRange("p = 2 cannot separate ℓ_+ from ℓ_- mod 2".into()));
    }
    let profiles = graded_module_profiles(m, h2)?;
    let betti = betti_numbers(m);
    let mut degrees = Vec::with_capacity(profiles.len());
    for (k, prof) in profiles.iter().enumerate() {
        if let Some((q, count)) = prof.middle_block() {
            return Err(Error::MiddleBlocks { q, count });
        }
        if prof.dimension() != betti[k] {
            return Err(Error::Inconsistent(format!(
                "degree {k}: module of dimension {} against b_{k} = {}",
                prof.dimension(),
                betti[k]
            )));
        }
        let pq = p as u32;
        degrees.push(DegreeInvariants::torsion_free(k, p, prof.count(1), prof.count(pq - 1), prof.count(pq)));
    }
    let mut inv = GradedInvariants::new(p, 2 * m as usize, 0, degrees)?;
    let eta = lefschetz_euler(&inv);
    inv.eta = u64::try_from(eta).map_err(|_| Error::Inconsistent(format!("negative Lefschetz number {eta}")))?;
    Ok(inv)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum K3Kind {
    Symplectic,
    NonSymplectic,
}

impl K3Kind {
    pub fn name(self) -> &'static str {
        match self {
            K3Kind::Symplectic => "symplectic",
            K3Kind::NonSymplectic => "non-symplectic",
        }
    }
}

/// A prime-order automorphism of a K3 surface with isolated fixed points,
/// described by its quotient lattice and fixed point count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K3ActionSpec {
    pub p: u64,
    pub kind: K3Kind,
    /// Human-readable name of the quotient lattice `H^2(S/G, Z)`.
    pub lattice_name: String,
    pub quotient_lattice: Lattice,
    pub eta_k3: u64,
    pub l_plus_2: u64,
    pub l_p_2: u64,
}

impl K3ActionSpec {
    fn build(p: u64, kind: K3Kind, lattice_name: &str, parts: Vec<Lattice>, eta: u64) -> Result<Self> {
        // degeneration gives η = ℓ_+^0 + ℓ_+^2 + ℓ_+^4 with ℓ_- = 0
        let l_plus_2 = eta - 2;
        let l_p_2 = (K3_H2_RANK - l_plus_2) / p;
        if l_plus_2 + p * l_p_2 != K3_H2_RANK {
            return Err(Error::Inconsistent(format!("22 - {l_plus_2} is not divisible by {p}")));
        }
        Ok(K3ActionSpec {
            p,
            kind,
            lattice_name: lattice_name.into(),
            quotient_lattice: direct_sum(&parts),
            eta_k3: eta,
            l_plus_2,
            l_p_2,
        })
    }

    pub fn h2_profile(&self) -> Result<JordanProfile> {
        JordanProfile::trivial_plus_free(self.p, self.l_plus_2, self.l_p_2)
    }

    /// Invariants of the K3 surface itself.
    pub fn invariants(&self) -> Result<GradedInvariants> {
        let p = self.p;
        let degrees = vec![
            DegreeInvariants::torsion_free(0, p, 1, 0, 0),
            DegreeInvariants::torsion_free(1, p, 0, 0, 0),
            DegreeInvariants::torsion_free(2, p, self.l_plus_2, 0, self.l_p_2),
            DegreeInvariants::torsion_free(3, p, 0, 0, 0),
            DegreeInvariants::torsion_free(4, p, 1, 0, 0),
        ];
        GradedInvariants::new(p, 2, self.eta_k3, degrees)
    }

    /// What the quotient lattice must look like: rank `ℓ_+ + ℓ_p`,
    /// discriminant `p^ℓ_+`, one positive direction per positive direction of
    /// the invariant part of `H^2(S)`.
    pub fn expected_shape(&self) -> (usize, (usize, usize), BigInt) {
        let rank = (self.l_plus_2 + self.l_p_2) as usize;
        let pos = match self.kind {
            K3Kind::Symplectic => 3,
            K3Kind::NonSymplectic => 1,
        };
        (rank, (pos, rank - pos), num_traits::pow(BigInt::from(self.p), self.l_plus_2 as usize))
    }
}

fn nl(name: &str, scale: i64) -> Lattice {
    named_lattice(name, scale).expect("built-in lattice")
}

/// Every tabulated automorphism, symplectic rows first.
pub fn k3_rows() -> Vec<K3ActionSpec> {
    use K3Kind::*;
    let l17 = dual_scaled(&nl("L17", 1), 17).expect("L17 dual scaled by 17 is integral");
    let rows: Vec<(u64, K3Kind, &str, Vec<Lattice>, u64)> = vec![
        (2, Symplectic, "E8(-1)+U(2)^3", vec![nl("E8", -1), nl("U", 2), nl("U", 2), nl("U", 2)], 8),
        (3, Symplectic, "U(3)+U^2+A2^2", vec![nl("U", 3), nl("U", 1), nl("U", 1), nl("A2", -1), nl("A2", -1)], 6),
        (5, Symplectic, "U(5)+U^2", vec![nl("U", 5), nl("U", 1), nl("U", 1)], 4),
        (7, Symplectic, "U+[[4,-3],[-3,4]]", vec![nl("U", 1), nl("Lambda7", 1)], 3),
        (3, NonSymplectic, "U+E6", vec![nl("U", 1), nl("E6", -1)], 3),
        (5, NonSymplectic, "[[2,5],[5,10]]+A4", vec![nl("sym2(2,5,10)", 1), nl("A4", -1)], 4),
        (7, NonSymplectic, "U+[[-4,3],[3,-4]]", vec![nl("U", 1), nl("sym2(-4,3,-4)", 1)], 3),
        (11, NonSymplectic, "U", vec![nl("U", 1)], 2),
        (17, NonSymplectic, "U(17)+L17^v(17)", vec![nl("U", 17), l17], 7),
        (19, NonSymplectic, "U(19)+[[-10,9],[9,-10]]", vec![nl("U", 19), nl("sym2(-10,9,-10)", 1)], 5),
    ];
    rows.into_iter()
        .map(|(p, kind, name, parts, eta)| K3ActionSpec::build(p, kind, name, parts, eta).expect("table row is consistent"))
        .collect()
}

pub fn k3_spec(p: u64, kind: K3Kind) -> Result<K3ActionSpec> {
    k3_rows()
        .into_iter()
        .find(|r| r.p == p && r.kind == kind)
        .ok_or_else(|| Error::OutOfRange(format!("no {} automorphism of order {p} is tabulated", kind.name())))
}

/// `U^3 ⊕ E8(-1) ⊕ E8(-1)` with the action fixing `U^3` and swapping the two
/// `E8(-1)` summands.
pub fn nikulin_swap() -> GLattice {
    let u = nl("U", 1);
    let e8 = nl("E8", -1);
    let lat = direct_sum(&[u.clone(), u.clone(), u, e8.clone(), e8]);
    let mut action = IntMatrix::zeros(22, 22);
    for i in 0..6 {
        action[(i, i)] = BigInt::one();
    }
    for i in 0..8 {
        action[(6 + i, 14 + i)] = BigInt::one();
        action[(14 + i, 6 + i)] = BigInt::one();
    }
    GLattice::new(lat.gram().clone(), action, 2).expect("the swap is an involutive isometry")
}

/// A table row together with whatever could be recomputed from an explicit
/// action.
#[derive(Clone, Debug)]
pub struct K3TableRow {
    pub spec: K3ActionSpec,
    pub invariants: LatticeInvariants,
    /// Invariants of the pushforward lattice of an explicit action, when one
    /// is implemented for this row.
    pub computed: Option<LatticeInvariants>,
}

pub fn k3_table(p: u64, kind: K3Kind) -> Result<K3TableRow> {
    let spec = k3_spec(p, kind)?;
    let inv = invariants(&spec.quotient_lattice)?;
    let (rank, sig, disc) = spec.expected_shape();
    let disc_here: BigInt = inv.discriminant_group.iter().product();
    if inv.rank != rank || inv.signature != sig || disc_here != disc {
        return Err(Error::Inconsistent(format!(
            "row p = {p}: lattice {} has rank {}, signature {:?}, discriminant {disc_here}",
            spec.lattice_name, inv.rank, inv.signature
        )));
    }
    let computed = if p == 2 && kind == K3Kind::Symplectic {
        let pushed = invariants(&pushforward_quotient_lattice(&nikulin_swap())?)?;
        if pushed != inv {
            return Err(Error::Inconsistent(format!("pushforward gives {pushed:?}, table gives {inv:?}")));
        }
        Some(pushed)
    } else {
        None
    };
    Ok(K3TableRow { spec, invariants: inv, computed })
}

/// The quotient lattice of `S^[m]` by a natural symplectic automorphism of
/// order 5 or 7, and its Fujiki constant.
#[derive(Clone, Debug)]
pub struct BbQuotient {
    pub p: u64,
    pub m: u32,
    /// Primitive integral form on `H^2` of the quotient.
    pub lattice: Lattice,
    /// The factor that made the pushed-forward form integral and primitive.
    pub rescale: BigRational,
    pub fujiki: BigRational,
    /// The closed-form target and a basis of the overlattice realising it.
    pub target: Lattice,
    pub target_gram_in_basis: IntMatrix,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn bb_quotient(p: u64, m: u32) -> Result<BbQuotient> {
    require_prime(p)?;
    let max = match p {
        5 => 4,
        7 => 6,
        _ => return Err(Error::OutOfRange(format!("p = {p}; only 5 and 7 are supported"))),
    };
    if !(2..=max).contains(&m) {
        return Err(Error::OutOfRange(format!("m = {m} must lie in 2..={max} for p = {p}")));
    }
    let pi = p as i64;
    let delta = -2 * (i64::from(m) - 1);
    // invariant lattice of H^2(S^[m]) and the glue given by norms, both in
    // the invariant lattice scaled by p
    let (invariant, glue, nice, target) = if p == 7 {
        let inv = direct_sum(&[nl("U", 7), nl("sym2(4,1,2)", 1), nl(&format!("rank1({delta})"), 1)]);
        let z = || BigRational::zero();
        let glue = vec![
            vec![q(1, 7), z(), z(), z(), z()],
            vec![z(), q(1, 7), z(), z(), z()],
            vec![z(), z(), q(1, 7), q(3, 7), z()],
        ];
        let nice = vec![
            glue[0].clone(),
            glue[1].clone(),
            glue[2].clone(),
            vec![z(), z(), q(1, 7), q(-4, 7), z()],
            vec![z(), z(), z(), z(), BigRational::one()],
        ];
        let target = direct_sum(&[nl("U", 1), nl("Lambda7", 1), nl(&format!("rank1({})", 7 * delta), 1)]);
        (inv, glue, nice, target)
    } else {
        let inv = direct_sum(&[nl("U", 1), nl("U", 5), nl("U", 5), nl(&format!("rank1({delta})"), 1)]);
        let unit = |i: usize, v: BigRational| -> Vec<BigRational> {
            (0..7).map(|j| if j == i { v.clone() } else { BigRational::zero() }).collect()
        };
        let glue: Vec<Vec<BigRational>> = (2..6).map(|i| unit(i, q(1, 5))).collect();
        let mut nice = vec![unit(0, BigRational::one()), unit(1, BigRational::one())];
        nice.extend(glue.iter().cloned());
        nice.push(unit(6, BigRational::one()));
        let target = direct_sum(&[nl("U", 5), nl("U", 1), nl("U", 1), nl(&format!("rank1({})", 5 * delta), 1)]);
        (inv, glue, nice, target)
    };
    let scaled = invariant.scaled(pi)?;
    let over = overlattice_with_basis(&scaled, &glue)?;
    let expected_index = num_traits::pow(BigInt::from(p), glue.len());
    if over.index != expected_index {
        return Err(Error::Inconsistent(format!("glue index {} instead of {expected_index}", over.index)));
    }
    let (rescale, lattice) = rescale_to_primitive(&RationalLattice::from_scaled(&over.lattice, pi)?);
    let fujiki = fujiki_constant(p, m, &rescale)?;

    let n = nice.len();
    let gram_q = |x: &[BigRational], y: &[BigRational]| -> BigRational {
        let g = scaled.gram();
        let mut acc = BigRational::zero();
        for i in 0..n {
            for j in 0..n {
                acc += &x[i] * BigRational::from_integer(g[(i, j)].clone()) * &y[j];
            }
        }
        acc
    };
    let mut target_gram_in_basis = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = gram_q(&nice[i], &nice[j]);
            if !v.is_integer() {
                return Err(Error::NonIntegral { i, j, value: format!("{v}") });
            }
            target_gram_in_basis[(i, j)] = v.to_integer();
        }
    }
    Ok(BbQuotient { p, m, lattice, rescale, fujiki, target, target_gram_in_basis })
}

/// Even Betti numbers of `S^[m] / G` and its number of singular points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiRow {
    pub p: u64,
    pub m: u32,
    /// `b_0, b_2, ..., b_4m`.
    pub even_betti: Vec<u64>,
    pub singular_points: u64,
}

impl BettiRow {
    /// `b_2k` of the quotient.
    pub fn b(&self, two_k: usize) -> u64 {
        self.even_betti.get(two_k / 2).copied().unwrap_or(0)
    }
}

pub fn betti_table(p: u64, m: u32) -> Result<BettiRow> {
    let spec = k3_spec(p, K3Kind::Symplectic)?;
    let inv = graded_profile(m, &spec.h2_profile()?)?;
    let even_betti = inv.degrees.iter().filter(|d| d.k % 2 == 0).map(|d| d.l_plus + d.l_pf).collect();
    Ok(BettiRow { p, m, even_betti, singular_points: inv.eta })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11]);
    }

    #[test]
    fn small_betti() {
        assert_eq!(betti_numbers(1), vec![1, 0, 22, 0, 1]);
        assert_eq!(betti_numbers(2), vec![1, 0, 23, 0, 276, 0, 23, 0, 1]);
        validate_degree_rule().unwrap();
    }

    #[test]
    fn enumeration_agrees_with_shape_counts() {
        for m in 1..=3 {
            let mut b = vec![0u64; 4 * m as usize + 1];
            for (_, d) in enumerate_basis(m).unwrap() {
                b[d as usize] += 1;
            }
            assert_eq!(b, betti_numbers(m));
        }
    }

    #[test]
    fn remark_values_m2() {
        let inv = graded_profile(2, &JordanProfile::trivial_plus_free(5, 2, 4).unwrap()).unwrap();
        assert_eq!((inv.degrees[2].l_plus, inv.degrees[4].l_plus, inv.eta), (3, 6, 14));
        let inv = graded_profile(2, &JordanProfile::trivial_plus_free(7, 1, 3).unwrap()).unwrap();
        assert_eq!((inv.degrees[2].l_plus, inv.degrees[4].l_plus, inv.eta), (2, 3, 9));
    }

    #[test]
    fn large_m_rejected() {
        let h2 = JordanProfile::trivial_plus_free(5, 2, 4).unwrap();
        assert!(graded_profile(5, &h2).is_err());
        assert!(bb_quotient(5, 5).is_err());
        assert!(bb_quotient(7, 1).is_err());
        assert!(bb_quotient(3, 2).is_err());
    }

    #[test]
    fn l17_dual() {
        let l = nl("L17", 1);
        assert_eq!(l.gram().det(), BigInt::from(17));
    }

    #[test]
    fn k3_rows_are_consistent() {
        for row in k3_rows() {
            let t = k3_table(row.p, row.kind).unwrap();
            assert_eq!(t.computed.is_some(), row.p == 2);
        }
        let nik = k3_table(2, K3Kind::Symplectic).unwrap();
        assert_eq!(nik.invariants.rank, 14);
        assert_eq!(nik.invariants.signature, (3, 11));
        let bns = crate::lattice::bns_invariants(&nikulin_swap()).unwrap();
        assert_eq!((bns.l_plus, bns.l_minus, bns.l_p), (6, 0, 8));
        assert!(k3_spec(13, K3Kind::NonSymplectic).is_err());
    }

    #[test]
    fn bb_lattices() {
        for (p, m, fujiki) in [(7, 2, 21), (5, 2, 15), (5, 3, 375)] {
            let bb = bb_quotient(p, m).unwrap();
            assert_eq!(bb.fujiki, BigRational::from_integer(BigInt::from(fujiki)));
            assert_eq!(bb.rescale, BigRational::from_integer(BigInt::from(p)));
            assert_eq!(&bb.target_gram_in_basis, bb.target.gram());
            assert_eq!(invariants(&bb.lattice).unwrap(), invariants(&bb.target).unwrap());
        }
    }

    #[test]
    fn betti_rows() {
        let r = betti_table(5, 2).unwrap();
        assert_eq!((r.b(2), r.b(4), r.b(6), r.singular_points), (7, 60, 7, 14));
        let r = betti_table(7, 3).unwrap();
        assert_eq!((r.b(2), r.b(4), r.b(6), r.singular_points), (5, 47, 370, 22));
    }
}
