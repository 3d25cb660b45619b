//! The equivariant cohomology spectral sequence of `(X, G)` at the level of
//! invariants, its degeneration, and the cohomology of the quotient `X/G`.
//!
//! Everything here consumes a [`GradedInvariants`] table; the geometric
//! hypotheses (compact complex manifold, finitely many fixed points) are the
//! caller's responsibility.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::require_prime;

/// Invariants of `H^k(X, Z)` as a `Z[G]`-module.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DegreeInvariants {
    pub k: usize,
    pub rank: u64,
    pub l_plus: u64,
    pub l_minus: u64,
    /// Free summands of the torsion-free part.
    pub l_pf: u64,
    /// `q -> ℓ_q` of the `p`-torsion subgroup.
    pub l_qt: BTreeMap<u32, u64>,
}

impl DegreeInvariants {
    /// A torsion-free degree; the rank follows from the three counts.
    pub fn torsion_free(k: usize, p: u64, l_plus: u64, l_minus: u64, l_pf: u64) -> Self {
        DegreeInvariants { k, rank: l_plus + (p - 1) * l_minus + p * l_pf, l_plus, l_minus, l_pf, l_qt: BTreeMap::new() }
    }

    pub fn torsion(&self, q: u32) -> u64 {
        self.l_qt.get(&q).copied().unwrap_or(0)
    }

    fn torsion_below(&self, p: u64) -> u64 {
        self.l_qt.iter().filter(|(&q, _)| u64::from(q) < p).map(|(_, &c)| c).sum()
    }

    fn torsion_all(&self) -> u64 {
        self.l_qt.values().sum()
    }
}

/// Per-degree invariants of a `G`-space of complex dimension `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedInvariants {
    pub p: u64,
    pub n: usize,
    /// Number of fixed points.
    pub eta: u64,
    /// Indexed by degree `0..=2n`.
    pub degrees: Vec<DegreeInvariants>,
}

impl GradedInvariants {
    /// Checks the shape of the table and the rank identity in every degree.
    pub fn new(p: u64, n: usize, eta: u64, degrees: Vec<DegreeInvariants>) -> Result<Self> {
        require_prime(p)?;
        if degrees.len() != 2 * n + 1 {
            return Err(Error::Dimension(format!("{} degrees for dimension {n}", degrees.len())));
        }
        for (k, d) in degrees.iter().enumerate() {
            if d.k != k {
                return Err(Error::Invalid(format!("degree entry {k} is labelled {}", d.k)));
            }
            if d.rank != d.l_plus + (p - 1) * d.l_minus + p * d.l_pf {
                return Err(Error::Invalid(format!(
                    "degree {k}: rank {} differs from ℓ_+ + (p-1)ℓ_- + pℓ_p,f",
                    d.rank
                )));
            }
            if let Some(&q) = d.l_qt.keys().find(|&&q| q == 0 || u64::from(q) > p) {
                return Err(Error::OutOfRange(format!("degree {k}: torsion block size {q}")));
            }
        }
        if degrees[0].torsion_all() > 0 {
            return Err(Error::Invalid("H^0 cannot have torsion".into()));
        }
        Ok(GradedInvariants { p, n, eta, degrees })
    }

    /// Connected and oriented: `H^0 = H^2n = Z` with trivial action.
    pub fn check_closed_connected(&self) -> Result<()> {
        for k in [0, 2 * self.n] {
            let d = &self.degrees[k];
            if d.rank != 1 || d.l_plus != 1 {
                return Err(Error::Invalid(format!("degree {k} must be Z with trivial action")));
            }
        }
        Ok(())
    }

    pub fn is_p_torsion_free(&self) -> bool {
        self.degrees.iter().all(|d| d.torsion_all() == 0)
    }

    fn at(&self, k: usize) -> &DegreeInvariants {
        &self.degrees[k]
    }

    fn get(&self, k: usize) -> Option<&DegreeInvariants> {
        self.degrees.get(k)
    }

    fn plus(&self, k: usize) -> u64 {
        self.get(k).map_or(0, |d| d.l_plus)
    }

    fn minus(&self, k: usize) -> u64 {
        self.get(k).map_or(0, |d| d.l_minus)
    }

    /// `Σ_k ℓ_+^(2k)`, `Σ_k ℓ_+^(2k+1)`, `Σ_k ℓ_-^(2k)`, `Σ_k ℓ_-^(2k+1)`.
    pub fn parity_sums(&self) -> ParitySums {
        let mut s = ParitySums::default();
        for d in &self.degrees {
            if d.k % 2 == 0 {
                s.plus_even += d.l_plus;
                s.minus_even += d.l_minus;
            } else {
                s.plus_odd += d.l_plus;
                s.minus_odd += d.l_minus;
            }
        }
        s
    }

    /// Jordan profile of `H^k(X, F_p)` as counts `q -> ℓ_q^k`, from the
    /// integral invariants and the universal coefficient theorem.
    pub fn field_profile(&self, k: usize) -> BTreeMap<u32, u64> {
        let p = self.p as u32;
        let mut out: BTreeMap<u32, u64> = BTreeMap::new();
        let here = self.at(k);
        for (&q, &c) in &here.l_qt {
            *out.entry(q).or_default() += c;
        }
        if let Some(next) = self.get(k + 1) {
            for (&q, &c) in &next.l_qt {
                *out.entry(q).or_default() += c;
            }
        }
        *out.entry(1).or_default() += here.l_plus;
        *out.entry(p - 1).or_default() += here.l_minus;
        *out.entry(p).or_default() += here.l_pf;
        out.retain(|_, c| *c > 0);
        out
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParitySums {
    pub plus_even: u64,
    pub plus_odd: u64,
    pub minus_even: u64,
    pub minus_odd: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Integers,
    Field,
}

/// `E_2^(d,q) = H^d(G, H^q(X))` as (free rank, dimension of the `p`-torsion).
pub fn e2_entry(inv: &GradedInvariants, d: u32, q: usize, coeffs: Coefficients) -> Result<(u64, u64)> {
    let Some(deg) = inv.get(q) else {
        return Err(Error::OutOfRange(format!("degree {q} above 2n = {}", 2 * inv.n)));
    };
    let p = inv.p;
    Ok(match coeffs {
        Coefficients::Integers => {
            if d == 0 {
                (deg.l_plus + deg.l_pf, deg.torsion_all())
            } else if d % 2 == 1 {
                (0, deg.l_minus + deg.torsion_below(p))
            } else {
                (0, deg.l_plus + deg.torsion_below(p))
            }
        }
        Coefficients::Field => {
            let prof = inv.field_profile(q);
            let dim = prof.iter().filter(|(&r, _)| d == 0 || u64::from(r) < p).map(|(_, &c)| c).sum();
            (0, dim)
        }
    })
}

/// `ℓ_+^(2*) + ℓ_-^(2*+1) - ℓ_+^(2*+1) - ℓ_-^(2*)`, the Euler characteristic
/// of the fixed locus.
pub fn lefschetz_euler(inv: &GradedInvariants) -> i64 {
    let s = inv.parity_sums();
    (s.plus_even + s.minus_odd) as i64 - (s.plus_odd + s.minus_even) as i64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Unknown,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }

    fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

/// The four degeneration criteria:
/// (1) degeneration with `F_p` coefficients, (2) `η = ℓ_+^(2*) + ℓ_-^(2*+1)`,
/// (3) `ℓ_+^(2*+1) = ℓ_-^(2*) = 0`, (4) degeneration with `Z` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationStatus {
    pub c1: Verdict,
    pub c2: Verdict,
    pub c3: Verdict,
    pub c4: Verdict,
    /// `ℓ_p` of `H^1(X, F_p)`; when zero all four criteria are equivalent.
    pub l_p_1: u64,
    /// Fewer than two fixed points rule out degeneration.
    pub too_few_fixed_points: bool,
}

impl DegenerationStatus {
    /// (2) or (3) holds, so the conclusions about the quotient apply.
    pub fn applies(&self) -> bool {
        self.c2 == Verdict::Holds || self.c3 == Verdict::Holds
    }
}

pub fn degeneration_status(inv: &GradedInvariants) -> DegenerationStatus {
    let s = inv.parity_sums();
    let c2 = inv.eta == s.plus_even + s.minus_odd;
    let c3 = s.plus_odd == 0 && s.minus_even == 0;
    let l_p_1 = if inv.n == 0 { 0 } else { inv.field_profile(1).get(&(inv.p as u32)).copied().unwrap_or(0) };
    let few = inv.eta < 2;
    let (c1, c4) = if few {
        (Verdict::Fails, Verdict::Fails)
    } else if l_p_1 == 0 {
        let v = Verdict::from_bool(c2 && c3);
        (v, v)
    } else if !(c2 && c3) {
        (Verdict::Fails, Verdict::Fails)
    } else {
        (Verdict::Unknown, Verdict::Unknown)
    };
    DegenerationStatus {
        c1,
        c2: Verdict::from_bool(c2 && !few),
        c3: Verdict::from_bool(c3),
        c4,
        l_p_1,
        too_few_fixed_points: few,
    }
}

/// Dimensions of degeneration `u_k` for `2 <= k <= 2n-1` from the torsion
/// `t_p^k(U)` of the quotient of the complement of the fixed points.
/// `torsion_of_u` is indexed by degree.
pub fn u_dimensions(inv: &GradedInvariants, torsion_of_u: &[u64]) -> Result<BTreeMap<usize, u64>> {
    let n = inv.n;
    if n < 2 {
        return Ok(BTreeMap::new());
    }
    if torsion_of_u.len() < 2 * n {
        return Err(Error::Dimension(format!("torsion of U needs degrees up to {}", 2 * n - 1)));
    }
    let mut out = BTreeMap::new();
    for k in 1..n {
        let even: u64 = (0..k).map(|i| inv.plus(2 * i) + inv.minus(2 * i + 1)).sum();
        let odd: u64 = (0..=k).map(|i| inv.minus(2 * i)).sum::<u64>() + (0..k).map(|i| inv.plus(2 * i + 1)).sum::<u64>();
        for (deg, total) in [(2 * k, even), (2 * k + 1, odd)] {
            let u = total.checked_sub(torsion_of_u[deg]).ok_or_else(|| {
                Error::Invalid(format!("t_p^{deg}(U) = {} exceeds {total}", torsion_of_u[deg]))
            })?;
            out.insert(deg, u);
        }
    }
    Ok(out)
}

/// `ū_k = u_k + u_(k+1)` wherever both are known.
pub fn field_u_from_integral(u: &BTreeMap<usize, u64>) -> BTreeMap<usize, u64> {
    u.iter().filter_map(|(&k, &a)| u.get(&(k + 1)).map(|&b| (k, a + b))).collect()
}

/// `u_k` for every `k` in terms of the torsion `t_p^k(X_G)` of the
/// equivariant cohomology. Signed: arbitrary inputs need not be consistent.
pub fn integral_u_from_equivariant(inv: &GradedInvariants, t_xg: &[i64]) -> Vec<i64> {
    let p = inv.p;
    let top = 2 * inv.n;
    let tors_upto = |m: usize| -> i64 { (0..=m.min(top)).map(|i| inv.at(i).torsion_below(p) as i64).sum() };
    let lpt = |m: usize| -> i64 { inv.get(m).map_or(0, |d| d.torsion(p as u32) as i64) };
    let t = |m: usize| -> i64 { t_xg.get(m).copied().unwrap_or(0) };
    (0..=top)
        .map(|k| {
            let half = k / 2;
            let base: i64 = if k % 2 == 0 {
                (0..half).map(|i| (inv.plus(2 * i) + inv.minus(2 * i + 1)) as i64).sum()
            } else {
                (0..=half).map(|i| inv.minus(2 * i) as i64).sum::<i64>()
                    + (0..half).map(|i| inv.plus(2 * i + 1) as i64).sum::<i64>()
            };
            base + tors_upto(k) + lpt(k) - t(k)
        })
        .collect()
}

/// `ū_k` for every `k` from the `F_p` second page and the universal
/// coefficient theorem applied to `H^*(X_G)`.
pub fn field_u_from_equivariant(inv: &GradedInvariants, t_xg: &[i64]) -> Vec<i64> {
    let p = inv.p as u32;
    let top = 2 * inv.n;
    let t = |m: usize| -> i64 { t_xg.get(m).copied().unwrap_or(0) };
    let mut below_p_running: i64 = 0;
    (0..top)
        .map(|k| {
            let prof = inv.field_profile(k);
            below_p_running += prof.iter().filter(|(&q, _)| q < p).map(|(_, &c)| c as i64).sum::<i64>();
            let lp = prof.get(&p).copied().unwrap_or(0) as i64;
            let d = inv.at(k);
            let h_xg = t(k) + t(k + 1) + (d.l_plus + d.l_pf) as i64;
            below_p_running + lp - h_xg
        })
        .collect()
}

/// `α_(2k+1) + α_(2n-2k-1) = ℓ_+^(2k+1)` for `0 <= k <= n-1`.
pub fn odd_alpha_pairs(inv: &GradedInvariants) -> BTreeMap<usize, u64> {
    (0..inv.n).map(|k| (k, inv.plus(2 * k + 1))).collect()
}

/// Upper bound `ℓ_+^(2*+1) + ℓ_-^(2*)` on every `α_2k + α_(2n-2k)`.
pub fn alpha_even_bound(inv: &GradedInvariants) -> u64 {
    let s = inv.parity_sums();
    s.plus_odd + s.minus_even
}

/// How a reported number was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// The value of a single group.
    Exact,
    /// The sum over a pair of Poincaré-dual degrees.
    PairSum,
    /// Only an upper bound on a pair sum is known.
    UpperBound,
    /// Predicted by an unproven splitting rule.
    Conjectural,
}

/// `α` for the degrees `(low, high)`; `low == high` in the middle degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaEntry {
    pub low: usize,
    pub high: usize,
    pub value: u64,
    pub provenance: Provenance,
}

/// `t_p^low(M) + t_p^high(M)` with `low = 2k+1`, `high = 2n-2k+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddTorsion {
    pub k: usize,
    pub low: usize,
    pub high: usize,
    pub pair_sum: u64,
    /// Set in the middle degree, where the pair is a single group counted twice.
    pub exact: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpPair {
    pub k: usize,
    pub pair_sum: u64,
}

/// Cohomology of `M = X/G` as far as the invariants determine it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientReport {
    pub p: u64,
    pub n: usize,
    pub eta: u64,
    pub degeneration: DegenerationStatus,
    /// False when no degeneration criterion holds; only the `α` pair data
    /// is then meaningful.
    pub conclusive: bool,
    pub alpha: Vec<AlphaEntry>,
    pub even_torsion_free: Option<bool>,
    pub odd_torsion: Vec<OddTorsion>,
    /// Ranks of `H^k(M, Z)` for `k = 0..=2n`.
    pub betti_m: Vec<u64>,
    pub u_dims: BTreeMap<usize, u64>,
    /// Coefficients of resolution `β_2k`, `1 <= k <= n-1`.
    pub beta: Option<Vec<u64>>,
    pub d_p: Vec<DpPair>,
    /// Torsion of `U` used for `u_dims` and `d_p`, indexed by degree.
    pub torsion_of_u: Vec<u64>,
    /// `(degree, t_p)` from the unproven splitting rule.
    pub conjectural_split: Vec<(usize, u64)>,
}

pub fn quotient_report(inv: &GradedInvariants) -> Result<QuotientReport> {
    inv.check_closed_connected()?;
    if !inv.is_p_torsion_free() {
        return Err(Error::Invalid("H^*(X, Z) must be p-torsion free".into()));
    }
    let n = inv.n;
    let degeneration = degeneration_status(inv);
    let conclusive = degeneration.applies();
    let betti_m: Vec<u64> = inv.degrees.iter().map(|d| d.l_plus + d.l_pf).collect();

    let mut alpha = Vec::new();
    if conclusive {
        for k in 1..=2 * n {
            alpha.push(AlphaEntry { low: k, high: k, value: 0, provenance: Provenance::Exact });
        }
    } else {
        for (k, v) in odd_alpha_pairs(inv) {
            let (low, high) = (2 * k + 1, 2 * n - 2 * k - 1);
            if low <= high {
                alpha.push(AlphaEntry { low, high, value: v, provenance: Provenance::PairSum });
            }
        }
        let bound = alpha_even_bound(inv);
        for k in 1..n {
            let (low, high) = (2 * k, 2 * n - 2 * k);
            if low <= high {
                alpha.push(AlphaEntry { low, high, value: bound, provenance: Provenance::UpperBound });
            }
        }
    }

    let mut report = QuotientReport {
        p: inv.p,
        n,
        eta: inv.eta,
        degeneration,
        conclusive,
        alpha,
        even_torsion_free: None,
        odd_torsion: Vec::new(),
        betti_m,
        u_dims: BTreeMap::new(),
        beta: None,
        d_p: Vec::new(),
        torsion_of_u: Vec::new(),
        conjectural_split: Vec::new(),
    };
    if !conclusive {
        return Ok(report);
    }

    report.even_torsion_free = Some(true);
    for k in 1..n {
        let (low, high) = (2 * k + 1, 2 * n - 2 * k + 1);
        if low > high {
            break;
        }
        let pair_sum = inv.eta.checked_sub(inv.plus(2 * k)).ok_or_else(|| {
            Error::Invalid(format!("η = {} is smaller than ℓ_+^{} = {}", inv.eta, 2 * k, inv.plus(2 * k)))
        })?;
        let exact = if low == high {
            if pair_sum % 2 != 0 {
                return Err(Error::Invalid(format!("odd torsion {pair_sum} in the middle degree {low}")));
            }
            Some(pair_sum / 2)
        } else {
            None
        };
        report.odd_torsion.push(OddTorsion { k, low, high, pair_sum, exact });
    }

    // torsion of U forced by degeneration
    let mut t_u = vec![0u64; 2 * n + 1];
    for k in 1..n {
        t_u[2 * k] = (0..k).map(|i| inv.plus(2 * i) + inv.minus(2 * i + 1)).sum();
    }
    report.u_dims = u_dimensions(inv, &t_u)?;
    report.beta = Some(vec![0; n.saturating_sub(1)]);
    for k in 1..n {
        let pair_sum = t_u[2 * k] + t_u[2 * n - 2 * k] + 2 * inv.plus(2 * k);
        report.d_p.push(DpPair { k, pair_sum });
    }
    report.torsion_of_u = t_u;
    for k in 1..n {
        let t: u64 = (0..k).map(|j| inv.plus(2 * j) + inv.minus(2 * j + 1)).sum();
        report.conjectural_split.push((2 * k + 1, t));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3(p: u64, l_plus: u64, l_pf: u64, eta: u64) -> GradedInvariants {
        let degrees = vec![
            DegreeInvariants::torsion_free(0, p, 1, 0, 0),
            DegreeInvariants::torsion_free(1, p, 0, 0, 0),
            DegreeInvariants::torsion_free(2, p, l_plus, 0, l_pf),
            DegreeInvariants::torsion_free(3, p, 0, 0, 0),
            DegreeInvariants::torsion_free(4, p, 1, 0, 0),
        ];
        GradedInvariants::new(p, 2, eta, degrees).unwrap()
    }

    #[test]
    fn e2_examples() {
        let inv = k3(5, 2, 4, 4);
        assert_eq!(e2_entry(&inv, 2, 2, Coefficients::Integers).unwrap(), (0, 2));
        assert_eq!(e2_entry(&inv, 0, 0, Coefficients::Integers).unwrap().0, 1);
        assert_eq!(e2_entry(&inv, 1, 2, Coefficients::Integers).unwrap(), (0, 0));
        assert_eq!(e2_entry(&inv, 0, 2, Coefficients::Field).unwrap(), (0, 6));
        assert_eq!(e2_entry(&inv, 3, 2, Coefficients::Field).unwrap(), (0, 2));
    }

    #[test]
    fn lefschetz_and_degeneration() {
        let inv = k3(5, 2, 4, 4);
        assert_eq!(lefschetz_euler(&inv), 4);
        let st = degeneration_status(&inv);
        assert_eq!((st.c1, st.c2, st.c3, st.c4), (Verdict::Holds, Verdict::Holds, Verdict::Holds, Verdict::Holds));
        let lonely = k3(5, 2, 4, 1);
        let st = degeneration_status(&lonely);
        assert_eq!((st.c1, st.c2, st.c4), (Verdict::Fails, Verdict::Fails, Verdict::Fails));
    }

    #[test]
    fn k3_quotient() {
        let r = quotient_report(&k3(5, 2, 4, 4)).unwrap();
        assert_eq!(r.odd_torsion, vec![OddTorsion { k: 1, low: 3, high: 3, pair_sum: 2, exact: Some(1) }]);
        assert_eq!(r.even_torsion_free, Some(true));
        assert_eq!(r.betti_m, vec![1, 0, 6, 0, 1]);
        assert!(r.u_dims.values().all(|&u| u == 0));
    }

    #[test]
    fn u_examples() {
        let inv = k3(5, 2, 4, 4);
        assert_eq!(u_dimensions(&inv, &[0, 0, 1, 0, 0]).unwrap()[&2], 0);
        assert_eq!(u_dimensions(&inv, &[0, 0, 0, 0, 0]).unwrap()[&2], 1);
        assert!(u_dimensions(&inv, &[0, 0, 2, 0, 0]).is_err());
    }

    #[test]
    fn alpha_examples() {
        let inv = k3(5, 2, 4, 4);
        assert_eq!(odd_alpha_pairs(&inv)[&0], 0);
        assert_eq!(alpha_even_bound(&inv), 0);
    }
}
