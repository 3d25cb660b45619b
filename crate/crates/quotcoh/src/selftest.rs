//! The property suite behind `quotcoh selftest`.

use num_bigint::BigInt;
use num_traits::Zero;
use quotcoh_core::engine::{
    e2_entry, field_u_from_equivariant, integral_u_from_equivariant, lefschetz_euler, Coefficients,
    DegreeInvariants, GradedInvariants,
};
use quotcoh_core::hilbert::{graded_profile, k3_rows, k3_spec, validate_degree_rule, K3Kind};
use quotcoh_core::lattice::{bns_invariants, group_cohomology, group_cohomology_direct, BnsInvariants};
use quotcoh_core::linalg::kernel_saturated;
use quotcoh_core::profile::{curtis_reiner_check, jordan_profile};
use quotcoh_core::toric::{punctured_quotient_cohomology, relative_quotient_cohomology, AbelianGroup};
use quotcoh_core::IntMatrix;
use rand::Rng;
use serde_json::{json, Value};

use crate::random::{self, Summands};
use crate::tables;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check { name, cases: 0, failures: Vec::new() }
    }

    fn record(&mut self, outcome: Result<(), String>) {
        self.cases += 1;
        if let Err(e) = outcome {
            // keep the report readable
            if self.failures.len() < 10 {
                self.failures.push(e);
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({ "name": self.name, "cases": self.cases, "passed": self.passed(), "failures": self.failures })
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn degree_gate() -> Check {
    let mut c = Check::new("degree_rule");
    c.record(validate_degree_rule().map_err(|e| e.to_string()));
    c
}

/// Random integral matrices of exact order `p`: no middle blocks, and the
/// summand counts are visible in the ranks of `T^G`, `Ker σ` and `T`.
pub fn order_p_actions(seed: u64, count: usize, primes: &[u64]) -> Check {
    let mut c = Check::new("order_p_actions");
    let mut rng = random::rng(seed);
    for i in 0..count {
        let p = primes[i % primes.len()];
        let (a, s) = random::order_p_action(p, 24, &mut rng);
        c.record(order_p_case(p, &a, s).map_err(|e| format!("p = {p}, {s:?}: {e}")));
    }
    c
}

fn order_p_case(p: u64, a: &IntMatrix, s: Summands) -> Result<(), String> {
    let prof = jordan_profile(a, p).map_err(|e| e.to_string())?;
    for q in 2..p as u32 - 1 {
        ensure(prof.count(q) == 0, || format!("ℓ_{q} = {}", prof.count(q)))?;
    }
    let cr = curtis_reiner_check(a, p).map_err(|e| e.to_string())?;
    let (r, sc, t) = (cr.r, cr.s.unwrap_or(0), cr.t.unwrap_or(0));
    ensure((r, sc, t) == (s.regular as u64, s.cyclotomic as u64, s.trivial as u64), || {
        format!("counts ({r}, {sc}, {t})")
    })?;
    let n = a.rows() as u64;
    ensure(n == p * r + (p - 1) * sc + t, || "rank differs from p r + (p-1) s + t".into())?;
    let minus = a.sub(&IntMatrix::identity(a.rows()));
    let invariant_rank = kernel_saturated(&minus).rows() as u64;
    ensure(invariant_rank == r + t, || format!("rank T^G = {invariant_rank}"))?;
    let mut sigma = IntMatrix::zeros(a.rows(), a.cols());
    let mut power = IntMatrix::identity(a.rows());
    for _ in 0..p {
        sigma = sigma.add(&power);
        power = power.mul(a);
    }
    let norm_kernel = kernel_saturated(&sigma).rows() as u64;
    ensure(norm_kernel == (p - 1) * (r + sc), || format!("rank Ker σ = {norm_kernel}"))
}

/// Formula and kernel/image paths of `H^i(G, T)` on random lattices.
pub fn cohomology_paths(seed: u64, per_prime: usize, primes: &[u64]) -> Check {
    let mut c = Check::new("group_cohomology_paths");
    let mut rng = random::rng(seed ^ 0x9e37_79b9);
    for &p in primes {
        for _ in 0..per_prime {
            let (gl, s) = random::glattice(p, 16, &mut rng);
            c.record(cohomology_case(&gl, s).map_err(|e| format!("p = {p}, {s:?}: {e}")));
        }
    }
    c
}

fn cohomology_case(gl: &quotcoh_core::lattice::GLattice, s: Summands) -> Result<(), String> {
    let p = gl.p();
    let bns = bns_invariants(gl).map_err(|e| e.to_string())?;
    let expected = BnsInvariants { l_plus: s.trivial as u64, l_minus: s.cyclotomic as u64, l_p: s.regular as u64 };
    ensure(bns == expected, || format!("{bns:?}"))?;
    for i in 1..=4 {
        let formula = group_cohomology(gl, i).map_err(|e| e.to_string())?;
        let direct = group_cohomology_direct(gl, i).map_err(|e| e.to_string())?;
        ensure(formula == direct, || format!("H^{i}: {formula:?} against {direct:?}"))?;
        let count = if i % 2 == 1 { s.cyclotomic } else { s.trivial };
        ensure(direct.free_rank == 0 && direct.torsion == vec![BigInt::from(p); count], || {
            format!("H^{i} = {direct:?}")
        })?;
    }
    Ok(())
}

/// Invariant tables for the K3 rows and the Hilbert schemes of two and
/// three points.
pub fn example_datasets() -> Vec<(String, GradedInvariants)> {
    let mut out = Vec::new();
    for spec in k3_rows() {
        out.push((format!("k3 {} p={}", spec.kind.name(), spec.p), spec.invariants().expect("table row")));
    }
    for (p, m) in [(5, 2), (7, 2), (5, 3), (7, 3)] {
        let spec = k3_spec(p, K3Kind::Symplectic).expect("tabulated");
        let inv = graded_profile(m, &spec.h2_profile().expect("profile")).expect("graded profile");
        out.push((format!("hilbert p={p} m={m}"), inv));
    }
    out
}

/// `ū_k = u_k + u_(k+1)` for arbitrary torsion of `X_G`, and the Lefschetz
/// number recomputed as an alternating sum of traces of explicit actions.
pub fn degeneration_identities(seed: u64, count: usize) -> Check {
    let mut c = Check::new("degeneration_identities");
    let mut rng = random::rng(seed ^ 0x5151);
    let mut tables: Vec<(String, GradedInvariants)> = example_datasets();
    for i in 0..count {
        let p = [2, 3, 5, 7][i % 4];
        let n = rng.gen_range(1..=4);
        tables.push((format!("random #{i}"), random::graded_invariants(p, n, &mut rng)));
    }
    for (name, inv) in &tables {
        let t: Vec<i64> = (0..=2 * inv.n + 1).map(|_| rng.gen_range(0..20)).collect();
        c.record(identity_case(inv, &t).map_err(|e| format!("{name}: {e}")));
    }
    c
}

fn identity_case(inv: &GradedInvariants, t: &[i64]) -> Result<(), String> {
    let u = integral_u_from_equivariant(inv, t);
    let ubar = field_u_from_equivariant(inv, t);
    for k in 0..2 * inv.n {
        ensure(ubar[k] == u[k] + u[k + 1], || format!("k = {k}: ū = {}, u = {}, {}", ubar[k], u[k], u[k + 1]))?;
    }
    let mut trace_sum = BigInt::zero();
    for d in &inv.degrees {
        let s = Summands { trivial: d.l_plus as usize, cyclotomic: d.l_minus as usize, regular: d.l_pf as usize };
        let a = random::block_action(inv.p, s);
        let tr: BigInt = (0..a.rows()).map(|i| a[(i, i)].clone()).sum();
        if d.k % 2 == 0 {
            trace_sum += tr;
        } else {
            trace_sum -= tr;
        }
    }
    let euler = lefschetz_euler(inv);
    ensure(trace_sum == BigInt::from(euler), || format!("traces give {trace_sum}, invariants give {euler}"))
}

/// Cohomology of the punctured quotient and of the pair, rederived from the
/// second page for the free action on the unit sphere.
pub fn toric_closed_forms() -> Check {
    let mut c = Check::new("toric_closed_forms");
    for n in 2..=4 {
        for p in [2, 3, 5] {
            c.record(toric_case(p, n).map_err(|e| format!("p = {p}, n = {n}: {e}")));
        }
    }
    c
}

fn group_of(free: u64, torsion: u64, p: u64) -> AbelianGroup {
    AbelianGroup { free: free as usize, torsion: vec![p; torsion as usize] }
}

fn sphere_quotient(p: u64, n: usize) -> Result<Vec<AbelianGroup>, String> {
    // the sphere of real dimension 2n-1 with its trivial action on cohomology
    let degrees = (0..=2 * n)
        .map(|k| {
            let trivial = u64::from(k == 0 || k == 2 * n - 1);
            DegreeInvariants::torsion_free(k, p, trivial, 0, 0)
        })
        .collect();
    let inv = GradedInvariants::new(p, n, 0, degrees).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for k in 0..=2 * n {
        // a free action: the bottom row survives below the top degree,
        // the top class maps onto E_2^(2n,0), nothing survives above
        let g = if k < 2 * n - 1 {
            let (free, tors) = e2_entry(&inv, k as u32, 0, Coefficients::Integers).map_err(|e| e.to_string())?;
            group_of(free, tors, p)
        } else if k == 2 * n - 1 {
            let (free, _) = e2_entry(&inv, 0, 2 * n - 1, Coefficients::Integers).map_err(|e| e.to_string())?;
            group_of(free, 0, p)
        } else {
            AbelianGroup::zero()
        };
        out.push(g);
    }
    Ok(out)
}

fn toric_case(p: u64, n: usize) -> Result<(), String> {
    let punctured = sphere_quotient(p, n)?;
    let closed = punctured_quotient_cohomology(p, n).map_err(|e| e.to_string())?;
    ensure(closed == punctured, || format!("punctured: {closed:?} against {punctured:?}"))?;
    // the cone is contractible, so H^k(pair) = H^(k-1)(punctured) for k >= 2
    let relative: Vec<AbelianGroup> =
        (0..=2 * n).map(|k| if k < 2 { AbelianGroup::zero() } else { punctured[k - 1].clone() }).collect();
    let closed = relative_quotient_cohomology(p, n).map_err(|e| e.to_string())?;
    ensure(closed == relative, || format!("relative: {closed:?} against {relative:?}"))
}

pub fn golden_tables() -> Check {
    let mut c = Check::new("golden_tables");
    for id in tables::TABLE_IDS {
        c.record(match tables::check(id) {
            Ok(t) if t.differences.is_empty() => Ok(()),
            Ok(t) => Err(format!("{id}: {}", t.differences.join("; "))),
            Err(e) => Err(format!("{id}: {e}")),
        });
    }
    c
}

pub fn run(seed: u64) -> Vec<Check> {
    vec![
        degree_gate(),
        order_p_actions(seed, 500, &[3, 5, 7]),
        cohomology_paths(seed, 100, &[2, 3, 5, 7]),
        degeneration_identities(seed, 100),
        toric_closed_forms(),
        golden_tables(),
    ]
}

pub fn report(seed: u64, checks: &[Check]) -> Value {
    json!({
        "seed": seed,
        "passed": checks.iter().all(Check::passed),
        "checks": checks.iter().map(Check::to_json).collect::<Vec<_>>(),
    })
}
