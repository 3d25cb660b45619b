//! JSON descriptors for matrices, lattices, invariant tables and reports.
//!
//! Integers that fit in an `i64` are written as JSON numbers, larger ones as
//! decimal strings. Both forms are accepted on input.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use quotcoh_core::engine::{
    AlphaEntry, DegenerationStatus, DegreeInvariants, GradedInvariants, Provenance, QuotientReport, Verdict,
};
use quotcoh_core::lattice::{GLattice, Lattice, LatticeInvariants};
use quotcoh_core::{IntMatrix, JordanProfile};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

/// An integer entry as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    pub fn to_bigint(&self) -> CliResult<BigInt> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("not an integer: {s:?}"))),
        }
    }
}

pub fn big(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn rational(x: &BigRational) -> Value {
    if x.is_integer() {
        big(&x.to_integer())
    } else {
        json!(x.to_string())
    }
}

pub fn matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(big).collect())).collect())
}

pub fn matrix_from_json(rows: &[Vec<JsonInt>]) -> CliResult<IntMatrix> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(JsonInt::to_bigint).collect::<CliResult<Vec<_>>>())
        .collect::<CliResult<Vec<_>>>()?;
    if parsed.is_empty() {
        return Err(CliError::Usage("empty matrix".into()));
    }
    Ok(IntMatrix::try_from_rows(&parsed)?)
}

#[derive(Debug, Deserialize)]
pub struct LatticeDescriptor {
    pub gram: Vec<Vec<JsonInt>>,
}

impl LatticeDescriptor {
    pub fn build(&self) -> CliResult<Lattice> {
        Ok(Lattice::new(matrix_from_json(&self.gram)?)?)
    }
}

#[derive(Debug, Deserialize)]
pub struct GLatticeDescriptor {
    pub p: u64,
    pub gram: Vec<Vec<JsonInt>>,
    pub action: Vec<Vec<JsonInt>>,
}

impl GLatticeDescriptor {
    pub fn build(&self) -> CliResult<GLattice> {
        Ok(GLattice::new(matrix_from_json(&self.gram)?, matrix_from_json(&self.action)?, self.p)?)
    }
}

/// `{"p", "action"}`; a `gram` field is tolerated and ignored.
#[derive(Debug, Deserialize)]
pub struct ActionDescriptor {
    pub p: u64,
    pub action: Vec<Vec<JsonInt>>,
}

pub fn lattice_json(l: &Lattice) -> Value {
    json!({ "gram": matrix_to_json(l.gram()) })
}

pub fn glattice_json(gl: &GLattice) -> Value {
    json!({ "p": gl.p(), "gram": matrix_to_json(gl.gram()), "action": matrix_to_json(gl.action()) })
}

pub fn invariants_json(inv: &LatticeInvariants) -> Value {
    json!({
        "rank": inv.rank,
        "signature": [inv.signature.0, inv.signature.1],
        "discriminant_group": inv.discriminant_group.iter().map(big).collect::<Vec<_>>(),
        "even": inv.even,
    })
}

pub fn profile_json(prof: &JordanProfile) -> Value {
    let blocks: BTreeMap<String, u64> = prof.blocks().map(|(q, c)| (q.to_string(), c)).collect();
    json!({ "p": prof.p(), "dimension": prof.dimension(), "blocks": blocks })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeJson {
    pub k: usize,
    pub rank: u64,
    pub l_plus: u64,
    pub l_minus: u64,
    pub l_pf: u64,
    #[serde(default)]
    pub l_qt: BTreeMap<u32, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedInvariantsJson {
    pub p: u64,
    pub n: usize,
    pub eta: u64,
    pub degrees: Vec<DegreeJson>,
}

impl GradedInvariantsJson {
    pub fn build(&self) -> CliResult<GradedInvariants> {
        let degrees = self
            .degrees
            .iter()
            .map(|d| DegreeInvariants {
                k: d.k,
                rank: d.rank,
                l_plus: d.l_plus,
                l_minus: d.l_minus,
                l_pf: d.l_pf,
                l_qt: d.l_qt.iter().filter(|(_, &c)| c > 0).map(|(&q, &c)| (q, c)).collect(),
            })
            .collect();
        Ok(GradedInvariants::new(self.p, self.n, self.eta, degrees)?)
    }
}

impl From<&GradedInvariants> for GradedInvariantsJson {
    fn from(inv: &GradedInvariants) -> Self {
        GradedInvariantsJson {
            p: inv.p,
            n: inv.n,
            eta: inv.eta,
            degrees: inv
                .degrees
                .iter()
                .map(|d| DegreeJson {
                    k: d.k,
                    rank: d.rank,
                    l_plus: d.l_plus,
                    l_minus: d.l_minus,
                    l_pf: d.l_pf,
                    l_qt: d.l_qt.clone(),
                })
                .collect(),
        }
    }
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::Unknown => "unknown",
    }
}

fn provenance(p: Provenance) -> &'static str {
    match p {
        Provenance::Exact => "exact",
        Provenance::PairSum => "pair_sum",
        Provenance::UpperBound => "upper_bound",
        Provenance::Conjectural => "conjectural",
    }
}

pub fn degeneration_json(d: &DegenerationStatus) -> Value {
    json!({
        "f_p_degenerates": verdict(d.c1),
        "lefschetz_count": verdict(d.c2),
        "no_odd_plus_even_minus": verdict(d.c3),
        "z_degenerates": verdict(d.c4),
        "l_p_1": d.l_p_1,
        "too_few_fixed_points": d.too_few_fixed_points,
    })
}

fn alpha_json(a: &AlphaEntry) -> Value {
    json!({ "degrees": [a.low, a.high], "value": a.value, "provenance": provenance(a.provenance) })
}

/// Every field carries its provenance: `exact`, `pair_sum`, `upper_bound`
/// or `conjectural`.
pub fn report_json(r: &QuotientReport) -> Value {
    let odd: Vec<Value> = r
        .odd_torsion
        .iter()
        .map(|t| match t.exact {
            Some(v) => json!({ "degrees": [t.low], "value": v, "provenance": "exact" }),
            None => json!({ "degrees": [t.low, t.high], "value": t.pair_sum, "provenance": "pair_sum" }),
        })
        .collect();
    let d_p: Vec<Value> = r
        .d_p
        .iter()
        .map(|d| json!({ "degrees": [2 * d.k, 2 * r.n - 2 * d.k], "value": d.pair_sum, "provenance": "pair_sum" }))
        .collect();
    let split: Vec<Value> = r
        .conjectural_split
        .iter()
        .map(|(deg, t)| json!({ "degree": deg, "value": t, "provenance": "conjectural" }))
        .collect();
    json!({
        "p": r.p,
        "n": r.n,
        "eta": r.eta,
        "degeneration": degeneration_json(&r.degeneration),
        "conclusive": r.conclusive,
        "alpha": r.alpha.iter().map(alpha_json).collect::<Vec<_>>(),
        "even_torsion_free": r.even_torsion_free,
        "odd_torsion": odd,
        "betti": r.betti_m,
        "u_dims": r.u_dims.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        "beta": r.beta,
        "d_p": d_p,
        "torsion_of_u": r.torsion_of_u,
        "conjectural_split": split,
    })
}

/// Flat keys such as `t3_plus_t7` and `t5` for the odd torsion of a report.
pub fn torsion_keys(r: &QuotientReport) -> serde_json::Map<String, Value> {
    let mut out = serde_json::Map::new();
    for t in &r.odd_torsion {
        match t.exact {
            Some(v) => out.insert(format!("t{}", t.low), json!(v)),
            None => out.insert(format!("t{}_plus_t{}", t.low, t.high), json!(t.pair_sum)),
        };
    }
    out
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &str) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    Ok(serde_json::from_str(&text)?)
}
