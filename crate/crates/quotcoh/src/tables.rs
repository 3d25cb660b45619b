//! Reproduction of the reference tables and comparison with the embedded
//! golden copies in `fixtures/`.

use num_bigint::BigInt;
use quotcoh_core::engine::quotient_report;
use quotcoh_core::hilbert::{bb_quotient, betti_table, graded_profile, k3_rows, k3_table, K3Kind};
use quotcoh_core::lattice::invariants;
use quotcoh_core::toric::{hj_resolution, is_negative_definite};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::json::{big, rational, torsion_keys};

pub const TABLE_IDS: [&str; 6] = ["k3-symplectic", "k3-nonsymplectic", "torsion", "betti", "bb", "hj"];

pub fn golden(id: &str) -> CliResult<Value> {
    let text = match id {
        "k3-symplectic" => include_str!("../fixtures/k3-symplectic.json"),
        "k3-nonsymplectic" => include_str!("../fixtures/k3-nonsymplectic.json"),
        "torsion" => include_str!("../fixtures/torsion.json"),
        "betti" => include_str!("../fixtures/betti.json"),
        "bb" => include_str!("../fixtures/bb.json"),
        "hj" => include_str!("../fixtures/hj.json"),
        _ => return Err(CliError::Usage(format!("unknown table {id:?}; expected one of {TABLE_IDS:?} or all"))),
    };
    Ok(serde_json::from_str(text)?)
}

pub fn compute(id: &str) -> CliResult<Value> {
    match id {
        "k3-symplectic" => k3(K3Kind::Symplectic, id),
        "k3-nonsymplectic" => k3(K3Kind::NonSymplectic, id),
        "torsion" => torsion(),
        "betti" => betti(),
        "bb" => bb(),
        "hj" => hj(),
        _ => Err(CliError::Usage(format!("unknown table {id:?}; expected one of {TABLE_IDS:?} or all"))),
    }
}

fn k3(kind: K3Kind, id: &str) -> CliResult<Value> {
    let mut rows = Vec::new();
    for spec in k3_rows().into_iter().filter(|r| r.kind == kind) {
        let row = k3_table(spec.p, kind)?;
        let disc: BigInt = row.invariants.discriminant_group.iter().product();
        rows.push(json!({
            "p": spec.p,
            "lattice": spec.lattice_name,
            "rank": row.invariants.rank,
            "signature": [row.invariants.signature.0, row.invariants.signature.1],
            "discriminant": big(&disc),
            "singular_points": spec.eta_k3,
        }));
    }
    Ok(json!({ "table": id, "rows": rows }))
}

const HILBERT_CASES: [(u64, u32); 4] = [(5, 2), (7, 2), (5, 3), (7, 3)];

fn torsion() -> CliResult<Value> {
    let mut rows = Vec::new();
    for (p, m) in HILBERT_CASES {
        let spec = quotcoh_core::hilbert::k3_spec(p, K3Kind::Symplectic)?;
        let inv = graded_profile(m, &spec.h2_profile()?)?;
        let report = quotient_report(&inv)?;
        let l_plus: Vec<u64> = (1..=m as usize).map(|k| inv.degrees[2 * k].l_plus).collect();
        rows.push(json!({
            "p": p,
            "m": m,
            "l_plus": l_plus,
            "eta": inv.eta,
            "odd_torsion": torsion_keys(&report),
        }));
    }
    Ok(json!({ "table": "torsion", "rows": rows }))
}

fn betti() -> CliResult<Value> {
    let mut rows = Vec::new();
    for (p, m) in HILBERT_CASES {
        let r = betti_table(p, m)?;
        let mut row = json!({ "p": p, "m": m, "b2": r.b(2), "b4": r.b(4) });
        if m == 3 {
            row["b6"] = json!(r.b(6));
        }
        row["singular_points"] = json!(r.singular_points);
        rows.push(row);
    }
    Ok(json!({ "table": "betti", "rows": rows }))
}

pub fn bb_lattice_name(p: u64, m: u32) -> String {
    let d = 2 * p as i64 * (i64::from(m) - 1);
    match p {
        5 => format!("U(5)+U^2+(-{d})"),
        _ => format!("U+[[4,-3],[-3,4]]+(-{d})"),
    }
}

fn bb() -> CliResult<Value> {
    let mut rows = Vec::new();
    for (p, ms) in [(5u64, 2..=4u32), (7, 2..=6)] {
        for m in ms {
            let q = bb_quotient(p, m)?;
            let inv = invariants(&q.lattice)?;
            if inv != invariants(&q.target)? || &q.target_gram_in_basis != q.target.gram() {
                return Err(CliError::Mismatch(format!("p = {p}, m = {m}: quotient lattice differs from its target")));
            }
            rows.push(json!({
                "p": p,
                "m": m,
                "lattice": bb_lattice_name(p, m),
                "rank": inv.rank,
                "signature": [inv.signature.0, inv.signature.1],
                "discriminant_group": inv.discriminant_group.iter().map(big).collect::<Vec<_>>(),
                "fujiki": rational(&q.fujiki),
            }));
        }
    }
    Ok(json!({ "table": "bb", "rows": rows }))
}

const HJ_PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
const HJ_SAMPLES: [(u64, u64); 9] = [(2, 1), (3, 1), (3, 2), (5, 2), (5, 3), (7, 3), (7, 6), (11, 4), (19, 1)];

fn hj() -> CliResult<Value> {
    let mut det_ok = true;
    let mut definite = true;
    for p in HJ_PRIMES {
        for a in 1..p {
            let (_, gram) = hj_resolution(p, a)?;
            det_ok &= gram.det().magnitude() == &num_bigint::BigUint::from(p);
            definite &= is_negative_definite(&gram)?;
        }
    }
    let mut chains = Vec::new();
    for (p, a) in HJ_SAMPLES {
        let (chain, _) = hj_resolution(p, a)?;
        chains.push(json!({ "p": p, "a": a, "chain": chain }));
    }
    Ok(json!({
        "table": "hj",
        "primes": HJ_PRIMES,
        "all_weights": { "abs_det_equals_p": det_ok, "negative_definite": definite },
        "chains": chains,
    }))
}

/// Dotted paths where two JSON values differ.
pub fn diff(expected: &Value, actual: &Value) -> Vec<String> {
    let mut out = Vec::new();
    diff_into("", expected, actual, &mut out);
    out
}

fn diff_into(path: &str, e: &Value, a: &Value, out: &mut Vec<String>) {
    match (e, a) {
        (Value::Object(eo), Value::Object(ao)) => {
            for (k, ev) in eo {
                match ao.get(k) {
                    Some(av) => diff_into(&format!("{path}.{k}"), ev, av, out),
                    None => out.push(format!("{path}.{k}: missing")),
                }
            }
            for k in ao.keys().filter(|k| !eo.contains_key(*k)) {
                out.push(format!("{path}.{k}: unexpected"));
            }
        }
        (Value::Array(ea), Value::Array(aa)) if ea.len() == aa.len() => {
            for (i, (ev, av)) in ea.iter().zip(aa).enumerate() {
                diff_into(&format!("{path}[{i}]"), ev, av, out);
            }
        }
        _ if e == a => {}
        _ => out.push(format!("{path}: expected {e}, got {a}")),
    }
}

#[derive(Debug)]
pub struct TableCheck {
    pub id: String,
    pub computed: Value,
    pub differences: Vec<String>,
}

pub fn check(id: &str) -> CliResult<TableCheck> {
    let expected = golden(id)?;
    let computed = compute(id)?;
    let differences = diff(&expected, &computed);
    Ok(TableCheck { id: id.into(), computed, differences })
}

pub fn selected(which: &str) -> CliResult<Vec<&'static str>> {
    if which == "all" {
        return Ok(TABLE_IDS.to_vec());
    }
    TABLE_IDS
        .iter()
        .find(|&&t| t == which)
        .map(|&t| vec![t])
        .ok_or_else(|| CliError::Usage(format!("unknown table {which:?}; expected one of {TABLE_IDS:?} or all")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diff_reports_paths() {
        let e = json!({"rows": [{"p": 2, "x": [1, 2]}]});
        let a = json!({"rows": [{"p": 2, "x": [1, 3]}], "extra": 1});
        assert_eq!(diff(&e, &a), vec![".rows[0].x[1]: expected 2, got 3", ".extra: unexpected"]);
        assert!(diff(&e, &e).is_empty());
    }

    #[test]
    fn unknown_table() {
        assert!(selected("nope").is_err());
        assert_eq!(selected("all").unwrap().len(), 6);
    }
}
