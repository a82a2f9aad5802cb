//! Browser bindings. Every export takes and returns plain strings; results
//! are JSON objects, with an `error` key when the input is rejected.

use jordeg_core::algebra::catalog::{catalog, normalize_label};
use jordeg_core::algebra::{parse_algebra, Family};
use jordeg_core::degeneration::edge_witnesses;
use jordeg_core::degeneration::{transform_by_parametrized_basis, verify_witness, DegenerationWitness};
use jordeg_core::exact::rational::{format_rational, Rational};
use jordeg_core::exact::Limit;
use jordeg_core::graph::{graph_to_value, shipped_graph};
use jordeg_core::invariants::fingerprint;
use jordeg_core::nondegeneration::CheckMode;
use jordeg_core::exact::groebner::DEFAULT_BUDGET;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn error(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

fn family(name: &str) -> Option<Family> {
    match name {
        "dim2" => Some(Family::Dim2),
        "dim3" => Some(Family::Dim3),
        _ => None,
    }
}

/// Degeneration graph of `dim2` or `dim3` with its primary edges, rigid
/// algebras and components. Recorded Gröbner reductions are trusted.
#[wasm_bindgen]
pub fn degeneration_graph(name: &str) -> String {
    let Some(fam) = family(name) else {
        return error(format!("unknown family {name}"));
    };
    match shipped_graph(fam, DEFAULT_BUDGET, CheckMode::Transcripts) {
        Ok((g, rejected)) => {
            let mut v = graph_to_value(&g);
            v["rejected"] = json!(rejected);
            v.to_string()
        }
        Err(e) => error(e),
    }
}

/// Shipped witnesses as `source->target [origin]` names.
#[wasm_bindgen]
pub fn witness_list(name: &str) -> String {
    let Some(fam) = family(name) else {
        return error(format!("unknown family {name}"));
    };
    let names: Vec<Value> = edge_witnesses(fam)
        .iter()
        .enumerate()
        .map(|(i, w)| json!({ "index": i, "name": w.name(), "origin": w.origin }))
        .collect();
    Value::from(names).to_string()
}

fn as_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

fn witness_at(w: &DegenerationWitness, t: &Rational) -> Result<Value, String> {
    let n = w.source.dim();
    let moved = transform_by_parametrized_basis(&w.source, &w.basis).map_err(|e| e.to_string())?;
    let names = &w.source.basis_names;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                let c = moved.get(i, j, k);
                let target = w.target.c(i, j, k);
                let at = c.eval(t);
                let limit = match c.limit_at_zero() {
                    Limit::Finite(v) => Value::from(format_rational(&v)),
                    Limit::Pole => Value::from("pole"),
                };
                if at.as_ref().is_some_and(|v| v.is_zero()) && target.is_zero() && limit == "0" {
                    continue;
                }
                rows.push(json!({
                    "product": format!("{}*{}", names[i], names[j]),
                    "component": names[k],
                    "formula": c.to_string_in("t"),
                    "value": at.as_ref().map(format_rational),
                    "approx": at.as_ref().map(as_f64),
                    "limit": limit,
                    "target": format_rational(target),
                }));
            }
        }
    }
    let report = verify_witness(w);
    Ok(json!({
        "name": w.name(),
        "t": format_rational(t),
        "basis": w.basis.to_strings(),
        "constants": rows,
        "verified": report.verified,
        "summary": report.summary(),
    }))
}

/// Structure constants of the `index`-th shipped witness at `t = num/den`,
/// next to their limits and the target's constants.
#[wasm_bindgen]
pub fn witness_slice(name: &str, index: usize, num: i32, den: i32) -> String {
    let Some(fam) = family(name) else {
        return error(format!("unknown family {name}"));
    };
    if den == 0 {
        return error("zero denominator");
    }
    let all = edge_witnesses(fam);
    let Some(w) = all.get(index) else {
        return error(format!("no witness {index}"));
    };
    let t = Rational::new(num.into(), den.into());
    match witness_at(w, &t) {
        Ok(v) => v.to_string(),
        Err(e) => error(e),
    }
}

/// Commutativity, the Jordan identity and, for Jordan algebras, the
/// invariants. Accepts the JSON algebra format or a catalog label.
#[wasm_bindgen]
pub fn check_algebra(input: &str) -> String {
    let trimmed = input.trim();
    let parsed = if trimmed.starts_with('{') {
        parse_algebra(trimmed).map_err(|e| e.to_string())
    } else {
        catalog(&normalize_label(trimmed)).map_err(|e| e.to_string())
    };
    let a = match parsed {
        Ok(a) => a,
        Err(e) => return error(e),
    };
    let commutative = a.is_commutative();
    let mut out = json!({
        "label": a.label,
        "dim": a.dim(),
        "commutative": commutative,
    });
    if !commutative {
        return out.to_string();
    }
    match a.jordan_violation() {
        Ok(None) => {
            out["jordan"] = Value::from(true);
            match fingerprint(&a, DEFAULT_BUDGET) {
                Ok(f) => out["invariants"] = json!(f),
                Err(e) => out["invariants_error"] = Value::from(e.to_string()),
            }
        }
        Ok(Some(v)) => {
            let names = &a.basis_names;
            out["jordan"] = Value::from(false);
            out["violation"] = json!({
                "a": names[v.a], "b": names[v.b], "c": names[v.c], "y": names[v.y],
                "value": v.value.iter().map(format_rational).collect::<Vec<_>>(),
            });
        }
        Err(e) => return error(e),
    }
    out.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn graph_of_the_plane() {
        let v = parse(&degeneration_graph("dim2"));
        assert_eq!(v["rigid"], json!(["B2", "B4"]));
        assert!(parse(&degeneration_graph("dim9"))["error"].is_string());
    }

    #[test]
    fn slider_approaches_the_limit() {
        let list = parse(&witness_list("dim3"));
        let i = list
            .as_array()
            .unwrap()
            .iter()
            .position(|w| w["name"] == "T03->T09")
            .unwrap();
        let v = parse(&witness_slice("dim3", i, 1, 1000));
        assert_eq!(v["verified"], true);
        for c in v["constants"].as_array().unwrap() {
            let limit: f64 = {
                let s = c["limit"].as_str().unwrap();
                match s.split_once('/') {
                    Some((a, b)) => a.parse::<f64>().unwrap() / b.parse::<f64>().unwrap(),
                    None => s.parse().unwrap(),
                }
            };
            assert!((c["approx"].as_f64().unwrap() - limit).abs() < 0.01, "{c}");
        }
    }

    #[test]
    fn check_finds_a_violation() {
        let v = parse(&check_algebra(r#"{"dim":2,"basis":["a","b"],"products":{"a*a":"b","a*b":"a"}}"#));
        assert_eq!(v["jordan"], false);
        let v = parse(&check_algebra("T08"));
        assert_eq!(v["invariants"]["der"], 4);
    }
}
