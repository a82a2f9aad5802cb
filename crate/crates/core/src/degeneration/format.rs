//! JSON format for degeneration witnesses.
//!
//! ```json
//! {
//!   "source": "T03",
//!   "target": "T09",
//!   "basis": [["1", "0", "0"], ["0", "0", "1"], ["0", "t", "0"]]
//! }
//! ```
//!
//! `source` and `target` are catalog labels or inline algebra documents.
//! Row `i` of `basis` holds the coefficients of `Eᵢᵗ` in the source basis.
//! A file holds one witness or a list of them.

use serde_json::{Map, Value};

use super::{DegenerationError, DegenerationWitness, ParametrizedBasis};
use crate::algebra::format::{algebra_from_value, algebra_to_value};
use crate::algebra::{catalog, Algebra, Family};

pub const DIM2_WITNESSES: &str = include_str!("../../data/witnesses/dim2.json");
pub const DIM3_WITNESSES: &str = include_str!("../../data/witnesses/dim3.json");

fn format_err(location: impl Into<String>, message: impl Into<String>) -> DegenerationError {
    DegenerationError::Format {
        location: location.into(),
        message: message.into(),
    }
}

fn algebra_field(doc: &Map<String, Value>, field: &str, path: &str) -> Result<Algebra, DegenerationError> {
    let loc = format!("{path}{field}");
    match doc.get(field) {
        Some(Value::String(label)) => Ok(catalog(label)?),
        Some(v @ Value::Object(_)) => algebra_from_value(v, &loc).map_err(|e| format_err(loc, e.to_string())),
        Some(_) => Err(format_err(loc, "expected a label or an algebra document")),
        None => Err(format_err(loc, "missing field")),
    }
}

fn witness_from_value(value: &Value, path: &str) -> Result<DegenerationWitness, DegenerationError> {
    let doc = value
        .as_object()
        .ok_or_else(|| format_err(path.trim_end_matches('.'), "expected an object"))?;
    let source = algebra_field(doc, "source", path)?;
    let target = algebra_field(doc, "target", path)?;
    let loc = format!("{path}basis");
    let rows = doc
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| format_err(&loc, "expected an array of rows"))?;
    let mut strings: Vec<Vec<String>> = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| format_err(format!("{loc}[{i}]"), "expected an array"))?;
        let mut r = Vec::with_capacity(row.len());
        for (j, x) in row.iter().enumerate() {
            match x {
                Value::String(s) => r.push(s.clone()),
                Value::Number(n) => r.push(n.to_string()),
                _ => return Err(format_err(format!("{loc}[{i}][{j}]"), "expected a string")),
            }
        }
        strings.push(r);
    }
    let basis = ParametrizedBasis::parse(&strings)?;
    let mut w = DegenerationWitness::new(source, target, basis)?;
    if let Some(o) = doc.get("origin").and_then(Value::as_str) {
        w = w.with_origin(o);
    }
    Ok(w)
}

pub fn parse_witness(text: &str) -> Result<DegenerationWitness, DegenerationError> {
    let mut all = parse_witnesses(text)?;
    if all.len() != 1 {
        return Err(format_err("", format!("expected one witness, found {}", all.len())));
    }
    Ok(all.remove(0))
}

/// Reads a single witness document or a list of them.
pub fn parse_witnesses(text: &str) -> Result<Vec<DegenerationWitness>, DegenerationError> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        format_err(format!("line {}, column {}", e.line(), e.column()), e.to_string())
    })?;
    match &value {
        Value::Array(items) => items
            .iter()
            .enumerate()
            .map(|(i, v)| witness_from_value(v, &format!("[{i}].")))
            .collect(),
        v => Ok(vec![witness_from_value(v, "")?]),
    }
}

fn algebra_ref(a: &Algebra) -> Value {
    if let Some(l) = &a.label {
        if let Ok(c) = catalog(l) {
            if c.table == a.table && c.basis_names == a.basis_names {
                return Value::from(l.as_str());
            }
        }
    }
    algebra_to_value(a)
}

pub fn witness_to_value(w: &DegenerationWitness) -> Value {
    let mut doc = Map::new();
    doc.insert("source".into(), algebra_ref(&w.source));
    doc.insert("target".into(), algebra_ref(&w.target));
    if let Some(o) = &w.origin {
        doc.insert("origin".into(), Value::from(o.as_str()));
    }
    let rows = w
        .basis
        .to_strings()
        .into_iter()
        .map(|r| Value::Array(r.into_iter().map(Value::from).collect()))
        .collect();
    doc.insert("basis".into(), Value::Array(rows));
    Value::Object(doc)
}

pub fn serialize_witness(w: &DegenerationWitness) -> String {
    let mut s = serde_json::to_string_pretty(&witness_to_value(w)).expect("json values serialize");
    s.push('\n');
    s
}

pub fn serialize_witnesses(ws: &[DegenerationWitness]) -> String {
    let v = Value::Array(ws.iter().map(witness_to_value).collect());
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

/// The witnesses shipped with the crate for one catalog.
pub fn shipped_witnesses(family: Family) -> Vec<DegenerationWitness> {
    let text = match family {
        Family::Dim2 => DIM2_WITNESSES,
        Family::Dim3 => DIM3_WITNESSES,
        Family::Marginal => return Vec::new(),
    };
    parse_witnesses(text).expect("shipped witness data parses")
}

/// Shipped witnesses that certify graph edges: a printed row is replaced by
/// its corrected version when one is shipped.
pub fn edge_witnesses(family: Family) -> Vec<DegenerationWitness> {
    let all = shipped_witnesses(family);
    let corrected: Vec<(Option<String>, Option<String>)> = all
        .iter()
        .filter(|w| w.origin.as_deref() == Some(CORRECTED))
        .map(|w| (w.source.label.clone(), w.target.label.clone()))
        .collect();
    all.into_iter()
        .filter(|w| {
            w.origin.as_deref() != Some(PRINTED)
                || !corrected.contains(&(w.source.label.clone(), w.target.label.clone()))
        })
        .collect()
}

/// `origin` of rows copied from the published witness table.
pub const PRINTED: &str = "table";
/// `origin` of a published row after correction.
pub const CORRECTED: &str = "table-corrected";
/// `origin` of witnesses built for edges whose bases are not printed.
pub const CONSTRUCTED: &str = "constructed";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degeneration::verify_witness;

    #[test]
    fn shipped_data_round_trips_and_verifies() {
        for family in [Family::Dim2, Family::Dim3] {
            let ws = shipped_witnesses(family);
            for w in &ws {
                let r = verify_witness(w);
                let printed_typo = ["T03->T15", "T04->T17", "T05->T17", "T16->T19"].contains(&r.name.as_str())
                    && w.origin.as_deref() == Some(PRINTED);
                assert_eq!(r.verified, !printed_typo, "{}", r.summary());
                assert!(r.non_polynomial_entries.is_empty());
            }
            let again = parse_witnesses(&serialize_witnesses(&ws)).unwrap();
            assert_eq!(again, ws);
        }
        assert_eq!(shipped_witnesses(Family::Dim2).len(), 6);
        assert_eq!(shipped_witnesses(Family::Dim3).len(), 31);
        assert_eq!(edge_witnesses(Family::Dim3).len(), 29);
    }

    #[test]
    fn inline_algebras_and_errors() {
        let text = r#"{
  "source": {"dim": 2, "basis": ["a", "b"], "products": {"a*a": "a", "b*b": "b"}},
  "target": "B5",
  "basis": [["1", "0"], ["0", "t"]]
}"#;
        let w = parse_witness(text).unwrap();
        assert!(verify_witness(&w).verified);
        assert_eq!(parse_witness(&serialize_witness(&w)).unwrap(), w);

        let bad = r#"{"source": "T03", "target": "T09", "basis": [["1", "0", "0"], ["0", "0", "1"], ["0", "t+", "0"]]}"#;
        match parse_witness(bad) {
            Err(DegenerationError::Entry { row: 2, col: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        let unknown = r#"{"source": "T33", "target": "T09", "basis": []}"#;
        assert!(matches!(parse_witness(unknown), Err(DegenerationError::Catalog(_))));
        let mismatch = r#"{"source": "T03", "target": "B1", "basis": [["1","0"],["0","1"]]}"#;
        assert!(matches!(
            parse_witness(mismatch),
            Err(DegenerationError::DimensionMismatch(3, 2))
        ));
    }
}
