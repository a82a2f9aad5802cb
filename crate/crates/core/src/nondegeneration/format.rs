//! JSON format for non-degeneration certificates.
//!
//! ```json
//! {
//!   "kind": "closed-set",
//!   "source": "T10",
//!   "target": "T17",
//!   "spec": {"dim": 3, "triples": [[1, 1, 2]], "conditions": ["S1*S3 + S2^2 ⊆ S3", "S2*S3 = 0"]},
//!   "basis": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
//!   "transcripts": [{"permutation": [1, 2, 3], "parameters": [], "generators": ["1"], "reduced_basis": ["1"], "verdict": "empty-over-c"}]
//! }
//! ```
//!
//! `kind` is one of `derivation-dimension`, `peirce-obstruction`,
//! `power-rank` or `closed-set`; only the last carries `spec`, `basis` and
//! `transcripts`. Triples are 1-based.

use serde::Serializer;
use serde_json::{Map, Value};

use super::bruhat::CellTranscript;
use super::certificate::{CertificateKind, ClosedSetEvidence, Evidence, NonDegenerationCertificate};
use super::spec::ClosedSetSpec;
use super::NondegenerationError;
use crate::algebra::format::{algebra_from_value, algebra_to_value};
use crate::algebra::{catalog, Algebra, BasisChange, Family};
use crate::exact::rational::{format_rational, parse_rational};
use crate::exact::{Matrix, Rational};

pub const DIM2_CERTIFICATES: &str = include_str!("../../data/certificates/dim2.json");
pub const DIM3_CERTIFICATES: &str = include_str!("../../data/certificates/dim3.json");

pub(crate) fn ser_vector<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

fn format_err(location: impl Into<String>, message: impl Into<String>) -> NondegenerationError {
    NondegenerationError::Format {
        location: location.into(),
        message: message.into(),
    }
}

fn algebra_field(doc: &Map<String, Value>, field: &str, path: &str) -> Result<Algebra, NondegenerationError> {
    let loc = format!("{path}{field}");
    match doc.get(field) {
        Some(Value::String(label)) => Ok(catalog(label)?),
        Some(v @ Value::Object(_)) => algebra_from_value(v, &loc).map_err(|e| format_err(loc, e.to_string())),
        Some(_) => Err(format_err(loc, "expected a label or an algebra document")),
        None => Err(format_err(loc, "missing field")),
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

fn spec_from_value(v: &Value, loc: &str) -> Result<ClosedSetSpec, NondegenerationError> {
    let doc = v.as_object().ok_or_else(|| format_err(loc, "expected an object"))?;
    let dim = doc
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| format_err(format!("{loc}.dim"), "expected a positive integer"))? as usize;
    let mut triples = Vec::new();
    if let Some(ts) = doc.get("triples") {
        let ts = ts
            .as_array()
            .ok_or_else(|| format_err(format!("{loc}.triples"), "expected an array"))?;
        for (i, t) in ts.iter().enumerate() {
            let t: Option<Vec<usize>> = t
                .as_array()
                .map(|a| a.iter().filter_map(|x| x.as_u64().map(|x| x as usize)).collect());
            match t {
                Some(t) if t.len() == 3 => triples.push([t[0], t[1], t[2]]),
                _ => return Err(format_err(format!("{loc}.triples[{i}]"), "expected three indices")),
            }
        }
    }
    let mut conditions = Vec::new();
    if let Some(cs) = doc.get("conditions") {
        let cs = cs
            .as_array()
            .ok_or_else(|| format_err(format!("{loc}.conditions"), "expected an array"))?;
        for (i, c) in cs.iter().enumerate() {
            conditions.push(
                c.as_str()
                    .ok_or_else(|| format_err(format!("{loc}.conditions[{i}]"), "expected a string"))?,
            );
        }
    }
    Ok(ClosedSetSpec::parse(dim, &triples, &conditions)?)
}

pub fn spec_to_value(s: &ClosedSetSpec) -> Value {
    let mut doc = Map::new();
    doc.insert("dim".into(), Value::from(s.dim()));
    doc.insert(
        "triples".into(),
        Value::Array(s.triples_1based().iter().map(|t| Value::from(t.to_vec())).collect()),
    );
    doc.insert("conditions".into(), Value::from(s.condition_strings()));
    Value::Object(doc)
}

fn matrix_from_value(v: &Value, loc: &str) -> Result<Matrix<Rational>, NondegenerationError> {
    let rows = v.as_array().ok_or_else(|| format_err(loc, "expected an array of rows"))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| format_err(format!("{loc}[{i}]"), "expected an array"))?;
        let mut r = Vec::with_capacity(row.len());
        for (j, x) in row.iter().enumerate() {
            let s = match x {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                _ => return Err(format_err(format!("{loc}[{i}][{j}]"), "expected a rational")),
            };
            r.push(parse_rational(&s).ok_or_else(|| format_err(format!("{loc}[{i}][{j}]"), format!("bad rational {s:?}")))?);
        }
        if r.len() != rows.len() {
            return Err(format_err(format!("{loc}[{i}]"), "basis matrix must be square"));
        }
        out.push(r);
    }
    Ok(Matrix::from_rows(out))
}

fn certificate_from_value(value: &Value, path: &str) -> Result<NonDegenerationCertificate, NondegenerationError> {
    let doc = value
        .as_object()
        .ok_or_else(|| format_err(path.trim_end_matches('.'), "expected an object"))?;
    let kind_loc = format!("{path}kind");
    let kind_str = doc
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| format_err(&kind_loc, "missing kind"))?;
    let kind = CertificateKind::parse(kind_str).ok_or_else(|| format_err(&kind_loc, format!("unknown kind {kind_str:?}")))?;
    let source = algebra_field(doc, "source", path)?;
    let target = algebra_field(doc, "target", path)?;
    let evidence = match kind {
        CertificateKind::DerivationDimension => Evidence::DerivationDimension,
        CertificateKind::PeirceObstruction => Evidence::PeirceObstruction,
        CertificateKind::PowerRank => Evidence::PowerRank,
        CertificateKind::ClosedSet => {
            let spec_loc = format!("{path}spec");
            let spec = spec_from_value(doc.get("spec").ok_or_else(|| format_err(&spec_loc, "missing field"))?, &spec_loc)?;
            let basis_loc = format!("{path}basis");
            let basis = match doc.get("basis") {
                Some(v) => BasisChange::new(matrix_from_value(v, &basis_loc)?)?,
                None => BasisChange::identity(source.dim()),
            };
            let transcripts: Vec<CellTranscript> = match doc.get("transcripts") {
                Some(v) => serde_json::from_value(v.clone())
                    .map_err(|e| format_err(format!("{path}transcripts"), e.to_string()))?,
                None => Vec::new(),
            };
            Evidence::ClosedSet(ClosedSetEvidence {
                spec,
                basis,
                transcripts,
            })
        }
    };
    let mut cert = NonDegenerationCertificate::new(source, target, evidence)?;
    if let Some(o) = doc.get("origin").and_then(Value::as_str) {
        cert = cert.with_origin(o);
    }
    Ok(cert)
}

/// Reads a single certificate document or a list of them.
pub fn parse_certificates(text: &str) -> Result<Vec<NonDegenerationCertificate>, NondegenerationError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| format_err(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
    match &value {
        Value::Array(items) => items
            .iter()
            .enumerate()
            .map(|(i, v)| certificate_from_value(v, &format!("[{i}].")))
            .collect(),
        v => Ok(vec![certificate_from_value(v, "")?]),
    }
}

pub fn parse_certificate(text: &str) -> Result<NonDegenerationCertificate, NondegenerationError> {
    let mut all = parse_certificates(text)?;
    if all.len() != 1 {
        return Err(format_err("", format!("expected one certificate, found {}", all.len())));
    }
    Ok(all.remove(0))
}

pub fn certificate_to_value(c: &NonDegenerationCertificate) -> Value {
    let mut doc = Map::new();
    doc.insert("kind".into(), Value::from(c.kind().as_str()));
    doc.insert("source".into(), algebra_ref(&c.source));
    doc.insert("target".into(), algebra_ref(&c.target));
    if let Some(o) = &c.origin {
        doc.insert("origin".into(), Value::from(o.as_str()));
    }
    if let Evidence::ClosedSet(e) = &c.evidence {
        doc.insert("spec".into(), spec_to_value(&e.spec));
        let rows = e
            .basis
            .matrix()
            .to_rows()
            .into_iter()
            .map(|r| Value::Array(r.iter().map(|x| Value::from(format_rational(x))).collect()))
            .collect();
        doc.insert("basis".into(), Value::Array(rows));
        doc.insert(
            "transcripts".into(),
            serde_json::to_value(&e.transcripts).expect("transcripts serialize"),
        );
    }
    Value::Object(doc)
}

pub fn serialize_certificates(cs: &[NonDegenerationCertificate]) -> String {
    let v = Value::Array(cs.iter().map(certificate_to_value).collect());
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn serialize_certificate(c: &NonDegenerationCertificate) -> String {
    let mut s = serde_json::to_string_pretty(&certificate_to_value(c)).expect("json values serialize");
    s.push('\n');
    s
}

pub fn shipped_certificates(family: Family) -> Vec<NonDegenerationCertificate> {
    let text = match family {
        Family::Dim2 => DIM2_CERTIFICATES,
        Family::Dim3 => DIM3_CERTIFICATES,
        Family::Marginal => return Vec::new(),
    };
    parse_certificates(text).expect("shipped certificate data parses")
}
