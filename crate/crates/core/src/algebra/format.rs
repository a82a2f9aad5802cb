//! JSON file format for algebras.
//!
//! ```json
//! {
//!   "dim": 3,
//!   "basis": ["e1", "n1", "n2"],
//!   "label": "T12",
//!   "products": { "e1*e1": "e1", "e1*n1": "1/2*n1", "e1*n2": "1/2*n2" }
//! }
//! ```
//!
//! Omitted products are zero. `products` may also be a list of one-entry
//! objects. Serialization is canonical: products in lexicographic `(i, j)`
//! order with `i ≤ j`, zero products omitted, coefficients in lowest terms.

use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};

use super::{Algebra, Table};
use crate::exact::rational::format_rational;
use crate::exact::{parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{location}: {message}")]
    Invalid { location: String, message: String },
}

fn invalid(location: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Invalid {
        location: location.into(),
        message: message.into(),
    }
}

pub fn parse_algebra(text: &str) -> Result<Algebra, FormatError> {
    let value: Value = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    algebra_from_value(&value, "")
}

/// Reads an algebra document already parsed as JSON; `path` prefixes error
/// locations when the algebra is embedded in a larger document.
pub fn algebra_from_value(value: &Value, path: &str) -> Result<Algebra, FormatError> {
    let loc = |field: &str| {
        if path.is_empty() {
            field.to_string()
        } else {
            format!("{path}.{field}")
        }
    };
    let obj = value
        .as_object()
        .ok_or_else(|| invalid(loc("$"), "expected an object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "dim" | "basis" | "label" | "products") {
            return Err(invalid(loc(key), "unknown field"));
        }
    }
    let dim = obj
        .get("dim")
        .ok_or_else(|| invalid(loc("dim"), "missing field"))?
        .as_u64()
        .ok_or_else(|| invalid(loc("dim"), "expected a non-negative integer"))? as usize;
    if dim > 64 {
        return Err(invalid(loc("dim"), "dimension too large"));
    }
    let names: Vec<String> = match obj.get("basis") {
        None => super::default_names(dim),
        Some(Value::Array(items)) => items
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let s = v
                    .as_str()
                    .ok_or_else(|| invalid(format!("{}[{i}]", loc("basis")), "expected a string"))?;
                if !is_identifier(s) {
                    return Err(invalid(format!("{}[{i}]", loc("basis")), format!("invalid basis name {s:?}")));
                }
                Ok(s.to_string())
            })
            .collect::<Result<_, _>>()?,
        Some(_) => return Err(invalid(loc("basis"), "expected a list of names")),
    };
    if names.len() != dim {
        return Err(invalid(
            loc("basis"),
            format!("dimension mismatch: dim is {dim} but {} basis names given", names.len()),
        ));
    }
    for (i, a) in names.iter().enumerate() {
        if names[..i].contains(a) {
            return Err(invalid(format!("{}[{i}]", loc("basis")), format!("duplicate basis name {a:?}")));
        }
    }
    let label = match obj.get("label") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(invalid(loc("label"), "expected a string")),
    };

    let entries: Vec<(String, String, String)> = match obj.get("products") {
        None | Some(Value::Null) => Vec::new(),
        Some(Value::Object(m)) => m
            .iter()
            .map(|(k, v)| {
                let l = format!("{}[{k:?}]", loc("products"));
                let s = v.as_str().ok_or_else(|| invalid(&l, "expected a string"))?;
                Ok((k.clone(), s.to_string(), l))
            })
            .collect::<Result<_, FormatError>>()?,
        Some(Value::Array(items)) => {
            let mut out = Vec::new();
            for (idx, item) in items.iter().enumerate() {
                let l = format!("{}[{idx}]", loc("products"));
                let m = item
                    .as_object()
                    .filter(|m| m.len() == 1)
                    .ok_or_else(|| invalid(&l, "expected an object with a single entry"))?;
                let (k, v) = m.iter().next().unwrap();
                let s = v.as_str().ok_or_else(|| invalid(&l, "expected a string"))?;
                out.push((k.clone(), s.to_string(), l));
            }
            out
        }
        Some(_) => return Err(invalid(loc("products"), "expected an object or a list")),
    };

    let mut table: Table<Rational> = Table::zero(dim);
    let mut seen: Vec<Option<String>> = vec![None; dim * dim];
    for (key, expr, l) in entries {
        let (i, j) = parse_product_key(&key, &names).map_err(|m| invalid(&l, m))?;
        let coords = parse_linear_combination(&expr, &names)
            .map_err(|(col, m)| invalid(&l, format!("{m} at column {col} of {expr:?}")))?;
        for (a, b) in [(i, j), (j, i)] {
            if let Some(prev) = &seen[a * dim + b] {
                let existing = table.basis_product(a, b);
                if existing != coords.as_slice() {
                    return Err(invalid(&l, format!("conflicts with earlier entry {prev:?}")));
                }
            }
        }
        for (k, v) in coords.iter().enumerate() {
            table.set(i, j, k, v.clone());
            table.set(j, i, k, v.clone());
        }
        seen[i * dim + j] = Some(key.clone());
        seen[j * dim + i] = Some(key);
    }
    Ok(Algebra::new(table, names, label))
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn parse_product_key(key: &str, names: &[String]) -> Result<(usize, usize), String> {
    let (a, b) = key
        .split_once('*')
        .ok_or_else(|| format!("product key {key:?} must have the form \"a*b\""))?;
    let find = |s: &str| {
        let s = s.trim();
        names
            .iter()
            .position(|n| n == s)
            .ok_or_else(|| format!("unknown basis element {s:?} in product key"))
    };
    Ok((find(a)?, find(b)?))
}

/// Parses `"e1 - 1/2*n1 + 3 n2"` into coordinates. Errors carry a 1-based
/// column.
pub fn parse_linear_combination(s: &str, names: &[String]) -> Result<Vec<Rational>, (usize, String)> {
    let chars: Vec<char> = s.chars().collect();
    let mut pos = 0;
    let mut out = vec![Rational::zero(); names.len()];
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == chars.len() {
        return Err((pos + 1, "empty linear combination".into()));
    }
    let mut first = true;
    loop {
        skip_ws(&mut pos);
        if pos == chars.len() {
            break;
        }
        let mut sign = Rational::one();
        if !first || matches!(chars[pos], '+' | '-' | '−') {
            match chars[pos] {
                '+' => {}
                '-' | '−' => sign = -sign,
                _ => return Err((pos + 1, "expected '+' or '-'".into())),
            }
            pos += 1;
            skip_ws(&mut pos);
        }
        first = false;
        let start = pos;
        let mut coef = Rational::one();
        let mut has_coef = false;
        if pos < chars.len() && chars[pos].is_ascii_digit() {
            while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '/') {
                pos += 1;
            }
            let lit: String = chars[start..pos].iter().collect();
            coef = parse_rational(&lit).ok_or((start + 1, format!("invalid rational {lit:?}")))?;
            has_coef = true;
            skip_ws(&mut pos);
            if pos < chars.len() && matches!(chars[pos], '*' | '·') {
                pos += 1;
                skip_ws(&mut pos);
            }
        }
        let name_start = pos;
        if pos < chars.len() && (chars[pos].is_alphabetic() || chars[pos] == '_') {
            pos += 1;
            while pos < chars.len() && (chars[pos].is_alphanumeric() || chars[pos] == '_' || chars[pos] == '\'') {
                pos += 1;
            }
            let name: String = chars[name_start..pos].iter().collect();
            let k = names
                .iter()
                .position(|n| *n == name)
                .ok_or((name_start + 1, format!("unknown basis element {name:?}")))?;
            out[k] += &sign * &coef;
        } else if has_coef && coef.is_zero() {
            // a literal "0" term
        } else if name_start == chars.len() {
            return Err((name_start + 1, "expected a basis element".into()));
        } else {
            return Err((name_start + 1, format!("unexpected character {:?}", chars[name_start])));
        }
    }
    Ok(out)
}

/// Canonical linear combination string; `"0"` for the zero vector.
pub fn format_linear_combination(v: &[Rational], names: &[String]) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !a.is_one() {
            out.push_str(&format_rational(&a));
            out.push('*');
        }
        out.push_str(&names[k]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn algebra_to_value(a: &Algebra) -> Value {
    let n = a.dim();
    let mut doc = Map::new();
    doc.insert("dim".into(), Value::from(n));
    doc.insert(
        "basis".into(),
        Value::Array(a.basis_names.iter().map(|s| Value::from(s.as_str())).collect()),
    );
    if let Some(l) = &a.label {
        doc.insert("label".into(), Value::from(l.as_str()));
    }
    let mut products = Map::new();
    for i in 0..n {
        for j in i..n {
            let v = a.table.basis_product(i, j);
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            products.insert(
                format!("{}*{}", a.basis_names[i], a.basis_names[j]),
                Value::from(format_linear_combination(v, &a.basis_names)),
            );
        }
    }
    doc.insert("products".into(), Value::Object(products));
    Value::Object(doc)
}

/// Canonical pretty-printed document with a trailing newline.
pub fn serialize_algebra(a: &Algebra) -> String {
    let mut s = serde_json::to_string_pretty(&algebra_to_value(a)).expect("json values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    const T12: &str = r#"{
  "dim": 3,
  "basis": ["e1", "n1", "n2"],
  "label": "T12",
  "products": {"e1*e1": "e1", "n1*e1": "1/2*n1", "e1*n2": "1/2 n2"}
}"#;

    #[test]
    fn parses_t12() {
        let a = parse_algebra(T12).unwrap();
        assert_eq!(a.c(0, 1, 1), &rat(1, 2));
        assert_eq!(a.c(1, 0, 1), &rat(1, 2));
        assert_eq!(a.c(0, 2, 2), &rat(1, 2));
        assert_eq!(a.c(0, 0, 0), &int(1));
        let s = serialize_algebra(&a);
        assert_eq!(serialize_algebra(&parse_algebra(&s).unwrap()), s);
        assert!(s.contains("\"e1*n1\": \"1/2*n1\""));
    }

    #[test]
    fn empty_products_give_zero_algebra() {
        let a = parse_algebra(r#"{"dim": 3, "basis": ["a","b","c"], "products": {}}"#).unwrap();
        assert!(a.is_zero_algebra());
    }

    #[test]
    fn errors_have_locations() {
        let e = parse_algebra(r#"{"dim": 3, "basis": ["e1","e2","e3"], "products": {"e1*e4": "e1"}}"#)
            .unwrap_err();
        assert!(e.to_string().contains("e4"), "{e}");
        let e = parse_algebra(r#"{"dim": 3, "basis": ["e1","e2","e3"], "products": {"e1*e2": "e1 + 2*e4"}}"#)
            .unwrap_err();
        assert!(e.to_string().contains("column 8"), "{e}");
        let e = parse_algebra("{\"dim\": 2,\n \"basis\": [}").unwrap_err();
        assert!(matches!(e, FormatError::Syntax { line: 2, .. }), "{e}");
        let e = parse_algebra(r#"{"dim": 2, "basis": ["a"]}"#).unwrap_err();
        assert!(e.to_string().contains("mismatch"));
    }

    #[test]
    fn both_orders_must_agree() {
        let ok = r#"{"dim": 2, "basis": ["a","b"], "products": {"a*b": "a", "b*a": "a"}}"#;
        assert!(parse_algebra(ok).is_ok());
        let bad = r#"{"dim": 2, "basis": ["a","b"], "products": {"a*b": "a", "b*a": "b"}}"#;
        assert!(parse_algebra(bad).is_err());
    }

    #[test]
    fn linear_combinations() {
        let names: Vec<String> = ["e1", "n1"].iter().map(|s| s.to_string()).collect();
        assert_eq!(
            parse_linear_combination("-e1 - 3/4*n1", &names).unwrap(),
            vec![int(-1), rat(-3, 4)]
        );
        assert_eq!(parse_linear_combination("0", &names).unwrap(), vec![int(0), int(0)]);
        assert!(parse_linear_combination("e1 n1", &names).is_err());
        assert_eq!(format_linear_combination(&[int(-1), rat(-3, 4)], &names), "-e1 - 3/4*n1");
    }
}
