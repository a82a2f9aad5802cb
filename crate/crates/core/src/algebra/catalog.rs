//! Built-in catalogs: the two- and three-dimensional Jordan algebras and the
//! marginal family `J_k`.
//!
//! Tables are stored as in the classification, in its basis order
//! (idempotents first, then nilpotents). Each entry also carries the
//! published derivation and radical dimensions used as golden data.

use super::format::parse_linear_combination;
use super::{Algebra, Table};
use crate::exact::rational::rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Dim2,
    Dim3,
    Marginal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    /// ASCII label, e.g. `T01`.
    pub label: &'static str,
    /// Display label, e.g. `𝕋₀₁`.
    pub unicode: &'static str,
    /// Superscript tags as printed (`AUS` for `T01`); opaque metadata.
    pub tags: &'static str,
    /// Name in the earlier classification, when one is given.
    pub ks07: Option<&'static str>,
    pub family: Family,
    pub basis: &'static [&'static str],
    pub products: &'static [(&'static str, &'static str)],
    pub decomposition: Option<&'static str>,
    pub der: usize,
    /// Radical dimension when published.
    pub rad: Option<usize>,
}

impl CatalogEntry {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn algebra(&self) -> Algebra {
        let names: Vec<String> = self.basis.iter().map(|s| s.to_string()).collect();
        let n = names.len();
        let mut table: Table<crate::exact::Rational> = Table::zero(n);
        for (key, value) in self.products {
            let (a, b) = key.split_once('*').expect("catalog keys are a*b");
            let i = names.iter().position(|s| s == a).expect("catalog name");
            let j = names.iter().position(|s| s == b).expect("catalog name");
            let v = parse_linear_combination(value, &names).expect("catalog product");
            for (k, c) in v.into_iter().enumerate() {
                table.set(i, j, k, c.clone());
                table.set(j, i, k, c);
            }
        }
        Algebra::new(table, names, Some(self.label.to_string()))
    }
}

macro_rules! entry {
    ($label:expr, $uni:expr, $tags:expr, $ks:expr, $fam:expr, [$($b:expr),*], [$(($k:expr, $v:expr)),*], $dec:expr, $der:expr, $rad:expr) => {
        CatalogEntry {
            label: $label,
            unicode: $uni,
            tags: $tags,
            ks07: $ks,
            family: $fam,
            basis: &[$($b),*],
            products: &[$(($k, $v)),*],
            decomposition: $dec,
            der: $der,
            rad: $rad,
        }
    };
}

use Family::{Dim2, Dim3};

pub static CATALOG: &[CatalogEntry] = &[
    entry!("B1", "𝔅₁", "A", None, Dim2, ["e1", "n1"], [("e1*e1", "e1"), ("e1*n1", "n1")], None, 1, None),
    entry!("B2", "𝔅₂", "", None, Dim2, ["e1", "n1"], [("e1*e1", "e1"), ("e1*n1", "1/2*n1")], None, 2, None),
    entry!("B3", "𝔅₃", "AN", None, Dim2, ["n1", "n2"], [("n1*n1", "n2")], None, 2, None),
    entry!("B4", "𝔅₄", "A", None, Dim2, ["e1", "e2"], [("e1*e1", "e1"), ("e2*e2", "e2")], None, 0, None),
    entry!("B5", "𝔅₅", "A", None, Dim2, ["e1", "n1"], [("e1*e1", "e1")], None, 1, None),
    entry!("C2", "ℂ²", "", None, Dim2, ["n1", "n2"], [], None, 4, None),
    entry!("T01", "𝕋₀₁", "AUS", Some("A11"), Dim3, ["e1", "e2", "e3"],
        [("e1*e1", "e1"), ("e2*e2", "e2"), ("e3*e3", "e3")], Some("Ce1 ⊕ Ce2 ⊕ Ce3"), 0, Some(0)),
    entry!("T02", "𝕋₀₂", "US", Some("J1"), Dim3, ["e1", "e2", "e3"],
        [("e1*e1", "e1"), ("e2*e2", "e2"), ("e3*e3", "e1 + e2"), ("e1*e3", "1/2*e3"), ("e2*e3", "1/2*e3")], None, 1, Some(0)),
    entry!("T03", "𝕋₀₃", "AU", Some("A12"), Dim3, ["e1", "e2", "n1"],
        [("e1*e1", "e1"), ("e2*e2", "e2"), ("e1*n1", "n1")], Some("B1 ⊕ Ce2"), 1, Some(1)),
    entry!("T04", "𝕋₀₄", "U", Some("J2"), Dim3, ["e1", "e2", "n1"],
        [("e1*e1", "e1"), ("e2*e2", "e2"), ("e1*n1", "1/2*n1"), ("e2*n1", "1/2*n1")], None, 2, Some(1)),
    entry!("T05", "𝕋₀₅", "", Some("J3"), Dim3, ["e1", "e2", "n1"],
        [("e1*e1", "e1"), ("e2*e2", "e2"), ("e1*n1", "1/2*n1")], Some("B2 ⊕ Ce1"), 2, Some(1)),
    entry!("T06", "𝕋₀₆", "A", Some("A1"), Dim3, ["e1", "e2", "n1"],
        [("e1*e1", "e1"), ("e2*e2", "e2")], Some("Ce1 ⊕ Ce2 ⊕ Cn1"), 1, Some(1)),
    entry!("T07", "𝕋₀₇", "AU", Some("A13"), Dim3, ["e1", "n1", "n2"],
        [("e1*e1", "e1"), ("e1*n1", "n1"), ("e1*n2", "n2"), ("n1*n1", "n2")], None, 2, Some(2)),
    entry!("T08", "𝕋₀₈", "AU", Some("A14"), Dim3, ["e1", "n1", "n2"],
        [("e1*e1", "e1"), ("e1*n1", "n1"), ("e1*n2", "n2")], None, 4, Some(2)),
    entry!("T09", "𝕋₀₉", "A", Some("A2"), Dim3, ["e1", "n1", "n2"],
        [("e1*e1", "e1"), ("e1*n1", "n1")], Some("B1 ⊕ Cn2"), 2, Some(2)),
    entry!("T10", "𝕋₁₀", "", Some("J7"), Dim3, ["e1", "n1", "n2"],
        [("e1*e1", "e1"), ("e1*n1", "1/2*n1"), ("e1*n2", "n2"), ("n1*n1", "n2")], None, 2, Some(2)),
    entry!("T11", "𝕋₁₁", "", Some("J4"), Dim3, ["e1", "n1", "n2"],
        [("e1*e1", "e1"), ("e1*n1", "1/2*n1"), ("e1*n2", "n2")], None, 3, Some(2)),
    entry!("T12", "𝕋₁₂", "", Some("J5"), Dim3, ["e1", "n1", "n2"],
        [("e1*e1", "e1"), ("e1*n1", "1/2*n1"), ("e1*n2", "1/2*n2")], None, 6, Some(2)),
    entry!("T13", "𝕋₁₃", "", Some("J6"), Dim3, ["e1", "n1", "n2"],
        [("e1*e1", "e1"), ("e1*n1", "1/2*n1"), ("n1*n1", "n2")], None, 2, Some(2)),
    entry!("T14", "𝕋₁₄", "", Some("J8"), Dim3, ["e1", "n1", "n2"],
        [("e1*e1", "e1"), ("e1*n1", "1/2*n1")], Some("B2 ⊕ Cn2"), 3, Some(2)),
    entry!("T15", "𝕋₁₅", "A", Some("A3"), Dim3, ["e1", "n1", "n2"],
        [("e1*e1", "e1"), ("n1*n1", "n2")], Some("B3 ⊕ Ce1"), 2, Some(2)),
    entry!("T16", "𝕋₁₆", "A", Some("A5"), Dim3, ["e1", "n1", "n2"],
        [("e1*e1", "e1")], Some("Ce1 ⊕ Cn1 ⊕ Cn2"), 4, Some(2)),
    entry!("T17", "𝕋₁₇", "AN", Some("A4"), Dim3, ["n1", "n2", "n3"],
        [("n1*n1", "n2"), ("n1*n2", "n3")], None, 3, Some(3)),
    entry!("T18", "𝕋₁₈", "AN", Some("A6"), Dim3, ["n1", "n2", "n3"],
        [("n1*n2", "n3")], None, 4, Some(3)),
    entry!("T19", "𝕋₁₉", "AN", Some("A7"), Dim3, ["n1", "n2", "n3"],
        [("n1*n1", "n2")], Some("B3 ⊕ Cn1"), 5, Some(3)),
    entry!("C3", "ℂ³", "", None, Dim3, ["n1", "n2", "n3"], [], None, 9, Some(3)),
];

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog label {0:?}")]
    Unknown(String),
    #[error("the family J_k is defined for k >= 2, got k = {0}")]
    MarginalIndex(usize),
}

const SUBSCRIPTS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
const SUPERSCRIPTS: [(char, char); 3] = [('²', '2'), ('³', '3'), ('¹', '1')];

/// Maps Unicode spellings (`𝕋₀₁`, `𝔅₄`, `ℂ³`, `𝔍₅`) and decorated labels
/// (`T01^AUS`) to the ASCII form.
pub fn normalize_label(label: &str) -> String {
    let base = label.split('^').next().unwrap_or("").trim();
    let mut out = String::new();
    for c in base.chars() {
        match c {
            '𝕋' => out.push('T'),
            '𝔅' => out.push('B'),
            'ℂ' => out.push('C'),
            '𝔍' => out.push('J'),
            '_' | '{' | '}' => {}
            c if SUBSCRIPTS.contains(&c) => {
                out.push(char::from(b'0' + SUBSCRIPTS.iter().position(|&s| s == c).unwrap() as u8))
            }
            c if SUPERSCRIPTS.iter().any(|(s, _)| *s == c) => {
                out.push(SUPERSCRIPTS.iter().find(|(s, _)| *s == c).unwrap().1)
            }
            c => out.push(c.to_ascii_uppercase()),
        }
    }
    // T1 -> T01
    if let Some(rest) = out.strip_prefix('T') {
        if rest.len() == 1 && rest.chars().all(|c| c.is_ascii_digit()) {
            return format!("T0{rest}");
        }
    }
    out
}

pub fn catalog_entry(label: &str) -> Option<&'static CatalogEntry> {
    let key = normalize_label(label);
    CATALOG.iter().find(|e| e.label == key)
}

/// Looks up a catalog algebra, including `J<k>` for the marginal family.
pub fn catalog(label: &str) -> Result<Algebra, CatalogError> {
    if let Some(e) = catalog_entry(label) {
        return Ok(e.algebra());
    }
    let key = normalize_label(label);
    if let Some(k) = key.strip_prefix('J').and_then(|s| s.parse::<usize>().ok()) {
        return marginal(k);
    }
    Err(CatalogError::Unknown(label.to_string()))
}

/// `J_k`: basis `e, n1, …, n_{k-1}` with `e² = e`, `e nᵢ = ½ nᵢ` and all
/// other products zero.
pub fn marginal(k: usize) -> Result<Algebra, CatalogError> {
    if k < 2 {
        return Err(CatalogError::MarginalIndex(k));
    }
    let mut table = Table::zero(k);
    table.set(0, 0, 0, rat(1, 1));
    for i in 1..k {
        table.set(0, i, i, rat(1, 2));
        table.set(i, 0, i, rat(1, 2));
    }
    let mut names = vec!["e".to_string()];
    names.extend((1..k).map(|i| format!("n{i}")));
    Ok(Algebra::new(table, names, Some(format!("J{k}"))))
}

pub fn entries(family: Family) -> impl Iterator<Item = &'static CatalogEntry> {
    CATALOG.iter().filter(move |e| e.family == family)
}

pub fn display_label(label: &str) -> String {
    if let Some(e) = catalog_entry(label) {
        return e.unicode.to_string();
    }
    let key = normalize_label(label);
    if let Some(k) = key.strip_prefix('J') {
        let sub: String = k
            .chars()
            .filter_map(|c| c.to_digit(10).map(|d| SUBSCRIPTS[d as usize]))
            .collect();
        return format!("𝔍{sub}");
    }
    label.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn labels_normalize() {
        assert_eq!(normalize_label("𝕋₀₁"), "T01");
        assert_eq!(normalize_label("T01^AUS"), "T01");
        assert_eq!(normalize_label("t1"), "T01");
        assert_eq!(normalize_label("ℂ³"), "C3");
        assert_eq!(normalize_label("𝔅₄"), "B4");
        assert_eq!(normalize_label("𝔍₁₂"), "J12");
        assert!(catalog("T20").is_err());
        assert_eq!(catalog("J1"), Err(CatalogError::MarginalIndex(1)));
    }

    #[test]
    fn t02_table() {
        let a = catalog("𝕋₀₂").unwrap();
        assert_eq!(a.c(2, 2, 0), &int(1));
        assert_eq!(a.c(2, 2, 1), &int(1));
        assert_eq!(a.c(0, 2, 2), &rat(1, 2));
        assert_eq!(a.c(2, 1, 2), &rat(1, 2));
        assert_eq!(a.c(0, 1, 0), &int(0));
    }

    #[test]
    fn marginal_table() {
        let j4 = marginal(4).unwrap();
        assert_eq!(j4.c(0, 3, 3), &rat(1, 2));
        assert_eq!(j4.c(1, 2, 0), &int(0));
        assert_eq!(display_label("J4"), "𝔍₄");
    }

    #[test]
    fn counts() {
        assert_eq!(entries(Family::Dim2).count(), 6);
        assert_eq!(entries(Family::Dim3).count(), 20);
    }
}
