//! Published invariants, components and rigid sets, for comparison. The
//! data lives in `data/golden.json` and is embedded at build time.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ComponentReport;
use crate::algebra::Family;

pub const GOLDEN_JSON: &str = include_str!("../../data/golden.json");

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct GoldenFamily {
    pub der: BTreeMap<String, usize>,
    pub rad: BTreeMap<String, usize>,
    /// Primary degenerations drawn in the published graph, when listed.
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    pub rigid: Vec<String>,
    /// `(rigid generator, closure)` in published order.
    pub components: Vec<(String, Vec<String>)>,
    #[serde(default)]
    pub intersection: Vec<String>,
    #[serde(default)]
    pub levels: BTreeMap<String, usize>,
}

#[derive(Deserialize)]
struct Golden {
    dim2: GoldenFamily,
    dim3: GoldenFamily,
}

pub fn golden(family: Family) -> Option<GoldenFamily> {
    let g: Golden = serde_json::from_str(GOLDEN_JSON).expect("embedded golden data parses");
    match family {
        Family::Dim2 => Some(g.dim2),
        Family::Dim3 => Some(g.dim3),
        Family::Marginal => None,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ComponentDiff {
    pub missing_rigid: Vec<String>,
    pub extra_rigid: Vec<String>,
    /// `(component generator, label)` present in the published closure only.
    pub missing: Vec<(String, String)>,
    /// `(component generator, label)` present in the computed closure only.
    pub extra: Vec<(String, String)>,
}

impl ComponentDiff {
    pub fn is_empty(&self) -> bool {
        self.missing_rigid.is_empty() && self.extra_rigid.is_empty() && self.missing.is_empty() && self.extra.is_empty()
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        out.extend(self.missing_rigid.iter().map(|l| format!("- rigid {l}")));
        out.extend(self.extra_rigid.iter().map(|l| format!("+ rigid {l}")));
        out.extend(self.missing.iter().map(|(c, l)| format!("- closure({c}) {l}")));
        out.extend(self.extra.iter().map(|(c, l)| format!("+ closure({c}) {l}")));
        out
    }
}

/// Differences between computed and published components; `-` lines are
/// published only, `+` lines computed only.
pub fn compare_components(report: &ComponentReport, golden: &GoldenFamily) -> ComponentDiff {
    let mut d = ComponentDiff::default();
    for r in &golden.rigid {
        if !report.rigid_set.contains(r) {
            d.missing_rigid.push(r.clone());
        }
    }
    for r in &report.rigid_set {
        if !golden.rigid.contains(r) {
            d.extra_rigid.push(r.clone());
        }
    }
    for (gen, closure) in &golden.components {
        let computed: Vec<String> = report
            .components
            .iter()
            .find(|c| &c.rigid == gen)
            .map(|c| c.closure.clone())
            .unwrap_or_default();
        for l in closure {
            if !computed.contains(l) {
                d.missing.push((gen.clone(), l.clone()));
            }
        }
        for l in &computed {
            if !closure.contains(l) {
                d.extra.push((gen.clone(), l.clone()));
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::entries;

    #[test]
    fn golden_tables_agree_with_the_catalog() {
        for family in [Family::Dim2, Family::Dim3] {
            let g = golden(family).unwrap();
            for e in entries(family).filter(|e| !e.label.starts_with('C')) {
                assert_eq!(g.der.get(e.label), Some(&e.der), "{}", e.label);
                assert_eq!(g.rad.get(e.label).copied(), e.rad, "{}", e.label);
            }
        }
    }
}
