//! JSON and dot export.

use serde_json::{json, Value};

use super::DegenerationGraph;
use crate::degeneration::verify_witness;

pub fn graph_to_value(g: &DegenerationGraph) -> Value {
    let nodes: Vec<Value> = g
        .nodes
        .iter()
        .map(|n| json!({"label": n.label, "fingerprint": n.fingerprint}))
        .collect();
    let primary = g.primary_edges();
    let edges: Vec<Value> = g
        .edges
        .iter()
        .map(|e| {
            let witness = match &e.witness {
                Some(w) => json!({"name": verify_witness(w).name, "origin": w.origin}),
                None => Value::from("implicit"),
            };
            json!({
                "source": e.source,
                "target": e.target,
                "primary": primary.contains(&(e.source.clone(), e.target.clone())),
                "witness": witness,
            })
        })
        .collect();
    let non_edges: Vec<Value> = g
        .non_edges
        .iter()
        .map(|n| {
            json!({
                "source": n.source,
                "target": n.target,
                "kind": n.certificate.kind().as_str(),
                "origin": n.certificate.origin,
            })
        })
        .collect();
    let report = g.components_and_rigid();
    let levels: serde_json::Map<String, Value> =
        g.levels().into_iter().map(|(l, v)| (l, Value::from(v))).collect();
    json!({
        "nodes": nodes,
        "edges": edges,
        "non_edges": non_edges,
        "components": report.components,
        "rigid": report.rigid_set,
        "levels": levels,
    })
}

/// Primary edges as a dot digraph; implicit edges to the zero algebra are
/// dashed.
pub fn graph_to_dot(g: &DegenerationGraph) -> String {
    let mut out = String::from("digraph degenerations {\n  rankdir=TB;\n");
    for n in &g.nodes {
        out.push_str(&format!("  \"{}\";\n", n.label));
    }
    for (a, b) in g.primary_edges() {
        let implicit = g
            .edges
            .iter()
            .any(|e| e.source == a && e.target == b && e.witness.is_none());
        let style = if implicit { " [style=dashed]" } else { "" };
        out.push_str(&format!("  \"{a}\" -> \"{b}\"{style};\n"));
    }
    out.push_str("}\n");
    out
}
