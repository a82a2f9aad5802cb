//! Degeneration graphs over a finite catalog: certified edges, certified
//! non-edges, orbit closures, components, rigid algebras and levels.
//!
//! With finitely many orbits, `B ∈ closure(O(A))` iff `B` is reachable from
//! `A`, so everything is computed on labels.

mod export;
pub mod golden;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::catalog::entries;
use crate::algebra::{catalog, Algebra, CatalogError, Family};
use crate::degeneration::{
    edge_witnesses, verify_witness, zero_label, DegenerationWitness, WitnessReport,
};
use crate::invariants::{derivation_algebra, fingerprint, Fingerprint, IdempotentError};
use crate::nondegeneration::{
    check_certificate, power_rank_obstruction, peirce_obstruction, shipped_certificates, CertificateCheck,
    CertificateKind, CheckMode, NonDegenerationCertificate, NondegenerationError, PeirceVerdict, PowerVerdict,
};
use crate::degeneration::{derivation_check, DerivationVerdict};

pub use export::{graph_to_dot, graph_to_value};

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("witness {name} does not verify: {summary}")]
    FailingWitness { name: String, summary: String },
    #[error("certificate {0}")]
    FailingCertificate(String),
    #[error("certificate {certificate} contradicts the degeneration {source_label} -> {target_label}")]
    Inconsistent {
        certificate: String,
        source_label: String,
        target_label: String,
    },
    #[error("witness or certificate endpoints must be catalog labels: {0}")]
    Unlabelled(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Nondegeneration(#[from] NondegenerationError),
    #[error(transparent)]
    Idempotent(#[from] IdempotentError),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Node {
    pub label: String,
    pub fingerprint: Fingerprint,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub source: String,
    pub target: String,
    /// `None` for the implicit degenerations to the zero algebra.
    pub witness: Option<DegenerationWitness>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NonEdge {
    pub source: String,
    pub target: String,
    pub certificate: NonDegenerationCertificate,
    pub check: CertificateCheck,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegenerationGraph {
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    pub non_edges: Vec<NonEdge>,
    /// Reachability, including the node itself.
    closure: BTreeMap<String, BTreeSet<String>>,
}

fn label_of(a: &Algebra, what: &str) -> Result<String, GraphError> {
    a.label.clone().ok_or_else(|| GraphError::Unlabelled(what.to_string()))
}

fn verify_all(witnesses: &[DegenerationWitness]) -> Vec<WitnessReport> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        witnesses.par_iter().map(verify_witness).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        witnesses.iter().map(verify_witness).collect()
    }
}

fn check_all(
    certificates: &[NonDegenerationCertificate],
    budget: u64,
    mode: CheckMode,
) -> Vec<Result<CertificateCheck, NondegenerationError>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        certificates.par_iter().map(|c| check_certificate(c, budget, mode)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        certificates.iter().map(|c| check_certificate(c, budget, mode)).collect()
    }
}

/// Assembles the graph. Every witness must verify and every certificate
/// must check; the first failure aborts.
pub fn build_graph(
    labels: &[&str],
    witnesses: &[DegenerationWitness],
    certificates: &[NonDegenerationCertificate],
    budget: u64,
    mode: CheckMode,
) -> Result<DegenerationGraph, GraphError> {
    let mut nodes = Vec::with_capacity(labels.len());
    for l in labels {
        let a = catalog(l)?;
        let label = label_of(&a, l)?;
        nodes.push(Node {
            fingerprint: fingerprint(&a, budget)?,
            label,
        });
    }
    let known: BTreeSet<String> = nodes.iter().map(|n| n.label.clone()).collect();
    let require = |l: &str| {
        if known.contains(l) {
            Ok(())
        } else {
            Err(GraphError::UnknownNode(l.to_string()))
        }
    };

    let mut edges: Vec<Edge> = Vec::new();
    for (w, r) in witnesses.iter().zip(verify_all(witnesses)) {
        if !r.verified {
            return Err(GraphError::FailingWitness {
                summary: r.summary(),
                name: r.name,
            });
        }
        let (s, t) = (label_of(&w.source, &r.name)?, label_of(&w.target, &r.name)?);
        require(&s)?;
        require(&t)?;
        if s != t && !edges.iter().any(|e| e.source == s && e.target == t) {
            edges.push(Edge {
                source: s,
                target: t,
                witness: Some(w.clone()),
            });
        }
    }
    // Every algebra degenerates to the zero algebra.
    let zero = nodes.first().map(|n| zero_label(n.fingerprint.dim));
    if let Some(z) = zero.filter(|z| known.contains(z)) {
        for n in &nodes {
            if n.label != z && !edges.iter().any(|e| e.source == n.label && e.target == z) {
                edges.push(Edge {
                    source: n.label.clone(),
                    target: z.clone(),
                    witness: None,
                });
            }
        }
    }

    let closure = reachability(&nodes, &edges);

    let mut non_edges = Vec::new();
    for (c, r) in certificates.iter().zip(check_all(certificates, budget, mode)) {
        let r = r?;
        if !r.valid {
            return Err(GraphError::FailingCertificate(r.summary()));
        }
        let (s, t) = (label_of(&c.source, &r.name)?, label_of(&c.target, &r.name)?);
        require(&s)?;
        require(&t)?;
        if closure[&s].contains(&t) {
            return Err(GraphError::Inconsistent {
                certificate: r.name,
                source_label: s,
                target_label: t,
            });
        }
        non_edges.push(NonEdge {
            source: s,
            target: t,
            certificate: c.clone(),
            check: r,
        });
    }
    Ok(DegenerationGraph {
        nodes,
        edges,
        non_edges,
        closure,
    })
}

fn reachability(nodes: &[Node], edges: &[Edge]) -> BTreeMap<String, BTreeSet<String>> {
    let mut out = BTreeMap::new();
    for n in nodes {
        let mut seen = BTreeSet::from([n.label.clone()]);
        let mut stack = vec![n.label.clone()];
        while let Some(x) = stack.pop() {
            for e in edges.iter().filter(|e| e.source == x) {
                if seen.insert(e.target.clone()) {
                    stack.push(e.target.clone());
                }
            }
        }
        out.insert(n.label.clone(), seen);
    }
    out
}

/// Shipped inputs that did not make it into the graph, with the reason.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejected {
    pub name: String,
    pub reason: String,
}

/// The graph over a shipped catalog. Witnesses that fail and certificates
/// that do not check are left out and reported.
pub fn shipped_graph(
    family: Family,
    budget: u64,
    mode: CheckMode,
) -> Result<(DegenerationGraph, Vec<Rejected>), GraphError> {
    let labels: Vec<&str> = entries(family).map(|e| e.label).collect();
    let mut rejected = Vec::new();
    let all = edge_witnesses(family);
    let mut witnesses = Vec::new();
    for (w, r) in all.iter().zip(verify_all(&all)) {
        if r.verified {
            witnesses.push(w.clone());
        } else {
            rejected.push(Rejected {
                name: r.name.clone(),
                reason: r.summary(),
            });
        }
    }
    let certs = shipped_certificates(family);
    let mut certificates = Vec::new();
    for (c, r) in certs.iter().zip(check_all(&certs, budget, mode)) {
        let r = r?;
        if r.valid {
            certificates.push(c.clone());
        } else {
            rejected.push(Rejected {
                name: format!("{} [{}]", r.name, r.kind.as_str()),
                reason: r.summary(),
            });
        }
    }
    let g = build_graph(&labels, &witnesses, &certificates, budget, mode)?;
    Ok((g, rejected))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub rigid: String,
    pub closure: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub components: Vec<Component>,
    pub rigid_set: Vec<String>,
}

/// Edge classification against the closure data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimalityIssue {
    pub source: String,
    pub target: String,
    /// An intermediate algebra factoring the edge.
    pub through: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemicontinuityCheck {
    pub source: String,
    pub target: String,
    pub der: (usize, usize),
    pub rad: (usize, usize),
    pub square_dim: (usize, usize),
    pub ok: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairStatus {
    Degenerates,
    Certified(CertificateKind),
    Unresolved,
}

impl DegenerationGraph {
    pub fn labels(&self) -> Vec<&str> {
        self.nodes.iter().map(|n| n.label.as_str()).collect()
    }

    fn node_index(&self, label: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.label == label)
    }

    fn resolve(&self, label: &str) -> Result<String, GraphError> {
        let key = crate::algebra::catalog::normalize_label(label);
        if self.node_index(&key).is_some() {
            Ok(key)
        } else {
            Err(GraphError::UnknownNode(label.to_string()))
        }
    }

    fn in_node_order(&self, set: &BTreeSet<String>) -> Vec<String> {
        self.nodes
            .iter()
            .filter(|n| set.contains(&n.label))
            .map(|n| n.label.clone())
            .collect()
    }

    /// Labels reachable from `label`, itself included, in catalog order.
    pub fn closure_set(&self, label: &str) -> Result<Vec<String>, GraphError> {
        let key = self.resolve(label)?;
        Ok(self.in_node_order(&self.closure[&key]))
    }

    pub fn degenerates(&self, a: &str, b: &str) -> Result<bool, GraphError> {
        let (a, b) = (self.resolve(a)?, self.resolve(b)?);
        Ok(self.closure[&a].contains(&b))
    }

    pub fn components_and_rigid(&self) -> ComponentReport {
        let rigid_set: Vec<String> = self
            .nodes
            .iter()
            .filter(|n| {
                !self
                    .nodes
                    .iter()
                    .any(|m| m.label != n.label && self.closure[&m.label].contains(&n.label))
            })
            .map(|n| n.label.clone())
            .collect();
        let components = rigid_set
            .iter()
            .map(|r| Component {
                rigid: r.clone(),
                closure: self.in_node_order(&self.closure[r]),
            })
            .collect();
        ComponentReport {
            components,
            rigid_set,
        }
    }

    /// Labels in every component closure.
    pub fn component_intersection(&self) -> Vec<String> {
        let report = self.components_and_rigid();
        let mut common: Option<BTreeSet<String>> = None;
        for c in &report.components {
            let s: BTreeSet<String> = c.closure.iter().cloned().collect();
            common = Some(match common {
                None => s,
                Some(prev) => prev.intersection(&s).cloned().collect(),
            });
        }
        self.in_node_order(&common.unwrap_or_default())
    }

    /// Longest chain of proper degenerations starting at `label`.
    pub fn level(&self, label: &str) -> Result<usize, GraphError> {
        let key = self.resolve(label)?;
        let mut memo = BTreeMap::new();
        Ok(self.longest_path(&key, &mut memo))
    }

    fn longest_path(&self, label: &str, memo: &mut BTreeMap<String, usize>) -> usize {
        if let Some(&v) = memo.get(label) {
            return v;
        }
        let best = self
            .edges
            .iter()
            .filter(|e| e.source == label)
            .map(|e| 1 + self.longest_path(&e.target, memo))
            .max()
            .unwrap_or(0);
        memo.insert(label.to_string(), best);
        best
    }

    pub fn levels(&self) -> Vec<(String, usize)> {
        let mut memo = BTreeMap::new();
        self.nodes
            .iter()
            .map(|n| (n.label.clone(), self.longest_path(&n.label, &mut memo)))
            .collect()
    }

    /// The transitive reduction: edges not implied by two others.
    pub fn primary_edges(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for a in self.labels() {
            for b in self.in_node_order(&self.closure[a]) {
                if b != a && self.factoring(a, &b).is_none() {
                    out.push((a.to_string(), b));
                }
            }
        }
        out
    }

    fn factoring(&self, a: &str, b: &str) -> Option<String> {
        self.closure[a]
            .iter()
            .find(|c| c.as_str() != a && c.as_str() != b && self.closure[c.as_str()].contains(b))
            .cloned()
    }

    /// Witness edges that factor through an intermediate algebra.
    pub fn primality_issues(&self) -> Vec<PrimalityIssue> {
        self.edges
            .iter()
            .filter(|e| e.witness.is_some())
            .filter_map(|e| {
                self.factoring(&e.source, &e.target).map(|c| PrimalityIssue {
                    source: e.source.clone(),
                    target: e.target.clone(),
                    through: c,
                })
            })
            .collect()
    }

    /// Along each edge: `Der` strictly grows, `Rad` does not shrink and
    /// `A²` does not grow.
    pub fn semicontinuity(&self) -> Vec<SemicontinuityCheck> {
        let fp = |l: &str| &self.nodes[self.node_index(l).unwrap()].fingerprint;
        self.edges
            .iter()
            .map(|e| {
                let (a, b) = (fp(&e.source), fp(&e.target));
                SemicontinuityCheck {
                    source: e.source.clone(),
                    target: e.target.clone(),
                    der: (a.der, b.der),
                    rad: (a.rad, b.rad),
                    square_dim: (a.square_dim, b.square_dim),
                    ok: (a == b || a.der < b.der) && a.rad <= b.rad && a.square_dim >= b.square_dim,
                }
            })
            .collect()
    }

    /// Status of every ordered pair of distinct nodes: reachable, certified
    /// by a shipped certificate, or certified by running the derivation,
    /// Peirce and power-rank checks directly.
    pub fn classify_pairs(&self, budget: u64) -> Result<Vec<(String, String, PairStatus)>, GraphError> {
        let mut out = Vec::new();
        for a in self.labels() {
            for b in self.labels() {
                if a == b {
                    continue;
                }
                let status = if self.closure[a].contains(b) {
                    PairStatus::Degenerates
                } else if let Some(n) = self.non_edges.iter().find(|n| n.source == a && n.target == b) {
                    PairStatus::Certified(n.certificate.kind())
                } else {
                    automatic_status(&catalog(a)?, &catalog(b)?, budget)?
                };
                out.push((a.to_string(), b.to_string(), status));
            }
        }
        Ok(out)
    }

    /// The catalog label whose fingerprint matches `a`.
    pub fn identify(&self, a: &Algebra, budget: u64) -> Result<Option<String>, GraphError> {
        let f = fingerprint(a, budget)?;
        Ok(self.nodes.iter().find(|n| n.fingerprint == f).map(|n| n.label.clone()))
    }
}

fn automatic_status(a: &Algebra, b: &Algebra, budget: u64) -> Result<PairStatus, GraphError> {
    if derivation_check(a, b, budget)?.verdict == DerivationVerdict::Obstructed {
        return Ok(PairStatus::Certified(CertificateKind::DerivationDimension));
    }
    if !b.is_nilpotent() && peirce_obstruction(a, b, budget)?.verdict == PeirceVerdict::Obstructed {
        return Ok(PairStatus::Certified(CertificateKind::PeirceObstruction));
    }
    if power_rank_obstruction(a, b)?.verdict == PowerVerdict::Obstructed {
        return Ok(PairStatus::Certified(CertificateKind::PowerRank));
    }
    Ok(PairStatus::Unresolved)
}

/// Level one of the marginal algebra `J_k`: a proper degeneration with
/// nonzero product would need more than `k² − k` derivations, which no
/// `k`-dimensional Jordan algebra with nonzero product has.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarginalLevelCertificate {
    pub k: usize,
    pub der: usize,
    pub bound: usize,
    pub holds: bool,
    pub inference: String,
}

pub fn marginal_level_certificate(k: usize) -> Result<MarginalLevelCertificate, GraphError> {
    let j = crate::algebra::catalog::marginal(k)?;
    let der = derivation_algebra(&j).dim;
    let bound = k * k - k;
    let holds = der == bound;
    let inference = if holds {
        format!(
            "dim Der(J{k}) = {der} = k^2 - k; a proper degeneration J{k} -> B needs dim Der(B) > {bound}, \
             which forces B to have zero product, so J{k} has level one"
        )
    } else {
        format!("dim Der(J{k}) = {der} differs from k^2 - k = {bound}")
    };
    Ok(MarginalLevelCertificate {
        k,
        der,
        bound,
        holds,
        inference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::groebner::DEFAULT_BUDGET;

    fn set(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn dim2() -> DegenerationGraph {
        shipped_graph(Family::Dim2, DEFAULT_BUDGET, CheckMode::Recompute).unwrap().0
    }

    #[test]
    fn empty_witness_set_gives_zero_edges_only() {
        let labels = ["B1", "B2", "C2"];
        let g = build_graph(&labels, &[], &[], DEFAULT_BUDGET, CheckMode::Recompute).unwrap();
        assert_eq!(g.edges.len(), 2);
        assert!(g.edges.iter().all(|e| e.target == "C2" && e.witness.is_none()));
        assert_eq!(g.level("C2").unwrap(), 0);
    }

    #[test]
    fn dim2_components_and_levels() {
        let g = dim2();
        let r = g.components_and_rigid();
        assert_eq!(r.rigid_set, set(&["B2", "B4"]));
        assert_eq!(g.closure_set("B2").unwrap(), set(&["B2", "C2"]));
        assert_eq!(g.closure_set("B4").unwrap(), set(&["B1", "B3", "B4", "B5", "C2"]));
        assert_eq!(g.level("B4").unwrap(), 3);
        assert_eq!(g.level("B2").unwrap(), 1);
        assert!(g.semicontinuity().iter().all(|c| c.ok));
        assert!(g.primality_issues().is_empty());
    }

    #[test]
    fn single_node() {
        let g = build_graph(&["C3"], &[], &[], DEFAULT_BUDGET, CheckMode::Recompute).unwrap();
        let r = g.components_and_rigid();
        assert_eq!(r.rigid_set, set(&["C3"]));
        assert_eq!(g.closure_set("ℂ³").unwrap(), set(&["C3"]));
        assert!(matches!(g.closure_set("T01"), Err(GraphError::UnknownNode(_))));
    }

    #[test]
    fn failing_inputs_abort() {
        let bad = crate::degeneration::shipped_witnesses(Family::Dim3)
            .into_iter()
            .find(|w| !verify_witness(w).verified)
            .unwrap();
        let labels: Vec<&str> = entries(Family::Dim3).map(|e| e.label).collect();
        let e = build_graph(&labels, &[bad], &[], DEFAULT_BUDGET, CheckMode::Recompute);
        assert!(matches!(e, Err(GraphError::FailingWitness { .. })));
    }

    #[test]
    fn marginal_certificates() {
        let c = marginal_level_certificate(3).unwrap();
        assert!(c.holds && c.der == 6);
        assert_eq!(marginal_level_certificate(8).unwrap().der, 56);
        assert!(matches!(marginal_level_certificate(1), Err(GraphError::Catalog(_))));
    }
}
