use std::path::Path;

use jordeg_core::algebra::catalog::{catalog_entry, entries, normalize_label};
use jordeg_core::algebra::format::algebra_to_value;
use jordeg_core::algebra::{catalog, parse_algebra, Algebra, Family};
use jordeg_core::cohomology::h2;
use jordeg_core::degeneration::{
    derivation_check, parse_witnesses, shipped_witnesses, verify_witnesses, DegenerationWitness, DerivationVerdict,
    DIM2_WITNESSES, DIM3_WITNESSES,
};
use jordeg_core::exact::rational::format_rational;
use jordeg_core::graph::golden::{compare_components, golden, GOLDEN_JSON};
use jordeg_core::graph::{graph_to_dot, graph_to_value, marginal_level_certificate, shipped_graph, DegenerationGraph};
use jordeg_core::invariants::{fingerprint, Fingerprint, IdempotentError, IdempotentSummary};
use jordeg_core::nondegeneration::format::{DIM2_CERTIFICATES, DIM3_CERTIFICATES};
use jordeg_core::nondegeneration::{
    check_certificate, parse_certificates, shipped_certificates, CertificateCheck, CheckMode, Evidence,
    NonDegenerationCertificate, NondegenerationError,
};
use serde_json::{json, Value};

use crate::report::{Report, Status};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input; exit status 2.
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

fn usage(m: impl Into<String>) -> CliError {
    CliError::Usage(m.into())
}

pub struct Options {
    pub budget: u64,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// A catalog label (ASCII or Unicode) or the path of an algebra file.
pub fn resolve_target(target: &str) -> Result<Algebra, CliError> {
    let path = Path::new(target);
    if path.is_file() {
        return parse_algebra(&read(path)?).map_err(|e| usage(format!("{target}: {e}")));
    }
    catalog(target).map_err(|e| usage(format!("{e}; expected a catalog label or an algebra file")))
}

fn name_of(a: &Algebra) -> String {
    a.label.clone().unwrap_or_else(|| "input".to_string())
}

fn vector(v: &[jordeg_core::exact::Rational], names: &[String]) -> String {
    jordeg_core::algebra::format::format_linear_combination(v, names)
}

pub fn parse_family(s: &str) -> Result<Family, CliError> {
    match s {
        "dim2" | "2" => Ok(Family::Dim2),
        "dim3" | "3" => Ok(Family::Dim3),
        _ => Err(usage(format!("unknown family {s:?}; expected dim2 or dim3"))),
    }
}

fn family_of(label: &str) -> Option<Family> {
    catalog_entry(label).map(|e| e.family)
}

// check

pub fn check(target: &str) -> Result<Report, CliError> {
    let a = resolve_target(target)?;
    let mut r = Report::new(format!("check {target}"));
    let name = name_of(&a);
    let mut payload = json!({"algebra": name, "dim": a.dim()});
    match a.ensure_commutative() {
        Err(e) => {
            r.check(format!("{name} commutative"), false, e.to_string());
            r.record(format!("{name} Jordan identity"), Status::Fail, "not checked: product is not commutative");
            payload["commutative"] = Value::Bool(false);
            payload["jordan"] = Value::Bool(false);
        }
        Ok(()) => {
            r.check(format!("{name} commutative"), true, "");
            payload["commutative"] = Value::Bool(true);
            let v = a.jordan_violation().expect("commutativity was checked");
            match v {
                None => {
                    r.check(format!("{name} Jordan identity"), true, "");
                    payload["jordan"] = Value::Bool(true);
                }
                Some(v) => {
                    let n = &a.basis_names;
                    let detail = format!(
                        "linearized identity fails on ({}, {}, {}; {}) with value {}",
                        n[v.a],
                        n[v.b],
                        n[v.c],
                        n[v.y],
                        vector(&v.value, n)
                    );
                    r.check(format!("{name} Jordan identity"), false, detail);
                    payload["jordan"] = Value::Bool(false);
                    payload["violation"] = json!({
                        "a": n[v.a], "b": n[v.b], "c": n[v.c], "y": n[v.y],
                        "value": v.value.iter().map(format_rational).collect::<Vec<_>>(),
                    });
                }
            }
        }
    }
    r.payload = payload;
    Ok(r)
}

// invariants

fn undecided_or_fail(e: &IdempotentError) -> Status {
    match e {
        IdempotentError::Undecided(_) => Status::Undecided,
        _ => Status::Fail,
    }
}

fn fmt_profiles(f: &Fingerprint) -> String {
    if f.frame_profiles.is_empty() {
        return "none".to_string();
    }
    f.frame_profiles
        .iter()
        .map(|p| {
            let parts: Vec<String> = p.iter().map(|(a, b, c)| format!("({a},{b},{c})")).collect();
            format!("[{}]", parts.join(" "))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn fingerprint_value(f: &Fingerprint) -> Value {
    serde_json::to_value(f).expect("fingerprints serialize")
}

/// Published `(Der, Rad)` for catalog labels; `J_k` has `Der = k² − k`
/// and vanishing `H²`.
fn published(a: &Algebra) -> Option<(Option<usize>, Option<usize>, Option<usize>)> {
    let label = a.label.as_deref()?;
    if let Some(e) = catalog_entry(label) {
        let g = golden(e.family);
        let der = g.as_ref().and_then(|g| g.der.get(e.label).copied()).unwrap_or(e.der);
        let rad = g.as_ref().and_then(|g| g.rad.get(e.label).copied()).or(e.rad);
        return Some((Some(der), rad, None));
    }
    let k: usize = normalize_label(label).strip_prefix('J')?.parse().ok()?;
    Some((Some(k * k - k), None, Some(0)))
}

pub fn invariants(target: &str, opts: &Options) -> Result<Report, CliError> {
    let a = resolve_target(target)?;
    let name = name_of(&a);
    let mut r = Report::new(format!("invariants {target}"));
    match a.is_jordan() {
        Ok(true) => {}
        Ok(false) | Err(_) => {
            r.check(format!("{name} is Jordan"), false, "invariants are defined for Jordan algebras");
            return Ok(r);
        }
    }
    let f = match fingerprint(&a, opts.budget) {
        Ok(f) => f,
        Err(e) => {
            r.record(format!("{name} invariants"), undecided_or_fail(&e), e.to_string());
            return Ok(r);
        }
    };
    let nil = f.nilpotency_index.map_or("not nilpotent".to_string(), |k| k.to_string());
    let idem = match f.idempotents {
        IdempotentSummary::Finite(k) => format!("{k} nonzero"),
        IdempotentSummary::PositiveDimensional(d) => format!("variety of dimension {d}"),
    };
    r.line(format!("algebra          {name}"));
    r.line(format!("dim              {}", f.dim));
    r.line(format!("dim Der          {}", f.der));
    r.line(format!("dim Rad          {}", f.rad));
    r.line(format!("nilpotency index {nil}"));
    r.line(format!(
        "power dims       {}",
        f.power_dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
    ));
    r.line(format!("dim A^2          {}", f.square_dim));
    r.line(format!("idempotents      {idem}"));
    r.line(format!("Peirce profiles  {}", fmt_profiles(&f)));
    r.line(format!("dim H^2          {}", f.h2));
    r.check(format!("{name} invariants"), true, "computed");
    let mut golden_value = Value::Null;
    if let Some((der, rad, h)) = published(&a) {
        if let Some(d) = der {
            r.check(format!("{name} dim Der"), d == f.der, format!("computed {}, published {d}", f.der));
        }
        if let Some(d) = rad {
            r.check(format!("{name} dim Rad"), d == f.rad, format!("computed {}, published {d}", f.rad));
        }
        if let Some(d) = h {
            r.check(format!("{name} dim H^2"), d == f.h2, format!("computed {}, published {d}", f.h2));
        }
        golden_value = json!({"der": der, "rad": rad, "h2": h});
    }
    r.payload = json!({"algebra": name, "invariants": fingerprint_value(&f), "published": golden_value});
    Ok(r)
}

// cohomology

pub fn cohomology(target: &str) -> Result<Report, CliError> {
    let a = resolve_target(target)?;
    let name = name_of(&a);
    let mut r = Report::new(format!("cohomology {target}"));
    if !a.is_jordan().unwrap_or(false) {
        r.check(format!("{name} is Jordan"), false, "cohomology is computed for Jordan algebras");
        return Ok(r);
    }
    let c = h2(&a);
    let n = a.dim();
    r.line(format!("algebra   {name}"));
    r.line(format!("dim Z^2   {}", c.dim_z2));
    r.line(format!("dim B^2   {}", c.dim_b2));
    r.line(format!("dim H^2   {}", c.dim_h2));
    r.line(format!("rigid     {}", if c.rigid { "yes (H^2 = 0)" } else { "not decided by H^2" }));
    let der = jordeg_core::invariants::derivation_algebra(&a).dim;
    r.check(
        format!("{name} dim B^2 = n^2 - dim Der"),
        c.dim_b2 + der == n * n,
        format!("{} + {der} vs {}", c.dim_b2, n * n),
    );
    if let Some((_, _, Some(h))) = published(&a) {
        r.check(format!("{name} dim H^2"), c.dim_h2 == h, format!("computed {}, published {h}", c.dim_h2));
    }
    r.payload = json!({"algebra": name, "cohomology": c});
    Ok(r)
}

// catalog

pub fn catalog_list() -> Report {
    let mut r = Report::new("catalog list");
    r.line(format!("{:<6}{:<6}{:<6}{:>4}{:>5}{:>5}  products", "label", "", "family", "dim", "Der", "Rad"));
    let mut items = Vec::new();
    for family in [Family::Dim2, Family::Dim3] {
        for e in entries(family) {
            let fam = if family == Family::Dim2 { "dim2" } else { "dim3" };
            let products: Vec<String> = e.products.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let rad = e.rad.map_or("-".to_string(), |d| d.to_string());
            r.line(format!(
                "{:<6}{:<6}{:<6}{:>4}{:>5}{:>5}  {}",
                e.label,
                e.unicode,
                fam,
                e.dim(),
                e.der,
                rad,
                products.join(", ")
            ));
            items.push(json!({
                "label": e.label, "unicode": e.unicode, "family": fam, "dim": e.dim(),
                "der": e.der, "rad": e.rad, "algebra": algebra_to_value(&e.algebra()),
            }));
        }
    }
    r.line("J<k>  𝔍ₖ    marginal   k  k²-k    -  e*e=e, e*ni=1/2*ni");
    r.payload = json!({"algebras": items});
    r
}

// verify-deg

fn parse_pair(s: &str, seps: &[&str]) -> Option<(String, String)> {
    for sep in seps {
        if let Some((a, b)) = s.split_once(sep) {
            return Some((normalize_label(a), normalize_label(b)));
        }
    }
    None
}

fn witnesses_for(arg: &str) -> Result<Vec<DegenerationWitness>, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        return parse_witnesses(&read(path)?).map_err(|e| usage(format!("{arg}: {e}")));
    }
    let (a, b) = parse_pair(arg, &["->", "→", ","])
        .ok_or_else(|| usage(format!("{arg:?} is neither a witness file nor an edge like T03->T09")))?;
    let family = family_of(&a).ok_or_else(|| usage(format!("unknown catalog label {a:?}")))?;
    if family_of(&b).is_none() {
        return Err(usage(format!("unknown catalog label {b:?}")));
    }
    Ok(shipped_witnesses(family)
        .into_iter()
        .filter(|w| w.source.label.as_deref() == Some(&a) && w.target.label.as_deref() == Some(&b))
        .collect())
}

fn witness_records(r: &mut Report, ws: &[DegenerationWitness], budget: u64) -> Vec<Value> {
    let mut payload = Vec::new();
    for (w, rep) in ws.iter().zip(verify_witnesses(ws)) {
        let origin = w.origin.clone().unwrap_or_else(|| "inline".to_string());
        let mut detail = rep.summary();
        if !rep.non_polynomial_entries.is_empty() {
            detail.push_str(&format!(
                "; basis entries {:?} are not polynomial in t",
                rep.non_polynomial_entries.iter().map(|(i, j)| (i + 1, j + 1)).collect::<Vec<_>>()
            ));
        }
        r.check(format!("witness {} [{origin}]", rep.name), rep.verified, detail);
        let mut der = Value::Null;
        if rep.verified {
            match derivation_check(&w.source, &w.target, budget) {
                Ok(d) => {
                    let ok = d.same_fingerprint || d.der_target > d.der_source;
                    r.check(
                        format!("derivations {}", rep.name),
                        ok && d.verdict == DerivationVerdict::Consistent,
                        format!("dim Der {} -> {}", d.der_source, d.der_target),
                    );
                    der = json!([d.der_source, d.der_target]);
                }
                Err(e) => r.record(format!("derivations {}", rep.name), undecided_or_fail(&e), e.to_string()),
            }
        }
        payload.push(json!({"origin": origin, "report": rep, "der": der}));
    }
    payload
}

pub fn verify_deg(arg: &str, opts: &Options) -> Result<Report, CliError> {
    let ws = witnesses_for(arg)?;
    let mut r = Report::new(format!("verify-deg {arg}"));
    if ws.is_empty() {
        r.check(format!("witness for {arg}"), false, "no witness is shipped for this edge");
    }
    let payload = witness_records(&mut r, &ws, opts.budget);
    r.payload = json!({"witnesses": payload});
    Ok(r)
}

// verify-nondeg

fn check_record(r: &mut Report, c: &NonDegenerationCertificate, check: &CertificateCheck) {
    let status = if check.valid {
        Status::Pass
    } else if check.undecided {
        Status::Undecided
    } else {
        Status::Fail
    };
    let origin = c.origin.clone().unwrap_or_else(|| "inline".to_string());
    let steps: Vec<String> = check
        .steps
        .iter()
        .map(|s| format!("{} {}: {}", s.name, if s.ok { "ok" } else { "FAILED" }, s.detail))
        .collect();
    r.record(
        format!("certificate {} [{}, {origin}]", check.name, check.kind.as_str()),
        status,
        steps.join("; "),
    );
}

fn nondeg_error(r: &mut Report, item: String, e: NondegenerationError) {
    let status = match &e {
        NondegenerationError::Idempotent(IdempotentError::Undecided(_)) => Status::Undecided,
        _ => Status::Fail,
    };
    r.record(item, status, e.to_string());
}

/// Certificates computed on the spot for a pair without shipped ones.
fn automatic_certificates(a: &Algebra, b: &Algebra) -> Vec<NonDegenerationCertificate> {
    let mut evidence = vec![Evidence::DerivationDimension];
    if !b.is_nilpotent() {
        evidence.push(Evidence::PeirceObstruction);
    }
    if a.dim() <= jordeg_core::nondegeneration::power::MAX_DIM {
        evidence.push(Evidence::PowerRank);
    }
    evidence
        .into_iter()
        .filter_map(|e| NonDegenerationCertificate::new(a.clone(), b.clone(), e).ok())
        .map(|c| c.with_origin("computed"))
        .collect()
}

pub fn verify_nondeg(arg: &str, trust_transcripts: bool, opts: &Options) -> Result<Report, CliError> {
    let mode = if trust_transcripts {
        CheckMode::Transcripts
    } else {
        CheckMode::Recompute
    };
    let mut r = Report::new(format!(
        "verify-nondeg {arg}{}",
        if trust_transcripts { " --trust-transcripts" } else { "" }
    ));
    let path = Path::new(arg);
    let mut payload = Vec::new();
    if path.is_file() {
        let certs = parse_certificates(&read(path)?).map_err(|e| usage(format!("{arg}: {e}")))?;
        for c in &certs {
            match check_certificate(c, opts.budget, mode) {
                Ok(check) => {
                    check_record(&mut r, c, &check);
                    payload.push(json!(check));
                }
                Err(e) => nondeg_error(&mut r, format!("certificate {}", c.name()), e),
            }
        }
        r.payload = json!({"checks": payload});
        return Ok(r);
    }
    let (a, b) = parse_pair(arg, &["-/->", "↛", ","])
        .ok_or_else(|| usage(format!("{arg:?} is neither a certificate file nor a pair like T10-/->T17")))?;
    let family = family_of(&a).ok_or_else(|| usage(format!("unknown catalog label {a:?}")))?;
    let (sa, sb) = (
        catalog(&a).map_err(|e| usage(e.to_string()))?,
        catalog(&b).map_err(|e| usage(e.to_string()))?,
    );
    if sa.dim() != sb.dim() {
        return Err(usage(format!("{a} and {b} have different dimensions")));
    }
    let shipped: Vec<NonDegenerationCertificate> = shipped_certificates(family)
        .into_iter()
        .filter(|c| c.source.label.as_deref() == Some(&a) && c.target.label.as_deref() == Some(&b))
        .collect();
    let from_shipped = !shipped.is_empty();
    let candidates = if from_shipped { shipped } else { automatic_certificates(&sa, &sb) };
    let mut any_valid = false;
    let mut any_undecided = false;
    for c in &candidates {
        match check_certificate(c, opts.budget, mode) {
            Ok(check) => {
                any_valid |= check.valid;
                any_undecided |= check.undecided;
                if from_shipped || check.valid {
                    check_record(&mut r, c, &check);
                }
                payload.push(json!(check));
            }
            Err(e) => {
                if from_shipped {
                    nondeg_error(&mut r, format!("certificate {}", c.name()), e)
                }
            }
        }
    }
    if !from_shipped && !any_valid {
        let status = if any_undecided { Status::Undecided } else { Status::Fail };
        r.record(
            format!("{a}-/->{b}"),
            status,
            "no shipped certificate, and the derivation, Peirce and power-rank checks do not obstruct",
        );
    }
    r.payload = json!({"checks": payload});
    Ok(r)
}

// graph

fn graph_lines(r: &mut Report, g: &DegenerationGraph) {
    r.line("nodes:");
    for n in &g.nodes {
        r.line(format!("  {:<4} Der {:>2}  Rad {}", n.label, n.fingerprint.der, n.fingerprint.rad));
    }
    r.line("primary edges:");
    for (a, b) in g.primary_edges() {
        r.line(format!("  {a} -> {b}"));
    }
    r.line("non-edges:");
    for n in &g.non_edges {
        r.line(format!("  {} -/-> {} [{}]", n.source, n.target, n.certificate.kind().as_str()));
    }
    let comps = g.components_and_rigid();
    r.line(format!("rigid: {}", comps.rigid_set.join(" ")));
    r.line("components:");
    for c in &comps.components {
        r.line(format!("  closure({}) = {{{}}}", c.rigid, c.closure.join(", ")));
    }
    let levels: Vec<String> = g.levels().into_iter().map(|(l, v)| format!("{l}:{v}")).collect();
    r.line(format!("levels: {}", levels.join(" ")));
}

pub fn graph(family: &str, dot: bool, trust: bool, opts: &Options) -> Result<(Report, Option<String>), CliError> {
    let fam = parse_family(family)?;
    let mode = if trust { CheckMode::Transcripts } else { CheckMode::Recompute };
    let mut r = Report::new(format!("graph {family}"));
    let (g, rejected) = match shipped_graph(fam, opts.budget, mode) {
        Ok(x) => x,
        Err(e) => {
            r.check("graph assembly", false, e.to_string());
            return Ok((r, None));
        }
    };
    graph_lines(&mut r, &g);
    if !rejected.is_empty() {
        r.line("left out:");
        for x in &rejected {
            r.line(format!("  {}", x.reason));
        }
    }
    r.check(
        "graph assembly",
        true,
        format!(
            "{} nodes, {} edges, {} certified non-edges, {} inputs left out",
            g.nodes.len(),
            g.edges.len(),
            g.non_edges.len(),
            rejected.len()
        ),
    );
    let mut payload = graph_to_value(&g);
    payload["left_out"] = json!(rejected);
    r.payload = payload;
    let dot = dot.then(|| graph_to_dot(&g));
    Ok((r, dot))
}

// verify-all

fn verify_family(r: &mut Report, family: Family, mode: CheckMode, opts: &Options) {
    let gold = golden(family).expect("dimension families have golden data");
    let budget = opts.budget;
    let mut payload = serde_json::Map::new();

    for e in entries(family) {
        let a = e.algebra();
        let ok = a.is_jordan().unwrap_or(false);
        r.check(format!("identity {}", e.label), ok, "commutative and Jordan");
    }
    for e in entries(family) {
        let a = e.algebra();
        let der = jordeg_core::invariants::derivation_algebra(&a).dim;
        let want = gold.der.get(e.label).copied().unwrap_or(e.der);
        r.check(format!("dim Der {}", e.label), der == want, format!("computed {der}, published {want}"));
        if let Some(want) = gold.rad.get(e.label).copied().or(e.rad) {
            let rad = jordeg_core::invariants::trace_form_radical(&a).map(|v| v.len());
            let ok = rad.as_ref().is_ok_and(|&d| d == want);
            let got = rad.map_or_else(|e| e.to_string(), |d| d.to_string());
            r.check(format!("dim Rad {}", e.label), ok, format!("computed {got}, published {want}"));
        }
    }

    let ws = shipped_witnesses(family);
    let witnesses = witness_records(r, &ws, budget);
    payload.insert("witnesses".into(), json!(witnesses));

    let certs = shipped_certificates(family);
    let mut checks = Vec::new();
    for c in &certs {
        match check_certificate(c, budget, mode) {
            Ok(check) => {
                check_record(r, c, &check);
                checks.push(json!(check));
            }
            Err(e) => nondeg_error(r, format!("certificate {}", c.name()), e),
        }
    }
    payload.insert("certificates".into(), json!(checks));

    let (g, rejected) = match shipped_graph(family, budget, mode) {
        Ok(x) => x,
        Err(e) => {
            r.check("graph assembly", false, e.to_string());
            r.payload = Value::Object(payload);
            return;
        }
    };
    graph_lines(r, &g);
    r.check(
        "graph assembly",
        true,
        format!(
            "{} nodes, {} edges, {} certified non-edges; {} failing inputs left out",
            g.nodes.len(),
            g.edges.len(),
            g.non_edges.len(),
            rejected.len()
        ),
    );
    let issues = g.primality_issues();
    r.check(
        "primary edges are primary",
        issues.is_empty(),
        issues
            .iter()
            .map(|i| format!("{} -> {} factors through {}", i.source, i.target, i.through))
            .collect::<Vec<_>>()
            .join("; "),
    );
    let semi: Vec<String> = g
        .semicontinuity()
        .iter()
        .filter(|s| !s.ok)
        .map(|s| format!("{} -> {}", s.source, s.target))
        .collect();
    r.check("semicontinuity along edges", semi.is_empty(), semi.join("; "));

    let comps = g.components_and_rigid();
    let diff = compare_components(&comps, &gold);
    let mut rigid_ok = diff.missing_rigid.is_empty() && diff.extra_rigid.is_empty();
    r.check(
        "rigid set",
        rigid_ok,
        format!("computed {{{}}}, published {{{}}}", comps.rigid_set.join(", "), gold.rigid.join(", ")),
    );
    for (i, (gen, _)) in gold.components.iter().enumerate() {
        let lines: Vec<String> = diff
            .lines()
            .into_iter()
            .filter(|l| l.contains(&format!("closure({gen})")))
            .collect();
        r.check(format!("component C{} = closure({gen})", i + 1), lines.is_empty(), lines.join("; "));
    }
    if !gold.intersection.is_empty() {
        let inter = g.component_intersection();
        r.check(
            "intersection of components",
            inter == gold.intersection,
            format!("computed {{{}}}, published {{{}}}", inter.join(", "), gold.intersection.join(", ")),
        );
    }
    for (label, want) in &gold.levels {
        match g.level(label) {
            Ok(l) => r.check(format!("level {label}"), l == *want, format!("computed {l}, published {want}")),
            Err(e) => r.check(format!("level {label}"), false, e.to_string()),
        }
    }
    rigid_ok &= diff.is_empty();
    payload.insert("graph".into(), graph_to_value(&g));
    payload.insert("left_out".into(), json!(rejected));
    payload.insert("component_diff".into(), json!(diff.lines()));
    payload.insert("components_match".into(), Value::Bool(rigid_ok));
    r.payload = Value::Object(payload);
}

/// `a..b`, `a..=b` (both inclusive) or a single `k`.
pub fn parse_range(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || usage(format!("bad range {s:?}; expected a..b"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a < 2 || b < a {
        return Err(usage(format!("range {s:?} must satisfy 2 <= a <= b")));
    }
    Ok((a, b))
}

fn verify_marginal(r: &mut Report, (lo, hi): (usize, usize)) {
    let mut rows = Vec::new();
    r.line(format!("{:<5}{:>6}{:>7}{:>6}  level", "k", "Der", "k²-k", "H²"));
    for k in lo..=hi {
        let j = jordeg_core::algebra::catalog::marginal(k).expect("k >= 2");
        r.check(format!("identity J{k}"), j.is_jordan().unwrap_or(false), "commutative and Jordan");
        let der = jordeg_core::invariants::derivation_algebra(&j).dim;
        r.check(format!("dim Der J{k}"), der == k * k - k, format!("computed {der}, k^2 - k = {}", k * k - k));
        let c = h2(&j);
        r.check(format!("dim H^2 J{k}"), c.dim_h2 == 0, format!("computed {}", c.dim_h2));
        let level = marginal_level_certificate(k);
        let (ok, detail) = match &level {
            Ok(l) => (l.holds, l.inference.clone()),
            Err(e) => (false, e.to_string()),
        };
        r.check(format!("level one J{k}"), ok, detail);
        r.line(format!("{:<5}{:>6}{:>7}{:>6}  {}", format!("J{k}"), der, k * k - k, c.dim_h2, if ok { 1 } else { 0 }));
        rows.push(json!({"k": k, "der": der, "h2": c.dim_h2, "level_one": ok}));
    }
    r.payload = json!({"marginal": rows});
}

/// Data files that must equal the embedded copies, relative to the data
/// directory.
const DATA_FILES: [(&str, &str); 5] = [
    ("golden.json", GOLDEN_JSON),
    ("witnesses/dim2.json", DIM2_WITNESSES),
    ("witnesses/dim3.json", DIM3_WITNESSES),
    ("certificates/dim2.json", DIM2_CERTIFICATES),
    ("certificates/dim3.json", DIM3_CERTIFICATES),
];

fn verify_data_dir(r: &mut Report, dir: &Path) {
    for (rel, embedded) in DATA_FILES {
        let path = dir.join(rel);
        let item = format!("data file {rel}");
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => {
                r.check(item, false, format!("{}: {e}", path.display()));
                continue;
            }
        };
        let parsed: Result<Value, _> = serde_json::from_str(&text);
        let want: Value = serde_json::from_str(embedded).expect("embedded data is JSON");
        match parsed {
            Ok(v) => r.check(item, v == want, if v == want { "matches the embedded copy" } else { "differs from the embedded copy" }),
            Err(e) => r.check(item, false, e.to_string()),
        }
    }
}

pub fn verify_all(
    scope: &str,
    range: Option<&str>,
    data_dir: Option<&Path>,
    trust: bool,
    opts: &Options,
) -> Result<Report, CliError> {
    let mode = if trust { CheckMode::Transcripts } else { CheckMode::Recompute };
    let mut command = format!("verify-all {scope}");
    if let Some(x) = range {
        command.push(' ');
        command.push_str(x);
    }
    let mut r = Report::new(command);
    match scope {
        "marginal" => {
            let range = parse_range(range.unwrap_or("2..8"))?;
            verify_marginal(&mut r, range);
        }
        s if s.starts_with("marginal") => {
            // marginal-2..6
            let range = parse_range(s.trim_start_matches("marginal").trim_start_matches(['-', ':']))?;
            verify_marginal(&mut r, range);
        }
        _ => {
            let family = parse_family(scope)?;
            if range.is_some() {
                return Err(usage("a range applies only to the marginal scope"));
            }
            verify_family(&mut r, family, mode, opts);
        }
    }
    if let Some(dir) = data_dir {
        verify_data_dir(&mut r, dir);
    }
    Ok(r)
}
