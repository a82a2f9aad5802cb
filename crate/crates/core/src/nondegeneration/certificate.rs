//! Non-degeneration certificates and their checker.

use serde::{Deserialize, Serialize};

use super::bruhat::{bruhat_cells, cell_generators, combine, orbit_exclusion, CellTranscript, CellVerdict, ExclusionVerdict};
use super::obstruction::{peirce_obstruction, PeirceVerdict};
use super::power::{power_rank_obstruction, PowerVerdict};
use super::spec::{membership, ClosedSetSpec};
use super::stability::borel_stability;
use super::NondegenerationError;
use crate::algebra::{Algebra, BasisChange};
use crate::degeneration::{algebra_name, derivation_check, DerivationVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    DerivationDimension,
    PeirceObstruction,
    ClosedSet,
    PowerRank,
}

impl CertificateKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CertificateKind::DerivationDimension => "derivation-dimension",
            CertificateKind::PeirceObstruction => "peirce-obstruction",
            CertificateKind::ClosedSet => "closed-set",
            CertificateKind::PowerRank => "power-rank",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            CertificateKind::DerivationDimension,
            CertificateKind::PeirceObstruction,
            CertificateKind::ClosedSet,
            CertificateKind::PowerRank,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
    }
}

/// A closed set containing the source (in the given basis) and missing
/// the orbit of the target.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedSetEvidence {
    pub spec: ClosedSetSpec,
    /// Rows are the source's membership basis in its own coordinates.
    pub basis: BasisChange,
    pub transcripts: Vec<CellTranscript>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Evidence {
    DerivationDimension,
    PeirceObstruction,
    PowerRank,
    ClosedSet(ClosedSetEvidence),
}

#[derive(Clone, Debug, PartialEq)]
pub struct NonDegenerationCertificate {
    pub source: Algebra,
    pub target: Algebra,
    pub evidence: Evidence,
    pub origin: Option<String>,
}

impl NonDegenerationCertificate {
    pub fn new(source: Algebra, target: Algebra, evidence: Evidence) -> Result<Self, NondegenerationError> {
        if source.dim() != target.dim() {
            return Err(NondegenerationError::DimensionMismatch(source.dim(), target.dim()));
        }
        if let Evidence::ClosedSet(c) = &evidence {
            if c.spec.dim() != source.dim() || c.basis.dim() != source.dim() {
                return Err(NondegenerationError::DimensionMismatch(source.dim(), c.spec.dim()));
            }
        }
        Ok(NonDegenerationCertificate {
            source,
            target,
            evidence,
            origin: None,
        })
    }

    pub fn with_origin(mut self, origin: impl Into<String>) -> Self {
        self.origin = Some(origin.into());
        self
    }

    pub fn kind(&self) -> CertificateKind {
        match self.evidence {
            Evidence::DerivationDimension => CertificateKind::DerivationDimension,
            Evidence::PeirceObstruction => CertificateKind::PeirceObstruction,
            Evidence::PowerRank => CertificateKind::PowerRank,
            Evidence::ClosedSet(_) => CertificateKind::ClosedSet,
        }
    }

    /// `T10-/->T17`
    pub fn name(&self) -> String {
        format!("{}-/->{}", algebra_name(&self.source), algebra_name(&self.target))
    }

    /// Fills in the cell transcripts by running the exclusion.
    pub fn with_transcripts(mut self, budget: u64) -> Self {
        if let Evidence::ClosedSet(c) = &mut self.evidence {
            c.transcripts = orbit_exclusion(&c.spec, &self.target, budget).cells;
        }
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CheckMode {
    /// Re-decide every Gröbner system.
    #[default]
    Recompute,
    /// Re-derive the cell generators and trust the stored reduced bases.
    Transcripts,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckStep {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateCheck {
    pub name: String,
    pub kind: CertificateKind,
    pub valid: bool,
    /// Some step ran out of Gröbner budget.
    pub undecided: bool,
    pub steps: Vec<CheckStep>,
}

impl CertificateCheck {
    pub fn summary(&self) -> String {
        let status = if self.valid {
            "ok"
        } else if self.undecided {
            "UNDECIDED"
        } else {
            "FAILED"
        };
        let failing: Vec<&str> = self.steps.iter().filter(|s| !s.ok).map(|s| s.name.as_str()).collect();
        if failing.is_empty() {
            format!("{} [{}]: {}", self.name, self.kind.as_str(), status)
        } else {
            format!("{} [{}]: {} ({})", self.name, self.kind.as_str(), status, failing.join(", "))
        }
    }
}

fn step(name: &str, ok: bool, detail: impl Into<String>) -> CheckStep {
    CheckStep {
        name: name.to_string(),
        ok,
        detail: detail.into(),
    }
}

fn fmt_spectra(s: &[(usize, usize, usize)]) -> String {
    s.iter().map(|(a, b, c)| format!("({a},{b},{c})")).collect::<Vec<_>>().join(" ")
}

fn check_transcripts(
    c: &ClosedSetEvidence,
    target: &Algebra,
    steps: &mut Vec<CheckStep>,
) -> ExclusionVerdict {
    let cells = bruhat_cells(target.dim());
    let mut ok = c.transcripts.len() == cells.len();
    let mut detail = format!("{} of {} cells recorded", c.transcripts.len(), cells.len());
    for cell in &cells {
        let perm: Vec<usize> = cell.permutation.iter().map(|p| p + 1).collect();
        let Some(t) = c.transcripts.iter().find(|t| t.permutation == perm) else {
            ok = false;
            detail = format!("no transcript for permutation {perm:?}");
            break;
        };
        let names = cell.parameter_names();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let gens: Vec<String> = cell_generators(&c.spec, target, cell)
            .iter()
            .map(|g| g.to_string_with(&refs))
            .collect();
        if gens != t.generators || names != t.parameters {
            ok = false;
            detail = format!("generators of cell {perm:?} do not match the recorded ones");
            break;
        }
        if t.verdict == CellVerdict::EmptyOverC && t.reduced_basis != ["1"] {
            ok = false;
            detail = format!("cell {perm:?} is recorded empty but its reduced basis is not {{1}}");
            break;
        }
    }
    steps.push(step("transcripts", ok, detail));
    if ok {
        combine(&c.transcripts)
    } else {
        ExclusionVerdict::NotExcluded
    }
}

pub fn check_certificate(
    cert: &NonDegenerationCertificate,
    budget: u64,
    mode: CheckMode,
) -> Result<CertificateCheck, NondegenerationError> {
    let (a, b) = (&cert.source, &cert.target);
    let mut steps = Vec::new();
    let mut undecided = false;
    match &cert.evidence {
        Evidence::DerivationDimension => {
            let d = derivation_check(a, b, budget)?;
            steps.push(step(
                "derivations",
                d.verdict == DerivationVerdict::Obstructed,
                format!(
                    "dim Der = {} and {}, orbit dims {} and {}, isomorphic: {}",
                    d.der_source, d.der_target, d.orbit_dim_source, d.orbit_dim_target, d.same_fingerprint
                ),
            ));
        }
        Evidence::PeirceObstruction => {
            let r = peirce_obstruction(a, b, budget)?;
            steps.push(step(
                "peirce",
                r.verdict == PeirceVerdict::Obstructed,
                format!(
                    "source spectra {}; target spectra {}",
                    fmt_spectra(&r.source_spectra),
                    fmt_spectra(&r.target_spectra)
                ),
            ));
        }
        Evidence::PowerRank => {
            let r = power_rank_obstruction(a, b)?;
            steps.push(step(
                "power-rank",
                r.verdict == PowerVerdict::Obstructed,
                format!("generic power rank {} and {}", r.source.rank, r.target.rank),
            ));
        }
        Evidence::ClosedSet(c) => {
            let moved = a.change_basis(&c.basis)?;
            steps.push(step(
                "membership",
                membership(&c.spec, &moved),
                match c.spec.first_violation(&moved.table) {
                    None => "source lies in the set in the given basis".to_string(),
                    Some((i, j, k)) => format!("c_{}{}^{} is nonzero", i + 1, j + 1, k + 1),
                },
            ));
            let st = borel_stability(&c.spec);
            steps.push(step(
                "borel-stable",
                st.stable,
                match st.obstructions.first() {
                    None => "every constrained coordinate maps into the set".to_string(),
                    Some(o) => format!(
                        "{} obstructions, e.g. c'_{}{}^{} picks up c_{}{}^{} with coefficient {}",
                        st.obstructions.len(),
                        o.constrained[0],
                        o.constrained[1],
                        o.constrained[2],
                        o.escaping[0],
                        o.escaping[1],
                        o.escaping[2],
                        o.coefficient
                    ),
                },
            ));
            let verdict = match mode {
                CheckMode::Recompute => {
                    let r = orbit_exclusion(&c.spec, b, budget);
                    if !c.transcripts.is_empty() {
                        let same = r.cells == c.transcripts;
                        steps.push(step(
                            "transcripts",
                            same,
                            if same {
                                "recorded transcripts reproduced"
                            } else {
                                "recorded transcripts differ from the recomputed ones"
                            },
                        ));
                    }
                    r.verdict
                }
                CheckMode::Transcripts => check_transcripts(c, b, &mut steps),
            };
            undecided = verdict == ExclusionVerdict::Undecided;
            steps.push(step(
                "exclusion",
                verdict == ExclusionVerdict::Excluded,
                format!("{verdict:?} over {} cells", bruhat_cells(b.dim()).len()),
            ));
        }
    }
    Ok(CertificateCheck {
        name: cert.name(),
        kind: cert.kind(),
        valid: steps.iter().all(|s| s.ok),
        undecided,
        steps,
    })
}
