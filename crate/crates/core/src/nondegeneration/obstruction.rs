//! Peirce obstruction: the semisimple part of a degeneration target sits
//! inside that of the source with the same Peirce decomposition. Compared
//! at the level of `(0, ½, 1)` multiplicities of `L_e`.

use serde::Serialize;

use super::NondegenerationError;
use crate::algebra::Algebra;
use crate::invariants::{available_idempotents, idempotent_frames, peirce_dims};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeirceVerdict {
    Obstructed,
    NotObstructed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeirceReport {
    pub verdict: PeirceVerdict,
    /// Multiplicities realized by idempotents of the source.
    pub source_spectra: Vec<(usize, usize, usize)>,
    pub target_spectra: Vec<(usize, usize, usize)>,
    /// A target spectrum also realized in the source, if any.
    pub shared: Option<(usize, usize, usize)>,
}

fn spectra(a: &Algebra, budget: u64) -> Result<Vec<(usize, usize, usize)>, NondegenerationError> {
    let frames = idempotent_frames(a, budget)?;
    let mut out: Vec<_> = available_idempotents(a, &frames)
        .iter()
        .map(|e| peirce_dims(a, e))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn peirce_obstruction(a: &Algebra, b: &Algebra, budget: u64) -> Result<PeirceReport, NondegenerationError> {
    if a.dim() != b.dim() {
        return Err(NondegenerationError::DimensionMismatch(a.dim(), b.dim()));
    }
    if b.is_nilpotent() {
        return Err(NondegenerationError::NilpotentTarget);
    }
    let source_spectra = spectra(a, budget)?;
    let target_spectra = spectra(b, budget)?;
    let shared = target_spectra.iter().find(|s| source_spectra.contains(s)).copied();
    Ok(PeirceReport {
        verdict: if shared.is_some() {
            PeirceVerdict::NotObstructed
        } else {
            PeirceVerdict::Obstructed
        },
        source_spectra,
        target_spectra,
        shared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::exact::groebner::DEFAULT_BUDGET;

    fn run(a: &str, b: &str) -> PeirceReport {
        peirce_obstruction(&catalog(a).unwrap(), &catalog(b).unwrap(), DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn examples() {
        let r = run("T06", "T07");
        assert_eq!(r.verdict, PeirceVerdict::Obstructed);
        assert_eq!(r.target_spectra, vec![(0, 0, 3)]);
        assert_eq!(r.source_spectra, vec![(1, 0, 2), (2, 0, 1)]);
        assert_eq!(run("T02", "T09").verdict, PeirceVerdict::Obstructed);
        assert_eq!(run("T03", "T09").verdict, PeirceVerdict::NotObstructed);
    }

    #[test]
    fn nilpotent_targets_are_rejected() {
        let e = peirce_obstruction(&catalog("T01").unwrap(), &catalog("T17").unwrap(), DEFAULT_BUDGET);
        assert!(matches!(e, Err(NondegenerationError::NilpotentTarget)));
    }
}
