//! Non-degeneration certificates: Borel-stable closed sets with Bruhat-cell
//! orbit exclusion, Peirce obstructions, derivation dimensions and the
//! power rank.

pub mod bruhat;
mod certificate;
pub mod format;
mod obstruction;
pub mod power;
pub mod spec;
pub mod stability;

use crate::algebra::{Algebra, AlgebraError, BasisChange, CatalogError};
use crate::invariants::IdempotentError;

pub use bruhat::{bruhat_cells, orbit_exclusion, BruhatCell, CellTranscript, CellVerdict, ExclusionReport, ExclusionVerdict};
pub use certificate::{
    check_certificate, CertificateCheck, CertificateKind, CheckMode, CheckStep, ClosedSetEvidence, Evidence,
    NonDegenerationCertificate,
};
pub use format::{
    certificate_to_value, parse_certificate, parse_certificates, serialize_certificate, serialize_certificates,
    shipped_certificates,
};
pub use obstruction::{peirce_obstruction, PeirceReport, PeirceVerdict};
pub use power::{power_rank, power_rank_obstruction, PowerRank, PowerRankReport, PowerVerdict};
pub use spec::{membership, ClosedSetSpec, FlagCondition, SpecError, Triple};
pub use stability::{borel_stability, instability_counterexample, StabilityObstruction, StabilityReport};

#[derive(Debug, thiserror::Error)]
pub enum NondegenerationError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("the target is nilpotent; the Peirce obstruction does not apply")]
    NilpotentTarget,
    #[error("dimension {0} exceeds the supported maximum {1}")]
    TooLarge(usize, usize),
    #[error(transparent)]
    Idempotent(#[from] IdempotentError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("{location}: {message}")]
    Format { location: String, message: String },
}

/// `origin` of certificates for non-degenerations stated in the literature.
pub const PUBLISHED: &str = "published";
/// `origin` of certificates found here.
pub const DERIVED: &str = "derived";

/// Membership of `A` after changing to the basis `g` (rows in `A`'s
/// coordinates).
pub fn membership_in_basis(spec: &ClosedSetSpec, a: &Algebra, g: &BasisChange) -> Result<bool, NondegenerationError> {
    if g.dim() != a.dim() {
        return Err(NondegenerationError::DimensionMismatch(a.dim(), g.dim()));
    }
    Ok(membership(spec, &a.change_basis(g)?))
}

/// The two closed sets used for `T10, T13 ↛ T17` and `T02 ↛ T07`.
pub fn standard_specs() -> [(&'static str, ClosedSetSpec); 2] {
    [
        (
            "R1",
            ClosedSetSpec::parse(3, &[[1, 1, 2]], &["S1*S3 + S2^2 ⊆ S3", "S2*S3 = 0"]).expect("valid spec"),
        ),
        (
            "R2",
            ClosedSetSpec::parse(3, &[[1, 1, 2], [2, 3, 3], [1, 3, 3], [1, 3, 2]], &["S2^2 ⊆ S2", "S3^2 ⊆ S3"])
                .expect("valid spec"),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog, Family};
    use crate::degeneration::{shipped_witnesses, verify_witness};
    use crate::exact::groebner::DEFAULT_BUDGET;
    use crate::exact::rational::int;
    use crate::exact::Matrix;

    fn r1() -> ClosedSetSpec {
        standard_specs()[0].1.clone()
    }

    fn r2() -> ClosedSetSpec {
        standard_specs()[1].1.clone()
    }

    fn t02_basis() -> BasisChange {
        // e3, e2, e1 + e2
        BasisChange::new(Matrix::from_rows(vec![
            vec![int(0), int(0), int(1)],
            vec![int(0), int(1), int(0)],
            vec![int(1), int(1), int(0)],
        ]))
        .unwrap()
    }

    #[test]
    fn printed_membership_bases() {
        let id = BasisChange::identity(3);
        assert!(membership_in_basis(&r1(), &catalog("T10").unwrap(), &id).unwrap());
        assert!(membership_in_basis(&r1(), &catalog("T13").unwrap(), &id).unwrap());
        assert!(membership_in_basis(&r2(), &catalog("T02").unwrap(), &t02_basis()).unwrap());
    }

    #[test]
    fn exclusions() {
        let t17 = catalog("T17").unwrap();
        let t07 = catalog("T07").unwrap();
        assert_eq!(orbit_exclusion(&r1(), &t17, DEFAULT_BUDGET).verdict, ExclusionVerdict::Excluded);
        assert_eq!(orbit_exclusion(&r2(), &t07, DEFAULT_BUDGET).verdict, ExclusionVerdict::Excluded);
        assert_eq!(
            orbit_exclusion(&r1(), &Algebra::zero(3), DEFAULT_BUDGET).verdict,
            ExclusionVerdict::NotExcluded
        );
    }

    #[test]
    fn shipped_certificates_round_trip() {
        for family in [Family::Dim2, Family::Dim3] {
            let cs = shipped_certificates(family);
            let again = parse_certificates(&serialize_certificates(&cs)).unwrap();
            assert_eq!(again, cs);
        }
    }

    /// No checker may obstruct a pair joined by a verified witness.
    #[test]
    fn soundness_against_witnesses() {
        let certs = shipped_certificates(Family::Dim3);
        for family in [Family::Dim2, Family::Dim3] {
            for w in shipped_witnesses(family) {
                if !verify_witness(&w).verified {
                    continue;
                }
                let (a, b) = (&w.source, &w.target);
                if !b.is_nilpotent() {
                    let r = peirce_obstruction(a, b, DEFAULT_BUDGET).unwrap();
                    assert_eq!(r.verdict, PeirceVerdict::NotObstructed, "{}", w.name());
                }
                let r = power_rank_obstruction(a, b).unwrap();
                assert_eq!(r.verdict, PowerVerdict::NotObstructed, "{}", w.name());
                for c in &certs {
                    assert!(
                        !(c.source.label == a.label && c.target.label == b.label),
                        "certificate against witness {}",
                        w.name()
                    );
                }
            }
        }
    }
}
