//! A tuple of basis-independent invariants used to tell algebras apart.

use serde::Serialize;

use super::idempotents::{frame_spectra, idempotent_frames, IdempotentError, IdempotentVariety};
use super::{derivation_algebra, trace_form_radical};
use crate::algebra::Algebra;
use crate::cohomology::h2;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum IdempotentSummary {
    /// Number of nonzero idempotents.
    Finite(usize),
    /// Dimension of the idempotent variety.
    PositiveDimensional(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub der: usize,
    pub rad: usize,
    pub nilpotency_index: Option<usize>,
    pub power_dims: Vec<usize>,
    pub idempotents: IdempotentSummary,
    /// Sorted Peirce multiplicities `(0, ½, 1)` per maximal frame.
    pub frame_profiles: Vec<Vec<(usize, usize, usize)>>,
    pub square_dim: usize,
    pub h2: usize,
}

pub fn fingerprint(a: &Algebra, budget: u64) -> Result<Fingerprint, IdempotentError> {
    let rad = trace_form_radical(a)?.len();
    let frames = idempotent_frames(a, budget)?;
    let idempotents = match &frames.variety {
        IdempotentVariety::Finite(all) => IdempotentSummary::Finite(all.len()),
        IdempotentVariety::PositiveDimensional(d) => IdempotentSummary::PositiveDimensional(*d),
    };
    Ok(Fingerprint {
        dim: a.dim(),
        der: derivation_algebra(a).dim,
        rad,
        nilpotency_index: a.nilpotency_index(),
        power_dims: a.power_dims(),
        idempotents,
        frame_profiles: frame_spectra(a, &frames),
        square_dim: a.square_dim(),
        h2: h2(a).dim_h2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog, BasisChange};
    use crate::exact::groebner::DEFAULT_BUDGET;

    #[test]
    fn swap_invariance_and_profiles() {
        let b4 = catalog("B4").unwrap();
        let swapped = b4.change_basis(&BasisChange::permutation(&[1, 0])).unwrap();
        assert_eq!(swapped.table, b4.table);
        assert_eq!(
            fingerprint(&b4, DEFAULT_BUDGET).unwrap(),
            fingerprint(&swapped, DEFAULT_BUDGET).unwrap()
        );
        let p = |l: &str| fingerprint(&catalog(l).unwrap(), DEFAULT_BUDGET).unwrap().frame_profiles;
        assert_eq!(p("T07"), vec![vec![(0, 0, 3)]]);
        assert_eq!(p("T10"), vec![vec![(0, 1, 2)]]);
        assert_eq!(p("T13"), vec![vec![(1, 1, 1)]]);
    }

    #[test]
    fn zero_algebra() {
        let f = fingerprint(&Algebra::zero(3), DEFAULT_BUDGET).unwrap();
        assert_eq!((f.dim, f.der, f.rad, f.nilpotency_index), (3, 9, 3, Some(2)));
    }
}
