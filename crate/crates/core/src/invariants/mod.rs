//! Isomorphism invariants: derivations, the trace-form radical, idempotents,
//! Peirce decompositions, the semisimple quotient and a fingerprint.

mod fingerprint;
mod idempotents;
mod peirce;

use num_traits::Zero;

use crate::algebra::{Algebra, AlgebraError, Table};
use crate::exact::{EchelonBuilder, Matrix, Rational};

pub use fingerprint::{fingerprint, Fingerprint, IdempotentSummary};
pub use idempotents::{
    available_idempotents, frame_spectra, idempotent_frames, idempotent_variety, IdempotentError, IdempotentVariety,
    Frames,
};
pub use peirce::{peirce_decomposition, peirce_dims, PeirceDecomposition, PeirceError};

/// Linear maps `d` with `d(xy) = d(x)y + x d(y)`, as matrices acting on
/// column vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationSpace {
    pub dim: usize,
    pub basis: Vec<Matrix<Rational>>,
}

/// Rows of the Leibniz system; the unknown `D[k][j]` has index `k*n + j`.
fn leibniz_rows(a: &Algebra) -> Vec<Vec<Rational>> {
    let n = a.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            for m in 0..n {
                let mut row = vec![Rational::zero(); n * n];
                // D(e_i e_j)_m
                for l in 0..n {
                    let c = a.c(i, j, l);
                    if !c.is_zero() {
                        row[m * n + l] += c;
                    }
                }
                // D(e_i) e_j + e_i D(e_j)
                for k in 0..n {
                    let c = a.c(k, j, m);
                    if !c.is_zero() {
                        row[k * n + i] -= c;
                    }
                    let c = a.c(i, k, m);
                    if !c.is_zero() {
                        row[k * n + j] -= c;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

pub fn derivation_algebra(a: &Algebra) -> DerivationSpace {
    let n = a.dim();
    let mut eb = EchelonBuilder::new(n * n);
    for row in leibniz_rows(a) {
        eb.push(&row);
    }
    let basis: Vec<Matrix<Rational>> = eb
        .kernel()
        .into_iter()
        .map(|v| Matrix::from_fn(n, n, |k, j| v[k * n + j].clone()))
        .collect();
    DerivationSpace {
        dim: basis.len(),
        basis,
    }
}

/// Checks the Leibniz rule for `d` on all basis pairs.
pub fn is_derivation(a: &Algebra, d: &Matrix<Rational>) -> bool {
    let n = a.dim();
    let image = |v: &[Rational]| d.mul_vec(v);
    (0..n).all(|i| {
        (0..n).all(|j| {
            let (ei, ej) = (a.basis_vector(i), a.basis_vector(j));
            let lhs = image(&a.mul(&ei, &ej));
            let r1 = a.mul(&image(&ei), &ej);
            let r2 = a.mul(&ei, &image(&ej));
            lhs.iter().zip(r1.iter().zip(&r2)).all(|(l, (x, y))| *l == x + y)
        })
    })
}

/// `tr L_{e_l}` for each basis element.
fn multiplication_traces(a: &Algebra) -> Vec<Rational> {
    let n = a.dim();
    (0..n)
        .map(|l| (0..n).fold(Rational::zero(), |acc, j| acc + a.c(l, j, j)))
        .collect()
}

/// Gram matrix of `τ(x, y) = tr L_{xy}`.
pub fn trace_form(a: &Algebra) -> Matrix<Rational> {
    let n = a.dim();
    let t = multiplication_traces(a);
    Matrix::from_fn(n, n, |i, j| {
        (0..n).fold(Rational::zero(), |acc, l| acc + a.c(i, j, l) * &t[l])
    })
}

/// Kernel of the trace form, the radical in characteristic 0.
pub fn trace_form_radical(a: &Algebra) -> Result<Vec<Vec<Rational>>, AlgebraError> {
    if !a.is_jordan()? {
        return Err(AlgebraError::NotJordan);
    }
    Ok(trace_form(a).kernel())
}

/// The quotient by the radical together with the Peirce spectra of lifted
/// idempotent frames acting on the whole algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct SemisimplePart {
    pub radical_basis: Vec<Vec<Rational>>,
    pub complement: Vec<Vec<Rational>>,
    pub quotient: Algebra,
    pub action_spectra: Vec<Vec<(usize, usize, usize)>>,
}

pub fn semisimple_part(a: &Algebra, budget: u64) -> Result<SemisimplePart, IdempotentError> {
    let n = a.dim();
    let radical = trace_form_radical(a).map_err(IdempotentError::Algebra)?;
    let mut eb = EchelonBuilder::new(n);
    for r in &radical {
        eb.push(r);
    }
    let complement: Vec<Vec<Rational>> = (0..n)
        .map(|i| a.basis_vector(i))
        .filter(|v| eb.push(v))
        .collect();
    let m = complement.len();
    // Coordinates with respect to complement ++ radical.
    let mut full: Vec<Vec<Rational>> = complement.clone();
    full.extend(radical.iter().cloned());
    let coords = Matrix::from_rows(full)
        .transpose()
        .inverse()
        .expect("complement and radical span the algebra");
    let table = Table::from_fn(m, |i, j, k| {
        let p = a.mul(&complement[i], &complement[j]);
        coords.mul_vec(&p)[k].clone()
    });
    let names = complement
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.iter()
                .position(|x| !x.is_zero())
                .map(|p| a.basis_names[p].clone())
                .unwrap_or_else(|| format!("u{i}"))
        })
        .collect();
    let quotient = Algebra::new(table, names, None);
    let frames = idempotent_frames(a, budget)?;
    let action_spectra = frame_spectra(a, &frames);
    Ok(SemisimplePart {
        radical_basis: radical,
        complement,
        quotient,
        action_spectra,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    #[test]
    fn derivations_of_small_examples() {
        assert_eq!(derivation_algebra(&catalog("T12").unwrap()).dim, 6);
        assert_eq!(derivation_algebra(&Algebra::zero(3)).dim, 9);
        let j5 = catalog("J5").unwrap();
        let der = derivation_algebra(&j5);
        assert_eq!(der.dim, 20);
        assert!(der.basis.iter().all(|d| is_derivation(&j5, d)));
    }

    #[test]
    fn radicals() {
        assert_eq!(trace_form_radical(&catalog("T01").unwrap()).unwrap().len(), 0);
        assert_eq!(trace_form_radical(&catalog("T16").unwrap()).unwrap().len(), 2);
        assert_eq!(trace_form_radical(&Algebra::zero(3)).unwrap().len(), 3);
    }

    #[test]
    fn semisimple_quotients() {
        let budget = crate::exact::groebner::DEFAULT_BUDGET;
        let s = semisimple_part(&catalog("T03").unwrap(), budget).unwrap();
        assert_eq!(s.radical_basis.len(), 1);
        assert_eq!(s.quotient.dim(), 2);
        assert_eq!(derivation_algebra(&s.quotient).dim, 0);
        assert_eq!(trace_form_radical(&s.quotient).unwrap().len(), 0);
        let s = semisimple_part(&catalog("T19").unwrap(), budget).unwrap();
        assert_eq!(s.quotient.dim(), 0);
    }
}
