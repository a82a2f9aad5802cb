//! Peirce decomposition with respect to an idempotent.

use num_traits::Zero;

use crate::algebra::Algebra;
use crate::exact::matrix::span_contains;
use crate::exact::rational::rat;
use crate::exact::{Matrix, Rational};

/// Eigenspaces of `L_e` for the eigenvalues 0, ½ and 1.
#[derive(Clone, Debug, PartialEq)]
pub struct PeirceDecomposition {
    pub idempotent: Vec<Rational>,
    pub zero: Vec<Vec<Rational>>,
    pub half: Vec<Vec<Rational>>,
    pub one: Vec<Vec<Rational>>,
}

impl PeirceDecomposition {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.zero.len(), self.half.len(), self.one.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PeirceError {
    #[error("the element is zero")]
    Zero,
    #[error("the element is not idempotent")]
    NotIdempotent,
    #[error("Peirce components have total dimension {0}, expected {1}")]
    Incomplete(usize, usize),
    #[error("Peirce relation {0} fails")]
    Relation(&'static str),
}

fn eigenspace(l: &Matrix<Rational>, lambda: &Rational) -> Vec<Vec<Rational>> {
    let n = l.rows();
    let shifted = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            l.get(i, j) - lambda
        } else {
            l.get(i, j).clone()
        }
    });
    shifted.kernel()
}

fn raw_components(a: &Algebra, e: &[Rational]) -> [Vec<Vec<Rational>>; 3] {
    let l = a.left_mul(e);
    [
        eigenspace(&l, &rat(0, 1)),
        eigenspace(&l, &rat(1, 2)),
        eigenspace(&l, &rat(1, 1)),
    ]
}

/// Multiplicities `(0, ½, 1)` of `L_e`; for an idempotent of a Jordan
/// algebra these sum to the dimension.
pub fn peirce_dims(a: &Algebra, e: &[Rational]) -> (usize, usize, usize) {
    let [z, h, o] = raw_components(a, e);
    (z.len(), h.len(), o.len())
}

pub fn peirce_decomposition(a: &Algebra, e: &[Rational]) -> Result<PeirceDecomposition, PeirceError> {
    if e.iter().all(Zero::is_zero) {
        return Err(PeirceError::Zero);
    }
    if a.mul(e, e) != e {
        return Err(PeirceError::NotIdempotent);
    }
    let n = a.dim();
    let [zero, half, one] = raw_components(a, e);
    let total = zero.len() + half.len() + one.len();
    if total != n {
        return Err(PeirceError::Incomplete(total, n));
    }
    let contains = |sup: &[&Vec<Vec<Rational>>], x: &[Vec<Rational>], y: &[Vec<Rational>]| {
        let prods = a.product_space(x, y);
        let sup: Vec<Vec<Rational>> = sup.iter().flat_map(|s| s.iter().cloned()).collect();
        span_contains(&sup, &prods, n)
    };
    let checks: [(&'static str, bool); 6] = [
        ("J0 J0 ⊆ J0", contains(&[&zero], &zero, &zero)),
        ("J2 J2 ⊆ J2", contains(&[&one], &one, &one)),
        ("J0 J2 = 0", contains(&[], &zero, &one)),
        ("J0 J1 ⊆ J1", contains(&[&half], &zero, &half)),
        ("J2 J1 ⊆ J1", contains(&[&half], &one, &half)),
        ("J1 J1 ⊆ J0 + J2", contains(&[&zero, &one], &half, &half)),
    ];
    if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        return Err(PeirceError::Relation(name));
    }
    Ok(PeirceDecomposition {
        idempotent: e.to_vec(),
        zero,
        half,
        one,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    #[test]
    fn marginal_and_t05() {
        let j = catalog("J5").unwrap();
        let d = peirce_decomposition(&j, &j.basis_vector(0)).unwrap();
        assert_eq!(d.dims(), (0, 4, 1));
        let t = catalog("T05").unwrap();
        assert_eq!(peirce_decomposition(&t, &t.basis_vector(0)).unwrap().dims(), (1, 1, 1));
        assert_eq!(
            peirce_decomposition(&t, &[rat(0, 1), rat(0, 1), rat(0, 1)]),
            Err(PeirceError::Zero)
        );
        assert_eq!(
            peirce_decomposition(&t, &t.basis_vector(2)),
            Err(PeirceError::NotIdempotent)
        );
    }
}
