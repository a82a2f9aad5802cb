//! Degenerations `A → B` certified by parametrized bases.
//!
//! A parametrized basis `E` has rows `Eᵢᵗ = Σⱼ aᵢⱼ(t) eⱼ`. Writing `A` in that
//! basis gives structure constants in ℚ(t); if each has a finite value at
//! `t = 0` and those values are `B`'s constants, then `A → B`.

mod format;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{Algebra, AlgebraOverT, CatalogError};
use crate::exact::expr::{parse_ratfunc, ExprError};
use crate::exact::rational::format_rational;
use crate::exact::{Limit, Matrix, RatFunc, Rational};
use crate::invariants::{derivation_algebra, fingerprint, IdempotentError};

pub use format::{
    edge_witnesses, parse_witness, parse_witnesses, serialize_witness, serialize_witnesses, shipped_witnesses,
    witness_to_value, CONSTRUCTED, CORRECTED, DIM2_WITNESSES, DIM3_WITNESSES, PRINTED,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DegenerationError {
    #[error("parametrized basis is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("parametrized basis has zero determinant")]
    Singular,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("basis entry ({row}, {col}): {source}")]
    Entry {
        row: usize,
        col: usize,
        source: ExprError,
    },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("{location}: {message}")]
    Format { location: String, message: String },
}

/// An `n×n` matrix over ℚ(t) with nonzero determinant; row `i` is `Eᵢᵗ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParametrizedBasis {
    matrix: Matrix<RatFunc>,
    det: RatFunc,
}

impl ParametrizedBasis {
    pub fn new(matrix: Matrix<RatFunc>) -> Result<Self, DegenerationError> {
        let det = matrix
            .determinant()
            .map_err(|_| DegenerationError::NotSquare(matrix.rows(), matrix.cols()))?;
        if det.is_zero() {
            return Err(DegenerationError::Singular);
        }
        Ok(ParametrizedBasis { matrix, det })
    }

    /// Parses rows of expression strings in `t`.
    pub fn parse<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<Self, DegenerationError> {
        let n = rows.len();
        let mut m = Matrix::zeros(n, n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(DegenerationError::NotSquare(n, row.len()));
            }
            for (j, s) in row.iter().enumerate() {
                let f = parse_ratfunc(s.as_ref()).map_err(|source| DegenerationError::Entry {
                    row: i,
                    col: j,
                    source,
                })?;
                m.set(i, j, f);
            }
        }
        Self::new(m)
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Matrix::identity(n)).expect("identity is invertible")
    }

    /// `Eᵢᵗ = t eᵢ`, which degenerates anything to the zero algebra.
    pub fn scaling(n: usize) -> Self {
        Self::new(Matrix::identity(n).scale(&RatFunc::t())).expect("t·I is invertible")
    }

    pub fn from_constant(m: &Matrix<Rational>) -> Result<Self, DegenerationError> {
        Self::new(m.map(|x| RatFunc::constant(x.clone())))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<RatFunc> {
        &self.matrix
    }

    pub fn determinant(&self) -> &RatFunc {
        &self.det
    }

    /// `g·E` for a constant invertible `g`: new rows are combinations of the
    /// old ones.
    pub fn left_mul_constant(&self, g: &Matrix<Rational>) -> Result<Self, DegenerationError> {
        if g.rows() != self.dim() || g.cols() != self.dim() {
            return Err(DegenerationError::DimensionMismatch(g.rows(), self.dim()));
        }
        Self::new(g.map(|x| RatFunc::constant(x.clone())).mul(&self.matrix))
    }

    /// Every row multiplied by `t`.
    pub fn scaled_by_t(&self) -> Self {
        Self::new(self.matrix.scale(&RatFunc::t())).expect("scaling keeps the determinant nonzero")
    }

    /// Entries that are not polynomials in `t`.
    pub fn non_polynomial_entries(&self) -> Vec<(usize, usize)> {
        let n = self.dim();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.matrix.get(i, j).is_polynomial())
            .collect()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.matrix
            .to_rows()
            .into_iter()
            .map(|r| r.iter().map(|f| f.to_string_in("t")).collect())
            .collect()
    }
}

/// Structure constants of `a` in the basis `e`.
pub fn transform_by_parametrized_basis(
    a: &Algebra,
    e: &ParametrizedBasis,
) -> Result<AlgebraOverT, DegenerationError> {
    if a.dim() != e.dim() {
        return Err(DegenerationError::DimensionMismatch(a.dim(), e.dim()));
    }
    let q = e.matrix.inverse().ok_or(DegenerationError::Singular)?;
    let lifted = a.table.map(|c| RatFunc::constant(c.clone()));
    Ok(lifted.transform(&e.matrix, &q))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegenerationWitness {
    pub source: Algebra,
    pub target: Algebra,
    pub basis: ParametrizedBasis,
    /// Free-form note on where the witness comes from.
    pub origin: Option<String>,
}

impl DegenerationWitness {
    pub fn new(source: Algebra, target: Algebra, basis: ParametrizedBasis) -> Result<Self, DegenerationError> {
        if source.dim() != target.dim() {
            return Err(DegenerationError::DimensionMismatch(source.dim(), target.dim()));
        }
        if basis.dim() != source.dim() {
            return Err(DegenerationError::DimensionMismatch(basis.dim(), source.dim()));
        }
        Ok(DegenerationWitness {
            source,
            target,
            basis,
            origin: None,
        })
    }

    pub fn with_origin(mut self, origin: impl Into<String>) -> Self {
        self.origin = Some(origin.into());
        self
    }

    /// `source → target`, using labels where known.
    pub fn name(&self) -> String {
        format!("{}->{}", algebra_name(&self.source), algebra_name(&self.target))
    }
}

pub(crate) fn algebra_name(a: &Algebra) -> String {
    a.label.clone().unwrap_or_else(|| "inline".to_string())
}

/// A structure constant `c_{ij}^k` (0-based indices, `i ≤ j`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coordinate {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub at: Coordinate,
    pub limit: String,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub name: String,
    pub verified: bool,
    pub determinant: String,
    /// Transformed constants with a pole at `t = 0`.
    pub poles: Vec<Coordinate>,
    pub mismatches: Vec<Mismatch>,
    /// Basis entries that are rational but not polynomial in `t`.
    pub non_polynomial_entries: Vec<(usize, usize)>,
}

impl WitnessReport {
    pub fn summary(&self) -> String {
        if self.verified {
            return format!("{}: verified (det = {})", self.name, self.determinant);
        }
        let mut parts = Vec::new();
        for p in &self.poles {
            parts.push(format!("pole at c_{}{}^{}", p.i + 1, p.j + 1, p.k + 1));
        }
        for m in &self.mismatches {
            parts.push(format!(
                "c_{}{}^{} -> {} but target has {}",
                m.at.i + 1,
                m.at.j + 1,
                m.at.k + 1,
                m.limit,
                m.expected
            ));
        }
        format!("{}: FAILED ({})", self.name, parts.join("; "))
    }
}

pub fn verify_witness(w: &DegenerationWitness) -> WitnessReport {
    let n = w.source.dim();
    let mut poles = Vec::new();
    let mut mismatches = Vec::new();
    let transformed = transform_by_parametrized_basis(&w.source, &w.basis)
        .expect("dimensions are checked when the witness is built");
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                let expected = w.target.c(i, j, k);
                match transformed.get(i, j, k).limit_at_zero() {
                    Limit::Pole => poles.push(Coordinate { i, j, k }),
                    Limit::Finite(v) if &v != expected => mismatches.push(Mismatch {
                        at: Coordinate { i, j, k },
                        limit: format_rational(&v),
                        expected: format_rational(expected),
                    }),
                    Limit::Finite(_) => {}
                }
            }
        }
    }
    WitnessReport {
        name: w.name(),
        verified: poles.is_empty() && mismatches.is_empty(),
        determinant: w.basis.determinant().to_string_in("t"),
        poles,
        mismatches,
        non_polynomial_entries: w.basis.non_polynomial_entries(),
    }
}

/// Verifies independent witnesses, in parallel when enabled; output order
/// follows input order.
pub fn verify_witnesses(ws: &[DegenerationWitness]) -> Vec<WitnessReport> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        ws.par_iter().map(verify_witness).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        ws.iter().map(verify_witness).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DerivationVerdict {
    Consistent,
    Obstructed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationCheck {
    pub verdict: DerivationVerdict,
    pub der_source: usize,
    pub der_target: usize,
    /// `n² − dim Der`.
    pub orbit_dim_source: usize,
    pub orbit_dim_target: usize,
    pub same_fingerprint: bool,
}

/// A proper degeneration strictly raises the derivation dimension.
pub fn derivation_check(a: &Algebra, b: &Algebra, budget: u64) -> Result<DerivationCheck, IdempotentError> {
    let n = a.dim();
    if b.dim() != n {
        return Err(crate::algebra::AlgebraError::DimensionMismatch(n, b.dim()).into());
    }
    let der_source = derivation_algebra(a).dim;
    let der_target = derivation_algebra(b).dim;
    let same_fingerprint = der_source == der_target && fingerprint(a, budget)? == fingerprint(b, budget)?;
    let verdict = if der_source >= der_target && !same_fingerprint {
        DerivationVerdict::Obstructed
    } else {
        DerivationVerdict::Consistent
    };
    Ok(DerivationCheck {
        verdict,
        der_source,
        der_target,
        orbit_dim_source: n * n - der_source,
        orbit_dim_target: n * n - der_target,
        same_fingerprint,
    })
}

/// The witness `A → 0` obtained by scaling every row of a witness `A → B`
/// by `t`.
pub fn compose_with_scaling(w: &DegenerationWitness) -> DegenerationWitness {
    let n = w.source.dim();
    DegenerationWitness {
        source: w.source.clone(),
        target: Algebra::zero(n).with_label(zero_label(n)),
        basis: w.basis.scaled_by_t(),
        origin: None,
    }
}

pub(crate) fn zero_label(n: usize) -> String {
    format!("C{n}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::exact::groebner::DEFAULT_BUDGET;
    use crate::exact::rational::int;
    use crate::exact::Ring;

    fn one() -> RatFunc {
        <RatFunc as num_traits::One>::one()
    }

    fn rows(r: &[&[&str]]) -> ParametrizedBasis {
        let v: Vec<Vec<&str>> = r.iter().map(|x| x.to_vec()).collect();
        ParametrizedBasis::parse(&v).unwrap()
    }

    #[test]
    fn transform_t03_basis() {
        let t03 = catalog("T03").unwrap();
        let e = rows(&[&["1", "0", "0"], &["0", "0", "1"], &["0", "t", "0"]]);
        assert_eq!(e.determinant(), &RatFunc::t().neg_ref());
        let c = transform_by_parametrized_basis(&t03, &e).unwrap();
        let t = RatFunc::t();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let want = match (i.min(j), i.max(j), k) {
                        (0, 0, 0) | (0, 1, 1) => one(),
                        (2, 2, 2) => t.clone(),
                        _ => RatFunc::zero(),
                    };
                    assert_eq!(c.get(i, j, k), &want, "{i}{j}{k}");
                }
            }
        }
        let w = DegenerationWitness::new(t03.clone(), catalog("T09").unwrap(), e).unwrap();
        assert!(verify_witness(&w).verified);
    }

    #[test]
    fn identity_and_scaling() {
        let a = catalog("T10").unwrap();
        let same = transform_by_parametrized_basis(&a, &ParametrizedBasis::identity(3)).unwrap();
        assert_eq!(same, a.table.map(|c| RatFunc::constant(c.clone())));
        let scaled = transform_by_parametrized_basis(&a, &ParametrizedBasis::scaling(3)).unwrap();
        assert_eq!(scaled, a.table.map(|c| RatFunc::constant(c.clone()) * RatFunc::t()));
        let w = DegenerationWitness::new(a, Algebra::zero(3), ParametrizedBasis::scaling(3)).unwrap();
        assert!(verify_witness(&w).verified);
    }

    #[test]
    fn mismatch_and_pole_reports() {
        let w = DegenerationWitness::new(
            catalog("T03").unwrap(),
            catalog("T09").unwrap(),
            ParametrizedBasis::identity(3),
        )
        .unwrap();
        let r = verify_witness(&w);
        assert!(!r.verified);
        assert!(!r.mismatches.is_empty());
        assert!(r.poles.is_empty());
        let inv = rows(&[&["1/t", "0"], &["0", "1"]]);
        let w = DegenerationWitness::new(catalog("B5").unwrap(), catalog("B5").unwrap(), inv).unwrap();
        let r = verify_witness(&w);
        assert!(!r.verified);
        assert_eq!(r.poles, vec![Coordinate { i: 0, j: 0, k: 0 }]);
        assert_eq!(r.non_polynomial_entries, vec![(0, 0)]);
    }

    #[test]
    fn singular_bases_are_rejected() {
        let m = vec![vec!["t", "t"], vec!["1", "1"]];
        assert_eq!(ParametrizedBasis::parse(&m), Err(DegenerationError::Singular));
        let m = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)]]);
        assert_eq!(ParametrizedBasis::from_constant(&m), Err(DegenerationError::Singular));
    }

    #[test]
    fn derivation_checks() {
        let c = |a: &str, b: &str| {
            derivation_check(&catalog(a).unwrap(), &catalog(b).unwrap(), DEFAULT_BUDGET).unwrap()
        };
        let r = c("T05", "T11");
        assert_eq!((r.verdict, r.der_source, r.der_target), (DerivationVerdict::Consistent, 2, 3));
        assert_eq!(r.orbit_dim_source, 7);
        assert_eq!(c("T12", "T11").verdict, DerivationVerdict::Obstructed);
        assert_eq!(c("T07", "T07").verdict, DerivationVerdict::Consistent);
    }
}
