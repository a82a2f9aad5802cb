//! Orbit exclusion through Bruhat cells.
//!
//! Every invertible `g` factors as `b·w·u` with `b` upper triangular, `w` a
//! permutation and `u` in the unipotent group `U_w`. Transforming by `g` is
//! transforming by `w·u` and then by `b`, so a Borel-stable spec meets the
//! orbit of `B` iff some `w·u` puts `B` into it. Each cell is a polynomial
//! system in the free entries of `u`.

use serde::{Deserialize, Serialize};

use super::spec::ClosedSetSpec;
use crate::algebra::Algebra;
use crate::exact::groebner::{groebner_basis, MonomialOrder};
use crate::exact::{Matrix, MultiPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruhatCell {
    /// `permutation[i]` is the image of `i`; row `i` of the permutation
    /// matrix is `e_{permutation[i]}`.
    pub permutation: Vec<usize>,
    /// Free positions `(i, j)`, `i < j`, of the unipotent factor.
    pub parameters: Vec<(usize, usize)>,
}

impl BruhatCell {
    pub fn new(permutation: Vec<usize>) -> Self {
        let n = permutation.len();
        let mut inv = vec![0; n];
        for (i, &p) in permutation.iter().enumerate() {
            inv[p] = i;
        }
        let parameters = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| inv[i] > inv[j])
            .collect();
        BruhatCell {
            permutation,
            parameters,
        }
    }

    pub fn dim(&self) -> usize {
        self.parameters.len()
    }

    pub fn size(&self) -> usize {
        self.permutation.len()
    }

    pub fn inversions(&self) -> usize {
        let p = &self.permutation;
        (0..p.len())
            .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count()
    }

    pub fn parameter_names(&self) -> Vec<String> {
        self.parameters.iter().map(|(i, j)| format!("u{}{}", i + 1, j + 1)).collect()
    }

    pub fn permutation_matrix<R: crate::exact::Ring>(&self) -> Matrix<R> {
        let n = self.size();
        Matrix::from_fn(n, n, |i, j| if self.permutation[i] == j { R::one() } else { R::zero() })
    }

    fn unipotent(&self) -> Matrix<MultiPoly> {
        let n = self.size();
        let m = self.dim();
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                MultiPoly::one(m)
            } else if let Some(v) = self.parameters.iter().position(|&p| p == (i, j)) {
                MultiPoly::var(m, v)
            } else {
                MultiPoly::zero(m)
            }
        })
    }

    /// The generic element `w·u` and its inverse `u⁻¹·w⁻¹`.
    pub fn matrices(&self) -> (Matrix<MultiPoly>, Matrix<MultiPoly>) {
        let w: Matrix<MultiPoly> = self.permutation_matrix::<MultiPoly>().map(|x| lift(x, self.dim()));
        let u = self.unipotent();
        let p = w.mul(&u);
        let q = u.unitriangular_upper_inverse().mul(&w.transpose());
        (p, q)
    }

    /// `w·u` at a point of the cell.
    pub fn evaluate(&self, point: &[Rational]) -> Matrix<Rational> {
        self.matrices().0.map(|x| x.eval(point))
    }
}

fn lift(x: &MultiPoly, nvars: usize) -> MultiPoly {
    match x.as_constant() {
        Some(c) => MultiPoly::constant(nvars, c),
        None => x.clone(),
    }
}

/// All `n!` cells, permutations in lexicographic order.
pub fn bruhat_cells(n: usize) -> Vec<BruhatCell> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        out.push(BruhatCell::new(perm.clone()));
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellVerdict {
    EmptyOverC,
    NonemptyOverC,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExclusionVerdict {
    Excluded,
    NotExcluded,
    Undecided,
}

/// Audit record of one cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellTranscript {
    /// 1-based images.
    pub permutation: Vec<usize>,
    pub parameters: Vec<String>,
    pub generators: Vec<String>,
    pub reduced_basis: Vec<String>,
    pub verdict: CellVerdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExclusionReport {
    pub verdict: ExclusionVerdict,
    pub cells: Vec<CellTranscript>,
}

/// The constrained coordinates of `B` transformed by the generic element
/// of the cell.
pub fn cell_generators(spec: &ClosedSetSpec, b: &Algebra, cell: &BruhatCell) -> Vec<MultiPoly> {
    let m = cell.dim();
    let (p, q) = cell.matrices();
    let table = b.table.map(|c| MultiPoly::constant(m, c.clone())).transform(&p, &q);
    spec.vanishing()
        .iter()
        .map(|&(i, j, k)| table.get(i, j, k).clone())
        .filter(|g| !g.is_zero())
        .collect()
}

fn render(polys: &[MultiPoly], names: &[String]) -> Vec<String> {
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    polys.iter().map(|p| p.to_string_with(&refs)).collect()
}

pub fn decide_cell(spec: &ClosedSetSpec, b: &Algebra, cell: &BruhatCell, budget: u64) -> CellTranscript {
    let names = cell.parameter_names();
    let gens = cell_generators(spec, b, cell);
    let (verdict, reduced) = if gens.is_empty() {
        (CellVerdict::NonemptyOverC, Vec::new())
    } else {
        match groebner_basis(&gens, MonomialOrder::GRevLex, budget) {
            Ok(gb) if gb.is_unit_ideal() => (CellVerdict::EmptyOverC, gb.polys),
            Ok(gb) => (CellVerdict::NonemptyOverC, gb.polys),
            Err(_) => (CellVerdict::Undecided, Vec::new()),
        }
    };
    CellTranscript {
        permutation: cell.permutation.iter().map(|p| p + 1).collect(),
        parameters: names.clone(),
        generators: render(&gens, &names),
        reduced_basis: render(&reduced, &names),
        verdict,
    }
}

pub fn combine(cells: &[CellTranscript]) -> ExclusionVerdict {
    if cells.iter().any(|c| c.verdict == CellVerdict::NonemptyOverC) {
        ExclusionVerdict::NotExcluded
    } else if cells.iter().all(|c| c.verdict == CellVerdict::EmptyOverC) {
        ExclusionVerdict::Excluded
    } else {
        ExclusionVerdict::Undecided
    }
}

/// Decides whether some change of basis puts `B` into the spec. Only
/// meaningful for Borel-stable specs.
pub fn orbit_exclusion(spec: &ClosedSetSpec, b: &Algebra, budget: u64) -> ExclusionReport {
    assert_eq!(spec.dim(), b.dim(), "spec and algebra dimensions differ");
    let cells = bruhat_cells(b.dim());
    let transcripts: Vec<CellTranscript> = {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            cells.par_iter().map(|c| decide_cell(spec, b, c, budget)).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            cells.iter().map(|c| decide_cell(spec, b, c, budget)).collect()
        }
    };
    ExclusionReport {
        verdict: combine(&transcripts),
        cells: transcripts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog, BasisChange};
    use crate::exact::groebner::DEFAULT_BUDGET;
    use crate::exact::rational::int;
    use crate::random;

    #[test]
    fn cells_have_inversion_many_parameters() {
        for n in 1..=4 {
            let cells = bruhat_cells(n);
            assert_eq!(cells.len(), (1..=n).product::<usize>());
            for c in &cells {
                assert_eq!(c.dim(), c.inversions());
            }
            assert_eq!(cells.iter().map(BruhatCell::dim).max(), Some(n * (n - 1) / 2));
        }
    }

    /// Row reduction from the bottom with upper triangular operations
    /// finds the cell of a random matrix: `g = b·w·u`.
    #[test]
    fn random_matrices_lie_in_some_cell() {
        let mut rng = random::rng(11);
        for _ in 0..30 {
            let g = random::invertible_matrix(&mut rng, 3, 4);
            let hit = bruhat_cells(3).into_iter().any(|cell| {
                // b = g·(w·u)⁻¹ must be upper triangular for some u; try
                // solving for u from the lower part via Gröbner elimination.
                let (_, q) = cell.matrices();
                let m = cell.dim();
                let gq = g.map(|x| MultiPoly::constant(m, x.clone())).mul(&q);
                let eqs: Vec<MultiPoly> = (0..3)
                    .flat_map(|i| (0..i).map(move |j| (i, j)))
                    .map(|(i, j)| gq.get(i, j).clone())
                    .filter(|p| !p.is_zero())
                    .collect();
                eqs.is_empty()
                    || !groebner_basis(&eqs, MonomialOrder::GRevLex, DEFAULT_BUDGET)
                        .unwrap()
                        .is_unit_ideal()
            });
            assert!(hit);
        }
    }

    #[test]
    fn evaluation_matches_the_symbolic_inverse() {
        let cell = BruhatCell::new(vec![2, 0, 1]);
        let point = vec![int(2), int(-3)];
        let p = cell.evaluate(&point);
        let (_, q) = cell.matrices();
        let q = q.map(|x| x.eval(&point));
        assert_eq!(p.mul(&q), Matrix::identity(3));
        assert!(BasisChange::new(p).is_ok());
        assert_eq!(cell.dim(), 2);
    }

    #[test]
    fn zero_algebra_is_never_excluded() {
        let s = ClosedSetSpec::parse(3, &[[1, 1, 2]], &["S1*S3 + S2^2 ⊆ S3", "S2*S3 = 0"]).unwrap();
        let r = orbit_exclusion(&s, &Algebra::zero(3), DEFAULT_BUDGET);
        assert_eq!(r.verdict, ExclusionVerdict::NotExcluded);
        let r = orbit_exclusion(&s, &catalog("T17").unwrap(), DEFAULT_BUDGET);
        assert_eq!(r.verdict, ExclusionVerdict::Excluded);
        assert_eq!(r.cells.len(), 6);
    }
}
