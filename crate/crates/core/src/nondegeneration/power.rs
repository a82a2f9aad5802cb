//! Power rank: the generic rank of `(x, x², …, xⁿ)` with `x^{k+1} = x·x^k`.
//!
//! For each `r` the set of algebras whose power matrix has rank `≤ r` at
//! every `x` is closed and invariant under change of basis, so the generic
//! power rank cannot increase along a degeneration.

use num_traits::Zero;
use serde::Serialize;

use super::NondegenerationError;
use crate::algebra::Algebra;
use crate::exact::{Matrix, MultiPoly, Rational};
use crate::random;

/// Above this dimension the minor expansion gets too large.
pub const MAX_DIM: usize = 5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerRank {
    pub rank: usize,
    /// A point where the rank is attained.
    #[serde(serialize_with = "crate::nondegeneration::format::ser_vector")]
    pub point: Vec<Rational>,
    /// Number of `(rank+1)`-minors checked to vanish identically.
    pub vanishing_minors: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PowerVerdict {
    Obstructed,
    NotObstructed,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerRankReport {
    pub verdict: PowerVerdict,
    pub source: PowerRank,
    pub target: PowerRank,
}

/// Rows `x, x², …, xⁿ` for a generic `x`.
pub fn power_matrix(a: &Algebra) -> Matrix<MultiPoly> {
    let n = a.dim();
    let table = a.table.map(|c| MultiPoly::constant(n, c.clone()));
    let x: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(n, i)).collect();
    let mut rows = vec![x.clone()];
    for _ in 1..n {
        let next = table.mul(&x, rows.last().unwrap());
        rows.push(next);
    }
    Matrix::from_rows(rows)
}

fn power_matrix_at(a: &Algebra, x: &[Rational]) -> Matrix<Rational> {
    let mut rows = vec![x.to_vec()];
    for _ in 1..a.dim() {
        let next = a.mul(x, rows.last().unwrap());
        rows.push(next);
    }
    Matrix::from_rows(rows)
}

fn det_laplace(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let k = m.len();
    if k == 1 {
        return m[0][0].clone();
    }
    let nv = m[0][0].nvars();
    let mut acc = MultiPoly::zero(nv);
    for c in 0..k {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][c] * &det_laplace(&minor);
        acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// A nonzero `k`-minor, if any.
fn nonzero_minor(m: &Matrix<MultiPoly>, k: usize) -> Option<MultiPoly> {
    let n = m.rows();
    for rows in subsets(n, k) {
        for cols in subsets(n, k) {
            let sub: Vec<Vec<MultiPoly>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| m.get(i, j).clone()).collect())
                .collect();
            let d = det_laplace(&sub);
            if !d.is_zero() {
                return Some(d);
            }
        }
    }
    None
}

fn point_where_nonzero(p: &MultiPoly, n: usize) -> Vec<Rational> {
    let mut rng = random::rng(5);
    for bound in 1.. {
        for _ in 0..50 {
            let x: Vec<Rational> = (0..n).map(|_| random::small_int(&mut rng, bound)).collect();
            if !p.eval(&x).is_zero() {
                return x;
            }
        }
    }
    unreachable!()
}

/// Exact generic power rank: a point attaining rank `r` and the identical
/// vanishing of every `(r+1)`-minor.
pub fn power_rank(a: &Algebra) -> Result<PowerRank, NondegenerationError> {
    let n = a.dim();
    if n > MAX_DIM {
        return Err(NondegenerationError::TooLarge(n, MAX_DIM));
    }
    let m = power_matrix(a);
    let mut point = vec![Rational::zero(); n];
    let mut rank = 0;
    loop {
        if rank == n {
            return Ok(PowerRank {
                rank,
                point,
                vanishing_minors: 0,
            });
        }
        match nonzero_minor(&m, rank + 1) {
            Some(d) => {
                point = point_where_nonzero(&d, n);
                rank = power_matrix_at(a, &point).rank();
            }
            None => {
                let count = subsets(n, rank + 1).len().pow(2);
                return Ok(PowerRank {
                    rank,
                    point,
                    vanishing_minors: count,
                });
            }
        }
    }
}

pub fn power_rank_obstruction(a: &Algebra, b: &Algebra) -> Result<PowerRankReport, NondegenerationError> {
    if a.dim() != b.dim() {
        return Err(NondegenerationError::DimensionMismatch(a.dim(), b.dim()));
    }
    let source = power_rank(a)?;
    let target = power_rank(b)?;
    Ok(PowerRankReport {
        verdict: if target.rank > source.rank {
            PowerVerdict::Obstructed
        } else {
            PowerVerdict::NotObstructed
        },
        source,
        target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    fn rank(l: &str) -> usize {
        power_rank(&catalog(l).unwrap()).unwrap().rank
    }

    #[test]
    fn ranks_of_small_algebras() {
        assert_eq!(power_rank(&Algebra::zero(3)).unwrap().rank, 1);
        assert_eq!(rank("T17"), 3);
        assert_eq!(rank("T01"), 3);
        for l in ["T02", "T04", "T05", "T10", "T13"] {
            assert_eq!(rank(l), 2, "{l}");
        }
        assert_eq!(rank("T07"), 3);
        assert_eq!(rank("B3"), 2);
    }

    #[test]
    fn point_attains_the_rank() {
        let a = catalog("T17").unwrap();
        let r = power_rank(&a).unwrap();
        assert_eq!(power_matrix_at(&a, &r.point).rank(), 3);
    }

    #[test]
    fn obstruction() {
        let t04 = catalog("T04").unwrap();
        let t17 = catalog("T17").unwrap();
        assert_eq!(power_rank_obstruction(&t04, &t17).unwrap().verdict, PowerVerdict::Obstructed);
        assert_eq!(power_rank_obstruction(&t17, &t04).unwrap().verdict, PowerVerdict::NotObstructed);
    }
}
