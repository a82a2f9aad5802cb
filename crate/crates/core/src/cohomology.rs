//! Second Jordan cohomology `H²(J, J)`.
//!
//! A symmetric bilinear `h` is a cocycle when `μ + t·h` satisfies the Jordan
//! identity to first order in `t`:
//!
//! ```text
//! h(x²y, x) + h(x², y)x + (h(x, x)y)x − h(x², yx) − h(x, x)(yx) − x²h(y, x) = 0
//! ```
//!
//! The identity is cubic in `x`, so it is imposed through its full
//! linearization on basis elements. Coboundaries are `dμ(a, b) = μ(a)b +
//! aμ(b) − μ(ab)`.

use std::ops::{AddAssign, Mul, Neg};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{Algebra, Table};
use crate::exact::matrix::kernel_of_rows;
use crate::exact::rational::lcm_of_denominators;
use crate::exact::{EchelonBuilder, Matrix, Rational};

/// A symmetric bilinear map with components `h_{ij}^k = h_{ji}^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymBilinearMap {
    pub table: Table<Rational>,
}

impl SymBilinearMap {
    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_zero()
    }

    /// Coordinates in the unknown ordering of [`unknown_index`].
    pub fn to_coords(&self) -> Vec<Rational> {
        let n = self.dim();
        let mut v = vec![Rational::zero(); unknown_count(n)];
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    v[unknown_index(n, i, j, k)] = self.table.get(i, j, k).clone();
                }
            }
        }
        v
    }

    pub fn from_coords(n: usize, v: &[Rational]) -> Self {
        let table = Table::from_fn(n, |i, j, k| v[unknown_index(n, i.min(j), i.max(j), k)].clone());
        SymBilinearMap { table }
    }
}

pub fn unknown_count(n: usize) -> usize {
    n * n * (n + 1) / 2
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j);
    i * n - i * (i + 1) / 2 + j
}

/// Index of `h_{ij}^k` (`i ≤ j`) among the unknowns.
pub fn unknown_index(n: usize, i: usize, j: usize, k: usize) -> usize {
    pair_index(n, i, j) * n + k
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CohomologyReport {
    pub dim_z2: usize,
    pub dim_b2: usize,
    pub dim_h2: usize,
    pub rigid: bool,
    /// Coordinates of a basis of a complement of `B²` in `Z²`.
    #[serde(skip)]
    pub witness_basis: Vec<SymBilinearMap>,
}

/// Scalars the cocycle rows are assembled in.
trait Coeff: Clone + Zero + One + Neg<Output = Self> + AddAssign + for<'a> Mul<&'a Self, Output = Self> {}

impl<T> Coeff for T where T: Clone + Zero + One + Neg<Output = T> + AddAssign + for<'a> Mul<&'a T, Output = T> {}

/// Structure constants flattened as `c[(i*n + j)*n + k]`.
struct Consts<T> {
    n: usize,
    c: Vec<T>,
}

impl<T: Coeff> Consts<T> {
    fn of(a: &Algebra, f: impl Fn(&Rational) -> T) -> Self {
        Consts {
            n: a.dim(),
            c: a.table.entries().map(f).collect(),
        }
    }

    fn unit(&self, i: usize) -> Vec<T> {
        let mut v = vec![T::zero(); self.n];
        v[i] = T::one();
        v
    }

    fn mul(&self, x: &[T], y: &[T]) -> Vec<T> {
        let n = self.n;
        let mut out = vec![T::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let w = x[i].clone() * &y[j];
                for k in 0..n {
                    let c = &self.c[(i * n + j) * n + k];
                    if !c.is_zero() {
                        out[k] += w.clone() * c;
                    }
                }
            }
        }
        out
    }

    /// `v ↦ v·r` as `m[row][col]`; the algebra is commutative, so this is
    /// also left multiplication.
    fn mult_op(&self, r: &[T]) -> Vec<Vec<T>> {
        let n = self.n;
        let mut m = vec![vec![T::zero(); n]; n];
        for (col, row_v) in (0..n).map(|k| (k, self.mul(&self.unit(k), r))) {
            for (row, v) in row_v.into_iter().enumerate() {
                m[row][col] = v;
            }
        }
        m
    }
}

fn compose<T: Coeff>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = T::zero();
                    for k in 0..n {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            s += a[i][k].clone() * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

struct RowBlock<T> {
    n: usize,
    rows: Vec<Vec<T>>,
}

impl<T: Coeff> RowBlock<T> {
    fn new(n: usize) -> Self {
        RowBlock {
            n,
            rows: vec![vec![T::zero(); unknown_count(n)]; n],
        }
    }

    /// Adds `sign · L(h(p, q))` as linear forms in the unknowns.
    fn add_term(&mut self, negate: bool, l: Option<&[Vec<T>]>, p: &[T], q: &[T]) {
        let n = self.n;
        for i in 0..n {
            if p[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if q[j].is_zero() {
                    continue;
                }
                let w = p[i].clone() * &q[j];
                let w = if negate { -w } else { w };
                let pair = pair_index(n, i.min(j), i.max(j));
                for k in 0..n {
                    let col = pair * n + k;
                    match l {
                        None => self.rows[k][col] += w.clone(),
                        Some(l) => {
                            for m in 0..n {
                                let c = &l[m][k];
                                if !c.is_zero() {
                                    self.rows[m][col] += w.clone() * c;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Linear forms of the linearized cocycle identity at `(x_a, x_b, x_c; y)`.
fn cocycle_rows<T: Coeff>(a: &Consts<T>, idx: [usize; 3], y: usize) -> Vec<Vec<T>> {
    let n = a.n;
    let ey = a.unit(y);
    let mut block = RowBlock::new(n);
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for perm in PERMS {
        let x1 = a.unit(idx[perm[0]]);
        let x2 = a.unit(idx[perm[1]]);
        let x3 = a.unit(idx[perm[2]]);
        let x12 = a.mul(&x1, &x2);
        let x12y = a.mul(&x12, &ey);
        let yx3 = a.mul(&ey, &x3);
        let r_x3 = a.mult_op(&x3);
        let r_y = a.mult_op(&ey);
        let r_yx3 = a.mult_op(&yx3);
        let l_x12 = a.mult_op(&x12);
        block.add_term(false, None, &x12y, &x3);
        block.add_term(false, Some(&r_x3), &x12, &ey);
        block.add_term(false, Some(&compose(&r_x3, &r_y)), &x1, &x2);
        block.add_term(true, None, &x12, &yx3);
        block.add_term(true, Some(&r_yx3), &x1, &x2);
        block.add_term(true, Some(&l_x12), &ey, &x3);
    }
    block.rows
}

fn quads(n: usize) -> Vec<([usize; 3], usize)> {
    let mut quads = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                for y in 0..n {
                    quads.push(([i, j, k], y));
                }
            }
        }
    }
    quads
}

fn all_rows<T: Coeff + Send + Sync>(a: &Consts<T>) -> Vec<Vec<T>> {
    let quads = quads(a.n);
    let blocks: Vec<Vec<Vec<T>>> = {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            quads.par_iter().map(|(idx, y)| cocycle_rows(a, *idx, *y)).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            quads.iter().map(|(idx, y)| cocycle_rows(a, *idx, *y)).collect()
        }
    };
    blocks
        .into_iter()
        .flatten()
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Above this size the scaled constants are not trusted to machine integers.
const SMALL: i128 = 1_000_000_000_000;

fn cocycle_system(a: &Algebra) -> Vec<Vec<Rational>> {
    // every term is quadratic in the structure constants, so scaling them to
    // integers only rescales each row
    let d = lcm_of_denominators(a.table.entries());
    let scaled: Vec<BigInt> = a.table.entries().map(|c| c.numer() * (&d / c.denom())).collect();
    let small: Option<Vec<i128>> = scaled
        .iter()
        .map(|x| x.to_i128().filter(|v| v.abs() <= SMALL))
        .collect();
    match small {
        Some(c) => {
            let consts = Consts { n: a.dim(), c };
            all_rows(&consts)
                .into_iter()
                .map(|r| r.into_iter().map(|x| Rational::from_integer(x.into())).collect())
                .collect()
        }
        None => all_rows(&Consts::of(a, |c| c.clone())),
    }
}

/// Basis of the cocycle space `Z²`.
pub fn cocycle_space(a: &Algebra) -> Vec<SymBilinearMap> {
    let n = a.dim();
    kernel_of_rows(&cocycle_system(a), unknown_count(n))
        .into_iter()
        .map(|v| SymBilinearMap::from_coords(n, &v))
        .collect()
}

/// Evaluates every linearized cocycle equation on `h`.
pub fn is_cocycle(a: &Algebra, h: &SymBilinearMap) -> bool {
    let n = a.dim();
    let v = h.to_coords();
    let consts = Consts::of(a, |c| c.clone());
    for (idx, y) in quads(n) {
        for row in cocycle_rows(&consts, idx, y) {
            let s = row
                .iter()
                .zip(&v)
                .filter(|(r, _)| !r.is_zero())
                .fold(Rational::zero(), |acc, (r, x)| acc + r * x);
            if !s.is_zero() {
                return false;
            }
        }
    }
    true
}

/// `dμ(a, b) = μ(a)b + aμ(b) − μ(ab)` for `μ` acting on column vectors.
pub fn coboundary_of(a: &Algebra, mu: &Matrix<Rational>) -> SymBilinearMap {
    let n = a.dim();
    let images: Vec<Vec<Rational>> = (0..n).map(|i| mu.column(i)).collect();
    let mut table = Table::zero(n);
    for i in 0..n {
        for j in 0..n {
            let ei = a.basis_vector(i);
            let ej = a.basis_vector(j);
            let t1 = a.mul(&images[i], &ej);
            let t2 = a.mul(&ei, &images[j]);
            let t3 = mu.mul_vec(&a.mul(&ei, &ej));
            for k in 0..n {
                table.set(i, j, k, &t1[k] + &t2[k] - &t3[k]);
            }
        }
    }
    SymBilinearMap { table }
}

fn coboundary_builder(a: &Algebra) -> EchelonBuilder<Rational> {
    let n = a.dim();
    let mut eb = EchelonBuilder::new(unknown_count(n));
    for s in 0..n {
        for t in 0..n {
            let mut mu = Matrix::zeros(n, n);
            mu.set(s, t, Rational::from_integer(1.into()));
            eb.push(&coboundary_of(a, &mu).to_coords());
        }
    }
    eb
}

pub fn h2(a: &Algebra) -> CohomologyReport {
    let z2 = cocycle_space(a);
    let mut eb = coboundary_builder(a);
    let dim_b2 = eb.rank();
    let witness_basis: Vec<SymBilinearMap> = z2
        .iter()
        .filter(|h| eb.push(&h.to_coords()))
        .cloned()
        .collect();
    let dim_z2 = z2.len();
    let dim_h2 = dim_z2.saturating_sub(dim_b2);
    CohomologyReport {
        dim_z2,
        dim_b2,
        dim_h2,
        rigid: dim_h2 == 0,
        witness_basis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::exact::rational::int;

    #[test]
    fn zero_algebra_cocycles_are_everything() {
        for n in [2usize, 3] {
            let r = h2(&Algebra::zero(n));
            assert_eq!(r.dim_z2, n * n * (n + 1) / 2);
            assert_eq!(r.dim_b2, 0);
            assert_eq!(r.dim_h2, n * n * (n + 1) / 2);
        }
    }

    #[test]
    fn coboundaries() {
        let b3 = catalog("B3").unwrap();
        let mu = Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), int(2)]]);
        assert!(coboundary_of(&b3, &mu).is_zero());
        let t13 = catalog("T13").unwrap();
        let id = Matrix::identity(3);
        let d = coboundary_of(&t13, &id);
        assert_eq!(d.table, t13.table);
        assert!(is_cocycle(&t13, &d));
    }

    #[test]
    fn rigid_examples() {
        assert_eq!(h2(&catalog("B4").unwrap()).dim_h2, 0);
        assert_eq!(h2(&catalog("J2").unwrap()).dim_h2, 0);
        assert_eq!(h2(&catalog("J4").unwrap()).dim_h2, 0);
    }
}
