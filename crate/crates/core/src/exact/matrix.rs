//! Dense exact matrices and linear-system solving.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero as _;

use super::rational::{lcm_of_denominators, Rational};
use super::{Field, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        Self::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = R::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                acc = acc.add_ref(&a.mul_ref(rhs.get(k, j)));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(R::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)))
            })
            .collect()
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Inverse of a unit upper-triangular matrix by back substitution; works
    /// over any ring since no division is needed.
    pub fn unitriangular_upper_inverse(&self) -> Matrix<R> {
        assert!(self.is_square());
        let n = self.rows;
        for i in 0..n {
            assert!(self.get(i, i).is_one(), "diagonal must be 1");
            for j in 0..i {
                assert!(self.get(i, j).is_zero(), "matrix is not upper triangular");
            }
        }
        // Solve U X = I column by column from the bottom row up.
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            for i in (0..n).rev() {
                let mut acc = if i == col { R::one() } else { R::zero() };
                for k in i + 1..n {
                    let u = self.get(i, k);
                    if !u.is_zero() {
                        acc = acc.sub_ref(&u.mul_ref(inv.get(k, col)));
                    }
                }
                inv.set(i, col, acc);
            }
        }
        inv
    }
}

impl<F: Field> Matrix<F> {
    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let v = m.get(r, j).mul_ref(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j).sub_ref(&f.mul_ref(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots, self.cols)
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r.get(i, j + n).clone()))
    }

    /// Determinant by Bareiss fraction-free elimination. Every division in
    /// the recurrence is exact, so over an integral domain embedded in `F`
    /// intermediate entries stay in that domain.
    pub fn determinant(&self) -> Result<F, NotSquare> {
        if !self.is_square() {
            return Err(NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(bareiss(self.clone()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Matrix<Rational> {
    /// Determinant with denominators cleared first, so the Bareiss recurrence
    /// runs on integers and coefficient growth stays polynomial.
    pub fn determinant_fraction_free(&self) -> Result<Rational, NotSquare> {
        if !self.is_square() {
            return Err(NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut scale = Rational::from_integer(BigInt::from(1));
        let mut m = self.clone();
        for i in 0..m.rows {
            let l = Rational::from_integer(lcm_of_denominators(m.row(i)));
            for j in 0..m.cols {
                let v = m.get(i, j) * &l;
                m.set(i, j, v);
            }
            scale *= l;
        }
        Ok(bareiss(m) / scale)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("determinant of a non-square {rows}x{cols} matrix")]
pub struct NotSquare {
    pub rows: usize,
    pub cols: usize,
}

fn bareiss<F: Field>(mut m: Matrix<F>) -> F {
    let n = m.rows;
    if n == 0 {
        return F::one();
    }
    let mut sign_negative = false;
    let mut prev = F::one();
    for k in 0..n - 1 {
        if m.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                return F::zero();
            };
            m.swap_rows(k, p);
            sign_negative = !sign_negative;
        }
        let pivot = m.get(k, k).clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m
                    .get(i, j)
                    .mul_ref(&pivot)
                    .sub_ref(&m.get(i, k).mul_ref(m.get(k, j)));
                m.set(i, j, num.div_ref(&prev));
            }
            m.set(i, k, F::zero());
        }
        prev = pivot;
    }
    let d = m.get(n - 1, n - 1).clone();
    if sign_negative {
        d.neg_ref()
    } else {
        d
    }
}

fn kernel_from_rref<F: Field>(r: &Matrix<F>, pivots: &[usize], cols: usize) -> Vec<Vec<F>> {
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = r.get(row, f).neg_ref();
            }
            v
        })
        .collect()
}

impl<R: Ring + fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("data", &self.data)
            .finish()
    }
}

/// Incremental row echelon form for large sparse systems that are generated
/// one equation at a time. Rows are reduced on insertion, so memory stays
/// bounded by the rank.
#[derive(Clone, Debug)]
pub struct EchelonBuilder<F> {
    cols: usize,
    // (pivot column, row normalised to 1 at the pivot)
    rows: Vec<(usize, Vec<F>)>,
    pivot_of_col: Vec<Option<usize>>,
}

impl<F: Field> EchelonBuilder<F> {
    pub fn new(cols: usize) -> Self {
        EchelonBuilder {
            cols,
            rows: Vec::new(),
            pivot_of_col: vec![None; cols],
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the stored rows; the remainder is zero iff the
    /// row lies in their span.
    pub fn reduce(&self, row: &[F]) -> Vec<F> {
        assert_eq!(row.len(), self.cols);
        let mut v = row.to_vec();
        for c in 0..self.cols {
            if v[c].is_zero() {
                continue;
            }
            if let Some(idx) = self.pivot_of_col[c] {
                let f = v[c].clone();
                let pr = &self.rows[idx].1;
                for j in c..self.cols {
                    if !pr[j].is_zero() {
                        v[j] = v[j].sub_ref(&f.mul_ref(&pr[j]));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, row: &[F]) -> bool {
        self.reduce(row).iter().all(|x| x.is_zero())
    }

    /// Adds a row; returns true if it increased the rank.
    pub fn push(&mut self, row: &[F]) -> bool {
        let v = self.reduce(row);
        let Some(c) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[c].inv();
        let v: Vec<F> = v.iter().map(|x| x.mul_ref(&inv)).collect();
        self.pivot_of_col[c] = Some(self.rows.len());
        self.rows.push((c, v));
        true
    }

    /// Basis of `{x : r·x = 0 for every stored row r}`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let rows: Vec<Vec<F>> = self.rows.iter().map(|(_, r)| r.clone()).collect();
        if rows.is_empty() {
            return (0..self.cols)
                .map(|i| {
                    let mut v = vec![F::zero(); self.cols];
                    v[i] = F::one();
                    v
                })
                .collect();
        }
        Matrix::from_rows(rows).kernel()
    }

    /// The stored rows, one per pivot, ordered by pivot column.
    pub fn basis(&self) -> Vec<Vec<F>> {
        let mut rows = self.rows.clone();
        rows.sort_by_key(|(c, _)| *c);
        rows.into_iter().map(|(_, r)| r).collect()
    }
}

/// Row-space basis of a list of vectors of common length `dim`.
pub fn span_basis<F: Field>(vectors: &[Vec<F>], dim: usize) -> Vec<Vec<F>> {
    let mut b = EchelonBuilder::new(dim);
    for v in vectors {
        b.push(v);
    }
    b.basis()
}

pub fn rank_of<F: Field>(vectors: &[Vec<F>], dim: usize) -> usize {
    let mut b = EchelonBuilder::new(dim);
    vectors.iter().filter(|v| b.push(v)).count()
}

/// True iff every vector of `sub` lies in the span of `sup`.
pub fn span_contains<F: Field>(sup: &[Vec<F>], sub: &[Vec<F>], dim: usize) -> bool {
    let mut b = EchelonBuilder::new(dim);
    for v in sup {
        b.push(v);
    }
    sub.iter().all(|v| b.contains(v))
}

const PRIME: u64 = 2_147_483_647;

fn mod_prime(x: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    let r = ((x % &p) + &p) % &p;
    r.try_into().expect("residue fits")
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    acc
}

/// Indices of rows that stay independent modulo a large prime, chosen
/// greedily in order. Such rows are independent over the rationals too; a
/// row skipped here may still be independent over the rationals.
pub fn independent_rows_mod_p(rows: &[Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let l = lcm_of_denominators(row.iter());
        let mut v: Vec<u64> = row
            .iter()
            .map(|x| mod_prime(&(x.numer() * (&l / x.denom()))))
            .collect();
        for c in 0..cols {
            if v[c] == 0 {
                continue;
            }
            if let Some(b) = pivot_of_col[c] {
                let f = v[c];
                let pr = &basis[b].1;
                for j in c..cols {
                    v[j] = (v[j] + PRIME - f * pr[j] % PRIME) % PRIME;
                }
            }
        }
        let Some(c) = v.iter().position(|&x| x != 0) else {
            continue;
        };
        let inv = pow_mod(v[c], PRIME - 2);
        let v: Vec<u64> = v.iter().map(|x| x * inv % PRIME).collect();
        pivot_of_col[c] = Some(basis.len());
        basis.push((c, v));
        chosen.push(idx);
    }
    chosen
}

/// Basis of `{x : r·x = 0 for every row r}`. A modular pass picks the rows
/// to eliminate; the result is checked against every row and recomputed from
/// all of them if the check fails.
pub fn kernel_of_rows(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let chosen = independent_rows_mod_p(rows, cols);
    let kernel = if chosen.is_empty() {
        (0..cols)
            .map(|i| {
                let mut v = vec![Rational::zero(); cols];
                v[i] = Rational::from_integer(1.into());
                v
            })
            .collect()
    } else {
        Matrix::from_rows(chosen.iter().map(|&i| rows[i].clone()).collect()).kernel()
    };
    let annihilates = |r: &Vec<Rational>| {
        kernel.iter().all(|k| {
            r.iter()
                .zip(k)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                .is_zero()
        })
    };
    if rows.iter().all(annihilates) {
        kernel
    } else {
        Matrix::from_rows(rows.to_vec()).kernel()
    }
}

pub fn is_zero_rational_vec(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;
    use crate::exact::RatFunc;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::<Rational>::identity(2).kernel().is_empty());
        assert_eq!(Matrix::<Rational>::zeros(2, 2).kernel().len(), 2);
        let k = m(&[&[1, 1], &[2, 2]]).kernel();
        assert_eq!(k, vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(Matrix::<Rational>::identity(3).determinant().unwrap(), int(1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant().unwrap(), int(0));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant_fraction_free().unwrap(), int(-1));
        assert!(m(&[&[1, 2]]).determinant().is_err());
    }

    #[test]
    fn witness_matrix_determinant_is_minus_t() {
        // rows (1,0,0), (0,0,1), (0,t,0) in the basis (e1, e2, n1)
        let one = <RatFunc as num_traits::One>::one();
        let zero = RatFunc::zero();
        let t = RatFunc::t();
        let mat = Matrix::from_rows(vec![
            vec![one.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), one.clone()],
            vec![zero.clone(), t.clone(), zero.clone()],
        ]);
        assert_eq!(mat.determinant().unwrap(), t.neg_ref());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn unitriangular_inverse() {
        let u = m(&[&[1, 2, 3], &[0, 1, 4], &[0, 0, 1]]);
        assert_eq!(u.mul(&u.unitriangular_upper_inverse()), Matrix::identity(3));
    }

    #[test]
    fn echelon_builder_matches_dense_kernel() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let mut b = EchelonBuilder::new(4);
        for i in 0..3 {
            b.push(a.row(i));
        }
        assert_eq!(b.rank(), 2);
        for k in b.kernel() {
            assert!(a.mul_vec(&k).iter().all(|x| x.is_zero()));
        }
        assert_eq!(b.kernel().len(), 2);
    }
}
