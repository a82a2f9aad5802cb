//! Commutative algebras given by structure constants.
//!
//! Basis changes follow one convention everywhere: a change is an invertible
//! matrix `P` whose rows are the new basis vectors, `f_i = Σ_j P_ij e_j`.
//! The transformed constants are
//! `c'_{ij}^k = Σ P_ia P_jb c_{ab}^l Q_lk` with `Q = P⁻¹`.

pub mod catalog;
pub mod format;

use num_traits::{One, Zero};

use crate::exact::matrix::{rank_of, span_basis};
use crate::exact::{Matrix, RatFunc, Rational, Ring};

pub use catalog::{catalog, catalog_entry, CatalogEntry, CatalogError, Family};
pub use format::{parse_algebra, serialize_algebra, FormatError};

/// Dense `n×n×n` structure constants over a ring, indexed `c[(i*n + j)*n + k]`.
#[derive(Clone, PartialEq)]
pub struct Table<R> {
    dim: usize,
    c: Vec<R>,
}

impl<R: Ring> Table<R> {
    pub fn zero(dim: usize) -> Self {
        Table {
            dim,
            c: vec![R::zero(); dim * dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> R) -> Self {
        let mut c = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    c.push(f(i, j, k));
                }
            }
        }
        Table { dim, c }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> impl Iterator<Item = &R> {
        self.c.iter()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &R {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: R) {
        let n = self.dim;
        self.c[(i * n + j) * n + k] = v;
    }

    /// Coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[R] {
        let n = self.dim;
        &self.c[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn mul(&self, x: &[R], y: &[R]) -> Vec<R> {
        let n = self.dim;
        let mut out = vec![R::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = xi.mul_ref(yj);
                for (o, c) in out.iter_mut().zip(self.basis_product(i, j)) {
                    if !c.is_zero() {
                        *o = o.add_ref(&s.mul_ref(c));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Table<S> {
        Table {
            dim: self.dim,
            c: self.c.iter().map(f).collect(),
        }
    }

    /// Constants in the basis given by the rows of `p`, where `q = p⁻¹`.
    pub fn transform(&self, p: &Matrix<R>, q: &Matrix<R>) -> Table<R> {
        let n = self.dim;
        assert!(p.rows() == n && p.cols() == n && q.rows() == n && q.cols() == n);
        let rows: Vec<Vec<R>> = p.to_rows();
        let mut out = Table::zero(n);
        for i in 0..n {
            for j in i..n {
                let v = self.mul(&rows[i], &rows[j]);
                for k in 0..n {
                    let mut acc = R::zero();
                    for (l, vl) in v.iter().enumerate() {
                        let qlk = q.get(l, k);
                        if !vl.is_zero() && !qlk.is_zero() {
                            acc = acc.add_ref(&vl.mul_ref(qlk));
                        }
                    }
                    if i != j {
                        out.set(j, i, k, acc.clone());
                    }
                    out.set(i, j, k, acc);
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..i).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Matrix of `y ↦ x y` acting on column vectors.
    pub fn left_mul(&self, x: &[R]) -> Matrix<R> {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            let mut ej = vec![R::zero(); n];
            ej[j] = R::one();
            for (k, v) in self.mul(x, &ej).into_iter().enumerate() {
                m.set(k, j, v);
            }
        }
        m
    }
}

impl<R: Ring> std::fmt::Debug for Table<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Table(dim={}, {:?})", self.dim, self.c)
    }
}

/// Structure constants over ℚ with basis names and an optional label.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebra {
    pub table: Table<Rational>,
    pub basis_names: Vec<String>,
    pub label: Option<String>,
}

/// Structure constants over ℚ(t).
pub type AlgebraOverT = Table<RatFunc>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("algebra is not commutative: e{}e{} != e{}e{}", .0 + 1, .1 + 1, .1 + 1, .0 + 1)]
    NotCommutative(usize, usize),
    #[error("algebra does not satisfy the Jordan identity")]
    NotJordan,
    #[error("basis change is singular")]
    SingularBasisChange,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// An invertible change of basis over ℚ; rows are the new basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisChange {
    matrix: Matrix<Rational>,
    inverse: Matrix<Rational>,
}

impl BasisChange {
    pub fn new(matrix: Matrix<Rational>) -> Result<Self, AlgebraError> {
        if !matrix.is_square() {
            return Err(AlgebraError::DimensionMismatch(matrix.rows(), matrix.cols()));
        }
        let inverse = matrix.inverse().ok_or(AlgebraError::SingularBasisChange)?;
        Ok(BasisChange { matrix, inverse })
    }

    pub fn identity(n: usize) -> Self {
        BasisChange::new(Matrix::identity(n)).unwrap()
    }

    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        BasisChange::new(Matrix::from_fn(n, n, |i, j| {
            if perm[i] == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        }))
        .expect("permutation matrices are invertible")
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.matrix
    }

    pub fn inverse(&self) -> BasisChange {
        BasisChange {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

/// A linearized Jordan identity that fails on basis elements
/// `(a, b, c; y)` with the given nonzero value.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanViolation {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub y: usize,
    pub value: Vec<Rational>,
}

impl Algebra {
    pub fn new(table: Table<Rational>, basis_names: Vec<String>, label: Option<String>) -> Self {
        assert_eq!(table.dim(), basis_names.len());
        Algebra {
            table,
            basis_names,
            label,
        }
    }

    pub fn zero(n: usize) -> Self {
        Algebra::new(Table::zero(n), default_names(n), None)
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rational {
        self.table.get(i, j, k)
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.table.mul(x, y)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        unit(self.dim(), i)
    }

    pub fn left_mul(&self, x: &[Rational]) -> Matrix<Rational> {
        self.table.left_mul(x)
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.table.is_zero()
    }

    pub fn is_commutative(&self) -> bool {
        self.table.is_commutative()
    }

    pub fn ensure_commutative(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..i {
                if self.table.basis_product(i, j) != self.table.basis_product(j, i) {
                    return Err(AlgebraError::NotCommutative(j, i));
                }
            }
        }
        Ok(())
    }

    /// Checks the Jordan identity through its full linearization in `x`:
    /// `Σ ((x_a x_b) y) x_c − (x_a x_b)(y x_c)` over the three choices of
    /// `c`, on all basis triples `a ≤ b ≤ c` and basis elements `y`.
    pub fn jordan_violation(&self) -> Result<Option<JordanViolation>, AlgebraError> {
        self.ensure_commutative()?;
        let n = self.dim();
        let e: Vec<Vec<Rational>> = (0..n).map(|i| unit(n, i)).collect();
        let products: Vec<Vec<Vec<Rational>>> = (0..n)
            .map(|i| (0..n).map(|j| self.table.basis_product(i, j).to_vec()).collect())
            .collect();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    for y in 0..n {
                        let value = self.linearized_jordan(&products, &e, [a, b, c], y);
                        if value.iter().any(|v| !v.is_zero()) {
                            return Ok(Some(JordanViolation { a, b, c, y, value }));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    fn linearized_jordan(
        &self,
        products: &[Vec<Vec<Rational>>],
        e: &[Vec<Rational>],
        idx: [usize; 3],
        y: usize,
    ) -> Vec<Rational> {
        let n = self.dim();
        let mut acc = vec![Rational::zero(); n];
        for pick in 0..3 {
            let c = idx[pick];
            let (a, b) = match pick {
                0 => (idx[1], idx[2]),
                1 => (idx[0], idx[2]),
                _ => (idx[0], idx[1]),
            };
            let ab = &products[a][b];
            let lhs = self.mul(&self.mul(ab, &e[y]), &e[c]);
            let rhs = self.mul(ab, &products[y][c]);
            for k in 0..n {
                acc[k] += &lhs[k] - &rhs[k];
            }
        }
        acc
    }

    pub fn is_jordan(&self) -> Result<bool, AlgebraError> {
        Ok(self.jordan_violation()?.is_none())
    }

    /// `(x²y)x − x²(yx)` for concrete vectors.
    pub fn jordan_defect(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let x2 = self.mul(x, x);
        let lhs = self.mul(&self.mul(&x2, y), x);
        let rhs = self.mul(&x2, &self.mul(y, x));
        lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect()
    }

    pub fn change_basis(&self, g: &BasisChange) -> Result<Algebra, AlgebraError> {
        if g.dim() != self.dim() {
            return Err(AlgebraError::DimensionMismatch(g.dim(), self.dim()));
        }
        Ok(Algebra {
            table: self.table.transform(&g.matrix, &g.inverse),
            basis_names: self.basis_names.clone(),
            label: None,
        })
    }

    pub fn direct_sum(&self, other: &Algebra) -> Algebra {
        let (n, m) = (self.dim(), other.dim());
        let table = Table::from_fn(n + m, |i, j, k| {
            if i < n && j < n && k < n {
                self.c(i, j, k).clone()
            } else if i >= n && j >= n && k >= n {
                other.c(i - n, j - n, k - n).clone()
            } else {
                Rational::zero()
            }
        });
        let mut names = self.basis_names.clone();
        for name in &other.basis_names {
            let mut candidate = name.clone();
            while names.contains(&candidate) {
                candidate.push('\'');
            }
            names.push(candidate);
        }
        Algebra::new(table, names, None)
    }

    /// Spans of `e_i e_j` restricted to subspaces `u` and `v`.
    pub fn product_space(&self, u: &[Vec<Rational>], v: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let mut prods = Vec::with_capacity(u.len() * v.len());
        for x in u {
            for y in v {
                prods.push(self.mul(x, y));
            }
        }
        span_basis(&prods, self.dim())
    }

    /// Dimensions of `A¹ ⊇ A² ⊇ …` with `Aᵏ = Σ_{i+j=k} Aⁱ Aʲ`, ending at the
    /// first zero power or at the first repeated dimension.
    pub fn power_dims(&self) -> Vec<usize> {
        let n = self.dim();
        let mut powers: Vec<Vec<Vec<Rational>>> = vec![Vec::new(), (0..n).map(|i| unit(n, i)).collect()];
        let mut dims = vec![n];
        if n == 0 {
            return dims;
        }
        for k in 2..=n + 1 {
            let mut gens = Vec::new();
            for i in 1..=k / 2 {
                let j = k - i;
                for x in &powers[i] {
                    for y in &powers[j] {
                        gens.push(self.mul(x, y));
                    }
                }
            }
            let basis = span_basis(&gens, n);
            let d = basis.len();
            let prev = *dims.last().unwrap();
            dims.push(d);
            powers.push(basis);
            if d == 0 || d == prev {
                break;
            }
        }
        dims
    }

    /// Nilpotency index: the least `k` with `Aᵏ = 0`.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let dims = self.power_dims();
        (*dims.last().unwrap() == 0).then(|| dims.len())
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_index().is_some()
    }

    /// `dim A²`.
    pub fn square_dim(&self) -> usize {
        let n = self.dim();
        let prods: Vec<Vec<Rational>> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .map(|(i, j)| self.table.basis_product(i, j).to_vec())
            .collect();
        rank_of(&prods, n)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn non_jordan_example_is_detected() {
        // e1^2 = e2, e1 e2 = e1, e2^2 = 0
        let mut t = Table::zero(2);
        t.set(0, 0, 1, int(1));
        t.set(0, 1, 0, int(1));
        t.set(1, 0, 0, int(1));
        let a = Algebra::new(t, default_names(2), None);
        assert!(a.is_commutative());
        assert!(!a.is_jordan().unwrap());
        let d = a.jordan_defect(&a.basis_vector(0), &a.basis_vector(0));
        assert_eq!(d, vec![int(0), int(1)]);
    }

    #[test]
    fn non_commutative_rejected() {
        let mut t = Table::zero(2);
        t.set(0, 1, 0, int(1));
        let a = Algebra::new(t, default_names(2), None);
        assert!(!a.is_commutative());
        assert!(a.is_jordan().is_err());
    }

    #[test]
    fn zero_algebra_powers() {
        let z = Algebra::zero(3);
        assert_eq!(z.power_dims(), vec![3, 0]);
        assert_eq!(z.nilpotency_index(), Some(2));
        assert!(z.is_jordan().unwrap());
    }
}
