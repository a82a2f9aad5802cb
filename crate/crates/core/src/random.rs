//! Seeded random rationals and matrices for property checks and generic
//! element choices. Everything is reproducible from the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::rational::rat;
use crate::exact::{Matrix, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ bound`.
pub fn small_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    let p = rng.random_range(-bound..=bound);
    let q = rng.random_range(1..=bound.max(1));
    rat(p, q)
}

pub fn small_int(rng: &mut impl Rng, bound: i64) -> Rational {
    rat(rng.random_range(-bound..=bound), 1)
}

pub fn vector(rng: &mut impl Rng, n: usize, bound: i64) -> Vec<Rational> {
    (0..n).map(|_| small_rational(rng, bound)).collect()
}

pub fn matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> Matrix<Rational> {
    Matrix::from_fn(rows, cols, |_, _| small_rational(rng, bound))
}

/// Random invertible matrix, by rejection.
pub fn invertible_matrix(rng: &mut impl Rng, n: usize, bound: i64) -> Matrix<Rational> {
    loop {
        let m = matrix(rng, n, n, bound);
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// Random invertible upper triangular matrix.
pub fn upper_triangular(rng: &mut impl Rng, n: usize, bound: i64) -> Matrix<Rational> {
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            loop {
                let r = small_rational(rng, bound);
                if r != rat(0, 1) {
                    return r;
                }
            }
        } else if i < j {
            small_rational(rng, bound)
        } else {
            rat(0, 1)
        }
    })
}
