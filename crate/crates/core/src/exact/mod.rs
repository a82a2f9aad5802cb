//! Exact arithmetic kernel.
//!
//! Everything in the crate is computed over ℚ: big rationals, univariate
//! polynomials and rational functions in a single parameter `t`, sparse
//! multivariate polynomials, dense exact matrices and a small Buchberger
//! implementation used to decide emptiness of polynomial systems over ℂ.

pub mod expr;
pub mod groebner;
pub mod matrix;
pub mod multipoly;
pub mod ratfunc;
pub mod rational;
pub mod unipoly;

pub use groebner::{
    groebner_basis, groebner_emptiness, Emptiness, GroebnerBasis, GroebnerError, MonomialOrder,
};
pub use matrix::{EchelonBuilder, Matrix};
pub use multipoly::MultiPoly;
pub use ratfunc::{Limit, RatFunc};
pub use rational::{parse_rational, Rational};
pub use unipoly::UniPoly;

use std::fmt::Debug;

/// A commutative ring with exact equality.
///
/// Methods take references so that big-number types are not cloned on every
/// operation.
pub trait Ring:
    Clone + PartialEq + Debug + Send + Sync + num_traits::Zero + num_traits::One + 'static
{
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;

    fn from_int(i: i64) -> Self {
        Self::from_rational(&Rational::from_integer(i.into()))
    }
}

/// Owned `+` and `*` forwarding to the by-reference ring operations, which
/// `num_traits::{Zero, One}` require.
macro_rules! owned_ring_ops {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                $crate::exact::Ring::add_ref(&self, &rhs)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                $crate::exact::Ring::mul_ref(&self, &rhs)
            }
        }
    };
}
pub(crate) use owned_ring_ops;

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Panics on a zero divisor; callers check `is_zero` first.
    fn div_ref(&self, rhs: &Self) -> Self;

    fn inv(&self) -> Self {
        Self::one().div_ref(self)
    }
}
