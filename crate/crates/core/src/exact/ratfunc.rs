//! Rational functions in `t` over ℚ, kept in lowest terms with a monic
//! denominator so that structural equality is mathematical equality.

use std::fmt;

use num_traits::{One, Zero};

use super::rational::Rational;
use super::unipoly::UniPoly;
use super::{Field, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    numer: UniPoly,
    denom: UniPoly,
}

/// Value of a rational function at `t = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Limit {
    Finite(Rational),
    Pole,
}

impl RatFunc {
    /// Builds `numer / denom` in reduced form. `None` if `denom` is zero.
    pub fn new(numer: UniPoly, denom: UniPoly) -> Option<Self> {
        if denom.is_zero() {
            return None;
        }
        if numer.is_zero() {
            return Some(RatFunc::zero());
        }
        let g = numer.gcd(&denom);
        let (mut n, _) = numer.div_rem(&g);
        let (mut d, _) = denom.div_rem(&g);
        let lc = d.leading();
        if !lc.is_one() {
            let inv = lc.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Some(RatFunc { numer: n, denom: d })
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc {
            numer: p,
            denom: UniPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn t() -> Self {
        Self::from_poly(UniPoly::t())
    }

    pub fn numer(&self) -> &UniPoly {
        &self.numer
    }

    pub fn denom(&self) -> &UniPoly {
        &self.denom
    }

    pub fn is_polynomial(&self) -> bool {
        self.denom.is_constant()
    }

    /// `Some(c)` if this is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.numer.is_constant() && self.denom.is_constant()).then(|| self.numer.coeff(0))
    }

    /// Value at `t = 0`, or `Pole`. Any common power of `t` has already been
    /// cancelled by the reduced-form invariant.
    pub fn limit_at_zero(&self) -> Limit {
        let d0 = self.denom.coeff(0);
        if d0.is_zero() {
            Limit::Pole
        } else {
            Limit::Finite(self.numer.coeff(0) / d0)
        }
    }

    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let d = self.denom.eval(t);
        (!d.is_zero()).then(|| self.numer.eval(t) / d)
    }

    pub fn pow(&self, e: i32) -> Option<Self> {
        if e >= 0 {
            Some(RatFunc {
                numer: self.numer.pow(e as u32),
                denom: self.denom.pow(e as u32),
            })
        } else if self.is_zero() {
            None
        } else {
            RatFunc::new(self.denom.pow((-e) as u32), self.numer.pow((-e) as u32))
        }
    }

    pub fn to_string_in(&self, var: &str) -> String {
        let n = self.numer.to_string_in(var);
        if self.denom.is_one() {
            return n;
        }
        let wrap = |s: String, p: &UniPoly| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!(
            "{}/{}",
            wrap(n, &self.numer),
            wrap(self.denom.to_string_in(var), &self.denom)
        )
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(UniPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::from_poly(UniPoly::one())
    }
}

super::owned_ring_ops!(RatFunc);

impl Ring for RatFunc {
    fn add_ref(&self, rhs: &Self) -> Self {
        if self.denom == rhs.denom {
            return RatFunc::new(&self.numer + &rhs.numer, self.denom.clone()).unwrap();
        }
        RatFunc::new(
            &(&self.numer * &rhs.denom) + &(&rhs.numer * &self.denom),
            &self.denom * &rhs.denom,
        )
        .unwrap()
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.numer * &rhs.numer, &self.denom * &rhs.denom).unwrap()
    }
    fn neg_ref(&self) -> Self {
        RatFunc {
            numer: -&self.numer,
            denom: self.denom.clone(),
        }
    }
    fn from_rational(r: &Rational) -> Self {
        RatFunc::constant(r.clone())
    }
}

impl Field for RatFunc {
    fn div_ref(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RatFunc::new(&self.numer * &rhs.denom, &self.denom * &rhs.numer).unwrap()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("t"))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn poly(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn limit_after_cancellation() {
        // (t^2 + 3t) / t -> 3
        let f = RatFunc::new(poly(&[0, 3, 1]), poly(&[0, 1])).unwrap();
        assert!(f.is_polynomial());
        assert_eq!(f.limit_at_zero(), Limit::Finite(int(3)));
    }

    #[test]
    fn pole_and_constant() {
        let f = RatFunc::new(poly(&[1]), poly(&[0, 1])).unwrap();
        assert_eq!(f.limit_at_zero(), Limit::Pole);
        assert_eq!(
            RatFunc::constant(rat(5, 2)).limit_at_zero(),
            Limit::Finite(rat(5, 2))
        );
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RatFunc::new(poly(&[1]), UniPoly::zero()).is_none());
    }

    #[test]
    fn denominator_is_monic() {
        let f = RatFunc::new(poly(&[2]), poly(&[0, 4])).unwrap();
        assert_eq!(f.denom(), &poly(&[0, 1]));
        assert_eq!(f.numer(), &UniPoly::constant(rat(1, 2)));
        assert_eq!(f.to_string(), "1/2/t");
    }
}
