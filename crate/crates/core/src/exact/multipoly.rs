//! Sparse multivariate polynomials over ℚ with a fixed number of variables.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};
use super::Ring;

pub type Monomial = Vec<u32>;

#[derive(Clone)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::from_terms(nvars, [(m, Rational::one())])
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` if the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    /// Indices of variables that occur with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|m| m[i] > 0))
            .collect()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Substitutes `value` for variable `i`; the arity is unchanged.
    pub fn substitute(&self, i: usize, value: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = std::mem::replace(&mut m2[i], 0);
            let mut f = c.clone();
            for _ in 0..e {
                f *= value;
            }
            out.add_term(m2, f);
        }
        out
    }

    /// Evaluates at a full point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    /// If the polynomial only involves variable `i`, returns its coefficients
    /// in that variable as a univariate polynomial.
    pub fn as_univariate(&self, i: usize) -> Option<super::UniPoly> {
        let mut coeffs: Vec<Rational> = Vec::new();
        for (m, c) in &self.terms {
            if m.iter().enumerate().any(|(j, &e)| j != i && e > 0) {
                return None;
            }
            let k = m[i] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            coeffs[k] += c;
        }
        Some(super::UniPoly::new(coeffs))
    }

    pub fn to_string_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        // Highest total degree first, then reverse lexicographic key order.
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (m, c) in items {
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = names.get(i).map(|s| s.to_string()).unwrap_or(format!("x{i}"));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&format_rational(&a));
            } else {
                if !a.is_one() {
                    out.push_str(&format_rational(&a));
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

// Arity-0 constants stand for constants of any arity.
impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.nvars == other.nvars {
            return self.terms == other.terms;
        }
        if self.nvars == 0 || other.nvars == 0 {
            return self.as_constant().is_some() && self.as_constant() == other.as_constant();
        }
        false
    }
}

impl Eq for MultiPoly {}

impl std::hash::Hash for MultiPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self.as_constant() {
            Some(c) => c.hash(state),
            None => {
                self.nvars.hash(state);
                self.terms.hash(state);
            }
        }
    }
}

// The numeric traits need nullary constructors; arity-free zero/one adapt to
// the other operand in the arithmetic below.
impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero(0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::one(0)
    }
    fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}

super::owned_ring_ops!(MultiPoly);

impl Ring for MultiPoly {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        MultiPoly::constant(0, r.clone())
    }
}

/// Widens an arity-0 constant to `nvars` variables.
fn widen(p: &MultiPoly, nvars: usize) -> MultiPoly {
    if p.nvars == nvars {
        return p.clone();
    }
    assert_eq!(p.nvars, 0, "arity mismatch: {} vs {}", p.nvars, nvars);
    MultiPoly::constant(nvars, p.as_constant().unwrap())
}

fn common_arity(a: &MultiPoly, b: &MultiPoly) -> usize {
    a.nvars.max(b.nvars)
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let n = common_arity(self, rhs);
        let mut out = widen(self, n);
        for (m, c) in &widen(rhs, n).terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let n = common_arity(self, rhs);
        let mut out = widen(self, n);
        for (m, c) in &widen(rhs, n).terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let n = common_arity(self, rhs);
        let (a, b) = (widen(self, n), widen(rhs, n));
        let mut out = MultiPoly::zero(n);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&[]))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn arithmetic_cancels_terms() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let s = &x + &y;
        let d = &x - &y;
        let prod = &s * &d; // x^2 - y^2
        assert_eq!(prod.num_terms(), 2);
        let back = &prod + &(&y * &y);
        assert_eq!(back, &x * &x);
        assert!((&prod - &prod).is_zero());
    }

    #[test]
    fn substitution_and_eval() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let p = &(&x * &x) + &(&y.scale(&int(3)));
        assert_eq!(p.eval(&[int(2), int(1)]), int(7));
        let q = p.substitute(0, &int(2));
        assert_eq!(q.support_vars(), vec![1]);
        assert_eq!(q.eval(&[int(100), int(1)]), int(7));
    }

    #[test]
    fn arity_free_constants_widen() {
        let x = MultiPoly::var(3, 2);
        let one = <MultiPoly as One>::one();
        let s = &x + &one;
        assert_eq!(s.nvars(), 3);
        assert_eq!(s.eval(&[int(0), int(0), int(4)]), int(5));
    }
}
