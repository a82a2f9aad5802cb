//! Dense univariate polynomials over ℚ in the parameter `t`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};
use super::Ring;

/// Coefficients are stored by ascending degree. The leading coefficient is
/// nonzero; the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let lc = self.leading();
        self.scale(&lc.recip())
    }

    /// Number of leading zero coefficients, i.e. the multiplicity of `t = 0`
    /// as a root. Zero for the zero polynomial.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `t^k`; requires `k <= low_order()`.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(k <= self.low_order() || self.coeffs.is_empty());
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = UniPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] / &lc;
            let shift = top - dd;
            for (k, dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] = &rem[shift + k] - &c * dc;
            }
            quot[shift] = c;
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: `(g, s, r)` with `s·self + r·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Rational roots with multiplicity. The real roots of the squarefree
    /// part are isolated with a Sturm sequence; a rational root of a
    /// primitive integer polynomial with leading coefficient `a` lies on the
    /// lattice `k/a`, so each isolating interval is refined below width `1/a`
    /// and its lattice points are tested exactly.
    pub fn rational_roots(&self) -> Vec<(Rational, usize)> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let zero_mult = self.low_order();
        if zero_mult > 0 {
            roots.push((Rational::zero(), zero_mult));
        }
        let mut p = self.shift_down(zero_mult);
        if p.is_constant() {
            return roots;
        }
        let sqfree = p.div_rem(&p.gcd(&p.derivative())).0;
        let ints = primitive_integer_coeffs(&sqfree);
        let lead = Rational::from_integer(ints.last().unwrap().abs());
        let sturm = sturm_sequence(&sqfree);
        let lc = sqfree.leading();
        let bound = sqfree
            .coeffs()
            .iter()
            .map(|c| (c / &lc).abs())
            .fold(Rational::zero(), |m, c| if c > m { c } else { m })
            + Rational::from_integer(2.into());
        let mut found = Vec::new();
        isolate(&sqfree, &sturm, -bound.clone(), bound, &lead, &mut found);
        for r in found {
            let lin = UniPoly::new(vec![-r.clone(), Rational::one()]);
            let mut mult = 0;
            loop {
                let (q, rem) = p.div_rem(&lin);
                if !rem.is_zero() {
                    break;
                }
                p = q;
                mult += 1;
            }
            roots.push((r, mult));
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        roots
    }

    /// Formats with the given variable name, highest degree first.
    pub fn to_string_in(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&format_rational(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", format_rational(&a), mono));
            }
        }
        out
    }
}

fn primitive_integer_coeffs(p: &UniPoly) -> Vec<BigInt> {
    let l = super::rational::lcm_of_denominators(p.coeffs());
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    ints.into_iter().map(|x| x / &g).collect()
}

fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            return seq;
        }
        seq.push(-&r);
    }
}

fn sign_changes(seq: &[UniPoly], x: &Rational) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|q| q.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Pushes the rational roots of the squarefree `p` in `(lo, hi]`.
fn isolate(p: &UniPoly, sturm: &[UniPoly], lo: Rational, hi: Rational, lead: &Rational, out: &mut Vec<Rational>) {
    let count = sign_changes(sturm, &lo) - sign_changes(sturm, &hi);
    if count == 0 {
        return;
    }
    if count == 1 && (&hi - &lo) * lead < Rational::one() {
        let mut k = (&lo * lead).floor() + Rational::one();
        while k <= (&hi * lead).floor() {
            let r = &k / lead;
            if p.eval(&r).is_zero() {
                out.push(r);
                return;
            }
            k += Rational::one();
        }
        return;
    }
    let mid = (&lo + &hi) / Rational::from_integer(2.into());
    isolate(p, sturm, lo, mid.clone(), lead, out);
    isolate(p, sturm, mid, hi, lead, out);
}

impl Zero for UniPoly {
    fn zero() -> Self {
        UniPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for UniPoly {
    fn one() -> Self {
        UniPoly::constant(Rational::one())
    }
}

super::owned_ring_ops!(UniPoly);

impl Ring for UniPoly {
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
        UniPoly::constant(r.clone())
    }
}

impl std::ops::Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl std::ops::Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl std::ops::Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return UniPoly::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl std::ops::Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("t"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn division_and_gcd() {
        // (t^2 - 1) = (t - 1)(t + 1)
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[2, 2])), p(&[1, 1]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[2, 1])), p(&[1]));
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // 2t^3 - t^2 = t^2 (2t - 1)
        let roots = p(&[0, 0, -1, 2]).rational_roots();
        assert_eq!(roots, vec![(int(0), 2), (rat(1, 2), 1)]);
        // t^2 + 1 has none
        assert!(p(&[1, 0, 1]).rational_roots().is_empty());
        // (t - 1)^2 (t + 3)
        let q = &p(&[-1, 1]).pow(2) * &p(&[3, 1]);
        assert_eq!(q.rational_roots(), vec![(int(-3), 1), (int(1), 2)]);
    }

    #[test]
    fn rational_roots_with_large_coefficients() {
        // (t - 987654321/1234567) (t + 2^61) (t^2 + 7)
        let r1 = Rational::new(BigInt::from(987654321), BigInt::from(1234567));
        let r2 = Rational::from_integer(-(BigInt::one() << 61usize));
        let lin = |r: &Rational| UniPoly::new(vec![-r.clone(), Rational::one()]);
        let q = &(&lin(&r1) * &lin(&r2)) * &p(&[7, 0, 1]);
        assert_eq!(q.rational_roots(), vec![(r2, 1), (r1, 1)]);
        // close roots: 1/1000 and 1/1001, doubled
        let q = &lin(&rat(1, 1000)).pow(2) * &lin(&rat(1, 1001));
        assert_eq!(q.rational_roots(), vec![(rat(1, 1001), 1), (rat(1, 1000), 2)]);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[3, 0, -1]).to_string(), "-t^2 + 3");
        assert_eq!(UniPoly::new(vec![rat(1, 2), int(2)]).to_string(), "2*t + 1/2");
    }
}
