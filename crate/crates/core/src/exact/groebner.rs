//! Buchberger's algorithm over ℚ and the decisions built on it.
//!
//! By the weak Nullstellensatz a system has no common zero over ℂ iff the
//! reduced Gröbner basis is `{1}`, so emptiness over ℂ is decided with
//! arithmetic over ℚ only.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::multipoly::{Monomial, MultiPoly};
use super::rational::Rational;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialOrder {
    Lex,
    GrLex,
    #[default]
    GRevLex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrLex => {
                let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
                da.cmp(&db).then_with(|| a.cmp(b))
            }
            MonomialOrder::GRevLex => {
                let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

/// Default number of reduction steps allowed per Gröbner computation.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("groebner work budget of {budget} reduction steps exhausted")]
    BudgetExhausted { budget: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Emptiness {
    EmptyOverC,
    NonemptyOverC,
}

/// A reduced Gröbner basis: monic, inter-reduced, sorted by leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub nvars: usize,
    pub polys: Vec<MultiPoly>,
    /// Reduction steps spent.
    pub work: u64,
}

impl GroebnerBasis {
    pub fn is_unit_ideal(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].as_constant().is_some_and(|c| !c.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|p| SortedPoly::from_multi(p, self.order).terms[0].0.clone())
            .collect()
    }

    /// Finite solution set over ℂ, restricted to the variables in `vars`
    /// (other variables must not occur). For a proper ideal.
    pub fn is_zero_dimensional_in(&self, vars: &[usize]) -> bool {
        let lms = self.leading_monomials();
        vars.iter().all(|&v| {
            lms.iter()
                .any(|m| m[v] > 0 && m.iter().enumerate().all(|(j, &e)| j == v || e == 0))
        })
    }

    pub fn is_zero_dimensional(&self) -> bool {
        let all: Vec<usize> = (0..self.nvars).collect();
        self.is_zero_dimensional_in(&all)
    }

    /// Dimension of the affine variety over ℂ: the size of a largest set of
    /// variables containing no leading monomial. `None` for the unit ideal.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_unit_ideal() {
            return None;
        }
        let lms = self.leading_monomials();
        assert!(self.nvars <= 20, "dimension by subset search needs few variables");
        let supports: Vec<u32> = lms
            .iter()
            .map(|m| {
                m.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(0u32, |acc, (i, _)| acc | (1 << i))
            })
            .collect();
        let best = (0u32..(1u32 << self.nvars))
            .filter(|s| supports.iter().all(|sup| sup & !s != 0))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0);
        Some(best)
    }

    /// Normal form of `p` modulo the basis.
    pub fn reduce(&self, p: &MultiPoly) -> MultiPoly {
        let gs: Vec<SortedPoly> = self
            .polys
            .iter()
            .map(|g| SortedPoly::from_multi(g, self.order))
            .collect();
        let mut budget = Budget::new(u64::MAX);
        normal_form(SortedPoly::from_multi(p, self.order), &gs, self.order, &mut budget)
            .expect("unbounded budget")
            .to_multi(self.nvars)
    }
}

struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    fn tick(&mut self) -> Result<(), GroebnerError> {
        self.used += 1;
        if self.used > self.limit {
            Err(GroebnerError::BudgetExhausted { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

/// Terms sorted by decreasing monomial under the working order.
#[derive(Clone, Debug)]
struct SortedPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl SortedPoly {
    fn from_multi(p: &MultiPoly, order: MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Rational)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        SortedPoly { terms }
    }

    fn to_multi(&self, nvars: usize) -> MultiPoly {
        MultiPoly::from_terms(nvars, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    fn monic(mut self) -> Self {
        if let Some(lc) = self.terms.first().map(|t| t.1.clone()) {
            if !lc.is_one() {
                let inv = lc.recip();
                for t in &mut self.terms {
                    t.1 = &t.1 * &inv;
                }
            }
        }
        self
    }

    /// `self - c * x^shift * g`.
    fn sub_scaled(&self, c: &Rational, shift: &[u32], g: &SortedPoly, order: MonomialOrder) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut gi = g.terms.iter().map(|(m, k)| {
            let m2: Monomial = m.iter().zip(shift).map(|(a, b)| a + b).collect();
            (m2, -(k * c))
        });
        let mut next_g = gi.next();
        while i < self.terms.len() || next_g.is_some() {
            match (self.terms.get(i), &next_g) {
                (Some(a), Some(b)) => match order.cmp(&a.0, &b.0) {
                    Ordering::Greater => {
                        out.push(a.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(next_g.take().unwrap());
                        next_g = gi.next();
                    }
                    Ordering::Equal => {
                        let s = &a.1 + &b.1;
                        if !s.is_zero() {
                            out.push((a.0.clone(), s));
                        }
                        i += 1;
                        next_g = gi.next();
                    }
                },
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(next_g.take().unwrap());
                    next_g = gi.next();
                }
                (None, None) => unreachable!(),
            }
        }
        SortedPoly { terms: out }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn normal_form(
    mut p: SortedPoly,
    gs: &[SortedPoly],
    order: MonomialOrder,
    budget: &mut Budget,
) -> Result<SortedPoly, GroebnerError> {
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    while !p.is_zero() {
        budget.tick()?;
        let lm = p.lm().clone();
        if let Some(g) = gs.iter().find(|g| divides(g.lm(), &lm)) {
            let c = p.lc() / g.lc();
            let shift: Monomial = lm.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
            p = p.sub_scaled(&c, &shift, g, order);
        } else {
            rem.push(p.terms.remove(0));
        }
    }
    Ok(SortedPoly { terms: rem })
}

fn s_poly(f: &SortedPoly, g: &SortedPoly, order: MonomialOrder) -> SortedPoly {
    let l = lcm(f.lm(), g.lm());
    let sf: Monomial = l.iter().zip(f.lm()).map(|(a, b)| a - b).collect();
    let sg: Monomial = l.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
    // f and g are monic in the basis.
    let zero = SortedPoly { terms: Vec::new() };
    let a = zero.sub_scaled(&-Rational::one(), &sf, f, order);
    a.sub_scaled(&Rational::one(), &sg, g, order)
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis(
    gens: &[MultiPoly],
    order: MonomialOrder,
    budget: u64,
) -> Result<GroebnerBasis, GroebnerError> {
    let nvars = gens.iter().map(MultiPoly::nvars).max().unwrap_or(0);
    let mut budget = Budget::new(budget);
    let mut basis: Vec<SortedPoly> = Vec::new();
    for g in gens {
        let p = SortedPoly::from_multi(g, order);
        let r = normal_form(p, &basis, order, &mut budget)?;
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let finish = |basis: Vec<SortedPoly>, budget: &mut Budget| -> Result<GroebnerBasis, GroebnerError> {
        let polys = reduce_basis(basis, order, budget)?;
        Ok(GroebnerBasis {
            order,
            nvars,
            polys: polys.iter().map(|p| p.to_multi(nvars)).collect(),
            work: budget.used,
        })
    };
    if basis.iter().any(|p| p.lm().iter().all(|&e| e == 0)) {
        return finish(vec![SortedPoly { terms: vec![(vec![0; nvars], Rational::one())] }], &mut budget);
    }

    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    while !pairs.is_empty() {
        // Normal selection strategy: smallest lcm first.
        let &(i, j) = pairs
            .iter()
            .min_by(|a, b| {
                order.cmp(
                    &lcm(basis[a.0].lm(), basis[a.1].lm()),
                    &lcm(basis[b.0].lm(), basis[b.1].lm()),
                )
            })
            .unwrap();
        pairs.remove(&(i, j));
        if coprime(basis[i].lm(), basis[j].lm()) {
            continue;
        }
        let l = lcm(basis[i].lm(), basis[j].lm());
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].lm(), &l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], order);
        let r = normal_form(s, &basis, order, &mut budget)?;
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.lm().iter().all(|&e| e == 0) {
            return finish(vec![r], &mut budget);
        }
        let k = basis.len();
        basis.push(r);
        for i in 0..k {
            pairs.insert((i, k));
        }
    }
    finish(basis, &mut budget)
}

fn reduce_basis(
    basis: Vec<SortedPoly>,
    order: MonomialOrder,
    budget: &mut Budget,
) -> Result<Vec<SortedPoly>, GroebnerError> {
    // Minimal basis: drop elements whose leading monomial is divisible by
    // another element's (ties broken by index).
    let mut minimal: Vec<SortedPoly> = Vec::new();
    for (i, p) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, q)| {
            j != i && divides(q.lm(), p.lm()) && (q.lm() != p.lm() || j < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<SortedPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let head = SortedPoly {
            terms: vec![minimal[i].terms[0].clone()],
        };
        let tail = SortedPoly {
            terms: minimal[i].terms[1..].to_vec(),
        };
        let tail = normal_form(tail, &others, order, budget)?;
        let mut terms = head.terms;
        terms.extend(tail.terms);
        reduced.push(SortedPoly { terms }.monic());
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    Ok(reduced)
}

/// Decides whether the polynomials have a common zero over ℂ.
pub fn groebner_emptiness(gens: &[MultiPoly], budget: u64) -> Result<Emptiness, GroebnerError> {
    let gb = groebner_basis(gens, MonomialOrder::GRevLex, budget)?;
    Ok(if gb.is_unit_ideal() {
        Emptiness::EmptyOverC
    } else {
        Emptiness::NonemptyOverC
    })
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error(transparent)]
    Budget(#[from] GroebnerError),
    #[error("the solution set is positive-dimensional")]
    PositiveDimensional,
    #[error("some solutions are not rational")]
    Irrational,
}

/// All common zeros of a zero-dimensional system, provided every one of them
/// is rational. Points are returned in lexicographic order.
pub fn rational_solutions(gens: &[MultiPoly], budget: u64) -> Result<Vec<Vec<Rational>>, SolveError> {
    let nvars = gens.iter().map(MultiPoly::nvars).max().unwrap_or(0);
    let remaining: Vec<usize> = (0..nvars).collect();
    let mut out = Vec::new();
    let mut point = vec![Rational::zero(); nvars];
    solve_rec(gens, &remaining, &mut point, budget, &mut out)?;
    out.sort();
    Ok(out)
}

fn solve_rec(
    gens: &[MultiPoly],
    remaining: &[usize],
    point: &mut Vec<Rational>,
    budget: u64,
    out: &mut Vec<Vec<Rational>>,
) -> Result<(), SolveError> {
    let gb = groebner_basis(gens, MonomialOrder::Lex, budget)?;
    if gb.is_unit_ideal() {
        return Ok(());
    }
    let Some((&var, rest)) = remaining.split_last() else {
        // All variables fixed and the ideal is proper: the point is a zero.
        out.push(point.clone());
        return Ok(());
    };
    if !gb.is_zero_dimensional_in(remaining) {
        return Err(SolveError::PositiveDimensional);
    }
    // In a lex basis the eliminant in the smallest remaining variable is the
    // element that involves no other variable.
    let eliminant = gb
        .polys
        .iter()
        .filter_map(|p| p.as_univariate(var).filter(|u| !u.is_constant()))
        .min_by_key(|u| u.degree())
        .ok_or(SolveError::PositiveDimensional)?;
    let roots = eliminant.rational_roots();
    let squarefree_degree = {
        let g = eliminant.gcd(&eliminant.derivative());
        eliminant.div_rem(&g).0.degree().unwrap_or(0)
    };
    if roots.len() != squarefree_degree {
        return Err(SolveError::Irrational);
    }
    for (r, _) in roots {
        let sub: Vec<MultiPoly> = gb.polys.iter().map(|p| p.substitute(var, &r)).collect();
        point[var] = r;
        solve_rec(&sub, rest, point, budget, out)?;
    }
    point[var] = Rational::zero();
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }
    fn c(n: usize, v: i64) -> MultiPoly {
        MultiPoly::constant(n, int(v))
    }

    #[test]
    fn inconsistent_linear_system_is_empty() {
        let gens = [&x(1, 0) - &c(1, 1), &x(1, 0) - &c(1, 2)];
        assert_eq!(groebner_emptiness(&gens, DEFAULT_BUDGET).unwrap(), Emptiness::EmptyOverC);
    }

    #[test]
    fn complex_roots_count_as_nonempty() {
        let gens = [&(&x(1, 0) * &x(1, 0)) + &c(1, 1)];
        assert_eq!(groebner_emptiness(&gens, DEFAULT_BUDGET).unwrap(), Emptiness::NonemptyOverC);
    }

    #[test]
    fn sum_of_squares_meets_diagonal_at_origin() {
        let (a, b) = (x(2, 0), x(2, 1));
        let gens = [&(&a * &a) + &(&b * &b), &a - &b];
        assert_eq!(groebner_emptiness(&gens, DEFAULT_BUDGET).unwrap(), Emptiness::NonemptyOverC);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let (a, b) = (x(2, 0), x(2, 1));
        let gens = [&(&a * &a) - &b, &(&b * &b) - &a];
        assert!(matches!(
            groebner_emptiness(&gens, 1),
            Err(GroebnerError::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn classic_basis_is_reduced() {
        // <x^2 - y, x^3 - x> under lex x > y
        let (a, b) = (x(2, 0), x(2, 1));
        let gens = [&(&a * &a) - &b, &(&(&a * &a) * &a) - &a];
        let gb = groebner_basis(&gens, MonomialOrder::Lex, DEFAULT_BUDGET).unwrap();
        assert!(gb.is_zero_dimensional());
        for g in &gens {
            assert!(gb.reduce(g).is_zero());
        }
        let sols = rational_solutions(&gens, DEFAULT_BUDGET).unwrap();
        // x^2 = y, x(y - 1) = 0: (0,0), (1,1), (-1,1)
        assert_eq!(sols, vec![vec![int(-1), int(1)], vec![int(0), int(0)], vec![int(1), int(1)]]);
    }

    #[test]
    fn dimension_of_a_line() {
        let (a, b, z) = (x(3, 0), x(3, 1), x(3, 2));
        let gens = [&a - &b, z.clone()];
        let gb = groebner_basis(&gens, MonomialOrder::GRevLex, DEFAULT_BUDGET).unwrap();
        assert_eq!(gb.dimension(), Some(1));
        assert!(!gb.is_zero_dimensional());
    }

    #[test]
    fn irrational_solutions_detected() {
        let gens = [&(&x(1, 0) * &x(1, 0)) - &c(1, 2)];
        assert_eq!(rational_solutions(&gens, DEFAULT_BUDGET), Err(SolveError::Irrational));
    }

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        // x*z < y^2 in grevlex with x > y > z
        assert_eq!(MonomialOrder::GRevLex.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(MonomialOrder::GrLex.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Greater);
    }
}
