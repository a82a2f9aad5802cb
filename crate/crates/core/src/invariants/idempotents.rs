//! Idempotents: the variety `x² = x`, primitive idempotents and maximal
//! orthogonal frames.

use num_traits::{One, Zero};

use super::peirce::peirce_dims;
use crate::algebra::{Algebra, AlgebraError};
use crate::exact::groebner::{groebner_basis, rational_solutions, SolveError};
use crate::exact::{GroebnerError, Matrix, MonomialOrder, MultiPoly, Rational, UniPoly};
use crate::random;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum IdempotentError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("undecided: {0}")]
    Undecided(#[from] GroebnerError),
    #[error("idempotents are not all rational")]
    Irrational,
    #[error("no split element found to build an idempotent frame")]
    NoSplitElement,
}

#[derive(Clone, Debug, PartialEq)]
pub enum IdempotentVariety {
    /// All nonzero idempotents, sorted.
    Finite(Vec<Vec<Rational>>),
    /// Dimension of the solution set over ℂ.
    PositiveDimensional(usize),
}

/// Maximal orthogonal frames of primitive idempotents.
#[derive(Clone, Debug, PartialEq)]
pub struct Frames {
    pub variety: IdempotentVariety,
    pub frames: Vec<Vec<Vec<Rational>>>,
}

fn idempotent_system(a: &Algebra) -> Vec<MultiPoly> {
    let n = a.dim();
    let x: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(n, i)).collect();
    (0..n)
        .map(|k| {
            let mut p = -&x[k];
            for i in 0..n {
                for j in 0..n {
                    let c = a.c(i, j, k);
                    if !c.is_zero() {
                        p = &p + &(&x[i] * &x[j]).scale(c);
                    }
                }
            }
            p
        })
        .collect()
}

pub fn idempotent_variety(a: &Algebra, budget: u64) -> Result<IdempotentVariety, IdempotentError> {
    if !a.is_jordan()? {
        return Err(AlgebraError::NotJordan.into());
    }
    let n = a.dim();
    if n == 0 {
        return Ok(IdempotentVariety::Finite(Vec::new()));
    }
    let system = idempotent_system(a);
    let gb = groebner_basis(&system, MonomialOrder::GRevLex, budget)?;
    if !gb.is_zero_dimensional() {
        let dim = if n <= 20 { gb.dimension().unwrap_or(0) } else { 1 };
        return Ok(IdempotentVariety::PositiveDimensional(dim));
    }
    let sols = match rational_solutions(&system, budget) {
        Ok(s) => s,
        Err(SolveError::Budget(e)) => return Err(e.into()),
        Err(SolveError::PositiveDimensional) => unreachable!("zero-dimensional by the grevlex basis"),
        Err(SolveError::Irrational) => {
            return Err(IdempotentError::Irrational)
        }
    };
    Ok(IdempotentVariety::Finite(
        sols.into_iter()
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect(),
    ))
}

fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn add(u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

/// Maximal sets of pairwise orthogonal primitive idempotents among a finite
/// list of all nonzero idempotents.
fn frames_from_list(a: &Algebra, all: &[Vec<Rational>]) -> Vec<Vec<Vec<Rational>>> {
    let orth = |u: &[Rational], v: &[Rational]| is_zero_vec(&a.mul(u, v));
    let primitive: Vec<&Vec<Rational>> = all
        .iter()
        .filter(|e| {
            !all.iter().any(|f| {
                *f != **e && a.mul(f, e) == *f && {
                    let g: Vec<Rational> = e.iter().zip(f.iter()).map(|(x, y)| x - y).collect();
                    !is_zero_vec(&g) && all.contains(&g) && orth(&g, f)
                }
            })
        })
        .collect();
    let m = primitive.len();
    let adj: Vec<Vec<bool>> = (0..m)
        .map(|i| (0..m).map(|j| i != j && orth(primitive[i], primitive[j])).collect())
        .collect();
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    bron_kerbosch(&adj, Vec::new(), (0..m).collect(), Vec::new(), &mut cliques);
    let mut frames: Vec<Vec<Vec<Rational>>> = cliques
        .into_iter()
        .map(|c| {
            let mut f: Vec<Vec<Rational>> = c.into_iter().map(|i| primitive[i].clone()).collect();
            f.sort();
            f
        })
        .collect();
    frames.sort();
    frames
}

fn bron_kerbosch(
    adj: &[Vec<bool>],
    r: Vec<usize>,
    mut p: Vec<usize>,
    mut x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() && !r.is_empty() {
            out.push(r);
        }
        return;
    }
    while let Some(v) = p.pop() {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.iter().copied().filter(|&u| adj[v][u]).collect();
        let x2 = x.iter().copied().filter(|&u| adj[v][u]).collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        x.push(v);
    }
}

/// `x, x², …, x^m` up to the first linear dependency and the monic
/// polynomial `p` with `p(x) = 0` and `p(0) = 0`.
fn minimal_polynomial(a: &Algebra, x: &[Rational]) -> (UniPoly, Vec<Vec<Rational>>) {
    let n = a.dim();
    let mut powers: Vec<Vec<Rational>> = vec![x.to_vec()];
    loop {
        let cols = powers.len();
        let m = Matrix::from_fn(n, cols, |i, j| powers[j][i].clone());
        let ker = m.kernel();
        if let Some(v) = ker.into_iter().find(|v| !v[cols - 1].is_zero()) {
            // Σ v_j x^{j+1} = 0
            let lead = v[cols - 1].clone();
            let mut coeffs = vec![Rational::zero()];
            coeffs.extend(v.iter().map(|c| c / &lead));
            powers.pop();
            return (UniPoly::new(coeffs), powers);
        }
        if is_zero_vec(powers.last().unwrap()) {
            let mut coeffs = vec![Rational::zero(); cols + 1];
            coeffs[cols] = Rational::one();
            powers.pop();
            return (UniPoly::new(coeffs), powers);
        }
        let next = a.mul(x, powers.last().unwrap());
        powers.push(next);
    }
}

fn distinct_nonzero_roots_over_c(p: &UniPoly) -> usize {
    let sqfree = p.div_rem(&p.gcd(&p.derivative())).0;
    sqfree.degree().unwrap_or(0) - usize::from(sqfree.coeff(0).is_zero())
}

/// Frame of idempotents obtained from the rational eigen-decomposition of a
/// split element `x`: for each nonzero root `λ` of its minimal polynomial the
/// idempotent `q(x)` with `q ≡ 1` near `λ` and `q ≡ 0` at the other roots.
fn frame_from_element(a: &Algebra, x: &[Rational], target: usize) -> Option<Vec<Vec<Rational>>> {
    let (p, powers) = minimal_polynomial(a, x);
    let roots = p.rational_roots();
    let nonzero: Vec<&(Rational, usize)> = roots.iter().filter(|(r, _)| !r.is_zero()).collect();
    if nonzero.len() != target {
        return None;
    }
    let mut frame = Vec::new();
    for (r, mult) in nonzero {
        let factor = UniPoly::new(vec![-r.clone(), Rational::one()]).pow(*mult as u32);
        let rest = p.div_rem(&factor).0;
        let (g, _, t) = factor.ext_gcd(&rest);
        debug_assert!(g.is_one());
        let q = (&t * &rest).div_rem(&p).1;
        debug_assert!(q.coeff(0).is_zero());
        let mut e = vec![Rational::zero(); a.dim()];
        for (k, c) in q.coeffs().iter().enumerate().skip(1) {
            if !c.is_zero() {
                for (ei, pi) in e.iter_mut().zip(&powers[k - 1]) {
                    *ei += c * pi;
                }
            }
        }
        frame.push(e);
    }
    frame.sort();
    Some(frame)
}

/// Deterministic candidate elements: basis vectors, then pairwise
/// combinations, then seeded random small-integer vectors.
fn candidates(n: usize) -> impl Iterator<Item = Vec<Rational>> {
    let unit = move |i: usize| {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        v
    };
    let basis = (0..n).map(unit);
    let pairs = (0..n).flat_map(move |i| {
        (0..n).filter(move |&j| j != i).flat_map(move |j| {
            [1i64, 2, -1, 3].into_iter().map(move |c| {
                let mut v = unit(i);
                v[j] = Rational::from_integer(c.into());
                v
            })
        })
    });
    let mut rng = random::rng(0x1d3e);
    let randoms = (0..400).map(move |_| (0..n).map(|_| random::small_int(&mut rng, 4)).collect());
    basis.chain(pairs).chain(randoms)
}

fn split_frame(a: &Algebra) -> Result<Vec<Vec<Rational>>, IdempotentError> {
    let n = a.dim();
    let mut rng = random::rng(0x5eed);
    let mut target = 0;
    for _ in 0..8 {
        let x = random::vector(&mut rng, n, 7);
        let (p, _) = minimal_polynomial(a, &x);
        target = target.max(distinct_nonzero_roots_over_c(&p));
    }
    if target == 0 {
        return Ok(Vec::new());
    }
    for x in candidates(n) {
        if let Some(f) = frame_from_element(a, &x, target) {
            return Ok(f);
        }
    }
    Err(IdempotentError::NoSplitElement)
}

pub fn idempotent_frames(a: &Algebra, budget: u64) -> Result<Frames, IdempotentError> {
    let variety = idempotent_variety(a, budget)?;
    let frames = match &variety {
        IdempotentVariety::Finite(all) => frames_from_list(a, all),
        IdempotentVariety::PositiveDimensional(_) => {
            let f = split_frame(a)?;
            if f.is_empty() {
                Vec::new()
            } else {
                vec![f]
            }
        }
    };
    Ok(Frames { variety, frames })
}

/// Idempotents used for spectral comparisons: every nonzero idempotent when
/// there are finitely many, otherwise all nonempty subset sums of each
/// frame.
pub fn available_idempotents(a: &Algebra, frames: &Frames) -> Vec<Vec<Rational>> {
    match &frames.variety {
        IdempotentVariety::Finite(all) => all.clone(),
        IdempotentVariety::PositiveDimensional(_) => {
            let mut out: Vec<Vec<Rational>> = Vec::new();
            for f in &frames.frames {
                for mask in 1u32..(1 << f.len()) {
                    let mut e = vec![Rational::zero(); a.dim()];
                    for (i, fi) in f.iter().enumerate() {
                        if mask & (1 << i) != 0 {
                            e = add(&e, fi);
                        }
                    }
                    if !out.contains(&e) {
                        out.push(e);
                    }
                }
            }
            out.sort();
            out
        }
    }
}

/// Peirce multiplicities `(0, ½, 1)` of every frame member, sorted within
/// each frame.
pub fn frame_spectra(a: &Algebra, frames: &Frames) -> Vec<Vec<(usize, usize, usize)>> {
    let mut out: Vec<Vec<(usize, usize, usize)>> = frames
        .frames
        .iter()
        .map(|f| {
            let mut s: Vec<_> = f.iter().map(|e| peirce_dims(a, e)).collect();
            s.sort();
            s
        })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::exact::groebner::DEFAULT_BUDGET;
    use crate::exact::rational::int;

    #[test]
    fn t01_has_seven_idempotents_and_one_frame() {
        let a = catalog("T01").unwrap();
        let f = idempotent_frames(&a, DEFAULT_BUDGET).unwrap();
        match &f.variety {
            IdempotentVariety::Finite(all) => assert_eq!(all.len(), 7),
            other => panic!("{other:?}"),
        }
        assert_eq!(f.frames.len(), 1);
        assert_eq!(f.frames[0].len(), 3);
    }

    #[test]
    fn t02_is_positive_dimensional_with_split_frame() {
        let a = catalog("T02").unwrap();
        let f = idempotent_frames(&a, DEFAULT_BUDGET).unwrap();
        assert_eq!(f.variety, IdempotentVariety::PositiveDimensional(1));
        assert_eq!(f.frames.len(), 1);
        assert_eq!(f.frames[0].len(), 2);
        for e in &f.frames[0] {
            assert_eq!(&a.mul(e, e), e);
        }
        assert_eq!(frame_spectra(&a, &f), vec![vec![(1, 1, 1), (1, 1, 1)]]);
    }

    #[test]
    fn nilpotent_has_no_idempotents() {
        let a = catalog("T19").unwrap();
        let f = idempotent_frames(&a, DEFAULT_BUDGET).unwrap();
        assert_eq!(f.variety, IdempotentVariety::Finite(vec![]));
        assert!(f.frames.is_empty());
    }

    #[test]
    fn marginal_idempotents() {
        let a = catalog("J4").unwrap();
        let f = idempotent_frames(&a, DEFAULT_BUDGET).unwrap();
        assert_eq!(f.variety, IdempotentVariety::PositiveDimensional(3));
        assert_eq!(f.frames, vec![vec![vec![int(1), int(0), int(0), int(0)]]]);
    }
}
