//! Stability of coordinate closed sets under the Borel subgroup.
//!
//! Convention: the Borel group is the set of upper triangular matrices `P`
//! acting by rows, so the new basis vector `f_i` lies in `S_i = ⟨e_i, …, e_n⟩`
//! and every flag `S_i` is preserved.

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use super::spec::{membership, ClosedSetSpec, Triple};
use crate::algebra::{Algebra, BasisChange, Table};
use crate::exact::{Matrix, MultiPoly, Rational};
use crate::random;

/// A transformed constrained coordinate picking up an unconstrained one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilityObstruction {
    /// 1-based `(i, j, k)` of the constrained coordinate `c'_{ij}^k`.
    pub constrained: [usize; 3],
    /// 1-based coordinate `c_{ab}^l` outside the spec that feeds into it.
    pub escaping: [usize; 3],
    /// Its coefficient as a polynomial in the group entries.
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilityReport {
    pub stable: bool,
    pub obstructions: Vec<StabilityObstruction>,
}

/// Variables: `d_i`, `dinv_i`, `u_ij` (`i < j`), then one `c_β` per symmetric
/// coordinate.
struct Layout {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl Layout {
    fn new(n: usize) -> Self {
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Layout { n, pairs }
    }

    fn d(&self, i: usize) -> usize {
        i
    }

    fn dinv(&self, i: usize) -> usize {
        self.n + i
    }

    fn u(&self, i: usize, j: usize) -> usize {
        2 * self.n + self.pairs.iter().position(|&p| p == (i, j)).unwrap()
    }

    fn group_vars(&self) -> usize {
        2 * self.n + self.pairs.len()
    }

    fn coord(&self, (i, j, k): Triple) -> usize {
        let (i, j) = (i.min(j), i.max(j));
        let pair = i * self.n - i * (i + 1) / 2 + j;
        self.group_vars() + pair * self.n + k
    }

    fn nvars(&self) -> usize {
        self.group_vars() + self.n * self.n * (self.n + 1) / 2
    }

    fn coord_of_var(&self, v: usize) -> Option<Triple> {
        let off = v.checked_sub(self.group_vars())?;
        let (pair, k) = (off / self.n, off % self.n);
        let mut idx = 0;
        for i in 0..self.n {
            for j in i..self.n {
                if idx == pair {
                    return Some((i, j, k));
                }
                idx += 1;
            }
        }
        None
    }

    fn names(&self) -> Vec<String> {
        let mut names: Vec<String> = (0..self.n).map(|i| format!("d{}", i + 1)).collect();
        names.extend((0..self.n).map(|i| format!("dinv{}", i + 1)));
        names.extend(self.pairs.iter().map(|(i, j)| format!("u{}{}", i + 1, j + 1)));
        for i in 0..self.n {
            for j in i..self.n {
                for k in 0..self.n {
                    names.push(format!("c{}{}_{}", i + 1, j + 1, k + 1));
                }
            }
        }
        names
    }
}

fn one_based((i, j, k): Triple) -> [usize; 3] {
    [i + 1, j + 1, k + 1]
}

/// Exact decision by monomial inspection. `P = D·U` with `D` diagonal and
/// `U` unitriangular; every transformed constrained coordinate must be a
/// combination of constrained coordinates only.
pub fn borel_stability(spec: &ClosedSetSpec) -> StabilityReport {
    let n = spec.dim();
    let lay = Layout::new(n);
    let nv = lay.nvars();
    let var = |i| MultiPoly::var(nv, i);
    let u = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            MultiPoly::one(nv)
        } else if i < j {
            var(lay.u(i, j))
        } else {
            MultiPoly::zero(nv)
        }
    });
    let d = Matrix::from_fn(n, n, |i, j| if i == j { var(lay.d(i)) } else { MultiPoly::zero(nv) });
    let dinv = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            var(lay.dinv(i))
        } else {
            MultiPoly::zero(nv)
        }
    });
    let p = d.mul(&u);
    let q = u.unitriangular_upper_inverse().mul(&dinv);
    let generic = Table::from_fn(n, |i, j, k| var(lay.coord((i, j, k))));
    let transformed = generic.transform(&p, &q);
    let names = lay.names();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();

    let mut obstructions = Vec::new();
    for &alpha in spec.vanishing() {
        let c = transformed.get(alpha.0, alpha.1, alpha.2);
        // Group the offending monomials by their coordinate variable.
        let mut escaping: Vec<(Triple, Vec<(Vec<u32>, Rational)>)> = Vec::new();
        for (mono, coef) in c.terms() {
            let beta = mono
                .iter()
                .enumerate()
                .skip(lay.group_vars())
                .find(|(_, &e)| e > 0)
                .and_then(|(v, _)| lay.coord_of_var(v))
                .expect("every transformed coordinate is linear in the constants");
            if spec.vanishing().contains(&beta) {
                continue;
            }
            let mut group_part = mono.clone();
            for e in group_part.iter_mut().skip(lay.group_vars()) {
                *e = 0;
            }
            match escaping.iter_mut().find(|(b, _)| *b == beta) {
                Some((_, terms)) => terms.push((group_part, coef.clone())),
                None => escaping.push((beta, vec![(group_part, coef.clone())])),
            }
        }
        for (beta, terms) in escaping {
            let poly = MultiPoly::from_terms(nv, terms);
            obstructions.push(StabilityObstruction {
                constrained: one_based(alpha),
                escaping: one_based(beta),
                coefficient: poly.to_string_with(&name_refs),
            });
        }
    }
    StabilityReport {
        stable: obstructions.is_empty(),
        obstructions,
    }
}

/// A member of the spec moved out of it by a triangular change of basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilityCounterexample {
    pub algebra: Algebra,
    pub basis: BasisChange,
    /// 1-based coordinate that becomes nonzero.
    pub violated: [usize; 3],
}

/// Randomized search: applies random upper triangular changes of basis to
/// the candidates lying in the spec and reports the first one that leaves.
pub fn instability_counterexample(
    spec: &ClosedSetSpec,
    candidates: &[Algebra],
    tries: usize,
    seed: u64,
) -> Option<StabilityCounterexample> {
    let mut rng = random::rng(seed);
    for a in candidates.iter().filter(|a| membership(spec, a)) {
        for _ in 0..tries {
            let bound = rng.random_range(1..=3);
            let g = BasisChange::new(random::upper_triangular(&mut rng, a.dim(), bound))
                .expect("triangular with nonzero diagonal");
            let moved = a.change_basis(&g).expect("dimensions agree");
            if let Some(v) = spec.first_violation(&moved.table) {
                return Some(StabilityCounterexample {
                    algebra: a.clone(),
                    basis: g,
                    violated: one_based(v),
                });
            }
        }
    }
    None
}

/// Builds a concrete (not necessarily Jordan) table in the spec that a
/// triangular change of basis moves out, from the first obstruction.
pub fn symbolic_counterexample(spec: &ClosedSetSpec) -> Option<(Table<Rational>, BasisChange, [usize; 3])> {
    let report = borel_stability(spec);
    let ob = report.obstructions.first()?;
    let n = spec.dim();
    let [a, b, l] = ob.escaping;
    let mut t = Table::zero(n);
    t.set(a - 1, b - 1, l - 1, Rational::from_integer(1.into()));
    t.set(b - 1, a - 1, l - 1, Rational::from_integer(1.into()));
    let [i, j, k] = ob.constrained;
    let mut rng = random::rng(7);
    for _ in 0..200 {
        let g = BasisChange::new(random::upper_triangular(&mut rng, n, 3)).ok()?;
        let moved = t.transform(g.matrix(), g.inverse().matrix());
        if !moved.get(i - 1, j - 1, k - 1).is_zero() {
            return Some((t, g, ob.constrained));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::{entries, Family};
    use crate::algebra::catalog;

    #[test]
    fn full_flag_conditions_are_stable() {
        // S_a S_b ⊆ S_c is preserved by every flag-preserving map.
        let s = ClosedSetSpec::parse(3, &[], &["S2*S2 ⊆ S3", "S1*S3 ⊆ S2", "S3*S3 = 0"]).unwrap();
        assert!(borel_stability(&s).stable);
        let s = ClosedSetSpec::parse(2, &[[2, 2, 1]], &[]).unwrap();
        assert!(borel_stability(&s).stable);
    }

    #[test]
    fn single_coordinate_in_dim_two_is_not_stable() {
        let s = ClosedSetSpec::parse(2, &[[1, 1, 1]], &[]).unwrap();
        let r = borel_stability(&s);
        assert!(!r.stable);
        assert!(r.obstructions.iter().all(|o| o.constrained == [1, 1, 1]));
        let (t, g, at) = symbolic_counterexample(&s).unwrap();
        assert!(s.contains_table(&t));
        assert!(!s.contains_table(&t.transform(g.matrix(), g.inverse().matrix())));
        assert_eq!(at, [1, 1, 1]);
    }

    #[test]
    fn randomized_search_agrees_with_the_symbolic_test() {
        let dim3: Vec<Algebra> = entries(Family::Dim3).map(|e| catalog(e.label).unwrap()).collect();
        let stable = ClosedSetSpec::parse(3, &[], &["S2*S2 ⊆ S3", "S2*S3 = 0"]).unwrap();
        assert!(borel_stability(&stable).stable);
        assert!(instability_counterexample(&stable, &dim3, 20, 1).is_none());
    }
}
