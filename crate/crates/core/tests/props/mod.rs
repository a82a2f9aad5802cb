//! Randomized properties of the exact layer, algebras, witnesses and
//! closed-set certificates, shared by the property and acceptance targets.
//! Seeded through proptest's deterministic runner.

use jordeg_core::algebra::catalog::{entries, marginal};
use jordeg_core::algebra::{catalog, Algebra, BasisChange, Family};
use jordeg_core::degeneration::{compose_with_scaling, edge_witnesses, verify_witness, DegenerationWitness};
use jordeg_core::exact::groebner::{groebner_emptiness, Emptiness, DEFAULT_BUDGET};
use jordeg_core::exact::{Field, Limit, Matrix, MultiPoly, RatFunc, Rational, Ring, UniPoly};
use jordeg_core::invariants::{derivation_algebra, fingerprint};
use jordeg_core::nondegeneration::{borel_stability, membership, ClosedSetSpec};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn unipoly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(rational(), 0..5).prop_map(UniPoly::new)
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (unipoly(), unipoly()).prop_filter_map("zero denominator", |(n, d)| RatFunc::new(n, d))
}

fn multipoly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, 3), rational()), 0..5)
        .prop_map(|terms| MultiPoly::from_terms(3, terms))
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(rational(), n * n).prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

fn dim3() -> Vec<Algebra> {
    entries(Family::Dim3).map(|e| catalog(e.label).unwrap()).collect()
}

fn ring_laws<R: Ring>(a: &R, b: &R, c: &R) {
    assert_eq!(a.add_ref(b), b.add_ref(a));
    assert_eq!(a.mul_ref(b), b.mul_ref(a));
    assert_eq!(a.add_ref(b).add_ref(c), a.add_ref(&b.add_ref(c)));
    assert_eq!(a.mul_ref(b).mul_ref(c), a.mul_ref(&b.mul_ref(c)));
    assert_eq!(a.mul_ref(&b.add_ref(c)), a.mul_ref(b).add_ref(&a.mul_ref(c)));
    assert_eq!(a.sub_ref(a), R::zero());
    assert_eq!(a.add_ref(&a.neg_ref()), R::zero());
    assert_eq!(a.mul_ref(&R::one()), *a);
}

pub fn ring_laws_hold() {
    runner(96)
        .run(&(rational(), rational(), rational()), |(a, b, c)| {
            ring_laws(&a, &b, &c);
            Ok(())
        })
        .unwrap();
    runner(64)
        .run(&(unipoly(), unipoly(), unipoly()), |(a, b, c)| {
            ring_laws(&a, &b, &c);
            if !b.is_zero() {
                let (q, r) = a.div_rem(&b);
                assert_eq!(q.mul_ref(&b).add_ref(&r), a);
                assert!(r.is_zero() || r.degree() < b.degree());
            }
            Ok(())
        })
        .unwrap();
    runner(48)
        .run(&(ratfunc(), ratfunc(), ratfunc()), |(a, b, c)| {
            ring_laws(&a, &b, &c);
            // reduced form: monic denominator
            assert_eq!(a.denom().leading(), Rational::one());
            if !b.is_zero() {
                assert_eq!(a.div_ref(&b).mul_ref(&b), a);
            }
            Ok(())
        })
        .unwrap();
    runner(48)
        .run(&(multipoly(), multipoly(), multipoly()), |(a, b, c)| {
            ring_laws(&a, &b, &c);
            Ok(())
        })
        .unwrap();
}

pub fn limits_are_multiplicative() {
    runner(96)
        .run(&(ratfunc(), ratfunc()), |(f, g)| {
            if let (Limit::Finite(a), Limit::Finite(b)) = (f.limit_at_zero(), g.limit_at_zero()) {
                assert_eq!(f.mul_ref(&g).limit_at_zero(), Limit::Finite(a * b));
            }
            Ok(())
        })
        .unwrap();
}

pub fn kernels_and_determinants() {
    runner(64)
        .run(&(1usize..=4).prop_flat_map(matrix), |m| {
            let n = m.rows();
            for k in m.kernel() {
                assert!(m.mul_vec(&k).iter().all(Zero::is_zero));
            }
            let det = m.determinant().unwrap();
            assert_eq!(det.is_zero(), !m.kernel().is_empty());
            assert_eq!(det, m.determinant_fraction_free().unwrap());
            if let Some(inv) = m.inverse() {
                assert_eq!(m.mul(&inv), Matrix::identity(n));
            }
            Ok(())
        })
        .unwrap();
}

pub fn groebner_agrees_with_gaussian_elimination() {
    let system = prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..5);
    runner(64)
        .run(&system, |rows| {
            let polys: Vec<MultiPoly> = rows
                .iter()
                .map(|r| {
                    let mut p = MultiPoly::constant(3, Rational::from_integer(r[3].into()));
                    for (v, &c) in r[..3].iter().enumerate() {
                        p = &p + &MultiPoly::var(3, v).scale(&Rational::from_integer(c.into()));
                    }
                    p
                })
                .collect();
            let a = Matrix::from_fn(rows.len(), 3, |i, j| Rational::from_integer(rows[i][j].into()));
            let ab = Matrix::from_fn(rows.len(), 4, |i, j| Rational::from_integer(rows[i][j].into()));
            let solvable = a.rank() == ab.rank();
            let e = groebner_emptiness(&polys, DEFAULT_BUDGET).unwrap();
            assert_eq!(e == Emptiness::NonemptyOverC, solvable, "{rows:?}");
            Ok(())
        })
        .unwrap();
}

pub fn jordan_identity_is_basis_independent() {
    let algebras = dim3();
    runner(40)
        .run(&(0..algebras.len(), matrix(3)), |(i, m)| {
            let Ok(g) = BasisChange::new(m) else { return Ok(()) };
            let moved = algebras[i].change_basis(&g).unwrap();
            assert!(moved.is_jordan().unwrap());
            // back again
            assert_eq!(moved.change_basis(&g.inverse()).unwrap().table, algebras[i].table);
            Ok(())
        })
        .unwrap();
}

pub fn jordan_identity_on_random_vectors() {
    let mut all = dim3();
    all.extend(entries(Family::Dim2).map(|e| catalog(e.label).unwrap()));
    all.extend((2..=5).map(|k| marginal(k).unwrap()));
    runner(100)
        .run(&(prop::collection::vec(rational(), 10), 0..all.len()), |(v, i)| {
            let a = &all[i];
            let n = a.dim();
            let (x, y) = (&v[..n], &v[5..5 + n]);
            let x2 = a.mul(x, x);
            assert_eq!(a.mul(&a.mul(&x2, y), x), a.mul(&x2, &a.mul(y, x)));
            Ok(())
        })
        .unwrap();
}

pub fn direct_sums() {
    let mut all: Vec<Algebra> = entries(Family::Dim2).map(|e| catalog(e.label).unwrap()).collect();
    all.push(marginal(2).unwrap());
    let idx = 0..all.len();
    runner(32)
        .run(&(idx.clone(), idx.clone(), idx), |(i, j, k)| {
            let (a, b, c) = (&all[i], &all[j], &all[k]);
            let left = a.direct_sum(b).direct_sum(c);
            let right = a.direct_sum(&b.direct_sum(c));
            assert_eq!(left.table, right.table);
            let (pa, pb, ps) = (a.power_dims(), b.power_dims(), a.direct_sum(b).power_dims());
            for m in 0..pa.len().min(pb.len()).min(ps.len()) {
                assert_eq!(ps[m], pa[m] + pb[m]);
            }
            Ok(())
        })
        .unwrap();
}

/// `exp(d)` for a nilpotent derivation `d`.
fn exp_nilpotent(d: &Matrix<Rational>) -> Option<Matrix<Rational>> {
    let n = d.rows();
    let mut term = Matrix::identity(n);
    let mut sum = Matrix::identity(n);
    for k in 1..=n {
        term = term.mul(d).scale(&Rational::new(1.into(), (k as i64).into()));
        sum = sum_matrices(&sum, &term);
    }
    term.mul(d).is_zero().then_some(sum)
}

fn sum_matrices(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    Matrix::from_fn(a.rows(), a.cols(), |i, j| a.get(i, j) + b.get(i, j))
}

fn automorphisms(b: &Algebra, scale: &Rational) -> Vec<Matrix<Rational>> {
    derivation_algebra(b)
        .basis
        .iter()
        .filter_map(|d| exp_nilpotent(&d.scale(scale)))
        .flat_map(|g| [g.transpose(), g])
        .filter(|g| {
            let q = g.inverse().unwrap();
            b.table.transform(g, &q) == b.table
        })
        .collect()
}

pub fn witnesses_survive_target_automorphisms() {
    let ws: Vec<DegenerationWitness> = edge_witnesses(Family::Dim3)
        .into_iter()
        .filter(|w| verify_witness(w).verified)
        .collect();
    runner(24)
        .run(&(0..ws.len(), rational()), |(i, s)| {
            let w = &ws[i];
            for g in automorphisms(&w.target, &s) {
                let moved = DegenerationWitness::new(
                    w.source.clone(),
                    w.target.clone(),
                    w.basis.left_mul_constant(&g).unwrap(),
                )
                .unwrap();
                assert!(verify_witness(&moved).verified, "{}", w.name());
            }
            Ok(())
        })
        .unwrap();
}

pub fn witness_invariants() {
    let budget = DEFAULT_BUDGET;
    for family in [Family::Dim2, Family::Dim3] {
        for w in edge_witnesses(family).into_iter().filter(|w| verify_witness(w).verified) {
            let to_zero = compose_with_scaling(&w);
            assert!(verify_witness(&to_zero).verified, "{}", w.name());
            if fingerprint(&w.source, budget).unwrap() != fingerprint(&w.target, budget).unwrap() {
                assert!(derivation_algebra(&w.source).dim < derivation_algebra(&w.target).dim);
            }
        }
    }
}

pub fn stable_specs_keep_their_members() {
    let specs = [
        ClosedSetSpec::parse(3, &[], &["S2*S2 ⊆ S3", "S2*S3 = 0"]).unwrap(),
        ClosedSetSpec::parse(3, &[[3, 3, 1], [3, 3, 2]], &["S1*S3 ⊆ S3"]).unwrap(),
        ClosedSetSpec::parse(3, &[], &["S1*S1 ⊆ S2"]).unwrap(),
    ];
    for s in &specs {
        assert!(borel_stability(s).stable, "{s}");
    }
    let algebras = dim3();
    let upper = prop::collection::vec(rational(), 6).prop_filter_map("singular", |v| {
        let m = Matrix::from_fn(3, 3, |i, j| {
            if i > j {
                Rational::zero()
            } else {
                v[i * 3 + j - i * (i + 1) / 2].clone()
            }
        });
        BasisChange::new(m).ok()
    });
    runner(48)
        .run(&(0..specs.len(), 0..algebras.len(), upper), |(s, a, g)| {
            let (s, a) = (&specs[s], &algebras[a]);
            if membership(s, a) {
                assert!(membership(s, &a.change_basis(&g).unwrap()));
            }
            Ok(())
        })
        .unwrap();
}

/// Every suite, by name.
#[allow(dead_code)]
pub const ALL: [(&str, fn()); 10] = [
    ("ring laws", ring_laws_hold),
    ("limits", limits_are_multiplicative),
    ("kernels and determinants", kernels_and_determinants),
    ("groebner vs gaussian elimination", groebner_agrees_with_gaussian_elimination),
    ("jordan identity under basis change", jordan_identity_is_basis_independent),
    ("jordan identity on random vectors", jordan_identity_on_random_vectors),
    ("direct sums", direct_sums),
    ("witnesses under target automorphisms", witnesses_survive_target_automorphisms),
    ("witness invariants", witness_invariants),
    ("stable specs keep their members", stable_specs_keep_their_members),
];
