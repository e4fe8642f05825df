//! Property checks shared by the proptest suite and the acceptance harness.
//! Each check runs `cases` random cases and reports the first failure.

#![allow(dead_code)]

use std::sync::Arc;
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lieshift::construct::{construct_theorem, ConstructOptions};
use lieshift::field::FieldElement;
use lieshift::invariants::{index, trdeg_symbols, Sampling};
use lieshift::liealg::presets::{preset, random_heisenberg_extension};
use lieshift::liealg::LieAlgebra;
use lieshift::pbw::{PBWElement, Pbw};
use lieshift::polyring::{poisson, PolyElement};

pub const SMALL: &[&str] = &[
    "abelian(2)",
    "aff1",
    "heisenberg(1)",
    "sl2",
    "gl2",
    "so3",
    "borel-sl2",
    "borel-sl3",
    "sl2-semidirect-h3",
];

pub fn algebra(k: usize) -> LieAlgebra {
    preset(SMALL[k % SMALL.len()]).expect("preset")
}

/// Either a preset or a random `l ⋉ h` built from `seed`.
pub fn some_algebra(choice: usize, seed: u64) -> LieAlgebra {
    if choice % 3 == 2 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 1 + (seed % 2) as usize;
        let l_dim = 1 + (seed / 2 % 3) as usize;
        random_heisenberg_extension(&mut rng, n, l_dim).0
    } else {
        algebra(choice)
    }
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn coeff_vec(raw: &[i64], dim: usize) -> Vec<FieldElement> {
    (0..dim)
        .map(|i| FieldElement::from_int(raw[i % raw.len()]))
        .collect()
}

/// Random polynomial of degree ≤ `deg` with small coefficients.
fn poly_from(raw: &[(u8, Vec<u8>)], dim: usize, deg: u32) -> PolyElement {
    let mut p = PolyElement::zero(dim);
    for (c, vars) in raw {
        let c = i64::from(*c % 7) - 3;
        if c == 0 {
            continue;
        }
        let mut e = vec![0i32; dim];
        for v in vars.iter().take(deg as usize) {
            e[*v as usize % dim] += 1;
        }
        p = p.add(&PolyElement::monomial(e, FieldElement::from_int(c)));
    }
    p
}

fn pbw_from(raw: &[(u8, Vec<u8>)], pbw: &Pbw, deg: u32) -> PBWElement {
    pbw.symmetrize(&poly_from(raw, pbw.dim(), deg))
}

fn terms_strategy() -> impl Strategy<Value = Vec<(u8, Vec<u8>)>> {
    prop::collection::vec((any::<u8>(), prop::collection::vec(any::<u8>(), 0..4)), 1..4)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

fn finish(r: Result<(), proptest::test_runner::TestError<impl std::fmt::Debug>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

/// Antisymmetry and the Jacobi identity on random vectors.
pub fn lie_bracket_axioms(cases: u32) -> Result<(), String> {
    let strat = (
        0usize..30,
        any::<u64>(),
        prop::collection::vec(-4i64..=4, 1..10),
        prop::collection::vec(-4i64..=4, 1..10),
        prop::collection::vec(-4i64..=4, 1..10),
    );
    finish(runner(cases).run(&strat, |(k, seed, a, b, c)| {
        let l = some_algebra(k, seed);
        let d = l.dim();
        let (a, b, c) = (coeff_vec(&a, d), coeff_vec(&b, d), coeff_vec(&c, d));
        let br = |x: &[FieldElement], y: &[FieldElement]| l.bracket(x, y).expect("same dim");
        let ab = br(&a, &b);
        let ba = br(&b, &a);
        check(ab.iter().zip(&ba).all(|(x, y)| (x + y).is_zero()), || {
            format!("antisymmetry fails in {}", l.name())
        })?;
        let j1 = br(&a, &br(&b, &c));
        let j2 = br(&b, &br(&c, &a));
        let j3 = br(&c, &br(&a, &b));
        let ok = (0..d).all(|i| (&(&j1[i] + &j2[i]) + &j3[i]).is_zero());
        check(ok, || format!("Jacobi fails in {}", l.name()))
    }))
}

/// Leibniz rule and Jacobi identity for the Poisson bracket on S(q).
pub fn poisson_axioms(cases: u32) -> Result<(), String> {
    let strat = (0usize..9, terms_strategy(), terms_strategy(), terms_strategy());
    finish(runner(cases).run(&strat, |(k, f, g, h)| {
        let l = algebra(k);
        let d = l.dim();
        let (f, g, h) = (poly_from(&f, d, 2), poly_from(&g, d, 2), poly_from(&h, d, 2));
        let pb = |a: &PolyElement, b: &PolyElement| poisson(&l, a, b);
        let lhs = pb(&f, &g.mul(&h));
        let rhs = pb(&f, &g).mul(&h).add(&g.mul(&pb(&f, &h)));
        check(lhs == rhs, || format!("Leibniz fails in {}", l.name()))?;
        let jac = pb(&f, &pb(&g, &h)).add(&pb(&g, &pb(&h, &f))).add(&pb(&h, &pb(&f, &g)));
        check(jac.is_zero(), || format!("Poisson Jacobi fails in {}", l.name()))?;
        check(pb(&f, &g).add(&pb(&g, &f)).is_zero(), || "Poisson antisymmetry".into())
    }))
}

/// The principal symbol of a symmetrisation is the top form.
pub fn symbol_of_symmetrization(cases: u32) -> Result<(), String> {
    let strat = (0usize..9, terms_strategy());
    finish(runner(cases).run(&strat, |(k, f)| {
        let l = algebra(k);
        let pbw = Pbw::new(Arc::new(l.clone()));
        let f = poly_from(&f, l.dim(), 3);
        let u = pbw.symmetrize(&f);
        check(u.principal_symbol() == f.leading_form(), || {
            format!("gr(symm f) != top(f) in {}", l.name())
        })
    }))
}

/// `[x, symm(f)] = symm({x, f})` for basis vectors x.
pub fn symmetrization_equivariance(cases: u32) -> Result<(), String> {
    let strat = (0usize..9, any::<u8>(), terms_strategy());
    finish(runner(cases).run(&strat, |(k, i, f)| {
        let l = algebra(k);
        let pbw = Pbw::new(Arc::new(l.clone()));
        let i = i as usize % l.dim();
        let f = poly_from(&f, l.dim(), 3);
        let lhs = pbw.commutator(&pbw.generator(i), &pbw.symmetrize(&f));
        let rhs = pbw.symmetrize(&poisson(&l, &PolyElement::var(l.dim(), i), &f));
        check(lhs == rhs, || format!("symm not equivariant in {}", l.name()))
    }))
}

/// `gr(uv) = gr(u) gr(v)`.
pub fn symbol_multiplicativity(cases: u32) -> Result<(), String> {
    let strat = (0usize..9, terms_strategy(), terms_strategy());
    finish(runner(cases).run(&strat, |(k, f, g)| {
        let l = algebra(k);
        let pbw = Pbw::new(Arc::new(l.clone()));
        let u = pbw_from(&f, &pbw, 2);
        let v = pbw_from(&g, &pbw, 2);
        let lhs = pbw.multiply(&u, &v).principal_symbol();
        let rhs = u.principal_symbol().mul(&v.principal_symbol());
        check(lhs == rhs, || format!("gr not multiplicative in {}", l.name()))
    }))
}

/// Certified sets for a few small algebras, computed once.
fn certified() -> &'static Vec<(LieAlgebra, Vec<PBWElement>, usize)> {
    static SETS: OnceLock<Vec<(LieAlgebra, Vec<PBWElement>, usize)>> = OnceLock::new();
    SETS.get_or_init(|| {
        ["abelian(2)", "aff1", "heisenberg(1)", "borel-sl2", "sl2", "gl2", "sl2-semidirect-h3"]
            .iter()
            .map(|name| {
                let l = preset(name).expect("preset");
                let cert = construct_theorem(&l, &ConstructOptions::default()).expect("certified");
                assert!(cert.ok(), "{name} does not certify");
                let gens = cert.generators.associative_elements().expect("associative").to_vec();
                let b = cert.b.to_integer().try_into().expect("small b");
                (l, gens, b)
            })
            .collect()
    })
}

/// Products of certified generators never exceed `b` in transcendence degree.
pub fn trdeg_bounded_by_b(cases: u32) -> Result<(), String> {
    let strat = (0usize..7, prop::collection::vec((any::<u8>(), any::<u8>(), 1u32..3), 1..6));
    finish(runner(cases).run(&strat, |(k, picks)| {
        let (l, gens, b) = &certified()[k];
        let pbw = Pbw::new(Arc::new(l.clone()));
        let els: Vec<PBWElement> = picks
            .iter()
            .map(|(i, j, p)| {
                let a = &gens[*i as usize % gens.len()];
                let c = &gens[*j as usize % gens.len()];
                pbw.multiply(&pbw.pow(a, *p), c)
            })
            .collect();
        let t = trdeg_symbols(&els, l.dim(), &Sampling::default()).value;
        check(t <= *b, || format!("trdeg {t} > b {b} in {}", l.name()))
    }))
}

/// ind(a ⊕ b) = ind a + ind b.
pub fn index_additive(cases: u32) -> Result<(), String> {
    let strat = (0usize..30, any::<u64>(), 0usize..30, any::<u64>());
    finish(runner(cases).run(&strat, |(k1, s1, k2, s2)| {
        let a = some_algebra(k1, s1);
        let b = some_algebra(k2, s2);
        let s = Sampling::default();
        let sum = index(&a.direct_sum(&b), &s).value;
        let parts = index(&a, &s).value + index(&b, &s).value;
        check(sum == parts, || {
            format!("ind({} ⊕ {}) = {sum}, parts give {parts}", a.name(), b.name())
        })
    }))
}

pub const CASES: u32 = 100;

/// Every suite, by name.
pub fn all_suites() -> Vec<(&'static str, fn(u32) -> Result<(), String>)> {
    vec![
        ("bracket antisymmetry and Jacobi", lie_bracket_axioms),
        ("Poisson Leibniz and Jacobi", poisson_axioms),
        ("gr(symm f) = f", symbol_of_symmetrization),
        ("symm is ad-equivariant", symmetrization_equivariance),
        ("gr is multiplicative", symbol_multiplicativity),
        ("trdeg <= b on certified sets", trdeg_bounded_by_b),
        ("index additive on direct sums", index_additive),
    ]
}
