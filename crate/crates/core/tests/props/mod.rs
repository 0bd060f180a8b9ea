//! Property suites shared by the core proptests and the acceptance target.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

use k3bm_core::arith::{crt_combine, rational_reconstruct, ExtField, Fp, IntegerRing, RationalField};
use k3bm_core::groebner::{ideals_equal, saturate, GroebnerError, GroebnerLimits, Ideal};
use k3bm_core::interp::{reconstruct, specialize, ReconstructionProblem};
use k3bm_core::k3::{count_points_direct, count_points_double_cover};
use k3bm_core::poly::{format_infix, format_poly, parse_expr, parse_poly, Monomial, MonomialOrder, PolyRing, Polynomial};

pub type Outcome = Result<(), String>;

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn outcome<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Outcome {
    r.map_err(|e| e.to_string())
}

fn zring() -> PolyRing<IntegerRing> {
    PolyRing::new(IntegerRing, &["x", "y", "z"], MonomialOrder::GrevLex)
}

fn fring() -> PolyRing<Fp> {
    PolyRing::new(Fp::new(101), &["x", "y", "z"], MonomialOrder::GrevLex)
}

type Terms = Vec<([u16; 3], i64)>;

fn terms(max_exp: u16, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec(([0..=max_exp, 0..=max_exp, 0..=max_exp], -20i64..=20), 0..=max_terms)
}

fn zpoly(t: &Terms) -> Polynomial<IntegerRing> {
    zring().from_terms(t.iter().map(|(e, c)| (Monomial::from_exps(e), BigInt::from(*c))))
}

fn fpoly(t: &Terms) -> Polynomial<Fp> {
    fring().from_terms(t.iter().map(|(e, c)| (Monomial::from_exps(e), c.rem_euclid(101) as u64)))
}

/// Random ternary form of degree exactly `d`.
fn form(d: u16) -> impl Strategy<Value = Polynomial<IntegerRing>> {
    let mon = (0..=d).prop_flat_map(move |i| (Just(i), 0..=d - i)).prop_map(move |(i, j)| [i, j, d - i - j]);
    (prop::collection::vec((mon, -9i64..=9), 1..12), -9i64..=9).prop_map(move |(t, c)| {
        let lead = (Monomial::from_exps(&[d, 0, 0]), BigInt::from(if c == 0 { 1 } else { c }));
        zring().from_terms(t.into_iter().map(|(e, c)| (Monomial::from_exps(&e), BigInt::from(c))).chain([lead]))
    })
}

pub fn ring_axioms(cases: u32) -> Outcome {
    outcome(runner(cases).run(&(terms(3, 6), terms(3, 6), terms(3, 6)), |(a, b, c)| {
        let (a, b, c) = (zpoly(&a), zpoly(&b), zpoly(&c));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&zring().one()), a.clone());
        // reduction mod p is a ring map
        let r = fring();
        prop_assert_eq!(a.mul(&b).reduce_mod(&r), a.reduce_mod(&r).mul(&b.reduce_mod(&r)));
        Ok(())
    }))
}

pub fn exact_division(cases: u32) -> Outcome {
    outcome(runner(cases).run(&(terms(3, 6), terms(2, 4)), |(a, b)| {
        let (a, b) = (zpoly(&a), zpoly(&b));
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.mul(&b).div_exact(&b), Some(a.clone()));
        let (a, b) = (a.reduce_mod(&fring()), b.reduce_mod(&fring()));
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.mul(&b).div_exact(&b), Some(a));
        Ok(())
    }))
}

fn limits() -> GroebnerLimits {
    GroebnerLimits {
        max_basis: Some(400),
        max_degree: Some(24),
        max_reductions: Some(20_000),
    }
}

fn ideal(gens: &[Terms]) -> Ideal<Fp> {
    Ideal::new(fring(), gens.iter().map(fpoly).collect()).unwrap()
}

/// Exhaustion on an unlucky random ideal is not a counterexample.
fn skip_exhausted<T>(r: Result<T, GroebnerError>) -> Result<Option<T>, TestCaseError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(GroebnerError::ResourcesExhausted { .. }) => Ok(None),
        Err(e) => Err(TestCaseError::fail(e.to_string())),
    }
}

pub fn groebner_determinism(cases: u32) -> Outcome {
    outcome(runner(cases).run(&prop::collection::vec(terms(2, 4), 1..=3), |gens| {
        let i = ideal(&gens);
        let mut rev = gens.clone();
        rev.reverse();
        let j = ideal(&rev);
        let Some(a) = skip_exhausted(i.groebner(MonomialOrder::GrevLex, &limits()))? else {
            return Ok(());
        };
        let Some(b) = skip_exhausted(i.groebner(MonomialOrder::GrevLex, &limits()))? else {
            return Ok(());
        };
        let Some(c) = skip_exhausted(j.groebner(MonomialOrder::GrevLex, &limits()))? else {
            return Ok(());
        };
        prop_assert_eq!(a.basis(), b.basis());
        prop_assert_eq!(a.basis(), c.basis());
        for g in i.gens() {
            prop_assert!(a.contains(g));
        }
        Ok(())
    }))
}

pub fn saturation_idempotence(cases: u32) -> Outcome {
    outcome(runner(cases).run(&(prop::collection::vec(terms(2, 4), 1..=2), terms(1, 3)), |(gens, j)| {
        let i = ideal(&gens);
        let j = ideal(&[j]);
        let Some(s) = skip_exhausted(saturate(&i, &j, &limits()))? else {
            return Ok(());
        };
        let Some(ss) = skip_exhausted(saturate(&s, &j, &limits()))? else {
            return Ok(());
        };
        if let Some(eq) = skip_exhausted(ideals_equal(&s, &ss, &limits()))? {
            prop_assert!(eq);
        }
        // I is contained in its saturation
        if let Some(g) = skip_exhausted(s.groebner(MonomialOrder::GrevLex, &limits()))? {
            for f in i.gens() {
                prop_assert!(g.contains(f));
            }
        }
        Ok(())
    }))
}

const PRIMES: [i64; 8] = [101, 103, 107, 109, 113, 127, 131, 137];

pub fn crt_and_reconstruction(cases: u32) -> Outcome {
    let residues = prop::collection::vec(0i64..100, 1..=PRIMES.len());
    outcome(runner(cases).run(&(residues, -3000i64..3000, 1i64..3000), |(rs, a, b)| {
        let pairs: Vec<(BigInt, BigInt)> = rs
            .iter()
            .zip(PRIMES)
            .map(|(r, p)| (BigInt::from(*r), BigInt::from(p)))
            .collect();
        let c = crt_combine(&pairs).map_err(|e| TestCaseError::fail(e.to_string()))?;
        for (r, n) in &pairs {
            prop_assert_eq!(c.value.mod_floor(n), r.clone());
        }
        prop_assert!(c.value >= BigInt::from(0) && c.value < c.modulus);
        // a/b is recovered when 2 max(|a|, b)^2 < m
        let m: BigInt = PRIMES.iter().take(4).map(|&p| BigInt::from(p)).product();
        let q = BigRational::new(BigInt::from(a), BigInt::from(b));
        let binv = BigInt::from(b).extended_gcd(&m).x;
        let bound = BigInt::from(a.abs().max(b));
        if BigInt::from(2) * &bound * &bound < m && BigInt::from(b).gcd(&m) == BigInt::from(1) {
            let r = (BigInt::from(a) * binv).mod_floor(&m);
            prop_assert_eq!(rational_reconstruct(&r, &m), Some(q));
        }
        Ok(())
    }))
}

pub fn reconstruct_specialize(cases: u32) -> Outcome {
    let strat = (1u16..=12).prop_flat_map(form);
    outcome(runner(cases).run(&strat, |f| {
        let d = f.total_degree().unwrap();
        let mut samples = Vec::new();
        for k in 0..=d as i64 {
            let s = specialize(&f, &BigInt::from(1), &BigInt::from(k), true)
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
            samples.push(s);
        }
        let rec = reconstruct(&ReconstructionProblem { degree: d, samples })
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        let qr = zring().with_coeffs(RationalField);
        let scale = rec.scale.clone().ok_or_else(|| TestCaseError::fail("scale unknown"))?;
        prop_assert_eq!(rec.form.to_rational(&qr).scale(&scale), f.to_rational(&qr));
        Ok(())
    }))
}

/// Odd prime powers up to 169.
fn small_fields() -> Vec<(u64, usize)> {
    let mut out: Vec<(u64, usize)> = (3..=167u64).filter(|&p| k3bm_core::arith::is_prime_u64(p)).map(|p| (p, 1)).collect();
    out.extend([(3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2), (11, 2), (13, 2)]);
    out
}

pub fn dual_point_counts(cases: u32) -> Outcome {
    let fields = small_fields();
    let strat = (0..fields.len(), form(6));
    outcome(runner(cases).run(&strat, |(i, f)| {
        let (p, k) = fields[i];
        let base = zring().from_terms([
            (Monomial::from_exps(&[0, 6, 0]), BigInt::from(1)),
            (Monomial::from_exps(&[0, 0, 6]), BigInt::from(1)),
        ]);
        let f = f.add(&base);
        let budget = 1 << 24;
        let (a, b) = if k == 1 {
            let fq = Fp::new(p);
            (count_points_double_cover(&f, &fq, budget), count_points_direct(&f, &fq, budget))
        } else {
            let fq = ExtField::of_degree(Fp::new(p), k);
            (count_points_double_cover(&f, &fq, budget), count_points_direct(&f, &fq, budget))
        };
        match (a, b) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b, "q = {}^{}", p, k),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "routes disagree on failure: {:?} vs {:?}", a, b),
        }
        Ok(())
    }))
}

pub fn text_round_trip(cases: u32) -> Outcome {
    outcome(runner(cases).run(&terms(5, 10), |t| {
        let f = zpoly(&t);
        let back = parse_poly(&format_poly(&f, Some("round trip")), IntegerRing, MonomialOrder::GrevLex)
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(&back, &f);
        let back = parse_expr(&format_infix(&f), &zring()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(back, f);
        Ok(())
    }))
}

pub type Suite = (&'static str, fn(u32) -> Outcome, u32);

/// Every suite with its case count.
pub fn all() -> Vec<Suite> {
    vec![
        ("ring axioms", ring_axioms as fn(u32) -> Outcome, 128),
        ("exact division", exact_division, 128),
        ("groebner determinism", groebner_determinism, 48),
        ("saturation idempotence", saturation_idempotence, 32),
        ("crt and rational reconstruction", crt_and_reconstruction, 256),
        ("reconstruct after specialize", reconstruct_specialize, 100),
        ("dual point counts", dual_point_counts, 48),
        ("text round trip", text_round_trip, 128),
    ]
}
