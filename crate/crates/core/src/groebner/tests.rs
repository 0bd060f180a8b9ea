use super::*;
use crate::arith::{Fp, Ring};
use crate::poly::parse_expr;

fn fp_ring(p: u64, vars: &[&str]) -> PolyRing<Fp> {
    PolyRing::new(Fp::new(p), vars, MonomialOrder::GrevLex)
}

fn polys(r: &PolyRing<Fp>, src: &[&str]) -> Vec<Polynomial<Fp>> {
    src.iter().map(|s| parse_expr(s, r).unwrap()).collect()
}

fn ideal(r: &PolyRing<Fp>, src: &[&str]) -> Ideal<Fp> {
    Ideal::new(r.clone(), polys(r, src)).unwrap()
}

fn lim() -> GroebnerLimits {
    GroebnerLimits::default()
}

#[test]
fn already_reduced_inputs() {
    let r = fp_ring(101, &["x", "y"]);
    for ord in [MonomialOrder::Lex, MonomialOrder::GrevLex] {
        let g = buchberger(&ideal(&r, &["x", "y"]), ord, &lim()).unwrap();
        assert_eq!(g.basis().len(), 2);
    }
    let g = buchberger(&ideal(&r, &["x - y", "y^2 - 1"]), MonomialOrder::Lex, &lim()).unwrap();
    let want = polys(&r.with_order(MonomialOrder::Lex), &["y^2 - 1", "x - y"]);
    assert_eq!(g.basis(), &want[..]);
}

#[test]
fn normal_forms() {
    let r = fp_ring(101, &["x", "y"]);
    let g = buchberger(&ideal(&r, &["x", "y"]), MonomialOrder::GrevLex, &lim()).unwrap();
    assert!(g.normal_form(&r.zero()).is_zero());
    assert_eq!(g.normal_form(&r.one()), r.one());
    assert!(!g.is_unit());
}

#[test]
fn cofactor_transcript_reconstructs_input() {
    let r = fp_ring(31, &["x", "y", "z"]);
    let i = ideal(&r, &["x^2 + y*z - 3", "x*y - z^2 + 1", "y^3 - x*z"]);
    let g = buchberger(&i, MonomialOrder::GrevLex, &lim()).unwrap();
    let p = parse_expr("x^4*y + 7*x*y*z^3 - z + 2", &r).unwrap();
    let (rem, cf) = g.normal_form_with_cofactors(&p);
    let mut acc = rem.clone();
    for (h, b) in cf.iter().zip(g.basis()) {
        acc = acc.add(&h.mul(b));
    }
    assert_eq!(acc, p.in_ring(g.ring()));
    assert_eq!(rem, g.normal_form(&p));
}

#[test]
fn every_s_polynomial_reduces_to_zero() {
    let r = fp_ring(7, &["x", "y", "z"]);
    let i = ideal(&r, &["x^3 - y*z^2 + 1", "x*y^2 - z^3", "x^2*z + y - 2"]);
    for ord in [MonomialOrder::Lex, MonomialOrder::GrevLex, MonomialOrder::Block(1)] {
        let g = buchberger(&i, ord, &lim()).unwrap();
        let b = g.basis();
        for a in 0..b.len() {
            for c in a + 1..b.len() {
                let l = b[a].lm().unwrap().lcm(b[c].lm().unwrap());
                let s = b[a]
                    .mul_term(&1, &b[a].lm().unwrap().quotient_of(&l))
                    .sub(&b[c].mul_term(&1, &b[c].lm().unwrap().quotient_of(&l)));
                assert!(g.normal_form(&s).is_zero());
            }
            // reduced: monic, and no term of one element divisible by another lm
            assert_eq!(b[a].lc(), Some(&1));
            for (c, q) in b.iter().enumerate() {
                if c != a {
                    assert!(b[a].terms().iter().all(|(m, _)| !q.lm().unwrap().divides(m)));
                }
            }
        }
        for p in i.gens() {
            assert!(g.contains(p));
        }
    }
}

#[test]
fn rationals_stay_exact() {
    use crate::arith::RationalField;
    let r = PolyRing::new(RationalField, &["x", "y"], MonomialOrder::GrevLex);
    let i = Ideal::new(
        r.clone(),
        vec![
            parse_expr("3*x^2 - 2*y", &r).unwrap(),
            parse_expr("x*y - 5", &r).unwrap(),
        ],
    )
    .unwrap();
    let g = buchberger(&i, MonomialOrder::Lex, &lim()).unwrap();
    // y^3 = 75/2 on the variety, so the eliminant is y^3 - 75/2
    let elim = g.basis()[0].clone();
    assert_eq!(elim, parse_expr("y^3 - 75/2", &r.with_order(MonomialOrder::Lex)).unwrap());
}

#[test]
fn resource_cap_is_reported() {
    let r = fp_ring(101, &["x", "y", "z"]);
    let i = ideal(&r, &["x^3 - y*z^2 + 1", "x*y^2 - z^3", "x^2*z + y - 2"]);
    let caps = GroebnerLimits {
        max_reductions: Some(2),
        ..Default::default()
    };
    match buchberger(&i, MonomialOrder::Lex, &caps) {
        Err(GroebnerError::ResourcesExhausted { .. }) => {}
        other => panic!("expected exhaustion, got {other:?}"),
    }
}

#[test]
fn saturation_examples() {
    let r = fp_ring(101, &["x", "y"]);
    let s = saturate(&ideal(&r, &["x*y"]), &ideal(&r, &["x"]), &lim()).unwrap();
    assert!(ideals_equal(&s, &ideal(&r, &["y"]), &lim()).unwrap());
    let i = ideal(&r, &["x^2 - y", "x*y^2"]);
    let s = saturate(&i, &Ideal::unit(r.clone()), &lim()).unwrap();
    assert!(ideals_equal(&s, &i, &lim()).unwrap());
    let s1 = saturate_by_element(&ideal(&r, &["x*y"]), &r.var(0), &lim()).unwrap();
    let e = elimination_ideal(
        &{
            let r3 = fp_ring(101, &["t", "x", "y"]);
            ideal(&r3, &["x*y", "t*x - 1"])
        },
        &[1, 2],
        &lim(),
    )
    .unwrap();
    assert_eq!(e.gens().len(), 1);
    assert_eq!(e.gens()[0].to_string().replace(' ', ""), "y");
    assert!(ideals_equal(&s1, &ideal(&r, &["y"]), &lim()).unwrap());
}

#[test]
fn saturation_is_idempotent_and_matches_bayer() {
    let r = fp_ring(101, &["x", "y", "z"]);
    // a conic together with an embedded point at the origin of the z-chart
    let i = ideal(&r, &["x*z - y^2", "x^3", "x^2*y"]);
    let z = ideal(&r, &["z"]);
    let s = saturate(&i, &z, &lim()).unwrap();
    let s2 = saturate(&s, &z, &lim()).unwrap();
    assert!(ideals_equal(&s, &s2, &lim()).unwrap());
    let bayer = saturate_by_variable(&i, 2, &lim()).unwrap();
    assert!(ideals_equal(&s, &bayer.to_ideal(), &lim()).unwrap());
}

#[test]
fn eliminating_a_variable() {
    let r = fp_ring(101, &["x", "y"]);
    let e = elimination_ideal(&ideal(&r, &["x - y", "y^2 - 1"]), &[0], &lim()).unwrap();
    assert!(ideals_equal(&e, &ideal(&r, &["x^2 - 1"]), &lim()).unwrap());
}

#[test]
fn eliminant_roots_match_solutions() {
    // zero-dimensional system over F101; compare roots of the eliminant in x
    // with the x-coordinates of solutions found by exhaustive search
    let p = 101u64;
    let r = fp_ring(p, &["x", "y"]);
    let i = ideal(&r, &["x^2 + y^2 - 25", "x*y - 12"]);
    let e = elimination_ideal(&i, &[0], &lim()).unwrap();
    assert_eq!(e.gens().len(), 1);
    let u = e.gens()[0].to_univariate(0).unwrap();
    let k = Fp::new(p);
    let mut roots = Vec::new();
    let mut sols = Vec::new();
    for x in 0..p {
        if k.is_zero(&u.eval(&x)) {
            roots.push(x);
        }
        for y in 0..p {
            if i.gens().iter().all(|g| g.evaluate(&[x, y]).unwrap() == 0) && !sols.contains(&x) {
                sols.push(x);
            }
        }
    }
    assert_eq!(roots, sols);
    assert_eq!(u.degree(), Some(4));
}

#[test]
fn intersections() {
    let r = fp_ring(101, &["x", "y"]);
    let xy = ideal(&r, &["x*y"]);
    let a = ideal_intersect(&ideal(&r, &["x"]), &ideal(&r, &["y"]), &lim()).unwrap();
    assert!(ideals_equal(&a, &xy, &lim()).unwrap());
    let i = ideal(&r, &["x^2 - y", "y^3"]);
    let b = ideal_intersect(&i, &i, &lim()).unwrap();
    assert!(ideals_equal(&b, &i, &lim()).unwrap());
    let c = ideal_intersect(&ideal(&r, &["x^2"]), &xy, &lim()).unwrap();
    let want = ideal(&r, &["x^2*y"]);
    let gc = c.groebner(MonomialOrder::GrevLex, &lim()).unwrap();
    let gw = want.groebner(MonomialOrder::GrevLex, &lim()).unwrap();
    assert!(want.gens().iter().all(|g| gc.contains(g)));
    assert!(c.gens().iter().all(|g| gw.contains(g)));
}

#[test]
fn quotient_dimensions() {
    let r = fp_ring(101, &["x", "y"]);
    let d = |src: &[&str]| quotient_dimension(&ideal(&r, src), MonomialOrder::GrevLex, &lim()).unwrap();
    assert_eq!(d(&["x^2", "y"]), QuotientDimension::Finite(2));
    assert_eq!(d(&["x"]), QuotientDimension::Infinite);
    assert_eq!(d(&["1"]), QuotientDimension::Finite(0));
    assert_eq!(d(&["x^2 + y^2 - 25", "x*y - 12"]), QuotientDimension::Finite(4));
}

/// Projective points of `V(I)` over `F_p`, by exhaustion.
fn has_projective_point(i: &Ideal<Fp>, p: u64) -> bool {
    let n = i.ring().nvars();
    let mut v = vec![0u64; n];
    loop {
        // normalized: first nonzero coordinate is 1
        let first = v.iter().position(|&c| c != 0);
        if first.is_some_and(|f| v[f] == 1) && i.gens().iter().all(|g| g.evaluate(&v).unwrap() == 0) {
            return true;
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return false;
            }
            v[pos] += 1;
            if v[pos] < p {
                break;
            }
            v[pos] = 0;
            pos += 1;
        }
    }
}

#[test]
fn projective_emptiness() {
    let r = fp_ring(7, &["x", "y", "z"]);
    let c = is_projectively_empty(&ideal(&r, &["x", "y", "z"]), &lim()).unwrap();
    assert!(c.is_empty());
    // smooth conic: the Jacobian ideal is empty
    let f = parse_expr("x^2 + y^2 + 3*z^2", &r).unwrap();
    let jac: Vec<Polynomial<Fp>> = std::iter::once(f.clone())
        .chain((0..3).map(|v| f.partial_derivative(v)))
        .collect();
    assert!(is_projectively_empty(&Ideal::new(r.clone(), jac).unwrap(), &lim())
        .unwrap()
        .is_empty());
    // nodal cubic y^2 z = x^3 + x^2 z is singular at (0:0:1)
    let g = parse_expr("y^2*z - x^3 - x^2*z", &r).unwrap();
    let jac: Vec<Polynomial<Fp>> = std::iter::once(g.clone())
        .chain((0..3).map(|v| g.partial_derivative(v)))
        .collect();
    let cert = is_projectively_empty(&Ideal::new(r.clone(), jac).unwrap(), &lim()).unwrap();
    match &cert {
        EmptinessCertificate::NonEmpty { chart, saturation } => {
            assert_eq!(*chart, 2);
            assert!(!saturation.is_unit());
        }
        _ => panic!("node not detected"),
    }
    assert!(cert.report().contains("nonempty"));
    assert!(matches!(
        is_projectively_empty(&ideal(&r, &["x + 1"]), &lim()),
        Err(GroebnerError::NonHomogeneous)
    ));
}

#[test]
fn emptiness_agrees_with_point_search() {
    // every point over the closure of these loci is rational, so the
    // exhaustive search decides emptiness
    for p in [2u64, 3, 5] {
        let r = fp_ring(p, &["x", "y", "z"]);
        let cases: &[&[&str]] = &[
            &["x", "y"],
            &["x", "y", "z"],
            &["x + y", "y + z", "x + z"],
            &["x*y", "y*z", "x*z"],
            &["x^2", "y^2", "z^2"],
            &["x*y - z^2", "x"],
            &["x^2 - y*z", "y^2 - x*z", "z^2 - x*y"],
        ];
        for c in cases {
            let i = ideal(&r, c);
            let empty = is_projectively_empty(&i, &lim()).unwrap().is_empty();
            let rational = has_projective_point(&i, p);
            if rational {
                assert!(!empty, "{c:?} over F{p}");
            } else {
                assert!(empty, "{c:?} over F{p}");
            }
        }
    }
}

#[test]
fn deterministic_across_runs_and_threads() {
    let r = fp_ring(101, &["x", "y", "z"]);
    let i = ideal(&r, &["x^3 - y*z^2 + 1", "x*y^2 - z^3", "x^2*z + y - 2"]);
    let first = buchberger(&i, MonomialOrder::GrevLex, &lim()).unwrap().report();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let par: Vec<String> = pool.install(|| {
        use rayon::prelude::*;
        (0..8)
            .into_par_iter()
            .map(|_| buchberger(&i, MonomialOrder::GrevLex, &lim()).unwrap().report())
            .collect()
    });
    assert!(par.iter().all(|s| *s == first));
    let j = ideal(&r, &["x*y", "y*z"]);
    let a = saturate(&i, &j, &lim()).unwrap();
    let b = pool.install(|| saturate(&i, &j, &lim()).unwrap());
    assert_eq!(a.gens(), b.gens());
}
