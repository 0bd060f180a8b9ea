use super::*;
use crate::arith::RationalField;
use crate::data::DataDir;
use crate::fourfold::{build_surface_ideal_z, equal_up_to_sign, to_primitive_integer};
use crate::groebner::GroebnerLimits;
use crate::poly::parse_expr;

fn branch() -> Polynomial<IntegerRing> {
    DataDir::open_default().unwrap().poly_z("f.poly").unwrap()
}

fn lines(n: usize) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    let mut z = 0i64;
    while out.len() < n {
        for y in 1..=z.max(1) {
            if out.len() < n && num_integer::gcd(y, z) == 1 {
                out.push((BigInt::from(y), BigInt::from(z)));
            }
        }
        z += 1;
    }
    out
}

fn samples(f: &Polynomial<IntegerRing>, n: usize, known: bool) -> Vec<SpecializationSample> {
    lines(n).iter().map(|(y, z)| specialize(f, y, z, known).unwrap()).collect()
}

#[test]
fn exact_recovery_of_a_square() {
    let f = branch();
    let f2 = f.mul(&f);
    let problem = ReconstructionProblem { degree: 12, samples: samples(&f2, 13, true) };
    let rec = reconstruct(&problem).unwrap();
    assert_eq!(rec.columns, 92);
    assert_eq!(rec.rank, 91);
    let qr = f2.ring().with_coeffs(RationalField);
    let exact = rec.form.to_rational(&qr).scale(rec.scale.as_ref().unwrap());
    assert_eq!(exact, f2.to_rational(&qr));
    // twelve lines through a point leave room for the product of those lines
    let short = ReconstructionProblem { degree: 12, samples: samples(&f2, 12, true) };
    assert!(matches!(reconstruct(&short), Err(InterpError::Underdetermined { nullity: 2, .. })));
}

#[test]
fn unknown_scales_give_the_same_form() {
    let r = ternary_ring();
    let f = parse_expr("3*x^3 - 2*x*y*z + 5*y^2*z - z^3 + x^2*y", &r).unwrap();
    let mut ss = samples(&f, 6, false);
    for (i, s) in ss.iter_mut().enumerate() {
        let k = BigRational::new(BigInt::from(i as i64 + 2), BigInt::from(7));
        s.coeffs.iter_mut().for_each(|c| *c = &*c * &k);
    }
    let rec = reconstruct(&ReconstructionProblem { degree: 3, samples: ss }).unwrap();
    assert_eq!(rec.form, f);
    assert_eq!(rec.scale, None);
    // one exact sample pins the scale
    let mut mixed = samples(&f.scale(&BigInt::from(-4)), 5, false);
    mixed.push(specialize(&f.scale(&BigInt::from(-4)), &BigInt::from(5), &BigInt::from(2), true).unwrap());
    let rec = reconstruct(&ReconstructionProblem { degree: 3, samples: mixed }).unwrap();
    assert_eq!(rec.form, f);
    assert_eq!(rec.scale, Some(BigRational::from_integer(BigInt::from(-4))));
}

#[test]
fn degenerate_problems() {
    let r = ternary_ring();
    let c = parse_expr("7", &r).unwrap();
    let rec = reconstruct(&ReconstructionProblem { degree: 0, samples: samples(&c, 1, true) }).unwrap();
    assert_eq!(rec.form, r.one());
    assert_eq!(rec.scale, Some(BigRational::from_integer(BigInt::from(7))));
    let q = parse_expr("x^2 + y*z", &r).unwrap();
    let s = specialize(&q, &BigInt::from(1), &BigInt::from(1), false).unwrap();
    let twice = vec![s.clone(), s.clone()];
    assert!(matches!(
        reconstruct(&ReconstructionProblem { degree: 2, samples: twice }),
        Err(InterpError::Underdetermined { .. })
    ));
    let mut bad = samples(&q, 4, true);
    bad[0].coeffs.push(BigRational::from_integer(BigInt::from(1)));
    assert!(matches!(
        reconstruct(&ReconstructionProblem { degree: 2, samples: bad }),
        Err(InterpError::BadSample { .. })
    ));
    assert!(matches!(
        SpecializationSample::new(BigInt::from(2), BigInt::from(4), vec![], true),
        Err(InterpError::BadSample { .. })
    ));
}

#[test]
fn sample_text_round_trip() {
    let s = SpecializationSample::new(
        BigInt::from(-3),
        BigInt::from(2),
        vec![BigRational::new(BigInt::from(5), BigInt::from(-6)), BigRational::from_integer(BigInt::from(0))],
        false,
    )
    .unwrap();
    assert_eq!(s.to_row(), "-3 2 0 -5/6 0");
    let text = format!("# header\n\n{}\n3 1 1 1 2 3\n", s.to_row());
    let parsed = parse_samples(&text).unwrap();
    assert_eq!(parsed[0], s);
    assert!(parsed[1].scale_known);
    assert!(SpecializationSample::parse_row("1 1 maybe 2").is_err());
    assert!(SpecializationSample::parse_row("1").is_err());
}

#[test]
fn component_extraction() {
    let f = branch();
    let r = f.ring().clone();
    let opts = ExtractOptions::default();
    let v = extract_smooth_sextic(&f.mul(&f).scale(&BigInt::from(-3)), &f, &opts).unwrap();
    assert!(equal_up_to_sign(&v.cofactor_form, &f));
    assert!(v.candidate_smooth);
    assert_eq!(v.candidate_smooth_at.len(), 2);
    assert!(!v.cofactor_may_be_cuspidal());
    let cusp = parse_expr("(y^2*z - x^3)^2", &r).unwrap();
    let v = extract_smooth_sextic(&f.mul(&cusp), &f, &opts).unwrap();
    assert!(equal_up_to_sign(&v.cofactor_form, &cusp));
    assert!(v.cofactor_may_be_cuspidal());
    let g = parse_expr("x^6 - 2*x^3*y^2*z + 3*y^6 + x*y*z^4 - 5*z^6 + y^3*z^3", &r).unwrap();
    let v = extract_smooth_sextic(&f.mul(&g), &f, &opts).unwrap();
    assert!(equal_up_to_sign(&v.cofactor_form, &g));
    let perturbed = f.mul(&f).add(&parse_expr("x^12", &r).unwrap());
    assert_eq!(extract_smooth_sextic(&perturbed, &f, &opts).unwrap_err(), InterpError::NotDivisible);
    let fx = f.mul(&r.var(0));
    let big = fx.mul(&parse_expr("y^5", &r).unwrap());
    assert_eq!(extract_smooth_sextic(&big, &fx, &opts).unwrap_err(), InterpError::CofactorDegree(5));
}

fn conic_family() -> FiberFamily {
    let ring = PolyRing::new(IntegerRing, &["t0", "t1", "t2", "x", "y", "z"], MonomialOrder::GrevLex);
    let e = parse_expr("x^2*t0 + y^2*(t0 + t1) + z^2*(t0 + t2)", &ring).unwrap();
    FiberFamily::new(ring, vec![e], 1, vec![]).unwrap()
}

#[test]
fn conic_discriminant_over_q_and_by_crt() {
    let fam = conic_family();
    let run = discriminant_oracle(&fam, &BigInt::from(3), &BigInt::from(1), &OracleOptions::default()).unwrap();
    assert_eq!(run.route, "Q");
    // t0 * (t0 + t1) * (t0 + t2) on the line (x : 3 : 1)
    let want: Vec<BigRational> = [0, 3, 4, 1].iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
    assert_eq!(run.sample.coeffs, want);
    let opts = OracleOptions {
        primes: vec![101, 103],
        check_primes: vec![107, 109],
        limits: GroebnerLimits::default(),
    };
    let crt = discriminant_oracle(&fam, &BigInt::from(3), &BigInt::from(1), &opts).unwrap();
    assert_eq!(crt.sample.coeffs, want);
    assert_eq!(crt.agreeing_checks, vec![107, 109]);
    assert!(crt.disagreeing_checks.is_empty());
    // where two components meet the line together only the reduced form is seen
    let run = discriminant_oracle(&fam, &BigInt::from(1), &BigInt::from(1), &opts).unwrap();
    assert_eq!(run.sample.coeffs.len(), 3);
    let ss: Vec<SpecializationSample> = [(3, 1), (1, 2), (2, 3), (-1, 2), (1, -3), (3, -2)]
        .iter()
        .map(|&(y, z)| discriminant_oracle(&fam, &BigInt::from(y), &BigInt::from(z), &opts).unwrap().sample)
        .collect();
    let rec = reconstruct(&ReconstructionProblem { degree: 3, samples: ss }).unwrap();
    let r = ternary_ring();
    assert_eq!(rec.form, parse_expr("x^3 + x^2*y + x^2*z + x*y*z", &r).unwrap());
}

#[test]
fn fourfold_fibration_is_resource_guarded() {
    let d = DataDir::open_default().unwrap();
    let q = ["q1.poly", "q2.poly", "q3.poly"].map(|f| d.poly_z(f).unwrap());
    let c = d.poly_z("c.poly").unwrap();
    let (pkg, _) = build_surface_ideal_z(&q, [&[3, 4, 5], &[0, 1, 2]], &GroebnerLimits::default()).unwrap();
    let t: Vec<_> = pkg.surface.basis().iter().map(|g| to_primitive_integer(g, c.ring())).collect();
    let fam = fourfold_fibration(&q, &c, &t).unwrap();
    assert_eq!(fam.ring.nvars(), 9);
    let opts = OracleOptions {
        limits: GroebnerLimits { max_basis: Some(50), max_degree: Some(8), max_reductions: Some(2000) },
        ..Default::default()
    };
    assert!(matches!(
        discriminant_oracle(&fam, &BigInt::from(1), &BigInt::from(2), &opts),
        Err(InterpError::Resources { .. })
    ));
}
