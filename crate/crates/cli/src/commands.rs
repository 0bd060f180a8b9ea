use std::path::Path;

use anyhow::{anyhow, Context as _};
use num_bigint::BigInt;

use k3bm_core::arith::{Fp, IntegerRing, RationalField};
use k3bm_core::data::Table1Row;
use k3bm_core::fourfold::{
    bilinear_determinant, build_surface_ideal_z, certify_smooth, congruent_mod9, decomposition_mod3, equal_up_to_sign,
    plane_cubic_insoluble_mod3, primitive_part, CubicFourfold,
};
use k3bm_core::groebner::{ideals_equal, Ideal};
use k3bm_core::interp::{
    extract_smooth_sextic, parse_samples, reconstruct, ExtractOptions, InterpError, ReconstructionProblem,
};
use k3bm_core::k3::{
    classify_singularities, good_reduction_at_2, tritangent_search, verify_ledger, weil_consistency, BadPrimeLedger,
    DoubleCoverModel, GoodReductionAt2, LedgerReport, SingularityReport, WeilReport,
};
use k3bm_core::localsolve::{
    double_cover_qp_verdict, real_witness, scan_projective, verify_table1, Table1Check, Verdict,
};
use k3bm_core::poly::{format_poly, parse_poly, MonomialOrder, PolyRing, Polynomial};

use crate::{Ctx, Input, Record, Report, Status};

type Zpoly = Polynomial<IntegerRing>;

pub const GOOD_PRIMES: [u64; 6] = [7, 11, 13, 17, 19, 23];
pub const SMOOTH_PRIMES: [u64; 3] = [7, 11, 13];

pub fn quadrics(ctx: &Ctx) -> anyhow::Result<[Zpoly; 3]> {
    Ok([ctx.data.poly_z("q1.poly")?, ctx.data.poly_z("q2.poly")?, ctx.data.poly_z("q3.poly")?])
}

pub fn fourfold(ctx: &Ctx) -> anyhow::Result<CubicFourfold> {
    Ok(CubicFourfold::new(ctx.data.poly_z("c.poly")?).map_err(|e| Input(e.to_string()))?)
}

pub fn model(ctx: &Ctx) -> anyhow::Result<DoubleCoverModel> {
    Ok(DoubleCoverModel::untwisted(ctx.data.poly_z("f.poly")?).map_err(|e| Input(e.to_string()))?)
}

pub fn ledger(ctx: &Ctx) -> anyhow::Result<BadPrimeLedger> {
    let text = ctx.data.text("m_small_factors.txt")?;
    let (small_factors, cofactor_digits) =
        BadPrimeLedger::parse_small_factors(&text).ok_or_else(|| Input("m_small_factors.txt: malformed".into()))?;
    Ok(BadPrimeLedger {
        m: ctx.data.integer("m.txt")?,
        n: ctx.data.integer("n.txt")?,
        gcd: ctx.data.integer("gcd_mn.txt")?,
        primes: ctx.data.integers("bad_primes.txt")?,
        small_factors,
        cofactor_digits,
    })
}

fn short(n: &BigInt) -> String {
    let s = n.to_string();
    if s.len() <= 24 {
        s
    } else {
        format!("{}..({} digits)", &s[..12], s.len())
    }
}

fn ring_z(vars: &[String]) -> PolyRing<IntegerRing> {
    PolyRing::new(IntegerRing, vars, MonomialOrder::GrevLex)
}

pub fn fourfold_build(ctx: &Ctx) -> anyhow::Result<Report> {
    let mut r = Report::new("fourfold build");
    let q = quadrics(ctx)?;
    let printed = [ctx.data.poly_z("c1.poly")?, ctx.data.poly_z("c2.poly")?];
    let t = std::time::Instant::now();
    let (pkg, cubics) = build_surface_ideal_z(&q, [&[3, 4, 5], &[0, 1, 2]], &ctx.limits)?;
    let secs = t.elapsed().as_secs_f64();
    for (k, (c, p)) in cubics.iter().zip(&printed).enumerate() {
        r.push(Record::check(
            format!("fourfold.cubic-c{}", k + 1),
            "residual cubics of the saturation",
            equal_up_to_sign(c, p),
            format!("{} terms", c.terms().len()),
        ));
    }
    let qr = pkg.surface.ring().clone();
    let mut gens: Vec<_> = q.iter().map(|g| g.to_rational(&qr)).collect();
    gens.extend(printed.iter().map(|g| g.to_rational(&qr)));
    let printed_ideal = Ideal::new(qr.clone(), gens)?;
    let computed = Ideal::new(qr, pkg.surface.basis().to_vec())?;
    r.push(Record::check(
        "fourfold.ideal-equality",
        "surface ideal generated by the quadrics and two cubics",
        ideals_equal(&printed_ideal, &computed, &ctx.limits)?,
        format!("double inclusion by normal forms; saturation took {secs:.2}s"),
    ));
    let det_ok = equal_up_to_sign(&primitive_part(&bilinear_determinant(&q, &[0, 1, 2])), &printed[0])
        && equal_up_to_sign(&primitive_part(&bilinear_determinant(&q, &[3, 4, 5])), &printed[1]);
    r.push(Record::check(
        "fourfold.determinant-oracle",
        "residual cubics of the saturation",
        det_ok,
        "det(dQ_k/dy_j) in each block",
    ));
    r.body = format!(
        "{}\n{}",
        format_poly(&cubics[0], Some("C1")),
        format_poly(&cubics[1], Some("C2"))
    );
    Ok(r)
}

pub fn fourfold_check_insoluble(ctx: &Ctx, modulus: u64) -> anyhow::Result<Report> {
    let mut r = Report::new("fourfold check-insoluble");
    let x = fourfold(ctx)?;
    let needed = modulus
        .checked_pow(x.cubic.nvars() as u32)
        .ok_or_else(|| Input("modulus too large".into()))?;
    if needed > ctx.budget {
        return Err(k3bm_core::localsolve::LocalError::Budget { needed, budget: ctx.budget }.into());
    }
    let t = std::time::Instant::now();
    let rep = scan_projective(std::slice::from_ref(&x.cubic), modulus)?;
    let secs = t.elapsed().as_secs_f64();
    let witness = match (&rep.witness, &rep.exhaustion) {
        (Some(w), _) => {
            let pt: Vec<String> = w.point.iter().map(|c| c.to_string()).collect();
            format!("primitive zero ({}) mod {modulus}", pt.join(", "))
        }
        (None, Some(e)) => format!("{} tuples, no primitive zero mod {modulus} ({secs:.2}s)", e.tuples_checked),
        _ => rep.note.clone(),
    };
    r.push(Record::check(
        format!("fourfold.insoluble-mod{modulus}"),
        "no points over Z/9",
        rep.verdict == Verdict::Insoluble,
        witness,
    ));
    if let (Ok(c1), Ok(c2)) = (ctx.data.poly_z("c1.poly"), ctx.data.poly_z("c2.poly")) {
        let d = decomposition_mod3(&c1, &c2);
        let direct = plane_cubic_insoluble_mod3(&c1, [3, 4, 5]) && plane_cubic_insoluble_mod3(&c2, [0, 1, 2]);
        r.push(Record::check(
            "fourfold.plane-cubics-mod3",
            "insoluble plane cubics",
            d.holds() && direct,
            format!("{} tuples mod 3, {} violations; direct plane scans agree: {direct}", d.tuples, d.violations.len()),
        ));
        r.push(Record::check(
            "fourfold.congruence-mod9",
            "C = 3 C1 + C2 mod 9",
            congruent_mod9(&x, &c1, &c2),
            "",
        ));
    }
    r.body = rep.to_text();
    Ok(r)
}

pub fn fourfold_certify_smooth(ctx: &Ctx, prime: Option<u64>) -> anyhow::Result<Report> {
    let mut r = Report::new("fourfold certify-smooth");
    let x = fourfold(ctx)?;
    let primes: Vec<u64> = prime.map(|p| vec![p]).unwrap_or_else(|| SMOOTH_PRIMES.to_vec());
    let mut tried = Vec::new();
    for p in primes {
        let cert = certify_smooth(&x, p, &ctx.limits, ctx.budget)?;
        tried.push(format!("{p}: {}", if cert.smooth { "smooth" } else { "not smooth" }));
        if cert.implies_smooth_over_q() {
            r.push(Record::check(
                "fourfold.smooth",
                "smoothness of the cubic fourfold",
                true,
                format!("Jacobian ideal empty over F_{p}; smooth over Q"),
            ));
            r.body = serde_json::to_string_pretty(&cert)?;
            return Ok(r);
        }
    }
    r.push(Record::check(
        "fourfold.smooth",
        "smoothness of the cubic fourfold",
        false,
        format!("no certificate: {}", tried.join(", ")),
    ));
    Ok(r)
}

pub fn k3_bad_primes(ctx: &Ctx) -> anyhow::Result<(Report, LedgerReport)> {
    let mut r = Report::new("k3 bad-primes");
    let m = model(ctx)?;
    let l = ledger(ctx)?;
    let good: Vec<BigInt> = GOOD_PRIMES.iter().map(|&p| BigInt::from(p)).collect();
    let rep = verify_ledger(&m, &l, &good, &ctx.limits)?;
    for c in &rep.checks {
        r.push(Record::check(
            format!("k3.ledger.{}", c.id.replace(' ', ".")),
            "primes of bad reduction",
            c.passed,
            c.detail.clone(),
        ));
    }
    r.push(Record::check(
        "k3.ledger.complete",
        "primes of bad reduction",
        rep.complete,
        "m factors over {2, 3} and the listed primes",
    ));
    Ok((r, rep))
}

pub fn k3_classify(ctx: &Ctx, prime: Option<BigInt>) -> anyhow::Result<(Report, Vec<SingularityReport>)> {
    let mut r = Report::new("k3 classify");
    let m = model(ctx)?;
    let primes = match prime {
        Some(p) => vec![p],
        None => ctx.data.integers("bad_primes.txt")?,
    };
    let mut out = Vec::new();
    for p in primes {
        let s = classify_singularities(&m, &p, &ctx.limits)?;
        let kinds: Vec<String> =
            s.orbits.iter().map(|o| format!("{:?} of degree {}", o.kind, o.residue_degree)).collect();
        r.push(Record::check(
            format!("k3.singularities.{p}"),
            "fewer than 8 ordinary double points",
            s.mild() && s.is_consistent(),
            format!(
                "p = {}: r = {}; {}",
                short(&p),
                s.r.map(|r| r.to_string()).unwrap_or_else(|| "non-isolated".into()),
                kinds.join(", ")
            ),
        ));
        out.push(s);
    }
    Ok((r, out))
}

pub fn k3_tritangent(ctx: &Ctx, p: u64) -> anyhow::Result<Report> {
    let mut r = Report::new("k3 tritangent");
    if !k3bm_core::arith::is_prime_u64(p) {
        return Err(Input(format!("{p} is not a prime")).into());
    }
    let f = ctx.data.poly_z("f.poly")?;
    let k = Fp::new(p);
    let ring = PolyRing::new(k, f.ring().vars(), MonomialOrder::GrevLex);
    let lines = tritangent_search(&f.reduce_mod(&ring))?;
    let desc: Vec<String> = lines.iter().map(|l| l.describe(&k)).collect();
    r.push(Record::new(
        format!("k3.tritangent.{p}"),
        "tritangent lines of the branch curve",
        Status::Pass,
        format!("{} lines over F_{p}", lines.len()),
    ));
    r.body = desc.join("\n");
    Ok(r)
}

pub fn k3_weil(ctx: &Ctx, p: u64, kmax: usize, weil: Option<&Path>) -> anyhow::Result<(Report, WeilReport)> {
    let mut r = Report::new("k3 weil");
    let f = ctx.data.poly_z("f.poly")?;
    let rq = PolyRing::new(RationalField, &["t"], MonomialOrder::GrevLex);
    let g = match weil {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            k3bm_core::poly::parse_poly_in(&text, &rq)?
        }
        None => ctx.data.poly_in(&format!("weil_f{p}.txt"), &rq)?,
    };
    let g = g.to_univariate(0).ok_or_else(|| Input("Weil polynomial must be univariate in t".into()))?;
    let rep = weil_consistency(&f, p, &g, kmax, ctx.budget)?;
    for c in &rep.checks {
        r.push(Record::check(
            format!("k3.weil.count-k{}", c.k),
            "Weil polynomial at 13",
            c.consistent,
            format!("#Y(F_{}) = {}, predicted {}", c.q, c.count, c.predicted),
        ));
    }
    r.push(Record::check(
        "k3.weil.functional-equation",
        "Weil polynomial at 13",
        rep.functional_equation.is_some(),
        format!("sign {:?}", rep.functional_equation),
    ));
    r.push(Record::check(
        "k3.weil.roots-of-unity",
        "Weil polynomial at 13",
        rep.roots_of_unity == 2,
        format!(
            "{} with multiplicity ({} distinct), orders {:?}",
            rep.roots_of_unity, rep.roots_of_unity_distinct, rep.cyclotomic_orders
        ),
    ));
    Ok((r, rep))
}

pub fn good_reduction(ctx: &Ctx) -> anyhow::Result<(Report, GoodReductionAt2)> {
    let mut r = Report::new("k3 good-reduction-at-2");
    let m = model(ctx)?;
    let g = good_reduction_at_2(&m, &ctx.limits)?;
    if let Ok(g1) = ctx.data.poly_z("g1.poly") {
        r.push(Record::check(
            "k3.two.sqrt",
            "f mod 2 is a perfect square",
            g1.reduce_mod(g.g1_bar.ring()) == g.g1_bar,
            format!("g1 = {}", g.g1_bar),
        ));
    }
    if let Ok(printed) = ctx.data.poly_in("model_f2.poly", g.reduction.ring()) {
        r.push(Record::check(
            "k3.two.reduction",
            "displayed equation over F_2",
            printed == g.reduction,
            format!("{} terms", g.reduction.terms().len()),
        ));
    }
    r.push(Record::check(
        "k3.two.quasi-smooth",
        "good reduction at 2",
        g.quasi_smooth(),
        "Jacobian ideal of the transformed model is weighted-irrelevant over F_2",
    ));
    Ok((r, g))
}

pub fn k3_certify(evidence: &Path) -> anyhow::Result<Report> {
    let text = std::fs::read_to_string(evidence).with_context(|| format!("reading {}", evidence.display()))?;
    let ev: k3bm_core::k3::Evidence = serde_json::from_str(&text)?;
    Ok(certificate_report("k3 certify", &k3bm_core::k3::assemble_certificate(&ev)))
}

pub fn certificate_report(command: &str, c: &k3bm_core::k3::ObstructionCertificate) -> Report {
    let mut r = Report::new(command);
    for p in &c.places {
        let ok = p.gaps.is_empty() && p.rule.is_some();
        r.push(Record::check(
            format!("certificate.place.{}", p.place),
            "local invariants",
            ok,
            match p.rule {
                Some(rule) if ok => format!("{rule:?}"),
                _ => p.gaps.join("; "),
            },
        ));
    }
    r.push(Record::check(
        "certificate.verdict",
        "failure of the Hasse principle",
        c.is_obstructed(),
        if c.is_obstructed() {
            "obstructed".to_string()
        } else {
            format!("not certified: {}", c.gaps().join("; "))
        },
    ));
    r.body = c.to_text();
    r
}

pub fn local_scan(modulus: u64, polys: &[std::path::PathBuf], budget: u64) -> anyhow::Result<Report> {
    let mut r = Report::new("local scan");
    if polys.is_empty() {
        return Err(Input("at least one --poly is required".into()).into());
    }
    let mut forms = Vec::new();
    for p in polys {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        let f = parse_poly(&text, IntegerRing, MonomialOrder::GrevLex)?;
        forms.push(f);
    }
    let vars = forms[0].ring().vars().to_vec();
    let ring = ring_z(&vars);
    let forms: Vec<Zpoly> = forms
        .iter()
        .map(|f| {
            if f.ring().vars() != vars.as_slice() {
                Err(Input("all forms must share one variable list".into()))
            } else {
                Ok(f.relabel(&ring, &(0..vars.len()).map(Some).collect::<Vec<_>>()))
            }
        })
        .collect::<Result<_, _>>()?;
    let needed = modulus.checked_pow(vars.len() as u32).unwrap_or(u64::MAX);
    if needed > budget {
        return Err(k3bm_core::localsolve::LocalError::Budget { needed, budget }.into());
    }
    let rep = scan_projective(&forms, modulus)?;
    r.push(Record::new(
        format!("local.scan-mod{modulus}"),
        "complete enumeration",
        Status::Pass,
        format!("{:?}", rep.verdict),
    ));
    r.body = rep.to_text();
    Ok(r)
}

pub fn table1_model(ctx: &Ctx) -> anyhow::Result<DoubleCoverModel> {
    Ok(good_reduction_at_2(&model(ctx)?, &ctx.limits)?.model)
}

pub fn local_qp_check(ctx: &Ctx, p: &BigInt, point: [BigInt; 3], precision: u32) -> anyhow::Result<Report> {
    let mut r = Report::new("local qp-check");
    let m = table1_model(ctx)?;
    let rep = double_cover_qp_verdict(&m, p, &point, precision)?;
    r.push(Record::check(
        format!("local.qp.{p}"),
        "local points",
        rep.verdict == Verdict::Soluble,
        format!("{:?} {}", rep.verdict, rep.note),
    ));
    r.body = rep.to_text();
    Ok(r)
}

pub fn table1_record(c: &Table1Check) -> Record {
    let pt = format!("({}, {}, {})", c.point[0], c.point[1], c.point[2]);
    let printed = if c.printed_is_value {
        "printed column = f(P)".to_string()
    } else {
        format!("printed column != f(P) = {}", short(&c.f_value))
    };
    let witness = match (c.witness_precision, c.witness_threshold) {
        (Some(t), Some(h)) => format!("w^2 = f(P) mod p^{t}, threshold {h}"),
        _ => c.report.note.clone(),
    };
    Record::check(
        format!("local.table1.{}", c.p),
        "local points at primes up to 22 and at bad primes",
        c.witness_ok(),
        format!("p = {}, P = {pt}: {witness}; {printed}", short(&c.p)),
    )
}

pub fn local_table1(ctx: &Ctx, precision: u32) -> anyhow::Result<(Report, Vec<Table1Row>, Vec<Table1Check>)> {
    let mut r = Report::new("local table1");
    let m = table1_model(ctx)?;
    let rows = ctx.data.table1()?;
    let checks = verify_table1(&m, &rows, precision)?;
    for c in &checks {
        r.push(table1_record(c));
    }
    let real = real_witness(&m);
    r.push(real_record(&real));
    Ok((r, rows, checks))
}

pub fn real_record(real: &k3bm_core::localsolve::SolubilityReport) -> Record {
    let w = real
        .witness
        .as_ref()
        .map(|w| {
            let pt: Vec<String> = w.point.iter().map(|c| c.to_string()).collect();
            format!("f({}) > 0", pt.join(", "))
        })
        .unwrap_or_else(|| real.note.clone());
    Record::check("local.real", "real points", real.verdict == Verdict::Soluble, w)
}

pub fn interp_solve(samples: &Path, degree: u32) -> anyhow::Result<Report> {
    let mut r = Report::new("interp solve");
    let text = std::fs::read_to_string(samples).with_context(|| format!("reading {}", samples.display()))?;
    let samples = parse_samples(&text)?;
    let n = samples.len();
    match reconstruct(&ReconstructionProblem { degree, samples }) {
        Ok(rec) => {
            r.push(Record::check(
                "interp.solve",
                "reconstruction by Gaussian elimination",
                true,
                format!("{n} samples, rank {} of {} columns, {} equations", rec.rank, rec.columns, rec.equations),
            ));
            let comment = match &rec.scale {
                Some(s) => format!("reconstructed form; exact form = {s} * this"),
                None => "reconstructed form, up to scalar".to_string(),
            };
            r.body = format_poly(&rec.form, Some(&comment));
        }
        Err(e @ (InterpError::Underdetermined { .. } | InterpError::Inconsistent { .. })) => {
            r.push(Record::check("interp.solve", "reconstruction by Gaussian elimination", false, e.to_string()));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

fn read_z(path: &Path) -> anyhow::Result<Zpoly> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_poly(&text, IntegerRing, MonomialOrder::GrevLex)?)
}

pub fn interp_extract(form: &Path, candidate: &Path, ctx_limits: &k3bm_core::groebner::GroebnerLimits) -> anyhow::Result<Report> {
    let mut r = Report::new("interp extract");
    let big = read_z(form)?;
    let f = read_z(candidate)?;
    if big.ring().vars() != f.ring().vars() {
        return Err(Input("form and candidate must use the same variables".into()).into());
    }
    let opts = ExtractOptions {
        limits: ctx_limits.clone(),
        ..Default::default()
    };
    match extract_smooth_sextic(&big, &f, &opts) {
        Ok(v) => {
            r.push(Record::check(
                "interp.extract.divides",
                "smooth component of the discriminant",
                true,
                "candidate divides the form with a sextic cofactor",
            ));
            r.push(Record::check(
                "interp.extract.smooth",
                "smooth component of the discriminant",
                v.candidate_smooth,
                format!("Jacobian empty mod {:?}", v.candidate_smooth_at),
            ));
            r.push(Record::new(
                "interp.extract.cofactor",
                "cuspidal component",
                Status::Notice,
                if v.cofactor_may_be_cuspidal() {
                    "cofactor not certified smooth; consistent with a cuspidal component".to_string()
                } else {
                    format!("cofactor smooth mod {:?}, so it carries no cusps", v.cofactor_smooth_at)
                },
            ));
            r.body = format_poly(&v.cofactor_form, Some("cofactor"));
        }
        Err(e @ (InterpError::NotDivisible | InterpError::CofactorDegree(_))) => {
            r.push(Record::check("interp.extract.divides", "smooth component of the discriminant", false, e.to_string()));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

pub fn parse_point(s: &str) -> anyhow::Result<[BigInt; 3]> {
    let v: Vec<BigInt> = s
        .split(',')
        .map(|t| t.trim().parse::<BigInt>().map_err(|_| Input(format!("bad coordinate `{t}`"))))
        .collect::<Result<_, _>>()?;
    <[BigInt; 3]>::try_from(v).map_err(|_| anyhow!(Input("a point needs three coordinates x,y,z".into())))
}
