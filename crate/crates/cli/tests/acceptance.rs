//! One PASS/FAIL line per acceptance criterion. A criterion whose literal
//! wording cannot be met prints FAIL with its reason, and the run checks
//! that the failure has exactly the analysed shape.

#[path = "../../core/tests/props/mod.rs"]
mod props;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;

use k3bm_cli::commands::{self, GOOD_PRIMES, SMOOTH_PRIMES};
use k3bm_cli::pipeline::certify_all;
use k3bm_cli::{Ctx, Report, RunConfig, Status};
use k3bm_core::fourfold::{certify_smooth, singular_points_by_scan};
use k3bm_core::k3::{assemble_certificate, Evidence};

struct Outcome {
    pass: bool,
    detail: String,
    /// Set when FAIL is the analysed result; the run succeeds only if the
    /// failure matches.
    expected_failure: Option<Result<(), String>>,
}

impl Outcome {
    fn check(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
            expected_failure: None,
        }
    }
}

fn all_pass(r: &Report) -> bool {
    !r.records.is_empty() && r.records.iter().all(|x| matches!(x.verdict, Status::Pass | Status::Notice))
}

fn failing(r: &Report) -> String {
    let bad: Vec<&str> = r
        .records
        .iter()
        .filter(|x| !matches!(x.verdict, Status::Pass | Status::Notice))
        .map(|x| x.check_id.as_str())
        .collect();
    if bad.is_empty() {
        String::new()
    } else {
        format!("; failing: {}", bad.join(", "))
    }
}

fn has(r: &Report, id: &str) -> bool {
    r.find(id).is_some_and(|x| x.verdict == Status::Pass)
}

fn within(t: Duration, limit: u64) -> bool {
    t <= Duration::from_secs(limit)
}

fn saturation(ctx: &Ctx) -> anyhow::Result<Outcome> {
    let t = Instant::now();
    let r = commands::fourfold_build(ctx)?;
    let el = t.elapsed();
    let pass = ["fourfold.cubic-c1", "fourfold.cubic-c2", "fourfold.ideal-equality", "fourfold.determinant-oracle"]
        .iter()
        .all(|id| has(&r, id))
        && within(el, 300);
    Ok(Outcome::check(pass, format!("C1, C2 up to sign, ideals equal both ways; {el:.2?}{}", failing(&r))))
}

fn insolubility(ctx: &Ctx) -> anyhow::Result<Outcome> {
    let t = Instant::now();
    let r = commands::fourfold_check_insoluble(ctx, 9)?;
    let el = t.elapsed();
    let tuples = r.find("fourfold.insoluble-mod9").is_some_and(|x| x.witness.starts_with("531441 tuples"));
    let pass = tuples && has(&r, "fourfold.insoluble-mod9") && has(&r, "fourfold.plane-cubics-mod3") && within(el, 10);
    Ok(Outcome::check(pass, format!("531441 tuples mod 9, both plane cubics insoluble mod 3; {el:.2?}{}", failing(&r))))
}

fn table1(ctx: &Ctx) -> anyhow::Result<Outcome> {
    let t = Instant::now();
    let (r, rows, checks) = commands::local_table1(ctx, 20)?;
    let el = t.elapsed();
    let literal = checks.iter().all(|c| c.witness_ok() && c.printed_root_ok()) && has(&r, "local.real");
    let roots_ok: Vec<String> = checks.iter().filter(|c| c.printed_root_ok()).map(|c| c.p.to_string()).collect();
    let values: Vec<&BigInt> = checks.iter().filter(|c| !c.printed_is_value).map(|c| &c.p).collect();
    let long = checks.iter().filter(|c| c.p.to_string().len() >= 80).count();
    // the printed column is f(P) except in the p = 2 row; computed witnesses
    // lift at every row
    let analysed = if rows.len() == 15
        && checks.iter().all(|c| c.witness_ok())
        && values == [&BigInt::from(2)]
        && roots_ok == ["2", "3", "5"]
        && long == 2
        && has(&r, "local.real")
        && within(el, 30)
    {
        Ok(())
    } else {
        Err(format!("unexpected pattern: root ok at {roots_ok:?}, value mismatch at {values:?}"))
    };
    Ok(Outcome {
        pass: literal,
        detail: format!(
            "printed column read as a square root meets the threshold only at p in {roots_ok:?}; it equals f(P) in 14/15 rows \
             (not at p = 2); all 15 rows soluble with Hensel-lifted witnesses, real witness positive; {el:.2?}"
        ),
        expected_failure: Some(analysed),
    })
}

fn good_reduction(ctx: &Ctx) -> anyhow::Result<Outcome> {
    let (r, _) = commands::good_reduction(ctx)?;
    let pass = has(&r, "k3.two.sqrt") && has(&r, "k3.two.reduction") && has(&r, "k3.two.quasi-smooth");
    Ok(Outcome::check(pass, format!("sqrt(f mod 2) = g1, F_2 model term-for-term, quasi-smooth{}", failing(&r))))
}

fn ledger(ctx: &Ctx) -> anyhow::Result<Outcome> {
    let t = Instant::now();
    let (r, rep) = commands::k3_bad_primes(ctx)?;
    let el = t.elapsed();
    let (m, n, g) = (ctx.data.integer("m.txt")?, ctx.data.integer("n.txt")?, ctx.data.integer("gcd_mn.txt")?);
    let gcd_oracle = m.gcd(&n) == g && g.to_string().len() == 172;
    let primes = ctx.data.integers("bad_primes.txt")?;
    let per_prime = primes.iter().all(|p| has(&r, &format!("k3.ledger.prime.{p}")) && has(&r, &format!("k3.ledger.bad.{p}")));
    let good = GOOD_PRIMES.iter().all(|p| has(&r, &format!("k3.ledger.good.{p}")));
    let pass = all_pass(&r)
        && gcd_oracle
        && has(&r, "k3.ledger.cofactor-digits")
        && per_prime
        && good
        && rep.passed()
        && within(el, 600);
    Ok(Outcome::check(
        pass,
        format!("gcd 172 digits, small prime powers exact, cofactor 366 digits, {} bad primes, good {GOOD_PRIMES:?}; {el:.2?}{}", primes.len(), failing(&r)),
    ))
}

fn odp(ctx: &Ctx) -> anyhow::Result<Outcome> {
    let (r, reps) = commands::k3_classify(ctx, None)?;
    let three = BigInt::from(3);
    let checked: Vec<_> = reps.iter().filter(|s| s.prime != three).collect();
    let pass = !checked.is_empty() && checked.iter().all(|s| s.mild() && s.all_odp() && s.r.is_some_and(|r| r < 8));
    let rs: Vec<String> = checked
        .iter()
        .map(|s| {
            let p = s.prime.to_string();
            let p = if p.len() > 12 { format!("P{}", p.len()) } else { p };
            format!("{p}:{}", s.r.map_or("-".into(), |r| r.to_string()))
        })
        .collect();
    Ok(Outcome::check(pass, format!("r per prime {}{}", rs.join(" "), failing(&r))))
}

fn picard(ctx: &Ctx) -> anyhow::Result<Outcome> {
    let t = Instant::now();
    let n13 = commands::k3_tritangent(ctx, 13)?;
    let n7 = commands::k3_tritangent(ctx, 7)?;
    let (w, rep) = commands::k3_weil(ctx, 13, 2, None)?;
    let el = t.elapsed();
    let count = |r: &Report, p: u64| -> Option<usize> {
        r.find(&format!("k3.tritangent.{p}"))?.witness.split(' ').next()?.parse().ok()
    };
    let (a, b) = (count(&n13, 13), count(&n7, 7));
    let show = |n: Option<usize>| n.map_or("?".to_string(), |n| n.to_string());
    let pass = a.is_some_and(|a| a >= 1)
        && b == Some(0)
        && all_pass(&w)
        && rep.checks.len() == 2
        && rep.roots_of_unity == 2
        && within(el, 120);
    Ok(Outcome::check(
        pass,
        format!(
            "tritangent lines: {} over F_13, {} over F_7; counts k = 1, 2 match; two roots of unity; {el:.2?}{}",
            show(a),
            show(b),
            failing(&w)
        ),
    ))
}

fn smoothness(ctx: &Ctx) -> anyhow::Result<Outcome> {
    let t = Instant::now();
    let x = commands::fourfold(ctx)?;
    let mut certified = None;
    for p in SMOOTH_PRIMES {
        if certify_smooth(&x, p, &ctx.limits, ctx.budget)?.implies_smooth_over_q() {
            certified = Some(p);
            break;
        }
    }
    let el = t.elapsed();
    let Some(p) = certified else {
        return Ok(Outcome::check(false, "no certificate at 7, 11, 13"));
    };
    let (points, singular) = singular_points_by_scan(&x.cubic, p, ctx.budget)?;
    let pass = singular.is_empty() && within(el, 60);
    Ok(Outcome::check(
        pass,
        format!("Groebner certificate at p = {p}; exhaustive scan of {points} points finds {} singular; {el:.2?}", singular.len()),
    ))
}

/// Evidence with one item removed, for every item.
fn deletions(ev: &Evidence) -> Vec<(String, Evidence)> {
    let mut out = Vec::new();
    let mut e = ev.clone();
    e.insolubility = None;
    out.push(("insolubility".to_string(), e));
    let mut e = ev.clone();
    e.ledger = None;
    out.push(("ledger".to_string(), e));
    let mut e = ev.clone();
    e.good_reduction_at_2 = None;
    out.push(("good reduction at 2".to_string(), e));
    for i in 0..ev.local_points.len() {
        let mut e = ev.clone();
        let gone = e.local_points.remove(i);
        out.push((format!("local point at {}", gone.place), e));
    }
    for i in 0..ev.singularities.len() {
        let mut e = ev.clone();
        let gone = e.singularities.remove(i);
        out.push((format!("singularities at {}", gone.prime), e));
    }
    out
}

fn certificate(ctx: &Ctx) -> anyhow::Result<Outcome> {
    let run = certify_all(ctx);
    let c = &run.certificate;
    let covered = c.places.iter().all(|p| p.rule.is_some() && p.gaps.is_empty());
    let subsets = deletions(&run.evidence);
    let survivors: Vec<&str> = subsets
        .iter()
        .filter(|(_, e)| assemble_certificate(e).is_obstructed())
        .map(|(name, _)| name.as_str())
        .collect();
    let pass = c.is_obstructed() && covered && run.report.exit_code() == 0 && survivors.is_empty();
    Ok(Outcome::check(
        pass,
        format!(
            "obstructed, {} places each under one rule; {} single deletions all give not certified{}",
            c.places.len(),
            subsets.len(),
            if survivors.is_empty() { String::new() } else { format!("; still obstructed without {survivors:?}") }
        ),
    ))
}

fn properties() -> anyhow::Result<Outcome> {
    let t = Instant::now();
    let mut failed = Vec::new();
    let suites = props::all();
    for (name, run, cases) in &suites {
        if let Err(e) = run(*cases) {
            failed.push(format!("{name}: {e}"));
        }
    }
    let el = t.elapsed();
    let pass = failed.is_empty() && within(el, 900);
    Ok(Outcome::check(
        pass,
        if failed.is_empty() {
            format!("{} suites green; {el:.2?}", suites.len())
        } else {
            failed.join(" | ")
        },
    ))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> anyhow::Result<Outcome> + 'a>);

fn main() -> ExitCode {
    // the harness passes filter arguments; an unrelated filter skips the run
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !args.is_empty() && !args.iter().any(|a| "acceptance".contains(a.as_str())) {
        return ExitCode::SUCCESS;
    }
    let ctx = match Ctx::open(&RunConfig::default()) {
        Ok(c) => c,
        Err(e) => {
            println!("FAIL data: {e:#}");
            return ExitCode::FAILURE;
        }
    };
    let ctx = &ctx;
    let criteria: Vec<Criterion> = vec![
        ("saturation reproduction", Box::new(|| saturation(ctx))),
        ("3-adic insolubility", Box::new(|| insolubility(ctx))),
        ("published local points", Box::new(|| table1(ctx))),
        ("good reduction at 2", Box::new(|| good_reduction(ctx))),
        ("bad-prime ledger", Box::new(|| ledger(ctx))),
        ("ODP hypothesis", Box::new(|| odp(ctx))),
        ("Picard evidence", Box::new(|| picard(ctx))),
        ("smoothness", Box::new(|| smoothness(ctx))),
        ("certificate", Box::new(|| certificate(ctx))),
        ("property suites", Box::new(properties)),
    ];
    let mut ok = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run().unwrap_or_else(|e| Outcome::check(false, format!("error: {e:#}")));
        println!("{} {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
        match (o.pass, &o.expected_failure) {
            (true, None) => {}
            (false, Some(Ok(()))) => println!("        expected failure, matches the documented analysis"),
            (false, Some(Err(why))) => {
                println!("        expected failure does not match the analysis: {why}");
                ok = false;
            }
            (true, Some(_)) => {
                println!("        passed although a documented failure was expected");
                ok = false;
            }
            (false, None) => ok = false,
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
