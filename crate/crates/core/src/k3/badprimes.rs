//! Primes of bad reduction: per-prime certificates and the published ledger.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{good_reduction_at_2, with_prime_field, DoubleCoverModel, K3Error};
use crate::arith::{is_prime_u64, is_probable_prime, nt::split_valuation, Field, IntegerRing};
use crate::groebner::{is_projectively_empty, EmptinessCertificate, GroebnerLimits, Ideal};
use crate::poly::{MonomialOrder, PolyRing, Polynomial};

/// `<f, df/dx, df/dy, df/dz>` over the given field.
pub fn jacobian_ideal<F: Field>(f: &Polynomial<IntegerRing>, k: F) -> Result<Ideal<F>, K3Error> {
    let r = PolyRing::new(k, f.ring().vars(), MonomialOrder::GrevLex);
    let fb = f.reduce_mod(&r);
    let mut gens = vec![fb.clone()];
    gens.extend((0..f.nvars()).map(|v| fb.partial_derivative(v)));
    Ok(Ideal::new(r, gens)?)
}

/// Field-independent digest of an emptiness certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateSummary {
    pub empty: bool,
    /// Pure-power exponents per variable when empty.
    pub pure_powers: Option<Vec<u16>>,
    /// Chart variable whose saturation is proper when nonempty.
    pub chart: Option<String>,
    pub basis_size: usize,
    pub report: String,
}

impl<F: Field> From<&EmptinessCertificate<F>> for CertificateSummary {
    fn from(c: &EmptinessCertificate<F>) -> Self {
        match c {
            EmptinessCertificate::Empty { basis, pure_powers } => CertificateSummary {
                empty: true,
                pure_powers: Some(pure_powers.clone()),
                chart: None,
                basis_size: basis.basis().len(),
                report: c.report(),
            },
            EmptinessCertificate::NonEmpty { chart, saturation } => CertificateSummary {
                empty: false,
                pure_powers: None,
                chart: Some(saturation.ring().vars()[*chart].clone()),
                basis_size: saturation.basis().len(),
                report: c.report(),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BadPrimeVerdict {
    pub prime: BigInt,
    pub bad: bool,
    /// What was certified: the sextic's singular locus, or at 2 the
    /// transformed model's quasi-smoothness.
    pub route: &'static str,
    pub certificate: CertificateSummary,
}

/// Bad reduction at `p`: for odd `p` the singular locus of `f = 0` mod `p` is
/// nonempty over the closure; at 2 the transformed model fails to be
/// quasi-smooth.
pub fn is_bad_prime(model: &DoubleCoverModel, p: &BigInt, limits: &GroebnerLimits) -> Result<BadPrimeVerdict, K3Error> {
    if p == &BigInt::from(2) {
        let g = good_reduction_at_2(model, limits)?;
        return Ok(BadPrimeVerdict {
            prime: p.clone(),
            bad: !g.quasi_smooth(),
            route: "weighted Jacobian ideal of the transformed model over F_2",
            certificate: (&g.certificate).into(),
        });
    }
    if p < &BigInt::from(3) {
        return Err(K3Error::Precondition(format!("{p} is not a prime")));
    }
    if model.f.terms().iter().all(|(_, c)| (c % p).is_zero()) {
        return Err(K3Error::Degenerate(format!("f vanishes identically mod {p}")));
    }
    let certificate = with_prime_field(
        p,
        |k| -> Result<CertificateSummary, K3Error> {
            let j = jacobian_ideal(&model.f, k)?;
            Ok((&is_projectively_empty(&j, limits)?).into())
        },
        |k| {
            let j = jacobian_ideal(&model.f, k)?;
            Ok((&is_projectively_empty(&j, limits)?).into())
        },
    )?;
    Ok(BadPrimeVerdict {
        prime: p.clone(),
        bad: !certificate.empty,
        route: "Jacobian ideal of the branch sextic over F_p",
        certificate,
    })
}

/// The published integers and prime list.
#[derive(Debug, Clone, Serialize)]
pub struct BadPrimeLedger {
    pub m: BigInt,
    pub n: BigInt,
    pub gcd: BigInt,
    pub primes: Vec<BigInt>,
    /// Printed small prime powers `(p, e)` with `p^e || m`.
    pub small_factors: Vec<(BigInt, u32)>,
    /// Printed digit count of `m` with the small factors removed.
    pub cofactor_digits: usize,
}

impl BadPrimeLedger {
    /// Parses the small-factor file: rows `p e`, then `cofactor_digits d`.
    pub fn parse_small_factors(text: &str) -> Option<(Vec<(BigInt, u32)>, usize)> {
        let mut out = Vec::new();
        let mut digits = None;
        for l in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (a, b) = l.split_once(char::is_whitespace)?;
            if a == "cofactor_digits" {
                digits = Some(b.trim().parse().ok()?);
            } else {
                out.push((a.parse().ok()?, b.trim().parse().ok()?));
            }
        }
        Some((out, digits?))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LedgerCheck {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LedgerReport {
    pub checks: Vec<LedgerCheck>,
    pub verdicts: Vec<BadPrimeVerdict>,
    /// `m` is a product of powers of 2, 3 and the listed primes, so every
    /// prime outside that set has good reduction.
    pub complete: bool,
}

impl LedgerReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&LedgerCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Checks the ledger arithmetic, primality of each listed prime, badness of
/// each listed prime and goodness of each of `good`.
pub fn verify_ledger(
    model: &DoubleCoverModel,
    ledger: &BadPrimeLedger,
    good: &[BigInt],
    limits: &GroebnerLimits,
) -> Result<LedgerReport, K3Error> {
    let mut checks = Vec::new();
    let mut check = |id: String, passed: bool, detail: String| checks.push(LedgerCheck { id, passed, detail });
    let g = ledger.m.gcd(&ledger.n);
    check(
        "gcd".into(),
        g == ledger.gcd,
        format!("gcd(m, n) has {} digits", g.to_string().len()),
    );
    let mut cofactor = ledger.m.clone();
    for (p, e) in &ledger.small_factors {
        let (v, rest) = split_valuation(&cofactor, p);
        check(
            format!("small-factor {p}^{e}"),
            v == *e as u64,
            format!("v_{p}(m) = {v}"),
        );
        cofactor = rest;
    }
    let digits = cofactor.to_string().trim_start_matches('-').len();
    check(
        "cofactor-digits".into(),
        digits == ledger.cofactor_digits,
        format!("m' has {digits} digits"),
    );
    let mut rest = ledger.m.clone();
    for p in [BigInt::from(2), BigInt::from(3)].iter().chain(&ledger.primes) {
        if !rest.is_zero() {
            rest = split_valuation(&rest, p).1;
        }
    }
    let complete = rest.magnitude().is_one();
    check(
        "complete-factorization".into(),
        complete,
        if complete {
            "m factors over {2, 3} and the listed primes".into()
        } else {
            format!("unexplained cofactor with {} digits", rest.to_string().len())
        },
    );
    let mut verdicts = Vec::new();
    for p in &ledger.primes {
        check(format!("divides-m {p}"), (&ledger.m % p).is_zero(), String::new());
        let prime = match u64::try_from(p) {
            Ok(q) => is_prime_u64(q),
            Err(_) => is_probable_prime(p, 32),
        };
        check(
            format!("prime {p}"),
            prime,
            if u64::try_from(p).is_ok() { "deterministic" } else { "probable (Miller-Rabin)" }.into(),
        );
        let v = is_bad_prime(model, p, limits)?;
        check(format!("bad {p}"), v.bad, v.route.into());
        verdicts.push(v);
    }
    for p in good {
        let v = is_bad_prime(model, p, limits)?;
        check(format!("good {p}"), !v.bad, v.route.into());
        verdicts.push(v);
    }
    Ok(LedgerReport {
        checks,
        verdicts,
        complete,
    })
}
