use num_bigint::BigInt;
use serde::Serialize;

use super::InterpError;
use crate::arith::{Fp, IntegerRing, RationalField};
use crate::groebner::{is_projectively_empty, GroebnerError, GroebnerLimits};
use crate::k3::jacobian_ideal;
use crate::poly::Polynomial;

#[derive(Debug, Clone)]
pub struct ExtractOptions {
    /// Primes tried in order for smoothness certificates.
    pub primes: Vec<u64>,
    /// Number of primes at which the candidate must reduce to a smooth curve.
    pub required: usize,
    pub limits: GroebnerLimits,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions {
            primes: vec![7, 11, 13, 17, 19, 23, 31, 37, 41, 43],
            required: 2,
            limits: GroebnerLimits::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentVerdict {
    /// `F / f`, primitive with positive leading coefficient.
    pub cofactor: String,
    #[serde(skip)]
    pub cofactor_form: Polynomial<IntegerRing>,
    /// Primes where `f mod p` is a smooth sextic.
    pub candidate_smooth_at: Vec<u64>,
    pub candidate_smooth: bool,
    /// Primes where the cofactor reduces to a smooth sextic; any such prime
    /// makes the cofactor smooth over `Q`, so it cannot carry cusps.
    pub cofactor_smooth_at: Vec<u64>,
}

impl ComponentVerdict {
    /// The cofactor is not certified smooth, as a cuspidal component must be.
    pub fn cofactor_may_be_cuspidal(&self) -> bool {
        self.cofactor_smooth_at.is_empty()
    }
}

fn smooth_primes(f: &Polynomial<IntegerRing>, opts: &ExtractOptions, want: usize) -> Result<Vec<u64>, InterpError> {
    let mut out = Vec::new();
    for &p in &opts.primes {
        if out.len() >= want {
            break;
        }
        let pb = BigInt::from(p);
        // degree must survive reduction
        if f.terms().iter().all(|(_, c)| (c % &pb) == BigInt::from(0)) {
            continue;
        }
        let jac = jacobian_ideal(f, Fp::new(p)).map_err(|e| InterpError::Precondition(e.to_string()))?;
        match is_projectively_empty(&jac, &opts.limits) {
            Ok(c) if c.is_empty() => out.push(p),
            Ok(_) => {}
            Err(GroebnerError::ResourcesExhausted { what, .. }) => {
                return Err(InterpError::Resources {
                    field: format!("F_{p}"),
                    what,
                })
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

/// Checks that `f` divides the degree-12 form `big` with a sextic cofactor,
/// and certifies `f` smooth by Jacobian emptiness at `opts.required` primes.
/// Division is over `Q`, so both arguments may be rescaled freely.
pub fn extract_smooth_sextic(
    big: &Polynomial<IntegerRing>,
    f: &Polynomial<IntegerRing>,
    opts: &ExtractOptions,
) -> Result<ComponentVerdict, InterpError> {
    if f.is_zero() || big.is_zero() {
        return Err(InterpError::Precondition("zero form".into()));
    }
    let qr = big.ring().with_coeffs(RationalField);
    let q = big
        .to_rational(&qr)
        .div_exact(&f.to_rational(&qr))
        .ok_or(InterpError::NotDivisible)?;
    let deg = q.total_degree().unwrap_or(0);
    if deg != 6 || !q.is_homogeneous() {
        return Err(InterpError::CofactorDegree(deg));
    }
    let cof = crate::fourfold::to_primitive_integer(&q, big.ring());
    let candidate_smooth_at = smooth_primes(f, opts, opts.required)?;
    let cofactor_smooth_at = smooth_primes(&cof, opts, 1)?;
    Ok(ComponentVerdict {
        cofactor: cof.to_string(),
        cofactor_form: cof,
        candidate_smooth: candidate_smooth_at.len() >= opts.required,
        candidate_smooth_at,
        cofactor_smooth_at,
    })
}
