use num_bigint::BigInt;
use num_integer::Integer as _;
use rayon::prelude::*;
use serde::Serialize;

use super::{CubicFourfold, FourfoldError};
use crate::arith::{is_prime_u64, Fp, IntegerRing, Ring};
use crate::groebner::{is_projectively_empty, GroebnerError, GroebnerLimits};
use crate::k3::{jacobian_ideal, CertificateSummary};
use crate::poly::{MonomialOrder, PolyRing, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SmoothRoute {
    /// Emptiness of `<C, dC/dx_i>` over the algebraic closure of `F_p`.
    Groebner,
    /// Jacobian evaluation at every point of `P^{n-1}(F_p)`; only rational
    /// singular points are seen.
    PointScan,
}

#[derive(Debug, Clone, Serialize)]
pub struct SmoothnessCertificate {
    pub p: u64,
    pub smooth: bool,
    pub route: SmoothRoute,
    pub emptiness: Option<CertificateSummary>,
    pub points_checked: Option<u64>,
    pub singular_points: Vec<Vec<u64>>,
}

impl SmoothnessCertificate {
    /// A smooth reduction of the integral model forces smoothness over `Q`.
    /// The point scan alone does not certify smoothness.
    pub fn implies_smooth_over_q(&self) -> bool {
        self.smooth && self.route == SmoothRoute::Groebner
    }
}

/// Points of `P^{n-1}(F_p)` where the form and all its partials vanish,
/// normalized with first nonzero coordinate 1, in enumeration order.
pub fn singular_points_by_scan(
    c: &Polynomial<IntegerRing>,
    p: u64,
    budget: u64,
) -> Result<(u64, Vec<Vec<u64>>), FourfoldError> {
    let n = c.nvars();
    let total: u128 = (0..n as u32).map(|i| (p as u128).pow(i)).sum();
    if total > budget as u128 {
        return Err(FourfoldError::Local(crate::localsolve::LocalError::Budget {
            needed: total.min(u64::MAX as u128) as u64,
            budget,
        }));
    }
    let k = Fp::new(p);
    let r = PolyRing::new(k, c.ring().vars(), MonomialOrder::GrevLex);
    let cb = c.reduce_mod(&r);
    let mut polys = vec![cb.clone()];
    polys.extend((0..n).map(|v| cb.partial_derivative(v)));
    let mut found = Vec::new();
    for lead in 0..n {
        let free = n - 1 - lead;
        let count = (p as u128).pow(free as u32) as u64;
        let mut hits: Vec<(u64, Vec<u64>)> = (0..count)
            .into_par_iter()
            .filter_map(|idx| {
                let mut x = vec![0u64; n];
                x[lead] = 1;
                let mut t = idx;
                for c in x.iter_mut().skip(lead + 1) {
                    *c = t % p;
                    t /= p;
                }
                polys
                    .iter()
                    .all(|g| k.is_zero(&g.evaluate(&x).unwrap()))
                    .then_some((idx, x))
            })
            .collect();
        hits.sort();
        found.extend(hits.into_iter().map(|h| h.1));
    }
    Ok((total as u64, found))
}

/// Certifies that the reduction of `X` mod `p` is smooth, by Groebner
/// emptiness of the Jacobian ideal; if that runs out of resources, falls
/// back to an exhaustive rational point scan, which can only refute.
pub fn certify_smooth(
    x: &CubicFourfold,
    p: u64,
    limits: &GroebnerLimits,
    scan_budget: u64,
) -> Result<SmoothnessCertificate, FourfoldError> {
    if !is_prime_u64(p) || p > u32::MAX as u64 {
        return Err(FourfoldError::Precondition(format!("{p} is not a small prime")));
    }
    if x.cubic.content().is_multiple_of(&BigInt::from(p)) {
        return Err(FourfoldError::Precondition(format!("{p} divides the content of the cubic")));
    }
    let jac = jacobian_ideal(&x.cubic, Fp::new(p)).map_err(|e| FourfoldError::Precondition(e.to_string()))?;
    match is_projectively_empty(&jac, limits) {
        Ok(cert) => {
            let smooth = cert.is_empty();
            Ok(SmoothnessCertificate {
                p,
                smooth,
                route: SmoothRoute::Groebner,
                emptiness: Some(CertificateSummary::from(&cert)),
                points_checked: None,
                singular_points: Vec::new(),
            })
        }
        Err(GroebnerError::ResourcesExhausted { .. }) => {
            let (n, pts) = singular_points_by_scan(&x.cubic, p, scan_budget)?;
            Ok(SmoothnessCertificate {
                p,
                // rational scan can only refute smoothness
                smooth: false,
                route: SmoothRoute::PointScan,
                emptiness: None,
                points_checked: Some(n),
                singular_points: pts,
            })
        }
        Err(e) => Err(e.into()),
    }
}
