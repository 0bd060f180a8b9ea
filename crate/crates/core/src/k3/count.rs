//! Point counts of `w^2 = f` over finite fields and their consistency with a
//! normalized Weil polynomial.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::K3Error;
use crate::arith::{ExtField, FiniteField, Fp, IntegerRing, RationalField, Ring};
use crate::poly::{MonomialOrder, PolyRing, Polynomial, UniPoly};

/// Normalized representatives of `P^2(F_q)` with `x` the row index:
/// `(x, y, 1)`, then `(x, 1, 0)` and `(1, 0, 0)` in row 0.
fn row_points<K: FiniteField>(k: &K, i: u64) -> Vec<[K::Elem; 3]> {
    let q = k.order();
    let x = k.element(i);
    let mut v: Vec<[K::Elem; 3]> = (0..q).map(|j| [x.clone(), k.element(j), k.one()]).collect();
    v.push([x, k.one(), k.zero()]);
    if i == 0 {
        v.push([k.one(), k.zero(), k.zero()]);
    }
    v
}

fn reduce_sextic<K: FiniteField>(f: &Polynomial<IntegerRing>, k: &K, budget: u64) -> Result<Polynomial<K>, K3Error> {
    let q = k.order();
    if q.is_multiple_of(2) {
        return Err(K3Error::Precondition("field order must be odd".into()));
    }
    let needed = q.saturating_mul(q).saturating_add(q + 1);
    if needed > budget {
        return Err(K3Error::Budget { needed, budget });
    }
    let r = PolyRing::new(k.clone(), f.ring().vars(), MonomialOrder::GrevLex);
    let fk = f.reduce_mod(&r);
    if fk.is_zero() {
        return Err(K3Error::Degenerate("sextic vanishes in this characteristic".into()));
    }
    Ok(fk)
}

/// `#Y(F_q) = sum over P^2(F_q) of 1 + chi(f(P))`, with `chi(0) = 0`.
pub fn count_points_double_cover<K: FiniteField>(f: &Polynomial<IntegerRing>, k: &K, budget: u64) -> Result<u64, K3Error> {
    let fk = reduce_sextic(f, k, budget)?;
    let total: i64 = (0..k.order())
        .into_par_iter()
        .map(|i| {
            row_points(k, i)
                .iter()
                .map(|p| 1 + k.quadratic_character(&fk.evaluate(p).unwrap()) as i64)
                .sum::<i64>()
        })
        .sum();
    Ok(total as u64)
}

/// Independent count: points `(x:y:z:w)` of `P(1,1,1,3)` with `w^2 = f`,
/// from a table of how often each element is a square. Normalizing
/// `(x, y, z)` fixes the scaling, so each fibre is the set of square roots.
pub fn count_points_direct<K: FiniteField>(f: &Polynomial<IntegerRing>, k: &K, budget: u64) -> Result<u64, K3Error> {
    let fk = reduce_sextic(f, k, budget)?;
    let mut roots: HashMap<K::Elem, u64> = HashMap::new();
    for j in 0..k.order() {
        let w = k.element(j);
        *roots.entry(k.mul(&w, &w)).or_default() += 1;
    }
    // (0:0:0:1) lies on w^2 = f only if w = 0, which is excluded
    Ok((0..k.order())
        .into_par_iter()
        .map(|i| {
            row_points(k, i)
                .iter()
                .map(|p| roots.get(&fk.evaluate(p).unwrap()).copied().unwrap_or(0))
                .sum::<u64>()
        })
        .sum())
}

/// `count_points_double_cover` over `F_{p^e}`.
pub fn count_over_extension(f: &Polynomial<IntegerRing>, p: u64, e: usize, budget: u64) -> Result<u64, K3Error> {
    if e == 1 {
        count_points_double_cover(f, &Fp::new(p), budget)
    } else {
        count_points_double_cover(f, &ExtField::of_degree(Fp::new(p), e), budget)
    }
}

/// Power sums `s_1..s_kmax` of the roots of `g`, by Newton's identities.
pub fn power_sums(g: &UniPoly<RationalField>, kmax: usize) -> Vec<BigRational> {
    let g = g.monic();
    let n = g.degree().unwrap_or(0);
    // e-coefficients: g = t^n + c_1 t^(n-1) + ... + c_n
    let c = |i: usize| if i <= n { g.coeff(n - i) } else { BigRational::zero() };
    let mut s: Vec<BigRational> = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let mut acc = c(k) * BigRational::from_integer(BigInt::from(k));
        for i in 1..k {
            acc += c(i) * &s[k - i - 1];
        }
        s.push(-acc);
    }
    s
}

/// `+1` or `-1` when `t^d g(1/t) = +-g(t)`.
pub fn functional_equation_sign(g: &UniPoly<RationalField>) -> Option<i8> {
    let mut rev = g.coeffs().to_vec();
    rev.reverse();
    let rev = UniPoly::new(RationalField, rev);
    if rev.degree() != g.degree() {
        return None;
    }
    if &rev == g {
        Some(1)
    } else if rev == g.neg() {
        Some(-1)
    } else {
        None
    }
}

fn euler_phi(mut n: u64) -> u64 {
    let mut r = n;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            r -= r / d;
        }
        d += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

fn cyclotomic(n: u64, memo: &mut HashMap<u64, UniPoly<RationalField>>) -> UniPoly<RationalField> {
    if let Some(c) = memo.get(&n) {
        return c.clone();
    }
    let q = RationalField;
    let mut c = UniPoly::monomial(q.clone(), q.one(), n as usize).sub(&UniPoly::one(q));
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        c = c.div_exact(&cyclotomic(d, memo)).expect("cyclotomic divisor");
    }
    memo.insert(n, c.clone());
    c
}

/// Largest `N` with `phi(N) <= d`; `phi(N) >= sqrt(N / 2)` bounds the search.
pub fn cyclotomic_bound(d: u64) -> u64 {
    (1..=2 * d * d + 2).filter(|&n| euler_phi(n) <= d).max().unwrap_or(1)
}

/// Roots of `g` that are roots of unity, counted with multiplicity, by
/// repeated exact division by `Phi_N` for every `N` with `phi(N) <= deg g`.
/// Returns the total and the `(N, multiplicity)` pairs found.
pub fn roots_of_unity_with_multiplicity(g: &UniPoly<RationalField>) -> (usize, Vec<(u64, usize)>) {
    let d = g.degree().unwrap_or(0) as u64;
    let mut memo = HashMap::new();
    let mut rest = g.clone();
    let mut found = Vec::new();
    let mut total = 0;
    for n in (1..=cyclotomic_bound(d)).filter(|&n| euler_phi(n) <= d) {
        let phi = cyclotomic(n, &mut memo);
        let mut mult = 0;
        while let Some(qt) = rest.div_exact(&phi) {
            rest = qt;
            mult += 1;
        }
        if mult > 0 {
            total += mult * phi.degree().unwrap();
            found.push((n, mult));
        }
    }
    (total, found)
}

/// Degree of `gcd(g, t^N - 1)` for `N` up to the cyclotomic bound, taken
/// cumulatively: the number of distinct roots of unity among the roots.
pub fn distinct_roots_of_unity(g: &UniPoly<RationalField>) -> usize {
    let d = g.degree().unwrap_or(0) as u64;
    let q = RationalField;
    let mut acc = UniPoly::one(q.clone());
    for n in (1..=cyclotomic_bound(d)).filter(|&n| euler_phi(n) <= d) {
        let tn = UniPoly::monomial(q.clone(), q.one(), n as usize).sub(&UniPoly::one(q.clone()));
        let h = g.gcd(&tn);
        // lcm of the gcds seen so far
        let gg = acc.gcd(&h);
        acc = acc.mul(&h).div_exact(&gg).unwrap().monic();
    }
    acc.degree().unwrap_or(0)
}

#[derive(Debug, Clone, Serialize)]
pub struct WeilCheck {
    pub k: usize,
    pub q: u64,
    pub count: u64,
    /// `1 + q^2 + q * s_k`, with `s_k` the power sum of the roots of the
    /// normalized polynomial.
    pub predicted: String,
    pub consistent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct WeilReport {
    pub p: u64,
    pub degree: usize,
    pub functional_equation: Option<i8>,
    pub roots_of_unity: usize,
    pub roots_of_unity_distinct: usize,
    pub cyclotomic_orders: Vec<(u64, usize)>,
    pub checks: Vec<WeilCheck>,
}

impl WeilReport {
    pub fn consistent(&self) -> bool {
        self.functional_equation.is_some() && self.checks.iter().all(|c| c.consistent)
    }
}

/// Compares `#Y(F_{p^k})` for `k <= kmax` with the counts predicted by the
/// normalized Weil polynomial `g(t) = p^(-22) F(p t)`, whose roots are the
/// Frobenius eigenvalues divided by `p`.
pub fn weil_consistency(
    f: &Polynomial<IntegerRing>,
    p: u64,
    g: &UniPoly<RationalField>,
    kmax: usize,
    budget: u64,
) -> Result<WeilReport, K3Error> {
    if g.is_zero() {
        return Err(K3Error::Degenerate("zero Weil polynomial".into()));
    }
    let s = power_sums(g, kmax);
    let mut checks = Vec::with_capacity(kmax);
    for (i, sk) in s.iter().enumerate() {
        let k = i + 1;
        let q = p.checked_pow(k as u32).ok_or(K3Error::Budget { needed: u64::MAX, budget })?;
        let count = count_over_extension(f, p, k, budget)?;
        let qb = BigRational::from_integer(BigInt::from(q));
        let predicted = BigRational::one() + &qb * &qb + &qb * sk;
        let consistent = predicted.is_integer() && !predicted.is_negative() && predicted.to_integer().to_u64() == Some(count);
        checks.push(WeilCheck {
            k,
            q,
            count,
            predicted: predicted.to_string(),
            consistent,
        });
    }
    let (roots_of_unity, cyclotomic_orders) = roots_of_unity_with_multiplicity(g);
    Ok(WeilReport {
        p,
        degree: g.degree().unwrap_or(0),
        functional_equation: functional_equation_sign(g),
        roots_of_unity,
        roots_of_unity_distinct: distinct_roots_of_unity(g),
        cyclotomic_orders,
        checks,
    })
}
