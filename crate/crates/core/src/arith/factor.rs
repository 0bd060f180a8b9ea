//! Small-factor extraction.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::nt::{gcd, split_valuation};
use super::primality::{is_probable_prime, is_proven_range, primes_up_to};

/// Primes are trial-divided up to this bound; larger ones up to the caller's
/// bound are searched with Pollard-Brent.
pub const TRIAL_DIVISION_LIMIT: u64 = 10_000_000;

/// Rho iterations per attempt are `RHO_SCALE * sqrt(bound)`, capped.
const RHO_SCALE: u64 = 8;
const RHO_MAX_ITERATIONS: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrimalityStatus {
    ProvenSmall,
    Probable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    pub prime: BigInt,
    pub exponent: u32,
    pub status: PrimalityStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorLedger {
    pub n: BigInt,
    pub factors: Vec<PrimePower>,
    pub cofactor: BigInt,
    /// All primes up to this value were excluded by trial division; between
    /// it and the requested bound the search is Pollard-Brent.
    pub trial_limit: u64,
    /// True when the whole range up to the bound was trial-divided.
    pub exhaustive: bool,
}

impl FactorLedger {
    pub fn product(&self) -> BigInt {
        self.factors.iter().fold(self.cofactor.clone(), |acc, f| {
            acc * num_traits::pow(f.prime.clone(), f.exponent as usize)
        })
    }

    pub fn exponent_of(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|f| &f.prime == p)
            .map_or(0, |f| f.exponent)
    }
}

fn status_of(p: &BigInt) -> PrimalityStatus {
    if is_proven_range(p) {
        PrimalityStatus::ProvenSmall
    } else {
        PrimalityStatus::Probable
    }
}

/// Brent's variant of Pollard rho with batched gcds. Returns a nontrivial
/// factor or `None` after the iteration budget.
fn pollard_brent(n: &BigInt, c: u64, budget: u64) -> Option<BigInt> {
    let c = BigInt::from(c);
    let f = |x: &BigInt| (x * x + &c).mod_floor(n);
    let mut y = BigInt::from(2);
    let mut r = 1u64;
    let mut q = BigInt::one();
    let m = 128u64;
    let mut iters = 0u64;
    let mut x;
    let mut ys;
    loop {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        loop {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (q * (&x - &y).abs()).mod_floor(n);
            }
            iters += m.min(r - k);
            let g = gcd(&q, n);
            k += m;
            if !g.is_one() {
                if &g == n {
                    // back up one step at a time
                    loop {
                        ys = f(&ys);
                        let g = gcd(&(&x - &ys).abs(), n);
                        if !g.is_one() {
                            return (&g != n).then_some(g);
                        }
                    }
                }
                return Some(g);
            }
            if k >= r || iters >= budget {
                break;
            }
        }
        if iters >= budget {
            return None;
        }
        r *= 2;
    }
}

/// Every prime `<= bound` dividing `n`, with exact exponents.
///
/// Primes up to [`TRIAL_DIVISION_LIMIT`] are found exhaustively. Above that
/// the cofactor is searched with Pollard-Brent, which finds a prime factor
/// `q` after about `sqrt(q)` steps; factors it returns that exceed `bound`
/// stay in the cofactor.
pub fn extract_small_factors(n: &BigInt, bound: &BigInt) -> FactorLedger {
    assert!(n.is_positive(), "extract_small_factors needs n > 0");
    let mut rest = n.clone();
    let mut factors = Vec::new();
    let trial = bound.to_u64().unwrap_or(u64::MAX).min(TRIAL_DIVISION_LIMIT);
    for p in primes_up_to(trial) {
        if rest.is_one() {
            break;
        }
        let pb = BigInt::from(p);
        if (&rest % &pb).is_zero() {
            let (v, r) = split_valuation(&rest, &pb);
            rest = r;
            factors.push(PrimePower {
                prime: pb,
                exponent: v as u32,
                status: PrimalityStatus::ProvenSmall,
            });
        }
    }
    if bound > &BigInt::from(trial) {
        let budget = bound
            .sqrt()
            .to_u64()
            .map_or(RHO_MAX_ITERATIONS, |r| r.saturating_mul(RHO_SCALE))
            .min(RHO_MAX_ITERATIONS);
        let mut found: Vec<BigInt> = Vec::new();
        let mut pending = vec![rest.clone()];
        while let Some(m) = pending.pop() {
            if m.is_one() || is_probable_prime(&m, 16) {
                if &m <= bound && !m.is_one() {
                    found.push(m);
                }
                continue;
            }
            let mut split = None;
            for c in 1..4 {
                if let Some(g) = pollard_brent(&m, c, budget) {
                    split = Some(g);
                    break;
                }
            }
            if let Some(g) = split {
                let h = &m / &g;
                pending.push(g);
                pending.push(h);
            }
        }
        found.sort();
        found.dedup();
        for p in found {
            let (v, r) = split_valuation(&rest, &p);
            rest = r;
            let status = status_of(&p);
            factors.push(PrimePower {
                prime: p,
                exponent: v as u32,
                status,
            });
        }
    }
    factors.sort_by(|a, b| a.prime.cmp(&b.prime));
    FactorLedger {
        n: n.clone(),
        factors,
        cofactor: rest,
        trial_limit: trial,
        exhaustive: bound <= &BigInt::from(trial),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_ledgers() {
        let l = extract_small_factors(&BigInt::one(), &BigInt::from(100));
        assert!(l.factors.is_empty());
        assert!(l.cofactor.is_one());

        let l = extract_small_factors(&BigInt::from(32 * 7), &BigInt::from(10));
        assert_eq!(l.exponent_of(&BigInt::from(2)), 5);
        assert_eq!(l.exponent_of(&BigInt::from(7)), 1);
        assert!(l.cofactor.is_one());
        assert_eq!(l.product(), BigInt::from(224));
    }

    #[test]
    fn rho_finds_mid_size_prime() {
        let p = BigInt::from(1647622003u64);
        let q: BigInt = "381640024919828593698301".parse().unwrap();
        let n = &p * &p * &q * 12;
        let l = extract_small_factors(&n, &BigInt::from(10_000_000_000u64));
        assert_eq!(l.exponent_of(&p), 2);
        assert_eq!(l.exponent_of(&BigInt::from(2)), 2);
        assert_eq!(l.cofactor, q);
        assert_eq!(l.product(), n);
    }
}
