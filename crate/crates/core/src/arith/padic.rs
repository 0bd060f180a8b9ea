//! Square classes in `Q_p`.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::nt::{jacobi, split_valuation};
use super::ArithError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitClassWitness {
    /// Legendre symbol of the unit part, odd `p`.
    Legendre(i8),
    /// Unit part reduced mod 8, `p = 2`.
    Mod8(u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareClassResult {
    pub is_square: bool,
    pub valuation: i64,
    pub witness: UnitClassWitness,
}

/// Decides whether `a` is a square in `Q_p`.
///
/// Writes `a = p^v u` with `u` a `p`-adic unit. For odd `p` the answer is
/// `v` even and `(u/p) = 1`; for `p = 2` it is `v` even and `u = 1 (mod 8)`.
pub fn padic_square_class(a: &BigRational, p: &BigInt) -> Result<SquareClassResult, ArithError> {
    if a.is_zero() {
        return Err(ArithError::ZeroInput("square class of 0"));
    }
    if p < &BigInt::from(2) {
        return Err(ArithError::InvalidModulus(p.to_string()));
    }
    let (vn, un) = split_valuation(a.numer(), p);
    let (vd, ud) = split_valuation(a.denom(), p);
    let valuation = vn as i64 - vd as i64;
    let even = valuation % 2 == 0;
    if p == &BigInt::from(2) {
        // u = un / ud; ud is odd, so u = un * ud (mod 8) as ud^2 = 1 (mod 8)
        let r = (un * ud).mod_floor(&BigInt::from(8)).to_u8().unwrap();
        return Ok(SquareClassResult {
            is_square: even && r == 1,
            valuation,
            witness: UnitClassWitness::Mod8(r),
        });
    }
    // the class of un/ud equals the class of un*ud
    let l = jacobi(&(un * ud), p);
    Ok(SquareClassResult {
        is_square: even && l == 1,
        valuation,
        witness: UnitClassWitness::Legendre(l),
    })
}

/// Whether the integer `a` is a square in `Q_p`; convenience wrapper.
pub fn is_padic_square(a: &BigInt, p: &BigInt) -> Result<bool, ArithError> {
    padic_square_class(&BigRational::from_integer(a.clone()), p).map(|r| r.is_square)
}

/// Square root of `a` modulo an odd prime `p` by Tonelli-Shanks, or `None`
/// when `a` is a non-residue. The root returned is the smaller of the two.
pub fn sqrt_mod_prime(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(a);
    }
    if jacobi(&a, p) != 1 {
        return None;
    }
    let one = BigInt::one();
    let pm1: BigInt = p - 1;
    let mut s = 0u32;
    let mut q = pm1.clone();
    while q.is_even() {
        q >>= 1u32;
        s += 1;
    }
    let mut z = BigInt::from(2);
    while jacobi(&z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1) >> 1u32), p);
    while !t.is_one() {
        let mut i = 0u32;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2).mod_floor(p);
            i += 1;
        }
        let b = c.modpow(&(&one << (m - i - 1)), p);
        r = (r * &b).mod_floor(p);
        c = (&b * &b).mod_floor(p);
        t = (t * &c).mod_floor(p);
        m = i;
    }
    let other = p - &r;
    Some(r.min(other))
}

/// An integer `w` with `w^2 = a (mod p^t)`, following the `p`-adic square
/// root of `a`; `None` when `a` is not a square in `Q_p`. The root is chosen
/// canonically from the smaller residue at the first step.
pub fn padic_sqrt(a: &BigInt, p: &BigInt, t: u32) -> Option<BigInt> {
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    let (v, u) = split_valuation(a, p);
    if v % 2 == 1 {
        return None;
    }
    let half = (v / 2) as u32;
    let pk = |k: u32| num_traits::pow(p.clone(), k as usize);
    if t <= 2 * half {
        // any multiple of p^half works; return the full-precision root anyway
        return padic_sqrt(a, p, 2 * half + 1);
    }
    // only the unit part needs precision t - 2 * half
    let need = t - 2 * half;
    let root = if p == &BigInt::from(2) {
        if u.mod_floor(&BigInt::from(8)) != BigInt::one() {
            return None;
        }
        // bit-by-bit: r^2 = u mod 2^(i+1) after step i
        let mut r = BigInt::one();
        for i in 3..need.max(3) {
            let m = pk(i + 1);
            if !(&r * &r - &u).mod_floor(&m).is_zero() {
                r += pk(i - 1);
            }
        }
        r.mod_floor(&pk(need.max(3)))
    } else {
        let mut r = sqrt_mod_prime(&u, p)?;
        // Newton: r <- r - (r^2 - u) / (2 r), precision doubling
        let mut prec = 1u32;
        while prec < need {
            prec = (2 * prec).min(need);
            let m = pk(prec);
            let two_r = (BigInt::from(2) * &r).mod_floor(&m);
            let inv = two_r.modinv(&m)?;
            r = (&r - (&r * &r - &u) * inv).mod_floor(&m);
        }
        r
    };
    Some(root * pk(half))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn square_roots() {
        let p = BigInt::from(1_000_003);
        for a in [2i64, 3, 5, 10, 12345] {
            let a = BigInt::from(a);
            match sqrt_mod_prime(&a, &p) {
                Some(r) => assert_eq!((&r * &r - &a).mod_floor(&p), BigInt::zero()),
                None => assert_eq!(jacobi(&a, &p), -1),
            }
        }
        for (a, p) in [(17i64, 2i64), (68, 2), (2 * 49, 7), (2, 7), (-520729088, 3), (1 << 20, 2)] {
            let (a, p) = (BigInt::from(a), BigInt::from(p));
            let w = padic_sqrt(&a, &p, 30).unwrap();
            let m = num_traits::pow(p.clone(), 30);
            assert_eq!((&w * &w - &a).mod_floor(&m), BigInt::zero(), "{a} {p}");
        }
        assert!(padic_sqrt(&BigInt::from(5), &BigInt::from(2), 10).is_none());
        assert!(padic_sqrt(&BigInt::from(3), &BigInt::from(7), 10).is_none());
    }

    #[test]
    fn basic_classes() {
        let two = BigInt::from(2);
        let r = padic_square_class(&q(17), &two).unwrap();
        assert!(r.is_square);
        assert_eq!(r.witness, UnitClassWitness::Mod8(1));
        assert!(!padic_square_class(&q(5), &two).unwrap().is_square);
        assert!(padic_square_class(&q(68), &two).unwrap().is_square);
        assert!(!padic_square_class(&q(34), &two).unwrap().is_square);
        assert!(padic_square_class(&q(-7), &two).unwrap().is_square);
        for p in [3i64, 5, 7, 11, 2851] {
            let r = padic_square_class(&q(p), &BigInt::from(p)).unwrap();
            assert!(!r.is_square);
            assert_eq!(r.valuation, 1);
        }
        let r = padic_square_class(&BigRational::new(4.into(), 75.into()), &BigInt::from(5));
        // 4/75 = 5^-2 * 4/3 and 4/3 = 3 is a non-residue mod 5
        let r = r.unwrap();
        assert_eq!(r.valuation, -2);
        assert!(!r.is_square);
        assert!(padic_square_class(&q(0), &two).is_err());
    }

    #[test]
    fn odd_prime_matches_brute_force() {
        // oracle: u is a square mod p iff some x with x^2 = u
        for p in [3i64, 5, 7, 13] {
            for u in 1..p {
                let brute = (1..p).any(|x| (x * x - u) % p == 0);
                let r = padic_square_class(&q(u), &BigInt::from(p)).unwrap();
                assert_eq!(r.is_square, brute);
            }
        }
    }
}
