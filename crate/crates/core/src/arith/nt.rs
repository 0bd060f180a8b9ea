//! gcd, CRT, rational reconstruction, Jacobi symbols, valuations.

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ArithError;

/// Nonnegative gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Result of combining congruences: `value` in `[0, modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrtResidue {
    pub value: BigInt,
    pub modulus: BigInt,
}

impl CrtResidue {
    /// The representative in `(-modulus/2, modulus/2]`.
    pub fn symmetric(&self) -> BigInt {
        let half = &self.modulus >> 1u32;
        if self.value > half {
            &self.value - &self.modulus
        } else {
            self.value.clone()
        }
    }
}

/// Combines `x = r_i (mod m_i)`. Non-coprime moduli are accepted as long as
/// the residues agree on the common factors.
pub fn crt_combine(residues: &[(BigInt, BigInt)]) -> Result<CrtResidue, ArithError> {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (r, n) in residues {
        if n.sign() != Sign::Plus {
            return Err(ArithError::InvalidModulus(n.to_string()));
        }
        let r = r.mod_floor(n);
        let e = m.extended_gcd(n);
        let g = e.gcd.clone();
        let diff = &r - &x;
        if !(&diff % &g).is_zero() {
            return Err(ArithError::InconsistentCongruences);
        }
        let lcm = &m / &g * n;
        // x + m * ((diff/g) * inv(m/g) mod n/g)
        let ng = n / &g;
        let t = ((&diff / &g) * &e.x).mod_floor(&ng);
        x = (&x + &m * t).mod_floor(&lcm);
        m = lcm;
    }
    Ok(CrtResidue { value: x, modulus: m })
}

/// Finds `a/b` with `|a|, b <= sqrt(modulus/2)`, `gcd(b, modulus) = 1` and
/// `a = r b (mod modulus)`; `None` when no such pair exists.
pub fn rational_reconstruct(r: &BigInt, modulus: &BigInt) -> Option<BigRational> {
    if modulus <= &BigInt::one() {
        return None;
    }
    let bound = (modulus / 2u32).sqrt();
    let (mut r0, mut r1) = (modulus.clone(), r.mod_floor(modulus));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        (r0, r1) = (r1.clone(), &r0 - &q * &r1);
        (t0, t1) = (t1.clone(), &t0 - &q * &t1);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !gcd(&t1, modulus).is_one() {
        return None;
    }
    let (mut a, mut b) = (r1, t1);
    if b.is_negative() {
        a = -a;
        b = -b;
    }
    Some(BigRational::new(a, b))
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: &BigInt, n: &BigInt) -> i8 {
    assert!(n.is_positive() && n.is_odd(), "jacobi needs odd positive n");
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1i8;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1u32;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// `v_p(n)` and the `p`-free part of a nonzero integer.
pub fn split_valuation(n: &BigInt, p: &BigInt) -> (u64, BigInt) {
    assert!(!n.is_zero());
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1;
    }
    (v, m)
}

pub fn valuation(n: &BigInt, p: &BigInt) -> Option<u64> {
    (!n.is_zero()).then(|| split_valuation(n, p).0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&bi(24), &bi(9)), bi(3));
        assert_eq!(gcd(&bi(-14), &bi(0)), bi(14));
        assert_eq!(gcd(&bi(0), &bi(0)), bi(0));
    }

    #[test]
    fn crt_examples() {
        let r = crt_combine(&[(bi(1), bi(3)), (bi(2), bi(5))]).unwrap();
        assert_eq!(r.value, bi(7));
        assert_eq!(r.symmetric(), bi(7));
        let m = bi(1_000_003);
        assert_eq!(crt_combine(&[(bi(0), m.clone())]).unwrap().value, bi(0));

        // oracle: scan 0..1001
        let found: Vec<i64> = (0..1001)
            .filter(|x| x % 7 == 3 && x % 11 == 4 && x % 13 == 5)
            .collect();
        assert_eq!(found.len(), 1);
        let r = crt_combine(&[(bi(3), bi(7)), (bi(4), bi(11)), (bi(5), bi(13))]).unwrap();
        assert_eq!(r.value, bi(found[0]));
        assert_eq!(r.value, bi(213));
        assert_eq!(r.modulus, bi(1001));
        assert_eq!(r.symmetric(), bi(213));
        let r = crt_combine(&[(bi(6), bi(7)), (bi(10), bi(11))]).unwrap();
        assert_eq!(r.value, bi(76));
        assert_eq!(r.symmetric(), bi(-1));
    }

    #[test]
    fn crt_non_coprime() {
        let r = crt_combine(&[(bi(2), bi(6)), (bi(5), bi(9))]).unwrap();
        assert_eq!(r.value, bi(14));
        assert_eq!(r.modulus, bi(18));
        assert!(matches!(
            crt_combine(&[(bi(1), bi(6)), (bi(2), bi(9))]),
            Err(ArithError::InconsistentCongruences)
        ));
    }

    #[test]
    fn ratrecon_examples() {
        assert_eq!(
            rational_reconstruct(&bi(51), &bi(101)),
            Some(BigRational::new(bi(1), bi(2)))
        );
        assert_eq!(
            rational_reconstruct(&bi(0), &bi(1_000_003)),
            Some(BigRational::zero())
        );
        assert_eq!(
            rational_reconstruct(&bi(7), &bi(1_000_003)),
            Some(BigRational::from_integer(bi(7)))
        );
        // 1/8 mod 11 has no representative with |a|, b <= 2
        let r = rational_reconstruct(&bi(7), &bi(11));
        assert_eq!(r, None);
    }

    #[test]
    fn jacobi_matches_euler() {
        for p in [3i64, 5, 7, 11, 13, 101] {
            for a in 0..p {
                let e = BigInt::from(a).modpow(&bi((p - 1) / 2), &bi(p));
                let expect = if a == 0 {
                    0
                } else if e == bi(1) {
                    1
                } else {
                    -1
                };
                assert_eq!(jacobi(&bi(a), &bi(p)), expect, "a={a} p={p}");
            }
        }
    }
}
