//! Residue rings `Z/n` for word-sized `n`, prime fields for word-sized and
//! arbitrary-size primes.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};

use super::ring::{Field, FiniteField, Ring};

#[inline]
fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn reduce_bigint_u64(n: &BigInt, m: u64) -> u64 {
    let r = (n.magnitude() % m).to_u64().unwrap_or(0);
    if n.sign() == Sign::Minus && r != 0 {
        m - r
    } else {
        r
    }
}

/// Inverse of `a` modulo `n` if it exists.
pub fn inv_mod_u64(a: u64, n: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (n as i128, (a % n) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    if t < 0 {
        t += n as i128;
    }
    Some(t as u64)
}

/// `Z/n` for `2 <= n < 2^63`. Not necessarily a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Zmod {
    n: u64,
}

impl Zmod {
    pub fn new(n: u64) -> Self {
        assert!((2..(1 << 63)).contains(&n), "modulus out of range: {n}");
        Zmod { n }
    }
    pub fn modulus(&self) -> u64 {
        self.n
    }
    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.n as i64) as u64
    }
}

impl Ring for Zmod {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.n - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.n - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.n)
    }
    fn from_integer(&self, n: &BigInt) -> u64 {
        reduce_bigint_u64(n, self.n)
    }
    fn exact_div(&self, a: &u64, b: &u64) -> Option<u64> {
        inv_mod_u64(*b, self.n).map(|bi| mulmod(*a, bi, self.n))
    }
    fn characteristic(&self) -> BigUint {
        BigUint::from(self.n)
    }
    fn domain_tag(&self) -> String {
        format!("Zmod({})", self.n)
    }
    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Option<u64> {
        s.trim().parse::<BigInt>().ok().map(|v| self.from_integer(&v))
    }
}

/// Prime field `F_p` for primes below `2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u64,
}

impl Fp {
    /// Panics unless `p` is a prime below `2^63`.
    pub fn new(p: u64) -> Self {
        assert!(
            p < (1 << 63) && super::primality::is_prime_u64(p),
            "not a word-sized prime: {p}"
        );
        Fp { p }
    }
    pub fn modulus(&self) -> u64 {
        self.p
    }
    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }
    /// Canonical lift to `(-p/2, p/2]`.
    pub fn symmetric(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
    /// Some square root of `a`, by Tonelli-Shanks.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        sqrt_mod_prime_u64(a % self.p, self.p)
    }
}

/// Tonelli-Shanks over a word-sized prime.
pub fn sqrt_mod_prime_u64(a: u64, p: u64) -> Option<u64> {
    let f = Zmod::new(p.max(2));
    if p == 2 || a == 0 {
        return Some(a % p);
    }
    if f.pow(&a, (p - 1) / 2) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while f.pow(&z, (p - 1) / 2) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = f.pow(&z, q);
    let mut t = f.pow(&a, q);
    let mut r = f.pow(&a, q.div_ceil(2));
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = f.mul(&tt, &tt);
            i += 1;
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = f.mul(&b, &b);
        }
        m = i;
        c = f.mul(&b, &b);
        t = f.mul(&t, &c);
        r = f.mul(&r, &b);
    }
    Some(r)
}

impl Ring for Fp {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    fn from_integer(&self, n: &BigInt) -> u64 {
        reduce_bigint_u64(n, self.p)
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce(n)
    }
    fn exact_div(&self, a: &u64, b: &u64) -> Option<u64> {
        self.div(a, b)
    }
    fn characteristic(&self) -> BigUint {
        BigUint::from(self.p)
    }
    fn domain_tag(&self) -> String {
        format!("Fp({})", self.p)
    }
    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Option<u64> {
        s.trim().parse::<BigInt>().ok().map(|v| self.from_integer(&v))
    }
}

impl Field for Fp {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            inv_mod_u64(*a, self.p)
        }
    }
}

impl FiniteField for Fp {
    fn order(&self) -> u64 {
        self.p
    }
    fn element(&self, index: u64) -> u64 {
        index % self.p
    }
    fn quadratic_character(&self, a: &u64) -> i8 {
        if *a == 0 {
            return 0;
        }
        if self.p == 2 {
            return 1;
        }
        if self.pow(a, (self.p - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }
}

/// Prime field for an arbitrary-size prime, with Barrett reduction.
#[derive(Clone, Debug)]
pub struct FpBig {
    inner: Arc<BarrettCtx>,
}

#[derive(Debug)]
struct BarrettCtx {
    p: BigUint,
    mu: BigUint,
    k: u64,
}

impl PartialEq for FpBig {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.p == other.inner.p
    }
}

impl FpBig {
    /// `p` must be prime (callers certify it; the constructor only rejects
    /// values below 2).
    pub fn new(p: BigUint) -> Self {
        assert!(p >= BigUint::from(2u32), "modulus must be at least 2");
        let k = p.bits();
        let mu = (BigUint::one() << (2 * k)) / &p;
        FpBig {
            inner: Arc::new(BarrettCtx { p, mu, k }),
        }
    }

    pub fn modulus(&self) -> &BigUint {
        &self.inner.p
    }

    /// Barrett reduction of `x < p^2`.
    pub fn reduce(&self, x: BigUint) -> BigUint {
        let c = &self.inner;
        if x < c.p {
            return x;
        }
        if x.bits() > 2 * c.k {
            return x % &c.p;
        }
        let q = ((&x >> (c.k - 1)) * &c.mu) >> (c.k + 1);
        let mut r = x - q * &c.p;
        while r >= c.p {
            r -= &c.p;
        }
        r
    }

    pub fn symmetric(&self, a: &BigUint) -> BigInt {
        let p = &self.inner.p;
        if a > &(p >> 1) {
            BigInt::from(a.clone()) - BigInt::from(p.clone())
        } else {
            BigInt::from(a.clone())
        }
    }
}

impl Ring for FpBig {
    type Elem = BigUint;
    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn one(&self) -> BigUint {
        BigUint::one()
    }
    fn is_zero(&self, a: &BigUint) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let s = a + b;
        if s >= self.inner.p {
            s - &self.inner.p
        } else {
            s
        }
    }
    fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            a + &self.inner.p - b
        }
    }
    fn neg(&self, a: &BigUint) -> BigUint {
        if a.is_zero() {
            BigUint::zero()
        } else {
            &self.inner.p - a
        }
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        self.reduce(a * b)
    }
    fn from_integer(&self, n: &BigInt) -> BigUint {
        let r = n.magnitude() % &self.inner.p;
        if n.sign() == Sign::Minus && !r.is_zero() {
            &self.inner.p - r
        } else {
            r
        }
    }
    fn exact_div(&self, a: &BigUint, b: &BigUint) -> Option<BigUint> {
        self.div(a, b)
    }
    fn characteristic(&self) -> BigUint {
        self.inner.p.clone()
    }
    fn domain_tag(&self) -> String {
        format!("Fp({})", self.inner.p)
    }
    fn format_elem(&self, a: &BigUint) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Option<BigUint> {
        s.trim().parse::<BigInt>().ok().map(|v| self.from_integer(&v))
    }
}

impl Field for FpBig {
    fn inv(&self, a: &BigUint) -> Option<BigUint> {
        if a.is_zero() {
            return None;
        }
        let p = BigInt::from(self.inner.p.clone());
        let e = BigInt::from(a.clone()).extended_gcd(&p);
        if !e.gcd.is_one() {
            return None;
        }
        Some(self.from_integer(&e.x))
    }
}
