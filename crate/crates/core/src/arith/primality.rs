//! Miller-Rabin primality testing.
//!
//! Below `2^64` the answer is exact: the first twelve primes are a complete
//! witness set for that range. Above it, the test uses those twelve bases plus
//! `rounds` extra bases drawn from a ChaCha stream seeded with the SHA-256 of
//! the input's decimal digits, so repeated runs test the same witnesses.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

const SMALL_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, n: u64) -> u64 {
    let mut r = 1 % n;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, n);
        }
        a = mulmod(a, a, n);
        e >>= 1;
    }
    r
}

/// Exact primality for any `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in SMALL_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL_BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn strong_probable_prime(n: &BigUint, d: &BigUint, s: u64, a: &BigUint) -> bool {
    let n1 = n - 1u32;
    let mut x = a.modpow(d, n);
    if x.is_one() || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n1 {
            return true;
        }
    }
    false
}

/// Whether this input is in the range where [`is_probable_prime`] is exact.
pub fn is_proven_range(n: &BigInt) -> bool {
    n.to_u64().is_some()
}

/// Primality test: exact below `2^64`, strong probable prime above with the
/// fixed witness schedule described in the module docs.
pub fn is_probable_prime(n: &BigInt, rounds: u32) -> bool {
    if n.sign() == num_bigint::Sign::Minus {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let n = n.magnitude();
    for p in SMALL_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    for a in SMALL_BASES {
        if !strong_probable_prime(n, &d, s, &BigUint::from(a)) {
            return false;
        }
    }
    let seed: [u8; 32] = Sha256::digest(n.to_str_radix(10).as_bytes()).into();
    let mut rng = ChaCha20Rng::from_seed(seed);
    let lo = BigUint::from(2u32);
    for _ in 0..rounds {
        let a = rng.gen_biguint_range(&lo, &n1);
        if !strong_probable_prime(n, &d, s, &a) {
            return false;
        }
    }
    true
}

/// All primes `<= bound` by a simple sieve.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &b)| b.then_some(k as u64))
        .collect()
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: &BigInt) -> BigInt {
    let mut c = n + 1u32;
    if c < BigInt::from(2) {
        return BigInt::from(2);
    }
    loop {
        if is_probable_prime(&c, 8) {
            return c;
        }
        c += 1u32;
    }
}
