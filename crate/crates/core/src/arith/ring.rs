//! Coefficient domains.
//!
//! A domain is a small context value (`Ring`) that knows how to combine its
//! elements. Elements themselves carry no context, so a polynomial stores the
//! context once and its terms hold bare elements.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_integer(&self, n: &BigInt) -> Self::Elem;
    /// `a / b` when `b` divides `a` exactly.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    fn characteristic(&self) -> BigUint;

    /// Tag used by the polynomial text format (`Z`, `Q`, `Fp(7)`, ...).
    fn domain_tag(&self) -> String;
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_integer(&BigInt::from(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn pow_big(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }
}

pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// The scalar that brings a coefficient list (leading coefficient first)
    /// to its preferred representative, or `None` when it already is one.
    /// The default makes the leading coefficient 1; `Q` instead clears
    /// denominators and content.
    fn content_scale(&self, coeffs: &[&Self::Elem]) -> Option<Self::Elem> {
        let lc = coeffs.first()?;
        if self.is_one(lc) {
            None
        } else {
            self.inv(lc)
        }
    }
}

/// Finite fields whose elements can be listed by index.
pub trait FiniteField: Field {
    fn order(&self) -> u64;
    fn element(&self, index: u64) -> Self::Elem;

    /// Quadratic character with `chi(0) = 0`, by Euler's criterion.
    fn quadratic_character(&self, a: &Self::Elem) -> i8 {
        if self.is_zero(a) {
            return 0;
        }
        let q = self.order();
        assert!(q % 2 == 1, "quadratic character needs odd order");
        let r = self.pow(a, (q - 1) / 2);
        if self.is_one(&r) {
            1
        } else {
            -1
        }
    }
}

/// The integers.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntegerRing;

impl Ring for IntegerRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_integer(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn exact_div(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn characteristic(&self) -> BigUint {
        BigUint::zero()
    }
    fn domain_tag(&self) -> String {
        "Z".into()
    }
    fn format_elem(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Option<BigInt> {
        s.trim().parse().ok()
    }
}

/// The rationals.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RationalField;

impl Ring for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_integer(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn exact_div(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        self.div(a, b)
    }
    fn characteristic(&self) -> BigUint {
        BigUint::zero()
    }
    fn domain_tag(&self) -> String {
        "Q".into()
    }
    fn format_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse_elem(&self, s: &str) -> Option<BigRational> {
        parse_rational(s)
    }
}

impl Field for RationalField {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn content_scale(&self, coeffs: &[&BigRational]) -> Option<BigRational> {
        if coeffs.is_empty() {
            return None;
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in coeffs {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        if num.is_zero() {
            return None;
        }
        // keep the sign of the first coefficient positive
        if coeffs[0].is_negative() {
            num = -num;
        }
        let s = BigRational::new(den, num);
        (!s.is_one()).then_some(s)
    }
}

/// Parses `"num"` or `"num/den"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}
