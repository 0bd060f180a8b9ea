//! Dense univariate polynomials.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{Field, Ring};
use crate::linalg::det_bareiss;

/// Coefficients low to high, no trailing zeros. The ring context travels with
/// the polynomial.
#[derive(Clone, Debug)]
pub struct UniPoly<R: Ring> {
    pub ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> PartialEq for UniPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}
impl<R: Ring> Eq for UniPoly<R> {}

impl<R: Ring> UniPoly<R> {
    pub fn new(ring: R, mut coeffs: Vec<R::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { ring, coeffs }
    }

    pub fn from_i64s(ring: R, cs: &[i64]) -> Self {
        let v = cs.iter().map(|&c| ring.from_i64(c)).collect();
        Self::new(ring, v)
    }

    pub fn zero(ring: R) -> Self {
        UniPoly {
            ring,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ring: R) -> Self {
        let c = ring.one();
        Self::new(ring, vec![c])
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Self::new(ring, vec![c])
    }

    /// `c * t^d`
    pub fn monomial(ring: R, c: R::Elem, d: usize) -> Self {
        let mut v = vec![ring.zero(); d + 1];
        v[d] = c;
        Self::new(ring, v)
    }

    pub fn x(ring: R) -> Self {
        let one = ring.one();
        Self::monomial(ring, one, 1)
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = -1`.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lc(&self) -> R::Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.ring.zero())
    }

    fn like(&self, coeffs: Vec<R::Elem>) -> Self {
        Self::new(self.ring.clone(), coeffs)
    }

    pub fn add(&self, o: &Self) -> Self {
        let r = &self.ring;
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => r.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        self.like(v)
    }

    pub fn neg(&self) -> Self {
        self.like(self.coeffs.iter().map(|c| self.ring.neg(c)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.ring.clone());
        }
        let r = &self.ring;
        let mut v = vec![r.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = r.add(&v[i + j], &r.mul(a, b));
            }
        }
        self.like(v)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        self.like(self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect())
    }

    pub fn shift(&self, d: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.ring.zero(); d];
        v.extend(self.coeffs.iter().cloned());
        self.like(v)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.ring.clone());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &R::Elem) -> R::Elem {
        let r = &self.ring;
        self.coeffs
            .iter()
            .rev()
            .fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c))
    }

    pub fn derivative(&self) -> Self {
        let r = &self.ring;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| r.mul(c, &r.from_i64(i as i64)))
            .collect();
        self.like(v)
    }

    pub fn map<S: Ring>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> UniPoly<S> {
        let v = self.coeffs.iter().map(f).collect();
        UniPoly::new(ring, v)
    }

    pub fn format(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.ring.is_zero(c) {
                continue;
            }
            let cs = self.ring.format_elem(c);
            parts.push(match i {
                0 => cs,
                1 => format!("({cs})*{var}"),
                _ => format!("({cs})*{var}^{i}"),
            });
        }
        parts.join(" + ")
    }
}

/// Resultant by the Sylvester determinant, with fraction-free elimination.
pub fn resultant<R: Ring>(a: &UniPoly<R>, b: &UniPoly<R>) -> Option<R::Elem> {
    let (m, n) = (a.degree()?, b.degree()?);
    let r = &a.ring;
    if m == 0 && n == 0 {
        return Some(r.one());
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![r.zero(); size];
        for (j, c) in a.coeffs.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![r.zero(); size];
        for (j, c) in b.coeffs.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    Some(det_bareiss(r, rows))
}

impl<F: Field> UniPoly<F> {
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.ring.inv(&self.lc()).expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.ring.is_one(&self.lc())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let r = &self.ring;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(r.clone()), self.clone());
        }
        let inv = r.inv(&d.lc()).unwrap();
        let mut rem = self.coeffs.clone();
        let mut q = vec![r.zero(); rem.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r.mul(&rem[i + dd], &inv);
            if r.is_zero(&c) {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = r.sub(&rem[i + j], &r.mul(&c, dc));
            }
            q[i] = c;
        }
        rem.truncate(dd);
        (self.like(q), self.like(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient, `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let ring = self.ring.clone();
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(ring.clone()), Self::zero(ring.clone()));
        let (mut t0, mut t1) = (Self::zero(ring.clone()), Self::one(ring.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = ring.inv(&r0.lc()).unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// `self^e mod m` for a big exponent.
    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.ring.clone()).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn mulmod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    /// `g(h) mod m` by Horner.
    pub fn compose_mod(&self, h: &Self, m: &Self) -> Self {
        let mut acc = Self::zero(self.ring.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(h).add(&Self::constant(self.ring.clone(), c.clone())).rem(m);
        }
        acc
    }

    /// Monic product of the distinct irreducible factors.
    ///
    /// In characteristic `p` a zero derivative means `self = g(t^p)`; the
    /// `p`-th root is taken coefficientwise, which requires the field to be
    /// perfect with `c -> c^(1/p)` computable. Prime fields qualify since
    /// Frobenius is the identity there.
    pub fn squarefree_part(&self) -> Self {
        assert!(!self.is_zero(), "squarefree part of zero");
        let mut acc = Self::one(self.ring.clone());
        for (g, _) in self.squarefree_decomposition() {
            acc = acc.mul(&g);
        }
        acc.monic()
    }

    /// Yun-style decomposition into pairwise coprime squarefree monic factors
    /// with multiplicities; constant factors are dropped.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u64)> {
        let p = self.ring.characteristic().to_u64();
        let mut out = Vec::new();
        self.sqf_rec(1, p, &mut out);
        out.sort_by_key(|(_, m)| *m);
        // merge equal multiplicities produced by the p-th root branch
        let mut merged: Vec<(Self, u64)> = Vec::new();
        for (g, m) in out {
            if let Some(last) = merged.last_mut().filter(|(_, lm)| *lm == m) {
                last.0 = last.0.mul(&g);
            } else {
                merged.push((g, m));
            }
        }
        merged
    }

    fn sqf_rec(&self, mult: u64, p: Option<u64>, out: &mut Vec<(Self, u64)>) {
        let f = self.monic();
        if f.deg() <= 0 {
            return;
        }
        let d = f.derivative();
        if d.is_zero() {
            let p = p.filter(|&p| p > 0).expect("zero derivative in characteristic 0");
            f.pth_root(p).sqf_rec(mult * p, Some(p), out);
            return;
        }
        let mut c = f.gcd(&d);
        let mut w = f.divrem(&c).0;
        let mut i = 1;
        while w.deg() > 0 {
            let y = w.gcd(&c);
            let z = w.divrem(&y).0;
            if z.deg() > 0 {
                out.push((z.monic(), i * mult));
            }
            i += 1;
            w = y;
            c = c.divrem(&w).0;
        }
        if c.deg() > 0 {
            let p = p.filter(|&p| p > 0).expect("inseparable part in characteristic 0");
            c.pth_root(p).sqf_rec(mult * p, Some(p), out);
        }
    }

    /// `g` with `g(t)^p = self(t)` for `self` a polynomial in `t^p` over a
    /// prime field.
    fn pth_root(&self, p: u64) -> Self {
        let v = self
            .coeffs
            .iter()
            .step_by(p as usize)
            .cloned()
            .collect();
        self.like(v)
    }

    /// The `q`-power Frobenius `t^q mod self`.
    pub fn frobenius_image(&self, q: &BigUint) -> Self {
        Self::x(self.ring.clone()).powmod(q, self)
    }

    /// Rabin's test over `F_q`.
    pub fn is_irreducible(&self, q: &BigUint) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = self.monic();
        let x = Self::x(self.ring.clone());
        let xq = f.frobenius_image(q);
        // t^(q^k) mod f by repeated composition with t^q
        let frob_pow = |k: usize| {
            let mut h = x.clone();
            for _ in 0..k {
                h = h.compose_mod(&xq, &f);
            }
            h
        };
        if frob_pow(n).sub(&x).rem(&f).deg() >= 0 {
            return false;
        }
        for d in prime_divisors(n) {
            let h = frob_pow(n / d).sub(&x);
            if f.gcd(&h).deg() > 0 {
                return false;
            }
        }
        true
    }

    /// Distinct-degree factorization of a squarefree monic polynomial over
    /// `F_q`: pairs `(g_d, d)` where `g_d` is the product of the degree-`d`
    /// irreducible factors.
    pub fn distinct_degree(&self, q: &BigUint) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        let mut f = self.monic();
        let x = Self::x(self.ring.clone());
        let xq = f.frobenius_image(q);
        let mut h = x.clone();
        let mut d = 0;
        while f.deg() >= 2 * (d as i64 + 1) {
            d += 1;
            h = h.compose_mod(&xq.rem(&f), &f);
            let g = f.gcd(&h.sub(&x));
            if g.deg() > 0 {
                out.push((g.clone(), d));
                f = f.divrem(&g).0;
                h = h.rem(&f);
            }
        }
        if f.deg() > 0 {
            let deg = f.deg() as usize;
            out.push((f, deg));
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a product of distinct degree-`d`
    /// irreducibles over the prime field `F_p`. Deterministic for a fixed seed.
    pub fn equal_degree(&self, d: usize, seed: u64) -> Vec<Self> {
        let f = self.monic();
        let n = f.degree().unwrap_or(0);
        if n == d {
            return vec![f];
        }
        if n == 0 {
            return vec![];
        }
        let p = self.ring.characteristic();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pb = BigInt::from(p.clone());
        let random_elem = |rng: &mut ChaCha8Rng| {
            let v = BigInt::from(rng.gen::<u128>()) % &pb;
            self.ring.from_integer(&v)
        };
        loop {
            let a = self.like((0..n).map(|_| random_elem(&mut rng)).collect());
            if a.deg() <= 0 {
                continue;
            }
            let b = if p == BigUint::from(2u32) {
                // trace map a + a^2 + ... + a^(2^(d-1))
                let mut t = a.rem(&f);
                let mut s = t.clone();
                for _ in 1..d {
                    t = t.mulmod(&t, &f);
                    s = s.add(&t);
                }
                s
            } else {
                let qd = num_traits::pow(p.clone(), d);
                let e = (qd - BigUint::one()) >> 1u32;
                a.powmod(&e, &f).sub(&Self::one(self.ring.clone()))
            };
            let g = f.gcd(&b);
            if g.deg() > 0 && g.deg() < f.deg() {
                let h = f.divrem(&g).0;
                let mut out = g.equal_degree(d, rng.gen());
                out.extend(h.equal_degree(d, rng.gen()));
                return out;
            }
        }
    }

    /// Full factorization over a prime field: monic irreducibles with
    /// multiplicities, sorted by degree then coefficients.
    pub fn factor_prime_field(&self) -> Vec<(Self, u64)>
    where
        F::Elem: Ord,
    {
        let q = self.ring.characteristic();
        let mut out = Vec::new();
        for (sqf, m) in self.squarefree_decomposition() {
            for (g, d) in sqf.distinct_degree(&q) {
                for h in g.equal_degree(d, 0x5eed ^ d as u64) {
                    out.push((h, m));
                }
            }
        }
        out.sort_by(|a, b| {
            a.0.deg()
                .cmp(&b.0.deg())
                .then_with(|| a.0.coeffs.cmp(&b.0.coeffs))
        });
        out
    }
}

pub(crate) fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Fp, IntegerRing};

    fn fp(p: u64, cs: &[i64]) -> UniPoly<Fp> {
        UniPoly::from_i64s(Fp::new(p), cs)
    }

    #[test]
    fn resultant_examples() {
        let z = IntegerRing;
        let a = UniPoly::from_i64s(z.clone(), &[-3, 1]);
        let b = UniPoly::from_i64s(z.clone(), &[-7, 1]);
        // Res(x - 3, x - 7) = 3 - 7
        assert_eq!(resultant(&a, &b), Some(BigInt::from(-4)));
        let f = UniPoly::from_i64s(z.clone(), &[-1, 0, 1]);
        let g = UniPoly::from_i64s(z.clone(), &[-4, 0, 1]);
        assert_eq!(resultant(&f, &g), Some(BigInt::from(9)));
        assert_eq!(resultant(&f, &f), Some(BigInt::from(0)));
        assert_eq!(resultant(&f, &UniPoly::zero(z)), None);
    }

    #[test]
    fn squarefree_examples() {
        // (x-1)^2 (x+2) over F_101
        let a = fp(101, &[-1, 1]);
        let b = fp(101, &[2, 1]);
        let f = a.mul(&a).mul(&b);
        assert_eq!(f.squarefree_part(), a.mul(&b));
        // x^6 over F_13
        let x6 = fp(13, &[0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(x6.squarefree_part(), fp(13, &[0, 1]));
        // (x^13 - x)^3 (x+1) over F_13 involves a p-th power
        let g = fp(13, &[0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let h = g.pow(13).mul(&fp(13, &[1, 1]));
        assert_eq!(h.squarefree_part(), g);
    }

    #[test]
    fn irreducibility_and_factoring() {
        let q = BigUint::from(2u32);
        assert!(fp(2, &[1, 1, 1]).is_irreducible(&q));
        assert!(!fp(2, &[1, 0, 1]).is_irreducible(&q));
        assert!(fp(2, &[1, 1, 0, 0, 1]).is_irreducible(&q));
        assert!(!fp(2, &[1, 1, 1, 1, 1, 1]).is_irreducible(&q)); // (x^2+x+1)(x^3+x^2+1)...
        let q13 = BigUint::from(13u32);
        let f = fp(13, &[2, 0, 1]); // x^2 + 2: -2 = 11 is a non-residue mod 13
        assert!(f.is_irreducible(&q13));
        let g = fp(13, &[1, 1]).mul(&f).mul(&f).mul(&fp(13, &[5, 1]));
        let fac = g.factor_prime_field();
        assert_eq!(fac.len(), 3);
        let total: usize = fac.iter().map(|(h, m)| h.degree().unwrap() * *m as usize).sum();
        assert_eq!(total, 6);
        let mut prod = fp(13, &[1]);
        for (h, m) in &fac {
            prod = prod.mul(&h.pow(*m));
        }
        assert_eq!(prod, g.monic());
    }

    #[test]
    fn edf_splits_roots() {
        // product of (x - a) for a in 1..=6 over F_101
        let mut f = fp(101, &[1]);
        for a in 1..=6 {
            f = f.mul(&fp(101, &[-a, 1]));
        }
        let mut roots: Vec<u64> = f
            .equal_degree(1, 7)
            .into_iter()
            .map(|g| Fp::new(101).neg(&g.coeff(0)))
            .collect();
        roots.sort();
        assert_eq!(roots, vec![1, 2, 3, 4, 5, 6]);
    }
}
