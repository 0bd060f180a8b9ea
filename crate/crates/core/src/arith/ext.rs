//! Extension fields `F[t]/(g)` for a monic irreducible `g`.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use super::ring::{Field, FiniteField, Ring};
use super::ArithError;
use crate::poly::univariate::UniPoly;

#[derive(Clone, Debug)]
pub struct ExtField<F: Field> {
    inner: Arc<ExtCtx<F>>,
}

#[derive(Debug)]
struct ExtCtx<F: Field> {
    base: F,
    modulus: UniPoly<F>,
    degree: usize,
}

impl<F: Field> PartialEq for ExtField<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base && self.inner.modulus == other.inner.modulus)
    }
}

impl<F: Field> ExtField<F> {
    /// `modulus` must be irreducible over the base field of order `q`; this is
    /// checked with Rabin's test.
    pub fn new(modulus: UniPoly<F>, q: &BigUint) -> Result<Self, ArithError> {
        if !modulus.is_irreducible(q) {
            return Err(ArithError::Reducible);
        }
        Ok(Self::new_unchecked(modulus))
    }

    /// Skips the irreducibility test; for moduli already known irreducible
    /// (factors returned by the factorization routines).
    pub fn new_unchecked(modulus: UniPoly<F>) -> Self {
        let modulus = modulus.monic();
        let degree = modulus.degree().expect("nonzero modulus");
        ExtField {
            inner: Arc::new(ExtCtx {
                base: modulus.ring.clone(),
                modulus,
                degree,
            }),
        }
    }

    pub fn base(&self) -> &F {
        &self.inner.base
    }

    pub fn modulus(&self) -> &UniPoly<F> {
        &self.inner.modulus
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn embed(&self, a: &F::Elem) -> Vec<F::Elem> {
        self.from_poly(UniPoly::constant(self.base().clone(), a.clone()))
    }

    /// The class of `t`.
    pub fn generator(&self) -> Vec<F::Elem> {
        self.from_poly(UniPoly::x(self.base().clone()))
    }

    pub fn to_poly(&self, a: &[F::Elem]) -> UniPoly<F> {
        UniPoly::new(self.base().clone(), a.to_vec())
    }

    pub fn from_poly(&self, p: UniPoly<F>) -> Vec<F::Elem> {
        p.rem(self.modulus()).coeffs().to_vec()
    }
}

impl<F: FiniteField> ExtField<F> {
    /// Degree-`k` extension of a finite field, using the first irreducible
    /// monic polynomial in a fixed enumeration order.
    pub fn of_degree(base: F, k: usize) -> Self {
        assert!(k >= 1);
        let q = BigUint::from(base.order());
        let mut counter: u64 = 0;
        loop {
            // digits of counter in base q give the lower coefficients
            let mut c = counter;
            let mut v = Vec::with_capacity(k + 1);
            for _ in 0..k {
                v.push(base.element(c % base.order()));
                c /= base.order();
            }
            v.push(base.one());
            let g = UniPoly::new(base.clone(), v);
            if g.is_irreducible(&q) {
                return Self::new_unchecked(g);
            }
            counter += 1;
        }
    }
}

impl<F: Field> Ring for ExtField<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        Vec::new()
    }
    fn one(&self) -> Self::Elem {
        vec![self.base().one()]
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.to_poly(a).add(&self.to_poly(b)).coeffs().to_vec()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.to_poly(a).sub(&self.to_poly(b)).coeffs().to_vec()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.to_poly(a).neg().coeffs().to_vec()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.from_poly(self.to_poly(a).mul(&self.to_poly(b)))
    }
    fn from_integer(&self, n: &BigInt) -> Self::Elem {
        self.embed(&self.base().from_integer(n))
    }
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.div(a, b)
    }
    fn characteristic(&self) -> BigUint {
        self.base().characteristic()
    }
    fn domain_tag(&self) -> String {
        format!(
            "Ext({}; {})",
            self.base().domain_tag(),
            self.modulus().format("t")
        )
    }
    fn format_elem(&self, a: &Self::Elem) -> String {
        format!("[{}]", self.to_poly(a).format("t"))
    }
    fn parse_elem(&self, s: &str) -> Option<Self::Elem> {
        // base-field constants only
        self.base().parse_elem(s).map(|c| self.embed(&c))
    }
}

impl<F: Field> Field for ExtField<F> {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.is_empty() {
            return None;
        }
        let (g, s, _) = self.to_poly(a).ext_gcd(self.modulus());
        (g.deg() == 0).then(|| self.from_poly(s))
    }
}

impl<F: FiniteField> FiniteField for ExtField<F> {
    fn order(&self) -> u64 {
        let q = self.base().order();
        q.checked_pow(self.degree() as u32)
            .expect("field order exceeds u64")
    }

    fn element(&self, index: u64) -> Self::Elem {
        let q = self.base().order();
        let mut c = index;
        let mut v = Vec::with_capacity(self.degree());
        for _ in 0..self.degree() {
            v.push(self.base().element(c % q));
            c /= q;
        }
        UniPoly::new(self.base().clone(), v).coeffs().to_vec()
    }

    fn quadratic_character(&self, a: &Self::Elem) -> i8 {
        // chi_{q^k}(a) = chi_q(Norm(a)); the norm is a^((q^k-1)/(q-1))
        if a.is_empty() {
            return 0;
        }
        let q = BigUint::from(self.base().order());
        if (&q % 2u32).is_zero() {
            return 1;
        }
        let qk = num_traits::pow(q.clone(), self.degree());
        let e = (qk - 1u32) / (q - 1u32);
        let n = self.pow_big(a, &e);
        debug_assert!(n.len() <= 1);
        let c = n.first().cloned().unwrap_or_else(|| self.base().zero());
        self.base().quadratic_character(&c)
    }
}

/// The `p`-th power Frobenius.
pub fn frobenius<F: FiniteField>(k: &ExtField<F>, a: &[F::Elem]) -> Vec<F::Elem> {
    let p = k.characteristic().to_u64().expect("word-sized characteristic");
    k.pow(&a.to_vec(), p)
}
