//! Sparse multivariate polynomials, dense univariate polynomials, binary
//! forms, square roots, and the text format.

pub mod binary;
pub mod monomial;
pub mod sqrt;
pub mod text;
pub mod univariate;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};

use crate::arith::{Field, Ring};

pub use binary::{restrict_to_line, BinaryForm};
pub use monomial::{Monomial, MonomialOrder};
pub use sqrt::poly_sqrt;
pub use text::{format_infix, format_poly, parse_poly, parse_expr, parse_poly_in, read_header, DomainSpec, Header, PolyParseError};
pub use univariate::{resultant, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("point has {got} coordinates, ring has {want} variables")]
    Arity { got: usize, want: usize },
    #[error("rings differ: {0}")]
    RingMismatch(String),
    #[error("parametrization has rank < 2")]
    RankDeficient,
    #[error("{0}")]
    Degenerate(&'static str),
}

/// Coefficient domain, variable names and active monomial order.
#[derive(Clone, Debug)]
pub struct PolyRing<R: Ring> {
    inner: Arc<PolyRingCtx<R>>,
}

#[derive(Debug)]
struct PolyRingCtx<R: Ring> {
    coeffs: R,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl<R: Ring> PartialEq for PolyRing<R> {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &o.inner)
            || (self.inner.coeffs == o.inner.coeffs
                && self.inner.vars == o.inner.vars
                && self.inner.order == o.inner.order)
    }
}

impl<R: Ring> PolyRing<R> {
    pub fn new<S: AsRef<str>>(coeffs: R, vars: &[S], order: MonomialOrder) -> Self {
        PolyRing {
            inner: Arc::new(PolyRingCtx {
                coeffs,
                vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
                order,
            }),
        }
    }

    pub fn coeffs(&self) -> &R {
        &self.inner.coeffs
    }

    pub fn vars(&self) -> &[String] {
        &self.inner.vars
    }

    pub fn nvars(&self) -> usize {
        self.inner.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.inner.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.inner.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        PolyRing::new(self.coeffs().clone(), self.vars(), order)
    }

    pub fn with_coeffs<S: Ring>(&self, coeffs: S) -> PolyRing<S> {
        PolyRing::new(coeffs, self.vars(), self.order())
    }

    pub fn zero(&self) -> Polynomial<R> {
        Polynomial {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(&self) -> Polynomial<R> {
        self.constant(self.coeffs().one())
    }

    pub fn constant(&self, c: R::Elem) -> Polynomial<R> {
        self.term(c, Monomial::one(self.nvars()))
    }

    pub fn term(&self, c: R::Elem, m: Monomial) -> Polynomial<R> {
        assert_eq!(m.nvars(), self.nvars());
        if self.coeffs().is_zero(&c) {
            return self.zero();
        }
        Polynomial {
            ring: self.clone(),
            terms: vec![(m, c)],
        }
    }

    pub fn var(&self, i: usize) -> Polynomial<R> {
        self.term(self.coeffs().one(), Monomial::var(self.nvars(), i, 1))
    }

    /// Builds from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, R::Elem)>) -> Polynomial<R> {
        let r = self.coeffs();
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), self.nvars());
            match acc.get_mut(&m) {
                Some(e) => *e = r.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !r.is_zero(c)).collect();
        let ord = self.order();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }

    /// Wraps terms already strictly decreasing in this ring's order with
    /// nonzero coefficients.
    pub(crate) fn from_sorted_terms(&self, terms: Vec<(Monomial, R::Elem)>) -> Polynomial<R> {
        debug_assert!(terms
            .windows(2)
            .all(|w| self.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }

    pub fn from_i64_terms(&self, terms: &[(i64, &[u16])]) -> Polynomial<R> {
        self.from_terms(
            terms
                .iter()
                .map(|(c, e)| (Monomial::from_exps(e), self.coeffs().from_i64(*c))),
        )
    }
}

/// Sparse polynomial; terms are strictly decreasing in the ring's order and
/// have nonzero coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial<R: Ring> {
    ring: PolyRing<R>,
    terms: Vec<(Monomial, R::Elem)>,
}

impl<R: Ring> PartialEq for Polynomial<R> {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}
impl<R: Ring> Eq for Polynomial<R> {}

impl<R: Ring> Polynomial<R> {
    pub fn ring(&self) -> &PolyRing<R> {
        &self.ring
    }

    pub fn coeff_ring(&self) -> &R {
        self.ring.coeffs()
    }

    pub fn terms(&self) -> &[(Monomial, R::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, R::Elem)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pop_leading(&mut self) -> Option<(Monomial, R::Elem)> {
        (!self.terms.is_empty()).then(|| self.terms.remove(0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lc(&self) -> Option<&R::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn coeff_of(&self, m: &Monomial) -> R::Elem {
        let ord = self.ring.order();
        match self.terms.binary_search_by(|t| ord.cmp(m, &t.0)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.coeff_ring().zero(),
        }
    }

    pub fn coeff_of_exps(&self, e: &[u16]) -> R::Elem {
        self.coeff_of(&Monomial::from_exps(e))
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.iter().map(|t| t.0.exps()[var]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut d = None;
        self.terms.iter().all(|t| {
            let td = t.0.degree();
            *d.get_or_insert(td) == td
        })
    }

    /// Homogeneous for integral weights, one per variable.
    pub fn is_weighted_homogeneous(&self, weights: &[u32]) -> bool {
        let w = |m: &Monomial| -> u32 {
            m.exps().iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum()
        };
        let mut d = None;
        self.terms.iter().all(|t| {
            let td = w(&t.0);
            *d.get_or_insert(td) == td
        })
    }

    /// Variables actually occurring.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.iter().any(|t| t.0.exps()[i] > 0))
            .collect()
    }

    fn like(&self, terms: Vec<(Monomial, R::Elem)>) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    fn check_ring(&self, o: &Self) {
        debug_assert!(self.ring == o.ring, "polynomials from different rings");
    }

    /// `self + c * m * o`, by merging.
    pub fn add_scaled(&self, c: &R::Elem, m: &Monomial, o: &Self) -> Self {
        self.check_ring(o);
        let r = self.coeff_ring();
        let ord = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let mut a = self.terms.iter().peekable();
        let scaled = o
            .terms
            .iter()
            .map(|(om, oc)| (om.mul(m), r.mul(oc, c)))
            .filter(|(_, c)| !r.is_zero(c));
        let mut b = scaled.peekable();
        loop {
            let next = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => ord.cmp(&x.0, &y.0),
            };
            match next {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (m1, c1) = a.next().unwrap();
                    let (_, c2) = b.next().unwrap();
                    let s = r.add(c1, &c2);
                    if !r.is_zero(&s) {
                        out.push((m1.clone(), s));
                    }
                }
            }
        }
        self.like(out)
    }

    pub fn add(&self, o: &Self) -> Self {
        let r = self.coeff_ring();
        self.add_scaled(&r.one(), &Monomial::one(self.nvars()), o)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let r = self.coeff_ring();
        self.add_scaled(&r.neg(&r.one()), &Monomial::one(self.nvars()), o)
    }

    pub fn neg(&self) -> Self {
        let r = self.coeff_ring();
        self.like(self.terms.iter().map(|(m, c)| (m.clone(), r.neg(c))).collect())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let r = self.coeff_ring();
        self.like(
            self.terms
                .iter()
                .map(|(m, a)| (m.clone(), r.mul(a, c)))
                .filter(|(_, a)| !r.is_zero(a))
                .collect(),
        )
    }

    pub fn mul_term(&self, c: &R::Elem, m: &Monomial) -> Self {
        let r = self.coeff_ring();
        // multiplying by a monomial preserves any admissible order
        self.like(
            self.terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), r.mul(tc, c)))
                .filter(|(_, a)| !r.is_zero(a))
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_ring(o);
        if self.is_zero() || o.is_zero() {
            return self.ring.zero();
        }
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        let r = self.coeff_ring();
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::with_capacity(small.len() * big.len());
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                let m = m1.mul(m2);
                let c = r.mul(c1, c2);
                match acc.get_mut(&m) {
                    Some(e) => *e = r.add(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        self.ring.from_terms(acc)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = self.ring.one();
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

    /// `self / d` when `d` divides `self` exactly, by leading-term division.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let r = self.coeff_ring();
        let (dm, dc) = d.terms.first()?;
        let mut rem = self.clone();
        let mut q = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            if !dm.divides(m) {
                return None;
            }
            let qc = r.exact_div(c, dc)?;
            let qm = dm.quotient_of(m);
            rem = rem.add_scaled(&r.neg(&qc), &qm, d);
            q.push((qm, qc));
        }
        Some(self.ring.from_terms(q))
    }

    /// Value at a point of the coefficient ring.
    pub fn evaluate(&self, point: &[R::Elem]) -> Result<R::Elem, PolyError> {
        let r = self.coeff_ring().clone();
        self.evaluate_in(&r, |c| c.clone(), point)
    }

    /// Value at a point of another ring, coefficients mapped by `embed`.
    pub fn evaluate_in<S: Ring>(
        &self,
        target: &S,
        embed: impl Fn(&R::Elem) -> S::Elem,
        point: &[S::Elem],
    ) -> Result<S::Elem, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::Arity {
                got: point.len(),
                want: self.nvars(),
            });
        }
        // power tables per variable
        let maxd: Vec<usize> = (0..self.nvars())
            .map(|i| self.degree_in(i).unwrap_or(0) as usize)
            .collect();
        let powers: Vec<Vec<S::Elem>> = point
            .iter()
            .zip(&maxd)
            .map(|(x, &d)| {
                let mut v = Vec::with_capacity(d + 1);
                v.push(target.one());
                for k in 1..=d {
                    let nx = target.mul(&v[k - 1], x);
                    v.push(nx);
                }
                v
            })
            .collect();
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = embed(c);
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = target.mul(&t, &powers[i][e as usize]);
                }
            }
            acc = target.add(&acc, &t);
        }
        Ok(acc)
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        let r = self.coeff_ring();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exps()[var] > 0)
            .map(|(m, c)| {
                let e = m.exps()[var];
                let mut nm = m.clone();
                nm.0[var] -= 1;
                (nm, r.mul(c, &r.from_i64(e as i64)))
            })
            .filter(|(_, c)| !r.is_zero(c));
        // the map is order-preserving on the surviving terms
        self.like(terms.collect())
    }

    /// Substitutes `images[i]` for variable `i`; the images share a ring,
    /// which may differ from this polynomial's ring. Coefficients are mapped
    /// into the target coefficient ring by `embed`.
    pub fn compose_with<S: Ring>(
        &self,
        images: &[Polynomial<S>],
        embed: impl Fn(&R::Elem) -> S::Elem,
    ) -> Result<Polynomial<S>, PolyError> {
        if images.len() != self.nvars() {
            return Err(PolyError::Arity {
                got: images.len(),
                want: self.nvars(),
            });
        }
        let Some(first) = images.first() else {
            return Err(PolyError::Degenerate("no variables"));
        };
        let target = first.ring.clone();
        if images.iter().any(|p| p.ring != target) {
            return Err(PolyError::RingMismatch("substitution images".into()));
        }
        let mut cache: Vec<Vec<Polynomial<S>>> = images.iter().map(|p| vec![target.one(), p.clone()]).collect();
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.constant(embed(c));
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let nx = cache[i].last().unwrap().mul(&images[i]);
                    cache[i].push(nx);
                }
                t = t.mul(&cache[i][e as usize]);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Same-ring substitution.
    pub fn substitute(&self, images: &[Polynomial<R>]) -> Result<Self, PolyError> {
        self.compose_with(images, |c| c.clone())
    }

    /// Maps coefficients into another ring over the same variables (the
    /// target ring's order is used).
    pub fn map_coeffs<S: Ring>(&self, target: &PolyRing<S>, f: impl Fn(&R::Elem) -> S::Elem) -> Polynomial<S> {
        assert_eq!(target.nvars(), self.nvars());
        let s = target.coeffs();
        let mut terms: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(c)))
            .filter(|(_, c)| !s.is_zero(c))
            .collect();
        if target.order() != self.ring.order() {
            let ord = target.order();
            terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        }
        Polynomial {
            ring: target.clone(),
            terms,
        }
    }

    /// Re-sorts under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        let ring = self.ring.with_order(order);
        self.map_coeffs(&ring, |c| c.clone())
    }

    pub fn in_ring(&self, ring: &PolyRing<R>) -> Self {
        self.map_coeffs(ring, |c| c.clone())
    }

    /// Moves into a ring whose variable `j` is this ring's variable
    /// `positions[j]`, or a fresh variable when `None`; every variable in use
    /// must be mapped.
    pub fn relabel(&self, target: &PolyRing<R>, positions: &[Option<usize>]) -> Self {
        assert_eq!(positions.len(), target.nvars());
        let inv: Vec<Option<usize>> = (0..self.nvars())
            .map(|i| positions.iter().position(|p| *p == Some(i)))
            .collect();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut nm = Monomial::one(target.nvars());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    let j = inv[i].expect("variable in use has no image");
                    nm.0[j] = e;
                }
            }
            (nm, c.clone())
        });
        target.from_terms(terms)
    }

    /// As a dense univariate polynomial in `var`, when no other variable
    /// occurs.
    pub fn to_univariate(&self, var: usize) -> Option<UniPoly<R>> {
        let r = self.coeff_ring().clone();
        let d = self.degree_in(var).unwrap_or(0) as usize;
        let mut v = vec![r.zero(); d + 1];
        for (m, c) in &self.terms {
            if m.exps().iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return None;
            }
            v[m.exps()[var] as usize] = c.clone();
        }
        Some(UniPoly::new(r, v))
    }

    pub fn from_univariate(ring: &PolyRing<R>, var: usize, u: &UniPoly<R>) -> Self {
        ring.from_terms(
            u.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(ring.nvars(), var, i as u16), c.clone())),
        )
    }

    /// Euler's identity `deg * f = sum x_i df/dx_i`, for homogeneous `f`.
    pub fn satisfies_euler_relation(&self) -> bool {
        let Some(d) = self.total_degree() else {
            return true;
        };
        let lhs = self.scale(&self.coeff_ring().from_i64(d as i64));
        let mut rhs = self.ring.zero();
        for i in 0..self.nvars() {
            rhs = rhs.add(&self.ring.var(i).mul(&self.partial_derivative(i)));
        }
        lhs == rhs
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }
}

impl<F: Field> Polynomial<F> {
    /// Scaled to leading coefficient 1 (or zero).
    pub fn monic(&self) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(c) => {
                let inv = self.coeff_ring().inv(c).unwrap();
                self.scale(&inv)
            }
        }
    }

    /// Scaled to the field's preferred representative: monic, or for `Q`
    /// primitive integral with positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let cs: Vec<&F::Elem> = self.terms.iter().map(|t| &t.1).collect();
        match self.coeff_ring().content_scale(&cs) {
            Some(s) => self.scale(&s),
            None => self.clone(),
        }
    }
}

impl Polynomial<crate::arith::IntegerRing> {
    /// `gcd` of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        use num_integer::Integer as _;
        self.terms
            .iter()
            .fold(BigInt::from(0), |g, t| g.gcd(&t.1))
    }

    /// Coefficientwise reduction into `Z/m` or a prime field.
    pub fn reduce_mod<S: Ring>(&self, target: &PolyRing<S>) -> Polynomial<S> {
        let s = target.coeffs().clone();
        self.map_coeffs(target, |c| s.from_integer(c))
    }

    pub fn to_rational(&self, target: &PolyRing<crate::arith::RationalField>) -> Polynomial<crate::arith::RationalField> {
        self.map_coeffs(target, |c| num_rational::BigRational::from_integer(c.clone()))
    }
}

/// Characteristic of the coefficient domain as a `u64`, if it fits.
pub fn small_characteristic<R: Ring>(r: &R) -> Option<u64> {
    use num_traits::ToPrimitive;
    let c: BigUint = r.characteristic();
    c.to_u64()
}

impl<R: Ring> fmt::Display for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_infix(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Fp, IntegerRing};

    fn zring(vars: &[&str]) -> PolyRing<IntegerRing> {
        PolyRing::new(IntegerRing, vars, MonomialOrder::GrevLex)
    }

    #[test]
    fn arithmetic_basics() {
        let r = zring(&["x", "y"]);
        let x = r.var(0);
        let y = r.var(1);
        let s = x.add(&y);
        let sq = s.mul(&s);
        let expect = x.mul(&x).add(&x.mul(&y).scale(&BigInt::from(2))).add(&y.mul(&y));
        assert_eq!(sq, expect);
        assert_eq!(sq.total_degree(), Some(2));
        assert!(sq.is_homogeneous());
        assert!(s.sub(&s).is_zero());
        let d = sq.partial_derivative(0);
        assert_eq!(d, x.scale(&BigInt::from(2)).add(&y.scale(&BigInt::from(2))));
        assert!(sq.satisfies_euler_relation());
    }

    #[test]
    fn cube_derivative() {
        let r = zring(&["x"]);
        let x3 = r.var(0).pow(3);
        assert_eq!(x3.partial_derivative(0), r.var(0).pow(2).scale(&BigInt::from(3)));
    }

    #[test]
    fn evaluation_and_reduction() {
        let r = zring(&["x", "y"]);
        let p = r.from_i64_terms(&[(3, &[2, 0]), (-5, &[0, 1]), (7, &[0, 0])]);
        let v = p.evaluate(&[BigInt::from(2), BigInt::from(-1)]).unwrap();
        assert_eq!(v, BigInt::from(12 + 5 + 7));
        assert_eq!(r.zero().evaluate(&[BigInt::from(1), BigInt::from(1)]).unwrap(), BigInt::from(0));
        let f3 = r.with_coeffs(Fp::new(3));
        let pm = p.reduce_mod(&f3);
        assert_eq!(pm.len(), 2);
        assert!(p.scale(&BigInt::from(3)).reduce_mod(&f3).is_zero());
        assert!(p.evaluate(&[BigInt::from(1)]).is_err());
    }

    #[test]
    fn substitution_identity_and_shift() {
        let r = zring(&["w", "g"]);
        let w = r.var(0);
        let g = r.var(1);
        let two = BigInt::from(2);
        let img = w.scale(&two).add(&g);
        let w2 = w.mul(&w);
        let out = w2.substitute(&[img, g.clone()]).unwrap();
        let four = BigInt::from(4);
        let expect = w2.scale(&four).add(&w.mul(&g).scale(&four)).add(&g.mul(&g));
        assert_eq!(out, expect);
        assert_eq!(w2.substitute(&[w.clone(), g.clone()]).unwrap(), w2);
    }

    #[test]
    fn relabel_moves_variables() {
        let r = zring(&["a", "b"]);
        let p = r.var(0).mul(&r.var(1).pow(2));
        let t = zring(&["t", "b", "a"]);
        let q = p.relabel(&t, &[None, Some(1), Some(0)]);
        assert_eq!(q, t.var(2).mul(&t.var(1).pow(2)));
    }
}
