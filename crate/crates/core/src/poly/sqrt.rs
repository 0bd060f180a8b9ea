//! Square roots of multivariate polynomials over fields.

use num_traits::ToPrimitive;

use super::{Monomial, MonomialOrder, Polynomial};
use crate::arith::Field;

/// Returns `(c, s)` with `p = c * s^2` and `s` monic under grevlex, or `None`
/// when `p` is not a constant times a square of a polynomial over the field.
///
/// Away from characteristic 2 the root is built term by term from the top,
/// each new term being the leading term of the remainder divided by twice
/// the leading term of the root. In characteristic 2, `p` is a square exactly
/// when every exponent is even, and the root halves exponents and takes the
/// Frobenius root of each coefficient. Either way the candidate is squared
/// and compared before being returned.
pub fn poly_sqrt<F: Field>(p: &Polynomial<F>) -> Option<(F::Elem, Polynomial<F>)> {
    let orig_order = p.ring().order();
    let p = p.with_order(MonomialOrder::GrevLex);
    let ring = p.ring().clone();
    let k = ring.coeffs().clone();
    if p.is_zero() {
        return Some((k.one(), p.with_order(orig_order)));
    }
    let char2 = k.characteristic().to_u64() == Some(2);
    let (c, s) = if char2 {
        let mut terms = Vec::with_capacity(p.len());
        for (m, a) in p.terms() {
            if m.exps().iter().any(|e| e % 2 == 1) {
                return None;
            }
            let half = Monomial(m.exps().iter().map(|e| e / 2).collect());
            terms.push((half, frobenius_root(&k, a)?));
        }
        (k.one(), ring.from_terms(terms))
    } else {
        let lc = p.lc().unwrap().clone();
        let q = p.monic();
        let lm = q.lm().unwrap();
        if lm.exps().iter().any(|e| e % 2 == 1) {
            return None;
        }
        let half_deg = p.total_degree().unwrap() / 2;
        let s0 = Monomial(lm.exps().iter().map(|e| e / 2).collect());
        let two_inv = k.inv(&k.from_i64(2))?;
        let mut s = ring.term(k.one(), s0.clone());
        let mut r = q.sub(&s.mul(&s));
        while let Some(rm) = r.lm().cloned() {
            if !s0.divides(&rm) {
                return None;
            }
            let tm = s0.quotient_of(&rm);
            // grevlex is degree compatible, so each new term is smaller
            if tm.degree() > half_deg || MonomialOrder::GrevLex.cmp(&tm, &s0).is_ge() {
                return None;
            }
            let tc = k.mul(r.lc().unwrap(), &two_inv);
            let t = ring.term(tc, tm);
            // (s + t)^2 = s^2 + 2 s t + t^2
            let two_s_plus_t = s.scale(&k.from_i64(2)).add(&t);
            r = r.sub(&two_s_plus_t.mul(&t));
            s = s.add(&t);
        }
        (lc, s)
    };
    if s.mul(&s).scale(&c) != p {
        return None;
    }
    Some((c, s.with_order(orig_order)))
}

/// `a^(1/2)` in a field of characteristic 2 with finitely many elements:
/// squaring is a bijection, so iterate until it cycles back.
fn frobenius_root<F: Field>(k: &F, a: &F::Elem) -> Option<F::Elem> {
    let mut prev = a.clone();
    let mut cur = k.mul(a, a);
    for _ in 0..64 {
        if cur == *a {
            return Some(prev);
        }
        prev = cur.clone();
        cur = k.mul(&cur, &cur);
    }
    None
}
