//! Binary forms and restriction of ternary forms to lines.

use super::{Monomial, MonomialOrder, PolyError, PolyRing, Polynomial, UniPoly};
use crate::arith::Field;

/// Homogeneous polynomial in two variables `(s, t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<F: Field> {
    pub poly: Polynomial<F>,
    pub degree: u32,
}

impl<F: Field> BinaryForm<F> {
    pub fn new(poly: Polynomial<F>, degree: u32) -> Result<Self, PolyError> {
        if poly.nvars() != 2 || poly.terms().iter().any(|t| t.0.degree() != degree) {
            return Err(PolyError::Degenerate("not a binary form of the stated degree"));
        }
        Ok(BinaryForm { poly, degree })
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// `h(s, 1)` as a dense polynomial in `s`.
    pub fn dehomogenize(&self) -> UniPoly<F> {
        let k = self.poly.coeff_ring().clone();
        let mut v = vec![k.zero(); self.degree as usize + 1];
        for (m, c) in self.poly.terms() {
            v[m.exps()[0] as usize] = c.clone();
        }
        UniPoly::new(k, v)
    }

    /// No repeated linear factor over the algebraic closure; the root at
    /// infinity `t = 0` is counted by the degree drop of the dehomogenization.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let u = self.dehomogenize();
        let drop = self.degree as i64 - u.deg();
        if drop > 1 {
            return false;
        }
        u.deg() <= 0 || u.gcd(&u.derivative()).deg() == 0
    }
}

/// `f(s P + t Q)` for a ternary form `f` and points `P`, `Q` spanning a line.
pub fn restrict_to_line<F: Field>(
    f: &Polynomial<F>,
    p: &[F::Elem; 3],
    q: &[F::Elem; 3],
) -> Result<BinaryForm<F>, PolyError> {
    if f.nvars() != 3 {
        return Err(PolyError::Arity {
            got: f.nvars(),
            want: 3,
        });
    }
    let k = f.coeff_ring().clone();
    // rank 2 iff some 2x2 minor is nonzero
    let minor = |i: usize, j: usize| k.sub(&k.mul(&p[i], &q[j]), &k.mul(&p[j], &q[i]));
    if [(0, 1), (0, 2), (1, 2)].iter().all(|&(i, j)| k.is_zero(&minor(i, j))) {
        return Err(PolyError::RankDeficient);
    }
    let ring = PolyRing::new(k.clone(), &["s", "t"], MonomialOrder::Lex);
    let s = ring.var(0);
    let t = ring.var(1);
    let images: Vec<Polynomial<F>> = (0..3)
        .map(|i| s.scale(&p[i]).add(&t.scale(&q[i])))
        .collect();
    let g = f.compose_with(&images, |c| c.clone())?;
    let degree = f.total_degree().unwrap_or(0);
    Ok(BinaryForm { poly: g, degree })
}

/// The binary form with given coefficients of `s^d, s^(d-1) t, ..., t^d`.
pub fn binary_from_coeffs<F: Field>(k: &F, coeffs: &[F::Elem]) -> BinaryForm<F> {
    let d = coeffs.len() as u32 - 1;
    let ring = PolyRing::new(k.clone(), &["s", "t"], MonomialOrder::Lex);
    let poly = ring.from_terms(
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::from_exps(&[(d as usize - i) as u16, i as u16]), c.clone())),
    );
    BinaryForm { poly, degree: d }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Fp, Ring};

    #[test]
    fn restriction_to_coordinate_line() {
        let k = Fp::new(13);
        let r = PolyRing::new(k, &["x", "y", "z"], MonomialOrder::GrevLex);
        let f = r.var(0).pow(2).mul(&r.var(2)).add(&r.var(1).pow(3));
        // z = 0
        let b = restrict_to_line(&f, &[1, 0, 0], &[0, 1, 0]).unwrap();
        assert_eq!(b.degree, 3);
        assert_eq!(b.poly.len(), 1);
        assert!(restrict_to_line(&f, &[1, 2, 3], &[2, 4, 6]).is_err());
        let zero = restrict_to_line(&r.zero(), &[1, 0, 0], &[0, 0, 1]).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn squarefree_binary() {
        let k = Fp::new(13);
        // s t (s - t)
        let b = binary_from_coeffs(&k, &[0, 1, k.neg(&1), 0]);
        assert!(b.is_squarefree());
        // s t^2
        let b = binary_from_coeffs(&k, &[0, 0, 1, 0]);
        assert!(!b.is_squarefree());
        // (s - t)^2 s
        let b = binary_from_coeffs(&k, &[1, k.neg(&2), 1, 0]);
        assert!(!b.is_squarefree());
    }
}
