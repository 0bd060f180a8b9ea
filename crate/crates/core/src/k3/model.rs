//! The double-cover model and its good-reduction model at 2.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::K3Error;
use crate::arith::{Fp, IntegerRing};
use crate::groebner::{is_weighted_projectively_empty, EmptinessCertificate, GroebnerLimits, Ideal};
use crate::poly::{poly_sqrt, MonomialOrder, PolyRing, Polynomial};

/// Weights of `x, y, z, w` in the ambient weighted projective space.
pub const WEIGHTS: [u32; 4] = [1, 1, 1, 3];

/// `f = g1^2 + 4 h`, giving the model `w^2 + g1 w - h = 0` after
/// `w -> 2 w + g1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoAdicModel {
    pub g1: Polynomial<IntegerRing>,
    pub h: Polynomial<IntegerRing>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoubleCoverModel {
    /// Branch sextic in `x, y, z`.
    pub f: Polynomial<IntegerRing>,
    pub delta: BigRational,
    pub at_two: Option<TwoAdicModel>,
}

impl DoubleCoverModel {
    pub fn new(f: Polynomial<IntegerRing>, delta: BigRational) -> Result<Self, K3Error> {
        if f.nvars() != 3 || !f.is_homogeneous() || f.total_degree() != Some(6) {
            return Err(K3Error::Degenerate("branch locus must be a ternary sextic form".into()));
        }
        if delta.is_zero() {
            return Err(K3Error::Degenerate("twist must be nonzero".into()));
        }
        Ok(DoubleCoverModel { f, delta, at_two: None })
    }

    pub fn untwisted(f: Polynomial<IntegerRing>) -> Result<Self, K3Error> {
        Self::new(f, BigRational::one())
    }

    pub fn f_at(&self, p: &[BigInt; 3]) -> BigInt {
        self.f.evaluate(p).expect("three coordinates")
    }

    /// The transformed equation `w^2 + g1 w - h` in `Z[x, y, z, w]`.
    pub fn two_adic_equation(&self) -> Option<Polynomial<IntegerRing>> {
        let t = self.at_two.as_ref()?;
        let r4 = PolyRing::new(IntegerRing, &["x", "y", "z", "w"], MonomialOrder::GrevLex);
        let up = [Some(0), Some(1), Some(2), None];
        let w = r4.var(3);
        let g1 = t.g1.relabel(&r4, &up);
        let h = t.h.relabel(&r4, &up);
        Some(w.mul(&w).add(&g1.mul(&w)).sub(&h))
    }
}

#[derive(Debug, Clone)]
pub struct GoodReductionAt2 {
    pub model: DoubleCoverModel,
    /// `sqrt(f mod 2)`.
    pub g1_bar: Polynomial<Fp>,
    /// The transformed equation reduced mod 2, in `F_2[x, y, z, w]`.
    pub reduction: Polynomial<Fp>,
    pub certificate: EmptinessCertificate<Fp>,
}

impl GoodReductionAt2 {
    pub fn quasi_smooth(&self) -> bool {
        self.certificate.is_empty()
    }

    pub fn summary(&self) -> GoodReductionSummary {
        GoodReductionSummary {
            g1_bar: self.g1_bar.to_string(),
            reduction: self.reduction.to_string(),
            quasi_smooth: self.quasi_smooth(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GoodReductionSummary {
    pub g1_bar: String,
    pub reduction: String,
    pub quasi_smooth: bool,
}

/// Finds `g1` with `f = g1^2 mod 2`, checks `f = g1^2 mod 4`, and certifies
/// the transformed model quasi-smooth over `F_2` by emptiness of its Jacobian
/// ideal in `P(1,1,1,3)`.
pub fn good_reduction_at_2(model: &DoubleCoverModel, limits: &GroebnerLimits) -> Result<GoodReductionAt2, K3Error> {
    let f2 = Fp::new(2);
    let r3 = PolyRing::new(f2, model.f.ring().vars(), MonomialOrder::GrevLex);
    let fbar = model.f.reduce_mod(&r3);
    let (_, g1_bar) = poly_sqrt(&fbar).ok_or(K3Error::NotSquareMod2)?;
    // lift with coefficients in {0, 1}
    let rz = model.f.ring().clone();
    let g1 = rz.from_terms(g1_bar.terms().iter().map(|(m, c)| (m.clone(), BigInt::from(*c))));
    let diff = model.f.sub(&g1.mul(&g1));
    let four = BigInt::from(4);
    let mut h_terms = Vec::with_capacity(diff.len());
    for (m, c) in diff.terms() {
        if !(c % &four).is_zero() {
            return Err(K3Error::NotDivisibleBy4);
        }
        h_terms.push((m.clone(), c / &four));
    }
    let h = rz.from_terms(h_terms);
    let mut transformed = model.clone();
    transformed.at_two = Some(TwoAdicModel { g1, h });
    let eq = transformed.two_adic_equation().unwrap();
    let r4 = PolyRing::new(f2, &["x", "y", "z", "w"], MonomialOrder::GrevLex);
    let reduction = eq.reduce_mod(&r4);
    let mut gens = vec![reduction.clone()];
    gens.extend((0..4).map(|v| reduction.partial_derivative(v)));
    let jac = Ideal::new(r4, gens)?;
    let certificate = is_weighted_projectively_empty(&jac, &WEIGHTS, limits)?;
    Ok(GoodReductionAt2 {
        model: transformed,
        g1_bar,
        reduction,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_expr;

    fn zpoly(s: &str) -> Polynomial<IntegerRing> {
        let r = PolyRing::new(IntegerRing, &["x", "y", "z"], MonomialOrder::GrevLex);
        parse_expr(s, &r).unwrap()
    }

    #[test]
    fn exact_square_is_degenerate() {
        let g = zpoly("x^2*y + y^3 + z^3");
        let m = DoubleCoverModel::untwisted(g.mul(&g)).unwrap();
        let r = good_reduction_at_2(&m, &GroebnerLimits::default()).unwrap();
        assert!(m.f.sub(&r.model.at_two.as_ref().unwrap().g1.pow(2)).is_zero());
        assert!(!r.quasi_smooth());
    }

    #[test]
    fn transformation_identity() {
        // f = g^2 + 4 h for a random-looking h; substituting w -> 2w + g1
        // into w^2 - f gives 4 times the new equation
        let g = zpoly("x^2*y + x*z^2 + y^3 + 3*z^3");
        let h = zpoly("x^6 - 2*x^3*y^2*z + 5*y^6 + x*y*z^4 - z^6 + 7*x^2*y^4");
        let f = g.mul(&g).add(&h.scale(&BigInt::from(4)));
        let m = DoubleCoverModel::untwisted(f.clone()).unwrap();
        let r = good_reduction_at_2(&m, &GroebnerLimits::default()).unwrap();
        let eq = r.model.two_adic_equation().unwrap();
        let r4 = eq.ring().clone();
        let up = [Some(0), Some(1), Some(2), None];
        let t = r.model.at_two.as_ref().unwrap();
        let w_new = r4.var(3).scale(&BigInt::from(2)).add(&t.g1.relabel(&r4, &up));
        let old = {
            let w = r4.var(3);
            w.mul(&w).sub(&f.relabel(&r4, &up))
        };
        let images = [r4.var(0), r4.var(1), r4.var(2), w_new];
        assert_eq!(old.substitute(&images).unwrap(), eq.scale(&BigInt::from(4)));
        assert!(matches!(
            good_reduction_at_2(&DoubleCoverModel::untwisted(f.add(&zpoly("2*x^6"))).unwrap(), &GroebnerLimits::default()),
            Err(K3Error::NotDivisibleBy4)
        ));
        assert!(matches!(
            good_reduction_at_2(&DoubleCoverModel::untwisted(f.add(&zpoly("x^5*y"))).unwrap(), &GroebnerLimits::default()),
            Err(K3Error::NotSquareMod2)
        ));
    }
}
