//! Singular points of the branch sextic mod p, orbit by orbit.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{with_prime_field, DoubleCoverModel, K3Error};
use crate::arith::{ExtField, Field, IntegerRing, Ring};
use crate::groebner::{elimination_ideal, quotient_dimension, GroebnerLimits, Ideal, QuotientDimension};
use crate::poly::{MonomialOrder, PolyRing, Polynomial, UniPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointKind {
    /// Node of the branch curve, hence an ordinary double point of the cover.
    OrdinaryDoublePoint,
    Other,
}

/// One Galois orbit of singular points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    /// `z=1`, `z=0,y=1` or `(1:0:0)`.
    pub chart: String,
    pub residue_degree: usize,
    /// Minimal polynomial of the generator `t` of the residue field.
    pub minimal_polynomial: String,
    /// Projective coordinates as polynomials in `t`.
    pub point: [String; 3],
    pub hessian: String,
    pub kind: PointKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityReport {
    pub prime: BigInt,
    /// Number of geometric singular points; `None` when some are not isolated.
    pub r: Option<u64>,
    pub orbits: Vec<Orbit>,
    /// `dim F_p[x,y] / radical` on the chart `z = 1`, compared with the orbit
    /// degrees found there.
    pub affine_quotient_dimension: Option<u64>,
}

impl SingularityReport {
    pub fn all_odp(&self) -> bool {
        self.r.is_some() && self.orbits.iter().all(|o| o.kind == PointKind::OrdinaryDoublePoint)
    }

    /// `r < 8` points, each an ordinary double point.
    pub fn mild(&self) -> bool {
        self.all_odp() && self.r.is_some_and(|r| r < 8)
    }

    pub fn is_consistent(&self) -> bool {
        match self.r {
            Some(r) => r == self.orbits.iter().map(|o| o.residue_degree as u64).sum::<u64>(),
            None => true,
        }
    }
}

/// Classifies the singular points of `f = 0` over the algebraic closure of
/// `F_p`: each orbit gets a residue field, an exact point, and the Hessian
/// test of the affine local equation there.
pub fn classify_singularities(
    model: &DoubleCoverModel,
    p: &BigInt,
    limits: &GroebnerLimits,
) -> Result<SingularityReport, K3Error> {
    if p <= &BigInt::from(3) {
        return Err(K3Error::Precondition("classification needs p > 3".into()));
    }
    let (r, orbits, affine) = with_prime_field(
        p,
        |k| classify_in(&model.f, k, limits),
        |k| classify_in(&model.f, k, limits),
    )?;
    Ok(SingularityReport {
        prime: p.clone(),
        r,
        orbits,
        affine_quotient_dimension: affine,
    })
}

type Found = (Option<u64>, Vec<Orbit>, Option<u64>);

fn classify_in<F: Field>(f: &Polynomial<IntegerRing>, k: F, limits: &GroebnerLimits) -> Result<Found, K3Error>
where
    F::Elem: Ord,
{
    let r3 = PolyRing::new(k.clone(), f.ring().vars(), MonomialOrder::GrevLex);
    let fk = f.reduce_mod(&r3);
    if fk.is_zero() {
        return Err(K3Error::Degenerate("sextic vanishes mod p".into()));
    }
    let mut jac = vec![fk.clone()];
    jac.extend((0..3).map(|v| fk.partial_derivative(v)));
    let q = k.characteristic();
    let mut orbits = Vec::new();

    // chart z = 1
    let r2 = PolyRing::new(k.clone(), &["x", "y"], MonomialOrder::GrevLex);
    let on_a = [r2.var(0), r2.var(1), r2.one()];
    let gens: Vec<Polynomial<F>> = jac.iter().map(|g| g.compose_with(&on_a, |c| c.clone()).unwrap()).collect();
    let local_a = gens[0].clone();
    let ideal = Ideal::new(r2.clone(), gens)?;
    let Some(radical) = zero_dim_radical(&ideal, limits)? else {
        return Ok((None, orbits, None));
    };
    let QuotientDimension::Finite(ra) = quotient_dimension(&radical, MonomialOrder::GrevLex, limits)? else {
        return Ok((None, orbits, None));
    };
    if ra > 0 {
        let (c, shape) = shape_position(&radical, ra, &k, limits)?;
        let (qv, phi) = shape;
        for (pi, _) in qv.factor_prime_field() {
            let e = ExtField::new_unchecked(pi.clone());
            let th = e.generator();
            let x = phi.eval_in(&e, &th);
            // y = v - c x
            let y = e.sub(&th, &e.mul(&e.from_integer(&BigInt::from(c)), &x));
            orbits.push(orbit("z=1", &e, &pi, &local_a, [x.clone(), y.clone()], [x, y, e.one()]));
        }
    }

    // chart z = 0, y = 1
    let r1 = PolyRing::new(k.clone(), &["x"], MonomialOrder::Lex);
    let on_b = [r1.var(0), r1.one(), r1.zero()];
    let mut u = UniPoly::zero(k.clone());
    for g in &jac {
        u = u.gcd(&g.compose_with(&on_b, |c| c.clone())?.to_univariate(0).unwrap());
    }
    if u.is_zero() {
        return Ok((None, orbits, Some(ra)));
    }
    let rb2 = PolyRing::new(k.clone(), &["x", "z"], MonomialOrder::GrevLex);
    let local_b = fk.compose_with(&[rb2.var(0), rb2.one(), rb2.var(1)], |c| c.clone())?;
    for (pi, _) in u.squarefree_part().factor_prime_field() {
        let e = ExtField::new_unchecked(pi.clone());
        let th = e.generator();
        orbits.push(orbit("z=0,y=1", &e, &pi, &local_b, [th.clone(), e.zero()], [th, e.one(), e.zero()]));
    }

    // the point (1:0:0)
    let at_c = [k.one(), k.zero(), k.zero()];
    if jac.iter().all(|g| k.is_zero(&g.evaluate(&at_c).unwrap())) {
        let pi = UniPoly::x(k.clone());
        let e = ExtField::new_unchecked(pi.clone());
        let local_c = fk.compose_with(&[rb2.one(), rb2.var(0), rb2.var(1)], |c| c.clone())?;
        orbits.push(orbit("(1:0:0)", &e, &pi, &local_c, [e.zero(), e.zero()], [e.one(), e.zero(), e.zero()]));
    }

    let affine_degrees: u64 = orbits.iter().filter(|o| o.chart == "z=1").map(|o| o.residue_degree as u64).sum();
    if affine_degrees != ra {
        return Err(K3Error::Degenerate(format!(
            "orbit degrees {affine_degrees} disagree with quotient dimension {ra} over F_{q}"
        )));
    }
    let r = orbits.iter().map(|o| o.residue_degree as u64).sum();
    Ok((Some(r), orbits, Some(ra)))
}

trait EvalIn<F: Field> {
    fn eval_in(&self, e: &ExtField<F>, t: &[F::Elem]) -> Vec<F::Elem>;
}

impl<F: Field> EvalIn<F> for UniPoly<F> {
    fn eval_in(&self, e: &ExtField<F>, t: &[F::Elem]) -> Vec<F::Elem> {
        self.coeffs()
            .iter()
            .rev()
            .fold(e.zero(), |acc, c| e.add(&e.mul(&acc, &t.to_vec()), &e.embed(c)))
    }
}

/// Adds the squarefree parts of both univariate eliminants, which makes a
/// zero-dimensional ideal radical. `None` when an eliminant is zero, i.e.
/// the solution set is not finite.
fn zero_dim_radical<F: Field>(i: &Ideal<F>, limits: &GroebnerLimits) -> Result<Option<Ideal<F>>, K3Error> {
    let k = i.ring().coeffs().clone();
    let mut extra = Vec::new();
    for v in 0..2 {
        let elim = elimination_ideal(i, &[v], limits)?;
        let mut e = UniPoly::zero(k.clone());
        for g in elim.gens() {
            e = e.gcd(&g.to_univariate(v).expect("eliminant is univariate"));
        }
        if e.is_zero() {
            return Ok(None);
        }
        extra.push(Polynomial::from_univariate(i.ring(), v, &e.squarefree_part()));
    }
    let mut gens = i.gens().to_vec();
    gens.extend(extra);
    Ok(Some(Ideal::new(i.ring().clone(), gens)?))
}

/// Finds `c` such that `v = y + c x` separates the `r` points, and returns
/// `(q(v), phi(v))` with the points `x = phi(v)`, `q(v) = 0`.
fn shape_position<F: Field>(
    radical: &Ideal<F>,
    r: u64,
    k: &F,
    limits: &GroebnerLimits,
) -> Result<(u64, (UniPoly<F>, UniPoly<F>)), K3Error> {
    let ring = radical.ring();
    let bound = r * r.saturating_sub(1) / 2 + 1;
    for c in 0..bound.min(k.characteristic().try_into().unwrap_or(u64::MAX)) {
        let cc = k.from_integer(&BigInt::from(c));
        // h(x, y) -> h(x, v - c x)
        let images = [ring.var(0), ring.var(1).sub(&ring.var(0).scale(&cc))];
        let gens: Vec<Polynomial<F>> = radical
            .gens()
            .iter()
            .map(|g| g.substitute(&images))
            .collect::<Result<_, _>>()?;
        let gb = Ideal::new(ring.clone(), gens)?.groebner(MonomialOrder::Lex, limits)?;
        let b = gb.basis();
        let q = b[0].to_univariate(1);
        let Some(q) = q.filter(|q| q.degree() == Some(r as usize)) else {
            continue;
        };
        // reduced lex basis in shape position: q(v), x - phi(v)
        if b.len() != 2 || b[1].lm().map(|m| m.exps() == [1, 0]) != Some(true) {
            continue;
        }
        let x = ring.var(0).with_order(MonomialOrder::Lex);
        let phi = x.sub(&b[1]).to_univariate(1).expect("x - basis element is univariate");
        return Ok((c, (q, phi)));
    }
    Err(K3Error::Degenerate(format!(
        "no separating linear form y + c x with c < {bound} over F_{}",
        k.characteristic()
    )))
}

fn orbit<F: Field>(
    chart: &str,
    e: &ExtField<F>,
    pi: &UniPoly<F>,
    local: &Polynomial<F>,
    affine: [Vec<F::Elem>; 2],
    point: [Vec<F::Elem>; 3],
) -> Orbit {
    let ev = |g: &Polynomial<F>| g.evaluate_in(e, |c| e.embed(c), &affine).unwrap();
    let (gu, gv) = (local.partial_derivative(0), local.partial_derivative(1));
    debug_assert!([local, &gu, &gv].iter().all(|g| e.is_zero(&ev(g))), "not a singular point");
    let huu = ev(&gu.partial_derivative(0));
    let hvv = ev(&gv.partial_derivative(1));
    let huv = ev(&gu.partial_derivative(1));
    let hess = e.sub(&e.mul(&huu, &hvv), &e.mul(&huv, &huv));
    let singular = [local, &gu, &gv].iter().all(|g| e.is_zero(&ev(g)));
    Orbit {
        chart: chart.into(),
        residue_degree: pi.degree().unwrap_or(0),
        minimal_polynomial: pi.format("t"),
        point: point.map(|c| e.to_poly(&c).format("t")),
        hessian: e.to_poly(&hess).format("t"),
        kind: if singular && !e.is_zero(&hess) {
            PointKind::OrdinaryDoublePoint
        } else {
            PointKind::Other
        },
    }
}
