//! The special cubic fourfold: the surface ideal cut out by three quadrics
//! through two planes, the assembled cubic, and its local and smoothness
//! checks.

mod search;
mod smooth;

pub use search::{plane_cubic_insoluble_mod3, search_candidates, Candidate, SearchOptions};
pub use smooth::{certify_smooth, singular_points_by_scan, SmoothRoute, SmoothnessCertificate};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{Field, IntegerRing, RationalField};
use crate::groebner::{
    buchberger, elimination_ideal, ideals_equal, saturate, GroebnerBasis, GroebnerError, GroebnerLimits, Ideal,
};
use crate::linalg::echelon_integer;
use crate::localsolve::{scan_projective, LocalError, SolubilityReport};
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FourfoldError {
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error("quadric {0} does not contain plane {1}")]
    PlaneNotContained(usize, usize),
    #[error("structural mismatch: {0}")]
    Structure(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Three quadrics through two planes and the ideal of the residual surface.
#[derive(Debug, Clone)]
pub struct SurfaceIdealPackage<F: Field> {
    pub quadrics: Vec<Polynomial<F>>,
    pub planes: [Ideal<F>; 2],
    /// Reduced grevlex basis of `<Q> : (I(P1) I(P2))^oo`.
    pub surface: GroebnerBasis<F>,
    /// Two cubics completing the quadrics to a generating set.
    pub cubics: [Polynomial<F>; 2],
    /// `cubics[k]` involves only the variables generating `planes[k]`.
    pub in_plane_subrings: bool,
}

impl<F: Field> SurfaceIdealPackage<F> {
    pub fn contains(&self, p: &Polynomial<F>) -> bool {
        self.surface.contains(p)
    }
}

fn linear_variables<F: Field>(plane: &Ideal<F>) -> Option<Vec<usize>> {
    // planes given by coordinate variables
    let mut vs = Vec::new();
    for g in plane.gens() {
        if g.len() != 1 || g.total_degree() != Some(1) {
            return None;
        }
        vs.push(g.support_vars()[0]);
    }
    vs.sort_unstable();
    Some(vs)
}

/// Saturates `<Q_1, Q_2, Q_3>` by the product of the plane ideals and
/// extracts the minimal cubic generators of the result.
pub fn build_surface_ideal<F: Field>(
    quadrics: &[Polynomial<F>],
    planes: [Ideal<F>; 2],
    limits: &GroebnerLimits,
) -> Result<SurfaceIdealPackage<F>, FourfoldError> {
    let ring = planes[0].ring().clone();
    for (k, pl) in planes.iter().enumerate() {
        let g = buchberger(pl, MonomialOrder::GrevLex, limits)?;
        for (i, q) in quadrics.iter().enumerate() {
            if !g.contains(q) {
                return Err(FourfoldError::PlaneNotContained(i + 1, k + 1));
            }
        }
    }
    let qi = Ideal::new(ring.clone(), quadrics.to_vec())?;
    let product = planes[0].product(&planes[1]);
    let sat = saturate(&qi, &product, limits)?;
    let surface = buchberger(&sat, MonomialOrder::GrevLex, limits)?;
    if surface.is_unit() {
        return Err(FourfoldError::Structure("saturation is the unit ideal".into()));
    }
    // minimal new generators of degree 3, greedily
    let mut gens = quadrics.to_vec();
    let mut new_cubics = Vec::new();
    for b in surface.basis() {
        match b.total_degree() {
            Some(d) if d < 3 => {
                if !buchberger(&Ideal::new(ring.clone(), gens.clone())?, MonomialOrder::GrevLex, limits)?.contains(b) {
                    return Err(FourfoldError::Structure("saturation adds a quadric".into()));
                }
            }
            Some(3) => {
                let cur = buchberger(&Ideal::new(ring.clone(), gens.clone())?, MonomialOrder::GrevLex, limits)?;
                if !cur.contains(b) {
                    gens.push(b.clone());
                    new_cubics.push(b.clone());
                }
            }
            _ => {}
        }
    }
    if new_cubics.len() != 2 {
        return Err(FourfoldError::Structure(format!(
            "saturation adds {} cubic generators, expected 2",
            new_cubics.len()
        )));
    }
    // prefer cubics in the planes' coordinate subrings
    let mut in_sub = false;
    if let (Some(v0), Some(v1)) = (linear_variables(&planes[0]), linear_variables(&planes[1])) {
        let mut subs = Vec::new();
        for vs in [&v0, &v1] {
            let e = elimination_ideal(&sat, vs, limits)?;
            let g = buchberger(&e, MonomialOrder::GrevLex, limits)?;
            let cubics: Vec<&Polynomial<F>> = g.basis().iter().filter(|p| p.total_degree() == Some(3)).collect();
            if cubics.len() == 1 && g.basis().iter().all(|p| p.total_degree() >= Some(3)) {
                subs.push(cubics[0].normalized());
            }
        }
        if subs.len() == 2 {
            let mut all = quadrics.to_vec();
            all.extend(subs.iter().cloned());
            if ideals_equal(&Ideal::new(ring.clone(), all)?, &sat, limits)? {
                new_cubics = subs;
                in_sub = true;
            }
        }
    }
    let mut all = quadrics.to_vec();
    all.extend(new_cubics.iter().cloned());
    if !ideals_equal(&Ideal::new(ring.clone(), all)?, &sat, limits)? {
        return Err(FourfoldError::Structure("quadrics and cubics do not generate the surface ideal".into()));
    }
    let [a, b]: [Polynomial<F>; 2] = new_cubics.try_into().unwrap();
    Ok(SurfaceIdealPackage {
        quadrics: quadrics.to_vec(),
        planes,
        surface,
        cubics: [a, b],
        in_plane_subrings: in_sub,
    })
}

/// The coordinate plane ideal generated by the given variables.
pub fn coordinate_plane<F: Field>(ring: &PolyRing<F>, vars: &[usize]) -> Ideal<F> {
    Ideal::new(ring.clone(), vars.iter().map(|&v| ring.var(v)).collect()).unwrap()
}

/// Primitive integral representative of a rational polynomial, positive
/// leading coefficient.
pub fn to_primitive_integer(p: &Polynomial<RationalField>, target: &PolyRing<IntegerRing>) -> Polynomial<IntegerRing> {
    let n = p.normalized();
    n.map_coeffs(target, |c| {
        debug_assert!(c.is_integer());
        c.to_integer()
    })
}

/// Builds the package over `Q` from integral quadrics and returns the
/// cubics as primitive integral forms.
pub fn build_surface_ideal_z(
    quadrics: &[Polynomial<IntegerRing>],
    plane_vars: [&[usize]; 2],
    limits: &GroebnerLimits,
) -> Result<(SurfaceIdealPackage<RationalField>, [Polynomial<IntegerRing>; 2]), FourfoldError> {
    let zr = quadrics
        .first()
        .ok_or_else(|| FourfoldError::Precondition("no quadrics".into()))?
        .ring()
        .clone();
    let qr = zr.with_coeffs(RationalField);
    let qs: Vec<Polynomial<RationalField>> = quadrics.iter().map(|q| q.to_rational(&qr)).collect();
    let planes = [coordinate_plane(&qr, plane_vars[0]), coordinate_plane(&qr, plane_vars[1])];
    let pkg = build_surface_ideal(&qs, planes, limits)?;
    let ints = [to_primitive_integer(&pkg.cubics[0], &zr), to_primitive_integer(&pkg.cubics[1], &zr)];
    Ok((pkg, ints))
}

/// `a = +-b`.
pub fn equal_up_to_sign(a: &Polynomial<IntegerRing>, b: &Polynomial<IntegerRing>) -> bool {
    a == b || a == &b.neg()
}

/// A cubic form in six variables over `Z`, with the linear forms used to
/// assemble it when known.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicFourfold {
    pub cubic: Polynomial<IntegerRing>,
    pub linear_forms: Option<[Polynomial<IntegerRing>; 3]>,
}

impl CubicFourfold {
    pub fn new(cubic: Polynomial<IntegerRing>) -> Result<Self, FourfoldError> {
        if cubic.nvars() != 6 || !cubic.is_homogeneous() || cubic.total_degree() != Some(3) {
            return Err(FourfoldError::Precondition("expected a cubic form in six variables".into()));
        }
        Ok(CubicFourfold { cubic, linear_forms: None })
    }
}

/// `9 (L1 Q1 + L2 Q2 + L3 Q3) + 3 C1 + C2`.
pub fn assemble_cubic(
    quadrics: &[Polynomial<IntegerRing>; 3],
    c1: &Polynomial<IntegerRing>,
    c2: &Polynomial<IntegerRing>,
    l: &[Polynomial<IntegerRing>; 3],
) -> CubicFourfold {
    let mut acc = c1.ring().zero();
    for (li, qi) in l.iter().zip(quadrics) {
        acc = acc.add(&li.mul(qi));
    }
    let cubic = acc
        .scale(&BigInt::from(9))
        .add(&c1.scale(&BigInt::from(3)))
        .add(c2);
    CubicFourfold {
        cubic,
        linear_forms: Some(l.clone()),
    }
}

/// Linear forms with `C = 9 (L1 Q1 + L2 Q2 + L3 Q3) + 3 C1 + C2`, if any,
/// together with the dimension of the space of linear syzygies (zero means
/// the forms are unique).
pub fn recover_linear_forms(
    quadrics: &[Polynomial<IntegerRing>; 3],
    c1: &Polynomial<IntegerRing>,
    c2: &Polynomial<IntegerRing>,
    c: &Polynomial<IntegerRing>,
) -> Option<([Polynomial<IntegerRing>; 3], usize)> {
    let r = c.ring().clone();
    let n = r.nvars();
    let rest = c.sub(&c1.scale(&BigInt::from(3))).sub(c2);
    // unknown (i, v): coefficient of x_v in L_i; last column is -rest/9 scaled by 9
    let mut products: Vec<Polynomial<IntegerRing>> = Vec::new();
    for q in quadrics {
        for v in 0..n {
            products.push(r.var(v).mul(q).scale(&BigInt::from(9)));
        }
    }
    products.push(rest.neg());
    let mut monos: Vec<Monomial> = products.iter().flat_map(|p| p.terms().iter().map(|t| t.0.clone())).collect();
    monos.sort_by(|a, b| a.exps().cmp(b.exps()));
    monos.dedup();
    let cols = products.len();
    let rows: Vec<Vec<BigInt>> = monos.iter().map(|m| products.iter().map(|p| p.coeff_of(m)).collect()).collect();
    let ech = echelon_integer(rows, cols);
    if ech.pivots.contains(&(cols - 1)) {
        return None;
    }
    let kernel = ech.kernel();
    let sol = kernel.iter().find(|k| !k[cols - 1].is_zero())?;
    let scale = &sol[cols - 1];
    let mut forms = Vec::with_capacity(3);
    for i in 0..3 {
        let mut lf = r.zero();
        for v in 0..n {
            let a = BigRational::new(sol[i * n + v].clone(), scale.clone());
            if !a.is_integer() {
                return None;
            }
            lf = lf.add(&r.var(v).scale(&a.to_integer()));
        }
        forms.push(lf);
    }
    let syz = kernel.len() - 1;
    Some((forms.try_into().unwrap(), syz))
}

/// Complete scan for a primitive zero modulo 9.
pub fn verify_insoluble_mod9(x: &CubicFourfold) -> Result<SolubilityReport, FourfoldError> {
    Ok(scan_projective(std::slice::from_ref(&x.cubic), 9)?)
}

/// `C = 3 C1 + C2 mod 9` coefficientwise.
pub fn congruent_mod9(x: &CubicFourfold, c1: &Polynomial<IntegerRing>, c2: &Polynomial<IntegerRing>) -> bool {
    let d = x.cubic.sub(&c1.scale(&BigInt::from(3))).sub(c2);
    let nine = BigInt::from(9);
    d.terms().iter().all(|(_, c)| (c % &nine).is_zero())
}

/// Outcome of the exhaustive mod-3 check behind insolubility mod 9.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionCheck {
    pub tuples: u64,
    /// Tuples where a cubic vanishes mod 3 while its block is nonzero.
    pub violations: Vec<[u8; 6]>,
}

impl DecompositionCheck {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every primitive tuple mod 3: `C1` does not vanish unless its block of
/// variables is zero, and likewise for `C2`.
pub fn decomposition_mod3(c1: &Polynomial<IntegerRing>, c2: &Polynomial<IntegerRing>) -> DecompositionCheck {
    let three = BigInt::from(3);
    let mut violations = Vec::new();
    let mut tuples = 0;
    for idx in 1..729u32 {
        let mut t = [0u8; 6];
        let mut k = idx;
        for c in t.iter_mut() {
            *c = (k % 3) as u8;
            k /= 3;
        }
        tuples += 1;
        let pt: Vec<BigInt> = t.iter().map(|&c| BigInt::from(c)).collect();
        for c in [c1, c2] {
            let vars = c.support_vars();
            let block_zero = vars.iter().all(|&v| t[v] == 0);
            let val = c.evaluate(&pt).unwrap();
            if !block_zero && (&val % &three).is_zero() {
                violations.push(t);
                break;
            }
        }
    }
    DecompositionCheck { tuples, violations }
}

/// Determinant of the 3x3 matrix of linear forms `d Q_k / d y_j`, a cubic in
/// the complementary variables. For quadrics bilinear in two blocks this
/// cuts out the projection of the residual surface.
pub fn bilinear_determinant(quadrics: &[Polynomial<IntegerRing>; 3], ys: &[usize; 3]) -> Polynomial<IntegerRing> {
    let m: Vec<Vec<Polynomial<IntegerRing>>> =
        quadrics.iter().map(|q| ys.iter().map(|&y| q.partial_derivative(y)).collect()).collect();
    let t = |a: usize, b: usize, c: usize| m[0][a].mul(&m[1][b]).mul(&m[2][c]);
    t(0, 1, 2)
        .add(&t(1, 2, 0))
        .add(&t(2, 0, 1))
        .sub(&t(2, 1, 0))
        .sub(&t(0, 2, 1))
        .sub(&t(1, 0, 2))
}

/// Primitive with positive leading coefficient.
pub fn primitive_part(p: &Polynomial<IntegerRing>) -> Polynomial<IntegerRing> {
    let c = p.content();
    if c.is_zero() {
        return p.clone();
    }
    let q = p.map_coeffs(p.ring(), |a| a / &c);
    if q.lc().is_some_and(|a| a < &BigInt::zero()) {
        q.neg()
    } else {
        q
    }
}
