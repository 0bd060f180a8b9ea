use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::hensel::hensel_lift_point;
use super::{LocalError, Place, SolubilityReport, Verdict, Witness};
use crate::arith::nt::split_valuation;
use crate::arith::padic::{padic_sqrt, padic_square_class};
use crate::arith::{jacobi, IntegerRing};
use crate::data::Table1Row;
use crate::groebner::GroebnerLimits;
use crate::k3::{is_bad_prime, DoubleCoverModel};
use crate::poly::{MonomialOrder, PolyRing};

/// Extra precision carried beyond the Hensel threshold.
const MARGIN: u32 = 8;

fn pk(p: &BigInt, k: u32) -> BigInt {
    num_traits::pow(p.clone(), k as usize)
}

fn vp(a: &BigInt, p: &BigInt) -> u32 {
    if a.is_zero() {
        u32::MAX
    } else {
        split_valuation(a, p).0 as u32
    }
}

/// `2 v_p(2w) + 1`: a `w` with `w^2 = c mod p^t` for `t` at least this lifts
/// to a root of `w^2 = c` in `Z_p`.
pub fn hensel_threshold(w: &BigInt, p: &BigInt) -> u32 {
    let v = vp(&(BigInt::from(2) * w), p);
    v.saturating_mul(2).saturating_add(1)
}

/// Largest `t <= cap` with `w^2 = c mod p^t`.
pub fn congruence_precision(w: &BigInt, c: &BigInt, p: &BigInt, cap: u32) -> u32 {
    let d = w * w - c;
    vp(&d, p).min(cap)
}

fn primitive(point: &[BigInt; 3], p: &BigInt) -> bool {
    point.iter().any(|c| !c.mod_floor(p).is_zero())
}

fn undetermined(place: Place, note: impl Into<String>) -> SolubilityReport {
    SolubilityReport {
        place,
        verdict: Verdict::Undetermined,
        witness: None,
        exhaustion: None,
        note: note.into(),
    }
}

fn soluble(p: &BigInt, point: &[BigInt; 3], w: BigInt, t: u32, note: String) -> SolubilityReport {
    let m = pk(p, t);
    let mut coords: Vec<BigInt> = point.to_vec();
    coords.push(w.mod_floor(&m));
    SolubilityReport {
        place: Place::Prime(p.clone()),
        verdict: Verdict::Soluble,
        witness: Some(Witness {
            point: coords,
            modulus: m,
            precision: Some(t),
        }),
        exhaustion: None,
        note,
    }
}

/// Decides whether the fibre of `w^2 = delta f` over the integer point `P`
/// has a `Q_p`-point, and if so returns `(P, w)` with `w` correct modulo
/// `p^t`, `t` at least `precision` and above the Hensel threshold.
///
/// At `p = 2` the transformed model `w'^2 + g1 w' - h` is used when `g1(P)`
/// is odd; otherwise `f(P) = 0 mod 4` and the square class of `f(P)` decides.
pub fn double_cover_qp_verdict(
    model: &DoubleCoverModel,
    p: &BigInt,
    point: &[BigInt; 3],
    precision: u32,
) -> Result<SolubilityReport, LocalError> {
    if p < &BigInt::from(2) {
        return Err(LocalError::Precondition(format!("{p} is not a prime")));
    }
    if !primitive(point, p) {
        return Err(LocalError::Precondition("point is not primitive".into()));
    }
    let place = Place::Prime(p.clone());
    let fp = model.f_at(point);
    if fp.is_zero() {
        return Ok(undetermined(place, "point lies on the branch curve"));
    }
    let (num, den) = (model.delta.numer().clone(), model.delta.denom().clone());
    if den.is_multiple_of(p) {
        return Err(LocalError::Precondition(format!("twist is not {p}-integral")));
    }
    let two = BigInt::from(2);
    if p == &two && model.delta.is_one() {
        if let Some(t2) = &model.at_two {
            let g = t2.g1.evaluate(point).expect("three coordinates");
            if g.is_odd() {
                return two_adic_transformed(model, p, point, &fp, &g, precision);
            }
        } else {
            return Err(LocalError::Precondition("p = 2 needs the transformed model".into()));
        }
    }
    // (den w)^2 = num den f
    let c = &num * &den * &fp;
    let class = padic_square_class(&BigRational::from_integer(c.clone()), p)
        .map_err(|e| LocalError::Precondition(e.to_string()))?;
    if !class.is_square {
        return Ok(undetermined(
            place,
            format!("delta f(P) = {} is not a square in Q_{p}", &model.delta * BigRational::from_integer(fp)),
        ));
    }
    let half = (class.valuation / 2) as u32;
    // threshold of the root, which has valuation `half`
    let threshold = 2 * (half + (p == &two) as u32) + 1;
    let t = precision.max(threshold + MARGIN);
    let r = padic_sqrt(&c, p, t).ok_or_else(|| LocalError::Precondition("square root failed".into()))?;
    let m = pk(p, t);
    let w = (r * den.modinv(&m).expect("den is a unit")).mod_floor(&m);
    let got = congruence_precision(&(&w * &den), &c, p, t);
    if got < t {
        return Err(LocalError::Precondition(format!("w^2 = delta f only mod {p}^{got}")));
    }
    Ok(soluble(p, point, w, t, format!("delta f(P) is a square; threshold {threshold}")))
}

fn two_adic_transformed(
    model: &DoubleCoverModel,
    p: &BigInt,
    point: &[BigInt; 3],
    fp: &BigInt,
    g: &BigInt,
    precision: u32,
) -> Result<SolubilityReport, LocalError> {
    let h = model.at_two.as_ref().unwrap().h.evaluate(point).expect("three coordinates");
    let class = padic_square_class(&BigRational::from_integer(fp.clone()), p)
        .map_err(|e| LocalError::Precondition(e.to_string()))?;
    if h.is_odd() {
        // w'^2 + w' is even, so no root mod 2
        if class.is_square {
            return Err(LocalError::Precondition("transformed model disagrees with the square class".into()));
        }
        return Ok(undetermined(Place::Prime(p.clone()), "h(P) odd: no root of w'^2 + g1 w' - h mod 2"));
    }
    if !class.is_square {
        return Err(LocalError::Precondition("transformed model disagrees with the square class".into()));
    }
    // `f(P)` is odd here so the root is a unit and the threshold is 3
    let threshold = 3;
    let t = precision.max(threshold + MARGIN);
    let rw = PolyRing::new(IntegerRing, &["w"], MonomialOrder::GrevLex);
    let w1 = rw.var(0);
    let eq = w1.mul(&w1).add(&w1.scale(g)).sub(&rw.constant(h));
    // the derivative 2w' + g1 is odd, so either residue is smooth
    let w0 = BigInt::zero();
    let lift = hensel_lift_point(&[eq], p, &[w0], t - 2)?;
    let w = &lift.point[0] * 2 + g;
    let got = congruence_precision(&w, fp, p, t);
    if got < t {
        return Err(LocalError::Precondition(format!("w^2 = f only mod 2^{got}")));
    }
    Ok(soluble(
        p,
        point,
        w,
        t,
        format!("lifted on w'^2 + g1 w' - h with g1(P) = {g} odd; threshold {threshold}"),
    ))
}

/// Soluble when `delta f` takes a positive value on a small integer grid.
pub fn real_witness(model: &DoubleCoverModel) -> SolubilityReport {
    let r = 3i64;
    for x in -r..=r {
        for y in -r..=r {
            for z in -r..=r {
                if (x, y, z) == (0, 0, 0) {
                    continue;
                }
                let pt = [x, y, z].map(BigInt::from);
                let v = &model.delta * BigRational::from_integer(model.f_at(&pt));
                if v.is_positive() {
                    return SolubilityReport {
                        place: Place::Real,
                        verdict: Verdict::Soluble,
                        witness: Some(Witness {
                            point: pt.to_vec(),
                            modulus: BigInt::zero(),
                            precision: None,
                        }),
                        exhaustion: None,
                        note: format!("delta f(P) = {v} > 0"),
                    };
                }
            }
        }
    }
    undetermined(Place::Real, format!("delta f <= 0 on the grid [-{r}, {r}]^3"))
}

/// For a good prime `p > 22`, searches `P^2(F_p)` in canonical order for a
/// point where `delta f` is a nonzero square and lifts it.
pub fn good_prime_auto_solubility(
    model: &DoubleCoverModel,
    p: u64,
    limits: &GroebnerLimits,
) -> Result<SolubilityReport, LocalError> {
    if p <= 22 {
        return Err(LocalError::Precondition(format!("{p} <= 22")));
    }
    let pb = BigInt::from(p);
    if !crate::arith::is_prime_u64(p) {
        return Err(LocalError::Precondition(format!("{p} is not prime")));
    }
    if is_bad_prime(model, &pb, limits)?.bad {
        return Err(LocalError::Precondition(format!("{p} is a prime of bad reduction")));
    }
    let nd = &model.delta.numer().clone() * model.delta.denom();
    let mut checked = 0u64;
    for (z, y) in [(1u64, None), (0, Some(1u64)), (0, Some(0))] {
        let xs: Vec<u64> = if y == Some(0) { vec![1] } else { (0..p).collect() };
        let ys: Vec<u64> = match y {
            None => (0..p).collect(),
            Some(v) => vec![v],
        };
        for &yv in &ys {
            for &xv in &xs {
                checked += 1;
                let pt = [xv, yv, z].map(BigInt::from);
                let c = (&nd * model.f_at(&pt)).mod_floor(&pb);
                if !c.is_zero() && jacobi(&c, &pb) == 1 {
                    let mut r = double_cover_qp_verdict(model, &pb, &pt, 1)?;
                    if r.verdict != Verdict::Soluble {
                        return Err(LocalError::Contradiction(pb));
                    }
                    r.note = format!("{}; F_{p} point found after {checked} points", r.note);
                    return Ok(r);
                }
            }
        }
    }
    Err(LocalError::Contradiction(pb))
}

/// One published local point, checked two ways.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Check {
    pub p: BigInt,
    pub point: [BigInt; 3],
    pub printed: BigInt,
    pub f_value: BigInt,
    /// The printed column equals `f(P)`.
    pub printed_is_value: bool,
    /// Largest `t` (capped) with `printed^2 = f(P) mod p^t`.
    pub printed_precision: u32,
    pub printed_threshold: u32,
    pub report: SolubilityReport,
    /// `w^2 = delta f(P) mod p^t` for the computed witness.
    pub witness_precision: Option<u32>,
    pub witness_threshold: Option<u32>,
}

impl Table1Check {
    /// The printed value read as an approximate square root meets the Hensel
    /// threshold.
    pub fn printed_root_ok(&self) -> bool {
        self.printed_precision >= self.printed_threshold
    }

    /// The point is soluble with a witness above its threshold.
    pub fn witness_ok(&self) -> bool {
        self.report.verdict == Verdict::Soluble
            && matches!((self.witness_precision, self.witness_threshold), (Some(t), Some(h)) if t >= h)
    }
}

/// Checks every row: the printed value against `f(P)`, the printed value as
/// a root approximant, and a computed witness at `precision`. `model` must
/// carry the transformed model at 2 when a row has `p = 2`.
pub fn verify_table1(
    model: &DoubleCoverModel,
    rows: &[Table1Row],
    precision: u32,
) -> Result<Vec<Table1Check>, LocalError> {
    rows.iter()
        .map(|row| {
            let f_value = model.f_at(&row.point);
            let cap = 4 * precision.max(64);
            let report = double_cover_qp_verdict(model, &row.p, &row.point, precision)?;
            let (wp, wt) = match &report.witness {
                Some(w) => {
                    let wv = &w.point[3];
                    let c = (&model.delta * BigRational::from_integer(f_value.clone()) * model.delta.denom().pow(2))
                        .to_integer();
                    let t = congruence_precision(&(wv * model.delta.denom()), &c, &row.p, w.precision.unwrap_or(0));
                    (Some(t), Some(hensel_threshold(wv, &row.p)))
                }
                None => (None, None),
            };
            Ok(Table1Check {
                p: row.p.clone(),
                point: row.point.clone(),
                printed: row.w.clone(),
                printed_is_value: row.w == f_value,
                printed_precision: congruence_precision(&row.w, &f_value, &row.p, cap),
                printed_threshold: hensel_threshold(&row.w, &row.p).min(cap + 1),
                f_value,
                report,
                witness_precision: wp,
                witness_threshold: wt,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::k3::good_reduction_at_2;
    use crate::poly::{parse_expr, Polynomial};

    fn zpoly(s: &str) -> Polynomial<IntegerRing> {
        let r = PolyRing::new(IntegerRing, &["x", "y", "z"], MonomialOrder::GrevLex);
        parse_expr(s, &r).unwrap()
    }

    fn check_witness(model: &DoubleCoverModel, r: &SolubilityReport) {
        let w = r.witness.as_ref().unwrap();
        let pt = [w.point[0].clone(), w.point[1].clone(), w.point[2].clone()];
        let f = model.f_at(&pt);
        assert!((&w.point[3] * &w.point[3] - f).mod_floor(&w.modulus).is_zero());
        let Place::Prime(p) = &r.place else { panic!() };
        assert!(w.precision.unwrap() >= hensel_threshold(&w.point[3], p));
    }

    #[test]
    fn odd_primes_follow_square_class() {
        let f = zpoly("x^6 + 2*y^6 + 3*z^6 + x*y*z^4");
        let m = DoubleCoverModel::untwisted(f).unwrap();
        for p in [3i64, 5, 7, 11, 13] {
            let pb = BigInt::from(p);
            for pt in [[1, 0, 0], [1, 1, 1], [2, -1, 1], [0, 1, 3]] {
                let pt = pt.map(BigInt::from);
                let r = double_cover_qp_verdict(&m, &pb, &pt, 5).unwrap();
                let sq = padic_square_class(&BigRational::from_integer(m.f_at(&pt)), &pb).unwrap().is_square;
                assert_eq!(r.verdict == Verdict::Soluble, sq);
                if sq {
                    check_witness(&m, &r);
                }
            }
        }
        // branch point and non-primitive input
        let g = DoubleCoverModel::untwisted(zpoly("x^6 - y^6 + x*y*z^4")).unwrap();
        let r = double_cover_qp_verdict(&g, &BigInt::from(7), &[1, 1, 0].map(BigInt::from), 5).unwrap();
        assert_eq!(r.verdict, Verdict::Undetermined);
        assert!(double_cover_qp_verdict(&g, &BigInt::from(7), &[7, 0, 14].map(BigInt::from), 5).is_err());
    }

    #[test]
    fn two_adic_route_matches_square_class() {
        // f = g^2 + 4h with h chosen so the model is nondegenerate mod 2
        let g = zpoly("x^3 + y^2*z + z^3");
        let h = zpoly("x^6 + x*y^5 + y^6 + z^6 + x^2*y^2*z^2 - 3*x*z^5");
        let f = g.mul(&g).add(&h.scale(&BigInt::from(4)));
        let base = DoubleCoverModel::untwisted(f).unwrap();
        let m = good_reduction_at_2(&base, &GroebnerLimits::default()).unwrap().model;
        let two = BigInt::from(2);
        let mut seen = 0;
        for x in -3..=3i64 {
            for y in -3..=3i64 {
                let pt = [x, y, 1].map(BigInt::from);
                let fp = m.f_at(&pt);
                if fp.is_zero() {
                    continue;
                }
                let r = double_cover_qp_verdict(&m, &two, &pt, 12).unwrap();
                let sq = padic_square_class(&BigRational::from_integer(fp), &two).unwrap().is_square;
                assert_eq!(r.verdict == Verdict::Soluble, sq, "{pt:?}");
                if sq {
                    check_witness(&m, &r);
                    seen += 1;
                }
            }
        }
        assert!(seen > 0);
        assert!(double_cover_qp_verdict(&base, &two, &[1, 0, 0].map(BigInt::from), 5).is_err());
    }

    #[test]
    fn real_place() {
        let pos = DoubleCoverModel::untwisted(zpoly("x^6 + y^6 - 5*z^6")).unwrap();
        assert_eq!(real_witness(&pos).verdict, Verdict::Soluble);
        let neg = DoubleCoverModel::untwisted(zpoly("-x^6 - y^6 - z^6")).unwrap();
        assert_eq!(real_witness(&neg).verdict, Verdict::Undetermined);
    }

    #[test]
    fn auto_solubility_at_good_primes() {
        let m = DoubleCoverModel::untwisted(zpoly("x^6 + y^6 + z^6")).unwrap();
        let lim = GroebnerLimits::default();
        let r = good_prime_auto_solubility(&m, 23, &lim).unwrap();
        assert_eq!(r.verdict, Verdict::Soluble);
        check_witness(&m, &r);
        assert!(good_prime_auto_solubility(&m, 19, &lim).is_err());
        assert!(good_prime_auto_solubility(&m, 31, &lim).is_ok());
    }
}
