use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::LocalError;
use crate::arith::IntegerRing;
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HenselLift {
    pub point: Vec<BigInt>,
    pub p: BigInt,
    pub precision: u32,
    /// Coordinates moved by Newton steps; the rest stay fixed.
    pub pivots: Vec<usize>,
    /// `min v_p(F_i(x))` after each Newton step, capped at the step's target.
    pub residual_valuations: Vec<u32>,
}

fn pk(p: &BigInt, k: u32) -> BigInt {
    num_traits::pow(p.clone(), k as usize)
}

fn vp_capped(a: &BigInt, p: &BigInt, cap: u32) -> u32 {
    let mut v = 0;
    let mut a = a.clone();
    while v < cap && !a.is_zero() {
        let (q, r) = a.div_rem(p);
        if !r.is_zero() {
            break;
        }
        a = q;
        v += 1;
    }
    if a.is_zero() {
        cap
    } else {
        v
    }
}

fn eval_all(forms: &[Polynomial<IntegerRing>], x: &[BigInt]) -> Vec<BigInt> {
    forms.iter().map(|f| f.evaluate(x).expect("arity checked")).collect()
}

/// Columns of a unit `r x r` minor of `j mod p`, by elimination mod `p`.
fn unit_minor(j: &[Vec<BigInt>], p: &BigInt) -> Option<Vec<usize>> {
    let r = j.len();
    let n = j.first().map_or(0, |row| row.len());
    let mut a: Vec<Vec<BigInt>> = j.iter().map(|row| row.iter().map(|c| c.mod_floor(p)).collect()).collect();
    let mut cols = Vec::with_capacity(r);
    let mut row = 0;
    for c in 0..n {
        if row == r {
            break;
        }
        let Some(piv) = (row..r).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(row, piv);
        let inv = a[row][c].modinv(p)?;
        for i in 0..r {
            if i != row && !a[i][c].is_zero() {
                let f = (&a[i][c] * &inv).mod_floor(p);
                for k in 0..n {
                    let v = (&a[i][k] - &f * &a[row][k]).mod_floor(p);
                    a[i][k] = v;
                }
            }
        }
        cols.push(c);
        row += 1;
    }
    (cols.len() == r).then_some(cols)
}

/// Solves `a d = b mod m` for square `a` invertible mod every prime of `m`.
fn solve_mod(mut a: Vec<Vec<BigInt>>, mut b: Vec<BigInt>, p: &BigInt, m: &BigInt) -> Option<Vec<BigInt>> {
    let r = a.len();
    for c in 0..r {
        let piv = (c..r).find(|&i| !a[i][c].mod_floor(p).is_zero())?;
        a.swap(c, piv);
        b.swap(c, piv);
        let inv = a[c][c].modinv(m)?;
        for k in 0..r {
            a[c][k] = (&a[c][k] * &inv).mod_floor(m);
        }
        b[c] = (&b[c] * &inv).mod_floor(m);
        for i in 0..r {
            if i != c {
                let f = a[i][c].clone();
                if f.is_zero() {
                    continue;
                }
                for k in 0..r {
                    let v = (&a[i][k] - &f * &a[c][k]).mod_floor(m);
                    a[i][k] = v;
                }
                b[i] = (&b[i] - &f * &b[c]).mod_floor(m);
            }
        }
    }
    Some(b)
}

/// Lifts a point of `F_1 = ... = F_r = 0` mod `p` with full-rank Jacobian to
/// a point mod `p^k`, by Newton steps on the coordinates of a unit minor.
/// Precision doubles each step and the residual valuation is checked to keep
/// up.
pub fn hensel_lift_point(
    forms: &[Polynomial<IntegerRing>],
    p: &BigInt,
    point: &[BigInt],
    k: u32,
) -> Result<HenselLift, LocalError> {
    if forms.is_empty() || k == 0 {
        return Err(LocalError::Precondition("need forms and k >= 1".into()));
    }
    let n = point.len();
    if forms.iter().any(|f| f.nvars() != n) {
        return Err(LocalError::Precondition("point has the wrong number of coordinates".into()));
    }
    if eval_all(forms, point).iter().any(|v| !v.mod_floor(p).is_zero()) {
        return Err(LocalError::NotOnVariety(p.clone()));
    }
    let grads: Vec<Vec<Polynomial<IntegerRing>>> =
        forms.iter().map(|f| (0..n).map(|v| f.partial_derivative(v)).collect()).collect();
    let jac = |x: &[BigInt]| -> Vec<Vec<BigInt>> {
        grads.iter().map(|row| row.iter().map(|g| g.evaluate(x).unwrap()).collect()).collect()
    };
    let pivots = unit_minor(&jac(point), p).ok_or_else(|| LocalError::NotSmooth(p.clone()))?;
    let mut x: Vec<BigInt> = point.iter().map(|c| c.mod_floor(p)).collect();
    let mut prec = 1u32;
    let mut vals = Vec::new();
    while prec < k {
        let next = (2 * prec).min(k);
        let m = pk(p, next);
        let fx = eval_all(forms, &x);
        let j = jac(&x);
        let a: Vec<Vec<BigInt>> = j.iter().map(|row| pivots.iter().map(|&c| row[c].clone()).collect()).collect();
        let d = solve_mod(a, fx, p, &m).ok_or_else(|| LocalError::NotSmooth(p.clone()))?;
        for (&c, dc) in pivots.iter().zip(&d) {
            x[c] = (&x[c] - dc).mod_floor(&m);
        }
        let v = eval_all(forms, &x).iter().map(|r| vp_capped(r, p, next)).min().unwrap();
        if v < next {
            return Err(LocalError::Precondition(format!(
                "Newton step to precision {next} left residual valuation {v}"
            )));
        }
        vals.push(v);
        prec = next;
    }
    Ok(HenselLift {
        point: x,
        p: p.clone(),
        precision: k,
        pivots,
        residual_valuations: vals,
    })
}

/// First point of `P^{n-1}(F_p)` (normalized, last nonzero coordinate 1,
/// lower coordinates varying fastest) on all forms with a full-rank
/// Jacobian.
pub fn find_smooth_point(forms: &[Polynomial<IntegerRing>], p: u64, budget: u64) -> Result<Option<Vec<BigInt>>, LocalError> {
    let n = forms.first().map_or(0, |f| f.nvars());
    let total = (0..n as u32).map(|i| (p as u128).pow(i)).sum::<u128>();
    if total > budget as u128 {
        return Err(LocalError::Budget {
            needed: total.min(u64::MAX as u128) as u64,
            budget,
        });
    }
    let pb = BigInt::from(p);
    for lead in (0..n).rev() {
        // coordinates after `lead` are 0, `lead` is 1, before it free
        let count = (p as u128).pow(lead as u32) as u64;
        for idx in 0..count {
            let mut x = vec![BigInt::zero(); n];
            let mut t = idx;
            for c in x.iter_mut().take(lead) {
                *c = BigInt::from(t % p);
                t /= p;
            }
            x[lead] = BigInt::one();
            if eval_all(forms, &x).iter().all(|v| v.mod_floor(&pb).is_zero()) {
                let j: Vec<Vec<BigInt>> = forms
                    .iter()
                    .map(|f| (0..n).map(|v| f.partial_derivative(v).evaluate(&x).unwrap()).collect())
                    .collect();
                if unit_minor(&j, &pb).is_some() {
                    return Ok(Some(x));
                }
            }
        }
    }
    Ok(None)
}
