//! Elimination, intersection, saturation and the finiteness/emptiness tests.

use rayon::prelude::*;
use serde::Serialize;

use super::{buchberger, GroebnerBasis, GroebnerError, GroebnerLimits, Ideal};
use crate::arith::Field;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

/// Ring with `k` fresh variables placed before the existing ones.
fn extend_front<F: Field>(ring: &PolyRing<F>, k: usize, order: MonomialOrder) -> PolyRing<F> {
    let mut names: Vec<String> = (0..k).map(|i| format!("_t{i}")).collect();
    names.extend(ring.vars().iter().cloned());
    PolyRing::new(ring.coeffs().clone(), &names, order)
}

/// Basis elements of `gens` (in a ring whose first `k` variables are to be
/// eliminated) that avoid those variables, brought back via `positions`.
fn eliminate_front<F: Field>(
    ext: &PolyRing<F>,
    gens: Vec<Polynomial<F>>,
    k: usize,
    target: &PolyRing<F>,
    positions: &[Option<usize>],
    limits: &GroebnerLimits,
) -> Result<Ideal<F>, GroebnerError> {
    let ideal = Ideal {
        ring: ext.clone(),
        gens,
    };
    let gb = buchberger(&ideal, MonomialOrder::Block(k), limits)?;
    let kept = gb
        .basis()
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.exps()[..k].iter().all(|&e| e == 0)))
        .map(|g| g.relabel(target, positions))
        .collect();
    Ok(Ideal {
        ring: target.clone(),
        gens: kept,
    })
}

/// `I : g^oo` via `I + <t g - 1>` with `t` eliminated.
pub fn saturate_by_element<F: Field>(
    i: &Ideal<F>,
    g: &Polynomial<F>,
    limits: &GroebnerLimits,
) -> Result<Ideal<F>, GroebnerError> {
    let ring = i.ring();
    if g.is_zero() {
        return Ok(Ideal::unit(ring.clone()));
    }
    let ext = extend_front(ring, 1, MonomialOrder::Block(1));
    let n = ring.nvars();
    let up: Vec<Option<usize>> = std::iter::once(None).chain((0..n).map(Some)).collect();
    let down: Vec<Option<usize>> = (1..=n).map(Some).collect();
    let mut gens: Vec<Polynomial<F>> = i.gens().iter().map(|p| p.relabel(&ext, &up)).collect();
    let t = ext.var(0);
    gens.push(t.mul(&g.in_ring(ring).relabel(&ext, &up)).sub(&ext.one()));
    eliminate_front(&ext, gens, 1, ring, &down, limits)
}

/// `I : J^oo`, the intersection of `I : g^oo` over the generators `g` of `J`.
/// The single-generator saturations run in parallel; the intersection is
/// taken in generator order.
pub fn saturate<F: Field>(i: &Ideal<F>, j: &Ideal<F>, limits: &GroebnerLimits) -> Result<Ideal<F>, GroebnerError> {
    let gens: Vec<&Polynomial<F>> = j.gens().iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return Ok(Ideal::unit(i.ring().clone()));
    }
    if gens.iter().any(|g| g.is_constant()) {
        return Ok(i.clone());
    }
    let parts: Vec<Ideal<F>> = gens
        .par_iter()
        .map(|g| saturate_by_element(i, g, limits))
        .collect::<Result<_, _>>()?;
    let mut acc = parts[0].clone();
    for p in &parts[1..] {
        acc = ideal_intersect(&acc, p, limits)?;
    }
    Ok(acc)
}

/// `I : x_var^oo` for homogeneous `I`: with `x_var` ordered last under
/// grevlex, dividing each reduced basis element by its largest power of
/// `x_var` gives a basis of the saturation.
pub fn saturate_by_variable<F: Field>(
    i: &Ideal<F>,
    var: usize,
    limits: &GroebnerLimits,
) -> Result<GroebnerBasis<F>, GroebnerError> {
    if !i.is_homogeneous() {
        return Err(GroebnerError::NonHomogeneous);
    }
    let ring = i.ring();
    let n = ring.nvars();
    // permuted ring: position j holds original variable perm[j]
    let perm: Vec<usize> = (0..n).filter(|&v| v != var).chain(std::iter::once(var)).collect();
    let names: Vec<String> = perm.iter().map(|&v| ring.vars()[v].clone()).collect();
    let pr = PolyRing::new(ring.coeffs().clone(), &names, MonomialOrder::GrevLex);
    let to_p: Vec<Option<usize>> = perm.iter().map(|&v| Some(v)).collect();
    let gens = i.gens().iter().map(|g| g.relabel(&pr, &to_p)).collect();
    let gb = buchberger(&Ideal { ring: pr.clone(), gens }, MonomialOrder::GrevLex, limits)?;
    let divided: Vec<Polynomial<F>> = gb
        .basis()
        .iter()
        .map(|g| {
            let e = g.terms().iter().map(|(m, _)| m.exps()[n - 1]).min().unwrap_or(0);
            let terms = g
                .terms()
                .iter()
                .map(|(m, c)| {
                    let mut nm = m.clone();
                    nm.0[n - 1] -= e;
                    (nm, c.clone())
                })
                .collect();
            pr.from_sorted_terms(terms)
        })
        .collect();
    // back to the original variable positions
    let from_p: Vec<Option<usize>> = (0..n).map(|v| perm.iter().position(|&q| q == v)).collect();
    let back: Vec<Polynomial<F>> = divided.iter().map(|g| g.relabel(ring, &from_p)).collect();
    buchberger(&Ideal { ring: ring.clone(), gens: back }, MonomialOrder::GrevLex, limits)
}

/// `I` intersected with the subring on the variables `keep` (indices into the
/// ring), via a block order that puts the other variables first.
pub fn elimination_ideal<F: Field>(
    i: &Ideal<F>,
    keep: &[usize],
    limits: &GroebnerLimits,
) -> Result<Ideal<F>, GroebnerError> {
    let ring = i.ring();
    let n = ring.nvars();
    let drop: Vec<usize> = (0..n).filter(|v| !keep.contains(v)).collect();
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    let k = drop.len();
    let perm: Vec<usize> = drop.iter().chain(kept.iter()).copied().collect();
    let names: Vec<String> = perm.iter().map(|&v| ring.vars()[v].clone()).collect();
    let ext = PolyRing::new(ring.coeffs().clone(), &names, MonomialOrder::Block(k));
    let to_ext: Vec<Option<usize>> = perm.iter().map(|&v| Some(v)).collect();
    let back: Vec<Option<usize>> = (0..n).map(|v| perm.iter().position(|&q| q == v)).collect();
    let gens = i.gens().iter().map(|g| g.relabel(&ext, &to_ext)).collect();
    eliminate_front(&ext, gens, k, ring, &back, limits)
}

/// `I` intersected with `J` via `t I + (1 - t) J` with `t` eliminated.
pub fn ideal_intersect<F: Field>(i: &Ideal<F>, j: &Ideal<F>, limits: &GroebnerLimits) -> Result<Ideal<F>, GroebnerError> {
    let ring = i.ring();
    let n = ring.nvars();
    let ext = extend_front(ring, 1, MonomialOrder::Block(1));
    let up: Vec<Option<usize>> = std::iter::once(None).chain((0..n).map(Some)).collect();
    let down: Vec<Option<usize>> = (1..=n).map(Some).collect();
    let t = ext.var(0);
    let one_minus_t = ext.one().sub(&t);
    let mut gens: Vec<Polynomial<F>> = i.gens().iter().map(|g| t.mul(&g.relabel(&ext, &up))).collect();
    gens.extend(
        j.gens()
            .iter()
            .map(|g| one_minus_t.mul(&g.in_ring(ring).relabel(&ext, &up))),
    );
    eliminate_front(&ext, gens, 1, ring, &down, limits)
}

/// Double inclusion by normal forms.
pub fn ideals_equal<F: Field>(i: &Ideal<F>, j: &Ideal<F>, limits: &GroebnerLimits) -> Result<bool, GroebnerError> {
    let gi = buchberger(i, MonomialOrder::GrevLex, limits)?;
    let gj = buchberger(j, MonomialOrder::GrevLex, limits)?;
    Ok(j.gens().iter().all(|g| gi.contains(g)) && i.gens().iter().all(|g| gj.contains(g)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QuotientDimension {
    Finite(u64),
    Infinite,
}

/// Number of standard monomials of the basis under `order`.
pub fn quotient_dimension<F: Field>(
    i: &Ideal<F>,
    order: MonomialOrder,
    limits: &GroebnerLimits,
) -> Result<QuotientDimension, GroebnerError> {
    let gb = buchberger(i, order, limits)?;
    Ok(standard_monomial_count(&gb))
}

pub(crate) fn standard_monomial_count<F: Field>(gb: &GroebnerBasis<F>) -> QuotientDimension {
    if gb.is_unit() {
        return QuotientDimension::Finite(0);
    }
    let n = gb.ring().nvars();
    let lms: Vec<&Monomial> = gb.basis().iter().map(|g| g.lm().unwrap()).collect();
    let bounds = match pure_powers(&lms, n) {
        Some(b) => b,
        None => return QuotientDimension::Infinite,
    };
    // walk the box below the pure powers, skipping multiples of leading monomials
    let mut count = 0u64;
    let mut e = vec![0u16; n];
    loop {
        let m = Monomial::from_exps(&e);
        if !lms.iter().any(|l| l.divides(&m)) {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return QuotientDimension::Finite(count);
            }
            e[pos] += 1;
            if e[pos] < bounds[pos] {
                break;
            }
            e[pos] = 0;
            pos += 1;
        }
    }
}

/// For each variable the smallest exponent `e` with `x^e` a leading monomial,
/// or `None` if some variable has no pure power.
fn pure_powers(lms: &[&Monomial], n: usize) -> Option<Vec<u16>> {
    let mut out: Vec<Option<u16>> = vec![None; n];
    for m in lms {
        if let Some(v) = m.pure_power_var() {
            let e = m.exps()[v];
            out[v] = Some(out[v].map_or(e, |x| x.min(e)));
        }
    }
    out.into_iter().collect()
}

/// Evidence for [`is_projectively_empty`].
#[derive(Debug, Clone)]
pub enum EmptinessCertificate<F: Field> {
    /// Every variable has a pure power among the grevlex leading monomials,
    /// so the ideal contains a power of the irrelevant ideal.
    Empty {
        basis: GroebnerBasis<F>,
        pure_powers: Vec<u16>,
    },
    /// The saturation by the chart variable is a proper ideal, so the chart
    /// `x_chart != 0` carries a point over the algebraic closure.
    NonEmpty { chart: usize, saturation: GroebnerBasis<F> },
}

impl<F: Field> EmptinessCertificate<F> {
    pub fn is_empty(&self) -> bool {
        matches!(self, EmptinessCertificate::Empty { .. })
    }

    pub fn report(&self) -> String {
        match self {
            EmptinessCertificate::Empty { basis, pure_powers } => format!(
                "verdict: empty\npure powers: {:?}\n{}",
                pure_powers,
                basis.report()
            ),
            EmptinessCertificate::NonEmpty { chart, saturation } => format!(
                "verdict: nonempty\nchart: {}\n{}",
                saturation.ring().vars()[*chart],
                saturation.report()
            ),
        }
    }
}

/// Whether the projective zero set of a homogeneous ideal is empty over the
/// algebraic closure.
pub fn is_projectively_empty<F: Field>(
    i: &Ideal<F>,
    limits: &GroebnerLimits,
) -> Result<EmptinessCertificate<F>, GroebnerError> {
    if !i.is_homogeneous() {
        return Err(GroebnerError::NonHomogeneous);
    }
    emptiness(i, None, limits)
}

/// As [`is_projectively_empty`] for an ideal homogeneous under the given
/// variable weights, i.e. in a weighted projective space. The affine cone is
/// stable under the weighted scaling, so it is the origin alone exactly when
/// the quotient is finite dimensional.
pub fn is_weighted_projectively_empty<F: Field>(
    i: &Ideal<F>,
    weights: &[u32],
    limits: &GroebnerLimits,
) -> Result<EmptinessCertificate<F>, GroebnerError> {
    if weights.len() != i.ring().nvars() || !i.gens().iter().all(|g| g.is_weighted_homogeneous(weights)) {
        return Err(GroebnerError::NonHomogeneous);
    }
    emptiness(i, Some(weights), limits)
}

fn emptiness<F: Field>(
    i: &Ideal<F>,
    weights: Option<&[u32]>,
    limits: &GroebnerLimits,
) -> Result<EmptinessCertificate<F>, GroebnerError> {
    let gb = buchberger(i, MonomialOrder::GrevLex, limits)?;
    let n = i.ring().nvars();
    if gb.is_unit() {
        return Ok(EmptinessCertificate::Empty {
            basis: gb,
            pure_powers: vec![0; n],
        });
    }
    let lms: Vec<&Monomial> = gb.basis().iter().map(|g| g.lm().unwrap()).collect();
    if let Some(pp) = pure_powers(&lms, n) {
        return Ok(EmptinessCertificate::Empty {
            basis: gb,
            pure_powers: pp,
        });
    }
    // some variable has no pure power, so the locus is nonempty; find a chart
    // that exhibits it, starting with the variables lacking one
    let (mut charts, rest): (Vec<usize>, Vec<usize>) =
        (0..n).partition(|&v| !lms.iter().any(|m| m.pure_power_var() == Some(v)));
    charts.extend(rest);
    for v in charts {
        let sat = match weights {
            None => saturate_by_variable(i, v, limits)?,
            Some(_) => {
                let s = saturate_by_element(i, &i.ring().var(v), limits)?;
                buchberger(&s, MonomialOrder::GrevLex, limits)?
            }
        };
        if !sat.is_unit() {
            return Ok(EmptinessCertificate::NonEmpty {
                chart: v,
                saturation: sat,
            });
        }
    }
    unreachable!("an ideal that is not primary to the irrelevant ideal has a nonunit chart saturation")
}
