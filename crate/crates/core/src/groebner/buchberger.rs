//! Buchberger's algorithm with the sugar strategy and the Gebauer-Moller
//! pair criteria.

use super::{GroebnerBasis, GroebnerError, GroebnerLimits, Ideal};
use crate::arith::Field;
use crate::poly::{Monomial, MonomialOrder, Polynomial};

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct State<F: Field> {
    polys: Vec<Polynomial<F>>,
    sugar: Vec<u32>,
    /// Indices of basis elements whose leading monomial is not divisible by a
    /// later element's.
    active: Vec<usize>,
    pairs: Vec<Pair>,
    order: MonomialOrder,
}

/// Scales to the field's preferred representative: monic over finite fields,
/// primitive integral over `Q`.
pub(crate) fn tidy<F: Field>(p: &Polynomial<F>) -> Polynomial<F> {
    p.normalized()
}

/// Full reduction of `p` by `basis` (every term, not only the leading one).
/// Divisors are tried in slice order, so the result is deterministic.
pub(crate) fn reduce_full<F: Field>(p: &Polynomial<F>, basis: &[&Polynomial<F>]) -> Polynomial<F> {
    reduce_impl(p, basis, None)
}

pub(crate) fn reduce_impl<F: Field>(
    p: &Polynomial<F>,
    basis: &[&Polynomial<F>],
    mut cofactors: Option<&mut Vec<Polynomial<F>>>,
) -> Polynomial<F> {
    let ring = p.ring().clone();
    let k = ring.coeffs().clone();
    let mut rem = p.clone();
    let mut done: Vec<(Monomial, F::Elem)> = Vec::new();
    'outer: while let Some((m, c)) = rem.terms().first().cloned() {
        for (bi, g) in basis.iter().enumerate() {
            let gm = g.lm().unwrap();
            if gm.divides(&m) {
                let q = gm.quotient_of(&m);
                let coef = k.div(&c, g.lc().unwrap()).unwrap();
                rem = rem.add_scaled(&k.neg(&coef), &q, g);
                if let Some(cf) = cofactors.as_deref_mut() {
                    cf[bi] = cf[bi].add(&ring.term(coef, q));
                }
                continue 'outer;
            }
        }
        // leading term is irreducible: move it to the remainder
        rem.pop_leading();
        done.push((m, c));
    }
    ring.from_sorted_terms(done)
}

fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, lcm: &Monomial) -> Polynomial<F> {
    let k = f.coeff_ring();
    let mf = f.lm().unwrap().quotient_of(lcm);
    let mg = g.lm().unwrap().quotient_of(lcm);
    let a = f.mul_term(g.lc().unwrap(), &mf);
    a.add_scaled(&k.neg(f.lc().unwrap()), &mg, g)
}

impl<F: Field> State<F> {
    fn pair(&self, i: usize, j: usize) -> Pair {
        let (a, b) = (self.polys[i].lm().unwrap(), self.polys[j].lm().unwrap());
        let lcm = a.lcm(b);
        let d = lcm.degree();
        let si = self.sugar[i] + d - a.degree();
        let sj = self.sugar[j] + d - b.degree();
        Pair {
            i,
            j,
            lcm,
            sugar: si.max(sj),
        }
    }

    /// Gebauer-Moller update after adding `polys[h]`.
    fn update(&mut self, h: usize) {
        let hm = self.polys[h].lm().unwrap().clone();
        let cand: Vec<Pair> = self.active.iter().map(|&g| self.pair(g, h)).collect();
        // criterion M / F: drop (g, h) when some other (g2, h) has lcm dividing it
        let mut kept: Vec<Pair> = Vec::new();
        for (idx, p) in cand.iter().enumerate() {
            let gm = self.polys[p.i].lm().unwrap();
            if gm.coprime(&hm) {
                kept.push(p.clone());
                continue;
            }
            let dominated = cand.iter().enumerate().any(|(j, q)| {
                j != idx
                    && q.lcm.divides(&p.lcm)
                    && (q.lcm != p.lcm || j < idx)
            });
            let dominated_by_kept = kept.iter().any(|q| q.lcm.divides(&p.lcm));
            if !dominated && !dominated_by_kept {
                kept.push(p.clone());
            }
        }
        // product criterion
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|p| !self.polys[p.i].lm().unwrap().coprime(&hm))
            .collect();
        // criterion B on old pairs
        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !hm.divides(&p.lcm) {
                return true;
            }
            let li = polys[p.i].lm().unwrap().lcm(&hm);
            let lj = polys[p.j].lm().unwrap().lcm(&hm);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(new_pairs);
        self.active
            .retain(|&g| !hm.divides(polys[g].lm().unwrap()));
        self.active.push(h);
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let best = (0..self.pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&self.pairs[a], &self.pairs[b]);
                p.sugar
                    .cmp(&q.sugar)
                    .then_with(|| order.cmp(&p.lcm, &q.lcm))
                    .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
            })
            .unwrap();
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Groebner basis of `ideal` under `order`.
pub fn buchberger<F: Field>(
    ideal: &Ideal<F>,
    order: MonomialOrder,
    limits: &GroebnerLimits,
) -> Result<GroebnerBasis<F>, GroebnerError> {
    let ring = ideal.ring().with_order(order);
    let mut gens: Vec<Polynomial<F>> = ideal
        .gens()
        .iter()
        .map(|g| tidy(&g.in_ring(&ring)))
        .filter(|g| !g.is_zero())
        .collect();
    gens.sort_by(|a, b| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| order.cmp(a.lm().unwrap(), b.lm().unwrap()))
    });
    let mut st = State {
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        order,
    };
    // inter-reduce the input so that the basis starts small
    for g in gens {
        let basis: Vec<&Polynomial<F>> = st.active.iter().map(|&i| &st.polys[i]).collect();
        let h = tidy(&reduce_full(&g, &basis));
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(GroebnerBasis::unit(ideal.clone(), ring));
        }
        st.sugar.push(g.total_degree().unwrap());
        st.polys.push(h);
        let idx = st.polys.len() - 1;
        st.update(idx);
    }
    let mut reductions = 0usize;
    while let Some(p) = st.select() {
        if limits.max_degree.is_some_and(|d| p.lcm.degree() > d) {
            return Err(GroebnerError::ResourcesExhausted {
                what: format!("S-pair degree {} above cap", p.lcm.degree()),
                basis_size: st.active.len(),
            });
        }
        reductions += 1;
        if limits.max_reductions.is_some_and(|r| reductions > r) {
            return Err(GroebnerError::ResourcesExhausted {
                what: format!("more than {} S-pair reductions", reductions - 1),
                basis_size: st.active.len(),
            });
        }
        let s = s_polynomial(&st.polys[p.i], &st.polys[p.j], &p.lcm);
        let basis: Vec<&Polynomial<F>> = st.active.iter().map(|&i| &st.polys[i]).collect();
        let h = tidy(&reduce_full(&s, &basis));
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(GroebnerBasis::unit(ideal.clone(), ring));
        }
        st.sugar.push(p.sugar);
        st.polys.push(h);
        if limits.max_basis.is_some_and(|m| st.active.len() + 1 > m) {
            return Err(GroebnerError::ResourcesExhausted {
                what: format!("basis larger than {}", limits.max_basis.unwrap()),
                basis_size: st.active.len() + 1,
            });
        }
        let idx = st.polys.len() - 1;
        st.update(idx);
    }
    let minimal: Vec<Polynomial<F>> = st.active.iter().map(|&i| st.polys[i].clone()).collect();
    Ok(GroebnerBasis::from_minimal(ideal.clone(), ring, minimal))
}

/// Turns a minimal basis (no leading monomial divides another) into the reduced
/// basis, sorted by increasing leading monomial.
pub(crate) fn reduce_basis<F: Field>(mut g: Vec<Polynomial<F>>, order: MonomialOrder) -> Vec<Polynomial<F>> {
    // drop redundant leading monomials first
    g.sort_by(|a, b| order.cmp(a.lm().unwrap(), b.lm().unwrap()));
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for p in g {
        if p.is_zero() {
            continue;
        }
        let m = p.lm().unwrap();
        if minimal.iter().any(|q| q.lm().unwrap().divides(m)) {
            continue;
        }
        minimal.push(p);
    }
    let n = minimal.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let others: Vec<&Polynomial<F>> = (0..n).filter(|&j| j != i).map(|j| &minimal[j]).collect();
        let head = minimal[i].ring().from_sorted_terms(vec![minimal[i].terms()[0].clone()]);
        let tail = minimal[i].sub(&head);
        let r = head.add(&reduce_full(&tail, &others));
        out.push(r.monic());
    }
    out.sort_by(|a, b| order.cmp(a.lm().unwrap(), b.lm().unwrap()));
    out
}
