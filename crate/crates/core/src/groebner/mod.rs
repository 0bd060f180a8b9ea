//! Groebner bases over fields and the ideal operations built on them.

mod buchberger;
mod ops;

pub use buchberger::buchberger;
pub use ops::{
    elimination_ideal, ideal_intersect, ideals_equal, is_projectively_empty, is_weighted_projectively_empty, quotient_dimension,
    saturate, saturate_by_element, saturate_by_variable, EmptinessCertificate, QuotientDimension,
};

use serde::Serialize;

use crate::arith::Field;
use crate::poly::{MonomialOrder, PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("resources exhausted: {what} (basis had {basis_size} elements)")]
    ResourcesExhausted { what: String, basis_size: usize },
    #[error("generator not in the ideal's ring")]
    RingMismatch,
    #[error("input ideal is not homogeneous")]
    NonHomogeneous,
}

/// Caps on a single basis computation. `None` means unbounded.
#[derive(Debug, Clone, Default, Serialize)]
pub struct GroebnerLimits {
    pub max_basis: Option<usize>,
    pub max_degree: Option<u32>,
    pub max_reductions: Option<usize>,
}

/// Finitely generated ideal of a polynomial ring over a field. The ring's
/// monomial order is irrelevant to the ideal itself.
#[derive(Debug, Clone)]
pub struct Ideal<F: Field> {
    ring: PolyRing<F>,
    gens: Vec<Polynomial<F>>,
}

fn same_ring_up_to_order<F: Field>(a: &PolyRing<F>, b: &PolyRing<F>) -> bool {
    a.coeffs() == b.coeffs() && a.vars() == b.vars()
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: PolyRing<F>, gens: Vec<Polynomial<F>>) -> Result<Self, GroebnerError> {
        if gens.iter().any(|g| !same_ring_up_to_order(g.ring(), &ring)) {
            return Err(GroebnerError::RingMismatch);
        }
        let gens = gens.into_iter().map(|g| g.in_ring(&ring)).collect();
        Ok(Ideal { ring, gens })
    }

    pub fn unit(ring: PolyRing<F>) -> Self {
        let one = ring.one();
        Ideal { ring, gens: vec![one] }
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// Product ideal, generated by pairwise products.
    pub fn product(&self, o: &Ideal<F>) -> Self {
        let gens = self
            .gens
            .iter()
            .flat_map(|a| o.gens.iter().map(move |b| a.mul(&b.in_ring(&self.ring))))
            .filter(|g| !g.is_zero())
            .collect();
        Ideal {
            ring: self.ring.clone(),
            gens,
        }
    }

    pub fn sum(&self, o: &Ideal<F>) -> Self {
        let mut gens = self.gens.clone();
        gens.extend(o.gens.iter().map(|g| g.in_ring(&self.ring)));
        Ideal {
            ring: self.ring.clone(),
            gens,
        }
    }

    pub fn groebner(&self, order: MonomialOrder, limits: &GroebnerLimits) -> Result<GroebnerBasis<F>, GroebnerError> {
        buchberger(self, order, limits)
    }
}

/// Reduced Groebner basis, sorted by increasing leading monomial.
#[derive(Debug, Clone)]
pub struct GroebnerBasis<F: Field> {
    ring: PolyRing<F>,
    basis: Vec<Polynomial<F>>,
    origin: Ideal<F>,
}

impl<F: Field> GroebnerBasis<F> {
    pub(crate) fn unit(origin: Ideal<F>, ring: PolyRing<F>) -> Self {
        let one = ring.one();
        GroebnerBasis {
            ring,
            basis: vec![one],
            origin,
        }
    }

    pub(crate) fn from_minimal(origin: Ideal<F>, ring: PolyRing<F>, minimal: Vec<Polynomial<F>>) -> Self {
        let basis = buchberger::reduce_basis(minimal, ring.order());
        GroebnerBasis { ring, basis, origin }
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn basis(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    pub fn origin(&self) -> &Ideal<F> {
        &self.origin
    }

    /// The ideal generated by the basis, in the origin's ring.
    pub fn to_ideal(&self) -> Ideal<F> {
        let ring = self.origin.ring().clone();
        Ideal {
            gens: self.basis.iter().map(|g| g.in_ring(&ring)).collect(),
            ring,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant() && !self.basis[0].is_zero()
    }

    /// Remainder of `p` on division by the basis; zero exactly on members.
    /// The result is in the basis ring.
    pub fn normal_form(&self, p: &Polynomial<F>) -> Polynomial<F> {
        let refs: Vec<&Polynomial<F>> = self.basis.iter().collect();
        buchberger::reduce_full(&p.in_ring(&self.ring), &refs)
    }

    /// Remainder `r` together with cofactors `h_i` such that
    /// `p = sum h_i g_i + r` over the basis elements `g_i`.
    pub fn normal_form_with_cofactors(&self, p: &Polynomial<F>) -> (Polynomial<F>, Vec<Polynomial<F>>) {
        let refs: Vec<&Polynomial<F>> = self.basis.iter().collect();
        let mut cf = vec![self.ring.zero(); self.basis.len()];
        let r = buchberger::reduce_impl(&p.in_ring(&self.ring), &refs, Some(&mut cf));
        (r, cf)
    }

    pub fn contains(&self, p: &Polynomial<F>) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Structured text report: strategy tag, order, then one element per line.
    pub fn report(&self) -> String {
        let mut s = format!(
            "# groebner basis\nstrategy: buchberger-sugar-gm\norder: {}\nvars: {}\nsize: {}\n",
            self.order().tag(),
            self.ring.vars().join(" "),
            self.basis.len()
        );
        for g in &self.basis {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests;
