//! The degree-2 K3 surface `delta w^2 = f(x, y, z)` in `P(1,1,1,3)`: its
//! reductions, singular fibres, Picard-rank evidence and the final
//! obstruction certificate.

mod badprimes;
mod certificate;
mod count;
mod model;
mod singular;
mod tritangent;

pub use badprimes::{
    is_bad_prime, jacobian_ideal, verify_ledger, BadPrimeLedger, BadPrimeVerdict, CertificateSummary, LedgerCheck,
    LedgerReport,
};
pub use certificate::{
    assemble_certificate, Evidence, GoodReductionEvidence, InsolubilityEvidence, Invariant, LedgerEvidence,
    LocalPointEvidence, ObstructionCertificate, PlaceVerdict, Rule, SingularityEvidence, Verdict,
};
pub use count::{
    count_over_extension, count_points_direct, count_points_double_cover, cyclotomic_bound, distinct_roots_of_unity,
    functional_equation_sign, power_sums, roots_of_unity_with_multiplicity, weil_consistency, WeilCheck, WeilReport,
};
pub use model::{good_reduction_at_2, DoubleCoverModel, GoodReductionAt2, GoodReductionSummary, TwoAdicModel, WEIGHTS};
pub use singular::{classify_singularities, Orbit, PointKind, SingularityReport};
pub use tritangent::{tritangent_search, TritangentLine};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::{Fp, FpBig};
use crate::groebner::GroebnerError;
use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum K3Error {
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("f mod 2 is not a square")]
    NotSquareMod2,
    #[error("f - g1^2 is not divisible by 4 (no lift of g1 helps: changing g1 by 2e leaves g1^2 fixed mod 4)")]
    NotDivisibleBy4,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration budget exceeded: {needed} > {budget}")]
    Budget { needed: u64, budget: u64 },
}

/// Runs `small` over a word-sized prime field or `big` otherwise.
pub(crate) fn with_prime_field<T>(p: &BigInt, small: impl FnOnce(Fp) -> T, big: impl FnOnce(FpBig) -> T) -> T {
    match p.to_u64() {
        Some(q) => small(Fp::new(q)),
        None => big(FpBig::new(p.magnitude().clone())),
    }
}
