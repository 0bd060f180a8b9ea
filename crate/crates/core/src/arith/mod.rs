//! Exact arithmetic: integers, rationals, prime and extension fields, and the
//! number theory on top of them.

pub mod ext;
pub mod factor;
pub mod modular;
pub mod nt;
pub mod padic;
pub mod primality;
pub mod ring;

pub use ext::ExtField;
pub use factor::{extract_small_factors, FactorLedger, PrimalityStatus, PrimePower};
pub use modular::{Fp, FpBig, Zmod};
pub use nt::{crt_combine, gcd, jacobi, rational_reconstruct, valuation, CrtResidue};
pub use padic::{padic_sqrt, padic_square_class, sqrt_mod_prime, SquareClassResult, UnitClassWitness};
pub use primality::{is_prime_u64, is_probable_prime, next_prime, primes_up_to};
pub use ring::{Field, FiniteField, IntegerRing, RationalField, Ring};

pub type Integer = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("invalid modulus {0}")]
    InvalidModulus(String),
    #[error("congruences are inconsistent on a common factor of the moduli")]
    InconsistentCongruences,
    #[error("degenerate input: {0}")]
    ZeroInput(&'static str),
    #[error("defining polynomial is not irreducible")]
    Reducible,
}
