//! Reconstruction of a ternary form from its restrictions to the lines
//! `(x : y0 : z0)`, and extraction of a known component.

mod extract;
mod oracle;

pub use extract::{extract_smooth_sextic, ComponentVerdict, ExtractOptions};
pub use oracle::{
    discriminant_oracle, fourfold_fibration, specialized_discriminant, FiberFamily, OracleOptions, OracleRun,
};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::IntegerRing;
use crate::groebner::GroebnerError;
use crate::linalg::echelon_integer;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InterpError {
    #[error("underdetermined: rank {rank} with {columns} unknowns leaves a {nullity}-dimensional solution space")]
    Underdetermined { rank: usize, columns: usize, nullity: usize },
    #[error("inconsistent: rank {rank} with {columns} unknowns admits only the zero form")]
    Inconsistent { rank: usize, columns: usize },
    #[error("sample ({y0}, {z0}): {reason}")]
    BadSample { y0: BigInt, z0: BigInt, reason: String },
    #[error("candidate does not divide the form")]
    NotDivisible,
    #[error("cofactor has degree {0}, expected 6")]
    CofactorDegree(u32),
    #[error("resources exhausted at {field}: {what}")]
    Resources { field: String, what: String },
    #[error(transparent)]
    Groebner(GroebnerError),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl From<GroebnerError> for InterpError {
    fn from(e: GroebnerError) -> Self {
        InterpError::Groebner(e)
    }
}

/// `f(x, y0, z0)` as coefficients of `1, x, ..., x^d`, exact or up to an
/// unknown nonzero scalar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecializationSample {
    pub y0: BigInt,
    pub z0: BigInt,
    pub coeffs: Vec<BigRational>,
    pub scale_known: bool,
}

impl SpecializationSample {
    pub fn new(y0: BigInt, z0: BigInt, coeffs: Vec<BigRational>, scale_known: bool) -> Result<Self, InterpError> {
        if !y0.gcd(&z0).is_one() {
            return Err(InterpError::BadSample {
                y0,
                z0,
                reason: "coordinates are not coprime".into(),
            });
        }
        Ok(SpecializationSample { y0, z0, coeffs, scale_known })
    }

    /// `y0 z0 scale_known c0 c1 ... cd`, with `scale_known` as 0 or 1.
    pub fn to_row(&self) -> String {
        let mut parts = vec![self.y0.to_string(), self.z0.to_string(), (self.scale_known as u8).to_string()];
        parts.extend(self.coeffs.iter().map(|c| c.to_string()));
        parts.join(" ")
    }

    pub fn parse_row(line: &str) -> Result<Self, InterpError> {
        let bad = |r: &str| InterpError::Precondition(format!("sample row {line:?}: {r}"));
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 3 {
            return Err(bad("too few fields"));
        }
        let y0: BigInt = toks[0].parse().map_err(|_| bad("y0"))?;
        let z0: BigInt = toks[1].parse().map_err(|_| bad("z0"))?;
        let scale_known = match toks[2] {
            "1" | "true" => true,
            "0" | "false" => false,
            _ => return Err(bad("scale_known")),
        };
        let coeffs = toks[3..]
            .iter()
            .map(|t| t.parse::<BigRational>().map_err(|_| bad("coefficient")))
            .collect::<Result<_, _>>()?;
        Self::new(y0, z0, coeffs, scale_known)
    }
}

/// Rows of [`SpecializationSample::to_row`]; blank lines and `#` comments
/// are skipped.
pub fn parse_samples(text: &str) -> Result<Vec<SpecializationSample>, InterpError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(SpecializationSample::parse_row)
        .collect()
}

/// Restriction of a ternary form to `(x : y0 : z0)`.
pub fn specialize(f: &Polynomial<IntegerRing>, y0: &BigInt, z0: &BigInt, scale_known: bool) -> Result<SpecializationSample, InterpError> {
    if f.nvars() != 3 {
        return Err(InterpError::Precondition("expected a ternary form".into()));
    }
    let d = f.total_degree().unwrap_or(0) as usize;
    let mut coeffs = vec![BigInt::zero(); d + 1];
    for (m, c) in f.terms() {
        let e = m.exps();
        coeffs[e[0] as usize] += c * num_traits::pow(y0.clone(), e[1] as usize) * num_traits::pow(z0.clone(), e[2] as usize);
    }
    SpecializationSample::new(
        y0.clone(),
        z0.clone(),
        coeffs.into_iter().map(BigRational::from_integer).collect(),
        scale_known,
    )
}

#[derive(Debug, Clone)]
pub struct ReconstructionProblem {
    pub degree: u32,
    pub samples: Vec<SpecializationSample>,
}

impl ReconstructionProblem {
    /// `(i, j, k)` with `i + j + k = d`, one unknown each.
    pub fn unknowns(&self) -> Vec<[u16; 3]> {
        let d = self.degree as u16;
        let mut v = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
        for i in (0..=d).rev() {
            for j in (0..=d - i).rev() {
                v.push([i, j, d - i - j]);
            }
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    /// Primitive integral, leading grevlex coefficient positive.
    pub form: Polynomial<IntegerRing>,
    /// `form * scale` is the exact form when some sample has a known scale.
    pub scale: Option<BigRational>,
    pub rank: usize,
    pub columns: usize,
    pub equations: usize,
}

fn ternary_ring() -> PolyRing<IntegerRing> {
    PolyRing::new(IntegerRing, &["x", "y", "z"], MonomialOrder::GrevLex)
}

/// Solves for the form by exact elimination. Each sample contributes one
/// equation per power of `x`, against a shared scale column for exact
/// samples and a fresh scale column for each scale-unknown sample; the
/// kernel must be one-dimensional.
pub fn reconstruct(problem: &ReconstructionProblem) -> Result<Reconstruction, InterpError> {
    let d = problem.degree as usize;
    let mons = problem.unknowns();
    let n = mons.len();
    let known = problem.samples.iter().any(|s| s.scale_known);
    let mut cols = n + known as usize;
    let mut rows = Vec::new();
    for s in &problem.samples {
        if s.coeffs.len() > d + 1 && s.coeffs[d + 1..].iter().any(|c| !c.is_zero()) {
            return Err(InterpError::BadSample {
                y0: s.y0.clone(),
                z0: s.z0.clone(),
                reason: format!("degree exceeds {d}"),
            });
        }
        let scale_col = if s.scale_known {
            n
        } else {
            cols += 1;
            cols - 1
        };
        let ypow: Vec<BigInt> = (0..=d).map(|e| num_traits::pow(s.y0.clone(), e)).collect();
        let zpow: Vec<BigInt> = (0..=d).map(|e| num_traits::pow(s.z0.clone(), e)).collect();
        for i in 0..=d {
            let c = s.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            let den = c.denom().clone();
            let mut row: Vec<(usize, BigInt)> = mons
                .iter()
                .enumerate()
                .filter(|(_, m)| m[0] as usize == i)
                .map(|(col, m)| (col, &ypow[m[1] as usize] * &zpow[m[2] as usize] * &den))
                .collect();
            row.push((scale_col, -c.numer().clone()));
            rows.push(row);
        }
    }
    let dense: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![BigInt::zero(); cols];
            for (c, a) in r {
                v[*c] += a;
            }
            v
        })
        .collect();
    let equations = dense.len();
    let ech = echelon_integer(dense, cols);
    let (rank, nullity) = (ech.rank(), ech.nullity());
    if nullity > 1 {
        return Err(InterpError::Underdetermined { rank, columns: cols, nullity });
    }
    let kernel = ech.kernel();
    let Some(v) = kernel.first().filter(|v| v[..n].iter().any(|c| !c.is_zero())) else {
        return Err(InterpError::Inconsistent { rank, columns: cols });
    };
    // every scale column must be nonzero
    if v[n..].iter().any(|c| c.is_zero()) {
        return Err(InterpError::Inconsistent { rank, columns: cols });
    }
    let r = ternary_ring();
    let raw = r.from_terms(mons.iter().zip(&v[..n]).map(|(m, c)| (Monomial::from_exps(m), c.clone())));
    let g = raw.content();
    let mut form = raw.map_coeffs(&r, |c| c / &g);
    let mut sign = BigInt::one();
    if form.lc().is_some_and(|c| c.is_negative()) {
        form = form.neg();
        sign = -sign;
    }
    // exact = raw / t = form * g * sign / t
    let scale = known.then(|| BigRational::new(&g * &sign, v[n].clone()));
    Ok(Reconstruction {
        form,
        scale,
        rank,
        columns: cols,
        equations,
    })
}

#[cfg(test)]
mod tests;
