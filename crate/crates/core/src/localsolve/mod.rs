//! Local points: exhaustive scans modulo `m`, Hensel lifting, and `Q_p`
//! verdicts for the double cover.

mod cover;
mod hensel;
mod scan;

pub use cover::{
    double_cover_qp_verdict, good_prime_auto_solubility, real_witness, verify_table1, Table1Check,
};
pub use hensel::{find_smooth_point, hensel_lift_point, HenselLift};
pub use scan::{scan_projective, scan_projective_with, ScanOptions};

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::k3::K3Error;
use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalError {
    #[error("enumeration budget exceeded: {needed} > {budget}")]
    Budget { needed: u64, budget: u64 },
    #[error("point does not lie on the variety mod {0}")]
    NotOnVariety(BigInt),
    #[error("Jacobian does not have full rank mod {0} at the point")]
    NotSmooth(BigInt),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no smooth point found over F_{0}, contradicting good reduction")]
    Contradiction(BigInt),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    K3(#[from] K3Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Place {
    Real,
    Prime(BigInt),
    /// Residue ring `Z/m` for scans that are not tied to one prime.
    Residue(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::Prime(p) => write!(f, "{p}"),
            Place::Residue(m) => write!(f, "Z/{m}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Soluble,
    Insoluble,
    Undetermined,
}

/// A point modulo `modulus = p^precision` (or `m` for scans).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub point: Vec<BigInt>,
    pub modulus: BigInt,
    pub precision: Option<u32>,
}

/// Parameters of a complete enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exhaustion {
    pub modulus: u64,
    pub nvars: usize,
    pub tuples_checked: u64,
    pub primitive_checked: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolubilityReport {
    pub place: Place,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub exhaustion: Option<Exhaustion>,
    pub note: String,
}

impl SolubilityReport {
    /// Soluble reports carry a witness and insoluble ones a complete
    /// exhaustion record.
    pub fn is_well_formed(&self) -> bool {
        match self.verdict {
            Verdict::Soluble => self.witness.is_some(),
            Verdict::Insoluble => self.exhaustion.is_some(),
            Verdict::Undetermined => true,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("# solubility report\nplace: {}\nverdict: {:?}\n", self.place, self.verdict);
        if let Some(w) = &self.witness {
            let pt: Vec<String> = w.point.iter().map(|c| c.to_string()).collect();
            s.push_str(&format!("witness: ({})\nmodulus: {}\n", pt.join(", "), w.modulus));
            if let Some(t) = w.precision {
                s.push_str(&format!("precision: {t}\n"));
            }
        }
        if let Some(e) = &self.exhaustion {
            s.push_str(&format!(
                "exhaustion: modulus {} vars {} tuples {} primitive {}\n",
                e.modulus, e.nvars, e.tuples_checked, e.primitive_checked
            ));
        }
        if !self.note.is_empty() {
            s.push_str(&format!("note: {}\n", self.note));
        }
        s
    }
}
