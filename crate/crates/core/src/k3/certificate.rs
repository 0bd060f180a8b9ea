//! Assembly of the obstruction certificate from serialized evidence.
//!
//! The verdict is a pure function of [`Evidence`]: every rule reads only the
//! records it is handed, so a round trip through JSON reproduces it exactly.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::primes_up_to;

/// No primitive zero of the cubic fourfold modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsolubilityEvidence {
    pub modulus: u64,
    pub nvars: usize,
    pub tuples_checked: u64,
    pub primitive_zeros: u64,
}

/// A local point of the K3 surface at one place.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalPointEvidence {
    /// `real` or a prime in decimal.
    pub place: String,
    pub point: [BigInt; 3],
    /// How `w` was produced: a residue modulo `p^t`, or a real square root.
    pub w: String,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEvidence {
    pub bad_primes: Vec<BigInt>,
    pub passed: bool,
    /// The published integer factors over `{2, 3}` and the listed primes.
    pub complete: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityEvidence {
    pub prime: BigInt,
    pub r: Option<u64>,
    pub all_odp: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodReductionEvidence {
    pub quasi_smooth: bool,
    pub reduction: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    /// The twist in `delta w^2 = f`.
    pub delta: String,
    pub insolubility: Option<InsolubilityEvidence>,
    pub local_points: Vec<LocalPointEvidence>,
    pub ledger: Option<LedgerEvidence>,
    pub singularities: Vec<SingularityEvidence>,
    pub good_reduction_at_2: Option<GoodReductionEvidence>,
    /// Good primes above this have smooth `F_p` points that lift.
    pub weil_threshold: u64,
    pub assumptions: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    /// An order-3 class has real invariant in `1/2 Z/Z`, hence zero.
    Archimedean,
    /// The fourfold has no `Q_3` point, so no fibre above `Y(Q_3)` has one and
    /// the invariant is nonzero everywhere on `Y(Q_3)`.
    InsolubleFourfold,
    /// Good reduction: the class is unramified and the invariant vanishes.
    GoodReduction,
    /// Bad reduction with fewer than 8 singular points, all ordinary double
    /// points: the invariant is constant and zero.
    MildBadReduction,
}

impl Rule {
    pub fn statement(&self) -> &'static str {
        match self {
            Rule::Archimedean => "order-3 class at the real place: invariant in 1/2 Z/Z meets 1/3 Z/Z only in 0",
            Rule::InsolubleFourfold => "fourfold has no Q_3-point: every fibre of the Severi-Brauer bundle is pointless",
            Rule::GoodReduction => "good reduction: the class is unramified over Z_p",
            Rule::MildBadReduction => "singular locus mod p is r < 8 ordinary double points: invariant constant, zero",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Invariant {
    Zero,
    /// `1/3` or `2/3`; the rules do not tell which.
    Nonzero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceVerdict {
    /// `real`, a prime, or `other` for good primes above the threshold.
    pub place: String,
    pub solubility: Option<String>,
    pub rule: Option<Rule>,
    pub invariant: Option<Invariant>,
    pub gaps: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Obstructed,
    NotCertified { gaps: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionCertificate {
    pub places: Vec<PlaceVerdict>,
    pub verdict: Verdict,
    pub assumptions: Vec<String>,
}

impl ObstructionCertificate {
    pub fn is_obstructed(&self) -> bool {
        self.verdict == Verdict::Obstructed
    }

    pub fn gaps(&self) -> Vec<String> {
        match &self.verdict {
            Verdict::Obstructed => vec![],
            Verdict::NotCertified { gaps } => gaps.clone(),
        }
    }

    /// Structured text: one section per place, then the verdict.
    pub fn to_text(&self) -> String {
        let mut s = String::from("# obstruction certificate\n");
        for a in &self.assumptions {
            let _ = writeln!(s, "assumption: {a}");
        }
        for p in &self.places {
            let _ = writeln!(s, "\n[place {}]", p.place);
            let _ = writeln!(s, "soluble: {}", p.solubility.as_deref().unwrap_or("not shown"));
            match p.rule {
                Some(r) => {
                    let _ = writeln!(s, "rule: {r:?}\nstatement: {}", r.statement());
                }
                None => s.push_str("rule: none\n"),
            }
            let inv = match p.invariant {
                Some(Invariant::Zero) => "0",
                Some(Invariant::Nonzero) => "1/3 or 2/3",
                None => "undetermined",
            };
            let _ = writeln!(s, "invariant: {inv}");
            for g in &p.gaps {
                let _ = writeln!(s, "gap: {g}");
            }
        }
        match &self.verdict {
            Verdict::Obstructed => s.push_str("\nverdict: obstructed\n"),
            Verdict::NotCertified { gaps } => {
                let _ = writeln!(s, "\nverdict: not certified ({} gaps)", gaps.len());
            }
        }
        s
    }
}

/// Decides, place by place, local solubility and the invariant rule, then
/// concludes an obstruction when every place is soluble, exactly one place
/// has a nonzero invariant and all others have invariant zero.
pub fn assemble_certificate(ev: &Evidence) -> ObstructionCertificate {
    let three = BigInt::from(3);
    let two = BigInt::from(2);
    let bad: Vec<BigInt> = ev.ledger.as_ref().map(|l| l.bad_primes.clone()).unwrap_or_default();
    let mut primes: Vec<BigInt> = primes_up_to(ev.weil_threshold).into_iter().map(BigInt::from).collect();
    for p in &bad {
        if !primes.contains(p) {
            primes.push(p.clone());
        }
    }
    primes.sort();
    let ledger_ok = ev.ledger.as_ref().is_some_and(|l| l.passed && l.complete);
    let ledger_gap = || match &ev.ledger {
        None => "bad-prime ledger missing".to_string(),
        Some(l) if !l.passed => format!("bad-prime ledger failed: {}", l.failures.join(", ")),
        Some(_) => "bad-prime ledger does not account for every prime factor".to_string(),
    };
    let witness = |place: &str| {
        ev.local_points
            .iter()
            .find(|w| w.place == place && w.verified)
            .map(|w| format!("({} : {} : {}), w = {}", w.point[0], w.point[1], w.point[2], w.w))
    };

    let mut places = Vec::new();
    let mut real = PlaceVerdict {
        place: "real".into(),
        solubility: witness("real"),
        rule: Some(Rule::Archimedean),
        invariant: Some(Invariant::Zero),
        gaps: vec![],
    };
    if real.solubility.is_none() {
        real.gaps.push("no real point".into());
    }
    places.push(real);

    for p in &primes {
        let name = p.to_string();
        let mut v = PlaceVerdict {
            place: name.clone(),
            solubility: witness(&name),
            rule: None,
            invariant: None,
            gaps: vec![],
        };
        if v.solubility.is_none() {
            v.gaps.push(format!("no verified Q_{p} point"));
        }
        if p == &three {
            match &ev.insolubility {
                Some(e) if e.modulus == 9 && e.primitive_zeros == 0 && e.tuples_checked > 0 => {
                    v.rule = Some(Rule::InsolubleFourfold);
                    v.invariant = Some(Invariant::Nonzero);
                }
                Some(e) => v.gaps.push(format!(
                    "fourfold insolubility not shown ({} primitive zeros mod {})",
                    e.primitive_zeros, e.modulus
                )),
                None => v.gaps.push("fourfold insolubility evidence missing".into()),
            }
        } else if p == &two {
            match &ev.good_reduction_at_2 {
                Some(g) if g.quasi_smooth => {
                    v.rule = Some(Rule::GoodReduction);
                    v.invariant = Some(Invariant::Zero);
                }
                Some(_) => v.gaps.push("model at 2 is not quasi-smooth".into()),
                None => v.gaps.push("good-reduction certificate at 2 missing".into()),
            }
        } else if bad.contains(p) {
            match ev.singularities.iter().find(|s| &s.prime == p) {
                Some(s) if s.all_odp && s.r.is_some_and(|r| r < 8) => {
                    v.rule = Some(Rule::MildBadReduction);
                    v.invariant = Some(Invariant::Zero);
                }
                Some(s) => v.gaps.push(match s.r {
                    Some(r) if r >= 8 => format!("{r} singular points at {p}, need fewer than 8"),
                    Some(_) => format!("a singular point at {p} is not an ordinary double point"),
                    None => format!("non-isolated singularities at {p}"),
                }),
                None => v.gaps.push(format!("singularity classification at {p} missing")),
            }
        } else if ledger_ok {
            v.rule = Some(Rule::GoodReduction);
            v.invariant = Some(Invariant::Zero);
        } else {
            v.gaps.push(ledger_gap());
        }
        places.push(v);
    }

    let mut other = PlaceVerdict {
        place: "other".into(),
        solubility: None,
        rule: None,
        invariant: None,
        gaps: vec![],
    };
    if ledger_ok {
        other.solubility = Some(format!(
            "good reduction and p > {}: smooth F_p point lifts by Hensel",
            ev.weil_threshold
        ));
        other.rule = Some(Rule::GoodReduction);
        other.invariant = Some(Invariant::Zero);
    } else {
        other.gaps.push(ledger_gap());
    }
    places.push(other);

    let mut gaps: Vec<String> = places
        .iter()
        .flat_map(|p| p.gaps.iter().map(move |g| format!("{}: {g}", p.place)))
        .collect();
    let nonzero = places.iter().filter(|p| p.invariant == Some(Invariant::Nonzero)).count();
    if gaps.is_empty() && nonzero != 1 {
        gaps.push(format!("{nonzero} places with nonzero invariant, need exactly one"));
    }
    let verdict = if gaps.is_empty() {
        Verdict::Obstructed
    } else {
        Verdict::NotCertified { gaps }
    };
    let mut assumptions = vec![format!("twist delta = {} as published", ev.delta)];
    assumptions.extend(ev.assumptions.iter().cloned());
    ObstructionCertificate {
        places,
        verdict,
        assumptions,
    }
}
