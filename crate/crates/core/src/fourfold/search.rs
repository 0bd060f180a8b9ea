use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{bilinear_determinant, primitive_part};
use crate::arith::IntegerRing;
use crate::localsolve::{scan_projective, Verdict};
use crate::poly::{MonomialOrder, PolyRing, Polynomial};

#[derive(Debug, Clone, Serialize)]
pub struct SearchOptions {
    pub seed: u64,
    pub trials: usize,
    /// Coefficients are drawn from `[-height, height]`.
    pub height: i64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            seed: 0,
            trials: 200,
            height: 5,
        }
    }
}

/// Quadrics through the planes `x0 = x1 = x2 = 0` and `x3 = x4 = x5 = 0`
/// whose two plane cubics both lack points mod 3.
#[derive(Debug, Clone, Serialize)]
pub struct Candidate {
    pub trial: usize,
    pub quadrics: [String; 3],
    /// Cubic in `x3, x4, x5`.
    pub c1: String,
    /// Cubic in `x0, x1, x2`.
    pub c2: String,
}

fn ring6() -> PolyRing<IntegerRing> {
    PolyRing::new(IntegerRing, &["x0", "x1", "x2", "x3", "x4", "x5"], MonomialOrder::GrevLex)
}

fn random_bilinear(rng: &mut ChaCha8Rng, r: &PolyRing<IntegerRing>, h: i64) -> Polynomial<IntegerRing> {
    let mut q = r.zero();
    for i in 0..3 {
        for j in 3..6 {
            let a: i64 = rng.gen_range(-h..=h);
            q = q.add(&r.var(i).mul(&r.var(j)).scale(&a.into()));
        }
    }
    q
}

/// A plane cubic on the variables `vars` with no zero mod 3.
pub fn plane_cubic_insoluble_mod3(c: &Polynomial<IntegerRing>, vars: [usize; 3]) -> bool {
    if c.is_zero() {
        return false;
    }
    let r3 = PolyRing::new(IntegerRing, &["a", "b", "c"], MonomialOrder::GrevLex);
    let mut pos = [None; 3];
    for (j, v) in vars.iter().enumerate() {
        pos[j] = Some(*v);
    }
    let c3 = c.relabel(&r3, &pos);
    matches!(scan_projective(&[c3], 3), Ok(r) if r.verdict == Verdict::Insoluble)
}

/// Seeded sampling of small-height quadric triples through the two planes.
/// Every bilinear form vanishes on both planes; the residual surface
/// projects onto the cubics `det (d Q_k / d y_j)` in each block, which are
/// filtered for having no points mod 3. Returns the number of triples tried
/// and the survivors, in trial order.
pub fn search_candidates(opts: &SearchOptions) -> (usize, Vec<Candidate>) {
    let r = ring6();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = Vec::new();
    for trial in 0..opts.trials {
        let qs: [Polynomial<IntegerRing>; 3] = std::array::from_fn(|_| random_bilinear(&mut rng, &r, opts.height));
        let c1 = primitive_part(&bilinear_determinant(&qs, &[0, 1, 2]));
        let c2 = primitive_part(&bilinear_determinant(&qs, &[3, 4, 5]));
        if plane_cubic_insoluble_mod3(&c1, [3, 4, 5]) && plane_cubic_insoluble_mod3(&c2, [0, 1, 2]) {
            out.push(Candidate {
                trial,
                quadrics: qs.map(|q| q.to_string()),
                c1: c1.to_string(),
                c2: c2.to_string(),
            });
        }
    }
    (opts.trials, out)
}
