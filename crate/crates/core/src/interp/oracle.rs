use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::{InterpError, SpecializationSample};
use crate::arith::{crt_combine, rational_reconstruct, Field, Fp, IntegerRing, RationalField, Ring};
use crate::groebner::{buchberger, elimination_ideal, saturate, GroebnerError, GroebnerLimits, Ideal};
use crate::poly::{MonomialOrder, PolyRing, Polynomial};

/// A family of projective schemes over the plane: the ring carries three
/// base variables followed by the fibre variables, and the fibre over a base
/// point is cut out by `equations` in codimension `codim`, with the common
/// `base_locus` (in fibre variables) removed.
#[derive(Debug, Clone)]
pub struct FiberFamily {
    pub ring: PolyRing<IntegerRing>,
    pub equations: Vec<Polynomial<IntegerRing>>,
    pub codim: usize,
    pub base_locus: Vec<Polynomial<IntegerRing>>,
}

const NBASE: usize = 3;

impl FiberFamily {
    pub fn new(
        ring: PolyRing<IntegerRing>,
        equations: Vec<Polynomial<IntegerRing>>,
        codim: usize,
        base_locus: Vec<Polynomial<IntegerRing>>,
    ) -> Result<Self, InterpError> {
        if ring.nvars() <= NBASE || codim == 0 || codim > equations.len() || codim > ring.nvars() - NBASE {
            return Err(InterpError::Precondition("bad fibre family shape".into()));
        }
        Ok(FiberFamily {
            ring,
            equations,
            codim,
            base_locus,
        })
    }

    fn nfib(&self) -> usize {
        self.ring.nvars() - NBASE
    }
}

/// The projection of the cubic fourfold from the surface: over `(u0:u1:u2)`
/// the fibre is `C = 0` with `(Q1 : Q2 : Q3) = (u0 : u1 : u2)`, away from the
/// surface ideal `t_gens`.
pub fn fourfold_fibration(
    q: &[Polynomial<IntegerRing>; 3],
    c: &Polynomial<IntegerRing>,
    t_gens: &[Polynomial<IntegerRing>],
) -> Result<FiberFamily, InterpError> {
    let src = c.ring();
    let mut names = vec!["u0".to_string(), "u1".into(), "u2".into()];
    names.extend(src.vars().iter().cloned());
    let ring = PolyRing::new(IntegerRing, &names, MonomialOrder::GrevLex);
    let pos: Vec<Option<usize>> = (0..names.len()).map(|i| i.checked_sub(NBASE)).collect();
    let up = |p: &Polynomial<IntegerRing>| p.relabel(&ring, &pos);
    let [q1, q2, q3] = q.clone().map(|p| up(&p));
    let u = |i: usize| ring.var(i);
    let eqs = vec![
        up(c),
        u(1).mul(&q1).sub(&u(0).mul(&q2)),
        u(2).mul(&q1).sub(&u(0).mul(&q3)),
        u(2).mul(&q2).sub(&u(1).mul(&q3)),
    ];
    FiberFamily::new(ring.clone(), eqs, 3, t_gens.iter().map(up).collect())
}

fn det<F: Field>(m: &[Vec<Polynomial<F>>], ring: &PolyRing<F>) -> Polynomial<F> {
    match m.len() {
        0 => ring.one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = ring.zero();
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial<F>>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect())
                    .collect();
                let t = m[0][c].mul(&det(&minor, ring));
                acc = if c % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            acc
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn guard(field: String) -> impl Fn(GroebnerError) -> InterpError {
    move |e| match e {
        GroebnerError::ResourcesExhausted { what, .. } => InterpError::Resources {
            field: field.clone(),
            what,
        },
        e => InterpError::Groebner(e),
    }
}

/// Monic generator of the set of `x` with a singular fibre over
/// `(x : y0 : z0)`: Jacobian minors of the specialized fibre equations,
/// saturated by the base locus and the fibre irrelevant ideal, then the
/// fibre variables eliminated. Only the reduced discriminant is seen.
pub fn specialized_discriminant<F: Field>(
    family: &FiberFamily,
    y0: &BigInt,
    z0: &BigInt,
    k: F,
    limits: &GroebnerLimits,
) -> Result<Vec<F::Elem>, InterpError> {
    let nf = family.nfib();
    let mut names = vec![family.ring.vars()[0].clone()];
    names.extend(family.ring.vars()[NBASE..].iter().cloned());
    let t = PolyRing::new(k.clone(), &names, MonomialOrder::GrevLex);
    let mut images = vec![t.var(0), t.constant(k.from_integer(y0)), t.constant(k.from_integer(z0))];
    images.extend((0..nf).map(|i| t.var(1 + i)));
    let spec = |p: &Polynomial<IntegerRing>| {
        p.compose_with(&images, |c| k.from_integer(c))
            .map_err(|e| InterpError::Precondition(e.to_string()))
    };
    let eqs: Vec<Polynomial<F>> = family.equations.iter().map(spec).collect::<Result<_, _>>()?;
    let jac: Vec<Vec<Polynomial<F>>> = eqs.iter().map(|e| (0..nf).map(|v| e.partial_derivative(1 + v)).collect()).collect();
    let mut gens = eqs.clone();
    for rows in subsets(eqs.len(), family.codim) {
        for cols in subsets(nf, family.codim) {
            let m: Vec<Vec<Polynomial<F>>> =
                rows.iter().map(|&r| cols.iter().map(|&c| jac[r][c].clone()).collect()).collect();
            let d = det(&m, &t);
            if !d.is_zero() {
                gens.push(d);
            }
        }
    }
    let g = guard(k.domain_tag());
    let mut ideal = Ideal::new(t.clone(), gens).map_err(&g)?;
    if !family.base_locus.is_empty() {
        let b: Vec<Polynomial<F>> = family.base_locus.iter().map(spec).collect::<Result<_, _>>()?;
        ideal = saturate(&ideal, &Ideal::new(t.clone(), b).map_err(&g)?, limits).map_err(&g)?;
    }
    let irrelevant = Ideal::new(t.clone(), (0..nf).map(|i| t.var(1 + i)).collect()).map_err(&g)?;
    ideal = saturate(&ideal, &irrelevant, limits).map_err(&g)?;
    let elim = elimination_ideal(&ideal, &[0], limits).map_err(&g)?;
    let gb = buchberger(&elim, MonomialOrder::GrevLex, limits).map_err(&g)?;
    let gen = match gb.basis() {
        [] => return Err(InterpError::Precondition("every fibre over the line is singular".into())),
        [one] if one.is_constant() => return Ok(vec![k.one()]),
        [p] => p.monic(),
        _ => return Err(InterpError::Precondition("elimination ideal is not principal".into())),
    };
    let u = gen
        .to_univariate(0)
        .ok_or_else(|| InterpError::Precondition("eliminant involves fibre variables".into()))?;
    Ok(u.coeffs().to_vec())
}

#[derive(Debug, Clone)]
#[derive(Default)]
pub struct OracleOptions {
    /// Empty for a run over `Q`; otherwise the primes combined by CRT.
    pub primes: Vec<u64>,
    /// Extra primes at which the reconstruction is re-derived and compared.
    pub check_primes: Vec<u64>,
    pub limits: GroebnerLimits,
}


#[derive(Debug, Clone, Serialize)]
pub struct OracleRun {
    pub sample: SpecializationSample,
    /// `Q`, or the primes used.
    pub route: String,
    /// Check primes whose own run agrees with the reconstruction.
    pub agreeing_checks: Vec<u64>,
    pub disagreeing_checks: Vec<u64>,
}

/// The discriminant of `family` restricted to `(x : y0 : z0)`, up to scalar.
pub fn discriminant_oracle(
    family: &FiberFamily,
    y0: &BigInt,
    z0: &BigInt,
    opts: &OracleOptions,
) -> Result<OracleRun, InterpError> {
    let (coeffs, route) = if opts.primes.is_empty() {
        let c = specialized_discriminant(family, y0, z0, RationalField, &opts.limits)?;
        (c, "Q".to_string())
    } else {
        let runs: Vec<Vec<u64>> = opts
            .primes
            .par_iter()
            .map(|&p| specialized_discriminant(family, y0, z0, Fp::new(p), &opts.limits))
            .collect::<Result<_, _>>()?;
        let d = runs[0].len();
        if runs.iter().any(|r| r.len() != d) {
            return Err(InterpError::Precondition("degree differs between primes".into()));
        }
        let mut out = Vec::with_capacity(d);
        for i in 0..d {
            let res: Vec<(BigInt, BigInt)> =
                runs.iter().zip(&opts.primes).map(|(r, &p)| (BigInt::from(r[i]), BigInt::from(p))).collect();
            let c = crt_combine(&res).map_err(|e| InterpError::Precondition(e.to_string()))?;
            let q = rational_reconstruct(&c.value, &c.modulus)
                .ok_or_else(|| InterpError::Precondition("rational reconstruction failed; use more primes".into()))?;
            out.push(q);
        }
        let names: Vec<String> = opts.primes.iter().map(|p| p.to_string()).collect();
        (out, format!("CRT over {}", names.join(", ")))
    };
    let mut agree = Vec::new();
    let mut disagree = Vec::new();
    for &p in &opts.check_primes {
        let k = Fp::new(p);
        let run = specialized_discriminant(family, y0, z0, k, &opts.limits)?;
        let pb = BigInt::from(p);
        let reduced: Option<Vec<u64>> = coeffs
            .iter()
            .map(|c| {
                let den = c.denom() % &pb;
                (!den.is_zero()).then(|| k.mul(&k.from_integer(c.numer()), &k.inv(&k.from_integer(&den)).unwrap()))
            })
            .collect();
        if reduced.as_deref() == Some(&run[..]) {
            agree.push(p);
        } else {
            disagree.push(p);
        }
    }
    let sample = SpecializationSample::new(y0.clone(), z0.clone(), coeffs, false)?;
    Ok(OracleRun {
        sample,
        route,
        agreeing_checks: agree,
        disagreeing_checks: disagree,
    })
}
