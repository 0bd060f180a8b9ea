//! Lines meeting a plane sextic in three double points.

use rayon::prelude::*;

use super::K3Error;
use crate::arith::FiniteField;
use crate::poly::{poly_sqrt, restrict_to_line, BinaryForm, Polynomial};

#[derive(Debug, Clone, PartialEq)]
pub struct TritangentLine<F: FiniteField> {
    /// `(a, b, c)` for the line `a x + b y + c z = 0`, last nonzero entry 1.
    pub line: [F::Elem; 3],
    /// `f` restricted to the line is `unit * cubic^2`.
    pub unit: F::Elem,
    pub cubic: BinaryForm<F>,
}

impl<F: FiniteField> TritangentLine<F> {
    pub fn describe(&self, k: &F) -> String {
        let names = ["x", "y", "z"];
        let parts: Vec<String> = self
            .line
            .iter()
            .zip(names)
            .filter(|(c, _)| !k.is_zero(c))
            .map(|(c, v)| if k.is_one(c) { v.to_string() } else { format!("{}*{v}", k.format_elem(c)) })
            .collect();
        format!("{} = 0", parts.join(" + "))
    }
}

/// Two points spanning `a x + b y + c z = 0`.
fn spanning_points<F: FiniteField>(k: &F, l: &[F::Elem; 3]) -> ([F::Elem; 3], [F::Elem; 3]) {
    let [a, b, c] = l;
    if !k.is_zero(c) {
        let ci = k.inv(c).unwrap();
        (
            [k.one(), k.zero(), k.neg(&k.mul(a, &ci))],
            [k.zero(), k.one(), k.neg(&k.mul(b, &ci))],
        )
    } else if !k.is_zero(b) {
        let bi = k.inv(b).unwrap();
        ([k.one(), k.neg(&k.mul(a, &bi)), k.zero()], [k.zero(), k.zero(), k.one()])
    } else {
        ([k.zero(), k.one(), k.zero()], [k.zero(), k.zero(), k.one()])
    }
}

/// Every line of `P^2(F_q)` on which `f` restricts to a nonzero constant
/// times the square of a squarefree binary cubic. Lines inside `f = 0` are
/// skipped. Output is ordered by line index.
pub fn tritangent_search<F: FiniteField>(f: &Polynomial<F>) -> Result<Vec<TritangentLine<F>>, K3Error> {
    let k = f.coeff_ring().clone();
    if f.is_zero() {
        return Err(K3Error::Degenerate("zero sextic".into()));
    }
    if f.nvars() != 3 || !f.is_homogeneous() || f.total_degree() != Some(6) {
        return Err(K3Error::Degenerate("expected a ternary sextic form".into()));
    }
    let q = k.order();
    let lines = |i: u64| -> Vec<[F::Elem; 3]> {
        let a = k.element(i);
        let mut v: Vec<[F::Elem; 3]> = (0..q).map(|j| [a.clone(), k.element(j), k.one()]).collect();
        v.push([a, k.one(), k.zero()]);
        if i == 0 {
            v.push([k.one(), k.zero(), k.zero()]);
        }
        v
    };
    let found: Vec<Vec<TritangentLine<F>>> = (0..q)
        .into_par_iter()
        .map(|i| {
            lines(i)
                .into_iter()
                .filter_map(|l| {
                    let (p, r) = spanning_points(&k, &l);
                    let h = restrict_to_line(f, &p, &r).ok()?;
                    if h.is_zero() {
                        return None;
                    }
                    let (unit, s) = poly_sqrt(&h.poly)?;
                    let cubic = BinaryForm::new(s, 3).ok()?;
                    cubic.is_squarefree().then_some(TritangentLine { line: l, unit, cubic })
                })
                .collect()
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}
