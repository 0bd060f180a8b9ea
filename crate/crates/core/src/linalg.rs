//! Fraction-free linear algebra.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::Ring;

/// Determinant over an integral domain by Bareiss elimination.
pub fn det_bareiss<R: Ring>(r: &R, mut m: Vec<Vec<R::Elem>>) -> R::Elem {
    let n = m.len();
    if n == 0 {
        return r.one();
    }
    let mut sign_flip = false;
    let mut prev = r.one();
    for k in 0..n - 1 {
        if r.is_zero(&m[k][k]) {
            match (k + 1..n).find(|&i| !r.is_zero(&m[i][k])) {
                Some(i) => {
                    m.swap(i, k);
                    sign_flip = !sign_flip;
                }
                None => return r.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = r.sub(&r.mul(&m[i][j], &m[k][k]), &r.mul(&m[i][k], &m[k][j]));
                m[i][j] = r.exact_div(&num, &prev).expect("Bareiss division is exact");
            }
            m[i][k] = r.zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        r.neg(&d)
    } else {
        d
    }
}

/// Result of fraction-free row reduction of an integer matrix.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// A basis of the right kernel as primitive integer vectors, one per free
    /// column, in increasing free-column order.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x: Vec<BigRational> = vec![BigRational::zero(); self.cols];
                x[fc] = BigRational::one();
                for (ri, &pc) in self.pivots.iter().enumerate().rev() {
                    let row = &self.rows[ri];
                    let mut s = BigRational::zero();
                    for c in pc + 1..self.cols {
                        if !row[c].is_zero() && !x[c].is_zero() {
                            s += BigRational::from_integer(row[c].clone()) * &x[c];
                        }
                    }
                    x[pc] = -s / BigRational::from_integer(row[pc].clone());
                }
                primitive_integer_vector(&x)
            })
            .collect()
    }
}

/// Clears denominators and content; the first nonzero entry is made positive.
pub fn primitive_integer_vector(x: &[BigRational]) -> Vec<BigInt> {
    let den = x.iter().fold(BigInt::one(), |d, c| d.lcm(c.denom()));
    let mut v: Vec<BigInt> = x
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    if v.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

fn height(a: &BigInt) -> u64 {
    a.bits()
}

/// Bareiss row echelon form. Among candidate pivot rows the one with the
/// smallest entry height is chosen.
pub fn echelon_integer(mut m: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let best = (r..nrows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| height(&m[i][c]));
        let Some(pi) = best else { continue };
        m.swap(r, pi);
        for i in r + 1..nrows {
            if m[i][c].is_zero() {
                for j in c + 1..cols {
                    let v = &m[i][j] * &m[r][c];
                    m[i][j] = v / &prev;
                }
                continue;
            }
            for j in c + 1..cols {
                let num = &m[i][j] * &m[r][c] - &m[i][c] * &m[r][j];
                debug_assert!((&num % &prev).is_zero());
                m[i][j] = num / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    m.truncate(r.max(pivots.len()));
    // keep entries small: divide each row by its content
    for row in m.iter_mut() {
        let g = row.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in row.iter_mut() {
                *c = &*c / &g;
            }
        }
    }
    Echelon {
        rows: m,
        pivots,
        cols,
    }
}
