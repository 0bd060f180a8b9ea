//! Text format.
//!
//! ```text
//! # optional comment lines
//! vars: x y z; domain: Z
//! 3 2 0 1
//! -1 0 0 6
//! ```
//!
//! Each body line is `coefficient e0 e1 ... en`. Alternatively the body is a
//! single infix expression such as `3*x^2*z - z^6`, with `+ - * ^`,
//! parentheses and division by constants.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use super::{Monomial, MonomialOrder, PolyRing, Polynomial};
use crate::arith::ring::parse_rational as parse_rational_str;
use crate::arith::Ring;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyParseError {
    #[error("missing or malformed header line (expected `vars: ...; domain: ...`)")]
    Header,
    #[error("unknown domain `{0}`")]
    Domain(String),
    #[error("file domain {file} cannot be read into {target}")]
    DomainMismatch { file: String, target: String },
    #[error("variables {file:?} do not match ring variables {ring:?}")]
    Vars { file: Vec<String>, ring: Vec<String> },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("empty body")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomainSpec {
    Integers,
    Rationals,
    PrimeField(BigUint),
    Other(String),
}

impl DomainSpec {
    pub fn parse(s: &str) -> Result<Self, PolyParseError> {
        let s = s.trim();
        match s {
            "Z" => Ok(DomainSpec::Integers),
            "Q" => Ok(DomainSpec::Rationals),
            _ => {
                if let Some(inner) = s.strip_prefix("Fp(").and_then(|r| r.strip_suffix(')')) {
                    inner
                        .trim()
                        .parse::<BigUint>()
                        .map(DomainSpec::PrimeField)
                        .map_err(|_| PolyParseError::Domain(s.to_string()))
                } else if !s.is_empty() {
                    Ok(DomainSpec::Other(s.to_string()))
                } else {
                    Err(PolyParseError::Domain(s.to_string()))
                }
            }
        }
    }

    pub fn tag(&self) -> String {
        match self {
            DomainSpec::Integers => "Z".into(),
            DomainSpec::Rationals => "Q".into(),
            DomainSpec::PrimeField(p) => format!("Fp({p})"),
            DomainSpec::Other(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Header {
    pub vars: Vec<String>,
    pub domain: DomainSpec,
    /// Index of the first body line in the original text.
    body_start: usize,
}

pub fn read_header(text: &str) -> Result<Header, PolyParseError> {
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (v, d) = t.split_once(';').ok_or(PolyParseError::Header)?;
        let vars = v
            .trim()
            .strip_prefix("vars:")
            .ok_or(PolyParseError::Header)?
            .split_whitespace()
            .map(str::to_string)
            .collect::<Vec<_>>();
        let dom = d
            .trim()
            .strip_prefix("domain:")
            .ok_or(PolyParseError::Header)?;
        return Ok(Header {
            vars,
            domain: DomainSpec::parse(dom)?,
            body_start: i + 1,
        });
    }
    Err(PolyParseError::Header)
}

/// Parses a file into a ring built from its header, with the given
/// coefficient domain and order.
pub fn parse_poly<R: Ring>(
    text: &str,
    coeffs: R,
    order: MonomialOrder,
) -> Result<Polynomial<R>, PolyParseError> {
    let h = read_header(text)?;
    let ring = PolyRing::new(coeffs, &h.vars, order);
    parse_body(text, &h, &ring)
}

/// Parses a file into an existing ring; the variable lists must agree.
pub fn parse_poly_in<R: Ring>(text: &str, ring: &PolyRing<R>) -> Result<Polynomial<R>, PolyParseError> {
    let h = read_header(text)?;
    if h.vars != ring.vars() {
        return Err(PolyParseError::Vars {
            file: h.vars.clone(),
            ring: ring.vars().to_vec(),
        });
    }
    parse_body(text, &h, ring)
}

/// Parses a bare infix expression (no header) with rational literals in the
/// ring's variables.
pub fn parse_expr<R: Ring>(expr: &str, ring: &PolyRing<R>) -> Result<Polynomial<R>, PolyParseError> {
    let h = Header {
        vars: ring.vars().to_vec(),
        domain: DomainSpec::Rationals,
        body_start: 0,
    };
    parse_body(expr, &h, ring)
}

fn coeff_reader<'a, R: Ring>(
    h: &Header,
    r: &'a R,
) -> Result<Box<dyn Fn(&str) -> Option<R::Elem> + 'a>, PolyParseError> {
    let target = r.domain_tag();
    match &h.domain {
        DomainSpec::Integers => Ok(Box::new(move |s: &str| {
            s.parse::<BigInt>().ok().map(|v| r.from_integer(&v))
        })),
        DomainSpec::Rationals => Ok(Box::new(move |s: &str| {
            let q: BigRational = parse_rational_str(s)?;
            r.exact_div(&r.from_integer(q.numer()), &r.from_integer(q.denom()))
        })),
        d if d.tag() == target => Ok(Box::new(move |s: &str| r.parse_elem(s))),
        d => Err(PolyParseError::DomainMismatch {
            file: d.tag(),
            target,
        }),
    }
}

fn parse_body<R: Ring>(text: &str, h: &Header, ring: &PolyRing<R>) -> Result<Polynomial<R>, PolyParseError> {
    let r = ring.coeffs();
    let target = r.domain_tag();
    let compatible = match &h.domain {
        DomainSpec::Integers | DomainSpec::Rationals => true,
        d => d.tag() == target,
    };
    if !compatible {
        return Err(PolyParseError::DomainMismatch {
            file: h.domain.tag(),
            target,
        });
    }
    let body: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .skip(h.body_start)
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let n = ring.nvars();
    let is_term_line = |l: &str| {
        let toks: Vec<&str> = l.split_whitespace().collect();
        toks.len() == n + 1 && toks[1..].iter().all(|t| t.bytes().all(|b| b.is_ascii_digit()))
    };
    if !body.is_empty() && body.iter().all(|(_, l)| is_term_line(l)) {
        let read = coeff_reader(h, r)?;
        let mut terms = Vec::with_capacity(body.len());
        for (ln, l) in &body {
            let toks: Vec<&str> = l.split_whitespace().collect();
            let c = read(toks[0]).ok_or_else(|| PolyParseError::Syntax {
                line: *ln,
                msg: format!("bad coefficient `{}`", toks[0]),
            })?;
            let mut e = Vec::with_capacity(n);
            for t in &toks[1..] {
                e.push(t.parse::<u16>().map_err(|_| PolyParseError::Syntax {
                    line: *ln,
                    msg: format!("bad exponent `{t}`"),
                })?);
            }
            terms.push((Monomial::from_exps(&e), c));
        }
        return Ok(ring.from_terms(terms));
    }
    if body.is_empty() {
        return Err(PolyParseError::Empty);
    }
    let line = body[0].0;
    let joined: String = body.iter().map(|(_, l)| *l).collect::<Vec<_>>().join(" ");
    let mut p = Infix {
        toks: tokenize(&joined).map_err(|msg| PolyParseError::Syntax { line, msg })?,
        pos: 0,
        ring,
    };
    let out = p.expr().map_err(|msg| PolyParseError::Syntax { line, msg })?;
    if p.pos != p.toks.len() {
        return Err(PolyParseError::Syntax {
            line,
            msg: format!("trailing input at token {}", p.pos),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let b: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let j = (i..b.len()).find(|&j| !b[j].is_ascii_digit()).unwrap_or(b.len());
            let s: String = b[i..j].iter().collect();
            out.push(Tok::Num(s.parse().unwrap()));
            i = j;
        } else if c.is_alphabetic() || c == '_' {
            let j = (i..b.len())
                .find(|&j| !(b[j].is_alphanumeric() || b[j] == '_'))
                .unwrap_or(b.len());
            out.push(Tok::Ident(b[i..j].iter().collect()));
            i = j;
        } else if "+-*^()/".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct Infix<'a, R: Ring> {
    toks: Vec<Tok>,
    pos: usize,
    ring: &'a PolyRing<R>,
}

impl<R: Ring> Infix<'_, R> {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Polynomial<R>, String> {
        let mut neg = false;
        if let Some(c @ ('+' | '-')) = self.peek_op() {
            neg = c == '-';
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial<R>, String> {
        let mut acc = self.factor()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let f = self.factor()?;
            if c == '*' {
                acc = acc.mul(&f);
            } else {
                if !f.is_constant() || f.is_zero() {
                    return Err("division by a non-constant".into());
                }
                let d = f.lc().unwrap().clone();
                let r = self.ring.coeffs();
                let mut terms = Vec::with_capacity(acc.len());
                for (m, c) in acc.terms() {
                    let q = r.exact_div(c, &d).ok_or("inexact division in this domain")?;
                    terms.push((m.clone(), q));
                }
                acc = self.ring.from_terms(terms);
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<R>, String> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.try_into().map_err(|_| "exponent too large")?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err("expected exponent".into()),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<R>, String> {
        let tok = self.toks.get(self.pos).cloned().ok_or("unexpected end")?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(self.ring.constant(self.ring.coeffs().from_integer(&n))),
            Tok::Ident(v) => self
                .ring
                .var_index(&v)
                .map(|i| self.ring.var(i))
                .ok_or_else(|| format!("unknown variable `{v}`")),
            Tok::Op('(') => {
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err("expected `)`".into());
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::Op('-') => Ok(self.factor()?.neg()),
            Tok::Op(c) => Err(format!("unexpected `{c}`")),
        }
    }
}

/// Term-line format; reading it back gives the identical polynomial.
pub fn format_poly<R: Ring>(p: &Polynomial<R>, comment: Option<&str>) -> String {
    let ring = p.ring();
    let mut s = String::new();
    if let Some(c) = comment {
        for l in c.lines() {
            s.push_str("# ");
            s.push_str(l);
            s.push('\n');
        }
    }
    s.push_str(&format!(
        "vars: {}; domain: {}\n",
        ring.vars().join(" "),
        ring.coeffs().domain_tag()
    ));
    if p.is_zero() {
        s.push_str("0\n");
    }
    for (m, c) in p.terms() {
        s.push_str(&ring.coeffs().format_elem(c));
        for e in m.exps() {
            s.push(' ');
            s.push_str(&e.to_string());
        }
        s.push('\n');
    }
    s
}

/// Human-readable infix form.
pub fn format_infix<R: Ring>(p: &Polynomial<R>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let r = p.coeff_ring();
    let vars = p.ring().vars();
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let mut cs = r.format_elem(c);
        let negative = cs.starts_with('-');
        if negative {
            cs.remove(0);
        }
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mono: Vec<String> = m
            .exps()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    vars[i].clone()
                } else {
                    format!("{}^{}", vars[i], e)
                }
            })
            .collect();
        let needs_parens = cs.contains(['+', ' ', '/', '[']);
        let cs = if needs_parens { format!("({cs})") } else { cs };
        if mono.is_empty() {
            out.push_str(&cs);
        } else if cs == "1" {
            out.push_str(&mono.join("*"));
        } else {
            out.push_str(&cs);
            out.push('*');
            out.push_str(&mono.join("*"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Fp, IntegerRing, RationalField};

    #[test]
    fn infix_and_roundtrip() {
        let src = "# demo\nvars: x y z; domain: Z\n3*x^2*z - (y + z)^2 + 7\n";
        let p = parse_poly(src, IntegerRing, MonomialOrder::GrevLex).unwrap();
        assert_eq!(p.len(), 5);
        let text = format_poly(&p, Some("demo"));
        let q = parse_poly(&text, IntegerRing, MonomialOrder::GrevLex).unwrap();
        assert_eq!(p, q);
        assert_eq!(format_poly(&q, Some("demo")), text);
        let inf = format_infix(&p);
        let again = parse_poly(&format!("vars: x y z; domain: Z\n{inf}"), IntegerRing, MonomialOrder::GrevLex)
            .unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn domains() {
        let src = "vars: t; domain: Q\n1/13*(t - 1)^2\n";
        let p = parse_poly(src, RationalField, MonomialOrder::Lex).unwrap();
        assert_eq!(p.len(), 3);
        assert!(parse_poly(src, IntegerRing, MonomialOrder::Lex).is_err());
        let f = "vars: x; domain: Fp(13)\n14*x + 1\n";
        let p = parse_poly(f, Fp::new(13), MonomialOrder::Lex).unwrap();
        assert_eq!(p.lc(), Some(&1));
        assert!(matches!(
            parse_poly(f, Fp::new(7), MonomialOrder::Lex),
            Err(PolyParseError::DomainMismatch { .. })
        ));
        assert!(parse_poly("vars: x; domain: Z\nx + q\n", IntegerRing, MonomialOrder::Lex).is_err());
        assert!(parse_poly("x + 1\n", IntegerRing, MonomialOrder::Lex).is_err());
    }
}
