//! Text grammars for polynomials and Koszul vectors.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := [sign] factor ("*" factor)*
//! factor := rational | var ["^" posint] | "(" expr ")" | basis
//! var    := "x" posint            (1-based, at most n)
//! basis  := "e[" list "]" | "e*[" list "]"   (Koszul grammar only)
//! ```
//! Whitespace is insignificant; `0` is the zero polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{Poly, PolyRing};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(String),
    Basis { dual: bool, subset: Vec<usize> },
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str, allow_basis: bool) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '0'..='9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let n: BigInt = text[i..j].parse().map_err(|_| Error::parse(i, "bad integer"))?;
                out.push((start, Tok::Num(n)));
                i = j;
                continue;
            }
            'e' if allow_basis => {
                let mut j = i + 1;
                let mut dual = false;
                while j < bytes.len() && bytes[j] == b' ' {
                    j += 1;
                }
                if j < bytes.len() && bytes[j] == b'*' {
                    dual = true;
                    j += 1;
                }
                while j < bytes.len() && bytes[j] == b' ' {
                    j += 1;
                }
                if j >= bytes.len() || bytes[j] != b'[' {
                    return Err(Error::parse(j, "expected `[` after basis symbol"));
                }
                let close = text[j..]
                    .find(']')
                    .map(|k| j + k)
                    .ok_or_else(|| Error::parse(j, "unterminated subset"))?;
                let inner = &text[j + 1..close];
                let mut subset = Vec::new();
                if !inner.trim().is_empty() {
                    for part in inner.split(',') {
                        let v: usize = part
                            .trim()
                            .parse()
                            .map_err(|_| Error::parse(j + 1, format!("bad subset entry `{}`", part.trim())))?;
                        subset.push(v);
                    }
                }
                out.push((start, Tok::Basis { dual, subset }));
                i = close + 1;
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < bytes.len() && (bytes[j] as char).is_ascii_alphanumeric() {
                    j += 1;
                }
                out.push((start, Tok::Var(text[i..j].to_string())));
                i = j;
                continue;
            }
            other => return Err(Error::parse(i, format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(out)
}

/// One parsed term of a Koszul string: coefficient times `e_I` or `e*_I`.
#[derive(Debug, Clone)]
pub struct KoszulTerm<S: Scalar> {
    pub dual: bool,
    pub subset: Vec<usize>,
    pub coeff: Poly<S>,
}

struct Parser<'a, S: Scalar> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    ring: PolyRing<S>,
    end: usize,
}

/// Value of a parsed sub-expression: a plain polynomial or a Koszul combination.
enum Value<S: Scalar> {
    Poly(Poly<S>),
    Koszul(Vec<KoszulTerm<S>>),
}

impl<'a, S: Scalar> Parser<'a, S> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<Value<S>> {
        let mut acc = self.signed_term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = combine(acc, t, false, self.here())?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = combine(acc, t, true, self.here())?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn signed_term(&mut self) -> Result<Value<S>> {
        let mut neg = false;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => self.pos += 1,
                Tok::Minus => {
                    neg = !neg;
                    self.pos += 1
                }
                _ => break,
            }
        }
        let v = self.term()?;
        Ok(if neg { negate(v) } else { v })
    }

    fn term(&mut self) -> Result<Value<S>> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = multiply(acc, f, self.here())?;
        }
        Ok(acc)
    }

    fn posint(&mut self) -> Result<u32> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                n.to_u32().filter(|&v| v > 0).ok_or_else(|| Error::parse(at, "expected positive integer"))
            }
            _ => Err(Error::parse(at, "expected positive integer")),
        }
    }

    fn factor(&mut self) -> Result<Value<S>> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut q = BigRational::from_integer(n);
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    let den_at = self.here();
                    let d = match self.peek().cloned() {
                        Some(Tok::Num(d)) if !d.is_zero() => d,
                        _ => return Err(Error::parse(den_at, "expected positive denominator")),
                    };
                    self.pos += 1;
                    q /= BigRational::from_integer(d);
                }
                let c = S::from_rational(self.ring.field(), &q)?;
                Ok(Value::Poly(self.ring.constant(c)))
            }
            Some(Tok::Var(name)) => {
                self.pos += 1;
                let idx = parse_var(&name, self.ring.nvars())?;
                let mut e = 1;
                if let Some(Tok::Caret) = self.peek() {
                    self.pos += 1;
                    e = self.posint()?;
                }
                let mut exps = vec![0u16; self.ring.nvars()];
                exps[idx] = e as u16;
                Ok(Value::Poly(self.ring.monomial(Monomial::from_exponents(&exps))))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    _ => Err(Error::parse(self.here(), "expected `)`")),
                }
            }
            Some(Tok::Basis { dual, subset }) => {
                self.pos += 1;
                Ok(Value::Koszul(vec![KoszulTerm { dual, subset, coeff: self.ring.one() }]))
            }
            Some(_) => Err(Error::parse(at, "unexpected token")),
            None => Err(Error::parse(at, "unexpected end of input")),
        }
    }
}

fn parse_var(name: &str, nvars: usize) -> Result<usize> {
    let digits = name.strip_prefix('x').ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
    let idx: usize = digits.parse().map_err(|_| Error::UnknownVariable(name.to_string()))?;
    if idx == 0 || idx > nvars || digits.starts_with('0') {
        return Err(Error::UnknownVariable(name.to_string()));
    }
    Ok(idx - 1)
}

fn negate<S: Scalar>(v: Value<S>) -> Value<S> {
    match v {
        Value::Poly(p) => Value::Poly(p.neg()),
        Value::Koszul(ts) => Value::Koszul(
            ts.into_iter().map(|t| KoszulTerm { coeff: t.coeff.neg(), ..t }).collect(),
        ),
    }
}

fn combine<S: Scalar>(a: Value<S>, b: Value<S>, sub: bool, at: usize) -> Result<Value<S>> {
    let b = if sub { negate(b) } else { b };
    match (a, b) {
        (Value::Poly(x), Value::Poly(y)) => Ok(Value::Poly(x.add(&y))),
        (Value::Koszul(mut x), Value::Koszul(y)) => {
            x.extend(y);
            Ok(Value::Koszul(x))
        }
        (Value::Poly(x), Value::Koszul(y)) | (Value::Koszul(y), Value::Poly(x)) => {
            if x.is_zero() {
                Ok(Value::Koszul(y))
            } else {
                Err(Error::parse(at, "cannot add a polynomial to a Koszul vector"))
            }
        }
    }
}

fn multiply<S: Scalar>(a: Value<S>, b: Value<S>, at: usize) -> Result<Value<S>> {
    match (a, b) {
        (Value::Poly(x), Value::Poly(y)) => Ok(Value::Poly(x.mul(&y))),
        (Value::Poly(x), Value::Koszul(ts)) | (Value::Koszul(ts), Value::Poly(x)) => Ok(Value::Koszul(
            ts.into_iter().map(|t| KoszulTerm { coeff: t.coeff.mul(&x), ..t }).collect(),
        )),
        (Value::Koszul(_), Value::Koszul(_)) => {
            Err(Error::parse(at, "product of two basis elements is not supported"))
        }
    }
}

fn run<S: Scalar>(text: &str, ring: PolyRing<S>, allow_basis: bool) -> Result<Value<S>> {
    let toks = tokenize(text, allow_basis)?;
    if toks.is_empty() {
        return Err(Error::parse(0, "empty input"));
    }
    let mut p = Parser { toks: &toks, pos: 0, ring, end: text.len() };
    let v = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::parse(p.here(), "trailing input"));
    }
    Ok(v)
}

/// Parses a polynomial over `ring`.
pub fn parse_poly<S: Scalar>(text: &str, ring: PolyRing<S>) -> Result<Poly<S>> {
    match run(text, ring, false)? {
        Value::Poly(p) => Ok(p),
        Value::Koszul(_) => unreachable!("basis tokens are disabled"),
    }
}

/// Parses a Koszul string such as `x6^5*e[3] - x1^2*e[1,3,4,5,6]`.
///
/// Terms on equal basis elements are not merged here.
pub fn parse_koszul_terms<S: Scalar>(text: &str, ring: PolyRing<S>) -> Result<Vec<KoszulTerm<S>>> {
    match run(text, ring, true)? {
        Value::Koszul(ts) => Ok(ts.into_iter().filter(|t| !t.coeff.is_zero()).collect()),
        Value::Poly(p) if p.is_zero() => Ok(Vec::new()),
        Value::Poly(_) => Err(Error::parse(0, "expected a Koszul vector (missing e[..] factor)")),
    }
}

/// Parses a rational literal such as `-3/4`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, t),
    };
    let q = match body.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| Error::parse(0, "bad numerator"))?;
            let d: BigInt = d.trim().parse().map_err(|_| Error::parse(0, "bad denominator"))?;
            if d.is_zero() {
                return Err(Error::parse(0, "zero denominator"));
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(body.parse().map_err(|_| Error::parse(0, "bad integer"))?),
    };
    Ok(if neg { -q } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;
    use proptest::prelude::*;

    fn r6() -> PolyRing<Rat> {
        PolyRing::rationals(6)
    }

    #[test]
    fn parses_two_term_polynomial() {
        let p = parse_poly("x1^2*x2 - 3*x3", r6()).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(format!("{p}"), "x1^2*x2 - 3*x3");
    }

    #[test]
    fn parses_example_generators() {
        let p = parse_poly("x1*x4 + x2*x5", r6()).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.homogeneous_degree(), Some(2));
    }

    #[test]
    fn parses_zero() {
        let p = parse_poly("0", r6()).unwrap();
        assert!(p.is_zero());
        assert!(p.terms().is_empty());
    }

    #[test]
    fn whitespace_and_rationals() {
        let p = parse_poly(" - 3 / 4 * x2 ^ 3 + x1 ", r6()).unwrap();
        assert_eq!(format!("{p}"), "-3/4*x2^3 + x1");
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_poly("x7", r6()), Err(Error::UnknownVariable(_))));
        assert!(matches!(parse_poly("y1", r6()), Err(Error::UnknownVariable(_))));
        assert!(matches!(parse_poly("x0", r6()), Err(Error::UnknownVariable(_))));
        match parse_poly("x1 + * x2", r6()) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_poly("x1^0", r6()), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("1/0*x1", r6()), Err(Error::Parse { .. })));
    }

    #[test]
    fn koszul_terms() {
        let ts = parse_koszul_terms("x6^5*e[3] - x1^2*e[1,3,4,5,6]", r6()).unwrap();
        assert_eq!(ts.len(), 2);
        assert_eq!(ts[0].subset, vec![3]);
        assert_eq!(format!("{}", ts[1].coeff), "-x1^2");
        let d = parse_koszul_terms("x2*e*[1,2] + e*[1, 3]", r6()).unwrap();
        assert!(d.iter().all(|t| t.dual));
        assert!(parse_koszul_terms("x1 + e[1]", r6()).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = Poly<Rat>> {
        let term = (
            -9i64..10,
            1i64..5,
            proptest::collection::vec(0u16..3, 4),
        );
        proptest::collection::vec(term, 0..6).prop_map(|ts| {
            let r = PolyRing::rationals(4);
            r.from_terms(ts.into_iter().map(|(n, d, e)| (Monomial::from_exponents(&e), Rat::new(n, d))))
        })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(p in arb_poly()) {
            let q = parse_poly(&p.to_string(), p.ring()).unwrap();
            prop_assert_eq!(q, p);
        }
    }
}
