//! Multivariate polynomials over an exact field.

use std::cmp::Ordering;
use std::fmt;
use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::monomial::{MonoOrder, Monomial, MAX_VARS};
use crate::scalar::{PrimeField, Rat, Rationals, Fp, Scalar};

/// `K[x_1..x_n]` with a fixed monomial order.
pub struct PolyRing<S: Scalar> {
    nvars: usize,
    field: S::Field,
    order: MonoOrder,
    _marker: PhantomData<fn() -> S>,
}

impl<S: Scalar> Clone for PolyRing<S> {
    fn clone(&self) -> Self {
        *self
    }
}
impl<S: Scalar> Copy for PolyRing<S> {}

impl<S: Scalar> PartialEq for PolyRing<S> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.field == other.field && self.order == other.order
    }
}
impl<S: Scalar> Eq for PolyRing<S> {}

impl<S: Scalar> fmt::Debug for PolyRing<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyRing(n={}, {:?}, {:?})", self.nvars, self.field, self.order)
    }
}

impl PolyRing<Rat> {
    /// `Q[x_1..x_n]` with grevlex.
    pub fn rationals(nvars: usize) -> Self {
        PolyRing::new(nvars, Rationals, MonoOrder::Grevlex)
    }
}

impl PolyRing<Fp> {
    pub fn prime(nvars: usize, p: u32) -> Result<Self> {
        Ok(PolyRing::new(nvars, PrimeField::new(p)?, MonoOrder::Grevlex))
    }
}

impl<S: Scalar> PolyRing<S> {
    pub fn new(nvars: usize, field: S::Field, order: MonoOrder) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        PolyRing { nvars, field, order, _marker: PhantomData }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn field(&self) -> S::Field {
        self.field
    }
    pub fn order(&self) -> MonoOrder {
        self.order
    }
    pub fn with_order(&self, order: MonoOrder) -> Self {
        PolyRing::new(self.nvars, self.field, order)
    }

    pub fn zero(&self) -> Poly<S> {
        Poly { ring: *self, terms: Vec::new(), hdeg: None }
    }
    pub fn one(&self) -> Poly<S> {
        self.constant(S::one(self.field))
    }
    pub fn from_int(&self, v: i64) -> Poly<S> {
        self.constant(S::from_i64(self.field, v))
    }
    pub fn constant(&self, c: S) -> Poly<S> {
        self.term(c, Monomial::one())
    }
    pub fn scalar(&self, v: i64) -> S {
        S::from_i64(self.field, v)
    }

    /// `x_i` with 1-based index `i`.
    pub fn var(&self, i: usize) -> Poly<S> {
        assert!(i >= 1 && i <= self.nvars, "variable index out of range");
        self.term(S::one(self.field), Monomial::var(i - 1))
    }

    pub fn monomial(&self, m: Monomial) -> Poly<S> {
        self.term(S::one(self.field), m)
    }

    pub fn term(&self, c: S, m: Monomial) -> Poly<S> {
        if c.is_zero() {
            return self.zero();
        }
        Poly { ring: *self, hdeg: Some(m.degree()), terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, S)>) -> Poly<S> {
        let mut v: Vec<(Monomial, S)> = terms.into_iter().collect();
        let order = self.order;
        v.sort_by(|a, b| b.0.cmp_by(&a.0, order));
        let mut out: Vec<(Monomial, S)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = last.1.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly::from_sorted(*self, out)
    }
}

/// Immutable polynomial: terms sorted decreasingly in the ring order, no zero coefficients.
#[derive(Clone)]
pub struct Poly<S: Scalar> {
    ring: PolyRing<S>,
    terms: Vec<(Monomial, S)>,
    hdeg: Option<u32>,
}

impl<S: Scalar> PartialEq for Poly<S> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}
impl<S: Scalar> Eq for Poly<S> {}

impl<S: Scalar> std::hash::Hash for Poly<S> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<S: Scalar> Poly<S> {
    pub(crate) fn from_sorted(ring: PolyRing<S>, terms: Vec<(Monomial, S)>) -> Self {
        let hdeg = match terms.first() {
            None => None,
            Some((m0, _)) => {
                let d = m0.degree();
                if terms.iter().all(|(m, _)| m.degree() == d) {
                    Some(d)
                } else {
                    None
                }
            }
        };
        Poly { ring, terms, hdeg }
    }

    pub fn ring(&self) -> PolyRing<S> {
        self.ring
    }

    pub fn terms(&self) -> &[(Monomial, S)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, S)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, S)> {
        self.terms.first()
    }

    /// Degree when every term has the same degree; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.hdeg
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.hdeg.is_some()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Constant coefficient (zero if absent).
    pub fn constant_coeff(&self) -> S {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => S::zero(self.ring.field),
        }
    }

    pub fn coeff(&self, m: &Monomial) -> S {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| S::zero(self.ring.field))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring.nvars != other.ring.nvars {
            return Err(Error::Dimension(format!(
                "polynomials in {} and {} variables",
                self.ring.nvars, other.ring.nvars
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.sub(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        debug_assert_eq!(self.ring.nvars, other.ring.nvars);
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp_by(&b[j].0, order) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, if negate { c.neg() } else { c.clone() })));
        Poly::from_sorted(self.ring, out)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (*m, c.neg())).collect();
        Poly::from_sorted(self.ring, terms)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return self.ring.zero();
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, a.mul(c))).collect();
        Poly::from_sorted(self.ring, terms)
    }

    /// `c * m * self`.
    pub fn mul_term(&self, c: &S, m: &Monomial) -> Self {
        if c.is_zero() {
            return self.ring.zero();
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), a.mul(c))).collect();
        Poly::from_sorted(self.ring, terms)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.ring.nvars, other.ring.nvars);
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = self.ring.zero();
        for (m, c) in &small.terms {
            acc = acc.add(&big.mul_term(c, m));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Re-interprets the polynomial in another ring with the same number of variables.
    pub fn in_ring(&self, ring: PolyRing<S>) -> Self {
        if ring == self.ring {
            return self.clone();
        }
        ring.from_terms(self.terms.iter().cloned())
    }

    /// Exact evaluation at a point of the base field.
    pub fn eval(&self, point: &[S]) -> S {
        let mut acc = S::zero(self.ring.field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate().take(self.ring.nvars) {
                for _ in 0..m.exp(i) {
                    t = t.mul(x);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_term(f, &abs, m, self.ring.nvars)?;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

pub(crate) fn write_monomial(f: &mut impl fmt::Write, m: &Monomial, nvars: usize) -> fmt::Result {
    let mut first = true;
    for i in 0..nvars {
        let e = m.exp(i);
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "x{}", i + 1)?;
        } else {
            write!(f, "x{}^{}", i + 1, e)?;
        }
    }
    Ok(())
}

/// Writes `|c| * m` without sign.
fn write_term<S: Scalar>(f: &mut fmt::Formatter<'_>, abs: &S, m: &Monomial, nvars: usize) -> fmt::Result {
    if m.is_one() {
        return write!(f, "{}", abs);
    }
    if !abs.is_one() {
        write!(f, "{}*", abs)?;
    }
    write_monomial(f, m, nvars)
}
