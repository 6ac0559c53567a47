//! Hilbert series of graded modules as integer Laurent numerators over `(1-λ)^n`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::combinat::binomial;
use crate::free_mod::{GradedFreeModule, SubmoduleGens};
use crate::groebner::{groebner, GroebnerBasis};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::scalar::Scalar;

/// Integer Laurent polynomial in `λ`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    coeffs: BTreeMap<i64, BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::term(1, 0)
    }

    /// `c λ^e`.
    pub fn term(c: impl Into<BigInt>, e: i64) -> Self {
        let mut l = Laurent::zero();
        l.add_term(c.into(), e);
        l
    }

    /// `Σ λ^{e}` over the given exponents.
    pub fn from_exponents(exps: impl IntoIterator<Item = i64>) -> Self {
        let mut l = Laurent::zero();
        for e in exps {
            l.add_term(BigInt::one(), e);
        }
        l
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut l = Laurent::zero();
        for (c, e) in pairs {
            l.add_term(BigInt::from(c), e);
        }
        l
    }

    fn add_term(&mut self, c: BigInt, e: i64) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(c.clone(), *e);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(-c.clone(), *e);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Laurent { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }

    /// `λ^k · self`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// `(1 - λ)^k`.
    pub fn one_minus_pow(k: u32) -> Self {
        (0..=k as i64).fold(Laurent::zero(), |acc, i| {
            let c = binomial(k as i64, i);
            acc.add(&Laurent::term(if i % 2 == 0 { c } else { -c }, i))
        })
    }

    /// `k`-th derivative at `λ = 1`: `Σ c_e e(e-1)…(e-k+1)`.
    pub fn derivative_at_one(&self, k: u32) -> BigInt {
        self.coeffs
            .iter()
            .map(|(e, c)| {
                let falling = (0..k as i64).fold(BigInt::one(), |acc, i| acc * BigInt::from(e - i));
                c * falling
            })
            .sum()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.derivative_at_one(0)
    }

    /// Exact quotient by `(1 - λ)`, if it exists.
    pub fn div_one_minus(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        if !self.eval_at_one().is_zero() {
            return None;
        }
        // q_e = Σ_{k<=e} c_k
        let mut out = Laurent::zero();
        let mut run = BigInt::zero();
        let lo = self.min_exp().unwrap();
        let hi = self.max_exp().unwrap();
        for e in lo..hi {
            run += self.coeff(e);
            out.add_term(run.clone(), e);
        }
        Some(out)
    }

    /// Largest `k` with `(1-λ)^k | self`; `None` for the zero polynomial.
    pub fn vanishing_order_at_one(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_one_minus() {
            cur = q;
            k += 1;
        }
        Some(k)
    }
}

impl fmt::Display for Laurent {
    /// Prints e.g. `1 - 6*t^7 + t^9`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let power = match *e {
                0 => String::new(),
                1 => "t".to_string(),
                e => format!("t^{e}"),
            };
            if power.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{power}")?;
            } else {
                write!(f, "{a}*{power}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Laurent {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `Q(λ)` with `Hilb(M, λ) = Q(λ) / (1-λ)^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertNumerator {
    pub q: Laurent,
    pub n: usize,
}

impl HilbertNumerator {
    pub fn new(q: Laurent, n: usize) -> Self {
        HilbertNumerator { q, n }
    }

    /// Numerator of a free module `⊕ S(-d_i)`.
    pub fn free(module: &GradedFreeModule, n: usize) -> Self {
        HilbertNumerator::new(Laurent::from_exponents(module.twists().iter().copied()), n)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        HilbertNumerator::new(self.q.add(&other.q), self.n)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        HilbertNumerator::new(self.q.sub(&other.q), self.n)
    }

    /// Hilbert function value `dim_K M_d`.
    pub fn value(&self, d: i64) -> BigInt {
        let n = self.n as i64;
        if n == 0 {
            return self.q.coeff(d);
        }
        self.q
            .terms()
            .filter(|(e, _)| *e <= d)
            .map(|(e, c)| c * binomial(d - e + n - 1, n - 1))
            .sum()
    }

    /// Hilbert function on degrees `lo..=hi`.
    pub fn values(&self, lo: i64, hi: i64) -> Vec<BigInt> {
        (lo..=hi).map(|d| self.value(d)).collect()
    }

    /// `[Q(1)=0, Q'(1)=0, …]` for derivatives `0..order`.
    pub fn q_vanishing(&self, order: u32) -> Vec<bool> {
        q_vanishing(&self.q, order)
    }

    /// Krull dimension of the module: `n` minus the vanishing order of `Q` at 1,
    /// `-1` for the zero module.
    pub fn dimension(&self) -> i64 {
        match self.q.vanishing_order_at_one() {
            None => -1,
            Some(k) => self.n as i64 - k as i64,
        }
    }

    /// For a finite-length module, its graded dimensions `(degree, dim)`.
    pub fn finite_length_dims(&self) -> Option<Vec<(i64, BigInt)>> {
        let mut cur = self.q.clone();
        for _ in 0..self.n {
            cur = cur.div_one_minus()?;
        }
        Some(cur.terms().map(|(e, c)| (e, c.clone())).collect())
    }

    /// Shifting the module by `(−c)` multiplies `Q` by `λ^c`.
    pub fn shifted(&self, c: i64) -> Self {
        HilbertNumerator::new(self.q.shift(c), self.n)
    }
}

impl fmt::Display for HilbertNumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)
    }
}

/// `[Q(1)=0, Q'(1)=0, …, Q^{(order-1)}(1)=0]`.
pub fn q_vanishing(q: &Laurent, order: u32) -> Vec<bool> {
    (0..order).map(|k| q.derivative_at_one(k).is_zero()).collect()
}

fn minimalize(gens: &mut Vec<Monomial>) {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens.iter() {
        if !out.iter().any(|h| h.divides(g)) {
            out.push(*g);
        }
    }
    *gens = out;
}

/// Numerator `N` with `Hilb(S/J) = N / (1-λ)^n` for a monomial ideal `J`.
pub fn monomial_numerator(gens: &[Monomial]) -> Laurent {
    let mut g = gens.to_vec();
    minimalize(&mut g);
    numerator_rec(g)
}

fn numerator_rec(mut gens: Vec<Monomial>) -> Laurent {
    if gens.is_empty() {
        return Laurent::one();
    }
    if gens.iter().any(|m| m.is_one()) {
        return Laurent::zero();
    }
    // split off generators coprime to all others
    let mut factor = Laurent::one();
    let mut rest = Vec::new();
    for (i, m) in gens.iter().enumerate() {
        if gens.iter().enumerate().all(|(j, o)| i == j || m.is_coprime(o)) {
            factor = factor.mul(&Laurent::one().sub(&Laurent::term(1, m.degree() as i64)));
        } else {
            rest.push(*m);
        }
    }
    if rest.is_empty() {
        return factor;
    }
    gens = rest;
    // pivot on the most frequent variable: N(J) = N(J + x) + λ N(J : x)
    let mut counts = [0usize; crate::monomial::MAX_VARS];
    for m in &gens {
        for v in m.support() {
            counts[v] += 1;
        }
    }
    let var = (0..counts.len()).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let x = Monomial::var(var);
    let mut plus: Vec<Monomial> = gens.iter().filter(|m| m.exp(var) == 0).copied().collect();
    plus.push(x);
    let mut colon: Vec<Monomial> = gens.iter().map(|m| if m.exp(var) > 0 { x.quotient_of(m) } else { *m }).collect();
    minimalize(&mut plus);
    minimalize(&mut colon);
    let n = numerator_rec(plus).add(&numerator_rec(colon).shift(1));
    factor.mul(&n)
}

/// Numerator of `F / M` from a Gröbner basis of `M`.
pub fn quotient_numerator_from_gb<S: Scalar>(gb: &GroebnerBasis<S>) -> HilbertNumerator {
    let n = gb.ring().nvars();
    let mut q = Laurent::zero();
    for (i, lead) in gb.lead_ideals().iter().enumerate() {
        q = q.add(&monomial_numerator(lead).shift(gb.ambient().twist(i)));
    }
    HilbertNumerator::new(q, n)
}

/// Numerator of `F / M`.
pub fn quotient_numerator<S: Scalar>(m: &SubmoduleGens<S>) -> HilbertNumerator {
    quotient_numerator_from_gb(&groebner(m))
}

/// Numerator of the submodule `M` itself.
pub fn submodule_numerator<S: Scalar>(m: &SubmoduleGens<S>) -> HilbertNumerator {
    let n = m.ring().nvars();
    HilbertNumerator::free(m.ambient(), n).sub(&quotient_numerator(m))
}

/// Hilbert function of `F / M` on degrees `0..=window`, by counting standard
/// monomials of each component.
pub fn hilbert_from_groebner<S: Scalar>(m: &SubmoduleGens<S>, window: i64) -> Vec<BigInt> {
    let gb = groebner(m);
    let n = m.ring().nvars();
    let leads = gb.lead_ideals();
    (0..=window)
        .map(|d| {
            let mut count = 0u64;
            for (i, lead) in leads.iter().enumerate() {
                let e = d - m.ambient().twist(i);
                if e < 0 {
                    continue;
                }
                count += monomials_of_degree(n, e as u32).iter().filter(|u| !lead.iter().any(|g| g.divides(u))).count() as u64;
            }
            BigInt::from(count)
        })
        .collect()
}

/// Rank of a submodule of `S^r`: `r - e(F/M)` when `F/M` has full dimension.
pub fn submodule_rank<S: Scalar>(m: &SubmoduleGens<S>) -> i64 {
    let hn = quotient_numerator(m);
    let r = m.ambient().rank() as i64;
    let n = hn.n as u32;
    // the coefficient of (1-λ)^{-n} in the quotient series is its generic rank
    let generic = if hn.dimension() == n as i64 {
        hn.q.eval_at_one()
    } else {
        BigInt::zero()
    };
    r - i64::try_from(generic).expect("small rank")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::PolyRing;
    use crate::scalar::Rat;

    fn x(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn koszul_numerator() {
        // (1-λ)^2 = 1 - 2λ + λ^2
        let q = Laurent::one_minus_pow(2);
        assert_eq!(q.to_string(), "1 - 2*t + t^2");
        assert_eq!(q_vanishing(&q, 3), vec![true, true, false]);
        assert_eq!(monomial_numerator(&[x(&[1, 0]), x(&[0, 1])]), q);
    }

    #[test]
    fn derivative_identities() {
        let q = Laurent::one().sub(&Laurent::term(1, 2));
        assert_eq!(q.eval_at_one(), BigInt::zero());
        assert_eq!(q.derivative_at_one(1), BigInt::from(-2));
        let cube = Laurent::one_minus_pow(3).mul(&Laurent::from_pairs([(3, -2), (1, 5)]));
        assert_eq!(q_vanishing(&cube, 3), vec![true, true, true]);
        assert_eq!(cube.vanishing_order_at_one(), Some(3));
    }

    #[test]
    fn shift_multiplies() {
        let h = HilbertNumerator::new(Laurent::from_pairs([(1, 0), (-1, 2)]), 3);
        assert_eq!(h.shifted(4).q, h.q.mul(&Laurent::term(1, 4)));
        assert_eq!(h.shifted(-1).q.min_exp(), Some(-1));
    }

    #[test]
    fn product_of_maximal_ideals() {
        let r = PolyRing::<Rat>::rationals(6);
        let gens = ["x1*x4", "x1*x5", "x1*x6", "x2*x4", "x2*x5", "x2*x6", "x3*x4", "x3*x5", "x3*x6"];
        let i = SubmoduleGens::ideal(r, gens.iter().map(|s| parse_poly(s, r).unwrap()).collect()).unwrap();
        let h = hilbert_from_groebner(&i, 6);
        // monomials supported in {x1,x2,x3} or {x4,x5,x6}: 2*C(d+2,2) - [d=0]
        let oracle: Vec<BigInt> = (0..=6i64).map(|d| BigInt::from(2 * (d + 2) * (d + 1) / 2 - i64::from(d == 0))).collect();
        assert_eq!(h, oracle);
        let hn = quotient_numerator(&i);
        assert_eq!(hn.values(0, 6), oracle);
        assert_eq!(hn.q_vanishing(4), vec![true, true, true, false]);
        assert_eq!(hn.dimension(), 3);
    }

    #[test]
    fn free_series() {
        let r = PolyRing::<Rat>::rationals(2);
        let z = SubmoduleGens::zero(r, GradedFreeModule::new(vec![0]));
        let h: Vec<i64> = hilbert_from_groebner(&z, 4).iter().map(|b| i64::try_from(b).unwrap()).collect();
        assert_eq!(h, vec![1, 2, 3, 4, 5]);
        let m = SubmoduleGens::ideal(r, vec![r.var(1), r.var(2)]).unwrap();
        let h: Vec<i64> = hilbert_from_groebner(&m, 3).iter().map(|b| i64::try_from(b).unwrap()).collect();
        assert_eq!(h, vec![1, 0, 0, 0]);
        let hn = quotient_numerator(&m);
        assert_eq!(hn.finite_length_dims(), Some(vec![(0, BigInt::one())]));
        assert_eq!(submodule_rank(&m), 1);
    }
}
