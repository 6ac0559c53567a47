//! Exact coefficient fields.
//!
//! Two backends share the [`Scalar`] interface: arbitrary-precision
//! rationals ([`Rat`]) and a prime field `F_p` with `p < 2^31` ([`Fp`]).
//! Elements carry enough information to do arithmetic on their own; the
//! associated [`Scalar::Field`] value is only needed to build constants.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub trait Scalar:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Runtime description of the field (unit for Q, the modulus for F_p).
    type Field: Copy + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn field(&self) -> Self::Field;
    fn zero(field: Self::Field) -> Self;
    fn one(field: Self::Field) -> Self;
    fn from_i64(field: Self::Field, v: i64) -> Self;
    fn from_rational(field: Self::Field, v: &BigRational) -> Result<Self>;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    /// True when the printed form starts with a minus sign.
    fn is_negative(&self) -> bool;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }
}

/// Marker for the field of rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

/// Exact rational number in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Self {
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Scalar for Rat {
    type Field = Rationals;

    fn field(&self) -> Rationals {
        Rationals
    }
    fn zero(_: Rationals) -> Self {
        Rat(BigRational::zero())
    }
    fn one(_: Rationals) -> Self {
        Rat(BigRational::one())
    }
    fn from_i64(_: Rationals, v: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }
    fn from_rational(_: Rationals, v: &BigRational) -> Result<Self> {
        Ok(Rat(v.clone()))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        Rat(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Rat(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rat(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Rat(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }
    fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Builds `F_p`, rejecting composite moduli and `p >= 2^31`.
    pub fn new(p: u32) -> Result<Self> {
        if p >= (1u32 << 31) {
            return Err(Error::Field(format!("modulus {p} must be below 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of `F_p`, stored as its representative in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u32,
    p: u32,
}

impl Fp {
    pub fn value(&self) -> u32 {
        self.v
    }

    fn make(v: u64, p: u32) -> Self {
        Fp { v: (v % p as u64) as u32, p }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Scalar for Fp {
    type Field = PrimeField;

    fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }
    fn zero(field: PrimeField) -> Self {
        Fp { v: 0, p: field.p }
    }
    fn one(field: PrimeField) -> Self {
        Fp::make(1, field.p)
    }
    fn from_i64(field: PrimeField, v: i64) -> Self {
        let p = field.p as i64;
        Fp::make(v.rem_euclid(p) as u64, field.p)
    }
    fn from_rational(field: PrimeField, v: &BigRational) -> Result<Self> {
        let p = BigInt::from(field.p);
        let num = v.numer().mod_floor(&p).to_u64().unwrap_or(0);
        let den = v.denom().mod_floor(&p).to_u64().unwrap_or(0);
        if den == 0 {
            return Err(Error::Field(format!(
                "denominator of {v} vanishes modulo {}",
                field.p
            )));
        }
        let den = Fp::make(den, field.p);
        Ok(Fp::make(num, field.p).mul(&den.inv().expect("nonzero")))
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn is_one(&self) -> bool {
        self.v == 1
    }
    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        Fp::make(self.v as u64 + other.v as u64, self.p)
    }
    fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        Fp::make(self.v as u64 + (self.p - other.v) as u64, self.p)
    }
    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        Fp::make(self.v as u64 * other.v as u64, self.p)
    }
    fn neg(&self) -> Self {
        Fp::make((self.p - self.v) as u64, self.p)
    }
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let mut base = self.v as u64;
        let mut exp = self.p as u64 - 2;
        let m = self.p as u64;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Some(Fp { v: acc as u32, p: self.p })
    }
    fn is_negative(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn rationals_are_canonical() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(1, -2), rat(-1, 2));
        assert_eq!(format!("{}", rat(-6, 4)), "-3/2");
        assert_eq!(format!("{}", rat(4, 2)), "2");
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(32003).unwrap();
        let a = Fp::from_i64(f, -5);
        assert_eq!(a.value(), 31998);
        assert!(a.mul(&a.inv().unwrap()).is_one());
        assert!(PrimeField::new(32004).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn rational_into_prime_field() {
        let f = PrimeField::new(7).unwrap();
        let half = Fp::from_rational(f, &rat(1, 2).0).unwrap();
        assert_eq!(half.value(), 4);
        assert!(Fp::from_rational(f, &rat(1, 7).0).is_err());
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20, e in -50i64..50, g in 1i64..20) {
            let (x, y, z) = (rat(a, b), rat(c, d), rat(e, g));
            prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            if !x.is_zero() {
                prop_assert!(x.mul(&x.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn prime_field_axioms(a in 0i64..100_000, b in 0i64..100_000, c in 0i64..100_000) {
            let f = PrimeField::new(65521).unwrap();
            let (x, y, z) = (Fp::from_i64(f, a), Fp::from_i64(f, b), Fp::from_i64(f, c));
            prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            prop_assert_eq!(x.sub(&y).add(&y), x);
        }
    }
}
