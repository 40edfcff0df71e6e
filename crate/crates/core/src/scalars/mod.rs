//! Exact field elements.
//!
//! A [`Scalar`] is either a reduced fraction of big integers (characteristic
//! zero) or a canonical residue modulo a prime `p < 2^20`. Every structure
//! constant in the crate is computed over the integers and only then pushed
//! into the field with [`Scalar::from_integer`]; factorials are never inverted
//! inside a prime field.

pub mod combinatorics;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const PRIME_LIMIT: u64 = 1 << 20;

/// The base field: `Q` or `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// Prime field `F_p`; rejects composites and `p >= 2^20`.
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..PRIME_LIMIT).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q` or `F<p>` (also `GF<p>`).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" || t == "q" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t
            .strip_prefix("GF")
            .or_else(|| t.strip_prefix('F'))
            .or_else(|| t.strip_prefix('f'));
        match digits.and_then(|d| d.parse::<u64>().ok()) {
            Some(p) => FieldSpec::prime(p),
            None => Err(Error::Parse {
                position: 0,
                message: format!("unknown field `{s}` (expected Q or F<p>)"),
            }),
        }
    }
}

/// An exact element of a [`FieldSpec`].
///
/// Rationals are kept reduced with a positive denominator (guaranteed by
/// `BigRational`); residues live in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { p: u32, value: u32 },
}

impl Scalar {
    pub fn zero(spec: FieldSpec) -> Self {
        Self::from_i64(0, spec)
    }

    pub fn one(spec: FieldSpec) -> Self {
        Self::from_i64(1, spec)
    }

    pub fn from_i64(n: i64, spec: FieldSpec) -> Self {
        match spec {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Residue {
                p,
                value: n.rem_euclid(p as i64) as u32,
            },
        }
    }

    /// Embeds an integer: `n/1` over `Q`, `n mod p` over `F_p`.
    pub fn from_integer(n: &BigInt, spec: FieldSpec) -> Self {
        match spec {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Residue {
                    p,
                    value: r.to_u32().expect("residue below p"),
                }
            }
        }
    }

    /// `num/den` in the given field.
    pub fn fraction(num: &BigInt, den: &BigInt, spec: FieldSpec) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match spec {
            FieldSpec::Rationals => {
                Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone())))
            }
            FieldSpec::Prime(_) => {
                let d = Scalar::from_integer(den, spec);
                Scalar::from_integer(num, spec).checked_mul(&d.inv()?)
            }
        }
    }

    pub fn spec(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.spec() == other.spec() {
            Ok(())
        } else {
            Err(Error::MixedFields(self.spec(), other.spec()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { p, value: a }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    p: *p,
                    value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { p, value: a }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    p: *p,
                    value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { p, value } => Scalar::Residue {
                p: *p,
                value: (*p - *value) % *p,
            },
        }
    }

    /// Multiplicative inverse; `DivisionByZero` on zero.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Residue { p, value } => {
                // Fermat: a^(p-2)
                let p64 = *p as u64;
                let mut base = *value as u64;
                let mut exp = p64 - 2;
                let mut acc = 1u64;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p64;
                    }
                    base = base * base % p64;
                    exp >>= 1;
                }
                Scalar::Residue {
                    p: *p,
                    value: acc as u32,
                }
            }
        })
    }

    pub fn pow(&self, mut exp: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.spec());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Parses `-3`, `2/5` (a fraction is `a * b^{-1}` in `F_p`).
    pub fn parse(text: &str, spec: FieldSpec) -> Result<Scalar> {
        let t = text.trim();
        let bad = || Error::Parse {
            position: 0,
            message: format!("invalid scalar `{text}`"),
        };
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        Scalar::fraction(&num, &den, spec)
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Residue { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

// Operator forms panic on mixed fields; elements validate their field at the
// API boundary so internal arithmetic never mixes.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs)
            .expect("scalar addition across fields")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs)
            .expect("scalar subtraction across fields")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs)
            .expect("scalar multiplication across fields")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
