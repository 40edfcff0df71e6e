//! Reduced multivariable power series truncated at a degree cap, and the
//! uncapped polynomial theory sharing the same representation.
//!
//! A capped series stands for its class modulo all monomials of degree
//! greater than the cap. Substitution of reduced series and the partial
//! combinator never lower degrees, so both are well defined on these
//! classes.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::basis::MultiIndex;
use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::scalars::{FieldSpec, Scalar};

/// Degree cap of a series; `Unbounded` is the polynomial theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cap {
    Bounded(u32),
    Unbounded,
}

impl Cap {
    pub fn admits(&self, degree: u32) -> bool {
        match self {
            Cap::Bounded(c) => degree <= *c,
            Cap::Unbounded => true,
        }
    }

    fn lowered(&self) -> Cap {
        match self {
            Cap::Bounded(c) => Cap::Bounded(c.saturating_sub(1)),
            Cap::Unbounded => Cap::Unbounded,
        }
    }
}

/// Everything about a series except its coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeriesShape {
    pub arity: usize,
    pub cap: Cap,
    /// Whether constant terms are excluded.
    pub reduced: bool,
    pub field: FieldSpec,
}

impl SeriesShape {
    /// Reduced series in `arity` variables truncated above `cap`.
    pub fn capped(arity: usize, cap: u32, field: FieldSpec) -> Self {
        SeriesShape {
            arity,
            cap: Cap::Bounded(cap),
            reduced: true,
            field,
        }
    }

    /// Ordinary polynomials (constants allowed, no truncation).
    pub fn polynomial(arity: usize, field: FieldSpec) -> Self {
        SeriesShape {
            arity,
            cap: Cap::Unbounded,
            reduced: false,
            field,
        }
    }

    pub fn with_arity(self, arity: usize) -> Self {
        SeriesShape { arity, ..self }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeriesElement {
    shape: SeriesShape,
    coeffs: LinComb<MultiIndex>,
}

impl SeriesElement {
    pub fn zero(shape: SeriesShape) -> Self {
        SeriesElement {
            shape,
            coeffs: LinComb::new(),
        }
    }

    /// Validates and canonicalizes; terms above the cap are truncated away.
    pub fn from_terms(
        shape: SeriesShape,
        terms: impl IntoIterator<Item = (MultiIndex, Scalar)>,
    ) -> Result<Self> {
        let mut coeffs = LinComb::new();
        for (m, c) in terms {
            if c.spec() != shape.field {
                return Err(Error::MixedFields(c.spec(), shape.field));
            }
            if let Some(v) = m.max_var() {
                if v as usize >= shape.arity {
                    return Err(Error::Arity {
                        name: format!("x{}", v + 1),
                        arity: shape.arity,
                    });
                }
            }
            if !shape.cap.admits(m.degree()) {
                continue;
            }
            coeffs.add_term(m, c);
        }
        if shape.reduced && coeffs.get(&MultiIndex::one()).is_some() {
            return Err(Error::NotReduced(
                "constant term in a reduced series".into(),
            ));
        }
        Ok(SeriesElement { shape, coeffs })
    }

    /// The degree-one monomial `x_i`.
    pub fn eta(i: usize, shape: SeriesShape) -> Self {
        assert!(
            i < shape.arity,
            "variable {i} outside arity {}",
            shape.arity
        );
        let mut coeffs = LinComb::new();
        if shape.cap.admits(1) {
            coeffs.add_term(MultiIndex::var(i as u32), Scalar::one(shape.field));
        }
        SeriesElement { shape, coeffs }
    }

    pub fn shape(&self) -> SeriesShape {
        self.shape
    }

    pub fn arity(&self) -> usize {
        self.shape.arity
    }

    pub fn cap(&self) -> Cap {
        self.shape.cap
    }

    pub fn field(&self) -> FieldSpec {
        self.shape.field
    }

    pub fn terms(&self) -> &LinComb<MultiIndex> {
        &self.coeffs
    }

    pub fn coeff(&self, m: &MultiIndex) -> Scalar {
        self.coeffs
            .get(m)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest total degree in the support.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(MultiIndex::degree).max()
    }

    pub fn has_constant_term(&self) -> bool {
        self.coeffs.get(&MultiIndex::one()).is_some()
    }

    fn check_same(&self, other: &SeriesElement) -> Result<()> {
        let (a, b) = (self.shape, other.shape);
        if a.arity != b.arity || a.cap != b.cap || a.field != b.field {
            return Err(Error::shape(format!(
                "series shapes differ: {a:?} vs {b:?}"
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &SeriesElement) -> Result<SeriesElement> {
        self.check_same(other)?;
        let mut coeffs = self.coeffs.clone();
        coeffs.add_assign(&other.coeffs);
        Ok(SeriesElement {
            shape: SeriesShape {
                reduced: self.shape.reduced && other.shape.reduced,
                ..self.shape
            },
            coeffs,
        })
    }

    pub fn sub(&self, other: &SeriesElement) -> Result<SeriesElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SeriesElement {
        SeriesElement {
            shape: self.shape,
            coeffs: self.coeffs.negated(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Result<SeriesElement> {
        if s.spec() != self.field() {
            return Err(Error::MixedFields(s.spec(), self.field()));
        }
        Ok(SeriesElement {
            shape: self.shape,
            coeffs: self.coeffs.scaled(s),
        })
    }

    /// Commutative product, truncated at the cap.
    pub fn mul(&self, other: &SeriesElement) -> Result<SeriesElement> {
        self.check_same(other)?;
        let shape = SeriesShape {
            reduced: self.shape.reduced && other.shape.reduced,
            ..self.shape
        };
        Ok(SeriesElement {
            shape,
            coeffs: mul_terms(&self.coeffs, &other.coeffs, shape.cap),
        })
    }

    /// Re-truncates at a lower cap.
    pub fn truncate(&self, cap: u32) -> Result<SeriesElement> {
        if !self.shape.cap.admits(cap) {
            return Err(Error::shape(format!(
                "cannot raise cap {:?} to {cap}",
                self.shape.cap
            )));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.retain(|m| m.degree() <= cap);
        Ok(SeriesElement {
            shape: SeriesShape {
                cap: Cap::Bounded(cap),
                ..self.shape
            },
            coeffs,
        })
    }

    /// Replaces variable `i` by `args[i]`; the result lives over
    /// `target_arity` variables. Capped series only accept arguments
    /// without constant terms.
    pub fn substitute(&self, args: &[SeriesElement], target_arity: usize) -> Result<SeriesElement> {
        if args.len() != self.arity() {
            return Err(Error::shape(format!(
                "{} arguments for a series in {} variables",
                args.len(),
                self.arity()
            )));
        }
        let target = SeriesShape {
            arity: target_arity,
            ..self.shape
        };
        for (index, a) in args.iter().enumerate() {
            if a.arity() != target_arity || a.cap() != target.cap || a.field() != target.field {
                return Err(Error::shape(format!(
                    "argument {index} has shape {:?}, expected {target:?}",
                    a.shape
                )));
            }
            if matches!(target.cap, Cap::Bounded(_)) && a.has_constant_term() {
                return Err(Error::NonReducedArgument { index });
            }
        }
        let reduced = self.shape.reduced && args.iter().all(|a| a.shape.reduced);
        let shape = SeriesShape { reduced, ..target };
        let mut powers = PowerCache::new(args, shape.cap);
        let mut out = LinComb::new();
        for (m, c) in &self.coeffs {
            let mut term = LinComb::single(MultiIndex::one(), c.clone());
            for &(v, e) in m.pairs() {
                let p = powers.get(v as usize, e);
                term = mul_terms(&term, p, shape.cap);
                if term.is_empty() {
                    break;
                }
            }
            out.add_assign(&term);
        }
        Ok(SeriesElement { shape, coeffs: out })
    }

    /// Formal partial derivative in variable `i`. The result may carry a
    /// constant term, so it is flagged non-reduced; for a capped input it is
    /// only meaningful through degree `cap - 1` and carries that cap.
    pub fn partial(&self, i: usize) -> SeriesElement {
        assert!(
            i < self.arity(),
            "variable {i} outside arity {}",
            self.arity()
        );
        let v = i as u32;
        let mut out = LinComb::new();
        for (m, c) in &self.coeffs {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let k = Scalar::from_integer(&BigInt::from(e), self.field());
            out.add_term(m.decrement(v).expect("exponent positive"), c * &k);
        }
        let cap = self.shape.cap.lowered();
        out.retain(|m| cap.admits(m.degree()));
        SeriesElement {
            shape: SeriesShape {
                cap,
                reduced: false,
                ..self.shape
            },
            coeffs: out,
        }
    }

    /// `sum_i (d f / d x_i) * y_i` over `2n` variables, `y_i = x_{n+i}`.
    ///
    /// Each output term keeps the degree of its source term and carries
    /// exactly one dual variable.
    pub fn partial_combinator(&self) -> SeriesElement {
        let n = self.arity() as u32;
        let mut out = LinComb::new();
        for (m, c) in &self.coeffs {
            for &(v, e) in m.pairs() {
                let k = Scalar::from_integer(&BigInt::from(e), self.field());
                let rest = m.decrement(v).expect("exponent positive");
                out.add_term(rest.mul(&MultiIndex::var(n + v)), c * &k);
            }
        }
        SeriesElement {
            shape: self.shape.with_arity(2 * self.arity()),
            coeffs: out,
        }
    }

    /// Degree-one coefficients `(c_1, ..., c_n)`.
    pub fn counit(&self) -> Vec<Scalar> {
        (0..self.arity() as u32)
            .map(|v| self.coeff(&MultiIndex::var(v)))
            .collect()
    }

    /// `sum_i c_i x_i` in the given shape.
    pub fn linear(coeffs: &[Scalar], shape: SeriesShape) -> Result<SeriesElement> {
        if coeffs.len() != shape.arity {
            return Err(Error::shape("coefficient vector length differs from arity"));
        }
        SeriesElement::from_terms(
            shape,
            coeffs
                .iter()
                .enumerate()
                .map(|(v, c)| (MultiIndex::var(v as u32), c.clone())),
        )
    }
}

pub(crate) fn mul_terms(
    a: &LinComb<MultiIndex>,
    b: &LinComb<MultiIndex>,
    cap: Cap,
) -> LinComb<MultiIndex> {
    let mut out = LinComb::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            if !cap.admits(ma.degree() + mb.degree()) {
                continue;
            }
            out.add_term(ma.mul(mb), ca * cb);
        }
    }
    out
}

/// Lazily computed powers `args[v]^e`, reused across the monomials of one
/// substitution.
struct PowerCache<'a> {
    args: &'a [SeriesElement],
    cap: Cap,
    table: HashMap<(usize, u32), LinComb<MultiIndex>>,
}

impl<'a> PowerCache<'a> {
    fn new(args: &'a [SeriesElement], cap: Cap) -> Self {
        PowerCache {
            args,
            cap,
            table: HashMap::new(),
        }
    }

    fn get(&mut self, v: usize, e: u32) -> &LinComb<MultiIndex> {
        if !self.table.contains_key(&(v, e)) {
            let value = if e == 1 {
                self.args[v].coeffs.clone()
            } else {
                let half = self.get(v, e / 2).clone();
                let mut sq = mul_terms(&half, &half, self.cap);
                if e % 2 == 1 {
                    sq = mul_terms(&sq, &self.args[v].coeffs, self.cap);
                }
                sq
            };
            self.table.insert((v, e), value);
        }
        &self.table[&(v, e)]
    }
}
