//! Reduced divided power polynomials: the free divided power algebra on
//! finitely many variables.
//!
//! A [`MultiIndex`] exponent `k` on variable `x` denotes `x^[k]`. Every
//! structure constant (binomials for products, `(nk)!/(k!)^n` and
//! `(nk)!/(n!(k!)^n)` for divided powers of monomials) is an integer computed
//! exactly and embedded into the field afterwards, which keeps the
//! arithmetic correct in positive characteristic.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::basis::MultiIndex;
use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::powerseries::{SeriesElement, SeriesShape};
use crate::scalars::combinatorics::{binomial, dp_power_coeff, factorial, power_product_coeff};
use crate::scalars::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DPElement {
    arity: usize,
    field: FieldSpec,
    coeffs: LinComb<MultiIndex>,
}

impl DPElement {
    pub fn zero(arity: usize, field: FieldSpec) -> Self {
        DPElement {
            arity,
            field,
            coeffs: LinComb::new(),
        }
    }

    pub fn from_terms(
        arity: usize,
        field: FieldSpec,
        terms: impl IntoIterator<Item = (MultiIndex, Scalar)>,
    ) -> Result<Self> {
        let mut coeffs = LinComb::new();
        for (m, c) in terms {
            if c.spec() != field {
                return Err(Error::MixedFields(c.spec(), field));
            }
            if m.is_one() {
                return Err(Error::NotReduced(
                    "divided power polynomials have no constant term".into(),
                ));
            }
            if let Some(v) = m.max_var() {
                if v as usize >= arity {
                    return Err(Error::Arity {
                        name: format!("x{}", v + 1),
                        arity,
                    });
                }
            }
            coeffs.add_term(m, c);
        }
        Ok(DPElement {
            arity,
            field,
            coeffs,
        })
    }

    /// `x_i^[1]`.
    pub fn eta(i: usize, arity: usize, field: FieldSpec) -> Self {
        assert!(i < arity, "variable {i} outside arity {arity}");
        DPElement {
            arity,
            field,
            coeffs: LinComb::single(MultiIndex::var(i as u32), Scalar::one(field)),
        }
    }

    /// A single divided power monomial with coefficient one.
    pub fn monomial(m: MultiIndex, arity: usize, field: FieldSpec) -> Result<Self> {
        Self::from_terms(arity, field, [(m, Scalar::one(field))])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &LinComb<MultiIndex> {
        &self.coeffs
    }

    pub fn coeff(&self, m: &MultiIndex) -> Scalar {
        self.coeffs
            .get(m)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(MultiIndex::degree).max()
    }

    fn check_same(&self, other: &DPElement) -> Result<()> {
        if self.arity != other.arity || self.field != other.field {
            return Err(Error::shape(format!(
                "divided power elements over ({}, {}) and ({}, {})",
                self.arity, self.field, other.arity, other.field
            )));
        }
        Ok(())
    }

    fn with_coeffs(&self, coeffs: LinComb<MultiIndex>) -> DPElement {
        DPElement {
            arity: self.arity,
            field: self.field,
            coeffs,
        }
    }

    pub fn add(&self, other: &DPElement) -> Result<DPElement> {
        self.check_same(other)?;
        let mut coeffs = self.coeffs.clone();
        coeffs.add_assign(&other.coeffs);
        Ok(self.with_coeffs(coeffs))
    }

    pub fn neg(&self) -> DPElement {
        self.with_coeffs(self.coeffs.negated())
    }

    pub fn sub(&self, other: &DPElement) -> Result<DPElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Result<DPElement> {
        if s.spec() != self.field {
            return Err(Error::MixedFields(s.spec(), self.field));
        }
        Ok(self.with_coeffs(self.coeffs.scaled(s)))
    }

    /// The divided power product: `x^[k] * x^[l] = C(k+l, k) x^[k+l]` per
    /// shared variable, bilinearly extended.
    pub fn mul(&self, other: &DPElement) -> Result<DPElement> {
        self.check_same(other)?;
        Ok(self.with_coeffs(mul_terms(&self.coeffs, &other.coeffs, self.field)))
    }

    /// `f^[n]` for `n >= 1`.
    pub fn power(&self, n: u32) -> Result<DPElement> {
        if n == 0 {
            return Err(Error::shape("f^[0] is not representable"));
        }
        Ok(self.powers(n).pop().expect("n >= 1"))
    }

    /// `[f^[1], ..., f^[n]]`, expanded term by term with
    /// `(a + b)^[j] = sum_{l=0..j} a^[l] * b^[j-l]`.
    pub fn powers(&self, n: u32) -> Vec<DPElement> {
        let n = n as usize;
        let field = self.field;
        // table[j-1] holds (sum of terms so far)^[j]
        let mut table: Vec<LinComb<MultiIndex>> = vec![LinComb::new(); n];
        for (m, c) in &self.coeffs {
            let term_powers: Vec<LinComb<MultiIndex>> = (1..=n as u32)
                .map(|j| {
                    let (k, mono) = monomial_power(m, j);
                    LinComb::single(mono, &c.pow(j) * &Scalar::from_integer(&k, field))
                })
                .collect();
            let mut next = vec![LinComb::new(); n];
            for j in 1..=n {
                let slot = &mut next[j - 1];
                slot.add_assign(&table[j - 1]);
                slot.add_assign(&term_powers[j - 1]);
                for l in 1..j {
                    let prod = mul_terms(&table[l - 1], &term_powers[j - l - 1], field);
                    slot.add_assign(&prod);
                }
            }
            table = next;
        }
        table.into_iter().map(|c| self.with_coeffs(c)).collect()
    }

    /// Each monomial `y_1^[r_1] ... y_j^[r_j]` becomes
    /// `args[1]^[r_1] * ... * args[j]^[r_j]`.
    pub fn substitute(&self, args: &[DPElement], target_arity: usize) -> Result<DPElement> {
        if args.len() != self.arity {
            return Err(Error::shape(format!(
                "{} arguments for a divided power polynomial in {} variables",
                args.len(),
                self.arity
            )));
        }
        for (index, a) in args.iter().enumerate() {
            if a.arity != target_arity || a.field != self.field {
                return Err(Error::shape(format!(
                    "argument {index} is over ({}, {}), expected ({target_arity}, {})",
                    a.arity, a.field, self.field
                )));
            }
        }
        let mut max_exp: HashMap<u32, u32> = HashMap::new();
        for m in self.coeffs.keys() {
            for &(v, e) in m.pairs() {
                let slot = max_exp.entry(v).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
        let powers: HashMap<u32, Vec<DPElement>> = max_exp
            .into_iter()
            .map(|(v, e)| (v, args[v as usize].powers(e)))
            .collect();
        let mut out = LinComb::new();
        for (m, c) in &self.coeffs {
            let mut acc: Option<LinComb<MultiIndex>> = None;
            for &(v, e) in m.pairs() {
                let p = &powers[&v][e as usize - 1].coeffs;
                acc = Some(match acc {
                    None => p.clone(),
                    Some(a) => mul_terms(&a, p, self.field),
                });
            }
            out.add_scaled(&acc.expect("reduced monomial"), c);
        }
        Ok(DPElement {
            arity: target_arity,
            field: self.field,
            coeffs: out,
        })
    }

    /// The divided power derivative `d/dx_i`, landing in `F[X]_+ (+) F`:
    /// `x^[k] -> x^[k-1]` with no numeric factor, and the bare `x_i^[1]`
    /// contributing to the constant component.
    pub fn partial(&self, i: usize) -> (DPElement, Scalar) {
        assert!(i < self.arity, "variable {i} outside arity {}", self.arity);
        let v = i as u32;
        let mut reduced = LinComb::new();
        let mut constant = Scalar::zero(self.field);
        for (m, c) in &self.coeffs {
            if let Some(rest) = m.decrement(v) {
                if rest.is_one() {
                    constant = &constant + c;
                } else {
                    reduced.add_term(rest, c.clone());
                }
            }
        }
        (self.with_coeffs(reduced), constant)
    }

    /// `sum_i x_1^[r_1] ... x_i^[r_i - 1] ... x_n^[r_n] * y_i^[1]` over `2n`
    /// variables, computed monomialwise.
    pub fn partial_combinator(&self) -> DPElement {
        let n = self.arity as u32;
        let mut out = LinComb::new();
        for (m, c) in &self.coeffs {
            for &(v, _) in m.pairs() {
                let rest = m.decrement(v).expect("exponent positive");
                // y_v is a fresh variable, so the product has coefficient 1
                out.add_term(rest.mul(&MultiIndex::var(n + v)), c.clone());
            }
        }
        DPElement {
            arity: 2 * self.arity,
            field: self.field,
            coeffs: out,
        }
    }

    /// The same combinator assembled from [`DPElement::partial`]:
    /// `sum_i (d f / d x_i) * y_i^[1]`, with the constant component
    /// contributing `c * y_i^[1]`.
    pub fn partial_combinator_via_derivatives(&self) -> DPElement {
        let n = self.arity;
        let mut out = DPElement::zero(2 * n, self.field);
        for i in 0..n {
            let (reduced, constant) = self.partial(i);
            let y = DPElement::eta(n + i, 2 * n, self.field);
            let lifted = reduced.lift(2 * n);
            let term = lifted
                .mul(&y)
                .expect("same shape")
                .add(&y.scale(&constant).expect("same field"));
            out = out.add(&term.expect("same shape")).expect("same shape");
        }
        out
    }

    /// Views the element over more variables (the first-block injection).
    pub fn lift(&self, arity: usize) -> DPElement {
        assert!(arity >= self.arity);
        DPElement {
            arity,
            field: self.field,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn counit(&self) -> Vec<Scalar> {
        (0..self.arity as u32)
            .map(|v| self.coeff(&MultiIndex::var(v)))
            .collect()
    }

    pub fn linear(coeffs: &[Scalar], field: FieldSpec) -> Result<DPElement> {
        DPElement::from_terms(
            coeffs.len(),
            field,
            coeffs
                .iter()
                .enumerate()
                .map(|(v, c)| (MultiIndex::var(v as u32), c.clone())),
        )
    }

    /// Over `Q`, the isomorphism onto ordinary reduced polynomials
    /// `x^[k] -> x^k / k!`, truncated at `cap`.
    pub fn to_series(&self, cap: u32) -> Result<SeriesElement> {
        if self.field != FieldSpec::Rationals {
            return Err(Error::shape(
                "divided powers agree with ordinary powers only in characteristic zero",
            ));
        }
        let shape = SeriesShape::capped(self.arity, cap, self.field);
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for (m, c) in &self.coeffs {
            let den: BigInt = m.pairs().iter().map(|&(_, e)| factorial(e)).product();
            let k = Scalar::fraction(&BigInt::one(), &den, self.field)?;
            terms.push((m.clone(), c * &k));
        }
        SeriesElement::from_terms(shape, terms)
    }
}

/// Product of two divided power monomials: integer coefficient and result.
pub(crate) fn monomial_mul(a: &MultiIndex, b: &MultiIndex) -> (BigInt, MultiIndex) {
    let mut k = BigInt::one();
    for &(v, e) in a.pairs() {
        let f = b.exponent(v);
        if f > 0 {
            k *= binomial(e + f, e);
        }
    }
    (k, a.mul(b))
}

/// `m^[n]` for a divided power monomial `m = x_1^[k_1] ... x_j^[k_j]`.
///
/// Peels one variable at a time with `(a*b)^[n] = a^{*n} * b^[n]`, where
/// `(x^[k])^{*n} = (nk)!/(k!)^n x^[nk]`, and finishes with
/// `(x^[k])^[n] = (nk)!/(n!(k!)^n) x^[nk]`. All factors are integers.
pub(crate) fn monomial_power(m: &MultiIndex, n: u32) -> (BigInt, MultiIndex) {
    let pairs = m.pairs();
    let (last, rest) = pairs.split_last().expect("reduced monomial");
    let mut k = BigInt::one();
    for &(_, e) in rest {
        k *= power_product_coeff(n, e).expect("integral by construction");
    }
    k *= dp_power_coeff(n, last.1).expect("integral by construction");
    (
        k,
        MultiIndex::from_pairs(pairs.iter().map(|&(v, e)| (v, e * n))),
    )
}

fn mul_terms(
    a: &LinComb<MultiIndex>,
    b: &LinComb<MultiIndex>,
    field: FieldSpec,
) -> LinComb<MultiIndex> {
    let mut out = LinComb::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let (k, m) = monomial_mul(ma, mb);
            let c = &(ca * cb) * &Scalar::from_integer(&k, field);
            out.add_term(m, c);
        }
    }
    out
}
