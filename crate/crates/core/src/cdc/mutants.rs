//! Deliberately wrong differential combinators, used to confirm that the
//! axiom checkers can fail.

use rand_xoshiro::SplitMix64;

use super::DifferentialTheory;
use crate::basis::Word;
use crate::dividedpower::DPElement;
use crate::error::Result;
use crate::generators::GenConfig;
use crate::notation::{Grammar, VarNames};
use crate::powerseries::SeriesElement;
use crate::scalars::{FieldSpec, Scalar};
use crate::zinbiel::ZinElement;

/// A theory whose `∂` is replaced; everything else is delegated.
pub struct MutatedTheory<T: DifferentialTheory> {
    inner: T,
    label: &'static str,
    partial: fn(&T::Elem) -> T::Elem,
}

impl<T: DifferentialTheory> MutatedTheory<T> {
    pub fn new(inner: T, label: &'static str, partial: fn(&T::Elem) -> T::Elem) -> Self {
        MutatedTheory {
            inner,
            label,
            partial,
        }
    }
}

/// Stars the last letter of each word instead of the first.
pub fn zinbiel_star_last(f: &ZinElement) -> ZinElement {
    let n = f.arity() as u32;
    let terms = f.terms().iter().map(|(w, c)| {
        let mut letters = w.letters().to_vec();
        *letters.last_mut().expect("nonempty") += n;
        (Word::new(letters), c.clone())
    });
    ZinElement::from_terms(2 * f.arity(), f.field(), terms).expect("valid")
}

/// Drops the summand of the first variable.
pub fn series_drop_first(f: &SeriesElement) -> SeriesElement {
    let d = f.partial_combinator();
    let dual_of_first = f.arity() as u32;
    let terms = d
        .terms()
        .iter()
        .filter(|(m, _)| m.exponent(dual_of_first) == 0)
        .map(|(m, c)| (m.clone(), c.clone()));
    SeriesElement::from_terms(d.shape(), terms).expect("valid")
}

/// Multiplies each summand by the exponent it lowered, as for ordinary
/// powers: `x^[k] -> k x^[k-1] y^[1]`.
pub fn divided_extra_factor(f: &DPElement) -> DPElement {
    let d = f.partial_combinator();
    let n = f.arity() as u32;
    let terms = d.terms().iter().map(|(m, c)| {
        let &(dual, _) = m
            .pairs()
            .iter()
            .find(|&&(v, _)| v >= n)
            .expect("one dual variable");
        let k = m.exponent(dual - n) + 1;
        (m.clone(), c * &Scalar::from_i64(k as i64, f.field()))
    });
    DPElement::from_terms(d.arity(), d.field(), terms).expect("valid")
}

impl<T: DifferentialTheory> DifferentialTheory for MutatedTheory<T> {
    type Elem = T::Elem;

    fn name(&self) -> String {
        format!("{} with {}", self.inner.name(), self.label)
    }

    fn field(&self) -> FieldSpec {
        self.inner.field()
    }

    fn grammar(&self) -> Grammar {
        self.inner.grammar()
    }

    fn arity_of(&self, e: &T::Elem) -> usize {
        self.inner.arity_of(e)
    }

    fn zero(&self, arity: usize) -> T::Elem {
        self.inner.zero(arity)
    }

    fn eta(&self, i: usize, arity: usize) -> T::Elem {
        self.inner.eta(i, arity)
    }

    fn add(&self, a: &T::Elem, b: &T::Elem) -> Result<T::Elem> {
        self.inner.add(a, b)
    }

    fn scale(&self, a: &T::Elem, s: &Scalar) -> Result<T::Elem> {
        self.inner.scale(a, s)
    }

    fn substitute(&self, f: &T::Elem, args: &[T::Elem], target_arity: usize) -> Result<T::Elem> {
        self.inner.substitute(f, args, target_arity)
    }

    fn partial_combinator(&self, f: &T::Elem) -> T::Elem {
        (self.partial)(f)
    }

    fn counit(&self, f: &T::Elem) -> Vec<Scalar> {
        self.inner.counit(f)
    }

    fn linear(&self, coeffs: &[Scalar]) -> T::Elem {
        self.inner.linear(coeffs)
    }

    fn term_degrees(&self, f: &T::Elem) -> Vec<u32> {
        self.inner.term_degrees(f)
    }

    fn render(&self, f: &T::Elem, names: &VarNames) -> String {
        self.inner.render(f, names)
    }

    fn build_parsed(&self, terms: Vec<(Vec<(u32, u32)>, Scalar)>, arity: usize) -> Result<T::Elem> {
        self.inner.build_parsed(terms, arity)
    }

    fn basis(&self, arity: usize, max_degree: u32) -> Result<Vec<T::Elem>> {
        self.inner.basis(arity, max_degree)
    }

    fn sample(&self, rng: &mut SplitMix64, arity: usize, degree: u32, cfg: &GenConfig) -> T::Elem {
        self.inner.sample(rng, arity, degree, cfg)
    }

    fn default_config(&self, seed: u64) -> GenConfig {
        self.inner.default_config(seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::MultiIndex;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn mutants_differ_from_the_real_combinator() {
        let z = ZinElement::word(&[0, 1], 2, Q).unwrap();
        assert_eq!(
            zinbiel_star_last(&z),
            ZinElement::word(&[0, 3], 4, Q).unwrap()
        );
        let x2 = DPElement::monomial(MultiIndex::var_pow(0, 2), 1, Q).unwrap();
        assert_eq!(
            divided_extra_factor(&x2),
            x2.partial_combinator()
                .scale(&Scalar::from_i64(2, Q))
                .unwrap()
        );
        let s = SeriesElement::eta(0, crate::powerseries::SeriesShape::capped(1, 3, Q));
        assert!(series_drop_first(&s).is_zero());
    }
}
