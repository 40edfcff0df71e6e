//! The free Zinbiel algebra: linear combinations of nonempty words with the
//! half-shuffle product `(v_1 ... v_n) < w = v_1 . (v_2 ... v_n ⧢ w)`.

use std::collections::HashMap;

use crate::basis::{MultiIndex, Word};
use crate::dividedpower::DPElement;
use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::scalars::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZinElement {
    arity: usize,
    field: FieldSpec,
    coeffs: LinComb<Word>,
}

impl ZinElement {
    pub fn zero(arity: usize, field: FieldSpec) -> Self {
        ZinElement {
            arity,
            field,
            coeffs: LinComb::new(),
        }
    }

    pub fn from_terms(
        arity: usize,
        field: FieldSpec,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> Result<Self> {
        let mut coeffs = LinComb::new();
        for (w, c) in terms {
            if c.spec() != field {
                return Err(Error::MixedFields(c.spec(), field));
            }
            if w.max_letter() as usize >= arity {
                return Err(Error::Arity {
                    name: format!("x{}", w.max_letter() + 1),
                    arity,
                });
            }
            coeffs.add_term(w, c);
        }
        Ok(ZinElement {
            arity,
            field,
            coeffs,
        })
    }

    /// A single word with coefficient one.
    pub fn word(letters: &[u32], arity: usize, field: FieldSpec) -> Result<Self> {
        Self::from_terms(
            arity,
            field,
            [(Word::new(letters.to_vec()), Scalar::one(field))],
        )
    }

    pub fn eta(i: usize, arity: usize, field: FieldSpec) -> Self {
        assert!(i < arity, "variable {i} outside arity {arity}");
        ZinElement {
            arity,
            field,
            coeffs: LinComb::single(Word::letter(i as u32), Scalar::one(field)),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &LinComb<Word> {
        &self.coeffs
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.coeffs
            .get(w)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Length of the longest word.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|w| w.len() as u32).max()
    }

    fn check_same(&self, other: &ZinElement) -> Result<()> {
        if self.arity != other.arity || self.field != other.field {
            return Err(Error::shape(format!(
                "Zinbiel elements over ({}, {}) and ({}, {})",
                self.arity, self.field, other.arity, other.field
            )));
        }
        Ok(())
    }

    fn with_coeffs(&self, coeffs: LinComb<Word>) -> ZinElement {
        ZinElement {
            arity: self.arity,
            field: self.field,
            coeffs,
        }
    }

    pub fn add(&self, other: &ZinElement) -> Result<ZinElement> {
        self.check_same(other)?;
        let mut coeffs = self.coeffs.clone();
        coeffs.add_assign(&other.coeffs);
        Ok(self.with_coeffs(coeffs))
    }

    pub fn neg(&self) -> ZinElement {
        self.with_coeffs(self.coeffs.negated())
    }

    pub fn sub(&self, other: &ZinElement) -> Result<ZinElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Result<ZinElement> {
        if s.spec() != self.field {
            return Err(Error::MixedFields(s.spec(), self.field));
        }
        Ok(self.with_coeffs(self.coeffs.scaled(s)))
    }

    /// `self < other`.
    pub fn half_shuffle(&self, other: &ZinElement) -> Result<ZinElement> {
        self.check_same(other)?;
        Ok(self.with_coeffs(half_shuffle_terms(&self.coeffs, &other.coeffs)))
    }

    /// The commutative shuffle product `a < b + b < a`.
    pub fn shuffle(&self, other: &ZinElement) -> Result<ZinElement> {
        self.half_shuffle(other)?.add(&other.half_shuffle(self)?)
    }

    /// `e_1 < (e_2 < (... < e_k))`.
    pub fn right_nested(elems: &[ZinElement]) -> Result<ZinElement> {
        let (last, init) = elems
            .split_last()
            .ok_or_else(|| Error::shape("right-nested product of an empty sequence"))?;
        let mut acc = last.clone();
        for e in init.iter().rev() {
            acc = e.half_shuffle(&acc)?;
        }
        Ok(acc)
    }

    /// Word `y_{i_1} ... y_{i_l}` becomes `args[i_1] < (... < args[i_l])`.
    pub fn substitute(&self, args: &[ZinElement], target_arity: usize) -> Result<ZinElement> {
        if args.len() != self.arity {
            return Err(Error::shape(format!(
                "{} arguments for a Zinbiel element in {} variables",
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
        // words of f often share suffixes, and the right-nested product is
        // built from the right
        let mut cache: HashMap<&[u32], LinComb<Word>> = HashMap::new();
        let mut out = LinComb::new();
        for (w, c) in &self.coeffs {
            let value = nested_suffix(w.letters(), args, &mut cache);
            out.add_scaled(&value, c);
        }
        Ok(ZinElement {
            arity: target_arity,
            field: self.field,
            coeffs: out,
        })
    }

    /// Deconcatenation derivative in `F<X>_+ (+) F`: a word starting with
    /// `x_i` loses that letter, and the bare word `x_i` contributes to the
    /// constant component.
    pub fn partial(&self, i: usize) -> (ZinElement, Scalar) {
        assert!(i < self.arity, "variable {i} outside arity {}", self.arity);
        let mut reduced = LinComb::new();
        let mut constant = Scalar::zero(self.field);
        for (w, c) in &self.coeffs {
            if w.first() as usize != i {
                continue;
            }
            match w.tail() {
                Some(rest) => reduced.add_term(rest, c.clone()),
                None => constant = &constant + c,
            }
        }
        (self.with_coeffs(reduced), constant)
    }

    /// Moves the first letter of every word into the second block:
    /// `x_i w -> y_i w` over `2n` variables.
    pub fn partial_combinator(&self) -> ZinElement {
        let n = self.arity as u32;
        let coeffs = self
            .coeffs
            .iter()
            .map(|(w, c)| {
                let mut letters = w.letters().to_vec();
                letters[0] += n;
                (Word::new(letters), c.clone())
            })
            .collect();
        ZinElement {
            arity: 2 * self.arity,
            field: self.field,
            coeffs,
        }
    }

    /// `sum_i y_i . (d f / d x_i)`, with `y_i . 1 = y_i`.
    pub fn partial_combinator_via_derivatives(&self) -> ZinElement {
        let n = self.arity;
        let mut out = LinComb::new();
        for i in 0..n {
            let (reduced, constant) = self.partial(i);
            let y = (n + i) as u32;
            for (w, c) in reduced.terms() {
                let mut letters = vec![y];
                letters.extend_from_slice(w.letters());
                out.add_term(Word::new(letters), c.clone());
            }
            out.add_term(Word::letter(y), constant);
        }
        ZinElement {
            arity: 2 * n,
            field: self.field,
            coeffs: out,
        }
    }

    /// Views the element over more variables (the first-block injection).
    pub fn lift(&self, arity: usize) -> ZinElement {
        assert!(arity >= self.arity);
        ZinElement {
            arity,
            field: self.field,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn counit(&self) -> Vec<Scalar> {
        (0..self.arity as u32)
            .map(|v| self.coeff(&Word::letter(v)))
            .collect()
    }

    pub fn linear(coeffs: &[Scalar], field: FieldSpec) -> Result<ZinElement> {
        ZinElement::from_terms(
            coeffs.len(),
            field,
            coeffs
                .iter()
                .enumerate()
                .map(|(v, c)| (Word::letter(v as u32), c.clone())),
        )
    }

    /// The monad morphism from divided powers: `x_1^[r_1] ... x_p^[r_p]`
    /// maps to the sum of all distinct words with `x_i` repeated `r_i`
    /// times, built as the shuffle of the constant blocks.
    pub fn from_divided(f: &DPElement) -> ZinElement {
        let mut out = LinComb::new();
        for (m, c) in f.terms() {
            for w in distinct_arrangements(m) {
                out.add_term(w, c.clone());
            }
        }
        ZinElement {
            arity: f.arity(),
            field: f.field(),
            coeffs: out,
        }
    }

    /// The candidate integral: erases the block distinction, sending both
    /// `x_i` and `y_i` to `x_i`. `self` must have even arity.
    pub fn integral_candidate(&self) -> Result<ZinElement> {
        if !self.arity.is_multiple_of(2) {
            return Err(Error::shape(format!(
                "integral of an element in an odd number ({}) of variables",
                self.arity
            )));
        }
        let n = (self.arity / 2) as u32;
        let coeffs = self
            .coeffs
            .iter()
            .map(|(w, c)| (w.map_letters(|&v| v % n), c.clone()))
            .collect();
        Ok(ZinElement {
            arity: n as usize,
            field: self.field,
            coeffs,
        })
    }
}

fn nested_suffix<'w>(
    letters: &'w [u32],
    args: &[ZinElement],
    cache: &mut HashMap<&'w [u32], LinComb<Word>>,
) -> LinComb<Word> {
    if let Some(hit) = cache.get(letters) {
        return hit.clone();
    }
    let head = &args[letters[0] as usize].coeffs;
    let value = if letters.len() == 1 {
        head.clone()
    } else {
        let rest = nested_suffix(&letters[1..], args, cache);
        half_shuffle_terms(head, &rest)
    };
    cache.insert(letters, value.clone());
    value
}

fn half_shuffle_terms(a: &LinComb<Word>, b: &LinComb<Word>) -> LinComb<Word> {
    let mut out = LinComb::new();
    let mut buf = Vec::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let c = ca * cb;
            let (head, tail) = wa.letters().split_first().expect("nonempty word");
            for_each_shuffle(tail, wb.letters(), |merged| {
                buf.clear();
                buf.push(*head);
                buf.extend_from_slice(merged);
                out.add_term(Word::new(buf.clone()), c.clone());
            });
        }
    }
    out
}

/// Calls `visit` on every interleaving of `a` and `b`, with multiplicity.
///
/// Interleavings are the `(|a|+|b| choose |a|)` bit patterns with `|a|` set
/// bits, visited in increasing order via Gosper's hack.
pub(crate) fn for_each_shuffle(a: &[u32], b: &[u32], mut visit: impl FnMut(&[u32])) {
    let (p, total) = (a.len(), a.len() + b.len());
    assert!(total < 64, "words too long to shuffle");
    let mut merged = vec![0u32; total];
    if p == 0 {
        visit(b);
        return;
    }
    let limit = 1u64 << total;
    let mut mask: u64 = (1u64 << p) - 1;
    while mask < limit {
        let (mut ia, mut ib) = (0, 0);
        for (pos, slot) in merged.iter_mut().enumerate() {
            if mask >> pos & 1 == 1 {
                *slot = a[ia];
                ia += 1;
            } else {
                *slot = b[ib];
                ib += 1;
            }
        }
        visit(&merged);
        let low = mask & mask.wrapping_neg();
        let ripple = mask + low;
        mask = (((ripple ^ mask) >> 2) / low) | ripple;
    }
}

fn distinct_arrangements(m: &MultiIndex) -> Vec<Word> {
    // shuffling blocks of pairwise distinct letters never produces a
    // repeated word, so every coefficient is one
    let mut words: Vec<Vec<u32>> = vec![Vec::new()];
    for &(v, e) in m.pairs() {
        let block = vec![v; e as usize];
        let mut next = Vec::new();
        for w in &words {
            for_each_shuffle(w, &block, |merged| next.push(merged.to_vec()));
        }
        words = next;
    }
    words.into_iter().map(Word::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn zin(arity: usize, terms: &[(&[u32], i64)]) -> ZinElement {
        ZinElement::from_terms(
            arity,
            Q,
            terms
                .iter()
                .map(|(w, c)| (Word::new(w.to_vec()), Scalar::from_i64(*c, Q))),
        )
        .unwrap()
    }

    #[test]
    fn half_shuffle_examples() {
        let x = ZinElement::eta(0, 3, Q);
        let y = ZinElement::eta(1, 3, Q);
        let z = ZinElement::eta(2, 3, Q);
        assert_eq!(x.half_shuffle(&y).unwrap(), zin(3, &[(&[0, 1], 1)]));
        let xy = zin(3, &[(&[0, 1], 1)]);
        assert_eq!(
            xy.half_shuffle(&z).unwrap(),
            zin(3, &[(&[0, 1, 2], 1), (&[0, 2, 1], 1)])
        );
        let yz = zin(3, &[(&[1, 2], 1)]);
        assert_eq!(x.half_shuffle(&yz).unwrap(), zin(3, &[(&[0, 1, 2], 1)]));
    }

    #[test]
    fn shuffle_examples() {
        let x = ZinElement::eta(0, 2, Q);
        let y = ZinElement::eta(1, 2, Q);
        assert_eq!(x.shuffle(&x).unwrap(), zin(2, &[(&[0, 0], 2)]));
        assert_eq!(
            x.shuffle(&y).unwrap(),
            zin(2, &[(&[0, 1], 1), (&[1, 0], 1)])
        );
    }

    #[test]
    fn right_nested_examples() {
        let x = ZinElement::eta(0, 3, Q);
        let y = ZinElement::eta(1, 3, Q);
        let z = ZinElement::eta(2, 3, Q);
        assert_eq!(
            ZinElement::right_nested(std::slice::from_ref(&x)).unwrap(),
            x
        );
        assert_eq!(
            ZinElement::right_nested(&[x.clone(), y, z.clone()]).unwrap(),
            zin(3, &[(&[0, 1, 2], 1)])
        );
        let xy = zin(3, &[(&[0, 1], 1)]);
        assert_eq!(
            ZinElement::right_nested(&[xy, z]).unwrap(),
            zin(3, &[(&[0, 1, 2], 1), (&[0, 2, 1], 1)])
        );
        assert!(ZinElement::right_nested(&[]).is_err());
    }

    #[test]
    fn substitution_with_coefficient_two() {
        // q = u.v.u with u -> x.y, v -> v; letters x=0, y=1, v=2
        let q = zin(2, &[(&[0, 1, 0], 1)]);
        let u = zin(3, &[(&[0, 1], 1)]);
        let v = ZinElement::eta(2, 3, Q);
        assert_eq!(
            q.substitute(&[u, v], 3).unwrap(),
            zin(
                3,
                &[
                    (&[0, 1, 2, 0, 1], 1),
                    (&[0, 2, 1, 0, 1], 1),
                    (&[0, 2, 0, 1, 1], 2)
                ]
            )
        );
    }

    #[test]
    fn substitution_small_cases() {
        let g = zin(2, &[(&[0, 1], 3), (&[1], 1)]);
        let y1 = ZinElement::eta(0, 1, Q);
        assert_eq!(y1.substitute(std::slice::from_ref(&g), 2).unwrap(), g);
        let uu = zin(1, &[(&[0, 0], 1)]);
        let x = ZinElement::eta(0, 1, Q);
        assert_eq!(uu.substitute(&[x], 1).unwrap(), zin(1, &[(&[0, 0], 1)]));
        let f = zin(2, &[(&[0, 1], 1), (&[0], 1)]);
        let out = f
            .substitute(&[ZinElement::eta(0, 1, Q), ZinElement::zero(1, Q)], 1)
            .unwrap();
        assert_eq!(out, zin(1, &[(&[0], 1)]));
    }

    #[test]
    fn derivative_examples() {
        let f = zin(2, &[(&[0, 1, 0], 1)]);
        assert_eq!(f.partial(0), (zin(2, &[(&[1, 0], 1)]), Scalar::zero(Q)));
        assert_eq!(f.partial(1), (ZinElement::zero(2, Q), Scalar::zero(Q)));
        let x = ZinElement::eta(0, 1, Q);
        assert_eq!(x.partial(0), (ZinElement::zero(1, Q), Scalar::one(Q)));
    }

    #[test]
    fn partial_combinator_examples() {
        // x=0, y=1, x*=2, y*=3
        let xy = zin(2, &[(&[0, 1], 1)]);
        assert_eq!(xy.partial_combinator(), zin(4, &[(&[2, 1], 1)]));
        assert_eq!(
            ZinElement::eta(0, 1, Q).partial_combinator(),
            ZinElement::eta(1, 2, Q)
        );
        let sym = zin(2, &[(&[0, 1], 1), (&[1, 0], 1)]);
        assert_eq!(
            sym.partial_combinator(),
            zin(4, &[(&[2, 1], 1), (&[3, 0], 1)])
        );
        for f in [xy, sym, zin(2, &[(&[1], 4), (&[1, 1, 0], -1)])] {
            assert_eq!(
                f.partial_combinator(),
                f.partial_combinator_via_derivatives()
            );
        }
    }

    #[test]
    fn counit_examples() {
        assert_eq!(
            ZinElement::eta(0, 2, Q).counit(),
            vec![Scalar::one(Q), Scalar::zero(Q)]
        );
        assert_eq!(zin(2, &[(&[0, 1], 1)]).counit(), vec![Scalar::zero(Q); 2]);
        assert_eq!(
            zin(1, &[(&[0], 3), (&[0, 0], 1)]).counit(),
            vec![Scalar::from_i64(3, Q)]
        );
    }

    #[test]
    fn from_divided_examples() {
        let x2 = DPElement::monomial(MultiIndex::var_pow(0, 2), 1, Q).unwrap();
        assert_eq!(ZinElement::from_divided(&x2), zin(1, &[(&[0, 0], 1)]));
        let xy = DPElement::monomial(MultiIndex::from_pairs([(0, 1), (1, 1)]), 2, Q).unwrap();
        assert_eq!(
            ZinElement::from_divided(&xy),
            zin(2, &[(&[0, 1], 1), (&[1, 0], 1)])
        );
        let x2y = DPElement::monomial(MultiIndex::from_pairs([(0, 2), (1, 1)]), 2, Q).unwrap();
        assert_eq!(ZinElement::from_divided(&x2y).terms().len(), 3);
    }

    #[test]
    fn not_compatible_with_differentials() {
        let f = DPElement::monomial(MultiIndex::from_pairs([(0, 1), (1, 1)]), 2, Q).unwrap();
        let left = ZinElement::from_divided(&f.partial_combinator());
        let right = ZinElement::from_divided(&f).partial_combinator();
        assert_eq!(
            left,
            zin(4, &[(&[2, 1], 1), (&[1, 2], 1), (&[3, 0], 1), (&[0, 3], 1)])
        );
        assert_eq!(right, zin(4, &[(&[2, 1], 1), (&[3, 0], 1)]));
    }

    #[test]
    fn integral_candidate_examples() {
        let starred = zin(4, &[(&[2, 1], 1)]);
        let xy = zin(2, &[(&[0, 1], 1)]);
        assert_eq!(starred.integral_candidate().unwrap(), xy);
        assert_eq!(xy.partial_combinator().integral_candidate().unwrap(), xy);
        assert_eq!(xy.lift(4).integral_candidate().unwrap(), xy);
        assert!(ZinElement::eta(0, 3, Q).integral_candidate().is_err());
    }

    #[test]
    fn shuffle_counts() {
        let mut n = 0;
        for_each_shuffle(&[0, 1], &[2, 3, 4], |_| n += 1);
        assert_eq!(n, 10);
        let mut seen = Vec::new();
        for_each_shuffle(&[], &[7], |w| seen.push(w.to_vec()));
        assert_eq!(seen, vec![vec![7]]);
    }
}
