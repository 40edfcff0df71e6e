//! Seeded random elements, exhaustive basis enumeration, and brute-force
//! oracles for checking the main implementations.
//!
//! Randomness comes from SplitMix64 (Steele, Lea and Flood; increment
//! `0x9e3779b97f4a7c15`, finalizer multipliers `0xbf58476d1ce4e5b9` and
//! `0x94d049bb133111eb`), so a seed fixes every generated value on every
//! platform.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::basis::{MultiIndex, Word};
use crate::cdc::{DifferentialTheory, TheoryMorphism};
use crate::dividedpower::DPElement;
use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::powerseries::{SeriesElement, SeriesShape};
use crate::scalars::{FieldSpec, Scalar};
use crate::zinbiel::ZinElement;

/// Largest basis or oracle result the enumerators will build.
pub const ENUMERATION_LIMIT: u128 = 100_000;

/// Bounds for random generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    /// Arities are drawn from `1..=max_arity`.
    pub max_arity: usize,
    /// Degree (word length) bound for elements and outer morphisms.
    pub max_degree: u32,
    /// Degree bound for morphisms substituted into others.
    pub inner_degree: u32,
    pub max_terms: usize,
    /// Coefficients are drawn from `-coeff_bound..=coeff_bound` minus zero.
    pub coeff_bound: i64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            max_arity: 3,
            max_degree: 5,
            inner_degree: 3,
            max_terms: 4,
            coeff_bound: 3,
        }
    }
}

impl GenConfig {
    pub fn with_seed(seed: u64) -> Self {
        GenConfig {
            seed,
            ..Self::default()
        }
    }
}

pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Seed for trial `trial` of stream `stream`: independent of how trials are
/// scheduled, and replayable on its own.
pub fn trial_seed(seed: u64, stream: u64, trial: u64) -> u64 {
    let mut r = rng(seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let a = r.next_u64();
    rng(a ^ trial.wrapping_mul(0xd1b5_4a32_d192_ed03)).next_u64()
}

pub fn below(rng: &mut SplitMix64, n: u64) -> u64 {
    assert!(n > 0);
    rng.next_u64() % n
}

/// A nonzero coefficient, redrawn if it vanishes in the field.
pub fn random_scalar(rng: &mut SplitMix64, field: FieldSpec, bound: i64) -> Scalar {
    loop {
        let k = below(rng, 2 * bound as u64) as i64 - bound;
        let k = if k >= 0 { k + 1 } else { k };
        let s = Scalar::from_i64(k, field);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn random_arity(rng: &mut SplitMix64, cfg: &GenConfig) -> usize {
    1 + below(rng, cfg.max_arity as u64) as usize
}

/// A monomial whose degree is drawn from `min_degree..=max_degree`.
pub fn random_monomial(
    rng: &mut SplitMix64,
    arity: usize,
    min_degree: u32,
    max_degree: u32,
) -> MultiIndex {
    let d = min_degree + below(rng, (max_degree - min_degree + 1) as u64) as u32;
    MultiIndex::from_pairs((0..d).map(|_| (below(rng, arity as u64) as u32, 1)))
}

pub fn random_word(rng: &mut SplitMix64, arity: usize, max_len: u32) -> Word {
    let len = 1 + below(rng, max_len as u64);
    Word::new((0..len).map(|_| below(rng, arity as u64) as u32).collect())
}

fn term_count(rng: &mut SplitMix64, cfg: &GenConfig) -> usize {
    1 + below(rng, cfg.max_terms as u64) as usize
}

/// A nonzero series in the given shape. Polynomials may get a constant term;
/// the degree never exceeds the cap.
pub fn random_series(
    rng: &mut SplitMix64,
    shape: SeriesShape,
    max_degree: u32,
    cfg: &GenConfig,
) -> SeriesElement {
    let min = u32::from(shape.reduced);
    let max = match shape.cap {
        crate::powerseries::Cap::Bounded(c) => max_degree.min(c),
        crate::powerseries::Cap::Unbounded => max_degree,
    }
    .max(min);
    let mut terms = LinComb::new();
    for _ in 0..term_count(rng, cfg) {
        let m = random_monomial(rng, shape.arity, min, max);
        if terms.get(&m).is_none() {
            terms.add_term(m, random_scalar(rng, shape.field, cfg.coeff_bound));
        }
    }
    SeriesElement::from_terms(shape, terms.iter().map(|(m, c)| (m.clone(), c.clone())))
        .expect("valid by construction")
}

pub fn random_divided(
    rng: &mut SplitMix64,
    arity: usize,
    field: FieldSpec,
    max_degree: u32,
    cfg: &GenConfig,
) -> DPElement {
    let mut terms = LinComb::new();
    for _ in 0..term_count(rng, cfg) {
        let m = random_monomial(rng, arity, 1, max_degree.max(1));
        if terms.get(&m).is_none() {
            terms.add_term(m, random_scalar(rng, field, cfg.coeff_bound));
        }
    }
    DPElement::from_terms(
        arity,
        field,
        terms.iter().map(|(m, c)| (m.clone(), c.clone())),
    )
    .expect("valid by construction")
}

pub fn random_zinbiel(
    rng: &mut SplitMix64,
    arity: usize,
    field: FieldSpec,
    max_len: u32,
    cfg: &GenConfig,
) -> ZinElement {
    let mut terms = LinComb::new();
    for _ in 0..term_count(rng, cfg) {
        let w = random_word(rng, arity, max_len.max(1));
        if terms.get(&w).is_none() {
            terms.add_term(w, random_scalar(rng, field, cfg.coeff_bound));
        }
    }
    ZinElement::from_terms(
        arity,
        field,
        terms.iter().map(|(w, c)| (w.clone(), c.clone())),
    )
    .expect("valid by construction")
}

/// A morphism `n -> m` whose components have degree at most `degree`.
pub fn random_morphism<T: DifferentialTheory>(
    theory: &T,
    rng: &mut SplitMix64,
    cfg: &GenConfig,
    n: usize,
    m: usize,
    degree: u32,
) -> TheoryMorphism<T> {
    let components = (0..m).map(|_| theory.sample(rng, n, degree, cfg)).collect();
    TheoryMorphism::new(theory, n, components).expect("valid by construction")
}

fn check_count(count: u128) -> Result<()> {
    if count > ENUMERATION_LIMIT {
        Err(Error::TooLarge(count))
    } else {
        Ok(())
    }
}

/// All monomials of degree `1..=max_degree` (from 0 when `with_one`), in
/// canonical order.
pub fn enumerate_monomials(
    arity: usize,
    max_degree: u32,
    with_one: bool,
) -> Result<Vec<MultiIndex>> {
    // C(arity + d, d) monomials of degree at most d
    let mut count: u128 = 1;
    for i in 1..=max_degree as u128 {
        count = count * (arity as u128 + i) / i;
        check_count(count)?;
    }
    let mut out = Vec::new();
    let mut dense = vec![0u32; arity];
    fn walk(dense: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<MultiIndex>) {
        if pos == dense.len() {
            out.push(MultiIndex::from_dense(dense));
            return;
        }
        for e in 0..=left {
            dense[pos] = e;
            walk(dense, pos + 1, left - e, out);
        }
        dense[pos] = 0;
    }
    walk(&mut dense, 0, max_degree, &mut out);
    out.retain(|m| with_one || !m.is_one());
    out.sort();
    Ok(out)
}

/// All words of length `1..=max_len`, in canonical order.
pub fn enumerate_words(arity: usize, max_len: u32) -> Result<Vec<Word>> {
    let mut count: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..max_len {
        layer *= arity as u128;
        count += layer;
        check_count(count)?;
    }
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for v in 0..arity as u32 {
                let mut w = w.clone();
                w.push(v);
                out.push(Word::new(w.clone()));
                next.push(w);
            }
        }
        frontier = next;
    }
    out.sort();
    Ok(out)
}

/// Deliberately naive recomputations, sharing nothing with the main code
/// beyond scalars and the element containers.
pub mod oracle {
    use std::collections::{BTreeMap, BTreeSet};

    use super::*;

    /// Every interleaving of `a` and `b`, listed with multiplicity by
    /// choosing the source of each position in turn.
    pub fn interleavings(a: &[u32], b: &[u32]) -> Vec<Vec<u32>> {
        if a.is_empty() {
            return vec![b.to_vec()];
        }
        if b.is_empty() {
            return vec![a.to_vec()];
        }
        let mut out = Vec::new();
        for mut rest in interleavings(&a[1..], b) {
            rest.insert(0, a[0]);
            out.push(rest);
        }
        for mut rest in interleavings(a, &b[1..]) {
            rest.insert(0, b[0]);
            out.push(rest);
        }
        out
    }

    /// The half-shuffle by enumeration of interleavings.
    pub fn shuffle_enum(a: &ZinElement, b: &ZinElement) -> Result<ZinElement> {
        if a.arity() != b.arity() || a.field() != b.field() {
            return Err(Error::shape("oracle inputs differ in shape"));
        }
        let mut total: u128 = 0;
        let mut acc: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
        for (wa, ca) in a.terms() {
            for (wb, cb) in b.terms() {
                for tail in interleavings(&wa.letters()[1..], wb.letters()) {
                    total += 1;
                    check_count(total)?;
                    let mut w = vec![wa.first()];
                    w.extend(tail);
                    let slot = acc.entry(w).or_insert_with(|| Scalar::zero(a.field()));
                    *slot = &*slot + &(ca * cb);
                }
            }
        }
        ZinElement::from_terms(
            a.arity(),
            a.field(),
            acc.into_iter().map(|(w, c)| (Word::new(w), c)),
        )
    }

    fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
        if items.len() <= 1 {
            return vec![items.to_vec()];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let head = rest.remove(i);
            for mut p in permutations(&rest) {
                p.insert(0, head);
                out.push(p);
            }
        }
        out
    }

    /// The divided power to Zinbiel map, by listing every permutation of
    /// each monomial's letters and keeping one copy of each distinct word.
    pub fn symmetrized_expand(f: &DPElement) -> Result<ZinElement> {
        let mut acc: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
        for (m, c) in f.terms() {
            let letters: Vec<u32> = m
                .pairs()
                .iter()
                .flat_map(|&(v, e)| std::iter::repeat_n(v, e as usize))
                .collect();
            let count: u128 = (1..=letters.len() as u128).product();
            check_count(count)?;
            let distinct: BTreeSet<Vec<u32>> = permutations(&letters).into_iter().collect();
            for w in distinct {
                let slot = acc.entry(w).or_insert_with(|| Scalar::zero(f.field()));
                *slot = &*slot + c;
            }
        }
        ZinElement::from_terms(
            f.arity(),
            f.field(),
            acc.into_iter().map(|(w, c)| (Word::new(w), c)),
        )
    }

    type Dense = BTreeMap<Vec<u32>, Scalar>;

    fn dense_mul(a: &Dense, b: &Dense, field: FieldSpec) -> Dense {
        let mut out = Dense::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let slot = out.entry(e).or_insert_with(|| Scalar::zero(field));
                *slot = &*slot + &(ca * cb);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Series substitution by full expansion, one factor at a time, with
    /// truncation only at the very end.
    pub fn naive_substitute(
        f: &SeriesElement,
        args: &[SeriesElement],
        target_arity: usize,
    ) -> Result<SeriesElement> {
        if args.len() != f.arity() {
            return Err(Error::shape("oracle argument count"));
        }
        let field = f.field();
        let dense_args: Vec<Dense> = args
            .iter()
            .map(|a| {
                a.terms()
                    .iter()
                    .map(|(m, c)| (m.to_dense(target_arity), c.clone()))
                    .collect()
            })
            .collect();
        let mut total = Dense::new();
        for (m, c) in f.terms() {
            let mut term: Dense = [(vec![0; target_arity], c.clone())].into_iter().collect();
            for (v, &e) in m.to_dense(f.arity()).iter().enumerate() {
                for _ in 0..e {
                    term = dense_mul(&term, &dense_args[v], field);
                    check_count(term.len() as u128)?;
                }
            }
            for (e, c) in term {
                let slot = total.entry(e).or_insert_with(|| Scalar::zero(field));
                *slot = &*slot + &c;
            }
        }
        let shape = SeriesShape {
            arity: target_arity,
            reduced: f.shape().reduced && !total.contains_key(&vec![0; target_arity]),
            ..f.shape()
        };
        SeriesElement::from_terms(
            shape,
            total
                .into_iter()
                .map(|(e, c)| (MultiIndex::from_dense(&e), c)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn same_seed_same_element() {
        let cfg = GenConfig::default();
        let a = random_zinbiel(&mut rng(7), 2, Q, 4, &cfg);
        let b = random_zinbiel(&mut rng(7), 2, Q, 4, &cfg);
        assert_eq!(a, b);
        assert_ne!(trial_seed(1, 0, 0), trial_seed(1, 0, 1));
        assert_ne!(trial_seed(1, 0, 0), trial_seed(1, 1, 0));
    }

    #[test]
    fn draws_respect_bounds() {
        let cfg = GenConfig::default();
        let f2 = FieldSpec::prime(2).unwrap();
        let mut r = rng(1);
        for _ in 0..1000 {
            let s = random_series(&mut r, SeriesShape::capped(3, 3, f2), 5, &cfg);
            assert!(!s.is_zero());
            assert!(s.degree().unwrap() <= 3);
            assert!(s.terms().len() <= cfg.max_terms);
            let d = random_divided(&mut r, 2, Q, 4, &cfg);
            assert!(!d.is_zero() && d.degree().unwrap() <= 4);
            let z = random_zinbiel(&mut r, 2, f2, 3, &cfg);
            assert!(!z.is_zero() && z.degree().unwrap() <= 3);
        }
    }

    #[test]
    fn basis_counts() {
        let words = enumerate_words(2, 2).unwrap();
        assert_eq!(words.len(), 6);
        assert_eq!(words[0], Word::letter(0));
        assert_eq!(words[5], Word::new(vec![1, 1]));
        let dp = enumerate_monomials(1, 3, false).unwrap();
        assert_eq!(
            dp,
            vec![
                MultiIndex::var_pow(0, 1),
                MultiIndex::var_pow(0, 2),
                MultiIndex::var_pow(0, 3)
            ]
        );
        let ps = enumerate_monomials(2, 2, false).unwrap();
        assert_eq!(ps.len(), 5);
        assert_eq!(enumerate_monomials(2, 2, true).unwrap().len(), 6);
        assert!(matches!(enumerate_words(10, 6), Err(Error::TooLarge(_))));
    }

    #[test]
    fn oracle_examples() {
        let xy = ZinElement::word(&[0, 1], 3, Q).unwrap();
        let z = ZinElement::eta(2, 3, Q);
        let expect = ZinElement::from_terms(
            3,
            Q,
            [
                (Word::new(vec![0, 1, 2]), Scalar::one(Q)),
                (Word::new(vec![0, 2, 1]), Scalar::one(Q)),
            ],
        )
        .unwrap();
        assert_eq!(oracle::shuffle_enum(&xy, &z).unwrap(), expect);
        let m = DPElement::monomial(MultiIndex::from_pairs([(0, 1), (1, 1)]), 2, Q).unwrap();
        assert_eq!(
            oracle::symmetrized_expand(&m).unwrap(),
            ZinElement::from_terms(
                2,
                Q,
                [
                    (Word::new(vec![0, 1]), Scalar::one(Q)),
                    (Word::new(vec![1, 0]), Scalar::one(Q))
                ]
            )
            .unwrap()
        );
        assert_eq!(oracle::interleavings(&[0, 1], &[2, 3, 4]).len(), 10);
    }
}
