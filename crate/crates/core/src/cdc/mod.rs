//! Theories as Lawvere-style categories: a morphism `n -> m` is an `m`-tuple
//! of elements over `n` variables, composition is substitution, and the
//! differential combinator applies the theory's partial combinator
//! componentwise.

use std::fmt::Debug;

use rand_xoshiro::SplitMix64;

use crate::basis::{MultiIndex, Word};
use crate::dividedpower::DPElement;
use crate::error::{Error, Result};
use crate::generators::{self, GenConfig};
use crate::notation::{self, Grammar, VarNames};
use crate::powerseries::{Cap, SeriesElement, SeriesShape};
use crate::scalars::{FieldSpec, Scalar};
use crate::zinbiel::ZinElement;

pub mod axioms;
pub mod morphism;
pub mod mutants;
pub mod trivial;

pub use axioms::{Axiom, AxiomReport, Counterexample};
pub use morphism::TheoryMorphism;
pub use mutants::MutatedTheory;
pub use trivial::{LinearForm, Trivial};

/// A monad on vector spaces with a differential combinator transformation,
/// presented through its free algebras on finitely many variables.
pub trait DifferentialTheory: Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn name(&self) -> String;
    fn field(&self) -> FieldSpec;
    fn grammar(&self) -> Grammar;

    fn arity_of(&self, e: &Self::Elem) -> usize;
    fn zero(&self, arity: usize) -> Self::Elem;
    /// The unit: variable `i` among `arity`.
    fn eta(&self, i: usize, arity: usize) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn scale(&self, a: &Self::Elem, s: &Scalar) -> Result<Self::Elem>;
    /// The monad multiplication after mapping variable `i` to `args[i]`.
    fn substitute(
        &self,
        f: &Self::Elem,
        args: &[Self::Elem],
        target_arity: usize,
    ) -> Result<Self::Elem>;
    /// `∂`: an element over `n` variables to one over `2n`.
    fn partial_combinator(&self, f: &Self::Elem) -> Self::Elem;
    /// The D-linear counit: coefficients of the degree-one part.
    fn counit(&self, f: &Self::Elem) -> Vec<Scalar>;
    /// `sum_i c_i x_i`.
    fn linear(&self, coeffs: &[Scalar]) -> Self::Elem;
    /// Degree of every term, with constants as 0.
    fn term_degrees(&self, f: &Self::Elem) -> Vec<u32>;

    fn render(&self, f: &Self::Elem, names: &VarNames) -> String;
    /// Builds an element from parsed `(factors, coefficient)` terms.
    fn build_parsed(
        &self,
        terms: Vec<(Vec<(u32, u32)>, Scalar)>,
        arity: usize,
    ) -> Result<Self::Elem>;
    /// Every basis element of degree `1..=max_degree` (including the constant
    /// where the theory has one), coefficient one.
    fn basis(&self, arity: usize, max_degree: u32) -> Result<Vec<Self::Elem>>;
    fn sample(
        &self,
        rng: &mut SplitMix64,
        arity: usize,
        degree: u32,
        cfg: &GenConfig,
    ) -> Self::Elem;
    /// Generation bounds suited to the theory's growth under composition.
    fn default_config(&self, seed: u64) -> GenConfig {
        GenConfig::with_seed(seed)
    }

    fn eta_tuple(&self, arity: usize) -> Vec<Self::Elem> {
        (0..arity).map(|i| self.eta(i, arity)).collect()
    }

    /// Reads one expression in the theory's grammar over `arity` variables.
    fn parse(&self, text: &str, arity: usize) -> Result<Self::Elem> {
        let batch = notation::ParsedBatch::parse(&[text], self.grammar(), self.field())?;
        batch.arity(Some(arity))?;
        self.build_parsed(batch.resolved(0, arity), arity)
    }
}

/// Polynomials (`Cap::Unbounded`, constants allowed) or reduced power series
/// truncated at a cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesTheory {
    field: FieldSpec,
    cap: Cap,
}

impl SeriesTheory {
    pub fn polynomial(field: FieldSpec) -> Self {
        SeriesTheory {
            field,
            cap: Cap::Unbounded,
        }
    }

    pub fn power(field: FieldSpec, cap: u32) -> Self {
        SeriesTheory {
            field,
            cap: Cap::Bounded(cap),
        }
    }

    pub fn shape(&self, arity: usize) -> SeriesShape {
        match self.cap {
            Cap::Bounded(c) => SeriesShape::capped(arity, c, self.field),
            Cap::Unbounded => SeriesShape::polynomial(arity, self.field),
        }
    }

    pub fn cap(&self) -> Cap {
        self.cap
    }
}

impl DifferentialTheory for SeriesTheory {
    type Elem = SeriesElement;

    fn name(&self) -> String {
        match self.cap {
            Cap::Unbounded => format!("Polynomial({})", self.field),
            Cap::Bounded(c) => format!("PowerSeries({}, cap {c})", self.field),
        }
    }

    fn field(&self) -> FieldSpec {
        self.field
    }

    fn grammar(&self) -> Grammar {
        Grammar::Series
    }

    fn arity_of(&self, e: &SeriesElement) -> usize {
        e.arity()
    }

    fn zero(&self, arity: usize) -> SeriesElement {
        SeriesElement::zero(self.shape(arity))
    }

    fn eta(&self, i: usize, arity: usize) -> SeriesElement {
        SeriesElement::eta(i, self.shape(arity))
    }

    fn add(&self, a: &SeriesElement, b: &SeriesElement) -> Result<SeriesElement> {
        a.add(b)
    }

    fn scale(&self, a: &SeriesElement, s: &Scalar) -> Result<SeriesElement> {
        a.scale(s)
    }

    fn substitute(
        &self,
        f: &SeriesElement,
        args: &[SeriesElement],
        target_arity: usize,
    ) -> Result<SeriesElement> {
        f.substitute(args, target_arity)
    }

    fn partial_combinator(&self, f: &SeriesElement) -> SeriesElement {
        f.partial_combinator()
    }

    fn counit(&self, f: &SeriesElement) -> Vec<Scalar> {
        f.counit()
    }

    fn linear(&self, coeffs: &[Scalar]) -> SeriesElement {
        SeriesElement::linear(coeffs, self.shape(coeffs.len())).expect("field matches")
    }

    fn term_degrees(&self, f: &SeriesElement) -> Vec<u32> {
        f.terms().keys().map(MultiIndex::degree).collect()
    }

    fn render(&self, f: &SeriesElement, names: &VarNames) -> String {
        notation::render_series(f, names)
    }

    fn build_parsed(
        &self,
        terms: Vec<(Vec<(u32, u32)>, Scalar)>,
        arity: usize,
    ) -> Result<SeriesElement> {
        SeriesElement::from_terms(
            self.shape(arity),
            terms
                .into_iter()
                .map(|(f, c)| (MultiIndex::from_pairs(f), c)),
        )
    }

    fn basis(&self, arity: usize, max_degree: u32) -> Result<Vec<SeriesElement>> {
        let top = match self.cap {
            Cap::Bounded(c) => max_degree.min(c),
            Cap::Unbounded => max_degree,
        };
        let with_one = self.cap == Cap::Unbounded;
        generators::enumerate_monomials(arity, top, with_one)?
            .into_iter()
            .map(|m| SeriesElement::from_terms(self.shape(arity), [(m, Scalar::one(self.field))]))
            .collect()
    }

    fn sample(
        &self,
        rng: &mut SplitMix64,
        arity: usize,
        degree: u32,
        cfg: &GenConfig,
    ) -> SeriesElement {
        generators::random_series(rng, self.shape(arity), degree, cfg)
    }

    fn default_config(&self, seed: u64) -> GenConfig {
        match self.cap {
            Cap::Unbounded => GenConfig::with_seed(seed),
            Cap::Bounded(c) => GenConfig {
                max_degree: c.min(5),
                inner_degree: c.min(3),
                ..GenConfig::with_seed(seed)
            },
        }
    }
}

/// The free divided power algebra monad.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DividedPower {
    field: FieldSpec,
}

impl DividedPower {
    pub fn new(field: FieldSpec) -> Self {
        DividedPower { field }
    }
}

impl DifferentialTheory for DividedPower {
    type Elem = DPElement;

    fn name(&self) -> String {
        format!("DividedPower({})", self.field)
    }

    fn field(&self) -> FieldSpec {
        self.field
    }

    fn grammar(&self) -> Grammar {
        Grammar::Divided
    }

    fn arity_of(&self, e: &DPElement) -> usize {
        e.arity()
    }

    fn zero(&self, arity: usize) -> DPElement {
        DPElement::zero(arity, self.field)
    }

    fn eta(&self, i: usize, arity: usize) -> DPElement {
        DPElement::eta(i, arity, self.field)
    }

    fn add(&self, a: &DPElement, b: &DPElement) -> Result<DPElement> {
        a.add(b)
    }

    fn scale(&self, a: &DPElement, s: &Scalar) -> Result<DPElement> {
        a.scale(s)
    }

    fn substitute(
        &self,
        f: &DPElement,
        args: &[DPElement],
        target_arity: usize,
    ) -> Result<DPElement> {
        f.substitute(args, target_arity)
    }

    fn partial_combinator(&self, f: &DPElement) -> DPElement {
        f.partial_combinator()
    }

    fn counit(&self, f: &DPElement) -> Vec<Scalar> {
        f.counit()
    }

    fn linear(&self, coeffs: &[Scalar]) -> DPElement {
        DPElement::linear(coeffs, self.field).expect("field matches")
    }

    fn term_degrees(&self, f: &DPElement) -> Vec<u32> {
        f.terms().keys().map(MultiIndex::degree).collect()
    }

    fn render(&self, f: &DPElement, names: &VarNames) -> String {
        notation::render_divided(f, names)
    }

    fn build_parsed(
        &self,
        terms: Vec<(Vec<(u32, u32)>, Scalar)>,
        arity: usize,
    ) -> Result<DPElement> {
        DPElement::from_terms(
            arity,
            self.field,
            terms
                .into_iter()
                .map(|(f, c)| (MultiIndex::from_pairs(f), c)),
        )
    }

    fn basis(&self, arity: usize, max_degree: u32) -> Result<Vec<DPElement>> {
        generators::enumerate_monomials(arity, max_degree, false)?
            .into_iter()
            .map(|m| DPElement::monomial(m, arity, self.field))
            .collect()
    }

    fn sample(
        &self,
        rng: &mut SplitMix64,
        arity: usize,
        degree: u32,
        cfg: &GenConfig,
    ) -> DPElement {
        generators::random_divided(rng, arity, self.field, degree, cfg)
    }
}

/// The free Zinbiel algebra monad.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zinbiel {
    field: FieldSpec,
}

impl Zinbiel {
    pub fn new(field: FieldSpec) -> Self {
        Zinbiel { field }
    }
}

impl DifferentialTheory for Zinbiel {
    type Elem = ZinElement;

    fn name(&self) -> String {
        format!("Zinbiel({})", self.field)
    }

    fn field(&self) -> FieldSpec {
        self.field
    }

    fn grammar(&self) -> Grammar {
        Grammar::Words
    }

    fn arity_of(&self, e: &ZinElement) -> usize {
        e.arity()
    }

    fn zero(&self, arity: usize) -> ZinElement {
        ZinElement::zero(arity, self.field)
    }

    fn eta(&self, i: usize, arity: usize) -> ZinElement {
        ZinElement::eta(i, arity, self.field)
    }

    fn add(&self, a: &ZinElement, b: &ZinElement) -> Result<ZinElement> {
        a.add(b)
    }

    fn scale(&self, a: &ZinElement, s: &Scalar) -> Result<ZinElement> {
        a.scale(s)
    }

    fn substitute(
        &self,
        f: &ZinElement,
        args: &[ZinElement],
        target_arity: usize,
    ) -> Result<ZinElement> {
        f.substitute(args, target_arity)
    }

    fn partial_combinator(&self, f: &ZinElement) -> ZinElement {
        f.partial_combinator()
    }

    fn counit(&self, f: &ZinElement) -> Vec<Scalar> {
        f.counit()
    }

    fn linear(&self, coeffs: &[Scalar]) -> ZinElement {
        ZinElement::linear(coeffs, self.field).expect("field matches")
    }

    fn term_degrees(&self, f: &ZinElement) -> Vec<u32> {
        f.terms().keys().map(|w| w.len() as u32).collect()
    }

    fn render(&self, f: &ZinElement, names: &VarNames) -> String {
        notation::render_zinbiel(f, names)
    }

    fn build_parsed(
        &self,
        terms: Vec<(Vec<(u32, u32)>, Scalar)>,
        arity: usize,
    ) -> Result<ZinElement> {
        ZinElement::from_terms(
            arity,
            self.field,
            terms
                .into_iter()
                .map(|(f, c)| (Word::new(f.into_iter().map(|(v, _)| v).collect()), c)),
        )
    }

    fn basis(&self, arity: usize, max_degree: u32) -> Result<Vec<ZinElement>> {
        generators::enumerate_words(arity, max_degree)?
            .into_iter()
            .map(|w| ZinElement::from_terms(arity, self.field, [(w, Scalar::one(self.field))]))
            .collect()
    }

    fn sample(
        &self,
        rng: &mut SplitMix64,
        arity: usize,
        degree: u32,
        cfg: &GenConfig,
    ) -> ZinElement {
        generators::random_zinbiel(rng, arity, self.field, degree, cfg)
    }

    fn default_config(&self, seed: u64) -> GenConfig {
        // right-nested substitution multiplies word lengths and the shuffle
        // count grows factorially with them
        GenConfig {
            inner_degree: 2,
            ..GenConfig::with_seed(seed)
        }
    }
}

/// Which registered theory a name refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoryKind {
    Polynomial,
    PowerSeries,
    DividedPower,
    Zinbiel,
    Trivial,
}

impl std::str::FromStr for TheoryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "poly" | "polynomial" => TheoryKind::Polynomial,
            "power" | "powerseries" => TheoryKind::PowerSeries,
            "divided" | "dividedpower" => TheoryKind::DividedPower,
            "zinbiel" => TheoryKind::Zinbiel,
            "trivial" => TheoryKind::Trivial,
            other => {
                return Err(Error::Parse {
                    position: 0,
                    message: format!("unknown theory `{other}`"),
                })
            }
        })
    }
}
