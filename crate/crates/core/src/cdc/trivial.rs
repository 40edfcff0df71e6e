//! The identity monad: the free algebra on `n` variables is the space of
//! linear forms, and `∂` renames `x_i` to its dual `y_i`.

use rand_xoshiro::SplitMix64;

use super::DifferentialTheory;
use crate::error::{Error, Result};
use crate::generators::{self, GenConfig};
use crate::notation::{self, Grammar, VarNames};
use crate::scalars::{FieldSpec, Scalar};

/// `sum_i c_i x_i`, stored densely.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Scalar>, field: FieldSpec) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|c| c.spec() != field) {
            return Err(Error::MixedFields(c.spec(), field));
        }
        Ok(LinearForm { field, coeffs })
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Trivial {
    field: FieldSpec,
}

impl Trivial {
    pub fn new(field: FieldSpec) -> Self {
        Trivial { field }
    }
}

impl DifferentialTheory for Trivial {
    type Elem = LinearForm;

    fn name(&self) -> String {
        format!("Trivial({})", self.field)
    }

    fn field(&self) -> FieldSpec {
        self.field
    }

    fn grammar(&self) -> Grammar {
        Grammar::Linear
    }

    fn arity_of(&self, e: &LinearForm) -> usize {
        e.arity()
    }

    fn zero(&self, arity: usize) -> LinearForm {
        LinearForm {
            field: self.field,
            coeffs: vec![Scalar::zero(self.field); arity],
        }
    }

    fn eta(&self, i: usize, arity: usize) -> LinearForm {
        assert!(i < arity, "variable {i} outside arity {arity}");
        let mut e = self.zero(arity);
        e.coeffs[i] = Scalar::one(self.field);
        e
    }

    fn add(&self, a: &LinearForm, b: &LinearForm) -> Result<LinearForm> {
        if a.arity() != b.arity() {
            return Err(Error::shape(format!(
                "linear forms in {} and {} variables",
                a.arity(),
                b.arity()
            )));
        }
        Ok(LinearForm {
            field: self.field,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        })
    }

    fn scale(&self, a: &LinearForm, s: &Scalar) -> Result<LinearForm> {
        if s.spec() != self.field {
            return Err(Error::MixedFields(s.spec(), self.field));
        }
        Ok(LinearForm {
            field: self.field,
            coeffs: a.coeffs.iter().map(|c| c * s).collect(),
        })
    }

    fn substitute(
        &self,
        f: &LinearForm,
        args: &[LinearForm],
        target_arity: usize,
    ) -> Result<LinearForm> {
        if args.len() != f.arity() {
            return Err(Error::shape(format!(
                "{} arguments for a linear form in {} variables",
                args.len(),
                f.arity()
            )));
        }
        let mut acc = self.zero(target_arity);
        for (c, a) in f.coeffs.iter().zip(args) {
            acc = self.add(&acc, &self.scale(a, c)?)?;
        }
        Ok(acc)
    }

    fn partial_combinator(&self, f: &LinearForm) -> LinearForm {
        let mut coeffs = vec![Scalar::zero(self.field); f.arity()];
        coeffs.extend(f.coeffs.iter().cloned());
        LinearForm {
            field: self.field,
            coeffs,
        }
    }

    fn counit(&self, f: &LinearForm) -> Vec<Scalar> {
        f.coeffs.clone()
    }

    fn linear(&self, coeffs: &[Scalar]) -> LinearForm {
        LinearForm::new(coeffs.to_vec(), self.field).expect("field matches")
    }

    fn term_degrees(&self, f: &LinearForm) -> Vec<u32> {
        f.coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|_| 1)
            .collect()
    }

    fn render(&self, f: &LinearForm, names: &VarNames) -> String {
        notation::format_sum(
            f.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (names.name(i as u32), c)),
        )
    }

    fn build_parsed(
        &self,
        terms: Vec<(Vec<(u32, u32)>, Scalar)>,
        arity: usize,
    ) -> Result<LinearForm> {
        let mut e = self.zero(arity);
        for (factors, c) in terms {
            if c.spec() != self.field {
                return Err(Error::MixedFields(c.spec(), self.field));
            }
            let (v, _) = factors[0];
            if v as usize >= arity {
                return Err(Error::Arity {
                    name: format!("x{}", v + 1),
                    arity,
                });
            }
            e.coeffs[v as usize] = &e.coeffs[v as usize] + &c;
        }
        Ok(e)
    }

    fn basis(&self, arity: usize, _max_degree: u32) -> Result<Vec<LinearForm>> {
        Ok(self.eta_tuple(arity))
    }

    fn sample(
        &self,
        rng: &mut SplitMix64,
        arity: usize,
        _degree: u32,
        cfg: &GenConfig,
    ) -> LinearForm {
        let mut e = self.zero(arity);
        let hit = generators::below(rng, arity as u64) as usize;
        for (i, c) in e.coeffs.iter_mut().enumerate() {
            if i == hit || generators::below(rng, 2) == 0 {
                *c = generators::random_scalar(rng, self.field, cfg.coeff_bound);
            }
        }
        e
    }
}
