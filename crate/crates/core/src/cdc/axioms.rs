//! Seeded instance checks of the Cartesian differential category axioms, the
//! differential combinator axioms on elements, the monad laws and the
//! D-linear counit laws.
//!
//! Every trial draws its inputs from its own seed, so a recorded failure can
//! be replayed with [`run_trial`] alone. Trials run in parallel and are
//! merged in trial order.

use std::time::Instant;

use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::morphism::{self as mor, TheoryMorphism};
use super::DifferentialTheory;
use crate::error::Result;
use crate::generators::{self, GenConfig};
use crate::notation::VarNames;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Cd1,
    Cd2,
    Cd3,
    Cd4,
    Cd5,
    Cd6,
    Cd7,
    Dc1,
    Dc2,
    Dc3,
    Dc4,
    Dc5,
    Dc6,
    MonadUnitLeft,
    MonadUnitRight,
    MonadAssoc,
    Du1,
    Du2,
}

impl Axiom {
    pub const CDC: [Axiom; 7] = [
        Axiom::Cd1,
        Axiom::Cd2,
        Axiom::Cd3,
        Axiom::Cd4,
        Axiom::Cd5,
        Axiom::Cd6,
        Axiom::Cd7,
    ];
    pub const DC: [Axiom; 6] = [
        Axiom::Dc1,
        Axiom::Dc2,
        Axiom::Dc3,
        Axiom::Dc4,
        Axiom::Dc5,
        Axiom::Dc6,
    ];
    pub const MONAD: [Axiom; 5] = [
        Axiom::MonadUnitLeft,
        Axiom::MonadUnitRight,
        Axiom::MonadAssoc,
        Axiom::Du1,
        Axiom::Du2,
    ];

    pub fn all() -> impl Iterator<Item = Axiom> {
        Self::CDC.into_iter().chain(Self::DC).chain(Self::MONAD)
    }

    pub fn id(&self) -> &'static str {
        match self {
            Axiom::Cd1 => "CD.1",
            Axiom::Cd2 => "CD.2",
            Axiom::Cd3 => "CD.3",
            Axiom::Cd4 => "CD.4",
            Axiom::Cd5 => "CD.5",
            Axiom::Cd6 => "CD.6",
            Axiom::Cd7 => "CD.7",
            Axiom::Dc1 => "dc.1",
            Axiom::Dc2 => "dc.2",
            Axiom::Dc3 => "dc.3",
            Axiom::Dc4 => "dc.4",
            Axiom::Dc5 => "dc.5",
            Axiom::Dc6 => "dc.6",
            Axiom::MonadUnitLeft => "monad.unit_left",
            Axiom::MonadUnitRight => "monad.unit_right",
            Axiom::MonadAssoc => "monad.assoc",
            Axiom::Du1 => "du.1",
            Axiom::Du2 => "du.2",
        }
    }

    pub fn from_id(id: &str) -> Option<Axiom> {
        Axiom::all().find(|a| a.id() == id)
    }

    fn stream(&self) -> u64 {
        Axiom::all().position(|a| a == *self).expect("listed") as u64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub seed: u64,
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub trials: usize,
    pub failures: Vec<Counterexample>,
    pub millis: u64,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Inputs drawn so far and the first side-by-side mismatch, if any.
struct Trial<'a, T: DifferentialTheory> {
    t: &'a T,
    cfg: &'a GenConfig,
    rng: SplitMix64,
    inputs: Vec<String>,
    mismatch: Option<(String, String)>,
}

impl<'a, T: DifferentialTheory> Trial<'a, T> {
    fn arity(&mut self) -> usize {
        generators::random_arity(&mut self.rng, self.cfg)
    }

    fn element(&mut self, arity: usize, degree: u32) -> T::Elem {
        let e = self.t.sample(&mut self.rng, arity, degree, self.cfg);
        self.inputs.push(self.t.render(&e, &VarNames::plain()));
        e
    }

    fn morphism(&mut self, n: usize, m: usize, degree: u32) -> TheoryMorphism<T> {
        let f = generators::random_morphism(self.t, &mut self.rng, self.cfg, n, m, degree);
        self.inputs.push(f.render(self.t, &VarNames::plain()));
        f
    }

    fn same_elem(&mut self, lhs: &T::Elem, rhs: &T::Elem) {
        if self.mismatch.is_none() && lhs != rhs {
            let names = VarNames::plain();
            self.mismatch = Some((self.t.render(lhs, &names), self.t.render(rhs, &names)));
        }
    }

    fn same(&mut self, lhs: &TheoryMorphism<T>, rhs: &TheoryMorphism<T>) {
        if self.mismatch.is_none() && lhs != rhs {
            let names = VarNames::plain();
            self.mismatch = Some((lhs.render(self.t, &names), rhs.render(self.t, &names)));
        }
    }

    fn same_vec(&mut self, lhs: &[crate::scalars::Scalar], rhs: &[crate::scalars::Scalar]) {
        if self.mismatch.is_none() && lhs != rhs {
            let show = |v: &[crate::scalars::Scalar]| {
                format!(
                    "({})",
                    v.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            };
            self.mismatch = Some((show(lhs), show(rhs)));
        }
    }
}

/// Runs one trial of `axiom` from `seed`; `None` when it holds.
pub fn run_trial<T: DifferentialTheory>(
    t: &T,
    axiom: Axiom,
    seed: u64,
    cfg: &GenConfig,
) -> Option<Counterexample> {
    let mut trial = Trial {
        t,
        cfg,
        rng: generators::rng(seed),
        inputs: Vec::new(),
        mismatch: None,
    };
    let outcome = body(&mut trial, axiom);
    let (lhs, rhs) = match outcome {
        Err(e) => (format!("error: {e}"), String::new()),
        Ok(()) => trial.mismatch?,
    };
    Some(Counterexample {
        seed,
        inputs: trial.inputs,
        lhs,
        rhs,
    })
}

fn body<T: DifferentialTheory>(tr: &mut Trial<'_, T>, axiom: Axiom) -> Result<()> {
    let t = tr.t;
    let deg = tr.cfg.max_degree;
    let inner = tr.cfg.inner_degree;
    let d = |f: &TheoryMorphism<T>| mor::differentiate(t, f);
    match axiom {
        Axiom::Cd1 => {
            let (n, m) = (tr.arity(), tr.arity());
            let f = tr.morphism(n, m, deg);
            let g = tr.morphism(n, m, deg);
            let lhs = d(&mor::add(t, &f, &g)?);
            let rhs = mor::add(t, &d(&f), &d(&g))?;
            tr.same(&lhs, &rhs);
            tr.same(&d(&mor::zero_map(t, n, m)), &mor::zero_map(t, 2 * n, m));
        }
        Axiom::Cd2 => {
            let (n, m) = (tr.arity(), tr.arity());
            let f = tr.morphism(n, m, deg);
            let df = d(&f);
            let id = mor::identity(t, n);
            let one_nabla = mor::product(t, &id, &mor::codiag(t, n))?;
            let one_p0 = mor::product(t, &id, &mor::proj0(t, n, n))?;
            let one_p1 = mor::product(t, &id, &mor::proj1(t, n, n))?;
            let lhs = mor::compose(t, &df, &one_nabla)?;
            let rhs = mor::add(
                t,
                &mor::compose(t, &df, &one_p0)?,
                &mor::compose(t, &df, &one_p1)?,
            )?;
            tr.same(&lhs, &rhs);
            let at_zero = mor::compose(t, &df, &mor::inject0(t, n, n))?;
            tr.same(&at_zero, &mor::zero_map(t, n, m));
        }
        Axiom::Cd3 => {
            let (n, m) = (tr.arity(), tr.arity());
            tr.same(&d(&mor::identity(t, n)), &mor::proj1(t, n, n));
            let second = mor::proj1(t, n + m, n + m);
            let p0 = mor::proj0(t, n, m);
            let p1 = mor::proj1(t, n, m);
            tr.same(&d(&p0), &mor::compose(t, &p0, &second)?);
            tr.same(&d(&p1), &mor::compose(t, &p1, &second)?);
        }
        Axiom::Cd4 => {
            let (n, m, k) = (tr.arity(), tr.arity(), tr.arity());
            let f = tr.morphism(n, m, deg);
            let g = tr.morphism(n, k, deg);
            tr.same(&d(&mor::pair(&f, &g)?), &mor::pair(&d(&f), &d(&g))?);
        }
        Axiom::Cd5 => {
            let (n, m, k) = (tr.arity(), tr.arity(), tr.arity());
            let f = tr.morphism(n, m, inner);
            let h = tr.morphism(m, k, deg);
            let lhs = d(&mor::compose(t, &h, &f)?);
            let f_first = mor::compose(t, &f, &mor::proj0(t, n, n))?;
            let rhs = mor::compose(t, &d(&h), &mor::pair(&f_first, &d(&f))?)?;
            tr.same(&lhs, &rhs);
        }
        Axiom::Cd6 => {
            let (n, m) = (tr.arity(), tr.arity());
            let f = tr.morphism(n, m, deg);
            let ddf = d(&d(&f));
            tr.same(&mor::compose(t, &ddf, &mor::ell(t, n))?, &d(&f));
        }
        Axiom::Cd7 => {
            let (n, m) = (tr.arity(), tr.arity());
            let f = tr.morphism(n, m, deg);
            let ddf = d(&d(&f));
            tr.same(&mor::compose(t, &ddf, &mor::swap_c(t, n))?, &ddf);
        }
        Axiom::Dc1 => {
            let n = tr.arity();
            let x = tr.element(n, deg);
            let mut args = t.eta_tuple(n);
            args.extend((0..n).map(|_| t.zero(n)));
            let lhs = t.substitute(&t.partial_combinator(&x), &args, n)?;
            tr.same_elem(&lhs, &t.zero(n));
        }
        Axiom::Dc2 => {
            let n = tr.arity();
            let x = tr.element(n, deg);
            let dx = t.partial_combinator(&x);
            let v = |i: usize| t.eta(i, 3 * n);
            let firsts: Vec<_> = (0..n).map(v).collect();
            let with = |second: &dyn Fn(usize) -> Result<T::Elem>| -> Result<Vec<T::Elem>> {
                let mut args = firsts.clone();
                for i in 0..n {
                    args.push(second(i)?);
                }
                Ok(args)
            };
            let sum = with(&|i| t.add(&v(n + i), &v(2 * n + i)))?;
            let ys = with(&|i| Ok(v(n + i)))?;
            let zs = with(&|i| Ok(v(2 * n + i)))?;
            let lhs = t.substitute(&dx, &sum, 3 * n)?;
            let rhs = t.add(
                &t.substitute(&dx, &ys, 3 * n)?,
                &t.substitute(&dx, &zs, 3 * n)?,
            )?;
            tr.same_elem(&lhs, &rhs);
        }
        Axiom::Dc3 => {
            let n = tr.arity();
            let x = tr.element(n, deg);
            for i in 0..n {
                tr.same_elem(&t.partial_combinator(&t.eta(i, n)), &t.eta(n + i, 2 * n));
            }
            let mut expect = vec![crate::scalars::Scalar::zero(t.field()); n];
            expect.extend(t.counit(&x));
            tr.same_vec(&t.counit(&t.partial_combinator(&x)), &expect);
        }
        Axiom::Dc4 => {
            let (n, m) = (tr.arity(), tr.arity());
            let f = tr.element(m, deg);
            let args: Vec<_> = (0..m).map(|_| tr.element(n, inner)).collect();
            let lhs = t.partial_combinator(&t.substitute(&f, &args, n)?);
            let firsts: Vec<_> = (0..n).map(|i| t.eta(i, 2 * n)).collect();
            let mut lifted = Vec::with_capacity(2 * m);
            for a in &args {
                lifted.push(t.substitute(a, &firsts, 2 * n)?);
            }
            lifted.extend(args.iter().map(|a| t.partial_combinator(a)));
            let rhs = t.substitute(&t.partial_combinator(&f), &lifted, 2 * n)?;
            tr.same_elem(&lhs, &rhs);
        }
        Axiom::Dc5 => {
            let n = tr.arity();
            let x = tr.element(n, deg);
            let ddx = t.partial_combinator(&t.partial_combinator(&x));
            let v = |i: usize| t.eta(i, 2 * n);
            let mut args: Vec<_> = (0..n).map(v).collect();
            args.extend((0..2 * n).map(|_| t.zero(2 * n)));
            args.extend((n..2 * n).map(v));
            tr.same_elem(
                &t.substitute(&ddx, &args, 2 * n)?,
                &t.partial_combinator(&x),
            );
        }
        Axiom::Dc6 => {
            let n = tr.arity();
            let x = tr.element(n, deg);
            let ddx = t.partial_combinator(&t.partial_combinator(&x));
            let block = |b: usize| (b * n..(b + 1) * n).map(|i| t.eta(i, 4 * n));
            let args: Vec<_> = block(0)
                .chain(block(2))
                .chain(block(1))
                .chain(block(3))
                .collect();
            tr.same_elem(&t.substitute(&ddx, &args, 4 * n)?, &ddx);
        }
        Axiom::MonadUnitLeft => {
            let (n, m) = (tr.arity(), tr.arity());
            let args: Vec<_> = (0..m).map(|_| tr.element(n, deg)).collect();
            for (i, a) in args.iter().enumerate() {
                tr.same_elem(&t.substitute(&t.eta(i, m), &args, n)?, a);
            }
        }
        Axiom::MonadUnitRight => {
            let n = tr.arity();
            let x = tr.element(n, deg);
            tr.same_elem(&t.substitute(&x, &t.eta_tuple(n), n)?, &x);
        }
        Axiom::MonadAssoc => {
            let (n, k, m) = (tr.arity(), tr.arity(), tr.arity());
            // word lengths multiply through both substitutions
            let f = tr.element(m, inner);
            let g: Vec<_> = (0..m).map(|_| tr.element(k, inner)).collect();
            let h: Vec<_> = (0..k).map(|_| tr.element(n, inner)).collect();
            let lhs = t.substitute(&t.substitute(&f, &g, k)?, &h, n)?;
            let gh = g
                .iter()
                .map(|gi| t.substitute(gi, &h, n))
                .collect::<Result<Vec<_>>>()?;
            tr.same_elem(&lhs, &t.substitute(&f, &gh, n)?);
        }
        Axiom::Du1 => {
            let n = tr.arity();
            for i in 0..n {
                let mut e = vec![crate::scalars::Scalar::zero(t.field()); n];
                e[i] = crate::scalars::Scalar::one(t.field());
                tr.same_vec(&t.counit(&t.eta(i, n)), &e);
            }
        }
        Axiom::Du2 => {
            let n = tr.arity();
            let x = tr.element(n, deg);
            let mut args: Vec<_> = (0..n).map(|_| t.zero(n)).collect();
            args.extend(t.eta_tuple(n));
            let lin = t.linear(&t.counit(&x));
            tr.same_elem(&t.substitute(&t.partial_combinator(&x), &args, n)?, &lin);
            tr.same_vec(&t.counit(&lin), &t.counit(&x));
        }
    }
    Ok(())
}

/// Runs `trials` seeded trials of one axiom. The report lists failures in
/// trial order regardless of how the trials were scheduled.
pub fn check_axiom<T: DifferentialTheory>(
    t: &T,
    axiom: Axiom,
    cfg: &GenConfig,
    trials: usize,
) -> AxiomReport {
    let start = Instant::now();
    let stream = axiom.stream();
    let failures: Vec<Counterexample> = (0..trials as u64)
        .into_par_iter()
        .filter_map(|i| run_trial(t, axiom, generators::trial_seed(cfg.seed, stream, i), cfg))
        .collect();
    AxiomReport {
        axiom: axiom.id().to_string(),
        trials,
        failures,
        millis: start.elapsed().as_millis() as u64,
    }
}

pub fn check_axioms<T: DifferentialTheory>(
    t: &T,
    axioms: &[Axiom],
    cfg: &GenConfig,
    trials: usize,
) -> Vec<AxiomReport> {
    axioms
        .iter()
        .map(|&a| check_axiom(t, a, cfg, trials))
        .collect()
}

pub fn check_cdc_axioms<T: DifferentialTheory>(
    t: &T,
    cfg: &GenConfig,
    trials: usize,
) -> Vec<AxiomReport> {
    check_axioms(t, &Axiom::CDC, cfg, trials)
}

pub fn check_dc_axioms<T: DifferentialTheory>(
    t: &T,
    cfg: &GenConfig,
    trials: usize,
) -> Vec<AxiomReport> {
    check_axioms(t, &Axiom::DC, cfg, trials)
}

pub fn check_monad_and_unit_laws<T: DifferentialTheory>(
    t: &T,
    cfg: &GenConfig,
    trials: usize,
) -> Vec<AxiomReport> {
    check_axioms(t, &Axiom::MONAD, cfg, trials)
}

pub fn check_all<T: DifferentialTheory>(t: &T, cfg: &GenConfig, trials: usize) -> Vec<AxiomReport> {
    check_axioms(t, &Axiom::all().collect::<Vec<_>>(), cfg, trials)
}
