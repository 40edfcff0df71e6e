//! Command-line front end. [`run`] takes the argument list and returns the
//! exit status with the rendered output, so it can be driven in-process.
//!
//! Exit status: 0 on success (and when every checked axiom holds), 1 when an
//! axiom check fails, 2 on usage, parse or shape errors.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cdc::morphism::{self as mor, MorphismFile, TheoryMorphism};
use crate::cdc::{
    axioms, Axiom, AxiomReport, DifferentialTheory, DividedPower, SeriesTheory, TheoryKind,
    Trivial, Zinbiel,
};
use crate::error::{Error, Result};
use crate::notation::{ParsedBatch, VarNames};
use crate::scalars::FieldSpec;
use crate::zinbiel::ZinElement;

#[derive(Parser, Debug)]
#[command(
    name = "diffmonads",
    version,
    about = "Differential combinators on polynomial, power series, divided power and Zinbiel theories"
)]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    #[arg(long, global = true, default_value = "power", value_parser = parse_theory)]
    pub theory: TheoryKind,
    #[arg(long, global = true, default_value = "Q", value_parser = parse_field)]
    pub field: FieldSpec,
    /// Degree cap for power series.
    #[arg(long, global = true, default_value_t = 6)]
    pub cap: u32,
    /// Base number of variables; inferred from the input when omitted.
    #[arg(long, global = true)]
    pub arity: Option<usize>,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 200)]
    pub trials: usize,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for axiom checks (0 uses every core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Apply the differential combinator D to a morphism given by its components.
    Derive { components: Vec<String> },
    /// Compose: outer components, then `/`, then inner components.
    Compose { parts: Vec<String> },
    /// Multiply two elements (half-shuffle for Zinbiel unless --full).
    Mul {
        a: String,
        b: String,
        #[arg(long)]
        full: bool,
    },
    /// Divided power f^[n].
    Dpow { expr: String, n: u32 },
    /// Convert a divided power element to another theory.
    Convert {
        expr: String,
        #[arg(long, value_enum)]
        to: ConvertTarget,
    },
    /// Run the axiom checkers and print a JSON report.
    Check {
        /// Comma-separated axiom ids; all when omitted.
        #[arg(long, value_delimiter = ',')]
        axioms: Vec<String>,
        /// Overrides the theory's default degree bound.
        #[arg(long)]
        degree: Option<u32>,
        /// Record elapsed milliseconds (otherwise reported as 0 so output is reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// The candidate Zinbiel integral of an element over 2n variables.
    Integrate { expr: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConvertTarget {
    Zinbiel,
    Power,
}

fn parse_theory(s: &str) -> std::result::Result<TheoryKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_field(s: &str) -> std::result::Result<FieldSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(stderr: String) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Parses `args` (including the program name) and executes the request.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome::usage(text)
            };
        }
    };
    match execute(&cli) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::usage(format!("error: {e}\n")),
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let o = &cli.opts;
    match o.theory {
        TheoryKind::Polynomial => dispatch(&SeriesTheory::polynomial(o.field), cli),
        TheoryKind::PowerSeries => dispatch(&SeriesTheory::power(o.field, o.cap), cli),
        TheoryKind::DividedPower => dispatch(&DividedPower::new(o.field), cli),
        TheoryKind::Zinbiel => dispatch(&Zinbiel::new(o.field), cli),
        TheoryKind::Trivial => dispatch(&Trivial::new(o.field), cli),
    }
}

fn read_arg(text: &str) -> Result<Vec<String>> {
    match text.strip_prefix('@') {
        Some(path) => {
            let raw =
                std::fs::read_to_string(path).map_err(|e| Error::shape(format!("{path}: {e}")))?;
            let file: MorphismFile =
                serde_json::from_str(&raw).map_err(|e| Error::shape(format!("{path}: {e}")))?;
            Ok(file.components)
        }
        None => Ok(split_components(text)),
    }
}

fn split_components(text: &str) -> Vec<String> {
    text.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

/// Components from a list of arguments, each possibly comma-separated or a
/// `@file`. A file's `arity` is returned when present.
fn gather(args: &[String]) -> Result<(Vec<String>, Option<usize>)> {
    let mut out = Vec::new();
    let mut arity = None;
    for a in args {
        if let Some(path) = a.strip_prefix('@') {
            let raw =
                std::fs::read_to_string(path).map_err(|e| Error::shape(format!("{path}: {e}")))?;
            let file: MorphismFile =
                serde_json::from_str(&raw).map_err(|e| Error::shape(format!("{path}: {e}")))?;
            arity = Some(file.arity);
            out.extend(file.components);
        } else {
            out.extend(read_arg(a)?);
        }
    }
    if out.is_empty() {
        return Err(Error::Parse {
            position: 0,
            message: "no expression given".into(),
        });
    }
    Ok((out, arity))
}

/// Parses a tuple of expressions sharing one arity. Returns the morphism and
/// the base arity used for block naming.
pub fn parse_morphism<T: DifferentialTheory>(
    t: &T,
    texts: &[String],
    base: Option<usize>,
) -> Result<(TheoryMorphism<T>, usize)> {
    let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
    let batch = ParsedBatch::parse(&refs, t.grammar(), t.field())?;
    let (base, arity) = batch.arity(base)?;
    let components = (0..texts.len())
        .map(|i| t.build_parsed(batch.resolved(i, base), arity))
        .collect::<Result<_>>()?;
    Ok((TheoryMorphism::new(t, arity, components)?, base))
}

/// Parses one expression over `arity` variables.
pub fn parse_expression<T: DifferentialTheory>(t: &T, text: &str, arity: usize) -> Result<T::Elem> {
    t.parse(text, arity)
}

fn show<T: DifferentialTheory>(t: &T, f: &TheoryMorphism<T>, base: usize, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string(&f.to_file(t)).expect("serializable");
        s.push('\n');
        s
    } else {
        let names = VarNames::blocks(base);
        let mut s = String::new();
        for c in f.components() {
            writeln!(s, "{}", t.render(c, &names)).expect("string write");
        }
        s
    }
}

fn dispatch<T: DifferentialTheory + Sync>(t: &T, cli: &Cli) -> Result<Outcome> {
    let o = &cli.opts;
    match &cli.command {
        Command::Derive { components } => {
            let (texts, file_arity) = gather(components)?;
            let (p, base) = parse_morphism(t, &texts, o.arity.or(file_arity))?;
            Ok(Outcome::ok(show(
                t,
                &mor::differentiate(t, &p),
                base,
                o.json,
            )))
        }
        Command::Compose { parts } => {
            let (outer, inner) = split_compose(parts)?;
            let (inner_texts, file_arity) = gather(&inner)?;
            let (p, base) = parse_morphism(t, &inner_texts, o.arity.or(file_arity))?;
            let (outer_texts, _) = gather(&outer)?;
            let (q, _) = parse_morphism(t, &outer_texts, Some(p.target()))?;
            Ok(Outcome::ok(show(
                t,
                &mor::compose(t, &q, &p)?,
                base,
                o.json,
            )))
        }
        Command::Check {
            axioms: ids,
            degree,
            timing,
        } => check(t, o, ids, *degree, *timing),
        Command::Mul { a, b, full } => theory_specific(cli, |kind| mul(kind, o, a, b, *full)),
        Command::Dpow { expr, n } => theory_specific(cli, |_| dpow(o, expr, *n)),
        Command::Convert { expr, to } => theory_specific(cli, |_| convert(o, expr, *to)),
        Command::Integrate { expr } => theory_specific(cli, |_| integrate(o, expr)),
    }
}

fn theory_specific(cli: &Cli, f: impl FnOnce(TheoryKind) -> Result<String>) -> Result<Outcome> {
    f(cli.opts.theory).map(Outcome::ok)
}

fn split_compose(parts: &[String]) -> Result<(Vec<String>, Vec<String>)> {
    if let Some(i) = parts.iter().position(|p| p == "/") {
        return Ok((parts[..i].to_vec(), parts[i + 1..].to_vec()));
    }
    if let [single] = parts {
        if let Some((a, b)) = single.split_once(" / ") {
            return Ok((vec![a.to_string()], vec![b.to_string()]));
        }
    }
    Err(Error::Parse {
        position: 0,
        message: "compose expects OUTER / INNER".into(),
    })
}

fn single<T: DifferentialTheory>(
    t: &T,
    texts: &[&str],
    base: Option<usize>,
) -> Result<(Vec<T::Elem>, usize)> {
    let owned: Vec<String> = texts.iter().map(|s| s.to_string()).collect();
    let (m, base) = parse_morphism(t, &owned, base)?;
    Ok((m.components().to_vec(), base))
}

fn line(s: String) -> String {
    s + "\n"
}

fn mul(kind: TheoryKind, o: &GlobalOpts, a: &str, b: &str, full: bool) -> Result<String> {
    match kind {
        TheoryKind::Polynomial | TheoryKind::PowerSeries => {
            let t = match kind {
                TheoryKind::Polynomial => SeriesTheory::polynomial(o.field),
                _ => SeriesTheory::power(o.field, o.cap),
            };
            let (v, base) = single(&t, &[a, b], o.arity)?;
            Ok(line(t.render(&v[0].mul(&v[1])?, &VarNames::blocks(base))))
        }
        TheoryKind::DividedPower => {
            let t = DividedPower::new(o.field);
            let (v, base) = single(&t, &[a, b], o.arity)?;
            Ok(line(t.render(&v[0].mul(&v[1])?, &VarNames::blocks(base))))
        }
        TheoryKind::Zinbiel => {
            let t = Zinbiel::new(o.field);
            let (v, base) = single(&t, &[a, b], o.arity)?;
            let p = if full {
                v[0].shuffle(&v[1])?
            } else {
                v[0].half_shuffle(&v[1])?
            };
            Ok(line(t.render(&p, &VarNames::blocks(base))))
        }
        TheoryKind::Trivial => Err(Error::shape("the trivial theory has no product")),
    }
}

fn require(o: &GlobalOpts, kind: TheoryKind, what: &str) -> Result<()> {
    if o.theory != kind {
        return Err(Error::shape(format!(
            "{what} needs --theory {}",
            match kind {
                TheoryKind::DividedPower => "divided",
                TheoryKind::Zinbiel => "zinbiel",
                _ => "power",
            }
        )));
    }
    Ok(())
}

fn dpow(o: &GlobalOpts, expr: &str, n: u32) -> Result<String> {
    require(o, TheoryKind::DividedPower, "dpow")?;
    let t = DividedPower::new(o.field);
    let (v, base) = single(&t, &[expr], o.arity)?;
    Ok(line(t.render(&v[0].power(n)?, &VarNames::blocks(base))))
}

fn convert(o: &GlobalOpts, expr: &str, to: ConvertTarget) -> Result<String> {
    require(o, TheoryKind::DividedPower, "convert")?;
    let t = DividedPower::new(o.field);
    let (v, base) = single(&t, &[expr], o.arity)?;
    let names = VarNames::blocks(base);
    Ok(line(match to {
        ConvertTarget::Zinbiel => {
            Zinbiel::new(o.field).render(&ZinElement::from_divided(&v[0]), &names)
        }
        ConvertTarget::Power => {
            SeriesTheory::power(o.field, o.cap).render(&v[0].to_series(o.cap)?, &names)
        }
    }))
}

fn integrate(o: &GlobalOpts, expr: &str) -> Result<String> {
    require(o, TheoryKind::Zinbiel, "integrate")?;
    let t = Zinbiel::new(o.field);
    let (v, base) = single(&t, &[expr], o.arity)?;
    // a single-block input is read as the first block of 2n variables
    let g = if v[0].arity() == base {
        v[0].lift(2 * base)
    } else {
        v[0].clone()
    };
    let n = g.arity() / 2;
    Ok(line(t.render(
        &g.integral_candidate()?,
        &VarNames::blocks(n.max(1)),
    )))
}

#[derive(Serialize)]
struct CheckOutput<'a> {
    theory: String,
    seed: u64,
    trials: usize,
    passed: bool,
    reports: &'a [AxiomReport],
}

fn check<T: DifferentialTheory + Sync>(
    t: &T,
    o: &GlobalOpts,
    ids: &[String],
    degree: Option<u32>,
    timing: bool,
) -> Result<Outcome> {
    let selected: Vec<Axiom> = if ids.is_empty() {
        Axiom::all().collect()
    } else {
        ids.iter()
            .map(|id| {
                Axiom::from_id(id).ok_or_else(|| Error::Parse {
                    position: 0,
                    message: format!("unknown axiom `{id}`"),
                })
            })
            .collect::<Result<_>>()?
    };
    let mut cfg = t.default_config(o.seed);
    if let Some(d) = degree {
        cfg.max_degree = d;
        cfg.inner_degree = cfg.inner_degree.min(d);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(o.threads)
        .build()
        .map_err(|e| Error::shape(e.to_string()))?;
    let mut reports = pool.install(|| axioms::check_axioms(t, &selected, &cfg, o.trials));
    if !timing {
        for r in &mut reports {
            r.millis = 0;
        }
    }
    let passed = reports.iter().all(AxiomReport::passed);
    let out = CheckOutput {
        theory: t.name(),
        seed: o.seed,
        trials: o.trials,
        passed,
        reports: &reports,
    };
    let mut text = serde_json::to_string_pretty(&out).expect("serializable");
    text.push('\n');
    Ok(Outcome {
        code: if passed { 0 } else { 1 },
        stdout: text,
        stderr: String::new(),
    })
}
