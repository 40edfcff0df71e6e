//! Text notation shared by every theory: printing with block-aware variable
//! names and a small recursive-descent parser.
//!
//! Variables are `x1, x2, ...`. An element over `b * 2^j` variables whose
//! base arity is `b` splits into blocks; block `j` prints its variables with
//! `j` leading `d`s, so a first derivative reads `x1, ..., dx1, ...` and a
//! second one continues with `ddx1, ..., dddx1, ...`.

use std::fmt;

use crate::basis::{MultiIndex, Word};
use crate::dividedpower::DPElement;
use crate::error::{Error, Result};
use crate::powerseries::SeriesElement;
use crate::scalars::{FieldSpec, Scalar};
use crate::zinbiel::ZinElement;

/// How variable indices are printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarNames {
    base: usize,
}

impl VarNames {
    /// `x1, x2, ...` with no blocks.
    pub fn plain() -> Self {
        VarNames { base: usize::MAX }
    }

    /// Blocks of `base` variables.
    pub fn blocks(base: usize) -> Self {
        assert!(base > 0, "block size must be positive");
        VarNames { base }
    }

    pub fn name(&self, index: u32) -> String {
        let i = index as usize;
        let (block, k) = (i / self.base, i % self.base);
        format!("{}x{}", "d".repeat(block), k + 1)
    }
}

/// Which monomial syntax a theory uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grammar {
    /// `3*x1^2*x2`, constants allowed.
    Series,
    /// `x1^[2]*x2^[1]`; a bare `x1` means `x1^[1]`.
    Divided,
    /// `x1.x2.x1`.
    Words,
    /// `2*x1 - x2`, degree one only.
    Linear,
}

/// Joins `(monomial, coefficient)` pairs into `a*m1 - b*m2 + ...`. An empty
/// monomial string is a constant term; an empty sum prints as `0`.
pub fn format_sum<'a>(terms: impl IntoIterator<Item = (String, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (mono, c) in terms {
        let negative = c.is_negative();
        let magnitude = if negative { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&magnitude.to_string());
        } else if magnitude.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{magnitude}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn monomial(m: &MultiIndex, names: &VarNames, divided: bool) -> String {
    m.pairs()
        .iter()
        .map(|&(v, e)| match (divided, e) {
            (true, _) => format!("{}^[{e}]", names.name(v)),
            (false, 1) => names.name(v),
            (false, _) => format!("{}^{e}", names.name(v)),
        })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn render_series(f: &SeriesElement, names: &VarNames) -> String {
    format_sum(
        f.terms()
            .iter()
            .map(|(m, c)| (monomial(m, names, false), c)),
    )
}

pub fn render_divided(f: &DPElement, names: &VarNames) -> String {
    format_sum(f.terms().iter().map(|(m, c)| (monomial(m, names, true), c)))
}

pub fn render_word(w: &Word, names: &VarNames) -> String {
    w.letters()
        .iter()
        .map(|&v| names.name(v))
        .collect::<Vec<_>>()
        .join(".")
}

pub fn render_zinbiel(f: &ZinElement, names: &VarNames) -> String {
    format_sum(f.terms().iter().map(|(w, c)| (render_word(w, names), c)))
}

impl fmt::Display for SeriesElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_series(self, &VarNames::plain()))
    }
}

impl fmt::Display for DPElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_divided(self, &VarNames::plain()))
    }
}

impl fmt::Display for ZinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_zinbiel(self, &VarNames::plain()))
    }
}

/// A variable as written: `d^blocks x<k>`, with `k` one-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarRef {
    pub block: usize,
    pub k: usize,
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedTerm {
    pub coeff: Scalar,
    /// Factors in written order with their exponents (always 1 for words).
    pub factors: Vec<(VarRef, u32)>,
}

/// One or more parsed expressions that must share an arity.
#[derive(Clone, Debug, Default)]
pub struct ParsedBatch {
    pub exprs: Vec<Vec<ParsedTerm>>,
}

impl ParsedBatch {
    pub fn parse(texts: &[&str], grammar: Grammar, field: FieldSpec) -> Result<Self> {
        let exprs = texts
            .iter()
            .map(|t| parse_terms(t, grammar, field))
            .collect::<Result<_>>()?;
        Ok(ParsedBatch { exprs })
    }

    fn vars(&self) -> impl Iterator<Item = &VarRef> {
        self.exprs
            .iter()
            .flatten()
            .flat_map(|t| t.factors.iter().map(|(v, _)| v))
    }

    /// `(base, arity)`: the base is `explicit` or the largest `k` written
    /// (at least 1), and the arity is the base times the smallest power of
    /// two covering every block used.
    pub fn arity(&self, explicit: Option<usize>) -> Result<(usize, usize)> {
        let base = match explicit {
            Some(b) => b,
            None => self.vars().map(|v| v.k).max().unwrap_or(1),
        };
        let mut blocks = 1;
        for v in self.vars() {
            if v.k > base {
                return Err(Error::Arity {
                    name: format!("{}x{}", "d".repeat(v.block), v.k),
                    arity: base,
                });
            }
            while v.block >= blocks {
                blocks *= 2;
            }
        }
        Ok((base, base * blocks))
    }

    /// Terms of expression `index` as `(factors, coefficient)` with
    /// zero-based variable indices.
    pub fn resolved(&self, index: usize, base: usize) -> Vec<(Vec<(u32, u32)>, Scalar)> {
        self.exprs[index]
            .iter()
            .map(|t| {
                let factors = t
                    .factors
                    .iter()
                    .map(|(v, e)| ((v.block * base + v.k - 1) as u32, *e))
                    .collect();
                (factors, t.coeff.clone())
            })
            .collect()
    }
}

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(std::str::from_utf8(&self.text[start..self.pos]).expect("ascii digits"))
    }

    fn small(&mut self) -> Result<u32> {
        let d = self.digits()?.to_string();
        d.parse()
            .map_err(|_| self.error(format!("number `{d}` too large")))
    }

    fn var(&mut self) -> Result<VarRef> {
        self.skip_ws();
        let position = self.pos;
        let mut block = 0;
        while self.text.get(self.pos) == Some(&b'd') {
            block += 1;
            self.pos += 1;
        }
        if self.text.get(self.pos) != Some(&b'x') {
            self.pos = position;
            return Err(self.error("expected a variable like `x1`"));
        }
        self.pos += 1;
        if !self.text.get(self.pos).is_some_and(u8::is_ascii_digit) {
            return Err(self.error("expected a variable index after `x`"));
        }
        let k = self.small()? as usize;
        if k == 0 {
            return Err(Error::Parse {
                position,
                message: "variables are numbered from x1".into(),
            });
        }
        Ok(VarRef { block, k, position })
    }
}

/// Parses one expression into unvalidated terms.
pub fn parse_terms(text: &str, grammar: Grammar, field: FieldSpec) -> Result<Vec<ParsedTerm>> {
    let mut cur = Cursor {
        text: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut negative = cur.eat(b'-');
    loop {
        let term = parse_term(&mut cur, grammar, field, negative)?;
        if !term.coeff.is_zero() {
            terms.push(term);
        }
        negative = match cur.peek() {
            None => break,
            Some(b'+') => false,
            Some(b'-') => true,
            Some(c) => return Err(cur.error(format!("unexpected `{}`", c as char))),
        };
        cur.pos += 1;
    }
    Ok(terms)
}

fn parse_term(
    cur: &mut Cursor,
    grammar: Grammar,
    field: FieldSpec,
    negative: bool,
) -> Result<ParsedTerm> {
    let mut coeff = Scalar::one(field);
    if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        let start = cur.pos;
        let num = cur.digits()?.to_string();
        let text = if cur.eat(b'/') {
            format!("{num}/{}", cur.digits()?)
        } else {
            num
        };
        coeff = Scalar::parse(&text, field).map_err(|e| match e {
            Error::Parse { message, .. } => Error::Parse {
                position: start,
                message,
            },
            other => other,
        })?;
        if !cur.eat(b'*') {
            if grammar != Grammar::Series {
                return Err(cur.error("constant terms are not allowed here"));
            }
            if negative {
                coeff = -coeff;
            }
            return Ok(ParsedTerm {
                coeff,
                factors: Vec::new(),
            });
        }
    }
    if negative {
        coeff = -coeff;
    }
    let mut factors = Vec::new();
    match grammar {
        Grammar::Words => {
            factors.push((cur.var()?, 1));
            while cur.eat(b'.') {
                factors.push((cur.var()?, 1));
            }
        }
        Grammar::Linear => factors.push((cur.var()?, 1)),
        Grammar::Series | Grammar::Divided => loop {
            let v = cur.var()?;
            let mut e = 1;
            if cur.eat(b'^') {
                if grammar == Grammar::Divided {
                    cur.expect(b'[')?;
                    e = cur.small()?;
                    cur.expect(b']')?;
                } else {
                    e = cur.small()?;
                }
            }
            if e == 0 {
                return Err(Error::Parse {
                    position: v.position,
                    message: "zero exponent".into(),
                });
            }
            factors.push((v, e));
            if !cur.eat(b'*') {
                break;
            }
        },
    }
    Ok(ParsedTerm { coeff, factors })
}
