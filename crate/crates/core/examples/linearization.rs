//! Linearization L[f] = D[f] after the second injection, and D-linearity.

use diffmonads::cdc::morphism::{is_dlinear, linearize, TheoryMorphism};
use diffmonads::cdc::{DifferentialTheory, SeriesTheory, Zinbiel};
use diffmonads::notation::VarNames;
use diffmonads::scalars::FieldSpec;

fn study<T: DifferentialTheory>(t: &T, arity: usize, text: &str) -> diffmonads::Result<()> {
    let f = TheoryMorphism::new(t, arity, vec![t.parse(text, arity)?])?;
    let l = linearize(t, &f)?;
    let names = VarNames::plain();
    println!(
        "{:<20} L = {:<24} D-linear: {}",
        text,
        l.render(t, &names),
        is_dlinear(t, &f)?
    );
    Ok(())
}

fn main() -> diffmonads::Result<()> {
    let p = SeriesTheory::polynomial(FieldSpec::Rationals);
    for text in ["3*x1 - x2", "x1 + x1*x2", "x2^2"] {
        study(&p, 2, text)?;
    }
    let z = Zinbiel::new(FieldSpec::prime(2)?);
    for text in ["x1 + x2", "x1.x2 + x2"] {
        study(&z, 2, text)?;
    }
    Ok(())
}
