//! D[f] for morphisms in each theory, printed with dual variables as dx.

use diffmonads::cdc::morphism::{differentiate, TheoryMorphism};
use diffmonads::cdc::{DifferentialTheory, DividedPower, SeriesTheory, Zinbiel};
use diffmonads::notation::VarNames;
use diffmonads::scalars::FieldSpec;

fn show<T: DifferentialTheory>(t: &T, arity: usize, components: &[&str]) -> diffmonads::Result<()> {
    let parsed = components
        .iter()
        .map(|c| t.parse(c, arity))
        .collect::<Result<Vec<_>, _>>()?;
    let f = TheoryMorphism::new(t, arity, parsed)?;
    let d = differentiate(t, &f);
    println!("{}", t.name());
    println!("  f    = {}", f.render(t, &VarNames::plain()));
    println!("  D[f] = {}", d.render(t, &VarNames::blocks(arity)));
    Ok(())
}

fn main() -> diffmonads::Result<()> {
    let q = FieldSpec::Rationals;
    show(&SeriesTheory::polynomial(q), 2, &["x1^2*x2", "x1 + x2^3"])?;
    show(&SeriesTheory::power(q, 3), 1, &["x1 + x1^2 + x1^3"])?;
    show(&DividedPower::new(q), 2, &["x1^[3]*x2^[1]"])?;
    show(&Zinbiel::new(q), 2, &["x1.x2.x1"])?;
    Ok(())
}
