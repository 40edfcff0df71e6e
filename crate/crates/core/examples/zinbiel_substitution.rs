//! Substituting words into words: the right-nested half-shuffle at work.

use diffmonads::cdc::{DifferentialTheory, Zinbiel};
use diffmonads::scalars::FieldSpec;

fn main() -> diffmonads::Result<()> {
    let t = Zinbiel::new(FieldSpec::Rationals);
    let q = t.parse("x1.x2.x1", 2)?;
    let args = [t.parse("x1.x2", 3)?, t.eta(2, 3)];
    let composite = t.substitute(&q, &args, 3)?;
    println!("q(x1.x2, x3) = {composite}");

    let u = t.parse("x1.x2", 2)?;
    let v = t.parse("x2", 2)?;
    println!("(x1.x2) < x2  = {}", u.half_shuffle(&v)?);
    println!("(x1.x2) * x2  = {}", u.shuffle(&v)?);
    Ok(())
}
