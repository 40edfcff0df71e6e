//! Erasing the block distinction in a derivative, and what comes back.

use diffmonads::cdc::{DifferentialTheory, Zinbiel};
use diffmonads::scalars::FieldSpec;

fn main() -> diffmonads::Result<()> {
    let t = Zinbiel::new(FieldSpec::Rationals);
    for text in ["x1.x2", "x1.x1.x2", "x2.x1 + x1.x2"] {
        let f = t.parse(text, 2)?;
        let back = t.partial_combinator(&f).integral_candidate()?;
        println!("{text:<16} -> D -> erase -> {back}");
    }
    let g = t.parse("x1.x3 + x3.x1", 4)?;
    println!(
        "{:<16} -> erase       -> {}",
        "x1.x3 + x3.x1",
        g.integral_candidate()?
    );
    Ok(())
}
