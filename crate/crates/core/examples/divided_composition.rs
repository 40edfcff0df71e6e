//! The same divided power composition read over several fields.

use diffmonads::cdc::{DifferentialTheory, DividedPower};
use diffmonads::scalars::FieldSpec;

fn main() -> diffmonads::Result<()> {
    for field in ["Q", "F2", "F3", "F5", "F7"] {
        let t = DividedPower::new(field.parse::<FieldSpec>()?);
        let p = t.parse("x1^[2]", 1)?;
        let q = t.parse("x1^[2]*x2^[1]", 2)?;
        println!(
            "{field:>3}: p(q(y, z)) = {}",
            t.substitute(&p, std::slice::from_ref(&q), 2)?
        );
    }

    let t = DividedPower::new(FieldSpec::Rationals);
    let a = t.parse("x1^[1] + x2^[2]", 2)?;
    println!("(x1 + x2^[2])^[3] = {}", a.power(3)?);
    println!(
        "x1^[2] * x1^[3]   = {}",
        t.parse("x1^[2]", 1)?.mul(&t.parse("x1^[3]", 1)?)?
    );
    Ok(())
}
