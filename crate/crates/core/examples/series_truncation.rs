//! Capped power series: composition commutes with truncation.

use diffmonads::cdc::{DifferentialTheory, SeriesTheory};
use diffmonads::scalars::FieldSpec;

fn main() -> diffmonads::Result<()> {
    let t = SeriesTheory::power(FieldSpec::Rationals, 8);
    let f = t.parse("x1 + x1^2 + x1^3", 1)?;
    let g = t.parse("x1 - 1/2*x1^2", 1)?;
    let full = t.substitute(&f, std::slice::from_ref(&g), 1)?;
    println!("f(g) at cap 8: {full}");
    for cap in (2..=6).rev() {
        let early = f.truncate(cap)?.substitute(&[g.truncate(cap)?], 1)?;
        let late = full.truncate(cap)?;
        println!("cap {cap}: {early}   same: {}", early == late);
    }
    Ok(())
}
