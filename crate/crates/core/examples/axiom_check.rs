//! Runs every axiom checker on a chosen theory and prints a summary.
//!
//! `cargo run --release --example axiom_check -- zinbiel F2 100`

use diffmonads::cdc::{
    axioms, DifferentialTheory, DividedPower, SeriesTheory, TheoryKind, Trivial, Zinbiel,
};
use diffmonads::scalars::FieldSpec;

fn report<T: DifferentialTheory>(t: &T, trials: usize) {
    println!("{}, {trials} trials per axiom", t.name());
    for r in axioms::check_all(t, &t.default_config(42), trials) {
        let status = if r.passed() { "ok" } else { "FAILED" };
        println!("  {:<14} {status:<6} {} ms", r.axiom, r.millis);
        if let Some(c) = r.failures.first() {
            println!(
                "    seed {} inputs {:?}\n    lhs {}\n    rhs {}",
                c.seed, c.inputs, c.lhs, c.rhs
            );
        }
    }
}

fn main() -> diffmonads::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let kind: TheoryKind = args
        .first()
        .map(String::as_str)
        .unwrap_or("divided")
        .parse()?;
    let field: FieldSpec = args.get(1).map(String::as_str).unwrap_or("F3").parse()?;
    let trials = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(50);
    match kind {
        TheoryKind::Polynomial => report(&SeriesTheory::polynomial(field), trials),
        TheoryKind::PowerSeries => report(&SeriesTheory::power(field, 4), trials),
        TheoryKind::DividedPower => report(&DividedPower::new(field), trials),
        TheoryKind::Zinbiel => report(&Zinbiel::new(field), trials),
        TheoryKind::Trivial => report(&Trivial::new(field), trials),
    }
    Ok(())
}
