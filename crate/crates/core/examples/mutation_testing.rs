//! Swaps in a wrong differential combinator and watches the checkers object.

use diffmonads::cdc::{
    axioms, mutants, DifferentialTheory, DividedPower, MutatedTheory, SeriesTheory, Zinbiel,
};
use diffmonads::scalars::FieldSpec;

fn hunt<T: DifferentialTheory>(t: &T) {
    let failing: Vec<_> = axioms::check_all(t, &t.default_config(42), 200)
        .into_iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{} ({}/{})", r.axiom, r.failures.len(), r.trials))
        .collect();
    println!("{}\n  caught by: {}", t.name(), failing.join(", "));
}

fn main() {
    let q = FieldSpec::Rationals;
    hunt(&MutatedTheory::new(
        Zinbiel::new(q),
        "last letter",
        mutants::zinbiel_star_last,
    ));
    hunt(&MutatedTheory::new(
        SeriesTheory::power(q, 4),
        "drop first",
        mutants::series_drop_first,
    ));
    hunt(&MutatedTheory::new(
        DividedPower::new(q),
        "extra factor",
        mutants::divided_extra_factor,
    ));
}
