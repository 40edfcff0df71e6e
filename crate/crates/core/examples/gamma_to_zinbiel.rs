//! The algebra map from divided powers into the shuffle algebra, and the
//! square where it fails to commute with the differential combinators.

use diffmonads::cdc::{DifferentialTheory, DividedPower};
use diffmonads::notation::{render_zinbiel, VarNames};
use diffmonads::scalars::FieldSpec;
use diffmonads::zinbiel::ZinElement;

fn main() -> diffmonads::Result<()> {
    let t = DividedPower::new(FieldSpec::Rationals);
    for text in ["x1^[1]*x2^[1]", "x1^[2]*x2^[1]", "x1^[3]"] {
        let e = t.parse(text, 2)?;
        println!("{text:>14} -> {}", ZinElement::from_divided(&e));
    }

    let xy = t.parse("x1^[1]*x2^[1]", 2)?;
    let names = VarNames::blocks(2);
    let along_divided = ZinElement::from_divided(&t.partial_combinator(&xy));
    let along_zinbiel = ZinElement::from_divided(&xy).partial_combinator();
    println!("map after D: {}", render_zinbiel(&along_divided, &names));
    println!("D after map: {}", render_zinbiel(&along_zinbiel, &names));
    Ok(())
}
