use diffmonads::dividedpower::DPElement;
use diffmonads::generators::{self, oracle, GenConfig};
use diffmonads::powerseries::{SeriesElement, SeriesShape};
use diffmonads::scalars::{FieldSpec, Scalar};
use diffmonads::zinbiel::ZinElement;

const Q: FieldSpec = FieldSpec::Rationals;

fn fields() -> [FieldSpec; 3] {
    [
        Q,
        FieldSpec::prime(2).unwrap(),
        FieldSpec::prime(3).unwrap(),
    ]
}

#[test]
fn half_shuffle_matches_interleavings_on_all_words() {
    for arity in 1..=2 {
        let words = generators::enumerate_words(arity, 4).unwrap();
        for a in &words {
            for b in &words {
                if a.len() + b.len() > 6 {
                    continue;
                }
                let za = ZinElement::from_terms(arity, Q, [(a.clone(), Scalar::one(Q))]).unwrap();
                let zb = ZinElement::from_terms(arity, Q, [(b.clone(), Scalar::one(Q))]).unwrap();
                assert_eq!(
                    za.half_shuffle(&zb).unwrap(),
                    oracle::shuffle_enum(&za, &zb).unwrap(),
                    "{a} < {b}"
                );
            }
        }
    }
}

#[test]
fn half_shuffle_matches_interleavings_on_random_sums() {
    let cfg = GenConfig::default();
    for f in fields() {
        let mut r = generators::rng(11);
        for _ in 0..100 {
            let a = generators::random_zinbiel(&mut r, 2, f, 4, &cfg);
            let b = generators::random_zinbiel(&mut r, 2, f, 4, &cfg);
            assert_eq!(
                a.half_shuffle(&b).unwrap(),
                oracle::shuffle_enum(&a, &b).unwrap()
            );
        }
    }
}

#[test]
fn divided_to_zinbiel_matches_symmetrization() {
    for f in fields() {
        for arity in 1..=2 {
            for m in generators::enumerate_monomials(arity, 4, false).unwrap() {
                let e = DPElement::monomial(m, arity, f).unwrap();
                assert_eq!(
                    ZinElement::from_divided(&e),
                    oracle::symmetrized_expand(&e).unwrap()
                );
            }
        }
        let mut r = generators::rng(12);
        for _ in 0..100 {
            let e = generators::random_divided(&mut r, 3, f, 5, &GenConfig::default());
            assert_eq!(
                ZinElement::from_divided(&e),
                oracle::symmetrized_expand(&e).unwrap()
            );
        }
    }
}

fn monomial_series(shape: SeriesShape, m: diffmonads::basis::MultiIndex) -> SeriesElement {
    SeriesElement::from_terms(shape, [(m, Scalar::one(shape.field))]).unwrap()
}

#[test]
fn substitution_matches_naive_expansion_on_monomials() {
    for shape in [SeriesShape::polynomial(2, Q), SeriesShape::capped(2, 4, Q)] {
        let heads = generators::enumerate_monomials(2, 4, false).unwrap();
        let args = generators::enumerate_monomials(2, 2, false).unwrap();
        for h in &heads {
            let f = monomial_series(shape, h.clone());
            for a in &args {
                for b in &args {
                    let xs = [
                        monomial_series(shape, a.clone()),
                        monomial_series(shape, b.clone()),
                    ];
                    assert_eq!(
                        f.substitute(&xs, 2).unwrap(),
                        oracle::naive_substitute(&f, &xs, 2).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn substitution_matches_naive_expansion_on_random_series() {
    let cfg = GenConfig::default();
    for f in [Q, FieldSpec::prime(5).unwrap()] {
        for shape in [SeriesShape::polynomial(2, f), SeriesShape::capped(2, 5, f)] {
            let mut r = generators::rng(13);
            for _ in 0..100 {
                let g = generators::random_series(&mut r, shape, 4, &cfg);
                let target = shape.with_arity(3);
                let xs = [
                    generators::random_series(&mut r, target, 3, &cfg),
                    generators::random_series(&mut r, target, 3, &cfg),
                ];
                assert_eq!(
                    g.substitute(&xs, 3).unwrap(),
                    oracle::naive_substitute(&g, &xs, 3).unwrap()
                );
            }
        }
    }
}
