//! Morphisms `n -> m` as tuples of `m` elements over `n` variables.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::DifferentialTheory;
use crate::error::{Error, Result};
use crate::notation::VarNames;

pub struct TheoryMorphism<T: DifferentialTheory> {
    source: usize,
    components: Vec<T::Elem>,
}

impl<T: DifferentialTheory> Clone for TheoryMorphism<T> {
    fn clone(&self) -> Self {
        TheoryMorphism {
            source: self.source,
            components: self.components.clone(),
        }
    }
}

impl<T: DifferentialTheory> PartialEq for TheoryMorphism<T> {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.components == other.components
    }
}

impl<T: DifferentialTheory> fmt::Debug for TheoryMorphism<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TheoryMorphism")
            .field("source", &self.source)
            .field("components", &self.components)
            .finish()
    }
}

/// Serialized form: `{"arity": n, "components": ["x1*x2", ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismFile {
    pub arity: usize,
    pub components: Vec<String>,
}

/// The named structural maps of a Cartesian left additive category.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structural {
    Identity,
    Proj0,
    Proj1,
    Inject0,
    Inject1,
    SumMap,
    ZeroMap,
    Diag,
    Codiag,
    Ell,
    SwapC,
}

impl<T: DifferentialTheory> TheoryMorphism<T> {
    pub fn new(theory: &T, source: usize, components: Vec<T::Elem>) -> Result<Self> {
        for (j, c) in components.iter().enumerate() {
            let a = theory.arity_of(c);
            if a != source {
                return Err(Error::shape(format!(
                    "component {j} has arity {a}, the morphism has source {source}"
                )));
            }
        }
        Ok(TheoryMorphism { source, components })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[T::Elem] {
        &self.components
    }

    pub fn render(&self, theory: &T, names: &VarNames) -> String {
        let parts: Vec<_> = self
            .components
            .iter()
            .map(|c| theory.render(c, names))
            .collect();
        format!(
            "<{}> : {} -> {}",
            parts.join(", "),
            self.source,
            self.target()
        )
    }

    pub fn to_file(&self, theory: &T) -> MorphismFile {
        MorphismFile {
            arity: self.source,
            components: self
                .components
                .iter()
                .map(|c| theory.render(c, &VarNames::plain()))
                .collect(),
        }
    }

    pub fn from_file(theory: &T, file: &MorphismFile) -> Result<Self> {
        let components = file
            .components
            .iter()
            .map(|text| theory.parse(text, file.arity))
            .collect::<Result<_>>()?;
        Self::new(theory, file.arity, components)
    }
}

fn tuple<T: DifferentialTheory>(source: usize, components: Vec<T::Elem>) -> TheoryMorphism<T> {
    TheoryMorphism { source, components }
}

/// `q ∘ p`: substitutes the components of `p` into each component of `q`.
pub fn compose<T: DifferentialTheory>(
    t: &T,
    q: &TheoryMorphism<T>,
    p: &TheoryMorphism<T>,
) -> Result<TheoryMorphism<T>> {
    if q.source != p.target() {
        return Err(Error::shape(format!(
            "cannot compose {} -> {} after {} -> {}",
            q.source,
            q.target(),
            p.source,
            p.target()
        )));
    }
    let components = q
        .components
        .iter()
        .map(|c| t.substitute(c, &p.components, p.source))
        .collect::<Result<_>>()?;
    Ok(tuple(p.source, components))
}

pub fn add<T: DifferentialTheory>(
    t: &T,
    f: &TheoryMorphism<T>,
    g: &TheoryMorphism<T>,
) -> Result<TheoryMorphism<T>> {
    if f.source != g.source || f.target() != g.target() {
        return Err(Error::shape("adding morphisms of different types"));
    }
    let components = f
        .components
        .iter()
        .zip(&g.components)
        .map(|(a, b)| t.add(a, b))
        .collect::<Result<_>>()?;
    Ok(tuple(f.source, components))
}

/// `<f, g>`.
pub fn pair<T: DifferentialTheory>(
    f: &TheoryMorphism<T>,
    g: &TheoryMorphism<T>,
) -> Result<TheoryMorphism<T>> {
    if f.source != g.source {
        return Err(Error::shape("pairing morphisms with different sources"));
    }
    let mut components = f.components.clone();
    components.extend(g.components.iter().cloned());
    Ok(tuple(f.source, components))
}

/// `f × g = <f ∘ π0, g ∘ π1>`.
pub fn product<T: DifferentialTheory>(
    t: &T,
    f: &TheoryMorphism<T>,
    g: &TheoryMorphism<T>,
) -> Result<TheoryMorphism<T>> {
    let (a, c) = (f.source, g.source);
    let left = compose(t, f, &proj0(t, a, c))?;
    let right = compose(t, g, &proj1(t, a, c))?;
    pair(&left, &right)
}

pub fn identity<T: DifferentialTheory>(t: &T, n: usize) -> TheoryMorphism<T> {
    tuple(n, t.eta_tuple(n))
}

pub fn zero_map<T: DifferentialTheory>(t: &T, n: usize, m: usize) -> TheoryMorphism<T> {
    tuple(n, vec![t.zero(n); m])
}

/// `π0 : n + m -> n`.
pub fn proj0<T: DifferentialTheory>(t: &T, n: usize, m: usize) -> TheoryMorphism<T> {
    tuple(n + m, (0..n).map(|i| t.eta(i, n + m)).collect())
}

/// `π1 : n + m -> m`.
pub fn proj1<T: DifferentialTheory>(t: &T, n: usize, m: usize) -> TheoryMorphism<T> {
    tuple(n + m, (0..m).map(|i| t.eta(n + i, n + m)).collect())
}

/// `ι0 = <1, 0> : n -> n + m`.
pub fn inject0<T: DifferentialTheory>(t: &T, n: usize, m: usize) -> TheoryMorphism<T> {
    pair(&identity(t, n), &zero_map(t, n, m)).expect("same source")
}

/// `ι1 = <0, 1> : m -> n + m`.
pub fn inject1<T: DifferentialTheory>(t: &T, n: usize, m: usize) -> TheoryMorphism<T> {
    pair(&zero_map(t, m, n), &identity(t, m)).expect("same source")
}

/// `Δ = <1, 1> : n -> 2n`.
pub fn diag<T: DifferentialTheory>(t: &T, n: usize) -> TheoryMorphism<T> {
    pair(&identity(t, n), &identity(t, n)).expect("same source")
}

/// `∇ = π0 + π1 : 2n -> n`.
pub fn codiag<T: DifferentialTheory>(t: &T, n: usize) -> TheoryMorphism<T> {
    add(t, &proj0(t, n, n), &proj1(t, n, n)).expect("same type")
}

/// `ℓ = ι0 × ι1 : 2n -> 4n`.
pub fn ell<T: DifferentialTheory>(t: &T, n: usize) -> TheoryMorphism<T> {
    product(t, &inject0(t, n, n), &inject1(t, n, n)).expect("composable")
}

/// `c = <π0 × π0, π1 × π1> : 4n -> 4n`, swapping the middle blocks.
pub fn swap_c<T: DifferentialTheory>(t: &T, n: usize) -> TheoryMorphism<T> {
    let p0 = proj0(t, n, n);
    let p1 = proj1(t, n, n);
    let first = product(t, &p0, &p0).expect("composable");
    let second = product(t, &p1, &p1).expect("composable");
    pair(&first, &second).expect("same source")
}

/// A structural map by name. `n` and `m` are the object sizes; maps on a
/// single object ignore `m`.
pub fn structural<T: DifferentialTheory>(
    t: &T,
    kind: Structural,
    n: usize,
    m: usize,
) -> TheoryMorphism<T> {
    match kind {
        Structural::Identity => identity(t, n),
        Structural::Proj0 => proj0(t, n, m),
        Structural::Proj1 => proj1(t, n, m),
        Structural::Inject0 => inject0(t, n, m),
        Structural::Inject1 => inject1(t, n, m),
        Structural::SumMap | Structural::Codiag => codiag(t, n),
        Structural::ZeroMap => zero_map(t, n, m),
        Structural::Diag => diag(t, n),
        Structural::Ell => ell(t, n),
        Structural::SwapC => swap_c(t, n),
    }
}

/// `D[P] : 2n -> m`.
pub fn differentiate<T: DifferentialTheory>(t: &T, p: &TheoryMorphism<T>) -> TheoryMorphism<T> {
    tuple(
        2 * p.source,
        p.components
            .iter()
            .map(|c| t.partial_combinator(c))
            .collect(),
    )
}

/// `L[P] = D[P] ∘ ι1`.
pub fn linearize<T: DifferentialTheory>(t: &T, p: &TheoryMorphism<T>) -> Result<TheoryMorphism<T>> {
    compose(t, &differentiate(t, p), &inject1(t, p.source, p.source))
}

/// `L[P] = P`.
pub fn is_dlinear<T: DifferentialTheory>(t: &T, p: &TheoryMorphism<T>) -> Result<bool> {
    Ok(linearize(t, p)? == *p)
}

/// Whether every component is fixed by `η ∘ ε`.
pub fn is_dlinear_by_counit<T: DifferentialTheory>(t: &T, p: &TheoryMorphism<T>) -> bool {
    p.components.iter().all(|c| t.linear(&t.counit(c)) == *c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdc::{DividedPower, SeriesTheory, Zinbiel};
    use crate::scalars::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn m<T: DifferentialTheory>(t: &T, source: usize, texts: &[&str]) -> TheoryMorphism<T> {
        let comps = texts.iter().map(|s| t.parse(s, source).unwrap()).collect();
        TheoryMorphism::new(t, source, comps).unwrap()
    }

    #[test]
    fn structural_examples() {
        let t = SeriesTheory::power(Q, 4);
        assert_eq!(proj0(&t, 1, 1), m(&t, 2, &["x1"]));
        assert_eq!(codiag(&t, 1), m(&t, 2, &["x1 + x2"]));
        assert_eq!(inject0(&t, 1, 1), m(&t, 1, &["x1", "0"]));
        assert_eq!(ell(&t, 1), m(&t, 2, &["x1", "0", "0", "x2"]));
        assert_eq!(swap_c(&t, 1), m(&t, 4, &["x1", "x3", "x2", "x4"]));
        assert_eq!(diag(&t, 2), m(&t, 2, &["x1", "x2", "x1", "x2"]));
        let one_nabla = product(&t, &identity(&t, 1), &codiag(&t, 1)).unwrap();
        assert_eq!(one_nabla, m(&t, 3, &["x1", "x2 + x3"]));
    }

    #[test]
    fn compose_examples() {
        let t = DividedPower::new(Q);
        let q = m(&t, 1, &["x1^[2]"]);
        let p = m(&t, 2, &["x1^[2]*x2^[1]"]);
        assert_eq!(compose(&t, &q, &p).unwrap(), m(&t, 2, &["6*x1^[4]*x2^[2]"]));
        assert_eq!(compose(&t, &identity(&t, 1), &p).unwrap(), p);
        assert_eq!(compose(&t, &p, &identity(&t, 2)).unwrap(), p);
        assert!(compose(&t, &p, &p).is_err());

        let z = Zinbiel::new(Q);
        let q = m(&z, 2, &["x1.x2.x1"]);
        let p = m(&z, 3, &["x1.x2", "x3"]);
        assert_eq!(
            compose(&z, &q, &p).unwrap(),
            m(
                &z,
                3,
                &["x1.x2.x3.x1.x2 + x1.x3.x2.x1.x2 + 2*x1.x3.x1.x2.x2"]
            )
        );
    }

    #[test]
    fn differentiate_examples() {
        let t = SeriesTheory::power(Q, 4);
        assert_eq!(differentiate(&t, &identity(&t, 1)), proj1(&t, 1, 1));
        assert_eq!(
            differentiate(&t, &m(&t, 2, &["x1*x2"])),
            m(&t, 4, &["x2*x3 + x1*x4"])
        );
        let z = Zinbiel::new(Q);
        assert_eq!(
            differentiate(&z, &m(&z, 2, &["x1.x2"])),
            m(&z, 4, &["x3.x2"])
        );
    }

    #[test]
    fn linearization_examples() {
        let t = SeriesTheory::power(Q, 4);
        assert_eq!(
            linearize(&t, &m(&t, 1, &["x1 + x1^2"])).unwrap(),
            m(&t, 1, &["x1"])
        );
        assert!(is_dlinear(&t, &m(&t, 2, &["2*x1 + 3*x2"])).unwrap());
        let d = DividedPower::new(Q);
        let sq = m(&d, 1, &["x1^[2]"]);
        assert!(!is_dlinear(&d, &sq).unwrap());
        assert!(!is_dlinear_by_counit(&d, &sq));
    }

    #[test]
    fn structural_maps_are_dlinear() {
        let t = Zinbiel::new(Q);
        for kind in [
            Structural::Identity,
            Structural::Proj0,
            Structural::Proj1,
            Structural::Inject0,
            Structural::Inject1,
            Structural::Codiag,
            Structural::Diag,
            Structural::ZeroMap,
            Structural::Ell,
            Structural::SwapC,
        ] {
            let s = structural(&t, kind, 2, 1);
            assert!(is_dlinear(&t, &s).unwrap(), "{kind:?}");
            assert!(is_dlinear_by_counit(&t, &s), "{kind:?}");
        }
    }

    #[test]
    fn file_round_trip() {
        let t = SeriesTheory::polynomial(Q);
        let p = m(&t, 2, &["1 + x1*x2", "-x2^3"]);
        let file = p.to_file(&t);
        let json = serde_json::to_string(&file).unwrap();
        let back: MorphismFile = serde_json::from_str(&json).unwrap();
        assert_eq!(TheoryMorphism::from_file(&t, &back).unwrap(), p);
    }
}
