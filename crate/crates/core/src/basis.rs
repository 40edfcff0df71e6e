//! Basis monomials: commutative exponent vectors and words.

use std::cmp::Ordering;
use std::fmt;

/// A commutative monomial `x_{v1}^{e1} ... x_{vk}^{ek}` stored sparsely.
///
/// Exponents are positive and sorted by variable. The same type indexes
/// ordinary monomials (power series, polynomials) and divided power monomials,
/// where exponent `k` denotes `x^[k]`. The empty index is the degree-0
/// monomial and only appears in the polynomial theory or as the unit inside
/// intermediate products.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex {
    exps: Vec<(u32, u32)>,
}

impl MultiIndex {
    pub fn one() -> Self {
        MultiIndex::default()
    }

    pub fn var(v: u32) -> Self {
        MultiIndex { exps: vec![(v, 1)] }
    }

    pub fn var_pow(v: u32, e: u32) -> Self {
        if e == 0 {
            return MultiIndex::one();
        }
        MultiIndex { exps: vec![(v, e)] }
    }

    /// Builds from `(variable, exponent)` pairs in any order; repeated
    /// variables accumulate, zero exponents are dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut exps: Vec<(u32, u32)> = Vec::new();
        for (v, e) in pairs {
            if e == 0 {
                continue;
            }
            match exps.binary_search_by_key(&v, |&(w, _)| w) {
                Ok(i) => exps[i].1 += e,
                Err(i) => exps.insert(i, (v, e)),
            }
        }
        MultiIndex { exps }
    }

    /// From a dense exponent vector indexed by variable.
    pub fn from_dense(dense: &[u32]) -> Self {
        Self::from_pairs(dense.iter().enumerate().map(|(v, &e)| (v as u32, e)))
    }

    pub fn to_dense(&self, arity: usize) -> Vec<u32> {
        let mut out = vec![0; arity];
        for &(v, e) in &self.exps {
            out[v as usize] = e;
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: u32) -> u32 {
        match self.exps.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => self.exps[i].1,
            Err(_) => 0,
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// `(variable, exponent)` pairs in increasing variable order.
    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.exps
    }

    /// Largest variable index mentioned, if any.
    pub fn max_var(&self) -> Option<u32> {
        self.exps.last().map(|&(v, _)| v)
    }

    /// Exponentwise sum (the ordinary monomial product).
    pub fn mul(&self, other: &MultiIndex) -> MultiIndex {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, b) = (self.exps[i], other.exps[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        MultiIndex { exps: out }
    }

    /// Lowers the exponent of `v` by one; `None` if `v` is absent.
    pub fn decrement(&self, v: u32) -> Option<MultiIndex> {
        let i = self.exps.binary_search_by_key(&v, |&(w, _)| w).ok()?;
        let mut exps = self.exps.clone();
        if exps[i].1 == 1 {
            exps.remove(i);
        } else {
            exps[i].1 -= 1;
        }
        Some(MultiIndex { exps })
    }

    /// Renames every variable through `f`, merging collisions.
    pub fn map_vars(&self, mut f: impl FnMut(u32) -> u32) -> MultiIndex {
        Self::from_pairs(self.exps.iter().map(|&(v, e)| (f(v), e)))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lexicographic: lower degree first, then larger powers of
/// lower-numbered variables first (`x1^2 < x1*x2 < x2^2`).
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.exps.get(i), other.exps.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Less,
                    (None, Some(_)) => return Ordering::Greater,
                    (Some(a), Some(b)) => {
                        if a.0 != b.0 {
                            // the side holding the lower variable is larger in lex
                            return a.0.cmp(&b.0);
                        }
                        if a.1 != b.1 {
                            return b.1.cmp(&a.1);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        })
    }
}

/// A nonempty word of variable indices, the basis of the free Zinbiel
/// algebra. Ordered by length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(Vec<u32>);

impl Word {
    /// Panics on an empty sequence.
    pub fn new(letters: Vec<u32>) -> Self {
        assert!(!letters.is_empty(), "words are nonempty");
        Word(letters)
    }

    pub fn letter(v: u32) -> Self {
        Word(vec![v])
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    /// Words are never empty, so there is no `is_empty`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn first(&self) -> u32 {
        self.0[0]
    }

    /// Letters after the first; `None` for a single letter.
    pub fn tail(&self) -> Option<Word> {
        if self.0.len() == 1 {
            None
        } else {
            Some(Word(self.0[1..].to_vec()))
        }
    }

    pub fn max_letter(&self) -> u32 {
        *self.0.iter().max().expect("nonempty")
    }

    pub fn map_letters(&self, f: impl FnMut(&u32) -> u32) -> Word {
        Word(self.0.iter().map(f).collect())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "x{}", l + 1)?;
        }
        Ok(())
    }
}
