//! Characters of graded connected commutative Hopf algebras with Laurent
//! series values: convolution, inverse through the antipode, and Birkhoff
//! decomposition by minimal subtraction. Two presentations are provided, the
//! shuffle algebra on words and the rooted-tree algebra.

mod json;
mod pushforward;
mod trees;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::free_graded::{NCSeries, Word};
use crate::scalar_series::{int, Coefficient, LaurentSeries, SeriesError};

pub use json::CharacterJson;
pub use pushforward::{rep_to_tree_group, TreeRepresentation};
pub use trees::{
    antipode, antipode_identities_hold, coassociative_on, enumerate_trees, enumerate_trees_by_growth, forest_coproduct,
    Forest, ForestPoly, Tree,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("characters belong to different presentations ({0} vs {1})")]
    PresentationMismatch(String, String),
    #[error("generator has degree {found}, expected {expected}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A graded connected commutative Hopf algebra, free as an algebra on the
/// listed generators. Characters are determined by their generator values.
pub trait HopfPresentation {
    type Key: Clone + Ord + fmt::Debug + fmt::Display;

    fn name(&self) -> &'static str;

    fn trunc(&self) -> u32;

    /// Generators of degree `1..=trunc`, in nondecreasing degree.
    fn generators(&self) -> Vec<Self::Key>;

    fn degree(&self, key: &Self::Key) -> u32;

    /// `Δ′(x) = Σ x′ ⊗ x″` with `x′` a product of generators, `x″` a
    /// generator, and a multiplicity.
    fn reduced_coproduct(&self, key: &Self::Key) -> Vec<(Vec<Self::Key>, Self::Key, u64)>;

    fn parse_key(&self, s: &str) -> Result<Self::Key, HopfError>;
}

/// The shuffle algebra `H_u` on words with deconcatenation coproduct. Every
/// word is listed as a generator; its characters are the grouplike series.
#[derive(Clone, Debug)]
pub struct ShuffleHopf {
    trunc: u32,
}

impl ShuffleHopf {
    pub fn new(trunc: u32) -> Self {
        ShuffleHopf { trunc }
    }
}

impl HopfPresentation for ShuffleHopf {
    type Key = Word;

    fn name(&self) -> &'static str {
        "shuffle"
    }

    fn trunc(&self) -> u32 {
        self.trunc
    }

    fn generators(&self) -> Vec<Word> {
        Word::all_up_to_degree(self.trunc)
    }

    fn degree(&self, key: &Word) -> u32 {
        key.degree()
    }

    fn reduced_coproduct(&self, key: &Word) -> Vec<(Vec<Word>, Word, u64)> {
        key.proper_splits().map(|(u, v)| (vec![u], v, 1)).collect()
    }

    fn parse_key(&self, s: &str) -> Result<Word, HopfError> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| HopfError::Parse(format!("bad word {s:?}")))?;
        let letters = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|e| HopfError::Parse(format!("bad letter in {s:?}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?
        };
        Word::try_new(letters).ok_or_else(|| HopfError::Parse(format!("zero letter in {s:?}")))
    }
}

/// The Hopf algebra of rooted trees with the admissible-cut coproduct,
/// coproducts cached up to `trunc` vertices.
#[derive(Clone, Debug)]
pub struct RootedTrees {
    trunc: u32,
    generators: Vec<Tree>,
    coproducts: BTreeMap<Tree, Vec<(Forest, Tree, u64)>>,
}

impl RootedTrees {
    pub fn new(trunc: u32) -> Self {
        let generators: Vec<Tree> = (1..=trunc).flat_map(enumerate_trees).collect();
        let coproducts = generators.iter().map(|t| (t.clone(), t.reduced_coproduct())).collect();
        RootedTrees { trunc, generators, coproducts }
    }
}

impl HopfPresentation for RootedTrees {
    type Key = Tree;

    fn name(&self) -> &'static str {
        "rooted_trees"
    }

    fn trunc(&self) -> u32 {
        self.trunc
    }

    fn generators(&self) -> Vec<Tree> {
        self.generators.clone()
    }

    fn degree(&self, key: &Tree) -> u32 {
        key.size()
    }

    fn reduced_coproduct(&self, key: &Tree) -> Vec<(Forest, Tree, u64)> {
        match self.coproducts.get(key) {
            Some(c) => c.clone(),
            None => key.reduced_coproduct(),
        }
    }

    fn parse_key(&self, s: &str) -> Result<Tree, HopfError> {
        Tree::parse(s)
    }
}

/// A character, stored by its values on generators (value 1 on the unit is
/// implicit). Missing generators have value 0.
#[derive(Clone, PartialEq)]
pub struct Character<K: Ord> {
    presentation: &'static str,
    trunc: u32,
    values: BTreeMap<K, LaurentSeries>,
}

impl<K: Clone + Ord + fmt::Debug + fmt::Display> Character<K> {
    /// The counit `ε`.
    pub fn counit<P: HopfPresentation<Key = K>>(p: &P) -> Self {
        Character { presentation: p.name(), trunc: p.trunc(), values: BTreeMap::new() }
    }

    pub fn from_values<P: HopfPresentation<Key = K>>(p: &P, values: impl IntoIterator<Item = (K, LaurentSeries)>) -> Self {
        let mut c = Character::counit(p);
        for (k, v) in values {
            if p.degree(&k) <= p.trunc() {
                c.set(k, v);
            }
        }
        c
    }

    fn set(&mut self, k: K, v: LaurentSeries) {
        if v.is_zero() {
            self.values.remove(&k);
        } else {
            self.values.insert(k, v);
        }
    }

    pub fn presentation(&self) -> &'static str {
        self.presentation
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn value(&self, k: &K) -> LaurentSeries {
        self.values.get(k).cloned().unwrap_or_else(LaurentSeries::zero)
    }

    /// Value on a product of generators.
    pub fn value_on_product(&self, ks: &[K]) -> LaurentSeries {
        ks.iter().fold(LaurentSeries::one(), |acc, k| &acc * &self.value(k))
    }

    pub fn values(&self) -> impl Iterator<Item = (&K, &LaurentSeries)> {
        self.values.iter()
    }

    pub fn map_values(&self, f: impl Fn(&LaurentSeries) -> LaurentSeries) -> Self {
        let mut out = Character { presentation: self.presentation, trunc: self.trunc, values: BTreeMap::new() };
        for (k, v) in &self.values {
            out.set(k.clone(), f(v));
        }
        out
    }

    pub fn is_counit(&self) -> bool {
        self.values.values().all(|v| v.agrees_with(&LaurentSeries::zero()))
    }

    /// Equality of all generator values up to known precision.
    pub fn agrees(&self, other: &Self) -> bool {
        self.presentation == other.presentation
            && self.trunc == other.trunc
            && self.values.keys().chain(other.values.keys()).all(|k| self.value(k).agrees_with(&other.value(k)))
    }

    fn check_same<P: HopfPresentation<Key = K>>(&self, p: &P) -> Result<(), HopfError> {
        if self.presentation != p.name() || self.trunc != p.trunc() {
            return Err(HopfError::PresentationMismatch(
                format!("{}/{}", self.presentation, self.trunc),
                format!("{}/{}", p.name(), p.trunc()),
            ));
        }
        Ok(())
    }
}

impl Character<Word> {
    /// The grouplike series `Σ φ(w) w` of a shuffle-algebra character.
    pub fn to_series(&self) -> NCSeries<LaurentSeries> {
        let mut s = NCSeries::one(self.trunc);
        for (w, v) in &self.values {
            s = &s + &NCSeries::term(self.trunc, w.clone(), v.clone());
        }
        s
    }

    pub fn from_series(p: &ShuffleHopf, s: &NCSeries<LaurentSeries>) -> Self {
        Character::from_values(p, s.terms().filter(|(w, _)| !w.is_empty()).map(|(w, c)| (w.clone(), c.clone())))
    }
}

/// `(φ⋆ψ)(x) = φ(x) + ψ(x) + Σ φ(x′)ψ(x″)`.
pub fn convolve<P: HopfPresentation>(
    p: &P,
    phi: &Character<P::Key>,
    psi: &Character<P::Key>,
) -> Result<Character<P::Key>, HopfError> {
    phi.check_same(p)?;
    psi.check_same(p)?;
    let mut out = Character::counit(p);
    for x in p.generators() {
        let mut v = &phi.value(&x) + &psi.value(&x);
        for (left, right, n) in p.reduced_coproduct(&x) {
            let a = phi.value_on_product(&left);
            if a.is_zero() {
                continue;
            }
            v = &v + &(&a * &psi.value(&right)).scale(&int(n as i64));
        }
        out.set(x, v);
    }
    Ok(out)
}

/// The convolution inverse `φ ∘ S`, by `φ⁻¹(x) = −φ(x) − Σ φ⁻¹(x′)φ(x″)`.
pub fn antipode_inverse<P: HopfPresentation>(p: &P, phi: &Character<P::Key>) -> Result<Character<P::Key>, HopfError> {
    phi.check_same(p)?;
    let mut out = Character::counit(p);
    for x in p.generators() {
        let mut v = phi.value(&x);
        for (left, right, n) in p.reduced_coproduct(&x) {
            let a = out.value_on_product(&left);
            if a.is_zero() {
                continue;
            }
            v = &v + &(&a * &phi.value(&right)).scale(&int(n as i64));
        }
        out.set(x, v.neg_ref());
    }
    Ok(out)
}

/// Birkhoff decomposition `φ = φ₋⁻¹ ⋆ φ₊` with minimal subtraction:
/// `φ₋(x) = −T(φ̄(x))`, `φ₊(x) = (1 − T)(φ̄(x))`, where
/// `φ̄(x) = φ(x) + Σ φ₋(x′)φ(x″)`.
pub fn birkhoff<P: HopfPresentation>(
    p: &P,
    phi: &Character<P::Key>,
) -> Result<(Character<P::Key>, Character<P::Key>), HopfError> {
    phi.check_same(p)?;
    let mut minus = Character::counit(p);
    let mut plus = Character::counit(p);
    for x in p.generators() {
        let mut bar = phi.value(&x);
        for (left, right, n) in p.reduced_coproduct(&x) {
            let a = minus.value_on_product(&left);
            if a.is_zero() {
                continue;
            }
            bar = &bar + &(&a * &phi.value(&right)).scale(&int(n as i64));
        }
        let pole = bar.pole_part();
        plus.set(x.clone(), &bar - &pole);
        minus.set(x, pole.neg_ref());
    }
    Ok((minus, plus))
}

/// Whether every value is a polynomial in `1/z` without constant term, i.e.
/// the character lands in `G(Q)`.
pub fn is_pole_only<K: Clone + Ord + fmt::Debug + fmt::Display>(phi: &Character<K>) -> bool {
    phi.values().all(|(_, v)| v.is_exact() && v.regular_part().is_zero())
}

/// Whether every value is regular at `z = 0`.
pub fn is_regular<K: Clone + Ord + fmt::Debug + fmt::Display>(phi: &Character<K>) -> bool {
    phi.values().all(|(_, v)| v.pole_order() == 0)
}

impl<K: Ord + fmt::Display> fmt::Debug for Character<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Character[{}; trunc {}] {{", self.presentation, self.trunc)?;
        for (i, (k, v)) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {k}: {v}")?;
        }
        write!(f, " }}")
    }
}
