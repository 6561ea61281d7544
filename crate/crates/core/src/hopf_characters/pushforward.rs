use std::collections::BTreeMap;

use super::{Character, HopfError, HopfPresentation, RootedTrees, Tree};
use crate::free_graded::{NCSeries, Word};
use crate::scalar_series::{LaurentSeries, Rational};

/// A graded representation of the free Lie algebra in the tree Lie algebra:
/// `e_{-n}` is sent to an infinitesimal character supported on trees with
/// `n` vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeRepresentation {
    images: BTreeMap<u32, BTreeMap<Tree, Rational>>,
}

impl TreeRepresentation {
    pub fn new(images: BTreeMap<u32, BTreeMap<Tree, Rational>>) -> Result<Self, HopfError> {
        for (&n, img) in &images {
            if let Some(t) = img.keys().find(|t| t.size() != n) {
                return Err(HopfError::DegreeMismatch { expected: n, found: t.size() });
            }
        }
        Ok(TreeRepresentation { images })
    }

    /// `e_{-n} ↦ δ_{ℓ_n}`, the dual of the ladder with `n` vertices.
    pub fn ladders(max: u32) -> Self {
        let images = (1..=max).map(|n| (n, [(Tree::ladder(n), Rational::from_integer(1.into()))].into())).collect();
        TreeRepresentation { images }
    }

    pub fn zero() -> Self {
        TreeRepresentation { images: BTreeMap::new() }
    }

    fn image(&self, n: u32, t: &Tree) -> Rational {
        self.images.get(&n).and_then(|m| m.get(t)).cloned().unwrap_or_default()
    }
}

/// Pushes a series `Σ g_w e_w` forward to the tree group: the value on a
/// tree is `Σ g_w (ρ(e_{-k1}) ⋆ ⋯ ⋆ ρ(e_{-kn}))(t)`.
pub fn rep_to_tree_group(
    p: &RootedTrees,
    rho: &TreeRepresentation,
    g: &NCSeries<LaurentSeries>,
) -> Character<Tree> {
    let mut memo: BTreeMap<(Word, Tree), Rational> = BTreeMap::new();
    let mut values = Vec::new();
    for t in p.generators() {
        let mut v = LaurentSeries::zero();
        for (w, c) in g.terms() {
            if w.is_empty() || w.degree() != t.size() {
                continue;
            }
            let f = word_value(p, rho, w.letters(), &t, &mut memo);
            if f != Rational::default() {
                v = &v + &c.scale(&f);
            }
        }
        values.push((t, v));
    }
    Character::from_values(p, values)
}

/// `(ρ_{k1} ⋆ ⋯ ⋆ ρ_{kn})(t)`; infinitesimal characters vanish on the unit
/// and on products, so only cuts with a single pruned tree contribute.
fn word_value(
    p: &RootedTrees,
    rho: &TreeRepresentation,
    letters: &[u32],
    t: &Tree,
    memo: &mut BTreeMap<(Word, Tree), Rational>,
) -> Rational {
    if letters.iter().sum::<u32>() != t.size() {
        return Rational::default();
    }
    if letters.len() == 1 {
        return rho.image(letters[0], t);
    }
    let key = (Word::new(letters.to_vec()), t.clone());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut total = Rational::default();
    for (pruned, trunk, n) in p.reduced_coproduct(t) {
        if let [single] = pruned.as_slice() {
            let a = rho.image(letters[0], single);
            if a != Rational::default() {
                total += a * word_value(p, rho, &letters[1..], &trunk, memo) * Rational::from_integer(n.into());
            }
        }
    }
    memo.insert(key, total.clone());
    total
}
