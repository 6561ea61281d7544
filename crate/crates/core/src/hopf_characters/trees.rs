use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use super::HopfError;
use crate::scalar_series::Rational;

/// An unordered rooted tree in canonical form: children sorted ascending.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    children: Vec<Tree>,
    size: u32,
}

/// A forest (monomial in the tree algebra), trees sorted ascending.
pub type Forest = Vec<Tree>;

impl Tree {
    pub fn vertex() -> Tree {
        Tree { children: Vec::new(), size: 1 }
    }

    pub fn from_children(mut children: Vec<Tree>) -> Tree {
        children.sort();
        let size = 1 + children.iter().map(|c| c.size).sum::<u32>();
        Tree { children, size }
    }

    /// The ladder (linear tree) with `n ≥ 1` vertices.
    pub fn ladder(n: u32) -> Tree {
        assert!(n >= 1, "a ladder needs at least one vertex");
        (1..n).fold(Tree::vertex(), |t, _| Tree::from_children(vec![t]))
    }

    /// Grafts a forest onto a new root (the operator `B₊`).
    pub fn graft(forest: &[Tree]) -> Tree {
        Tree::from_children(forest.to_vec())
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn children(&self) -> &[Tree] {
        &self.children
    }

    pub fn parse(s: &str) -> Result<Tree, HopfError> {
        let bytes = s.as_bytes();
        let (t, used) = parse_at(bytes, 0).ok_or_else(|| HopfError::Parse(format!("bad tree string {s:?}")))?;
        if used != bytes.len() {
            return Err(HopfError::Parse(format!("trailing characters in tree string {s:?}")));
        }
        Ok(t)
    }

    /// The reduced coproduct `Δ′(t) = Σ P^c(t) ⊗ R^c(t)` over nontrivial
    /// admissible cuts: pruned forest on the left, trunk on the right.
    pub fn reduced_coproduct(&self) -> Vec<(Forest, Tree, u64)> {
        let mut counts: BTreeMap<(Forest, Tree), u64> = BTreeMap::new();
        for (pruned, trunk) in self.cuts() {
            if !pruned.is_empty() {
                *counts.entry((pruned, trunk)).or_default() += 1;
            }
        }
        counts.into_iter().map(|((p, r), n)| (p, r, n)).collect()
    }

    /// All admissible cuts including the empty one, as (pruned, trunk).
    fn cuts(&self) -> Vec<(Forest, Tree)> {
        let mut partial: Vec<(Forest, Vec<Tree>)> = vec![(Vec::new(), Vec::new())];
        for child in &self.children {
            let mut next = Vec::new();
            let child_cuts = child.cuts();
            for (pruned, kept) in &partial {
                // Cut the edge above this child.
                let mut p = pruned.clone();
                p.push(child.clone());
                next.push((p, kept.clone()));
                // Keep the edge and cut inside the child.
                for (cp, ct) in &child_cuts {
                    let mut p = pruned.clone();
                    p.extend(cp.iter().cloned());
                    let mut k = kept.clone();
                    k.push(ct.clone());
                    next.push((p, k));
                }
            }
            partial = next;
        }
        partial
            .into_iter()
            .map(|(mut p, k)| {
                p.sort();
                (p, Tree::from_children(k))
            })
            .collect()
    }
}

fn parse_at(b: &[u8], mut i: usize) -> Option<(Tree, usize)> {
    if b.get(i) != Some(&b'(') {
        return None;
    }
    i += 1;
    let mut children = Vec::new();
    while b.get(i) == Some(&b'(') {
        let (c, j) = parse_at(b, i)?;
        children.push(c);
        i = j;
    }
    if b.get(i) != Some(&b')') {
        return None;
    }
    Some((Tree::from_children(children), i + 1))
}

/// By size, then by the sorted child lists.
impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size.cmp(&other.size).then_with(|| self.children.cmp(&other.children))
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for c in &self.children {
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All rooted trees with `n` vertices, canonically ordered: a root over every
/// multiset of smaller trees with `n − 1` vertices in total.
pub fn enumerate_trees(n: u32) -> Vec<Tree> {
    let mut by_size: Vec<Vec<Tree>> = vec![Vec::new()];
    for m in 1..=n {
        let pool: Vec<Tree> = by_size.iter().flatten().cloned().collect();
        let mut out = Vec::new();
        multisets(&pool, 0, m - 1, &mut Vec::new(), &mut out);
        out.sort();
        by_size.push(out);
    }
    by_size.pop().unwrap_or_default()
}

/// Multisets drawn from `pool[start..]` (in nondecreasing index order) with
/// total size `rest`, each completed with a root.
fn multisets(pool: &[Tree], start: usize, rest: u32, chosen: &mut Vec<Tree>, out: &mut Vec<Tree>) {
    if rest == 0 {
        out.push(Tree::from_children(chosen.clone()));
        return;
    }
    for i in start..pool.len() {
        if pool[i].size <= rest {
            chosen.push(pool[i].clone());
            multisets(pool, i, rest - pool[i].size, chosen, out);
            chosen.pop();
        }
    }
}

/// Elements of the tree Hopf algebra: rational combinations of forests.
pub type ForestPoly = BTreeMap<Forest, Rational>;

fn add_into(p: &mut ForestPoly, f: Forest, c: Rational) {
    let e = p.entry(f.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&f);
    }
}

fn forest_product(a: &[Tree], b: &[Tree]) -> Forest {
    let mut f: Forest = a.iter().chain(b).cloned().collect();
    f.sort();
    f
}

/// Full coproduct of a forest as a map on forest pairs.
pub fn forest_coproduct(f: &[Tree]) -> BTreeMap<(Forest, Forest), Rational> {
    let mut acc: BTreeMap<(Forest, Forest), Rational> = BTreeMap::new();
    acc.insert((Vec::new(), Vec::new()), Rational::one());
    for t in f {
        let mut terms: Vec<(Forest, Forest, Rational)> = vec![
            (vec![t.clone()], Vec::new(), Rational::one()),
            (Vec::new(), vec![t.clone()], Rational::one()),
        ];
        for (p, r, n) in t.reduced_coproduct() {
            terms.push((p, vec![r], Rational::from_integer(n.into())));
        }
        let mut next = BTreeMap::new();
        for ((l, r), c) in &acc {
            for (tl, tr, n) in &terms {
                let key = (forest_product(l, tl), forest_product(r, tr));
                let e = next.entry(key).or_insert_with(Rational::zero);
                *e += c * n;
            }
        }
        acc = next;
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

/// The antipode `S(t) = −t − Σ S(P^c) R^c`, extended multiplicatively.
pub fn antipode(f: &[Tree]) -> ForestPoly {
    let mut out = ForestPoly::new();
    out.insert(Vec::new(), Rational::one());
    for t in f {
        let s = antipode_tree(t);
        let mut next = ForestPoly::new();
        for (a, ca) in &out {
            for (b, cb) in &s {
                add_into(&mut next, forest_product(a, b), ca * cb);
            }
        }
        out = next;
    }
    out
}

fn antipode_tree(t: &Tree) -> ForestPoly {
    let mut out = ForestPoly::new();
    add_into(&mut out, vec![t.clone()], -Rational::one());
    for (p, r, n) in t.reduced_coproduct() {
        for (sf, c) in antipode(&p) {
            add_into(&mut out, forest_product(&sf, &[r.clone()]), -(c * Rational::from_integer(n.into())));
        }
    }
    out
}

/// `(Δ ⊗ id)Δ(t) = (id ⊗ Δ)Δ(t)` on the basis of forest triples.
pub fn coassociative_on(t: &Tree) -> bool {
    let delta = forest_coproduct(std::slice::from_ref(t));
    let mut left: BTreeMap<(Forest, Forest, Forest), Rational> = BTreeMap::new();
    let mut right = left.clone();
    for ((a, b), c) in &delta {
        for ((a1, a2), c1) in forest_coproduct(a) {
            *left.entry((a1, a2, b.clone())).or_insert_with(Rational::zero) += c * &c1;
        }
        for ((b1, b2), c2) in forest_coproduct(b) {
            *right.entry((a.clone(), b1, b2)).or_insert_with(Rational::zero) += c * &c2;
        }
    }
    left.retain(|_, c| !c.is_zero());
    right.retain(|_, c| !c.is_zero());
    left == right
}

/// `m(S ⊗ id)Δ(t) = 0 = m(id ⊗ S)Δ(t)` for a tree (which has counit 0).
pub fn antipode_identities_hold(t: &Tree) -> bool {
    let delta = forest_coproduct(std::slice::from_ref(t));
    let mut left = ForestPoly::new();
    let mut right = ForestPoly::new();
    for ((a, b), c) in &delta {
        for (sa, ca) in antipode(a) {
            add_into(&mut left, forest_product(&sa, b), c * ca);
        }
        for (sb, cb) in antipode(b) {
            add_into(&mut right, forest_product(a, &sb), c * cb);
        }
    }
    left.is_empty() && right.is_empty()
}

/// Independent enumeration: attach a leaf at every vertex of every tree with
/// `n − 1` vertices and deduplicate canonical forms.
pub fn enumerate_trees_by_growth(n: u32) -> BTreeSet<Tree> {
    fn grow(t: &Tree) -> Vec<Tree> {
        let mut out = vec![Tree::from_children(t.children.iter().cloned().chain([Tree::vertex()]).collect())];
        for (i, c) in t.children.iter().enumerate() {
            for g in grow(c) {
                let mut kids = t.children.clone();
                kids[i] = g;
                out.push(Tree::from_children(kids));
            }
        }
        out
    }
    let mut level: BTreeSet<Tree> = [Tree::vertex()].into_iter().collect();
    for _ in 1..n {
        level = level.iter().flat_map(grow).collect();
    }
    if n == 0 {
        level.clear();
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_trees(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 4, 9, 20]);
        for n in 1..=6 {
            let grown: Vec<Tree> = enumerate_trees_by_growth(n).into_iter().collect();
            assert_eq!(grown, enumerate_trees(n));
        }
    }

    #[test]
    fn parse_roundtrip() {
        for t in enumerate_trees(5) {
            assert_eq!(Tree::parse(&t.to_string()).unwrap(), t);
        }
        assert_eq!(Tree::parse("((())())").unwrap().to_string(), "(()(()))");
        assert!(Tree::parse("(()").is_err());
        assert!(Tree::parse("()()").is_err());
    }

    #[test]
    fn small_coproducts() {
        assert!(Tree::vertex().reduced_coproduct().is_empty());
        let l2 = Tree::ladder(2);
        assert_eq!(l2.reduced_coproduct(), vec![(vec![Tree::vertex()], Tree::vertex(), 1)]);
        // Cherry: two single-edge cuts give •⊗ladder₂ twice, the double cut gives ••⊗•.
        let cherry = Tree::graft(&[Tree::vertex(), Tree::vertex()]);
        let dc = cherry.reduced_coproduct();
        assert!(dc.contains(&(vec![Tree::vertex()], Tree::ladder(2), 2)));
        assert!(dc.contains(&(vec![Tree::vertex(), Tree::vertex()], Tree::vertex(), 1)));
        assert_eq!(dc.len(), 2);
    }

    #[test]
    fn hopf_axioms_up_to_five_vertices() {
        for n in 1..=5 {
            for t in enumerate_trees(n) {
                assert!(coassociative_on(&t), "coassociativity fails on {t}");
                assert!(antipode_identities_hold(&t), "antipode fails on {t}");
            }
        }
    }
}
