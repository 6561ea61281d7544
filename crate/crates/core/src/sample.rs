//! Random inputs for property checks: Lie elements, Laurent coefficients,
//! characters and regular gauges. Everything takes a caller-supplied RNG so
//! runs are reproducible from a seed.

use rand::Rng;

use crate::free_graded::{NCSeries, Word};
use crate::hopf_characters::{Character, HopfPresentation, RootedTrees, ShuffleHopf, Tree};
use crate::scalar_series::{int, rat, LaurentSeries, PolyCoeff, Rational};

/// A small nonzero rational `p/q` with `|p| ≤ 5`, `1 ≤ q ≤ 4`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let mut p = rng.gen_range(-5..=5i64);
    if p == 0 {
        p = 1;
    }
    rat(p, rng.gen_range(1..=4))
}

/// Random Laurent polynomial with exponents in `lo..=hi`.
pub fn laurent<R: Rng + ?Sized>(rng: &mut R, lo: i32, hi: i32) -> LaurentSeries {
    let mut terms = Vec::new();
    for k in lo..=hi {
        if rng.gen_bool(0.7) {
            terms.push((k, PolyCoeff::constant(small_rational(rng))));
        }
    }
    LaurentSeries::from_terms(terms)
}

/// A random homogeneous Lie monomial of the given degree: a left-nested
/// bracket of generators.
fn lie_monomial<R: Rng + ?Sized>(rng: &mut R, trunc: u32, degree: u32) -> NCSeries<Rational> {
    let first = rng.gen_range(1..=degree);
    let mut x = NCSeries::generator(trunc, first);
    let mut left = degree - first;
    while left > 0 {
        let k = rng.gen_range(1..=left);
        x = x.bracket(&NCSeries::generator(trunc, k));
        left -= k;
    }
    x
}

/// A random Lie element with rational coefficients and a few terms in each
/// degree `≤ trunc`.
pub fn lie_element<R: Rng + ?Sized>(rng: &mut R, trunc: u32) -> NCSeries<Rational> {
    let mut out = NCSeries::zero(trunc);
    for d in 1..=trunc {
        for _ in 0..rng.gen_range(0..=2) {
            out = &out + &lie_monomial(rng, trunc, d).scale_rational(&small_rational(rng));
        }
    }
    if out.is_zero() {
        out = NCSeries::generator(trunc, 1);
    }
    out
}

/// A Lie element whose coefficients are Laurent polynomials in `z^lo..=z^hi`.
pub fn laurent_lie_element<R: Rng + ?Sized>(rng: &mut R, trunc: u32, lo: i32, hi: i32) -> NCSeries<LaurentSeries> {
    let mut out = NCSeries::zero(trunc);
    for d in 1..=trunc {
        for _ in 0..rng.gen_range(0..=2) {
            let c = laurent(rng, lo, hi);
            out = &out + &lie_monomial(rng, trunc, d).to_laurent().scale(&c);
        }
    }
    out
}

/// `exp` of a random Lie element with poles of order `≤ max_pole`.
pub fn shuffle_character<R: Rng + ?Sized>(rng: &mut R, trunc: u32, max_pole: u32) -> Character<Word> {
    let x = laurent_lie_element(rng, trunc, -(max_pole as i32), 2);
    Character::from_series(&ShuffleHopf::new(trunc), &x.exp().expect("Lie elements have zero constant term"))
}

/// Random values with poles of order `≤ max_pole` on every tree.
pub fn tree_character<R: Rng + ?Sized>(rng: &mut R, p: &RootedTrees, max_pole: u32) -> Character<Tree> {
    let values: Vec<(Tree, LaurentSeries)> =
        p.generators().into_iter().map(|t| (t, laurent(rng, -(max_pole as i32), 2))).collect();
    Character::from_values(p, values)
}

/// A regular grouplike element `exp(x)` with `x` polynomial in `z`.
pub fn regular_group_element<R: Rng + ?Sized>(rng: &mut R, trunc: u32) -> NCSeries<LaurentSeries> {
    laurent_lie_element(rng, trunc, 0, 2).exp().expect("Lie elements have zero constant term")
}

/// `Σ_n c_n e_n` with nonzero integer `c_n`, a convenient nondegenerate `β`.
pub fn generator_sum<R: Rng + ?Sized>(rng: &mut R, trunc: u32) -> NCSeries<Rational> {
    (1..=trunc).fold(NCSeries::zero(trunc), |acc, n| {
        &acc + &NCSeries::generator(trunc, n).scale_rational(&int(rng.gen_range(1..=3)))
    })
}
