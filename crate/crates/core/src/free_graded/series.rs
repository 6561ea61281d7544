use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::word::Word;
use super::FreeGradedError;
use crate::scalar_series::{Coefficient, LaurentSeries, PolyCoeff, Rational, SeriesError};

/// Truncated noncommutative series `Σ c_w w` over words of degree `≤ trunc`.
///
/// Coefficients that are exactly zero are never stored.
#[derive(Clone, PartialEq)]
pub struct NCSeries<C> {
    trunc: u32,
    terms: BTreeMap<Word, C>,
}

/// A series with unit constant term; group elements are checked with
/// [`NCSeries::is_grouplike`], not assumed.
pub type GroupElement<C> = NCSeries<C>;

/// A primitive series (zero constant term); see [`NCSeries::is_lie`].
pub type LieElement<C> = NCSeries<C>;

impl<C: Coefficient> NCSeries<C> {
    pub fn zero(trunc: u32) -> Self {
        NCSeries { trunc, terms: BTreeMap::new() }
    }

    pub fn one(trunc: u32) -> Self {
        NCSeries::term(trunc, Word::empty(), C::one())
    }

    pub fn term(trunc: u32, word: Word, c: C) -> Self {
        NCSeries::from_terms(trunc, [(word, c)])
    }

    /// The generator `e_{-k}` with coefficient 1.
    pub fn generator(trunc: u32, k: u32) -> Self {
        NCSeries::term(trunc, Word::letter(k), C::one())
    }

    /// Sums repeated words; drops words above `trunc`.
    pub fn from_terms(trunc: u32, terms: impl IntoIterator<Item = (Word, C)>) -> Self {
        let mut s = NCSeries::zero(trunc);
        for (w, c) in terms {
            s.add_term(w, c);
        }
        s
    }

    fn add_term(&mut self, w: Word, c: C) {
        if w.degree() > self.trunc || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(old) => {
                let sum = old.add_ref(&c);
                if sum.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    /// Same series, truncated further (never raises the truncation).
    pub fn with_trunc(&self, trunc: u32) -> Self {
        let trunc = trunc.min(self.trunc);
        NCSeries {
            trunc,
            terms: self.terms.iter().filter(|(w, _)| w.degree() <= trunc).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The pairing `⟨self, w⟩`.
    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Word::empty())
    }

    /// Highest degree carrying a stored coefficient.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Word::degree).max()
    }

    /// Lowest degree carrying a stored coefficient.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Word::degree)
    }

    /// The homogeneous component of degree `n`.
    pub fn homogeneous(&self, n: u32) -> Self {
        self.filter(|w| w.degree() == n)
    }

    pub fn filter(&self, keep: impl Fn(&Word) -> bool) -> Self {
        NCSeries {
            trunc: self.trunc,
            terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Applies `f` to every coefficient, passing the word along.
    pub fn map_terms<D: Coefficient>(&self, f: impl Fn(&Word, &C) -> D) -> NCSeries<D> {
        NCSeries::from_terms(self.trunc, self.terms.iter().map(|(w, c)| (w.clone(), f(w, c))))
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> NCSeries<D> {
        self.map_terms(|_, c| f(c))
    }

    /// Fallible [`NCSeries::map_coeffs`].
    pub fn try_map_coeffs<D: Coefficient, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<NCSeries<D>, E> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (w, c) in &self.terms {
            terms.push((w.clone(), f(c)?));
        }
        Ok(NCSeries::from_terms(self.trunc, terms))
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map_coeffs(|x| c.mul_ref(x))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.map_coeffs(|x| x.scale_rational(r))
    }

    /// Concatenation product `(xy)(w) = Σ_{w=uv} x(u) y(v)`.
    pub fn concat_mul(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let mut out = NCSeries::zero(trunc);
        for (u, a) in &self.terms {
            let du = u.degree();
            if du > trunc {
                continue;
            }
            for (v, b) in &other.terms {
                if du + v.degree() <= trunc {
                    out.add_term(u.concat(v), a.mul_ref(b));
                }
            }
        }
        out
    }

    /// `xy − yx`.
    pub fn bracket(&self, other: &Self) -> Self {
        &self.concat_mul(other) - &other.concat_mul(self)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(NCSeries::one(self.trunc), |acc, _| acc.concat_mul(self))
    }

    /// The grading derivation `Y`, which is also the adjoint action of `Z0`.
    pub fn apply_grading(&self) -> Self {
        self.map_terms(|w, c| c.scale_rational(&Rational::from_integer(w.degree().into())))
    }

    /// Multiplies the degree-`n` component by `factor(n)`.
    pub fn scale_by_grading(&self, factor: impl Fn(u32) -> C) -> Self {
        self.map_terms(|w, c| factor(w.degree()).mul_ref(c))
    }

    /// `u^Y`: multiplies the degree-`n` component by `u^n`.
    pub fn grading_power(&self, u: &C) -> Self {
        let powers: Vec<C> = (0..=self.trunc)
            .scan(C::one(), |acc, _| {
                let cur = acc.clone();
                *acc = acc.mul_ref(u);
                Some(cur)
            })
            .collect();
        self.scale_by_grading(|n| powers[n as usize].clone())
    }

    /// `exp(x)` for `x` with zero constant term; the sum is finite by truncation.
    pub fn exp(&self) -> Result<Self, FreeGradedError> {
        if !self.constant_term().agrees(&C::zero()) {
            return Err(FreeGradedError::BadConstantTerm("exp needs a zero constant term"));
        }
        let x = self.filter(|w| !w.is_empty());
        let mut out = NCSeries::one(self.trunc);
        let mut term = NCSeries::one(self.trunc);
        for k in 1..=self.trunc {
            term = term.concat_mul(&x).scale_rational(&Rational::new(1.into(), k.into()));
            if term.is_zero() {
                break;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `log(x)` for `x` with constant term 1.
    pub fn log(&self) -> Result<Self, FreeGradedError> {
        let y = self.unit_deviation("log needs constant term 1")?;
        let mut out = NCSeries::zero(self.trunc);
        let mut power = NCSeries::one(self.trunc);
        for k in 1..=self.trunc {
            power = power.concat_mul(&y);
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = &out + &power.scale_rational(&Rational::new(sign.into(), k.into()));
        }
        Ok(out)
    }

    /// Inverse for the concatenation product, for `x` with constant term 1.
    pub fn inverse(&self) -> Result<Self, FreeGradedError> {
        let y = self.unit_deviation("inverse needs constant term 1")?;
        let minus_y = -&y;
        let mut out = NCSeries::one(self.trunc);
        let mut power = NCSeries::one(self.trunc);
        for _ in 1..=self.trunc {
            power = power.concat_mul(&minus_y);
            if power.is_zero() {
                break;
            }
            out = &out + &power;
        }
        Ok(out)
    }

    fn unit_deviation(&self, why: &'static str) -> Result<Self, FreeGradedError> {
        if !self.constant_term().agrees(&C::one()) {
            return Err(FreeGradedError::BadConstantTerm(why));
        }
        Ok(self.filter(|w| !w.is_empty()))
    }

    /// Pairs against a rational word combination: `Σ p_w ⟨self, w⟩`.
    pub fn pair(&self, p: &NCSeries<Rational>) -> C {
        p.terms().fold(C::zero(), |acc, (w, r)| acc.add_ref(&self.coeff(w).scale_rational(r)))
    }

    /// Grouplike test: `⟨g, u ⧢ w⟩ = ⟨g, u⟩⟨g, w⟩` for all nonempty words with
    /// `deg u + deg w ≤ trunc`, and constant term 1.
    pub fn is_grouplike(&self) -> bool {
        if !self.constant_term().agrees(&C::one()) {
            return false;
        }
        let words = Word::all_up_to_degree(self.trunc);
        for u in &words {
            for w in &words {
                if u.degree() + w.degree() > self.trunc || w < u {
                    continue;
                }
                let lhs = self.pair(&super::shuffle::shuffle(u, w));
                let rhs = self.coeff(u).mul_ref(&self.coeff(w));
                if !lhs.agrees(&rhs) {
                    return false;
                }
            }
        }
        true
    }

    /// Primitivity test: zero constant term and `⟨x, u ⧢ w⟩ = 0` for all
    /// nonempty `u, w`; exactly the Lie elements of the free algebra.
    pub fn is_lie(&self) -> bool {
        if !self.constant_term().agrees(&C::zero()) {
            return false;
        }
        let words = Word::all_up_to_degree(self.trunc);
        for u in &words {
            for w in &words {
                if u.degree() + w.degree() > self.trunc || w < u {
                    continue;
                }
                if !self.pair(&super::shuffle::shuffle(u, w)).agrees(&C::zero()) {
                    return false;
                }
            }
        }
        true
    }

    /// Coefficientwise comparison with [`Coefficient::agrees`].
    pub fn agrees(&self, other: &Self) -> bool {
        let zero = C::zero();
        let keys = self.terms.keys().chain(other.terms.keys());
        keys.into_iter().all(|w| {
            self.terms.get(w).unwrap_or(&zero).agrees(other.terms.get(w).unwrap_or(&zero))
        })
    }
}

impl NCSeries<LaurentSeries> {
    /// `θ_E`: multiplies the degree-`n` component by `exp(nE)`, expanded up to
    /// `z^cap`. `E` must have positive `z`-valuation.
    pub fn theta(&self, exponent: &LaurentSeries, cap: i32) -> Result<Self, SeriesError> {
        let mut factors = Vec::with_capacity(self.trunc as usize + 1);
        for n in 0..=self.trunc {
            factors.push(exponent.scale(&Rational::from_integer(n.into())).exp(cap)?);
        }
        Ok(self.scale_by_grading(|n| factors[n as usize].clone()))
    }

    /// Drops terms above `z^cap` in every coefficient.
    pub fn truncate_z(&self, cap: i32) -> Self {
        self.map_coeffs(|c| c.truncated(cap))
    }

    pub fn pole_part(&self) -> Self {
        self.map_coeffs(LaurentSeries::pole_part)
    }

    pub fn regular_part(&self) -> Self {
        self.map_coeffs(LaurentSeries::regular_part)
    }

    pub fn derivative(&self) -> Self {
        self.map_coeffs(LaurentSeries::derivative)
    }

    /// Value at `z = 0` of a series with regular coefficients.
    pub fn at_zero(&self) -> NCSeries<PolyCoeff> {
        self.map_coeffs(LaurentSeries::constant_term)
    }
}

impl<C: Coefficient> NCSeries<C> {
    /// Embeds rational series into another coefficient ring.
    pub fn from_rational_series(x: &NCSeries<Rational>) -> Self {
        x.map_coeffs(C::from_rational)
    }
}

impl NCSeries<Rational> {
    pub fn to_laurent(&self) -> NCSeries<LaurentSeries> {
        NCSeries::from_rational_series(self)
    }
}

impl NCSeries<PolyCoeff> {
    pub fn to_laurent(&self) -> NCSeries<LaurentSeries> {
        self.map_coeffs(|c| LaurentSeries::constant(c.clone()))
    }
}

impl<C: Coefficient> Add for &NCSeries<C> {
    type Output = NCSeries<C>;
    fn add(self, rhs: &NCSeries<C>) -> NCSeries<C> {
        let mut out = self.with_trunc(rhs.trunc);
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<C: Coefficient> Sub for &NCSeries<C> {
    type Output = NCSeries<C>;
    fn sub(self, rhs: &NCSeries<C>) -> NCSeries<C> {
        let mut out = self.with_trunc(rhs.trunc);
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.neg_ref());
        }
        out
    }
}

impl<C: Coefficient> Neg for &NCSeries<C> {
    type Output = NCSeries<C>;
    fn neg(self) -> NCSeries<C> {
        self.map_coeffs(C::neg_ref)
    }
}

impl<C: Coefficient> Mul for &NCSeries<C> {
    type Output = NCSeries<C>;
    fn mul(self, rhs: &NCSeries<C>) -> NCSeries<C> {
        self.concat_mul(rhs)
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for NCSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]{w}")?;
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for NCSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}
