use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{PolyCoeff, Symbol};
use super::rational::{format_rational, int, Rational};
use super::SeriesError;

/// Laurent series in `z` with polynomial coefficients.
///
/// A series is either an exact Laurent polynomial (`order == None`) or is known
/// modulo `O(z^(order+1))`. Products of series with poles lose precision, so
/// the bound is propagated instead of a fixed cut, which keeps truncated
/// arithmetic associative and every pole part that is reported exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    val: i32,
    coeffs: Vec<PolyCoeff>,
    order: Option<i32>,
}

impl LaurentSeries {
    pub fn zero() -> Self {
        LaurentSeries { val: 0, coeffs: Vec::new(), order: None }
    }

    pub fn one() -> Self {
        LaurentSeries::constant(PolyCoeff::one())
    }

    pub fn constant(c: PolyCoeff) -> Self {
        LaurentSeries::monomial(c, 0)
    }

    pub fn rational(r: Rational) -> Self {
        LaurentSeries::constant(PolyCoeff::constant(r))
    }

    /// `c·z^k`
    pub fn monomial(c: PolyCoeff, k: i32) -> Self {
        LaurentSeries::from_terms([(k, c)])
    }

    pub fn z_pow(k: i32) -> Self {
        LaurentSeries::monomial(PolyCoeff::one(), k)
    }

    pub fn symbol(s: Symbol) -> Self {
        LaurentSeries::constant(PolyCoeff::symbol(s))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, PolyCoeff)>) -> Self {
        LaurentSeries::from_terms_with_order(terms, None)
    }

    /// Builds a series known modulo `O(z^(order+1))` when `order` is set.
    pub fn from_terms_with_order(terms: impl IntoIterator<Item = (i32, PolyCoeff)>, order: Option<i32>) -> Self {
        let terms: Vec<(i32, PolyCoeff)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|(k, _)| *k).min() else {
            return LaurentSeries { val: 0, coeffs: Vec::new(), order };
        };
        let hi = terms.iter().map(|(k, _)| *k).max().unwrap_or(lo);
        let mut coeffs = vec![PolyCoeff::zero(); (hi - lo + 1) as usize];
        for (k, c) in terms {
            let slot = &mut coeffs[(k - lo) as usize];
            *slot = &*slot + &c;
        }
        let mut s = LaurentSeries { val: lo, coeffs, order };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(o) = self.order {
            let keep = (o - self.val + 1).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(PolyCoeff::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.val = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.val += lead as i32;
        }
    }

    /// Exact zero (an `O(z^n)` remainder alone is not zero).
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.order.is_none()
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    /// Highest power of `z` that is known, `None` when exact.
    pub fn order(&self) -> Option<i32> {
        self.order
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    /// Lower bound on the valuation, counting the unknown tail.
    fn valuation_bound(&self) -> Option<i32> {
        match (self.valuation(), self.order) {
            (Some(v), _) => Some(v),
            (None, Some(o)) => Some(o + 1),
            (None, None) => None,
        }
    }

    /// Largest exponent carrying a nonzero coefficient.
    pub fn degree(&self) -> Option<i32> {
        (!self.coeffs.is_empty()).then(|| self.val + self.coeffs.len() as i32 - 1)
    }

    pub fn pole_order(&self) -> u32 {
        self.valuation().map_or(0, |v| (-v).max(0) as u32)
    }

    pub fn coeff(&self, k: i32) -> PolyCoeff {
        if k < self.val {
            return PolyCoeff::zero();
        }
        self.coeffs
            .get((k - self.val) as usize)
            .cloned()
            .unwrap_or_else(PolyCoeff::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &PolyCoeff)> {
        let val = self.val;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (val + i as i32, c))
    }

    pub fn constant_term(&self) -> PolyCoeff {
        self.coeff(0)
    }

    /// Marks everything above `z^cap` as unknown.
    pub fn truncated(&self, cap: i32) -> LaurentSeries {
        let mut s = self.clone();
        s.order = Some(s.order.map_or(cap, |o| o.min(cap)));
        s.normalize();
        s
    }

    /// Forgets the precision bound, reading the series as the polynomial it stores.
    pub fn as_exact(&self) -> LaurentSeries {
        LaurentSeries { order: None, ..self.clone() }
    }

    pub fn map_coeffs(&self, f: impl Fn(&PolyCoeff) -> PolyCoeff) -> LaurentSeries {
        let mut s = LaurentSeries {
            val: self.val,
            coeffs: self.coeffs.iter().map(f).collect(),
            order: self.order,
        };
        s.normalize();
        s
    }

    pub fn scale(&self, r: &Rational) -> LaurentSeries {
        if r.is_zero() {
            return LaurentSeries::zero();
        }
        self.map_coeffs(|c| c.scale(r))
    }

    pub fn scale_poly(&self, p: &PolyCoeff) -> LaurentSeries {
        if p.is_zero() {
            return LaurentSeries::zero();
        }
        self.map_coeffs(|c| c * p)
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i32) -> LaurentSeries {
        if self.coeffs.is_empty() && self.order.is_none() {
            return self.clone();
        }
        LaurentSeries {
            val: self.val + k,
            coeffs: self.coeffs.clone(),
            order: self.order.map(|o| o + k),
        }
    }

    pub fn pow(&self, n: u32) -> LaurentSeries {
        (0..n).fold(LaurentSeries::one(), |acc, _| &acc * self)
    }

    /// Multiplicative inverse, expanded up to `z^cap` when it is not a Laurent polynomial.
    pub fn invert(&self, cap: i32) -> Result<LaurentSeries, SeriesError> {
        let lead = self.coeffs.first().ok_or(SeriesError::InvertNonUnit)?;
        let c0 = lead.as_rational().filter(|c| !c.is_zero()).ok_or(SeriesError::InvertNonUnit)?;
        let k = self.val;
        if self.coeffs.len() == 1 && self.order.is_none() {
            return Ok(LaurentSeries::monomial(PolyCoeff::constant(c0.recip()), -k));
        }
        let order = match self.order {
            Some(o) => cap.min(o - 2 * k),
            None => cap,
        };
        let inv_c0 = c0.recip();
        let len = (order + k + 1).max(0) as usize;
        let mut r: Vec<PolyCoeff> = Vec::with_capacity(len);
        for n in 0..len {
            if n == 0 {
                r.push(PolyCoeff::constant(inv_c0.clone()));
                continue;
            }
            let mut acc = PolyCoeff::zero();
            for i in 1..=n.min(self.coeffs.len() - 1) {
                acc = &acc + &(&self.coeffs[i] * &r[n - i]);
            }
            r.push(acc.scale(&-inv_c0.clone()));
        }
        Ok(LaurentSeries::from_terms_with_order(
            r.into_iter().enumerate().map(|(i, c)| (i as i32 - k, c)),
            Some(order),
        ))
    }

    pub fn derivative(&self) -> LaurentSeries {
        LaurentSeries::from_terms_with_order(
            self.terms().map(|(k, c)| (k - 1, c.scale(&int(k as i64)))),
            self.order.map(|o| o - 1),
        )
    }

    /// Term-wise antiderivative with zero constant term; fails with the residue
    /// when a `z^-1` term is present.
    pub fn antiderivative(&self) -> Result<LaurentSeries, PolyCoeff> {
        let residue = self.coeff(-1);
        if !residue.is_zero() {
            return Err(residue);
        }
        Ok(LaurentSeries::from_terms_with_order(
            self.terms().map(|(k, c)| (k + 1, c.scale(&Rational::new(1.into(), (k + 1).into())))),
            self.order.map(|o| o + 1),
        ))
    }

    /// Projection onto `z^-1 Q[z^-1]` (minimal subtraction).
    pub fn pole_part(&self) -> LaurentSeries {
        let order = self.order.filter(|&o| o < -1);
        LaurentSeries::from_terms_with_order(
            self.terms().filter(|(k, _)| *k < 0).map(|(k, c)| (k, c.clone())),
            order,
        )
    }

    pub fn regular_part(&self) -> LaurentSeries {
        self - &self.pole_part()
    }

    pub fn contains(&self, symbol: Symbol) -> bool {
        self.coeffs.iter().any(|c| c.contains(symbol))
    }

    /// Replaces `symbol` by `symbol + shift` in every coefficient.
    pub fn shift_symbol(&self, symbol: Symbol, shift: &PolyCoeff) -> Result<LaurentSeries, SeriesError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.shift_symbol(symbol, shift))
            .collect::<Result<Vec<_>, _>>()?;
        let mut s = LaurentSeries { val: self.val, coeffs, order: self.order };
        s.normalize();
        Ok(s)
    }

    pub fn substitute(&self, symbol: Symbol, value: &PolyCoeff) -> LaurentSeries {
        self.map_coeffs(|c| c.substitute(symbol, value))
    }

    /// `exp(self)` for a series without constant term or poles, expanded to `z^cap`.
    pub fn exp(&self, cap: i32) -> Result<LaurentSeries, SeriesError> {
        if self.valuation_bound().is_some_and(|v| v < 1) {
            return Err(SeriesError::NotExponentiable);
        }
        if self.is_zero() {
            return Ok(LaurentSeries::one());
        }
        let order = self.order.map_or(cap, |o| o.min(cap));
        let mut out = LaurentSeries::one();
        let mut term = LaurentSeries::one();
        for j in 1..=order.max(0) {
            term = (&term * self).truncated(order).scale(&Rational::new(1.into(), j.into()));
            if term.is_zero() {
                break;
            }
            out = &out + &term;
        }
        Ok(out.truncated(order))
    }

    /// Numeric value at `z0`; unassigned symbols read as 0.
    pub fn eval_numeric(&self, z0: f64, assignment: &dyn Fn(Symbol) -> f64) -> Result<f64, SeriesError> {
        if z0 == 0.0 {
            if self.pole_order() > 0 {
                return Err(SeriesError::ZeroPoint);
            }
            return Ok(self.constant_term().eval(assignment));
        }
        Ok(self.terms().map(|(k, c)| c.eval(assignment) * z0.powi(k)).sum())
    }

    /// Equality on the common range of known exponents.
    pub fn agrees_with(&self, other: &LaurentSeries) -> bool {
        let cap = match (self.order, other.order) {
            (None, None) => return self == other,
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
        };
        let lo = self.val.min(other.val);
        (lo..=cap).all(|k| self.coeff(k) == other.coeff(k))
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        let order = match (self.order, rhs.order) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        LaurentSeries::from_terms_with_order(
            self.terms().chain(rhs.terms()).map(|(k, c)| (k, c.clone())),
            order,
        )
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        self.map_coeffs(|c| -c)
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        if self.is_zero() || rhs.is_zero() {
            return LaurentSeries::zero();
        }
        let order = match (self.order, rhs.order) {
            (None, None) => None,
            (a, b) => {
                let from_a = a.zip(rhs.valuation_bound()).map(|(o, v)| o + v);
                let from_b = b.zip(self.valuation_bound()).map(|(o, v)| o + v);
                match (from_a, from_b) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, y) => x.or(y),
                }
            }
        };
        let mut coeffs = vec![PolyCoeff::zero(); (self.coeffs.len() + rhs.coeffs.len()).saturating_sub(1)];
        let val = self.val + rhs.val;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                if let Some(o) = order {
                    if val + (i + j) as i32 > o {
                        break;
                    }
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        let mut s = LaurentSeries { val, coeffs, order };
        s.normalize();
        s
    }
}

macro_rules! owned_ops {
    ($ty:ty) => {
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
    };
}

owned_ops!(LaurentSeries);
owned_ops!(PolyCoeff);

impl Zero for LaurentSeries {
    fn zero() -> Self {
        LaurentSeries::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentSeries::is_zero(self)
    }
}

impl One for LaurentSeries {
    fn one() -> Self {
        LaurentSeries::one()
    }
}

impl Zero for PolyCoeff {
    fn zero() -> Self {
        PolyCoeff::zero()
    }
    fn is_zero(&self) -> bool {
        PolyCoeff::is_zero(self)
    }
}

impl One for PolyCoeff {
    fn one() -> Self {
        PolyCoeff::one()
    }
}

impl From<PolyCoeff> for LaurentSeries {
    fn from(c: PolyCoeff) -> Self {
        LaurentSeries::constant(c)
    }
}

impl From<Rational> for LaurentSeries {
    fn from(r: Rational) -> Self {
        LaurentSeries::rational(r)
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match c.as_rational() {
                Some(r) => write!(f, "{}", format_rational(&r))?,
                None => write!(f, "({c})")?,
            }
            if k != 0 {
                write!(f, "*z^{k}")?;
            }
        }
        if let Some(o) = self.order {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "O(z^{})", o + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
