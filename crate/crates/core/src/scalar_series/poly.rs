use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{binomial, format_rational, to_f64, Rational};
use super::SeriesError;

/// The fixed symbol set carried by polynomial coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// `log μ`
    L,
    /// fiber coordinate
    V,
    /// section slope
    S,
    /// flow parameter
    T,
}

impl Symbol {
    pub const ALL: [Symbol; 4] = [Symbol::L, Symbol::V, Symbol::S, Symbol::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::L => "L",
            Symbol::V => "v",
            Symbol::S => "s",
            Symbol::T => "t",
        }
    }

    pub fn from_name(name: &str) -> Option<Symbol> {
        Symbol::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// Exponent vector over `(L, v, s, t)`, ordered graded-lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn of(symbol: Symbol, exp: u32) -> Monomial {
        let mut e = [0; 4];
        e[symbol.index()] = exp;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, symbol: Symbol) -> u32 {
        self.0[symbol.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `L, v, s, t` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyCoeff {
    terms: BTreeMap<Monomial, Rational>,
}

impl PolyCoeff {
    pub fn zero() -> Self {
        PolyCoeff::default()
    }

    pub fn one() -> Self {
        PolyCoeff::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        PolyCoeff::monomial(Monomial::ONE, c)
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        PolyCoeff { terms }
    }

    pub fn symbol(s: Symbol) -> Self {
        PolyCoeff::monomial(Monomial::of(s, 1), Rational::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = PolyCoeff::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The rational value if no symbol occurs.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn contains(&self, symbol: Symbol) -> bool {
        self.terms.keys().any(|m| m.exp(symbol) > 0)
    }

    pub fn max_exp(&self, symbol: Symbol) -> u32 {
        self.terms.keys().map(|m| m.exp(symbol)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> PolyCoeff {
        if c.is_zero() {
            return PolyCoeff::zero();
        }
        PolyCoeff {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> PolyCoeff {
        (0..n).fold(PolyCoeff::one(), |acc, _| &acc * self)
    }

    /// Replaces `symbol` by `symbol + shift`, expanding binomially.
    pub fn shift_symbol(&self, symbol: Symbol, shift: &PolyCoeff) -> Result<PolyCoeff, SeriesError> {
        if shift.contains(symbol) {
            return Err(SeriesError::SelfReference(symbol.name()));
        }
        let max = self.max_exp(symbol);
        let shift_powers: Vec<PolyCoeff> = (0..=max).scan(PolyCoeff::one(), |acc, k| {
            let cur = acc.clone();
            if k < max {
                *acc = &*acc * shift;
            }
            Some(cur)
        })
        .collect();
        let mut out = PolyCoeff::zero();
        for (m, c) in &self.terms {
            let j = m.exp(symbol);
            let mut rest = *m;
            rest.0[symbol.index()] = 0;
            for i in 0..=j {
                // (symbol + shift)^j = Σ C(j,i) symbol^i shift^(j-i)
                let base = PolyCoeff::monomial(rest.mul(&Monomial::of(symbol, i)), c * binomial(j, i));
                out = &out + &(&base * &shift_powers[(j - i) as usize]);
            }
        }
        Ok(out)
    }

    /// Replaces `symbol` by a polynomial value.
    pub fn substitute(&self, symbol: Symbol, value: &PolyCoeff) -> PolyCoeff {
        let mut out = PolyCoeff::zero();
        for (m, c) in &self.terms {
            let j = m.exp(symbol);
            let mut rest = *m;
            rest.0[symbol.index()] = 0;
            out = &out + &(&PolyCoeff::monomial(rest, c.clone()) * &value.pow(j));
        }
        out
    }

    /// Evaluates with unassigned symbols read as 0.
    pub fn eval(&self, assignment: &dyn Fn(Symbol) -> f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                Symbol::ALL.iter().fold(to_f64(c), |acc, &s| {
                    let e = m.exp(s);
                    if e == 0 { acc } else { acc * assignment(s).powi(e as i32) }
                })
            })
            .sum()
    }
}

impl Add for &PolyCoeff {
    type Output = PolyCoeff;
    fn add(self, rhs: &PolyCoeff) -> PolyCoeff {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &PolyCoeff {
    type Output = PolyCoeff;
    fn sub(self, rhs: &PolyCoeff) -> PolyCoeff {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &PolyCoeff {
    type Output = PolyCoeff;
    fn mul(self, rhs: &PolyCoeff) -> PolyCoeff {
        let mut out = PolyCoeff::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &PolyCoeff {
    type Output = PolyCoeff;
    fn neg(self) -> PolyCoeff {
        PolyCoeff {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl From<Rational> for PolyCoeff {
    fn from(r: Rational) -> Self {
        PolyCoeff::constant(r)
    }
}

impl fmt::Debug for PolyCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PolyCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", format_rational(c))?;
            for s in Symbol::ALL {
                match m.exp(s) {
                    0 => {}
                    1 => write!(f, "*{}", s.name())?,
                    e => write!(f, "*{}^{}", s.name(), e)?,
                }
            }
        }
        Ok(())
    }
}
