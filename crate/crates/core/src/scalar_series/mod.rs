//! Exact scalar arithmetic: rationals, polynomials in the symbols `L, v, s, t`,
//! and Laurent series in `z` over those polynomials, with the minimal
//! subtraction projection [`LaurentSeries::pole_part`].

mod json;
mod laurent;
mod poly;
mod rational;

use std::fmt::Debug;

use num_traits::{One, Zero};
use thiserror::Error;

pub use json::{LaurentJson, MonomialJson, ZTermJson};
pub use laurent::LaurentSeries;
pub use poly::{Monomial, PolyCoeff, Symbol};
pub use rational::{binomial, factorial, format_rational, int, parse_rational, rat, to_f64, Rational};

/// Default truncation order for infinite expansions and word degrees.
pub const DEFAULT_TRUNC: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("leading coefficient is zero or not a pure rational")]
    InvertNonUnit,
    #[error("shift for symbol {0} refers to the symbol itself")]
    SelfReference(&'static str),
    #[error("cannot evaluate a series with a pole at z = 0")]
    ZeroPoint,
    #[error("exponential needs a series with positive z-valuation")]
    NotExponentiable,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Coefficient rings for noncommutative series.
pub trait Coefficient: Clone + PartialEq + Debug + Zero + One + Send + Sync {
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;

    fn scale_rational(&self, r: &Rational) -> Self {
        self.mul_ref(&Self::from_rational(r))
    }

    /// Equality up to the precision both sides are known to.
    fn agrees(&self, other: &Self) -> bool {
        self == other
    }
}

impl Coefficient for Rational {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl Coefficient for PolyCoeff {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        PolyCoeff::constant(r.clone())
    }
    fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(r)
    }
}

impl Coefficient for LaurentSeries {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        LaurentSeries::rational(r.clone())
    }
    fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(r)
    }
    fn agrees(&self, other: &Self) -> bool {
        self.agrees_with(other)
    }
}

/// Floating-point coefficients, used only by the numeric oracles.
impl Coefficient for f64 {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        to_f64(r)
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn arb_poly() -> impl Strategy<Value = PolyCoeff> {
        prop::collection::vec((0u32..2, 0u32..2, -4i64..5, 1i64..4), 0..3).prop_map(|ts| {
            PolyCoeff::from_terms(ts.into_iter().map(|(l, v, n, d)| {
                (Monomial([l, v, 0, 0]), rat(n, d))
            }))
        })
    }

    fn arb_series() -> impl Strategy<Value = LaurentSeries> {
        (-2i32..1, prop::collection::vec(arb_poly(), 0..5))
            .prop_map(|(lo, cs)| LaurentSeries::from_terms(cs.into_iter().enumerate().map(|(i, c)| (lo + i as i32, c))))
    }

    fn arb_truncated() -> impl Strategy<Value = LaurentSeries> {
        (arb_series(), prop::option::of(2i32..6)).prop_map(|(s, o)| match o {
            Some(o) => s.truncated(o),
            None => s,
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(x in arb_truncated(), y in arb_truncated(), w in arb_truncated()) {
            prop_assert_eq!(&(&x * &y) * &w, &x * &(&y * &w));
            prop_assert_eq!(&x * &(&y + &w), &(&x * &y) + &(&x * &w));
            prop_assert_eq!(&x * &y, &y * &x);
        }

        #[test]
        fn rota_baxter_identity(x in arb_series(), y in arb_series()) {
            let t = LaurentSeries::pole_part;
            let lhs = &(&t(&x) * &t(&y)) + &t(&(&x * &y));
            let rhs = &t(&(&x * &t(&y))) + &t(&(&t(&x) * &y));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn invert_roundtrip(x in arb_series(), lead in 1i64..5) {
            let x = &x.regular_part().shift(1) + &LaurentSeries::rational(rat(lead, 3));
            let inv = x.invert(6).unwrap();
            let prod = &x * &inv;
            prop_assert!(prod.agrees_with(&LaurentSeries::one()));
            prop_assert!(prod.order().is_none_or(|o| o >= 6));
        }

        #[test]
        fn zero_shift_is_identity(x in arb_series()) {
            prop_assert_eq!(x.shift_symbol(Symbol::L, &PolyCoeff::zero()).unwrap(), x);
        }
    }
}
