use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::SeriesError;

/// Exact rational scalar. `BigRational` keeps itself reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `"num/den"`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"num/den"` or a bare integer `"num"`.
pub fn parse_rational(s: &str) -> Result<Rational, SeriesError> {
    let s = s.trim();
    let bad = || SeriesError::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Very large numerators/denominators: fall back to a ratio of logs.
        let sign = if r.is_negative() { -1.0 } else { 1.0 };
        let n = r.numer().abs().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        sign * (n.ln() - d.ln()).exp()
    })
}

pub fn factorial(n: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * int(k as i64))
}

pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_is_reduced() {
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(5)), "5/1");
        assert_eq!(format_rational(&Rational::zero()), "0/1");
    }

    #[test]
    fn parse_roundtrip_and_errors() {
        for r in [rat(-3, 7), int(0), rat(123456789, 1000)] {
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
        assert_eq!(parse_rational("4").unwrap(), int(4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(5), int(120));
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(2, 5), int(0));
    }
}
