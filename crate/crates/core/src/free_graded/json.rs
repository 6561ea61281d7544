use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::series::NCSeries;
use super::word::Word;
use super::FreeGradedError;
use crate::scalar_series::{format_rational, parse_rational, Coefficient, LaurentSeries, PolyCoeff, Rational};

/// Coefficient types with a JSON wire form.
pub trait JsonCoeff: Coefficient {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, FreeGradedError>;
}

impl JsonCoeff for Rational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self, FreeGradedError> {
        match v {
            Value::String(s) => Ok(parse_rational(s)?),
            other => Err(FreeGradedError::Parse(format!("expected a rational string, got {other}"))),
        }
    }
}

impl JsonCoeff for LaurentSeries {
    fn to_json(&self) -> Value {
        LaurentSeries::to_json(self)
    }

    fn from_json(v: &Value) -> Result<Self, FreeGradedError> {
        Ok(LaurentSeries::from_json(v)?)
    }
}

/// Polynomials travel as `z`-constant Laurent series.
impl JsonCoeff for PolyCoeff {
    fn to_json(&self) -> Value {
        LaurentSeries::constant(self.clone()).to_json()
    }

    fn from_json(v: &Value) -> Result<Self, FreeGradedError> {
        let x = LaurentSeries::from_json(v)?;
        if x.terms().any(|(k, _)| k != 0) || !x.is_exact() {
            return Err(FreeGradedError::Parse("expected a z-constant coefficient".into()));
        }
        Ok(x.constant_term())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    word: Vec<u32>,
    coeff: Value,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesJson {
    trunc: u32,
    terms: Vec<TermJson>,
}

impl<C: JsonCoeff> NCSeries<C> {
    pub fn to_json(&self) -> Value {
        let j = SeriesJson {
            trunc: self.trunc(),
            terms: self
                .terms()
                .map(|(w, c)| TermJson { word: w.letters().to_vec(), coeff: c.to_json() })
                .collect(),
        };
        serde_json::to_value(j).expect("series serialization is infallible")
    }

    pub fn from_json(v: &Value) -> Result<Self, FreeGradedError> {
        let j: SeriesJson = serde_json::from_value(v.clone()).map_err(|e| FreeGradedError::Parse(e.to_string()))?;
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in j.terms {
            let w = Word::try_new(t.word).ok_or_else(|| FreeGradedError::Parse("word letters must be positive".into()))?;
            if w.degree() > j.trunc {
                return Err(FreeGradedError::Parse(format!("word {w} exceeds trunc {}", j.trunc)));
            }
            terms.push((w, C::from_json(&t.coeff)?));
        }
        Ok(NCSeries::from_terms(j.trunc, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_series::{rat, Symbol};

    #[test]
    fn rational_series_roundtrip() {
        let x = NCSeries::<Rational>::generator(3, 1).exp().unwrap();
        let text = serde_json::to_string(&x.to_json()).unwrap();
        assert!(text.starts_with(r#"{"trunc":3,"terms":[{"word":[],"coeff":"1/1"},{"word":[1],"coeff":"1/1"}"#));
        assert_eq!(NCSeries::<Rational>::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn laurent_series_roundtrip() {
        let c = LaurentSeries::symbol(Symbol::L).shift(-1).scale(&rat(-1, 2));
        let x = NCSeries::<LaurentSeries>::generator(4, 2).scale(&c);
        assert_eq!(NCSeries::<LaurentSeries>::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn rejects_bad_words() {
        let v = serde_json::json!({"trunc": 2, "terms": [{"word": [3], "coeff": "1"}]});
        assert!(NCSeries::<Rational>::from_json(&v).is_err());
        let v = serde_json::json!({"trunc": 2, "terms": [{"word": [0], "coeff": "1"}]});
        assert!(NCSeries::<Rational>::from_json(&v).is_err());
    }
}
