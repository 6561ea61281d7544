use serde::{Deserialize, Serialize};

use super::laurent::LaurentSeries;
use super::poly::{Monomial, PolyCoeff, Symbol};
use super::rational::{format_rational, parse_rational};
use super::SeriesError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialJson {
    #[serde(rename = "L", default)]
    pub l: u32,
    #[serde(default)]
    pub v: u32,
    #[serde(default)]
    pub s: u32,
    #[serde(default)]
    pub t: u32,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZTermJson {
    pub z: i32,
    pub monomials: Vec<MonomialJson>,
}

/// Wire form of a [`LaurentSeries`]. `order` is present only for series known
/// modulo `O(z^(order+1))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaurentJson {
    pub pole_order: u32,
    pub coeffs: Vec<ZTermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<i32>,
}

impl From<&LaurentSeries> for LaurentJson {
    fn from(x: &LaurentSeries) -> Self {
        LaurentJson {
            pole_order: x.pole_order(),
            coeffs: x
                .terms()
                .map(|(k, c)| ZTermJson {
                    z: k,
                    monomials: c
                        .terms()
                        .map(|(m, r)| MonomialJson {
                            l: m.exp(Symbol::L),
                            v: m.exp(Symbol::V),
                            s: m.exp(Symbol::S),
                            t: m.exp(Symbol::T),
                            value: format_rational(r),
                        })
                        .collect(),
                })
                .collect(),
            order: x.order(),
        }
    }
}

impl TryFrom<&LaurentJson> for LaurentSeries {
    type Error = SeriesError;

    fn try_from(j: &LaurentJson) -> Result<Self, SeriesError> {
        let mut terms = Vec::with_capacity(j.coeffs.len());
        for term in &j.coeffs {
            let mut c = Vec::with_capacity(term.monomials.len());
            for m in &term.monomials {
                c.push((Monomial([m.l, m.v, m.s, m.t]), parse_rational(&m.value)?));
            }
            terms.push((term.z, PolyCoeff::from_terms(c)));
        }
        let x = LaurentSeries::from_terms_with_order(terms, j.order);
        if x.pole_order() != j.pole_order && !(x.valuation().is_none() && j.pole_order == 0) {
            return Err(SeriesError::Parse(format!(
                "pole_order {} does not match the listed coefficients ({})",
                j.pole_order,
                x.pole_order()
            )));
        }
        Ok(x)
    }
}

impl LaurentSeries {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(LaurentJson::from(self)).expect("series serialization is infallible")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, SeriesError> {
        let j: LaurentJson = serde_json::from_value(value.clone()).map_err(|e| SeriesError::Parse(e.to_string()))?;
        LaurentSeries::try_from(&j)
    }
}
