use serde_json::{json, Value};

use crate::free_graded::NCSeries;
use crate::scalar_series::LaurentSeries;

use super::classify::{classify_beta, default_sections, equisingularity_check, section_cap};
use super::connection::{solve_df, InvariantConnection, Obstruction};
use super::ConnectionError;

type Series = NCSeries<LaurentSeries>;

fn terms_of(s: &Series) -> Value {
    s.to_json()["terms"].clone()
}

fn series_of(trunc: u32, terms: &Value) -> Result<Series, ConnectionError> {
    Ok(NCSeries::from_json(&json!({"trunc": trunc, "terms": terms}))?)
}

/// `{"trunc": N, "a": [{"word", "coeff"}…], "b": […]}`.
pub fn connection_to_json(omega: &InvariantConnection<Series>) -> Value {
    json!({"trunc": omega.a.trunc(), "a": terms_of(&omega.a), "b": terms_of(&omega.b)})
}

pub fn connection_from_json(v: &Value) -> Result<InvariantConnection<Series>, ConnectionError> {
    let trunc = v
        .get("trunc")
        .and_then(Value::as_u64)
        .ok_or_else(|| ConnectionError::Parse("missing integer \"trunc\"".into()))? as u32;
    let field = |k: &str| v.get(k).ok_or_else(|| ConnectionError::Parse(format!("missing \"{k}\"")));
    Ok(InvariantConnection::new(series_of(trunc, field("a")?)?, series_of(trunc, field("b")?)?))
}

/// Flatness, equisingularity over the default sections, the class `β` and
/// any monodromy obstruction of a connection.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub flat: bool,
    pub equisingular: Option<bool>,
    pub beta: Option<Series>,
    pub obstruction: Option<Obstruction<Series>>,
}

pub fn verdict(omega: &InvariantConnection<Series>) -> Result<Verdict, ConnectionError> {
    let flat = omega.is_flat();
    let obstruction = solve_df(&omega.a).err();
    let mut out = Verdict { flat, equisingular: None, beta: None, obstruction };
    if flat && out.obstruction.is_none() {
        let cap = section_cap(omega.a.trunc());
        let eq = equisingularity_check(omega, &default_sections(cap), cap)?;
        out.equisingular = Some(eq);
        if eq {
            out.beta = match classify_beta(omega) {
                Ok(b) => Some(b),
                Err(ConnectionError::NotEquisingular) => None,
                Err(e) => return Err(e),
            };
        }
    }
    Ok(out)
}

impl Verdict {
    pub fn to_json(&self) -> Value {
        json!({
            "flat": self.flat,
            "equisingular": self.equisingular,
            "beta": self.beta.as_ref().map(|b| b.to_json()),
            "obstruction": self.obstruction.as_ref().map(|o| json!({"degree": o.degree, "residue": terms_of(&o.residue)})),
        })
    }
}
