use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::scalar_series::{format_rational, int, parse_rational, Rational};

use super::linalg::{zeros, RatMatrix};
use super::object::{object_from_rep, BundleObject, Morphism};
use super::space::GradedSpace;
use super::BundleError;

fn parse_err(msg: impl Into<String>) -> BundleError {
    BundleError::Parse(msg.into())
}

/// Rationals are written as `"num/den"` strings; plain integers are accepted.
fn rational_of(v: &Value) -> Result<Rational, BundleError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| parse_err(e.to_string())),
        Value::Number(n) => n.as_i64().map(int).ok_or_else(|| parse_err(format!("not an integer: {n}"))),
        other => Err(parse_err(format!("expected a rational, got {other}"))),
    }
}

fn matrix_of(v: &Value) -> Result<RatMatrix, BundleError> {
    let rows = v.as_array().ok_or_else(|| parse_err("matrix must be an array of rows"))?;
    rows.iter()
        .map(|r| r.as_array().ok_or_else(|| parse_err("matrix row must be an array"))?.iter().map(rational_of).collect())
        .collect()
}

fn matrix_json(m: &RatMatrix) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(|c| Value::String(format_rational(c))).collect())).collect())
}

fn space_json(space: &GradedSpace) -> Value {
    let mut dims = Map::new();
    for (n, d) in space.dims() {
        dims.insert(n.to_string(), json!(d));
    }
    Value::Object(dims)
}

fn space_of(v: &Value) -> Result<GradedSpace, BundleError> {
    let dims = v.as_object().ok_or_else(|| parse_err("\"dims\" must be an object"))?;
    let mut out = Vec::new();
    for (k, d) in dims {
        let n: i32 = k.parse().map_err(|_| parse_err(format!("bad degree {k:?}")))?;
        let d = d.as_u64().ok_or_else(|| parse_err(format!("bad dimension for degree {n}")))?;
        out.push((n, d as usize));
    }
    Ok(GradedSpace::new(out))
}

impl BundleObject {
    /// `{"dims": {"0": d0, …}, "beta": [{"n": n, "matrix": [[…]]}]}`.
    pub fn to_json(&self) -> Value {
        let beta: Vec<Value> = self.beta().iter().map(|(n, m)| json!({"n": n, "matrix": matrix_json(m)})).collect();
        json!({"dims": space_json(self.space()), "beta": beta})
    }

    pub fn from_json(v: &Value) -> Result<BundleObject, BundleError> {
        let space = space_of(v.get("dims").ok_or_else(|| parse_err("missing \"dims\""))?)?;
        let mut beta = Vec::new();
        if let Some(list) = v.get("beta") {
            for item in list.as_array().ok_or_else(|| parse_err("\"beta\" must be an array"))? {
                let n = item.get("n").and_then(Value::as_u64).ok_or_else(|| parse_err("beta entry needs \"n\""))?;
                let m = matrix_of(item.get("matrix").ok_or_else(|| parse_err("beta entry needs \"matrix\""))?)?;
                beta.push((n as u32, m));
            }
        }
        object_from_rep(space, beta)
    }
}

impl Morphism {
    /// `{"blocks": [{"degree": n, "matrix": [[…]]}]}`, one block `E_n → E′_n` per degree.
    pub fn to_json(&self, source: &GradedSpace, target: &GradedSpace) -> Value {
        let blocks: Vec<Value> = source
            .dims()
            .keys()
            .filter(|n| target.dim(**n) > 0)
            .map(|&n| json!({"degree": n, "matrix": matrix_json(&self.block(source, target, n))}))
            .collect();
        json!({"blocks": blocks})
    }

    pub fn from_json(v: &Value, source: &GradedSpace, target: &GradedSpace) -> Result<Morphism, BundleError> {
        let mut matrix = zeros(target.total_dim(), source.total_dim());
        let mut seen = BTreeMap::new();
        let blocks = v.get("blocks").and_then(Value::as_array).ok_or_else(|| parse_err("missing \"blocks\""))?;
        for b in blocks {
            let n = b.get("degree").and_then(Value::as_i64).ok_or_else(|| parse_err("block needs \"degree\""))? as i32;
            let m = matrix_of(b.get("matrix").ok_or_else(|| parse_err("block needs \"matrix\""))?)?;
            if seen.insert(n, ()).is_some() {
                return Err(parse_err(format!("duplicate block for degree {n}")));
            }
            let (rows, cols) = (target.dim(n), source.dim(n));
            if m.len() != rows || m.iter().any(|r| r.len() != cols) {
                return Err(BundleError::Shape { rows, cols });
            }
            let (r0, c0) = (target.offset(n), source.offset(n));
            for (i, row) in m.into_iter().enumerate() {
                for (j, c) in row.into_iter().enumerate() {
                    matrix[r0 + i][c0 + j] = c;
                }
            }
        }
        Ok(Morphism { matrix })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_series::rat;

    #[test]
    fn object_roundtrip() {
        let text = r#"{"dims": {"0": 1, "1": 1, "-2": 2}, "beta": [{"n": 3, "matrix": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[1,"1/2",0,0]]}]}"#;
        let obj = BundleObject::from_json(&serde_json::from_str(text).unwrap()).unwrap();
        assert_eq!(obj.beta()[&3][3][1], rat(1, 2));
        let again = BundleObject::from_json(&obj.to_json()).unwrap();
        assert_eq!(again, obj);
        assert_eq!(again.to_json().to_string(), obj.to_json().to_string());
        assert!(BundleObject::from_json(&json!({"beta": []})).is_err());
        assert!(BundleObject::from_json(&json!({"dims": {"x": 1}})).is_err());
    }

    #[test]
    fn morphism_roundtrip() {
        let s = GradedSpace::new([(0, 2), (1, 1)]);
        let t = GradedSpace::new([(0, 1), (1, 1)]);
        let v = json!({"blocks": [{"degree": 0, "matrix": [["1", "-2/3"]]}, {"degree": 1, "matrix": [[5]]}]});
        let m = Morphism::from_json(&v, &s, &t).unwrap();
        assert_eq!(m.matrix[0][1], rat(-2, 3));
        assert_eq!(m.matrix[1][2], int(5));
        assert_eq!(Morphism::from_json(&m.to_json(&s, &t), &s, &t).unwrap(), m);
        let bad = json!({"blocks": [{"degree": 0, "matrix": [[1]]}]});
        assert!(Morphism::from_json(&bad, &s, &t).is_err());
    }
}
