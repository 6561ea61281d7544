use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Character, HopfError, HopfPresentation};
use crate::scalar_series::LaurentSeries;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueJson {
    pub key: String,
    pub series: Value,
}

/// Wire form of a [`Character`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterJson {
    pub presentation: String,
    pub trunc: u32,
    pub values: Vec<ValueJson>,
}

impl CharacterJson {
    pub fn parse(v: &Value) -> Result<Self, HopfError> {
        serde_json::from_value(v.clone()).map_err(|e| HopfError::Parse(e.to_string()))
    }
}

impl<K: Clone + Ord + std::fmt::Debug + std::fmt::Display> Character<K> {
    pub fn to_json(&self) -> Value {
        let j = CharacterJson {
            presentation: self.presentation.to_string(),
            trunc: self.trunc,
            values: self.values().map(|(k, v)| ValueJson { key: k.to_string(), series: v.to_json() }).collect(),
        };
        serde_json::to_value(j).expect("character serialization is infallible")
    }

    pub fn from_json<P: HopfPresentation<Key = K>>(p: &P, v: &Value) -> Result<Self, HopfError> {
        let j = CharacterJson::parse(v)?;
        if j.presentation != p.name() {
            return Err(HopfError::PresentationMismatch(j.presentation, p.name().to_string()));
        }
        if j.trunc != p.trunc() {
            return Err(HopfError::PresentationMismatch(format!("trunc {}", j.trunc), format!("trunc {}", p.trunc())));
        }
        let mut values = Vec::with_capacity(j.values.len());
        for item in &j.values {
            let k = p.parse_key(&item.key)?;
            let d = p.degree(&k);
            if d == 0 || d > p.trunc() {
                return Err(HopfError::Parse(format!("key {} has degree {d} outside 1..={}", item.key, p.trunc())));
            }
            values.push((k, LaurentSeries::from_json(&item.series)?));
        }
        Ok(Character::from_values(p, values))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf_characters::{RootedTrees, ShuffleHopf, Tree};
    use crate::free_graded::Word;
    use crate::scalar_series::{rat, PolyCoeff};

    #[test]
    fn tree_character_roundtrip() {
        let p = RootedTrees::new(3);
        let phi = Character::from_values(
            &p,
            [(Tree::graft(&[Tree::vertex(), Tree::vertex()]), LaurentSeries::monomial(PolyCoeff::constant(rat(1, 2)), -1))],
        );
        let v = phi.to_json();
        assert_eq!(v["values"][0]["key"], "(()())");
        assert_eq!(Character::from_json(&p, &v).unwrap(), phi);
        assert!(Character::<Word>::from_json(&ShuffleHopf::new(3), &v).is_err());
    }

    #[test]
    fn shuffle_character_roundtrip() {
        let p = ShuffleHopf::new(3);
        let phi = Character::from_values(&p, [(Word::new([1, 2]), LaurentSeries::z_pow(-2))]);
        let v = phi.to_json();
        assert_eq!(v["values"][0]["key"], "(1,2)");
        assert_eq!(Character::from_json(&p, &v).unwrap(), phi);
    }
}
