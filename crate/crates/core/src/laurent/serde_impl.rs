//! JSON form: `{"exponent": "p/q", ...}`, or alternatively
//! `{"min_exponent": k, "coefficients": [c_k, c_{k+1}, ...]}`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::LaurentPoly;
use crate::rational;

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            map.serialize_entry(&e.to_string(), &rational::format_rational(c))?;
        }
        map.end()
    }
}

#[derive(Deserialize)]
struct Coeff(#[serde(with = "crate::rational")] BigRational);

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Dense {
    min_exponent: i64,
    coefficients: Vec<Coeff>,
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(d)?;
        let is_dense = value
            .as_object()
            .is_some_and(|m| m.contains_key("coefficients"));
        if is_dense {
            let dense = Dense::deserialize(value).map_err(D::Error::custom)?;
            return Ok(LaurentPoly::from_coeffs(
                dense.min_exponent,
                dense.coefficients.into_iter().map(|c| c.0),
            ));
        }
        let sparse = BTreeMap::<String, Coeff>::deserialize(value).map_err(D::Error::custom)?;
        let mut terms = Vec::with_capacity(sparse.len());
        for (k, c) in sparse {
            let e: i64 = k
                .trim()
                .parse()
                .map_err(|_| D::Error::custom(format!("invalid exponent key {k:?}")))?;
            terms.push((e, c.0));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

/// Parses either JSON form.
pub fn from_json(text: &str) -> Result<LaurentPoly, serde_json::Error> {
    serde_json::from_str(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sparse_form() {
        let p = LaurentPoly::from_ints(-1, &[1, -1, 1]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"-1":"1","0":"-1","1":"1"}"#);
        assert_eq!(from_json(&json).unwrap(), p);
    }

    #[test]
    fn dense_form_and_mixed_values() {
        let p = from_json(r#"{"min_exponent": -1, "coefficients": [1, "-1", "2/2"]}"#).unwrap();
        assert_eq!(p, LaurentPoly::from_ints(-1, &[1, -1, 1]));
        let q = from_json(r#"{"2": 3, "0": "1/2", "5": "0"}"#).unwrap();
        assert_eq!(q.degree(), Some(2));
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            r#"{"x": "1"}"#,
            r#"{"1": "1/0"}"#,
            r#"[1, 2]"#,
            r#"{"min_exponent": 0}"#,
            r#"{"min_exponent": 0, "coefficients": [1], "extra": 1}"#,
        ] {
            assert!(from_json(bad).is_err(), "{bad}");
        }
    }

    proptest! {
        #[test]
        fn json_round_trip(min in -50i64..50, c in prop::collection::vec(-1000i64..1000, 0..8), d in 1i64..20) {
            let p = LaurentPoly::from_ints(min, &c).scale(&BigRational::new(1.into(), d.into()));
            let json = serde_json::to_string(&p).unwrap();
            prop_assert_eq!(from_json(&json).unwrap(), p);
        }
    }
}
