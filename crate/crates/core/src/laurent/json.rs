//! JSON form of polynomials: `{"vars": r, "terms": [{"exp": [..], "coef": c}, ..]}`.
//!
//! Terms are listed in decreasing graded-lex order. Coefficients that do
//! not fit in 64 bits are written as decimal strings.

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::LaurentPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i64>,
    #[serde(serialize_with = "ser_coef", deserialize_with = "de_coef")]
    pub coef: BigInt,
}

fn ser_coef<S: Serializer>(c: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match i64::try_from(c) {
        Ok(v) => s.serialize_i64(v),
        Err(_) => s.serialize_str(&c.to_string()),
    }
}

fn de_coef<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    match Value::deserialize(d)? {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| serde::de::Error::custom("coefficient is not an integer")),
        Value::String(s) => s.parse().map_err(serde::de::Error::custom),
        _ => Err(serde::de::Error::custom("coefficient must be a number or string")),
    }
}

impl From<&LaurentPoly> for PolyJson {
    fn from(p: &LaurentPoly) -> Self {
        PolyJson {
            vars: p.nvars(),
            terms: p.terms().rev().map(|(e, c)| TermJson { exp: e.to_vec(), coef: c.clone() }).collect(),
        }
    }
}

impl From<&PolyJson> for LaurentPoly {
    fn from(j: &PolyJson) -> Self {
        LaurentPoly::from_terms(j.vars, j.terms.iter().map(|t| (t.exp.clone(), t.coef.clone())))
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        if j.terms.iter().any(|t| t.exp.len() != j.vars) {
            return Err(serde::de::Error::custom("exponent length differs from vars"));
        }
        Ok(LaurentPoly::from(&j))
    }
}
