//! Deterministic JSON forms.
//!
//! A polynomial is `{"terms": [[monomial, "coeff"], ...]}` with terms in
//! descending canonical order, a monomial is `[[["t",1],2], [["h",1,2,0],1]]`
//! and coefficients are exact strings such as `"-3/4"`. A rational function
//! is `{"num": polynomial, "den": polynomial}`.

use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use super::{Monomial, Polynomial, RationalFunction, Var};
use crate::error::{Error, Result};

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn var_to_json(v: &Var) -> Value {
    let (tag, idx) = v.parts();
    let mut items = vec![json!(tag)];
    items.extend(idx.into_iter().map(Value::from));
    Value::Array(items)
}

pub fn var_from_json(v: &Value) -> Result<Var> {
    let items = v.as_array().ok_or_else(|| bad("variable must be an array"))?;
    let tag = items.first().and_then(Value::as_str).ok_or_else(|| bad("variable tag must be a string"))?;
    let idx = items[1..]
        .iter()
        .map(|i| i.as_i64().ok_or_else(|| bad("variable index must be an integer")))
        .collect::<Result<Vec<_>>>()?;
    Var::from_parts(tag, &idx).ok_or_else(|| bad(format!("unknown variable {v}")))
}

pub fn rational_from_str(s: &str) -> Result<BigRational> {
    let r = BigRational::from_str(s.trim()).map_err(|e| bad(format!("bad rational {s:?}: {e}")))?;
    Ok(r)
}

impl Polynomial {
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .rev()
            .map(|(m, c)| {
                let powers: Vec<Value> = m.powers().iter().map(|(v, e)| json!([var_to_json(v), e])).collect();
                json!([powers, c.to_string()])
            })
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("polynomial needs \"terms\""))?;
        let mut p = Polynomial::zero();
        for t in terms {
            let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("term must be [monomial, coeff]"))?;
            let powers = pair[0].as_array().ok_or_else(|| bad("monomial must be an array"))?;
            let mut mono = Vec::with_capacity(powers.len());
            for pw in powers {
                let ve = pw.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("power must be [var, exp]"))?;
                let var = var_from_json(&ve[0])?;
                let exp = ve[1].as_u64().and_then(|e| u32::try_from(e).ok()).ok_or_else(|| bad("bad exponent"))?;
                mono.push((var, exp));
            }
            let coeff = match &pair[1] {
                Value::String(s) => rational_from_str(s)?,
                Value::Number(n) if n.is_i64() => BigRational::from_integer(n.as_i64().unwrap().into()),
                other => return Err(bad(format!("bad coefficient {other}"))),
            };
            p.add_term(Monomial::from_powers(mono), coeff);
        }
        Ok(p)
    }
}

impl RationalFunction {
    pub fn to_json(&self) -> Value {
        json!({ "num": self.numerator().to_json(), "den": self.denominator().to_json() })
    }

    /// Accepts the `{"num", "den"}` form or a bare polynomial.
    pub fn from_json(v: &Value) -> Result<Self> {
        if v.get("terms").is_some() {
            return Ok(RationalFunction::from_poly(Polynomial::from_json(v)?));
        }
        let num = Polynomial::from_json(v.get("num").ok_or_else(|| bad("rational function needs \"num\""))?)?;
        let den = match v.get("den") {
            Some(d) => Polynomial::from_json(d)?,
            None => Polynomial::one(),
        };
        RationalFunction::new(num, &den)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        Polynomial::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        RationalFunction::from_json(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_layout() {
        let p = Polynomial::var(Var::X).pow(2).scale(&BigRational::new(3.into(), 4.into())) - Polynomial::var(Var::h(1, 2, 0));
        let v = p.to_json();
        assert_eq!(
            v.to_string(),
            r#"{"terms":[[[[["t",1],2]],"3/4"],[[[["h",1,2,0],1]],"-1"]]}"#
        );
        assert_eq!(Polynomial::from_json(&v).unwrap(), p);
    }

    #[test]
    fn rational_function_form() {
        let f = RationalFunction::new(Polynomial::var(Var::X).scale(&BigRational::from_integer((-2).into())),
            &(Polynomial::var(Var::T).scale(&BigRational::from_integer(3.into())) + Polynomial::one())).unwrap();
        let back = RationalFunction::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn rejects_malformed() {
        assert!(Polynomial::from_json(&json!({"terms": [[[], "1/0"]]})).is_err());
        assert!(Polynomial::from_json(&json!({"terms": [[[[["q",1],1]], "1"]]})).is_err());
        assert!(Polynomial::from_json(&json!([1, 2])).is_err());
    }
}
