//! Rational helpers shared by every module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn qi(v: &BigInt) -> Q {
    Q::from_integer(v.clone())
}

pub fn ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p", "-p" or "p/q".
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_q(v: &Q) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn is_integer(v: &Q) -> bool {
    v.denom().is_one()
}

/// Serde adapter writing rationals as "p/q" strings and reading strings or integers.
pub mod serde_q {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        from_json(&v).map_err(de::Error::custom)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Q> {
        match v {
            serde_json::Value::String(s) => parse_q(s),
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(q(i))
                } else {
                    parse_q(&n.to_string())
                }
            }
            other => Err(Error::Parse(format!("expected rational, found {other}"))),
        }
    }
}
