//! Small helpers for the hand-written JSON codecs.
//!
//! Every decoder threads a dotted location string (`inputs.expr.seq`) so
//! parse errors can point at the offending field.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use crate::error::{Error, Result};

pub(crate) fn at(location: &str, child: &str) -> String {
    if location.is_empty() {
        child.to_string()
    } else {
        format!("{location}.{child}")
    }
}

pub(crate) fn at_index(location: &str, i: usize) -> String {
    format!("{location}[{i}]")
}

pub(crate) fn field<'a>(v: &'a Value, name: &str, location: &str) -> Result<&'a Value> {
    v.get(name)
        .ok_or_else(|| Error::parse(at(location, name), "missing field"))
}

pub(crate) fn opt_field<'a>(v: &'a Value, name: &str) -> Option<&'a Value> {
    match v.get(name) {
        Some(Value::Null) | None => None,
        Some(x) => Some(x),
    }
}

pub(crate) fn as_object<'a>(
    v: &'a Value,
    location: &str,
) -> Result<&'a serde_json::Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::parse(location, "expected an object"))
}

pub(crate) fn as_array<'a>(v: &'a Value, location: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::parse(location, "expected an array"))
}

pub(crate) fn as_str<'a>(v: &'a Value, location: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| Error::parse(location, "expected a string"))
}

pub(crate) fn as_bool(v: &Value, location: &str) -> Result<bool> {
    v.as_bool()
        .ok_or_else(|| Error::parse(location, "expected a boolean"))
}

/// Machine-sized counts and indices are plain JSON numbers; decimal strings
/// are accepted too.
pub(crate) fn as_u64(v: &Value, location: &str) -> Result<u64> {
    match v {
        Value::Number(n) => n
            .as_u64()
            .ok_or_else(|| Error::parse(location, "expected a nonnegative integer")),
        Value::String(s) => s
            .parse()
            .map_err(|_| Error::parse(location, format!("`{s}` is not a nonnegative integer"))),
        _ => Err(Error::parse(location, "expected a nonnegative integer")),
    }
}

pub(crate) fn as_i64(v: &Value, location: &str) -> Result<i64> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .ok_or_else(|| Error::parse(location, "expected an integer")),
        Value::String(s) => s
            .parse()
            .map_err(|_| Error::parse(location, format!("`{s}` is not an integer"))),
        _ => Err(Error::parse(location, "expected an integer")),
    }
}

/// Arbitrary-precision integers are canonically decimal strings; integral JSON
/// numbers are accepted on input.
pub(crate) fn as_bigint(v: &Value, location: &str) -> Result<BigInt> {
    match v {
        Value::String(s) => s
            .parse()
            .map_err(|_| Error::parse(location, format!("`{s}` is not a decimal integer"))),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(Error::parse(location, "expected an integer"))
            }
        }
        _ => Err(Error::parse(location, "expected a decimal integer string")),
    }
}

pub(crate) fn bigint_json(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

/// Rationals are written `"p"` or `"p/q"`.
pub(crate) fn as_rational(v: &Value, location: &str) -> Result<BigRational> {
    match v {
        Value::String(s) => {
            let (num, den) = match s.split_once('/') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (s.trim(), "1"),
            };
            let num: BigInt = num
                .parse()
                .map_err(|_| Error::parse(location, format!("`{s}` is not a rational")))?;
            let den: BigInt = den
                .parse()
                .map_err(|_| Error::parse(location, format!("`{s}` is not a rational")))?;
            if num_traits::Zero::is_zero(&den) {
                return Err(Error::parse(location, "zero denominator"));
            }
            Ok(BigRational::new(num, den))
        }
        Value::Number(_) => Ok(BigRational::from_integer(as_bigint(v, location)?)),
        _ => Err(Error::parse(location, "expected a rational string")),
    }
}

pub(crate) fn rational_json(r: &BigRational) -> Value {
    if r.is_integer() {
        Value::String(r.numer().to_string())
    } else {
        Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}

pub(crate) fn obj<const N: usize>(pairs: [(&str, Value); N]) -> Value {
    let mut m = serde_json::Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}
