//! Serialization helpers: integers become JSON numbers when they fit in an
//! `i64` and decimal strings otherwise; rationals become `"p/q"` strings.

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use serde_json::Value;

use crate::lattice_algebra::{format_rational, IntVector, Integer, Rational};
use crate::{Error, Result};

pub(crate) fn int_value(x: &Integer) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(x.to_string()),
    }
}

pub(crate) fn parse_int(v: &Value) -> Result<Integer> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Integer::from)
            .ok_or_else(|| Error::Parse(format!("expected an integer, found {n}"))),
        Value::String(s) => s
            .parse()
            .map_err(|_| Error::Parse(format!("expected an integer, found {s:?}"))),
        other => Err(Error::Parse(format!("expected an integer, found {other}"))),
    }
}

pub(crate) fn parse_int_vec(v: &Value) -> Result<IntVector> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array of integers, found {v}")))?
        .iter()
        .map(parse_int)
        .collect()
}

pub(crate) fn integer<S: Serializer>(x: &Integer, s: S) -> std::result::Result<S::Ok, S::Error> {
    int_value(x).serialize(s)
}

pub(crate) fn int_vec<S: Serializer>(v: &[Integer], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&int_value(x))?;
    }
    seq.end()
}

pub(crate) fn int_vecs<S: Serializer>(
    v: &[Vec<Integer>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<Value>> = v
        .iter()
        .map(|r| r.iter().map(int_value).collect())
        .collect();
    rows.serialize(s)
}

pub(crate) fn opt_int_vec<S: Serializer>(
    v: &Option<Vec<Integer>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => int_vec(v, s),
        None => s.serialize_none(),
    }
}

pub(crate) fn rational<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

pub(crate) fn rat_vec<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strs: Vec<String> = v.iter().map(format_rational).collect();
    strs.serialize(s)
}

pub(crate) fn opt_rat_vec<S: Serializer>(
    v: &Option<Vec<Rational>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => rat_vec(v, s),
        None => s.serialize_none(),
    }
}
