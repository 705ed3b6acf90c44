//! `{"lattice_dim": n, "vertices": [[...], ...]}`, integers as JSON numbers
//! and rationals as `"p/q"` strings.

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::{Coordinate, Polytope};
use crate::lattice_algebra::{format_rational, parse_rational, Integer, Rational};
use crate::serde_util::{int_value as integer_to_json, parse_int as integer_from_json};
use crate::{Error, Result};

pub trait JsonCoordinate: Coordinate {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl JsonCoordinate for Integer {
    fn to_json(&self) -> Value {
        integer_to_json(self)
    }
    fn from_json(v: &Value) -> Result<Self> {
        integer_from_json(v)
    }
}

impl JsonCoordinate for Rational {
    fn to_json(&self) -> Value {
        Value::from(format_rational(self))
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(_) => integer_from_json(v).map(Rational::from_integer),
            other => Err(Error::Parse(format!("expected a rational, found {other}"))),
        }
    }
}

impl<T: JsonCoordinate> Serialize for Polytope<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let verts: Vec<Vec<Value>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(JsonCoordinate::to_json).collect())
            .collect();
        let mut st = s.serialize_struct("Polytope", 2)?;
        st.serialize_field("lattice_dim", &self.ambient_dim)?;
        st.serialize_field("vertices", &verts)?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolytope {
    lattice_dim: usize,
    vertices: Vec<Vec<Value>>,
}

impl<'de, T: JsonCoordinate> Deserialize<'de> for Polytope<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPolytope::deserialize(d)?;
        let pts: Vec<Vec<T>> = raw
            .vertices
            .iter()
            .map(|v| v.iter().map(T::from_json).collect::<Result<Vec<T>>>())
            .collect::<Result<_>>()
            .map_err(D::Error::custom)?;
        Polytope::hull_in(raw.lattice_dim, &pts).map_err(D::Error::custom)
    }
}

impl<T: JsonCoordinate> Polytope<T> {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polytope serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}
