//! JSON and OFF serialization for every artifact the toolkit produces.
//!
//! Exact values travel as strings ("1/2", "-3"), never as floats; float
//! renderings appear only in shadow fields alongside the exact value.
//! Large integers are written as plain JSON numbers, which stay exact
//! because the parser keeps the full decimal literal. Objects serialize
//! with sorted keys, so identical data yields byte-identical output.
//!
//! Every writer has a matching reader that reconstructs the original value
//! exactly; derived floats are recomputed rather than trusted.

mod off;
mod read;
mod write;

pub use off::{solid_to_off, tiling_to_off, voronoi_to_off};
pub use read::{
    covering_density_from_value, covering_radius_from_value, delaunay_from_value,
    equation_from_value, facet_bound_from_value, form_from_value, grown_solid_from_value,
    optimize_from_value, pell_report_from_value, points_from_value, tiling_from_value,
    thue_report_from_value, unit_from_value, validation_from_value, violations_from_value,
    voronoi_from_value,
};
pub use write::{
    covering_density_to_value, covering_radius_to_value, delaunay_to_value, equation_to_value,
    facet_bound_to_value, form_to_value, grown_solid_to_value, optimize_to_value,
    pell_report_to_value, point_to_value, tiling_to_value, thue_report_to_value, to_json_string,
    unit_to_value, validation_to_value, violations_to_value, voronoi_to_value,
};

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Number, Value};
use thiserror::Error;

use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
}

pub(crate) fn schema(msg: impl Into<String>) -> IoError {
    IoError::Schema(msg.into())
}

pub(crate) fn rat_value(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

/// Arbitrary-precision integers become plain JSON numbers; the decimal
/// literal is preserved verbatim, so nothing is rounded.
pub(crate) fn int_value(x: &BigInt) -> Value {
    let n = Number::from_str(&x.to_string()).expect("decimal integer is a valid JSON number");
    Value::Number(n)
}

pub(crate) fn value_rat(v: &Value, what: &str) -> Result<Rational, IoError> {
    let text = match v {
        Value::String(s) => s.clone(),
        // A bare number is accepted on input; its literal ("0.25") parses
        // exactly because the full text is retained.
        Value::Number(n) => n.to_string(),
        _ => return Err(schema(format!("{what}: expected a rational string"))),
    };
    parse_rational(&text).map_err(|e| schema(format!("{what}: {e}")))
}

pub(crate) fn value_int(v: &Value, what: &str) -> Result<BigInt, IoError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(schema(format!("{what}: expected an integer"))),
    };
    BigInt::from_str(&text).map_err(|_| schema(format!("{what}: expected an integer, got {text}")))
}

pub(crate) fn value_u64(v: &Value, what: &str) -> Result<u64, IoError> {
    v.as_u64()
        .ok_or_else(|| schema(format!("{what}: expected a nonnegative integer")))
}

pub(crate) fn value_usize(v: &Value, what: &str) -> Result<usize, IoError> {
    Ok(value_u64(v, what)? as usize)
}

pub(crate) fn value_i64(v: &Value, what: &str) -> Result<i64, IoError> {
    v.as_i64()
        .ok_or_else(|| schema(format!("{what}: expected an integer")))
}

pub(crate) fn value_f64(v: &Value, what: &str) -> Result<f64, IoError> {
    v.as_f64()
        .ok_or_else(|| schema(format!("{what}: expected a number")))
}

pub(crate) fn value_bool(v: &Value, what: &str) -> Result<bool, IoError> {
    v.as_bool()
        .ok_or_else(|| schema(format!("{what}: expected a boolean")))
}

pub(crate) fn value_str<'a>(v: &'a Value, what: &str) -> Result<&'a str, IoError> {
    v.as_str()
        .ok_or_else(|| schema(format!("{what}: expected a string")))
}

pub(crate) fn value_array<'a>(v: &'a Value, what: &str) -> Result<&'a [Value], IoError> {
    v.as_array()
        .map(Vec::as_slice)
        .ok_or_else(|| schema(format!("{what}: expected an array")))
}

/// Fetches a required object field.
pub(crate) fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value, IoError> {
    v.as_object()
        .ok_or_else(|| schema(format!("expected an object with field `{name}`")))?
        .get(name)
        .ok_or_else(|| schema(format!("missing field `{name}`")))
}
