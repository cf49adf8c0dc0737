//! The shared matrix literal format: a JSON array of rows, each entry an
//! integer or a string `"p/q"` in lowest terms. Reports always serialize
//! rationals as strings to avoid precision ambiguity.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::Value;

use crate::arith::{Mat, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error: {}", self.0)
    }
}

impl std::error::Error for ParseError {}

/// Parses `"p/q"`, `"p"`, or a JSON integer into a rational.
pub fn rat_from_json(v: &Value) -> Result<Rat, ParseError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_integer(BigInt::from(i)))
            } else {
                Err(ParseError(format!("entry {n} is not an integer")))
            }
        }
        Value::String(s) => rat_from_str(s),
        other => Err(ParseError(format!("entry {other} is not a rational"))),
    }
}

pub fn rat_from_str(s: &str) -> Result<Rat, ParseError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p = BigInt::from_str(num).map_err(|e| ParseError(format!("bad numerator {num}: {e}")))?;
    let q = BigInt::from_str(den).map_err(|e| ParseError(format!("bad denominator {den}: {e}")))?;
    if q == BigInt::from(0) {
        return Err(ParseError(format!("zero denominator in {s}")));
    }
    Ok(Rat::new(p, q))
}

pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_json(r: &Rat) -> Value {
    Value::String(rat_to_string(r))
}

/// Parses a square matrix from a JSON array of rows.
pub fn mat_from_json(v: &Value) -> Result<Mat, ParseError> {
    let rows = v
        .as_array()
        .ok_or_else(|| ParseError("matrix must be an array of rows".into()))?;
    if rows.is_empty() {
        return Err(ParseError("matrix must have at least one row".into()));
    }
    let n = rows.len();
    let mut parsed = Vec::with_capacity(n);
    for row in rows {
        let entries = row
            .as_array()
            .ok_or_else(|| ParseError("matrix row must be an array".into()))?;
        if entries.len() != n {
            return Err(ParseError(format!(
                "matrix must be square: {n} rows but a row of length {}",
                entries.len()
            )));
        }
        parsed.push(
            entries
                .iter()
                .map(rat_from_json)
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(Mat::from_rows(parsed))
}

pub fn mat_to_json(m: &Mat) -> Value {
    Value::Array(
        (0..m.dim())
            .map(|i| {
                Value::Array((0..m.dim()).map(|j| rat_to_json(m.at(i, j))).collect())
            })
            .collect(),
    )
}

/// Parses a list of square matrices of equal dimension.
pub fn mats_from_json(v: &Value) -> Result<Vec<Mat>, ParseError> {
    let items = v
        .as_array()
        .ok_or_else(|| ParseError("expected an array of matrices".into()))?;
    items.iter().map(mat_from_json).collect()
}
