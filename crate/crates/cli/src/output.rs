//! Number formatting shared by the text and JSON renderings.

use quiverstab_core::{DimensionVector, Rational};
use serde_json::Value;

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// JSON number with 12 significant digits; non-finite values become null.
pub fn float(x: f64) -> Value {
    serde_json::Number::from_f64(round12(x)).map_or(Value::Null, Value::Number)
}

/// Text form of [`float`].
pub fn fmt_float(x: f64) -> String {
    let r = round12(x);
    if r == 0.0 || (1e-4..1e6).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn dims(v: &DimensionVector) -> Value {
    Value::from(v.as_slice().to_vec())
}
