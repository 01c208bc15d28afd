//! JSON emission with numbers rounded to ten significant digits.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{Map, Number, Value};

use crate::censoring::Scheme;
use crate::error::{Error, Result};
use crate::estimation::FitResult;

pub const SIGNIFICANT_DIGITS: usize = 10;

/// Rounds `x` to ten significant digits; non-finite values become `None`.
pub fn round_sig(x: f64) -> Option<f64> {
    if !x.is_finite() {
        return None;
    }
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().ok()?;
    // rounding up can overflow next to f64::MAX
    Some(if rounded.is_finite() { rounded } else { x })
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(round_sig)
            .and_then(Number::from_f64)
            .map_or(Value::Null, Value::Number),
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_value(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

/// Serializes `value` to a JSON tree with every float rounded.
pub fn to_value<T: Serialize + ?Sized>(value: &T) -> Result<Value> {
    serde_json::to_value(value)
        .map(round_value)
        .map_err(|e| Error::Domain(format!("serialization failed: {e}")))
}

/// Pretty-printed JSON with every float rounded.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(&to_value(value)?).map_err(|e| Error::Domain(format!("serialization failed: {e}")))
}

#[derive(Debug, Clone, Serialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

/// The external shape of a fit: parameters keyed by name.
#[derive(Debug, Clone, Serialize)]
pub struct FitReport {
    pub model: String,
    pub scheme: Scheme,
    pub estimates: BTreeMap<String, f64>,
    pub std_errors: BTreeMap<String, f64>,
    pub ci_95: BTreeMap<String, Interval>,
    pub loglik: f64,
    pub aic: f64,
    pub converged: bool,
    pub iterations: usize,
}

impl From<&FitResult> for FitReport {
    fn from(fit: &FitResult) -> Self {
        let names = fit.family.param_names();
        let keyed = |v: [f64; 2]| names.iter().map(|n| n.to_string()).zip(v).collect::<BTreeMap<_, _>>();
        FitReport {
            model: fit.family.short_name().to_string(),
            scheme: fit.scheme,
            estimates: keyed(fit.estimates),
            std_errors: keyed(fit.std_errors),
            ci_95: names
                .iter()
                .zip(fit.ci_95)
                .map(|(n, (lower, upper))| (n.to_string(), Interval { lower, upper }))
                .collect(),
            loglik: fit.loglik_max,
            aic: fit.aic,
            converged: fit.converged,
            iterations: fit.iterations,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(1.234_567_890_123), Some(1.23456789));
        assert_eq!(round_sig(-0.000_123_456_789_012_34), Some(-0.0001234567890));
        assert_eq!(round_sig(f64::NAN), None);
        assert_eq!(round_sig(0.0), Some(0.0));
    }

    #[test]
    fn nested_values_are_rounded() {
        let v = to_value(&serde_json::json!({"a": [1.0 / 3.0, 2], "b": {"c": f64::MAX}})).unwrap();
        assert_eq!(v["a"][0].as_f64(), Some(0.3333333333));
        assert_eq!(v["a"][1].as_u64(), Some(2));
        assert_eq!(v["b"]["c"].as_f64(), Some(f64::MAX));
    }
}
