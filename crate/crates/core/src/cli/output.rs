//! Deterministic number formatting for JSON reports and CSV curves.

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

/// A float written with 17 significant digits; `±∞` become the strings
/// `"inf"` / `"-inf"` and NaN becomes `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x:.16e}")
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let x = self.0;
        if x.is_nan() {
            serializer.serialize_none()
        } else if x.is_infinite() {
            serializer.serialize_str(if x > 0.0 { "inf" } else { "-inf" })
        } else {
            RawValue::from_string(format!("{x:.16e}"))
                .map_err(serde::ser::Error::custom)?
                .serialize(serializer)
        }
    }
}

impl From<f64> for Real {
    fn from(x: f64) -> Self {
        Real(x)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}

pub fn csv_row(values: &[f64]) -> String {
    values
        .iter()
        .map(|&v| format_real(v))
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        assert_eq!(to_json(&Real(0.5)), "5.0000000000000000e-1\n");
        assert_eq!(to_json(&Real(f64::INFINITY)), "\"inf\"\n");
        assert_eq!(to_json(&Real(f64::NEG_INFINITY)), "\"-inf\"\n");
        assert_eq!(to_json(&Real(f64::NAN)), "null\n");
        let x = 0.1 + 0.2;
        let back: f64 = format_real(x).parse().unwrap();
        assert_eq!(back, x);
        assert_eq!(csv_row(&[1.0, f64::INFINITY]), "1.0000000000000000e0,inf");
    }
}
