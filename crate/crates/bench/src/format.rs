//! Deterministic rendering of numbers for CSV and JSON output.

use serde_json::Value;

/// Shortest round-trip decimal; `inf`, `-inf` and `nan` for non-finite values.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v}")
    }
}

/// JSON number, or the same string tokens as [`fmt_f64`] for non-finite values.
pub fn json_f64(v: f64) -> Value {
    serde_json::Number::from_f64(v)
        .map(Value::Number)
        .unwrap_or_else(|| Value::String(fmt_f64(v)))
}

pub fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

pub fn json_opt(v: Option<f64>) -> Value {
    v.map(json_f64).unwrap_or(Value::Null)
}

/// Renders a header and rows as CSV. Fields never contain commas.
pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_finite_tokens() {
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_f64(f64::NEG_INFINITY), "-inf");
        assert_eq!(fmt_f64(f64::NAN), "nan");
        assert_eq!(fmt_f64(0.1), "0.1");
        assert_eq!(json_f64(f64::INFINITY), Value::String("inf".into()));
        assert_eq!(json_f64(2.5).to_string(), "2.5");
    }
}
