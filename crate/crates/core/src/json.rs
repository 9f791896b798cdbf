//! Canonical JSON serialization: object keys sorted at every level,
//! non-integer numbers printed in scientific form with 12 significant
//! digits, no whitespace. Canonicalizing is idempotent, so emitted reports
//! can be parsed and re-serialized byte-identically.

use serde_json::Value;

use crate::error::{Error, Result};

/// Serializes any serializable value canonically.
pub fn to_canonical<T: serde::Serialize>(value: &T) -> Result<String> {
    let value =
        serde_json::to_value(value).map_err(|e| Error::Parse(format!("not serializable: {e}")))?;
    Ok(to_canonical_string(&value))
}

/// Parses JSON text and re-serializes it canonically.
pub fn canonicalize(text: &str) -> Result<String> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    Ok(to_canonical_string(&value))
}

/// Serializes an already-parsed JSON value canonically.
pub fn to_canonical_string(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, &mut out);
    out
}

fn write_value(value: &Value, out: &mut String) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            // Integer-typed numbers print plainly; everything parsed or
            // built as a float uses the fixed 12-significant-digit form.
            if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else {
                let f = n.as_f64().expect("JSON numbers are i64, u64 or f64");
                out.push_str(&format!("{f:.11e}"));
            }
        }
        Value::String(s) => write_string(s, out),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut entries: Vec<(&String, &Value)> = map.iter().collect();
            entries.sort_by(|a, b| a.0.cmp(b.0));
            out.push('{');
            for (i, (key, value)) in entries.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_string(key, out);
                out.push(':');
                write_value(value, out);
            }
            out.push('}');
        }
    }
}

fn write_string(s: &str, out: &mut String) {
    out.push_str(&serde_json::to_string(s).expect("strings always serialize"));
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use serde_json::json;

    #[test]
    fn keys_sort_at_every_level() {
        let value = json!({"b": 1, "a": {"d": true, "c": [1, 2]}});
        assert_eq!(to_canonical_string(&value), r#"{"a":{"c":[1,2],"d":true},"b":1}"#);
    }

    #[test]
    fn floats_use_twelve_significant_digits() {
        assert_eq!(to_canonical_string(&json!(5.0)), "5.00000000000e0");
        assert_eq!(to_canonical_string(&json!(-0.5)), "-5.00000000000e-1");
        assert_eq!(to_canonical_string(&json!(4)), "4");
        assert_eq!(to_canonical_string(&json!(-7)), "-7");
    }

    #[test]
    fn canonicalization_is_idempotent_on_reports() {
        for x in [5.0, 1.0 / 3.0, 85f64.sqrt() / 3.0, -0.0, 1e-15, 12345.678, -2.5e17] {
            let once = to_canonical_string(&json!({ "v": [x] }));
            assert_eq!(canonicalize(&once).unwrap(), once, "x={x}");
        }
    }

    #[test]
    fn strings_are_escaped() {
        let value = json!({"k\"ey": "line\nbreak"});
        let text = to_canonical_string(&value);
        assert_eq!(canonicalize(&text).unwrap(), text);
        assert!(text.contains(r#""k\"ey""#));
    }

    #[test]
    fn rejects_invalid_json() {
        assert!(canonicalize("{not json").is_err());
    }

    proptest! {
        #[test]
        fn float_round_trip_is_idempotent(bits in any::<u64>()) {
            let x = f64::from_bits(bits);
            prop_assume!(x.is_finite());
            let once = to_canonical_string(&json!(x));
            prop_assert_eq!(canonicalize(&once).unwrap(), once);
        }
    }
}
