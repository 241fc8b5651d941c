//! Canonical JSON rendering: insertion-ordered keys and floats at 17
//! significant digits, so identical runs emit identical bytes and emitted
//! documents survive a parse/re-render round trip unchanged.

use serde_json::{Map, Number, Value};

/// Renders a value in the canonical form.
pub fn render(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value);
    out
}

fn write_value(out: &mut String, value: &Value) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => write_number(out, n),
        Value::String(s) => write_string(out, s),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(out, item);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (i, (key, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_string(out, key);
                out.push(':');
                write_value(out, item);
            }
            out.push('}');
        }
    }
}

fn write_number(out: &mut String, number: &Number) {
    if let Some(u) = number.as_u64() {
        out.push_str(&u.to_string());
    } else if let Some(i) = number.as_i64() {
        out.push_str(&i.to_string());
    } else {
        let f = number.as_f64().expect("finite JSON number");
        out.push_str(&format_f64(f));
    }
}

/// 17 significant digits in scientific notation: enough to reconstruct any
/// double exactly, and a fixed width for diffing.
pub fn format_f64(value: f64) -> String {
    format!("{value:.16e}")
}

fn write_string(out: &mut String, text: &str) {
    out.push('"');
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                out.push_str(&format!("\\u{:04x}", c as u32));
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

/// Shorthand for building ordered objects.
pub fn object(entries: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (key, value) in entries {
        map.insert(key.to_string(), value);
    }
    Value::Object(map)
}

/// A float as a JSON value; panics on non-finite input, which canonical
/// output never contains.
pub fn float(value: f64) -> Value {
    Value::Number(Number::from_f64(value).expect("finite float in output"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_identical() {
        let doc = object(vec![
            ("name", Value::String("tau".into())),
            ("value", float(0.4695051237)),
            ("count", Value::Number(6545u64.into())),
            ("flags", Value::Array(vec![Value::Bool(true), Value::Null])),
            ("nested", object(vec![("zero", float(-0.0)), ("one", float(1.0))])),
        ]);
        let first = render(&doc);
        let reparsed: Value = serde_json::from_str(&first).unwrap();
        let second = render(&reparsed);
        assert_eq!(first, second);
    }

    #[test]
    fn float_formatting_is_exact() {
        for value in [0.0, -0.0, 1.0, 0.1, 2.0 / 3.0, 1e-300, -123.456e77] {
            let text = format_f64(value);
            let back: f64 = text.parse().unwrap();
            assert_eq!(back.to_bits(), value.to_bits(), "{text}");
        }
    }

    #[test]
    fn strings_are_escaped() {
        let doc = object(vec![("k", Value::String("a\"b\\c\nd".into()))]);
        let text = render(&doc);
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back["k"], Value::String("a\"b\\c\nd".into()));
    }
}
