//! JSON/CSV emission helpers.
//!
//! Every f64 is serialized with 17 significant digits (`{:.16e}`) and
//! every rational as a `"num/den"` string, so that identical requests
//! produce byte-identical documents. Field order is insertion order
//! (`preserve_order`).

use std::fs;
use std::io::Write;
use std::str::FromStr;

use gdoa_core::rational::{rat_to_string, Rat};
use serde_json::{Map, Number, Value};

/// f64 as a JSON number with exactly 17 significant digits.
pub fn num(x: f64) -> Value {
    let lit = format!("{:.16e}", x);
    Value::Number(Number::from_str(&lit).expect("formatted float is a valid JSON number"))
}

pub fn int(x: i64) -> Value {
    Value::Number(Number::from(x))
}

/// Rational as its canonical `num/den` string.
pub fn rat_str(r: &Rat) -> Value {
    Value::String(rat_to_string(r))
}

pub fn obj(fields: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in fields {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

pub fn push(value: &mut Value, key: &str, field: Value) {
    value
        .as_object_mut()
        .expect("push target is an object")
        .insert(key.to_string(), field);
}

/// Writes the document to the output path, or stdout when none is given.
pub fn emit(document: &str, output: Option<&std::path::Path>) -> std::io::Result<()> {
    match output {
        Some(path) => fs::write(path, document),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(document.as_bytes())?;
            if !document.ends_with('\n') {
                out.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

pub fn render(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON document serializes")
}

/// 17-significant-digit literal for CSV cells.
pub fn num_cell(x: f64) -> String {
    format!("{:.16e}", x)
}
