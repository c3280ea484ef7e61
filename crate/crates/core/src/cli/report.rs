//! Machine-readable reports. Exact values are rational strings; every
//! `decimal` field is a lossy rendering for display.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::kernel::{to_decimal, Scalar, Vector};
use crate::polytope::Body;

pub const DECIMAL_DIGITS: usize = 6;

pub fn scalar(x: &Scalar) -> Value {
    json!({ "exact": x.to_string(), "decimal": to_decimal(x, DECIMAL_DIGITS) })
}

pub fn vector(v: &Vector) -> Value {
    json!({
        "exact": v.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "decimal": v.iter().map(|x| to_decimal(x, DECIMAL_DIGITS)).collect::<Vec<_>>(),
    })
}

pub fn vectors<'a>(vs: impl IntoIterator<Item = &'a Vector>) -> Value {
    Value::Array(vs.into_iter().map(vector).collect())
}

pub fn body(b: &Body) -> Value {
    let vertices: Vec<Vec<String>> = b.vertices().iter().map(|v| v.iter().map(ToString::to_string).collect()).collect();
    let mut m = Map::new();
    if let Some(name) = b.name() {
        m.insert("name".into(), json!(name));
    }
    m.insert("dim".into(), json!(b.dim()));
    m.insert("vertices".into(), json!(vertices));
    Value::Object(m)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn digest_file(path: &Path) -> std::io::Result<Value> {
    let bytes = std::fs::read(path)?;
    Ok(json!({ "path": path.display().to_string(), "sha256": sha256_hex(&bytes) }))
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs: Vec<Value>,
    pub results: Value,
    pub passes: bool,
    pub wall_time_ms: u128,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "passes": self.passes,
            "wall_time_ms": self.wall_time_ms,
            "note": "decimal fields are lossy approximations of the exact rationals",
        })
    }

    pub fn render(&self, text: bool) -> String {
        if !text {
            let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
            s.push('\n');
            return s;
        }
        let mut out = String::new();
        writeln!(out, "command: {}", self.command.join(" ")).unwrap();
        for input in &self.inputs {
            writeln!(
                out,
                "input: {} sha256={}",
                input["path"].as_str().unwrap_or(""),
                input["sha256"].as_str().unwrap_or("")
            )
            .unwrap();
        }
        flatten(&mut out, "", &self.results);
        writeln!(out, "passes: {}", self.passes).unwrap();
        writeln!(out, "wall_time_ms: {}", self.wall_time_ms).unwrap();
        out
    }
}

/// `key.path = value` lines; exact values are followed by `≈decimal`.
fn flatten(out: &mut String, prefix: &str, v: &Value) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) if m.contains_key("exact") && m.len() == 2 => {
            let exact = match &m["exact"] {
                Value::Array(xs) => {
                    format!("({})", xs.iter().map(|x| x.as_str().unwrap_or("")).collect::<Vec<_>>().join(", "))
                }
                x => x.as_str().unwrap_or("").to_string(),
            };
            let approx = match &m["decimal"] {
                Value::Array(xs) => {
                    format!("({})", xs.iter().map(|x| x.as_str().unwrap_or("")).collect::<Vec<_>>().join(", "))
                }
                x => x.as_str().unwrap_or("").to_string(),
            };
            writeln!(out, "{prefix} = {exact} ≈{approx}").unwrap();
        }
        Value::Object(m) => {
            for (k, x) in m {
                flatten(out, &join(k), x);
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(out, &join(&i.to_string()), x);
            }
        }
        x => writeln!(out, "{prefix} = {x}").unwrap(),
    }
}
