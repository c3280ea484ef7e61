//! JSON body files.
//!
//! ```json
//! {"name": "square", "dim": 2, "vertices": [["0", "0"], [1, 0], ["1", "1/2"]]}
//! ```
//!
//! Coordinates are integers or strings holding an integer, a fraction `p/q`
//! or a finite decimal. `name` is optional.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::body::Body;
use crate::kernel::{parse_scalar, Scalar, Vector};
use crate::Error;

#[derive(Debug, Deserialize, Serialize)]
struct BodyFile {
    #[serde(default)]
    name: Option<String>,
    dim: usize,
    vertices: Vec<Vec<Value>>,
}

fn parse_coordinate(v: &Value) -> Result<Scalar, Error> {
    match v {
        Value::String(s) => parse_scalar(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_scalar(&n.to_string()),
        other => Err(Error::Parse(format!("coordinate must be an integer or a string, got {other}"))),
    }
}

pub fn parse_body(text: &str) -> Result<Body, Error> {
    let file: BodyFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut points = Vec::with_capacity(file.vertices.len());
    for row in &file.vertices {
        if row.len() != file.dim {
            return Err(Error::DimensionMismatch { expected: file.dim, found: row.len() });
        }
        points.push(Vector::new(row.iter().map(parse_coordinate).collect::<Result<_, _>>()?));
    }
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let body = Body::new(points)?;
    Ok(match file.name {
        Some(n) => body.with_name(n),
        None => body,
    })
}

pub fn read_body(path: &Path) -> Result<Body, Error> {
    parse_body(&std::fs::read_to_string(path)?)
}

pub fn body_to_json(body: &Body) -> String {
    let file = BodyFile {
        name: body.name().map(str::to_owned),
        dim: body.dim(),
        vertices: body.vertices().iter().map(|v| v.iter().map(|c| Value::String(c.to_string())).collect()).collect(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}
