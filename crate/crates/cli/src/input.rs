//! Arguments given as inline JSON or as a path to a JSON file.

use periodkit::config::seven::QuadricSystem;
use periodkit::config::ConfigMatrix;
use periodkit::linalg::rational::parse;
use periodkit::linalg::{Matrix, Rational};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

/// A failure reported as `{"error": {"kind", "message"}}` with exit code 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: String,
    pub message: String,
}

impl CliError {
    pub fn new(kind: &str, message: impl Into<String>) -> CliError {
        CliError {
            kind: kind.to_string(),
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind, "message": self.message } })
    }
}

impl From<periodkit::Error> for CliError {
    fn from(e: periodkit::Error) -> CliError {
        CliError::new(e.kind(), e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Inline JSON when the argument starts with `{`, `[` or `"`, otherwise a
/// file to read.
pub fn json_arg(arg: &str) -> CliResult<Value> {
    let t = arg.trim_start();
    let text = if t.starts_with(['{', '[', '"']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::new("Io", format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::new("Parse", e.to_string()))
}

pub fn from_value<T: DeserializeOwned>(v: Value) -> CliResult<T> {
    serde_json::from_value(v).map_err(|e| CliError::new("Parse", e.to_string()))
}

fn entry(v: &Value) -> CliResult<Rational> {
    match v {
        Value::String(s) => Ok(parse(s)?),
        Value::Number(n) => n
            .as_i64()
            .map(|n| Rational::from_integer(n.into()))
            .ok_or_else(|| CliError::new("Parse", format!("not an integer: {n}"))),
        other => Err(CliError::new(
            "Parse",
            format!("not a matrix entry: {other}"),
        )),
    }
}

/// `{"rows","cols","entries"}` or a bare list of rows whose entries are
/// integers or `"p/q"` strings.
pub fn matrix(v: Value) -> CliResult<Matrix> {
    match v {
        Value::Array(rows) => {
            let rows = rows
                .iter()
                .map(|r| match r {
                    Value::Array(xs) => xs.iter().map(entry).collect::<CliResult<Vec<_>>>(),
                    other => Err(CliError::new("Parse", format!("not a matrix row: {other}"))),
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(Matrix::from_rows(rows)?)
        }
        other => from_value(other),
    }
}

/// A configuration object, or a bare 3×n matrix with the standard labels.
pub fn config(v: Value) -> CliResult<ConfigMatrix> {
    match v {
        Value::Object(ref o) if o.contains_key("matrix") => from_value(v),
        other => Ok(ConfigMatrix::standard(matrix(other)?)?),
    }
}

pub fn system(v: Value) -> CliResult<QuadricSystem> {
    Ok(QuadricSystem::new(matrix(v)?)?)
}

/// Integer vectors, for sublattice bases and glue generators.
pub fn int_rows(v: Value) -> CliResult<Vec<Vec<i64>>> {
    from_value(v)
}
