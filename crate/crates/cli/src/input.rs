//! Parsing of command-line values into core types.
//!
//! Syntax problems (bad JSON, bad numbers) are usage errors; well-formed
//! input that a core constructor rejects is a domain error.

use std::path::Path;

use serde_json::Value;
use upcluster::{Elements, ExtendedMatrix, Laurent};

use crate::CliError;

fn json(text: &str, what: &str) -> Result<Value, CliError> {
    serde_json::from_str(text)
        .map_err(|e| CliError::Usage(format!("malformed JSON in {what} at line {}, column {}: {e}", e.line(), e.column())))
}

/// `--matrix`: inline JSON when the value starts with `[` or `{`, else a
/// file path. Accepts `{"m","n","entries"}` or a bare list of rows.
pub fn matrix(arg: &str) -> Result<ExtendedMatrix, CliError> {
    let trimmed = arg.trim_start();
    let (text, what) = if trimmed.starts_with('[') || trimmed.starts_with('{') {
        (arg.to_string(), "--matrix".to_string())
    } else {
        let text = std::fs::read_to_string(Path::new(arg))
            .map_err(|e| CliError::Usage(format!("cannot read matrix file {arg}: {e}")))?;
        (text, arg.to_string())
    };
    match json(&text, &what)? {
        Value::Array(rows) => {
            let rows = rows
                .into_iter()
                .map(|r| serde_json::from_value::<Vec<i64>>(r))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Usage(format!("{what}: rows must be integer lists: {e}")))?;
            ExtendedMatrix::from_rows(rows).map_err(CliError::domain)
        }
        v @ Value::Object(_) => {
            let keys_ok = ["m", "n", "entries"].iter().all(|k| v.get(k).is_some());
            if !keys_ok {
                return Err(CliError::Usage(format!("{what}: expected keys \"m\", \"n\", \"entries\"")));
            }
            serde_json::from_value(v).map_err(|e| CliError::Domain(e.to_string()))
        }
        _ => Err(CliError::Usage(format!("{what}: expected an object or a list of rows"))),
    }
}

/// An integer vector given as a JSON list, e.g. `[1,-2,0]`.
pub fn int_vec(arg: &str, what: &str) -> Result<Vec<i64>, CliError> {
    serde_json::from_value(json(arg, what)?).map_err(|e| CliError::Usage(format!("{what}: expected a list of integers: {e}")))
}

/// Mutation directions: `"1,3,2"` or `[1,3,2]`, 1-based. Returned 0-based.
pub fn directions(arg: &str, n: usize) -> Result<Vec<usize>, CliError> {
    let body = arg.trim().trim_start_matches('[').trim_end_matches(']');
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|tok| {
            let k: usize = tok.trim().parse().map_err(|_| CliError::Usage(format!("bad direction {tok:?} in {arg:?}")))?;
            if k == 0 || k > n {
                return Err(CliError::Domain(format!("direction {k} out of range 1..={n}")));
            }
            Ok(k - 1)
        })
        .collect()
}

/// `--poly`: Laurent JSON when it starts with `{`, else canonical text.
pub fn poly(arg: &str, nvars: usize) -> Result<Laurent, CliError> {
    if arg.trim_start().starts_with('{') {
        let p: Laurent =
            serde_json::from_value(json(arg, "--poly")?).map_err(|e| CliError::Usage(format!("--poly: {e}")))?;
        if p.nvars() != nvars {
            return Err(CliError::Domain(format!("--poly has {} variables, the matrix has {nvars}", p.nvars())));
        }
        Ok(p)
    } else {
        Laurent::parse(arg, nvars).map_err(|e| CliError::Usage(format!("--poly: {e}")))
    }
}

/// `--element`: `xtilde:[..]` or `z:[..]`.
pub fn element(arg: &str, matrix: &ExtendedMatrix, cap: u32) -> Result<Laurent, CliError> {
    let (kind, vec) = arg
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("--element must look like xtilde:[1,1] or z:[1,1], got {arg:?}")))?;
    let a = int_vec(vec, "--element")?;
    let e = Elements::new(matrix).with_cap(cap);
    match kind.trim() {
        "xtilde" => e.xtilde(&a).map_err(CliError::domain),
        "z" => e.z(&a).map_err(CliError::domain),
        other => Err(CliError::Usage(format!("unknown element kind {other:?}; use xtilde or z"))),
    }
}

/// Three nonnegative integers as a JSON list.
pub fn triple(arg: &str) -> Result<[i64; 3], CliError> {
    let v = int_vec(arg, "--triple")?;
    <[i64; 3]>::try_from(v).map_err(|v| CliError::Usage(format!("--triple needs 3 entries, got {}", v.len())))
}
