//! Argument values: JSON literals or paths to JSON files.

use std::path::Path;

use anyhow::{bail, Context, Result};
use instanton_core::json::declared_field;
use instanton_core::FieldSpec;
use serde_json::Value;

/// Parses `arg` as JSON, falling back to reading it as a file path. The
/// bare word `random` stands for a seeded random value.
pub fn load(arg: &str) -> Result<Value> {
    if arg == "random" {
        return Ok(Value::String(arg.into()));
    }
    if let Ok(v) = serde_json::from_str(arg) {
        return Ok(v);
    }
    if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
        return serde_json::from_str(&text).with_context(|| format!("malformed JSON in {arg}"));
    }
    bail!("argument is neither JSON nor a readable file: {arg:?}")
}

/// A list given either as JSON or as comma-separated integers.
pub fn load_list(arg: &str) -> Result<Value> {
    if let Ok(v) = load(arg) {
        return Ok(v);
    }
    let items = arg
        .split(',')
        .map(|s| match s.trim() {
            "random" => Ok(Value::String("random".into())),
            s => s.parse::<u64>().map(Value::from),
        })
        .collect::<std::result::Result<Vec<_>, _>>()
        .with_context(|| format!("malformed list {arg:?}"))?;
    Ok(Value::Array(items))
}

/// `--field` if given, else a field declared by one of the inputs, else
/// `default`.
pub fn resolve_field(
    flag: Option<&str>,
    inputs: &[&Value],
    default: FieldSpec,
) -> Result<FieldSpec> {
    if let Some(s) = flag {
        return Ok(s.parse()?);
    }
    for v in inputs {
        if let Some(spec) = declared_field(v)? {
            return Ok(spec);
        }
        if let Some(phi) = v.get("phi") {
            if let Some(spec) = declared_field(phi)? {
                return Ok(spec);
            }
        }
    }
    Ok(default)
}
