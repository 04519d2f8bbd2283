//! Golden-value checks: every leaf of the expected document must appear,
//! with the same value, in the run summary.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::Value;

pub fn mismatches(expected: &Value, actual: &Value) -> Vec<String> {
    let mut out = Vec::new();
    walk(expected, actual, "", &mut out);
    out
}

fn walk(expected: &Value, actual: &Value, path: &str, out: &mut Vec<String>) {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => {
            for (k, v) in e {
                let sub = format!("{path}/{k}");
                match a.get(k) {
                    Some(av) => walk(v, av, &sub, out),
                    None => out.push(format!("{sub}: missing, expected {v}")),
                }
            }
        }
        (Value::Array(e), Value::Array(a)) if e.len() == a.len() => {
            for (i, (ev, av)) in e.iter().zip(a).enumerate() {
                walk(ev, av, &format!("{path}/{i}"), out);
            }
        }
        (Value::Number(e), Value::Number(a)) if e.as_f64() == a.as_f64() => {}
        (e, a) if e == a => {}
        (e, a) => out.push(format!("{}: expected {e}, got {a}", if path.is_empty() { "/" } else { path })),
    }
}

pub fn check(file: Option<&Path>, summary: &Value) -> Result<()> {
    let Some(file) = file else { return Ok(()) };
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let expected: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", file.display()))?;
    let bad = mismatches(&expected, summary);
    if bad.is_empty() {
        eprintln!("expect: all golden values match");
        return Ok(());
    }
    for line in &bad {
        eprintln!("expect mismatch {line}");
    }
    bail!("{} golden value(s) differ", bad.len())
}
