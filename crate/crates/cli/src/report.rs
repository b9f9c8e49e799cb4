use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Everything but `duration_ms` is a function of the inputs and flags.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub input_digest: BTreeMap<String, String>,
    pub result: Value,
    pub duration_ms: u64,
}

pub fn digest_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// `path.to.key: value` lines, arrays indexed by position.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    flatten(v, String::new(), &mut out);
    out
}

fn flatten(v: &Value, prefix: String, out: &mut String) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(x, key(k), out);
            }
        }
        Value::Array(a) if !a.is_empty() && a.iter().all(is_atom) => {
            let items: Vec<String> = a.iter().map(scalar).collect();
            let _ = writeln!(out, "{prefix}: {}", items.join(" "));
        }
        Value::Array(a) if !a.is_empty() => {
            for (i, x) in a.iter().enumerate() {
                flatten(x, key(&i.to_string()), out);
            }
        }
        _ => {
            let _ = writeln!(out, "{prefix}: {}", scalar(v));
        }
    }
}

/// A scalar that stays one token when space-joined.
fn is_atom(v: &Value) -> bool {
    match v {
        Value::String(s) => !s.is_empty() && !s.contains(char::is_whitespace),
        Value::Array(_) | Value::Object(_) => false,
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_rendering() {
        let v = json!({"a": 1, "b": {"c": ["x", "y"], "d": [[1, 2]]}, "e": [], "f": null, "g": ["x y", "z"]});
        assert_eq!(
            render_text(&v),
            "a: 1\nb.c: x y\nb.d.0: 1 2\ne: []\nf: null\ng.0: x y\ng.1: z\n"
        );
    }
}
