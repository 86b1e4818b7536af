//! The envelope every CLI command emits, and its plain-text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::signature::SignatureOptions;

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    /// Arguments after the program name, as given.
    pub command: Vec<String>,
    /// Hex SHA-256 of the input file, or of the canonical parameter string.
    pub input_digest: String,
    pub results: Value,
    pub tool_version: String,
    pub tolerances: SignatureOptions,
    /// Seconds since the Unix epoch.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command.join(" "));
        let _ = writeln!(out, "input sha256: {}", self.input_digest);
        let _ = writeln!(out, "tool version: {}", self.tool_version);
        let _ = writeln!(
            out,
            "tolerances: gap {:e}, isolation width {:e}",
            self.tolerances.gap_tolerance, self.tolerances.isolation_width
        );
        if let Some(ts) = self.timestamp {
            let _ = writeln!(out, "timestamp: {ts}");
        }
        out.push_str("results:\n");
        render_value(&mut out, &self.results, 1);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!(
                "[{}]",
                items
                    .iter()
                    .filter_map(scalar)
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        }
        _ => None,
    }
}

fn render_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match scalar(val) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{}: {s}", k.replace('_', " "));
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{}:", k.replace('_', " "));
                        render_value(out, val, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        render_value(out, item, depth + 1);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        Report {
            command: vec!["invariants".into(), "k.json".into()],
            input_digest: sha256_hex(b"abc"),
            results: json!({"alexander": "t - 1 + t^-1", "arf": 1, "jumps": [{"lo": "1/6"}], "values": [0, 2, 0]}),
            tool_version: TOOL_VERSION.into(),
            tolerances: SignatureOptions::default(),
            timestamp: Some(1),
        }
    }

    #[test]
    fn digest_is_sha256() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let mut r = r;
        r.timestamp = None;
        assert!(!r.to_json().contains("timestamp"));
    }

    #[test]
    fn human_rendering_contains_results() {
        let text = sample().render_human();
        assert!(text.contains("alexander: t - 1 + t^-1"));
        assert!(text.contains("values: [0, 2, 0]"));
        assert!(text.contains("lo: 1/6"));
    }
}
