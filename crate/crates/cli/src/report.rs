//! Report envelope and output formats.

use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

use permblock_core::RESOLVED_LINE_ORDERING;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Wraps a command result with the settings needed to reproduce it.
pub fn envelope(command: &str, seed: u64, timestamp: bool, status: &str, result: Value) -> Value {
    let mut m = Map::new();
    m.insert("tool".into(), "permblock".into());
    m.insert("version".into(), env!("CARGO_PKG_VERSION").into());
    m.insert("command".into(), command.into());
    m.insert("seed".into(), seed.into());
    m.insert("line_ordering".into(), format!("{RESOLVED_LINE_ORDERING:?}").to_lowercase().into());
    m.insert("status".into(), status.into());
    if timestamp {
        m.insert("timestamp".into(), chrono::Utc::now().to_rfc3339().into());
    }
    m.insert("result".into(), result);
    Value::Object(m)
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&key(k), x, out)),
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            xs.iter().enumerate().for_each(|(i, x)| flatten(&key(&i.to_string()), x, out))
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// `key,value` rows with dotted paths into the JSON report.
pub fn to_csv(report: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", report, &mut rows);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["key", "value"]).expect("in-memory write");
    for (k, v) in rows {
        w.write_record([k, v]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}

pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("JSON values serialize") + "\n",
        Format::Csv => to_csv(report),
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_paths() {
        let v = json!({"a": {"b": 1, "c": [1, 2]}, "d": [{"e": "x,y"}]});
        let csv = to_csv(&v);
        assert_eq!(csv, "key,value\na.b,1\na.c,\"[1,2]\"\nd.0.e,\"x,y\"\n");
    }

    #[test]
    fn envelope_without_timestamp() {
        let v = envelope("census", 3, false, "verified", json!({}));
        assert_eq!(v["line_ordering"], "lex");
        assert_eq!(v["seed"], 3);
        assert!(v.get("timestamp").is_none());
    }
}
