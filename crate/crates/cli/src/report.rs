//! Report assembly. Objects are `BTreeMap`-backed, so key order and hence
//! the serialized bytes depend only on the content.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use koszulkit_core::dg::BigradedTable;

use crate::formats::{Input, FORMAT_VERSION};

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Bidegree table as `{vertex: [[cohomological, internal, dim], ...]}`.
pub fn table_json(table: &BigradedTable, names: &[String]) -> Value {
    let mut out = Map::new();
    for (&(c, i, v), &n) in table {
        if n == 0 {
            continue;
        }
        let entry = out.entry(names[v].clone()).or_insert_with(|| Value::Array(Vec::new()));
        if let Value::Array(rows) = entry {
            rows.push(json!([c, i, n]));
        }
    }
    Value::Object(out)
}

pub struct Report {
    fields: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, arguments: Value, inputs: &[Input]) -> Self {
        let mut fields = Map::new();
        fields.insert("format_version".into(), json!(FORMAT_VERSION));
        fields.insert("command".into(), json!(command));
        fields.insert("arguments".into(), arguments);
        fields.insert(
            "inputs".into(),
            inputs
                .iter()
                .map(|i| json!({"path": i.path, "sha256": sha256_hex(&i.bytes)}))
                .collect(),
        );
        Report { fields }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.into(), value.into());
        self
    }

    pub fn into_value(self) -> Value {
        Value::Object(self.fields)
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}
