use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// Relative slack allowed on the right-hand side of an audited inequality.
pub const AUDIT_EPSILON: f64 = 1e-9;

/// One audited inequality `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub name: String,
    pub inputs: Map<String, Value>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
}

impl AuditReport {
    pub fn new(name: impl Into<String>, inputs: Map<String, Value>, lhs: f64, rhs: f64) -> Self {
        let margin = rhs - lhs;
        let pass = margin >= -AUDIT_EPSILON * rhs.abs().max(1.0);
        Self {
            name: name.into(),
            inputs,
            lhs,
            rhs,
            margin,
            pass,
            notes: String::new(),
        }
    }

    pub fn with_note(mut self, note: impl AsRef<str>) -> Self {
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(note.as_ref());
        self
    }
}

/// Build an `inputs` map from `(key, value)` pairs.
pub fn inputs<const N: usize>(pairs: [(&str, Value); N]) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
