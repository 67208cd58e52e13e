//! Report rendering shared by all verbs.

use std::fmt::Write as _;

use affgebra::affgebra::Mode;
use affgebra::format::{matrix_to_json, vector_to_json};
use affgebra::{Matrix, Scalar};
use serde_json::{Map, Value};

/// A pass/fail verdict with its evidence. Serialized as
/// `{"pass", "witness"?, "mode", "seed", ...details}`.
pub struct Report {
    pub pass: bool,
    pub summary: String,
    pub witness: Option<Value>,
    pub mode: Mode,
    pub seed: u64,
    pub details: Vec<(&'static str, Value)>,
}

impl Report {
    pub fn new(pass: bool, summary: impl Into<String>, mode: Mode, seed: u64) -> Self {
        Report {
            pass,
            summary: summary.into(),
            witness: None,
            mode,
            seed,
            details: Vec::new(),
        }
    }

    pub fn witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn detail(mut self, key: &'static str, value: Value) -> Self {
        self.details.push((key, value));
        self
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("pass".into(), Value::Bool(self.pass));
        if let Some(w) = &self.witness {
            obj.insert("witness".into(), w.clone());
        }
        obj.insert("mode".into(), Value::String(self.mode.to_string()));
        obj.insert("seed".into(), Value::from(self.seed));
        for (k, v) in &self.details {
            obj.insert((*k).into(), v.clone());
        }
        Value::Object(obj)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{}: {} ({}, seed {})\n",
            if self.pass { "PASS" } else { "FAIL" },
            self.summary,
            self.mode,
            self.seed
        );
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness: {}", compact(w));
        }
        for (k, v) in &self.details {
            let _ = writeln!(out, "{k}: {}", compact(v));
        }
        out
    }
}

/// JSON text with string scalars unquoted, for terminal display and CSV cells.
pub fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!(
            "[{}]",
            items.iter().map(compact).collect::<Vec<_>>().join(",")
        ),
        Value::Object(obj) => format!(
            "{{{}}}",
            obj.iter()
                .map(|(k, v)| format!("{k}: {}", compact(v)))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        other => other.to_string(),
    }
}

pub fn matrix_cell(m: &Matrix) -> String {
    compact(&matrix_to_json(m))
}

pub fn vector_cell(v: &[Scalar]) -> String {
    compact(&vector_to_json(v))
}
