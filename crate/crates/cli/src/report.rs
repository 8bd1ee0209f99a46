use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

/// Outcome of one command. Field names are stable; in text mode counts are
/// printed in the order they were recorded.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub counts: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub timings_ms: BTreeMap<String, f64>,
    pub violations: Vec<String>,
    pub info: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub listing: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub exit_status: i32,
    /// File contents sent to standard output; printed verbatim after the
    /// report in text mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    /// Render counts as `#` comments so `output` stays parseable.
    #[serde(skip)]
    pub counts_as_comments: bool,
    #[serde(skip)]
    order: Vec<String>,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport {
            command,
            counts: BTreeMap::new(),
            timings_ms: BTreeMap::new(),
            violations: Vec::new(),
            info: Vec::new(),
            listing: Vec::new(),
            error: None,
            exit_status: 0,
            output: None,
            counts_as_comments: false,
            order: Vec::new(),
        }
    }

    pub fn count(&mut self, key: &str, value: impl Into<Value>) {
        if self.counts.insert(key.to_string(), value.into()).is_none() {
            self.order.push(key.to_string());
        }
    }

    /// Big counts go out as decimal strings so JSON readers do not round them.
    pub fn big(&mut self, key: &str, value: &spantl::nfta::BigUint) {
        let v = match u64::try_from(value) {
            Ok(small) => Value::from(small),
            Err(_) => Value::from(value.to_string()),
        };
        self.count(key, v);
    }

    pub fn fail(&mut self, status: i32, message: impl Into<String>) {
        self.exit_status = status;
        self.error = Some(message.into());
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let prefix = if self.counts_as_comments { "# " } else { "" };
        for key in &self.order {
            match &self.counts[key] {
                Value::String(s) => writeln!(out, "{prefix}{key}: {s}"),
                other => writeln!(out, "{prefix}{key}: {other}"),
            }
            .unwrap();
        }
        for (k, ms) in &self.timings_ms {
            writeln!(out, "time {k}: {ms:.3} ms").unwrap();
        }
        for line in &self.listing {
            writeln!(out, "{line}").unwrap();
        }
        for v in &self.violations {
            writeln!(out, "violation: {v}").unwrap();
        }
        for i in &self.info {
            writeln!(out, "INFO: {i}").unwrap();
        }
        if let Some(text) = &self.output {
            out.push_str(text);
        }
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
