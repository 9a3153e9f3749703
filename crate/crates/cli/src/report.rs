use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// Result of one CLI invocation.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub seed: Option<u64>,
    pub passed: bool,
    pub verdicts: Vec<Verdict>,
    pub counts: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub details: serde_json::Value,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport {
            command,
            inputs_digest: String::new(),
            seed: None,
            passed: true,
            verdicts: Vec::new(),
            counts: BTreeMap::new(),
            timing_ms: None,
            details: serde_json::Value::Null,
        }
    }

    pub fn verdict(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.verdicts.push(Verdict {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn count(&mut self, name: impl Into<String>, value: usize) {
        self.counts.insert(name.into(), value as u64);
    }

    pub fn digest_inputs<'a>(&mut self, inputs: impl IntoIterator<Item = &'a str>) {
        let mut h = Sha256::new();
        for s in inputs {
            h.update((s.len() as u64).to_le_bytes());
            h.update(s.as_bytes());
        }
        self.inputs_digest = hex::encode(h.finalize());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command.join(" "));
        if !self.inputs_digest.is_empty() {
            let _ = writeln!(out, "inputs:  sha256:{}", self.inputs_digest);
        }
        if let Some(s) = self.seed {
            let _ = writeln!(out, "seed:    {s}");
        }
        for (k, v) in &self.counts {
            let _ = writeln!(out, "{k}: {v}");
        }
        for v in &self.verdicts {
            let mark = if v.passed { "PASS" } else { "FAIL" };
            if v.detail.is_empty() {
                let _ = writeln!(out, "[{mark}] {}", v.name);
            } else {
                let _ = writeln!(out, "[{mark}] {}: {}", v.name, v.detail);
            }
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(out, "time:    {t} ms");
        }
        let _ = writeln!(out, "result:  {}", if self.passed { "pass" } else { "fail" });
        out
    }
}
