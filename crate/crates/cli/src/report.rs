//! Machine-readable reports.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const RESOURCE_BOUND: &str = "resource_bound_exceeded";
pub const INCONCLUSIVE: &str = "inconclusive";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: String,
    pub data: Value,
}

impl CheckResult {
    pub fn new(name: &str, status: &str, data: Value) -> Self {
        CheckResult { name: name.into(), status: status.into(), data }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub input_hash: String,
    pub command: String,
    pub bounds: Value,
    pub results: Vec<CheckResult>,
    pub wall_ms: u64,
}

impl Report {
    pub fn result(&self, name: &str) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.name == name)
    }

    /// 3 when some check hit the dimension cap, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.results.iter().any(|r| r.status == RESOURCE_BOUND || r.status == INCONCLUSIVE) {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One `name: status` line per result.
    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\ninput: {}\n", self.command, self.input_hash);
        for r in &self.results {
            out.push_str(&format!("{}: {}\n", r.name, r.status));
        }
        out
    }
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}
