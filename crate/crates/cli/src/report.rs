use serde::Serialize;
use serde_json::Value;

use crate::job::SCHEMA;

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    /// sha256 of every input file, in the order read.
    pub input_sha256: Vec<String>,
    pub tool_version: &'static str,
    pub precision: u32,
    pub precision_cap: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub schema: &'static str,
    pub command: &'static str,
    pub verdict: String,
    pub exit_code: u8,
    pub provenance: Provenance,
    pub report: Value,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        self.exit_code
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        format!("{}: {} (exit {})", self.command, self.verdict, self.exit_code)
    }

    pub fn new(
        command: &'static str,
        verdict: impl Into<String>,
        exit_code: u8,
        provenance: Provenance,
        report: Value,
    ) -> Self {
        Outcome { schema: SCHEMA, command, verdict: verdict.into(), exit_code, provenance, report }
    }
}
