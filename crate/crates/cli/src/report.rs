//! Machine-readable run reports.
//!
//! Reports are deterministic given inputs and flags: fields serialize in
//! declaration order, witnesses use stable orderings, and the timing field
//! is the only part excluded from byte-for-byte comparisons.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub source: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub verdicts: Vec<Verdict>,
    /// Extra structured payload (spaces, functions, theories).
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub payload: serde_json::Value,
    /// Wall-clock milliseconds; excluded from determinism comparisons.
    pub timing_ms: u128,
    pub exit_code: i32,
}

impl RunReport {
    pub fn new(command: &str) -> RunReport {
        RunReport {
            command: command.to_owned(),
            inputs: Vec::new(),
            seed: None,
            verdicts: Vec::new(),
            payload: serde_json::Value::Null,
            timing_ms: 0,
            exit_code: 0,
        }
    }

    pub fn pass(&mut self, name: &str, detail: impl Into<String>) {
        self.verdicts.push(Verdict {
            name: name.to_owned(),
            status: Status::Pass,
            detail: detail.into(),
            witness: None,
        });
    }

    pub fn fail(&mut self, name: &str, detail: impl Into<String>, witness: Option<serde_json::Value>) {
        self.verdicts.push(Verdict {
            name: name.to_owned(),
            status: Status::Fail,
            detail: detail.into(),
            witness,
        });
    }

    pub fn info(&mut self, name: &str, detail: impl Into<String>) {
        self.verdicts.push(Verdict {
            name: name.to_owned(),
            status: Status::Info,
            detail: detail.into(),
            witness: None,
        });
    }

    pub fn unknown(&mut self, name: &str, detail: impl Into<String>) {
        self.verdicts.push(Verdict {
            name: name.to_owned(),
            status: Status::Unknown,
            detail: detail.into(),
            witness: None,
        });
    }

    pub fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>, witness: Option<serde_json::Value>) {
        if ok {
            self.pass(name, detail);
        } else {
            self.fail(name, detail, witness);
        }
    }

    /// Exit code 0 iff every requested verification passed.
    pub fn finalize(&mut self, timing_ms: u128) {
        self.timing_ms = timing_ms;
        let ok = self
            .verdicts
            .iter()
            .all(|v| matches!(v.status, Status::Pass | Status::Info));
        self.exit_code = if ok { 0 } else { 1 };
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {}\n", self.command));
        for v in &self.verdicts {
            let tag = match v.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
                Status::Unknown => "UNKNOWN",
            };
            out.push_str(&format!("[{tag}] {}: {}\n", v.name, v.detail));
        }
        out.push_str(&format!("exit: {}\n", self.exit_code));
        out
    }
}
