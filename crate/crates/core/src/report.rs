//! Verification reports: one entry per checked claim, serialized either as
//! a schema-versioned JSON document or as a plain-text summary.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    VerifiedWithNote,
    Assumption,
    Failed,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::VerifiedWithNote => "verified-with-note",
            Status::Assumption => "assumption",
            Status::Failed => "failed",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub id: String,
    /// What is being checked, in words.
    pub anchor: String,
    pub status: Status,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub values: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Claim {
    pub fn new(id: &str, anchor: &str, status: Status, summary: impl Into<String>) -> Self {
        Claim {
            id: id.to_string(),
            anchor: anchor.to_string(),
            status,
            summary: summary.into(),
            note: None,
            values: Value::Null,
            elapsed_ms: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_values(mut self, values: Value) -> Self {
        self.values = values;
        self
    }

    pub fn failed(id: &str, anchor: &str, err: impl std::fmt::Display) -> Self {
        Claim::new(id, anchor, Status::Failed, format!("error: {err}"))
    }

    /// `verified` when `ok`, `failed` otherwise.
    pub fn check(id: &str, anchor: &str, ok: bool, summary: impl Into<String>) -> Self {
        let status = if ok { Status::Verified } else { Status::Failed };
        Claim::new(id, anchor, status, summary)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub command: String,
    pub claims: Vec<Claim>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
}

impl VerificationReport {
    pub fn new(command: &str) -> Self {
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            claims: Vec::new(),
            verdict: None,
        }
    }

    pub fn push(&mut self, claim: Claim) {
        self.claims.push(claim);
    }

    pub fn extend(&mut self, claims: impl IntoIterator<Item = Claim>) {
        self.claims.extend(claims);
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.status != Status::Failed)
    }

    pub fn count(&self, status: Status) -> usize {
        self.claims.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} (schema {})", self.command, self.schema_version);
        for c in &self.claims {
            let _ = writeln!(out, "[{}] {}: {}", c.status.label(), c.id, c.summary);
            if let Some(n) = &c.note {
                let _ = writeln!(out, "    note: {n}");
            }
            if let Some(ms) = c.elapsed_ms {
                let _ = writeln!(out, "    time: {ms} ms");
            }
        }
        let _ = writeln!(
            out,
            "{} verified, {} with note, {} assumption, {} failed",
            self.count(Status::Verified),
            self.count(Status::VerifiedWithNote),
            self.count(Status::Assumption),
            self.count(Status::Failed)
        );
        if let Some(v) = &self.verdict {
            let _ = writeln!(out, "verdict: {v}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_serializes_kebab_case() {
        let c = Claim::new("x", "y", Status::VerifiedWithNote, "z");
        let j = serde_json::to_value(&c).unwrap();
        assert_eq!(j["status"], "verified-with-note");
        assert!(j.get("elapsed_ms").is_none());
    }

    #[test]
    fn failed_claims_fail_the_report() {
        let mut r = VerificationReport::new("t");
        r.push(Claim::new("a", "a", Status::Assumption, "a"));
        assert!(r.passed());
        r.push(Claim::check("b", "b", false, "b"));
        assert!(!r.passed());
        assert!(r.to_text().contains("[failed] b: b"));
    }
}
