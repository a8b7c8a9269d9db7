//! Run reports: one per invocation, rendered as text or JSON.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub stage: String,
    pub micros: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub input: String,
    pub input_digest: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<String>,
    pub checks: Vec<Check>,
    pub timings: Vec<Timing>,
    pub exit_code: i32,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

impl RunReport {
    pub fn new(command: &str, input: &str, bytes: &[u8]) -> Self {
        RunReport {
            command: command.to_string(),
            input: input.to_string(),
            input_digest: digest(bytes),
            summary: None,
            checks: Vec::new(),
            timings: Vec::new(),
            exit_code: EXIT_PASS,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, verdict: impl Into<String>, passed: bool, witness: Option<Value>) {
        self.checks.push(Check { name: name.into(), verdict: verdict.into(), passed, witness });
    }

    /// A passing check whose verdict is plain data.
    pub fn fact(&mut self, name: impl Into<String>, verdict: impl ToString) {
        self.check(name, verdict.to_string(), true, None);
    }

    /// Runs `f` and records how long it took.
    pub fn timed<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.push(Timing { stage: stage.to_string(), micros: start.elapsed().as_micros() as u64 });
        out
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Sets the exit code from the checks unless an input error was recorded.
    pub fn finish(mut self) -> Self {
        if self.exit_code != EXIT_INPUT {
            self.exit_code = if self.all_passed() { EXIT_PASS } else { EXIT_VIOLATION };
        }
        self
    }

    pub fn input_error(mut self, message: &str) -> Self {
        self.check("input", "error", false, Some(Value::String(message.to_string())));
        self.exit_code = EXIT_INPUT;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} (sha256 {})\n", self.command, self.input, &self.input_digest[..12]);
        if let Some(s) = &self.summary {
            let _ = writeln!(out, "{s}");
        }
        let width = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            let pad = width - c.name.chars().count();
            let _ = write!(out, "  {mark} {}{} : {}", c.name, " ".repeat(pad), c.verdict);
            if let Some(w) = &c.witness {
                match w {
                    Value::String(s) => {
                        let _ = write!(out, ", witness {s}");
                    }
                    other => {
                        let _ = write!(out, ", witness {other}");
                    }
                }
            }
            out.push('\n');
        }
        let total: u64 = self.timings.iter().map(|t| t.micros).sum();
        let _ = writeln!(out, "time {:.3} ms, exit {}", total as f64 / 1000.0, self.exit_code);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_follows_checks() {
        let mut r = RunReport::new("analyze", "x", b"1\n0\n");
        r.fact("order", 1);
        assert_eq!(r.clone().finish().exit_code, EXIT_PASS);
        r.check("broken", "no", false, None);
        assert_eq!(r.clone().finish().exit_code, EXIT_VIOLATION);
        assert_eq!(r.input_error("bad").finish().exit_code, EXIT_INPUT);
    }

    #[test]
    fn digest_is_sha256() {
        assert_eq!(digest(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }
}
