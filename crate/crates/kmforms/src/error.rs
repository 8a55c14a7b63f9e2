//! Error taxonomy shared by all modules.
//!
//! Three failure classes matter to callers:
//! * `Config`: the caller combined incompatible objects (mismatched units,
//!   gradings, insufficient input depth).
//! * `Domain`: an argument violates a mathematical precondition (wrong
//!   constant term, non-positive root norm, ...).
//! * `Identity`: a claimed exact identity failed coefficient-by-coefficient;
//!   the message carries a witness exponent and both values.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("identity violation: {0}")]
    Identity(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Outcome of a named verification, with one line per sub-check.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            passed: true,
            details: Vec::new(),
            violations: Vec::new(),
        }
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.details.push(line.into());
    }

    pub fn violation(&mut self, line: impl Into<String>) {
        self.passed = false;
        self.violations.push(line.into());
    }

    /// Fold a sub-report in, prefixing its lines.
    pub fn absorb(&mut self, sub: CheckReport) {
        for d in sub.details {
            self.details.push(format!("{}: {}", sub.name, d));
        }
        for v in sub.violations {
            self.passed = false;
            self.violations.push(format!("{}: {}", sub.name, v));
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "[{}] {}\n",
            if self.passed { "PASS" } else { "FAIL" },
            self.name
        ));
        for d in &self.details {
            out.push_str(&format!("  {d}\n"));
        }
        for v in &self.violations {
            out.push_str(&format!("  VIOLATION: {v}\n"));
        }
        out
    }
}
