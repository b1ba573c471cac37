//! Report documents shared by every verification entry point.

use std::fmt;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// Witness lists are capped so reports stay readable on large windows.
pub const MAX_WITNESSES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub axiom: String,
    pub status: Status,
    pub witnesses: Vec<String>,
    pub unchecked_count: u64,
}

impl Check {
    pub fn new(axiom: impl Into<String>, witnesses: Vec<String>) -> Self {
        let mut witnesses = witnesses;
        let status = Status::from_bool(witnesses.is_empty());
        witnesses.truncate(MAX_WITNESSES);
        Self {
            axiom: axiom.into(),
            status,
            witnesses,
            unchecked_count: 0,
        }
    }

    pub fn pass(axiom: impl Into<String>) -> Self {
        Self::new(axiom, Vec::new())
    }

    pub fn fail(axiom: impl Into<String>, witness: impl Into<String>) -> Self {
        Self::new(axiom, vec![witness.into()])
    }

    pub fn from_bool(axiom: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(axiom)
        } else {
            Self::fail(axiom, witness())
        }
    }

    pub fn with_unchecked(mut self, n: u64) -> Self {
        self.unchecked_count = n;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub subject: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn get(&self, axiom: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn status_of(&self, axiom: &str) -> Option<Status> {
        self.get(axiom).map(|c| c.status)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "report: {}", self.subject)?;
        for c in &self.checks {
            write!(f, "  {:<28} {}", c.axiom, c.status)?;
            if c.unchecked_count > 0 {
                write!(f, "  (unchecked {})", c.unchecked_count)?;
            }
            writeln!(f)?;
            for w in &c.witnesses {
                writeln!(f, "      witness: {w}")?;
            }
        }
        write!(f, "overall: {}", Status::from_bool(self.passed()))
    }
}
