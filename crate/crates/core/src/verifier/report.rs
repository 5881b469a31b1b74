//! Named checks and their plain-text report.

use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub notes: String,
}

impl Check {
    /// Passes when `measured <= tolerance`.
    pub fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            tolerance,
            pass: measured <= tolerance,
            notes: String::new(),
        }
    }

    /// Passes when `measured >= tolerance`.
    pub fn at_least(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            tolerance,
            pass: measured >= tolerance,
            notes: String::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        let note = note.into();
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(&note);
        self
    }

    pub fn failed(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            measured: f64::NAN,
            tolerance: f64::NAN,
            pass: false,
            notes: reason.into(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerificationReport {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(seed: u64) -> Self {
        Self { seed, checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn overall(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// `key = value` lines, one block per check. No timings, so the output
    /// depends only on the seed and the inputs.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "seed = {}", self.seed);
        let _ = writeln!(out, "checks = {}", self.checks.len());
        let _ = writeln!(out, "failed = {}", self.failures().count());
        let _ = writeln!(out, "overall = {}", if self.overall() { "pass" } else { "fail" });
        for c in &self.checks {
            let _ = writeln!(out);
            let _ = writeln!(out, "[{}]", c.name);
            let _ = writeln!(out, "status = {}", if c.pass { "pass" } else { "fail" });
            let _ = writeln!(out, "measured = {:.6e}", c.measured);
            let _ = writeln!(out, "tolerance = {:.6e}", c.tolerance);
            if !c.notes.is_empty() {
                let _ = writeln!(out, "notes = {}", c.notes);
            }
        }
        out
    }
}
