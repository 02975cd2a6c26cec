//! Pass/fail verdicts with named checks and first witnesses.

use std::fmt;

use serde::Serialize;

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    /// How many basis tuples (or instances) were examined.
    pub tested: usize,
    /// First failing location, if any.
    pub witness: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// A list of named checks, in the order they were run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub checks: Vec<CheckOutcome>,
}

impl Verdict {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn record(&mut self, name: impl Into<String>, tested: usize, witness: Option<String>) {
        self.checks.push(CheckOutcome { name: name.into(), tested, witness });
    }

    /// Records a single boolean fact.
    pub fn expect(&mut self, name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        let w = if ok { None } else { Some(witness()) };
        self.record(name, 1, w);
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed())
    }

    /// Names of failed checks, in order.
    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect()
    }

    pub fn failed(&self, name: &str) -> bool {
        self.checks.iter().any(|c| c.name == name && !c.passed())
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Appends another verdict's checks, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Verdict) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.name = format!("{prefix}: {}", c.name);
            }
            self.checks.push(c);
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "PASS  {} ({} cases)", c.name, c.tested)?,
                Some(w) => writeln!(f, "FAIL  {} at {}", c.name, w)?,
            }
        }
        Ok(())
    }
}

/// Accumulates one check over many cases, keeping the first failure.
pub(crate) struct Tally {
    pub tested: usize,
    pub witness: Option<String>,
}

impl Tally {
    pub fn new() -> Self {
        Self { tested: 0, witness: None }
    }

    pub fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.tested += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn into_verdict(self, v: &mut Verdict, name: impl Into<String>) {
        v.record(name, self.tested, self.witness);
    }
}
