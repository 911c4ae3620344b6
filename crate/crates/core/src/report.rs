//! Structured pass/fail records for the verification routines.

use std::fmt;

use serde::Serialize;

/// A single checked claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    /// Short identifier of the property being checked.
    pub claim: String,
    /// Which instance was checked, e.g. `I={2} i=1`.
    pub case: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// A group of checks for one property.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn check(
        &mut self,
        claim: &str,
        case: impl Into<String>,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
        pass: bool,
    ) {
        self.checks.push(Check {
            claim: claim.to_string(),
            case: case.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
        });
    }

    /// Records `expected == actual`.
    pub fn check_eq<T: PartialEq + fmt::Display>(
        &mut self,
        claim: &str,
        case: impl Into<String>,
        expected: T,
        actual: T,
    ) {
        let pass = expected == actual;
        self.check(claim, case, expected, actual, pass);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.failures().count();
        let verdict = if failed == 0 { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{verdict} {} ({} checks, {failed} failed)",
            self.title,
            self.checks.len()
        )?;
        for c in self.failures() {
            writeln!(
                f,
                "    {} [{}]: expected {}, got {}",
                c.claim, c.case, c.expected, c.actual
            )?;
        }
        Ok(())
    }
}
