//! Structured pass/fail reports produced by the verification routines.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactmath::Scalar;
use crate::linalg::Matrix;

/// One failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub check: String,
    pub location: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    /// Offending matrix, row-major as scalar strings.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<Vec<Vec<String>>>,
}

/// Failures collected over a run of checks, with the number of checks run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: usize,
    pub failures: Vec<Finding>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&Finding> {
        self.failures.first()
    }

    /// Whether some failure has the given check name (or name prefix ending in `*`).
    pub fn has_failure(&self, check: &str) -> bool {
        match check.strip_suffix('*') {
            Some(prefix) => self.failures.iter().any(|f| f.check.starts_with(prefix)),
            None => self.failures.iter().any(|f| f.check == check),
        }
    }

    /// Records a check; on failure adds a finding. Returns `ok`.
    pub fn check(&mut self, ok: bool, check: &str, location: impl Into<String>) -> bool {
        self.checks += 1;
        if !ok {
            self.failures.push(Finding {
                check: check.to_string(),
                location: location.into(),
                detail: None,
                residual: None,
            });
        }
        ok
    }

    /// Records a check whose residual must vanish.
    pub fn check_zero<S: Scalar>(&mut self, residual: &Matrix<S>, check: &str, location: impl Into<String>) -> bool {
        self.checks += 1;
        let ok = residual.is_zero();
        if !ok {
            self.failures.push(Finding {
                check: check.to_string(),
                location: location.into(),
                detail: None,
                residual: Some(matrix_strings(residual)),
            });
        }
        ok
    }

    pub fn fail(&mut self, check: &str, location: impl Into<String>, detail: impl Into<String>) {
        self.checks += 1;
        self.failures.push(Finding {
            check: check.to_string(),
            location: location.into(),
            detail: Some(detail.into()),
            residual: None,
        });
    }

    pub fn merge(&mut self, other: Report) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }

    pub fn into_result(self) -> Result<Report, Report> {
        if self.passed() {
            Ok(self)
        } else {
            Err(self)
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn matrix_strings<S: Scalar>(m: &Matrix<S>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(ToString::to_string).collect())
        .collect()
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.check, self.location)?;
        if let Some(d) = &self.detail {
            write!(f, ": {d}")?;
        }
        if let Some(r) = &self.residual {
            let rows: Vec<String> = r.iter().map(|row| format!("[{}]", row.join(", "))).collect();
            write!(f, " (residual [{}])", rows.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "all {} checks passed", self.checks);
        }
        write!(f, "{} of {} checks failed", self.failures.len(), self.checks)?;
        for finding in &self.failures {
            write!(f, "\n  {finding}")?;
        }
        Ok(())
    }
}

impl std::error::Error for Report {}
