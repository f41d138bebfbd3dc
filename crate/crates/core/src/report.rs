//! Named identity checks with residuals.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::operator::Operator;

/// One checked identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The relation being checked, written out in operator notation.
    pub paper_ref: String,
    pub residual: f64,
    pub tolerance: f64,
    /// Number of top boson levels excluded from the tested columns.
    pub guard: usize,
    pub pass: bool,
}

/// Output of every verification suite.
///
/// Serializes to the stable JSON schema
/// `{suite, p, cutoff, checks: [{name, paper_ref, residual, tolerance, guard, pass}], pass}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub p: usize,
    pub cutoff: usize,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, p: usize, cutoff: usize) -> Self {
        Self {
            suite: suite.into(),
            p,
            cutoff,
            checks: Vec::new(),
            pass: true,
        }
    }

    /// Records a residual; the check passes iff `residual <= tolerance`.
    pub fn record(
        &mut self,
        name: impl Into<String>,
        relation: impl Into<String>,
        residual: f64,
        tolerance: f64,
        guard: usize,
    ) {
        let pass = residual <= tolerance;
        self.pass &= pass;
        self.checks.push(Check {
            name: name.into(),
            paper_ref: relation.into(),
            residual,
            tolerance,
            guard,
            pass,
        });
    }

    /// Records `residual_norm(lhs, rhs)` over all columns.
    pub fn record_eq(
        &mut self,
        name: impl Into<String>,
        relation: impl Into<String>,
        lhs: &Operator,
        rhs: &Operator,
        tolerance: f64,
    ) -> Result<()> {
        let r = lhs.residual_norm(rhs)?;
        self.record(name, relation, r, tolerance, 0);
        Ok(())
    }

    /// Appends every check of `other`, prefixing names with `prefix`.
    pub fn merge(&mut self, prefix: &str, other: VerificationReport) {
        for mut check in other.checks {
            if !prefix.is_empty() {
                check.name = format!("{prefix}{}", check.name);
            }
            self.pass &= check.pass;
            self.checks.push(check);
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report is always serializable")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} (p={}, cutoff={}): {} checks, {}",
            self.suite,
            self.p,
            self.cutoff,
            self.checks.len(),
            if self.pass { "PASS" } else { "FAIL" }
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "  {:<6} {:<44} residual {:.3e} (tol {:.0e}, guard {})  {}",
                if c.pass { "[ok]" } else { "[FAIL]" },
                c.name,
                c.residual,
                c.tolerance,
                c.guard,
                c.paper_ref
            )?;
        }
        Ok(())
    }
}
