use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A single violated law together with the witnessing data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    pub witness: String,
    pub location: String,
}

/// Outcome of an axiom check: empty violation list means all laws hold.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub violations: Vec<Violation>,
    /// Computed invariants (orders, homotopy groups, ...) keyed by name.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub derived: BTreeMap<String, String>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violate(&mut self, law: impl Into<String>, witness: impl fmt::Display, location: impl Into<String>) {
        self.violations.push(Violation {
            law: law.into(),
            witness: witness.to_string(),
            location: location.into(),
        });
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.derived.insert(key.into(), value.to_string());
    }

    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut v in other.violations {
            v.location = if v.location.is_empty() {
                prefix.to_string()
            } else {
                format!("{prefix}.{}", v.location)
            };
            self.violations.push(v);
        }
        for (k, val) in other.derived {
            self.derived.insert(format!("{prefix}.{k}"), val);
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            write!(f, "ok")
        } else {
            writeln!(f, "{} violation(s):", self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  [{}] {} at {}", v.law, v.witness, v.location)?;
            }
            Ok(())
        }
    }
}
