use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    /// Informational record that gates nothing.
    Info,
    /// The check could not run (resource limit, invalid input).
    Error,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Info => "INFO",
            Verdict::Error => "ERROR",
        })
    }
}

/// Outcome of one check over one sector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorReport {
    pub check: String,
    pub sector: String,
    pub verdict: Verdict,
    /// Number of individual identities or items evaluated.
    pub cases: u64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl SectorReport {
    pub fn new(check: impl Into<String>, sector: impl Into<String>) -> SectorReport {
        SectorReport {
            check: check.into(),
            sector: sector.into(),
            verdict: Verdict::Pass,
            cases: 0,
            details: BTreeMap::new(),
            counterexample: None,
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self.verdict, Verdict::Pass | Verdict::Info)
    }

    pub fn detail(mut self, key: &str, value: impl Serialize) -> SectorReport {
        self.details.insert(key.to_string(), serde_json::to_value(value).expect("serializable detail"));
        self
    }

    pub fn set_detail(&mut self, key: &str, value: impl Serialize) {
        self.details.insert(key.to_string(), serde_json::to_value(value).expect("serializable detail"));
    }

    /// Marks failure, keeping the first counterexample.
    pub fn fail(&mut self, counterexample: impl Into<String>) {
        self.verdict = Verdict::Fail;
        if self.counterexample.is_none() {
            self.counterexample = Some(counterexample.into());
        }
    }

    pub fn error(check: impl Into<String>, sector: impl Into<String>, err: &crate::Error) -> SectorReport {
        let mut r = SectorReport::new(check, sector);
        r.verdict = Verdict::Error;
        r.counterexample = Some(err.to_string());
        r
    }
}

impl fmt::Display for SectorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<5} {} [{}] cases={}", self.verdict, self.check, self.sector, self.cases)?;
        if let Some(c) = &self.counterexample {
            write!(f, " counterexample: {c}")?;
        }
        Ok(())
    }
}
