//! Machine-readable verification reports.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// One verified identity instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    /// Stable identifier of the identity being checked; `--only` filters on it.
    pub family: String,
    pub params: BTreeMap<String, Value>,
    /// `None` when the check could not be evaluated; see `message`.
    pub residual: Option<f64>,
    pub tol: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl CheckResult {
    /// A check that passes iff `residual < tol`.
    pub fn measured(family: &str, name: String, params: BTreeMap<String, Value>, residual: f64, tol: f64) -> Self {
        Self {
            name,
            family: family.to_string(),
            params,
            residual: Some(residual),
            tol,
            pass: residual < tol,
            message: None,
        }
    }

    /// A check that failed to produce a residual.
    pub fn errored(family: &str, name: String, params: BTreeMap<String, Value>, tol: f64, err: &Error) -> Self {
        let residual = match err {
            Error::Conditioning { amplification, .. } => Some(*amplification),
            _ => None,
        };
        Self {
            name,
            family: family.to_string(),
            params,
            residual,
            tol,
            pass: false,
            message: Some(err.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub config: Value,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(Error::Config(format!(
                "unknown report format {other:?}, expected json or csv"
            ))),
        }
    }
}

impl VerificationReport {
    pub fn new(config: Value, checks: Vec<CheckResult>) -> Self {
        let pass = checks.iter().filter(|c| c.pass).count();
        let summary = Summary {
            pass,
            fail: checks.len() - pass,
        };
        Self {
            config,
            checks,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Config(format!("cannot serialize report: {e}")))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let report: Self = serde_json::from_str(s).map_err(|e| Error::Config(format!("malformed report: {e}")))?;
        let recount = Self::new(report.config.clone(), report.checks.clone());
        if recount.summary != report.summary {
            return Err(Error::Config("report summary does not match its checks".into()));
        }
        Ok(report)
    }

    /// One row per check: name, family, params (compact JSON), residual, tol,
    /// pass, message. An unevaluated residual is an empty field.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let io = |e: csv::Error| Error::Config(format!("cannot write CSV: {e}"));
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["name", "family", "params", "residual", "tol", "pass", "message"])
            .map_err(io)?;
        for c in &self.checks {
            let params = serde_json::to_string(&c.params).map_err(|e| Error::Config(e.to_string()))?;
            w.write_record([
                c.name.as_str(),
                c.family.as_str(),
                params.as_str(),
                &c.residual.map(|r| format!("{r:e}")).unwrap_or_default(),
                &format!("{:e}", c.tol),
                if c.pass { "true" } else { "false" },
                c.message.as_deref().unwrap_or(""),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| Error::Config(format!("cannot write CSV: {e}")))?;
        Ok(())
    }

    pub fn render(&self, format: ReportFormat) -> Result<String> {
        match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Csv => {
                let mut buf = Vec::new();
                self.write_csv(&mut buf)?;
                String::from_utf8(buf).map_err(|e| Error::Config(e.to_string()))
            }
        }
    }
}
