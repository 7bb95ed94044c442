use std::collections::BTreeMap;
use std::path::Path;

use multbound_core::rational::format_decimal;
use multbound_core::Rational;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Everything printed on stdout for one command.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub args: BTreeMap<&'static str, Value>,
    pub inputs: Vec<InputDigest>,
    pub result: Value,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub decimal: BTreeMap<String, String>,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

pub struct ReportBuilder {
    report: RunReport,
    digits: Option<usize>,
}

impl ReportBuilder {
    pub fn new(command: &'static str, digits: Option<usize>) -> Self {
        ReportBuilder {
            report: RunReport {
                command,
                args: BTreeMap::new(),
                inputs: Vec::new(),
                result: Value::Null,
                decimal: BTreeMap::new(),
                version: format!("multbound {}", env!("CARGO_PKG_VERSION")),
                timing_ms: None,
            },
            digits,
        }
    }

    pub fn arg(&mut self, name: &'static str, value: impl Serialize) {
        self.report
            .args
            .insert(name, serde_json::to_value(value).expect("serializable"));
    }

    /// Reads a file and records its digest.
    pub fn read_input(&mut self, path: &Path) -> Result<String, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
        self.report.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(text.as_bytes())),
        });
        Ok(text)
    }

    /// Adds a decimal rendering of `value` under `key` when requested.
    pub fn decimal(&mut self, key: impl Into<String>, value: &Rational) {
        if let Some(k) = self.digits {
            self.report
                .decimal
                .insert(key.into(), format_decimal(value, k));
        }
    }

    pub fn finish(mut self, result: impl Serialize, timing_ms: Option<f64>) -> RunReport {
        self.report.result = serde_json::to_value(result).expect("serializable");
        self.report.timing_ms = timing_ms;
        self.report
    }
}

pub fn render(report: &RunReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("serializable");
    text.push('\n');
    text
}
