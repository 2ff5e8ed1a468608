//! JSON file formats: Φ families and verification reports.
//!
//! Complex entries are `[re, im]` pairs and every float is written with 17
//! significant digits, so files round-trip bit for bit.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::fock::ModeConfig;
use crate::linalg::CMatrix;
use crate::quasiboson::{PhiFamily, PhiMatrix};
use crate::report::{format_f64, Check, VerificationReport};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhiFile {
    pub d_a: usize,
    pub d_b: usize,
    pub matrices: Vec<Vec<Vec<[f64; 2]>>>,
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("matrix {index}: {detail}")]
    Shape { index: usize, detail: String },
    #[error("file holds no matrices")]
    Empty,
    #[error(transparent)]
    Model(#[from] Error),
}

impl PhiFile {
    pub fn from_family(family: &PhiFamily) -> Self {
        let cfg = family.mode_config();
        let matrices = family
            .members()
            .iter()
            .map(|phi| {
                let e = phi.entries();
                (0..cfg.d_a())
                    .map(|r| (0..cfg.d_b()).map(|c| [e[(r, c)].re, e[(r, c)].im]).collect())
                    .collect()
            })
            .collect();
        Self {
            d_a: cfg.d_a(),
            d_b: cfg.d_b(),
            matrices,
        }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let file: PhiFile = serde_json::from_str(text)?;
        file.validate()?;
        Ok(file)
    }

    fn validate(&self) -> Result<(), FormatError> {
        if self.matrices.is_empty() {
            return Err(FormatError::Empty);
        }
        for (index, m) in self.matrices.iter().enumerate() {
            if m.len() != self.d_a {
                return Err(FormatError::Shape {
                    index,
                    detail: format!("{} rows, expected d_a = {}", m.len(), self.d_a),
                });
            }
            if let Some((r, row)) = m.iter().enumerate().find(|(_, row)| row.len() != self.d_b) {
                return Err(FormatError::Shape {
                    index,
                    detail: format!("row {r} has {} entries, expected d_b = {}", row.len(), self.d_b),
                });
            }
        }
        Ok(())
    }

    pub fn to_family(&self) -> Result<PhiFamily, FormatError> {
        self.validate()?;
        let cfg = ModeConfig::new(self.d_a, self.d_b)?;
        let members = self
            .matrices
            .iter()
            .map(|m| {
                let entries = CMatrix::from_fn(self.d_a, self.d_b, |r, c| {
                    Complex64::new(m[r][c][0], m[r][c][1])
                });
                PhiMatrix::new(cfg, entries)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PhiFamily::new(members)?)
    }

    /// Deterministic text: one matrix row per line.
    pub fn to_json(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{{\n  \"d_a\": {},\n  \"d_b\": {},\n  \"matrices\": [", self.d_a, self.d_b);
        for (i, m) in self.matrices.iter().enumerate() {
            s.push_str("    [\n");
            for (r, row) in m.iter().enumerate() {
                let cells: Vec<String> = row
                    .iter()
                    .map(|[re, im]| format!("[{}, {}]", format_f64(*re), format_f64(*im)))
                    .collect();
                let sep = if r + 1 < m.len() { "," } else { "" };
                let _ = writeln!(s, "      [{}]{sep}", cells.join(", "));
            }
            let sep = if i + 1 < self.matrices.len() { "," } else { "" };
            let _ = writeln!(s, "    ]{sep}");
        }
        s.push_str("  ]\n}\n");
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub tool_version: String,
    pub seed: Option<u64>,
    pub timestamp: String,
}

impl ReportMetadata {
    /// Uses `SOURCE_DATE_EPOCH` when set so that reports can be reproduced.
    pub fn now(seed: Option<u64>) -> Self {
        let time = std::env::var("SOURCE_DATE_EPOCH")
            .ok()
            .and_then(|s| s.trim().parse::<i64>().ok())
            .and_then(|secs| chrono::DateTime::from_timestamp(secs, 0))
            .unwrap_or_else(chrono::Utc::now);
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            timestamp: time.to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub checks: Vec<Check>,
    pub overall_passed: bool,
    pub metadata: ReportMetadata,
}

impl ReportFile {
    pub fn new(report: VerificationReport, metadata: ReportMetadata) -> Self {
        Self {
            checks: report.checks,
            overall_passed: report.overall_passed,
            metadata,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn report(&self) -> VerificationReport {
        VerificationReport {
            checks: self.checks.clone(),
            overall_passed: self.overall_passed,
        }
    }
}
