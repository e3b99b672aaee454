//! Machine-readable verification reports: the JSON document structure
//! (schema "ptscarf-report/1"), CSV emitters, and atomic file writes.
//!
//! Reports are deterministic: identical configurations produce
//! byte-identical JSON apart from the `timing` object, which carries the
//! only wall-clock data and is excluded from comparisons.

use crate::config::RunConfig;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const SCHEMA: &str = "ptscarf-report/1";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("output parent directory {0} does not exist")]
    MissingParent(PathBuf),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("serialization failed: {0}")]
    Serialize(#[from] serde_json::Error),
}

/// One verified identity: measured residual against its tolerance.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CheckRecord {
    pub id: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// informational checks report source ambiguities rather than
    /// implementation defects and do not gate the exit status
    pub informational: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRecord {
    pub fn hard(id: &str, residual: f64, tolerance: f64) -> Self {
        Self {
            id: id.to_string(),
            residual,
            tolerance,
            pass: residual < tolerance,
            informational: false,
            detail: None,
        }
    }

    pub fn informational(id: &str, residual: f64, tolerance: f64, detail: &str) -> Self {
        Self {
            id: id.to_string(),
            residual,
            tolerance,
            pass: residual < tolerance,
            informational: true,
            detail: Some(detail.to_string()),
        }
    }

    pub fn with_detail(mut self, detail: &str) -> Self {
        self.detail = Some(detail.to_string());
        self
    }
}

/// Serialized form-resolution outcome for the closed-form kernel.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TypoResolutionRecord {
    pub selected: Option<String>,
    pub survivor_count: usize,
    pub tolerance: f64,
    pub candidates: Vec<CandidateResidual>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CandidateResidual {
    pub label: String,
    pub max_rel_err: f64,
    pub survived: bool,
}

/// Calibration of the closed-form constant against the Abel oracle.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CalibrationRecord {
    pub factor_re: f64,
    pub factor_im: f64,
    pub deviation_from_one: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Default)]
pub struct Timing {
    pub total_ms: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VerificationReport {
    pub schema: String,
    pub suite: String,
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub typo_resolution: Option<TypoResolutionRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_constant_calibration: Option<CalibrationRecord>,
    pub passed: bool,
    pub timing: Timing,
}

impl VerificationReport {
    pub fn new(suite: &str, config: &RunConfig) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            suite: suite.to_string(),
            config: config.clone(),
            checks: Vec::new(),
            typo_resolution: None,
            kernel_constant_calibration: None,
            passed: true,
            timing: Timing::default(),
        }
    }

    pub fn push(&mut self, check: CheckRecord) {
        if !check.informational && !check.pass {
            self.passed = false;
        }
        self.checks.push(check);
    }

    pub fn merge(&mut self, other: VerificationReport) {
        for check in other.checks {
            self.push(check);
        }
        if other.typo_resolution.is_some() {
            self.typo_resolution = other.typo_resolution;
        }
        if other.kernel_constant_calibration.is_some() {
            self.kernel_constant_calibration = other.kernel_constant_calibration;
        }
    }

    pub fn to_json(&self) -> Result<String, ReportError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// JSON with the timing object removed; the determinism contract
    /// compares this form.
    pub fn to_json_without_timing(&self) -> Result<String, ReportError> {
        let mut value = serde_json::to_value(self)?;
        if let Some(obj) = value.as_object_mut() {
            obj.remove("timing");
        }
        Ok(serde_json::to_string_pretty(&value)?)
    }

    pub fn write_json(&self, path: &Path) -> Result<(), ReportError> {
        write_atomic(path, self.to_json()?.as_bytes())
    }
}

/// Write via a temporary file plus rename so failures leave no partial
/// output; requires the parent directory to exist.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), ReportError> {
    let parent = path.parent().unwrap_or_else(|| Path::new("."));
    if !parent.as_os_str().is_empty() && !parent.exists() {
        return Err(ReportError::MissingParent(parent.to_path_buf()));
    }
    let tmp = path.with_extension("tmp-write");
    let mut file = std::fs::File::create(&tmp).map_err(|source| ReportError::Io {
        path: tmp.clone(),
        source,
    })?;
    file.write_all(bytes).map_err(|source| ReportError::Io {
        path: tmp.clone(),
        source,
    })?;
    file.sync_all().ok();
    std::fs::rename(&tmp, path).map_err(|source| ReportError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Kernel-sample CSV row: numeric off the singular band, `excluded`
/// markers on it.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelSampleRow {
    Value {
        x: f64,
        y: f64,
        closed: num_complex::Complex64,
        abel: num_complex::Complex64,
        rel_err: f64,
    },
    Excluded {
        x: f64,
        y: f64,
    },
}

/// CSV per the kernel export interface: comma separators, header row, LF
/// endings, '.' decimals, >= 6 significant digits (10 are written).
pub fn kernel_samples_csv(rows: &[KernelSampleRow]) -> String {
    let mut out = String::from("x,y,re_closed,im_closed,re_abel,im_abel,rel_err\n");
    for row in rows {
        match row {
            KernelSampleRow::Value {
                x,
                y,
                closed,
                abel,
                rel_err,
            } => {
                out.push_str(&format!(
                    "{x:.9e},{y:.9e},{:.9e},{:.9e},{:.9e},{:.9e},{rel_err:.9e}\n",
                    closed.re, closed.im, abel.re, abel.im
                ));
            }
            KernelSampleRow::Excluded { x, y } => {
                out.push_str(&format!(
                    "{x:.9e},{y:.9e},excluded,excluded,excluded,excluded,excluded\n"
                ));
            }
        }
    }
    out
}

/// Convergence CSV: (probe, N, sup_error) rows.
pub fn convergence_csv(rows: &[(String, usize, f64)]) -> String {
    let mut out = String::from("probe,N,sup_error\n");
    for (probe, n, err) in rows {
        out.push_str(&format!("{probe},{n},{err:.9e}\n"));
    }
    out
}

/// Generic check CSV used by the per-suite exports.
pub fn checks_csv(checks: &[CheckRecord]) -> String {
    let mut out = String::from("id,residual,tolerance,pass,informational\n");
    for c in checks {
        out.push_str(&format!(
            "{},{:.9e},{:.9e},{},{}\n",
            c.id, c.residual, c.tolerance, c.pass, c.informational
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_pass_logic() {
        let cfg = RunConfig::default();
        let mut report = VerificationReport::new("demo", &cfg);
        report.push(CheckRecord::hard("ok", 1e-10, 1e-8));
        assert!(report.passed);
        report.push(CheckRecord::informational("info", 1.0, 1e-3, "expected"));
        assert!(report.passed, "informational failures do not gate");
        report.push(CheckRecord::hard("bad", 1.0, 1e-8));
        assert!(!report.passed);
    }

    #[test]
    fn timing_excluded_from_comparison_form() {
        let cfg = RunConfig::default();
        let mut a = VerificationReport::new("demo", &cfg);
        let mut b = VerificationReport::new("demo", &cfg);
        a.timing.total_ms = 10;
        b.timing.total_ms = 99999;
        assert_eq!(
            a.to_json_without_timing().unwrap(),
            b.to_json_without_timing().unwrap()
        );
        assert_ne!(a.to_json().unwrap(), b.to_json().unwrap());
    }

    #[test]
    fn csv_formats() {
        let rows = vec![
            KernelSampleRow::Value {
                x: 0.3,
                y: 0.7,
                closed: num_complex::Complex64::new(-0.1698381, -0.1164329),
                abel: num_complex::Complex64::new(-0.1698381, -0.1164329),
                rel_err: 1.2e-9,
            },
            KernelSampleRow::Excluded { x: 0.4, y: -0.4 },
        ];
        let csv = kernel_samples_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "x,y,re_closed,im_closed,re_abel,im_abel,rel_err"
        );
        assert!(lines.next().unwrap().starts_with("3.000000000e-1,"));
        assert!(lines.next().unwrap().ends_with("excluded"));
        assert!(csv.ends_with('\n'));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn atomic_write_requires_parent() {
        let missing = Path::new("/nonexistent-ptscarf-dir/report.json");
        assert!(matches!(
            write_atomic(missing, b"x"),
            Err(ReportError::MissingParent(_))
        ));
    }

    #[test]
    fn atomic_write_round_trip() {
        let dir = std::env::temp_dir().join("ptscarf-report-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("report.json");
        write_atomic(&path, b"{\"ok\":true}").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "{\"ok\":true}");
        std::fs::remove_dir_all(&dir).ok();
    }
}
