//! Run configuration: defaults, JSON config-file loading via the
//! PTSCARF_CONFIG environment variable, and validation. Command-line
//! flags override file values; the binary applies that precedence.

use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("alpha_re = {0} violates the model condition alpha_R > 1/2")]
    AlphaRealPart(f64),
    #[error("abel_k_min = {k_min} must be strictly below abel_k_max = {k_max}")]
    AbelRange { k_min: u32, k_max: u32 },
    #[error("tolerance fields must be positive; {name} = {value}")]
    Tolerance { name: &'static str, value: f64 },
    #[error("{name} must be at least {min}; got {got}")]
    TooSmall {
        name: &'static str,
        min: usize,
        got: usize,
    },
    #[error("cannot read config file {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse config file {path}: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub n_max: u32,
    pub quad_panels: usize,
    pub quad_order: usize,
    pub abel_k_min: u32,
    pub abel_k_max: u32,
    pub tol_orth: f64,
    pub tol_kernel: f64,
    pub tol_action: f64,
    pub tol_complete: f64,
    pub grid_points: usize,
    pub out_path: Option<PathBuf>,
    pub format: ReportFormat,
    pub parallel: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            alpha_re: 1.0,
            alpha_im: 0.5,
            n_max: 12,
            quad_panels: 8,
            quad_order: 32,
            abel_k_min: 4,
            abel_k_max: 12,
            tol_orth: 1e-8,
            tol_kernel: 1e-5,
            tol_action: 1e-3,
            tol_complete: 1e-3,
            grid_points: 15,
            out_path: None,
            format: ReportFormat::Json,
            parallel: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        // NaN must fail this gate too
        if self.alpha_re.is_nan() || self.alpha_re <= 0.5 {
            return Err(ConfigError::AlphaRealPart(self.alpha_re));
        }
        if self.abel_k_min >= self.abel_k_max {
            return Err(ConfigError::AbelRange {
                k_min: self.abel_k_min,
                k_max: self.abel_k_max,
            });
        }
        for (name, value) in [
            ("tol_orth", self.tol_orth),
            ("tol_kernel", self.tol_kernel),
            ("tol_action", self.tol_action),
            ("tol_complete", self.tol_complete),
        ] {
            if value.is_nan() || value <= 0.0 {
                return Err(ConfigError::Tolerance { name, value });
            }
        }
        if self.n_max < 1 {
            return Err(ConfigError::TooSmall {
                name: "n_max",
                min: 1,
                got: self.n_max as usize,
            });
        }
        if self.quad_panels < 1 || self.quad_order < 2 {
            return Err(ConfigError::TooSmall {
                name: "quad_panels/quad_order",
                min: 2,
                got: self.quad_order,
            });
        }
        if self.grid_points < 3 {
            return Err(ConfigError::TooSmall {
                name: "grid_points",
                min: 3,
                got: self.grid_points,
            });
        }
        Ok(())
    }

    pub fn load_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| ConfigError::Parse {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Configuration from PTSCARF_CONFIG when set, defaults otherwise.
    pub fn from_env() -> Result<Self, ConfigError> {
        match std::env::var_os("PTSCARF_CONFIG") {
            Some(path) => Self::load_file(Path::new(&path)),
            None => Ok(Self::default()),
        }
    }

    pub fn alpha(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.alpha_re, self.alpha_im)
    }

    pub fn model(&self) -> Result<crate::scarf::ModelParams, ConfigError> {
        self.validate()?;
        crate::scarf::ModelParams::new(self.alpha())
            .map_err(|_| ConfigError::AlphaRealPart(self.alpha_re))
    }

    pub fn schedule(&self) -> crate::ckernel::AbelSchedule {
        crate::ckernel::AbelSchedule::geometric(self.abel_k_min, self.abel_k_max, 2)
    }
}
