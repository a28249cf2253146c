//! Configuration file support and flag/file resolution.
//!
//! A config file is a JSON document whose keys mirror the command-line
//! flags (`lambda_range` for `--lambda-range`, and so on).  Flags always
//! override file values; required parameters may come from either source.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{CliError, CliResult};

/// Data file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// One CSV per table plus a JSON metadata sidecar.
    Csv,
    /// A single JSON document holding metadata and data together.
    Json,
}

impl Format {
    /// Lower-case name as it appears on the command line.
    pub fn label(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Optional values loadable from a JSON config file; unknown keys are
/// rejected so typos fail loudly instead of silently using defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub n: Option<usize>,
    pub lambda: Option<f64>,
    pub lambda_range: Option<String>,
    pub temp_range: Option<String>,
    pub nx: Option<usize>,
    pub np: Option<usize>,
    pub pmax: Option<f64>,
    pub gamma: Option<f64>,
    pub omega_r: Option<f64>,
    pub mass: Option<f64>,
    pub asc: Option<f64>,
    pub omega_perp: Option<f64>,
    pub threshold: Option<f64>,
    pub format: Option<Format>,
    pub precision: Option<usize>,
    pub out: Option<PathBuf>,
}

/// Reads and parses a JSON config file.
pub fn load(path: &Path) -> CliResult<FileConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Invalid(format!("invalid config {}: {e}", path.display())))
}

/// Unwraps a parameter that must be supplied by flag or config file.
pub fn require<T>(flag: &str, value: Option<T>) -> CliResult<T> {
    value.ok_or_else(|| {
        let key = flag.replace('-', "_");
        CliError::Invalid(format!("missing --{flag} (or \"{key}\" in the config file)"))
    })
}

/// Expands an inclusive "a:b:step" range into its grid points a, a+step, …
pub fn parse_range(text: &str) -> CliResult<Vec<f64>> {
    let invalid = || CliError::Invalid(format!("invalid range \"{text}\": expected a:b:step with finite a <= b and step > 0"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(invalid());
    }
    let a: f64 = parts[0].parse().map_err(|_| invalid())?;
    let b: f64 = parts[1].parse().map_err(|_| invalid())?;
    let step: f64 = parts[2].parse().map_err(|_| invalid())?;
    if !a.is_finite() || !b.is_finite() || !step.is_finite() || b < a || step <= 0.0 {
        return Err(invalid());
    }
    // A hair of slack so 0:2:0.05 lands exactly on 2 despite rounding.
    let count = ((b - a) / step + 1e-9).floor() as usize;
    if count > 1_000_000 {
        return Err(CliError::Invalid(format!(
            "range \"{text}\" expands to {count} points; refusing more than 1000000"
        )));
    }
    Ok((0..=count).map(|i| a + i as f64 * step).collect())
}
