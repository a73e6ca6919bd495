//! Machine-readable run reports and atomic file output.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context as _, Result};
use serde::Serialize;

/// One verified relation; `passed` follows the stated comparison
/// (absolute difference or inequality, per the check's name).
#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    /// |lhs − rhs| ≤ tolerance.
    pub fn close(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            lhs,
            rhs,
            tolerance,
            passed: (lhs - rhs).abs() <= tolerance,
        }
    }

    /// lhs ≥ rhs − tolerance.
    pub fn at_least(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            lhs,
            rhs,
            tolerance,
            passed: lhs >= rhs - tolerance,
        }
    }

    /// lhs ≤ rhs + tolerance.
    pub fn at_most(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            lhs,
            rhs,
            tolerance,
            passed: lhs <= rhs + tolerance,
        }
    }
}

/// Report printed (as JSON, floats at 17 significant digits) by every
/// command except `distance`, which has its own wire shape.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<String>,
    pub outputs: BTreeMap<String, serde_json::Value>,
    pub checks: Vec<Check>,
    pub seed: u64,
}

impl RunReport {
    pub fn new(command: &str, inputs: Vec<String>, seed: u64) -> Self {
        Self {
            command: command.to_string(),
            inputs,
            outputs: BTreeMap::new(),
            checks: Vec::new(),
            seed,
        }
    }

    pub fn scalar(&mut self, name: &str, value: f64) {
        self.outputs
            .insert(name.to_string(), serde_json::Value::from(value));
    }

    pub fn path(&mut self, name: &str, value: &Path) {
        self.outputs.insert(
            name.to_string(),
            serde_json::Value::from(value.display().to_string()),
        );
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Human-readable check table on stderr; JSON stays clean on stdout.
    pub fn print_table(&self) {
        if self.checks.is_empty() {
            return;
        }
        eprintln!(
            "{:<52} {:>14} {:>14} {:>9} {:>6}",
            "check", "lhs", "rhs", "tol", "pass"
        );
        for c in &self.checks {
            eprintln!(
                "{:<52} {:>14.6e} {:>14.6e} {:>9.1e} {:>6}",
                c.name,
                c.lhs,
                c.rhs,
                c.tolerance,
                if c.passed { "yes" } else { "NO" }
            );
        }
    }
}

/// Writes via a temporary file and an atomic rename, so failed commands
/// never leave partial outputs behind.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir)
        .with_context(|| format!("creating output directory {}", dir.display()))?;
    let tmp: PathBuf = dir.join(format!(
        ".{}.tmp-{}",
        path.file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| "out".into()),
        std::process::id()
    ));
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}
