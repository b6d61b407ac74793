//! CSV tables and run manifests.
//!
//! Floats are written in Rust's shortest round-trip form (`{:?}`), so a value
//! parses back to the identical bits and reruns diff cleanly. Singular
//! points are written as `NaN`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

/// One CSV file: a header row and numeric rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    /// Leading coordinate columns; the rest are values.
    pub axes: usize,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(name: &str, axes: usize, columns: &[&str]) -> Self {
        Self { name: name.to_string(), axes, columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write!(out, "{v:?}").expect("write to string");
            }
            out.push('\n');
        }
        out
    }

    /// `NaN` entries.
    pub fn singular_count(&self) -> usize {
        self.rows.iter().flatten().filter(|v| v.is_nan()).count()
    }

    /// True when the table has rows and every value entry is singular.
    pub fn all_singular(&self) -> bool {
        !self.rows.is_empty() && self.rows.iter().all(|r| r[self.axes..].iter().all(|v| v.is_nan()))
    }

    /// Min and max of a column, skipping `NaN`.
    pub fn column_range(&self, col: usize) -> Option<(f64, f64)> {
        let mut it = self.rows.iter().map(|r| r[col]).filter(|v| !v.is_nan());
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v))))
    }
}

/// Truncation bookkeeping for a run.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Convergence {
    /// Every converged truncation dimension that was used.
    pub dims: BTreeSet<usize>,
    pub max_trace_deficit: f64,
    pub max_last_change: f64,
    /// Largest closed-form versus matrix difference of the spot checks.
    pub oracle_max_error: f64,
    pub oracle_checks: usize,
}

impl Convergence {
    pub fn record<V>(&mut self, c: &mesoq::fockbench::Converged<V>) {
        self.dims.insert(c.dim);
        self.max_trace_deficit = self.max_trace_deficit.max(c.trace_deficit.abs());
        self.max_last_change = self.max_last_change.max(c.last_change);
    }

    pub fn oracle(&mut self, err: f64) {
        self.oracle_max_error = self.oracle_max_error.max(err);
        self.oracle_checks += 1;
    }

    pub fn merge(&mut self, o: &Convergence) {
        self.dims.extend(o.dims.iter().copied());
        self.max_trace_deficit = self.max_trace_deficit.max(o.max_trace_deficit);
        self.max_last_change = self.max_last_change.max(o.max_last_change);
        self.oracle_max_error = self.oracle_max_error.max(o.oracle_max_error);
        self.oracle_checks += o.oracle_checks;
    }
}

/// What an experiment produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub tables: Vec<Table>,
    pub convergence: Convergence,
    /// Experiment-specific summary values echoed into the manifest.
    pub summary: serde_json::Map<String, serde_json::Value>,
}

impl Outcome {
    pub fn new(tables: Vec<Table>) -> Self {
        Self { tables, convergence: Convergence::default(), summary: Default::default() }
    }

    pub fn note(&mut self, key: &str, value: impl Serialize) {
        self.summary.insert(key.to_string(), serde_json::to_value(value).expect("serializable summary"));
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FileEntry {
    pub file: String,
    pub rows: usize,
    pub columns: Vec<String>,
    pub singular_points: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PolicyEcho {
    pub initial_dim: Option<usize>,
    pub growth: usize,
    pub tolerance: f64,
    pub cap: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub experiment: String,
    pub library_version: String,
    pub config: crate::config::RunConfig,
    pub truncation_policy: PolicyEcho,
    pub outputs: Vec<FileEntry>,
    pub convergence: Convergence,
    pub summary: serde_json::Map<String, serde_json::Value>,
}
