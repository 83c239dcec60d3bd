//! Numerical identity suite: every check compares an estimate with an
//! independently obtained reference and reports a z-score or residual.

mod checks;
pub mod config;
pub mod manifest;
pub mod report;

use std::time::Instant;

use rayon::prelude::*;

pub use config::{resolve, CheckConfig, CheckId, CheckSpec};
pub use manifest::{default_manifest, Manifest, ManifestEntry};
pub use report::{CheckError, CheckReport, ReportDocument, ReportFormat, ReportHeader};

use crate::error::{Error, Result};

/// Resolve, run and time one check. `shards` overrides the Monte Carlo
/// thread split; results do not depend on it.
pub fn run_check_sharded(id: CheckId, spec: &CheckSpec, shards: Option<usize>) -> Result<CheckReport> {
    let mut cfg = resolve(id, spec)?;
    cfg.shards = shards;
    let start = Instant::now();
    let mut report = checks::run(id, cfg)?;
    report.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

pub fn run_check(id: CheckId, spec: &CheckSpec) -> Result<CheckReport> {
    run_check_sharded(id, spec, None)
}

/// Run every entry, in parallel, keeping manifest order. A failing
/// configuration becomes a `CheckError` and does not stop the others.
pub fn run_suite(manifest: &Manifest, shards: Option<usize>) -> Result<(Vec<CheckReport>, Vec<CheckError>)> {
    if manifest.is_empty() {
        return Err(Error::Config("manifest has no checks".into()));
    }
    let results: Vec<Result<CheckReport>> =
        manifest.entries.par_iter().map(|e| run_check_sharded(e.id, &e.spec, shards)).collect();
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for (index, (entry, r)) in manifest.entries.iter().zip(results).enumerate() {
        match r {
            Ok(rep) => reports.push(rep),
            Err(e) => errors.push(CheckError { index, check_id: entry.id.to_string(), error: e.to_string() }),
        }
    }
    Ok((reports, errors))
}
