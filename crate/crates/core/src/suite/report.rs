//! Check reports and their JSON / CSV serialization.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::{CheckConfig, CheckId};
use crate::error::{Error, Result};
use crate::random::{z_score, McEstimate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Provenance {
    /// A closed form stated in the source material.
    Paper,
    /// Holds by symmetry or by construction.
    Trivial,
    /// Computed by an independent route.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reference {
    pub value: f64,
    pub provenance: Provenance,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimate {
    Mc(McEstimate),
    Exact(f64),
}

impl Estimate {
    pub fn value(&self) -> f64 {
        match self {
            Estimate::Mc(e) => e.mean,
            Estimate::Exact(v) => *v,
        }
    }

    pub fn stderr(&self) -> Option<f64> {
        match self {
            Estimate::Mc(e) => Some(e.stderr),
            Estimate::Exact(_) => None,
        }
    }
}

/// One compared quantity within a check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Detail {
    pub label: String,
    pub estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stderr: Option<f64>,
    pub reference: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    pub pass: bool,
}

impl Detail {
    /// Monte Carlo estimate against a fixed value.
    pub fn mc(label: impl Into<String>, est: &McEstimate, reference: f64, z_max: f64) -> Self {
        let z = est.z_score(reference);
        Detail {
            label: label.into(),
            estimate: est.mean,
            stderr: Some(est.stderr),
            reference,
            z: Some(z),
            residual: None,
            pass: z.abs() <= z_max,
        }
    }

    /// Difference of two estimates with the given standard error of the
    /// difference.
    pub fn mc_diff(label: impl Into<String>, a: f64, b: f64, stderr: f64, z_max: f64) -> Self {
        let z = z_score(a - b, stderr);
        Detail {
            label: label.into(),
            estimate: a,
            stderr: Some(stderr),
            reference: b,
            z: Some(z),
            residual: None,
            pass: z.abs() <= z_max,
        }
    }

    /// Two independent estimates.
    pub fn mc_pair(label: impl Into<String>, a: &McEstimate, b: &McEstimate, z_max: f64) -> Self {
        Self::mc_diff(label, a.mean, b.mean, a.stderr.hypot(b.stderr), z_max)
    }

    /// One-sided: passes unless `a` exceeds `b` by more than `z_max`
    /// standard errors of the difference. Only the excess is reported as z.
    pub fn mc_at_most(label: impl Into<String>, a: f64, b: f64, stderr: f64, z_max: f64) -> Self {
        let z = z_score(a - b, stderr).max(0.0);
        Detail {
            label: label.into(),
            estimate: a,
            stderr: Some(stderr),
            reference: b,
            z: Some(z),
            residual: None,
            pass: z <= z_max,
        }
    }

    /// One-sided: passes when `a` is below `b` by more than `z_max`
    /// standard errors of the difference. No z is reported, since the
    /// required separation is the point of the comparison.
    pub fn mc_below(label: impl Into<String>, a: f64, b: f64, stderr: f64, z_max: f64) -> Self {
        Detail {
            label: label.into(),
            estimate: a,
            stderr: Some(stderr),
            reference: b,
            z: None,
            residual: None,
            pass: z_score(a - b, stderr) < -z_max,
        }
    }

    /// Deterministic value against a reference, relative residual
    /// `|v − r| / |r|` (absolute when `r = 0`).
    pub fn exact(label: impl Into<String>, value: f64, reference: f64, tol: f64) -> Self {
        let residual = rel_residual(value, reference);
        Detail {
            label: label.into(),
            estimate: value,
            stderr: None,
            reference,
            z: None,
            residual: Some(residual),
            pass: residual <= tol,
        }
    }
}

pub fn rel_residual(value: f64, reference: f64) -> f64 {
    let diff = (value - reference).abs();
    let r = if reference == 0.0 { diff } else { diff / reference.abs() };
    if r.is_nan() {
        f64::INFINITY
    } else {
        r
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: CheckId,
    pub config: CheckConfig,
    pub estimate: Estimate,
    pub reference: Reference,
    /// Largest-magnitude z over the Monte Carlo comparisons.
    pub z_score: Option<f64>,
    /// Largest relative residual over the exact comparisons.
    pub residual: Option<f64>,
    pub pass: bool,
    pub details: Vec<Detail>,
    /// Reported, not asserted.
    pub notes: Vec<String>,
    #[serde(skip)]
    pub runtime_ms: u64,
}

impl CheckReport {
    /// Assemble a report; the first detail is the headline comparison.
    pub fn from_details(
        id: CheckId,
        config: CheckConfig,
        headline: Estimate,
        reference: Reference,
        details: Vec<Detail>,
        notes: Vec<String>,
    ) -> Self {
        let z_score = details.iter().filter_map(|d| d.z).fold(None, |acc: Option<f64>, z| match acc {
            Some(a) if a.abs() >= z.abs() => Some(a),
            _ => Some(z),
        });
        let residual = details.iter().filter_map(|d| d.residual).fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |a| a.max(r))));
        let pass = !details.is_empty() && details.iter().all(|d| d.pass);
        CheckReport { check_id: id, config, estimate: headline, reference, z_score, residual, pass, details, notes, runtime_ms: 0 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            o => Err(Error::Config(format!("unknown format `{o}` (expected json or csv)"))),
        }
    }
}

/// Run header: enough to re-run any line of the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportHeader {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub config: serde_json::Value,
}

impl ReportHeader {
    pub fn new(command: impl Into<String>, seed: u64, config: serde_json::Value) -> Self {
        ReportHeader {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.into(),
            seed,
            config,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckError {
    pub index: usize,
    pub check_id: String,
    pub error: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errored: usize,
}

/// Wall-clock figures kept apart so the rest of the document is
/// byte-reproducible.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trailer {
    pub runtime_ms: u64,
    pub check_runtime_ms: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub header: ReportHeader,
    pub reports: Vec<CheckReport>,
    pub errors: Vec<CheckError>,
    pub summary: Summary,
    pub trailer: Trailer,
}

impl ReportDocument {
    pub fn new(header: ReportHeader, reports: Vec<CheckReport>, errors: Vec<CheckError>, runtime_ms: u64) -> Self {
        let passed = reports.iter().filter(|r| r.pass).count();
        let summary = Summary { total: reports.len() + errors.len(), passed, failed: reports.len() - passed, errored: errors.len() };
        let check_runtime_ms = reports.iter().map(|r| r.runtime_ms).collect();
        ReportDocument { header, reports, errors, summary, trailer: Trailer { runtime_ms, check_runtime_ms } }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.errored == 0 && self.summary.failed == 0 && self.summary.total > 0
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    check_id: &'a str,
    field: &'a str,
    n: Option<usize>,
    k: usize,
    kp: Option<usize>,
    lambda: Option<f64>,
    mu: Option<f64>,
    nu: Option<f64>,
    eps: Option<f64>,
    eps2: Option<f64>,
    t: Option<f64>,
    m: Option<usize>,
    zeta: Option<f64>,
    samples: u64,
    seed: u64,
    estimate: f64,
    stderr: Option<f64>,
    reference: f64,
    provenance: Provenance,
    z_score: Option<f64>,
    residual: Option<f64>,
    pass: bool,
}

/// Serialize a document. JSON keeps the struct field order; CSV has one
/// row per report with the configuration flattened into columns.
pub fn render_report(doc: &ReportDocument, format: ReportFormat) -> Result<Vec<u8>> {
    if doc.reports.is_empty() && doc.errors.is_empty() {
        return Err(Error::Config("nothing to report".into()));
    }
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(doc).map_err(|e| Error::Serde(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &doc.reports {
                let c = &r.config;
                w.serialize(CsvRow {
                    check_id: r.check_id.as_str(),
                    field: c.field.symbol(),
                    n: c.n,
                    k: c.k,
                    kp: c.kp,
                    lambda: c.lambda,
                    mu: c.mu,
                    nu: c.nu,
                    eps: c.eps,
                    eps2: c.eps2,
                    t: c.t,
                    m: c.m,
                    zeta: c.zeta,
                    samples: c.samples,
                    seed: c.seed,
                    estimate: r.estimate.value(),
                    stderr: r.estimate.stderr(),
                    reference: r.reference.value,
                    provenance: r.reference.provenance,
                    z_score: r.z_score,
                    residual: r.residual,
                    pass: r.pass,
                })
                .map_err(|e| Error::Serde(e.to_string()))?;
            }
            w.into_inner().map_err(|e| Error::Serde(e.to_string()))
        }
    }
}

/// Write a document to `path`, or to stdout when `path` is `None`.
pub fn emit_report(doc: &ReportDocument, format: ReportFormat, path: Option<&Path>) -> Result<()> {
    let bytes = render_report(doc, format)?;
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}
