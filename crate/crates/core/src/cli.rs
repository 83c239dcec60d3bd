//! Command-line front end. `run` takes the argument vector and returns the
//! process exit code: 0 on pass, 1 on a failed check, 2 on usage or
//! configuration errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use serde::Serialize;

use crate::cone::{beta_cone, gamma_cone, ln_gamma_cone};
use crate::error::{Error, Result};
use crate::radon::operators::radon;
use crate::radon::profile::chebyshev_grid;
use crate::radon::roundtrip::test_matrix;
use crate::radon::{
    phi_profile, round_trip_k1, InversionOptions, InvariantFunction, ProfileOptions, Radon, RoundTripConfig, TestFunction,
};
use crate::random::rng::resolve_seed;
use crate::random::{derive_seed, sample_haar_stiefel, McConfig, McRng};
use crate::suite::config::{CheckId, CheckSpec, DEFAULT_Z_THRESHOLD};
use crate::suite::manifest::{default_manifest, Manifest};
use crate::suite::report::{emit_report, ReportDocument, ReportFormat, ReportHeader};
use crate::suite::{resolve, run_check_sharded, run_suite};
use crate::{FieldTag, HermMatrix, Scalar};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const BIN: &str = "grassmann-radon";

#[derive(Parser, Debug, Clone, PartialEq)]
#[command(name = "grassmann-radon", version, about = "Radon transform on Grassmannians: identity checks, operators and inversion")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

// Parsed once per process, so the variant size gap does not matter.
#[allow(clippy::large_enum_variant)]
#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Run one identity check.
    Check {
        /// Check id (see `list-checks`).
        id: String,
        #[command(flatten)]
        params: CheckParams,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Run a manifest of checks (the bundled default when none is given).
    Suite {
        /// Manifest TOML file with one `[[check]]` table per entry.
        manifest: Option<PathBuf>,
        /// Sample count for entries that do not set one.
        #[arg(long)]
        samples: Option<u64>,
        /// z-threshold for entries that do not set one.
        #[arg(long)]
        z: Option<f64>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Evaluate the Radon transform of tr(A P) at a seeded frame.
    RadonEval {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_Z_THRESHOLD)]
        z: f64,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Sample the profile Phi(s) on a Chebyshev grid of scalar points s I.
    Profile {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, default_value_t = 50_000)]
        samples: u64,
        #[arg(long = "grid", default_value_t = 12)]
        grid: usize,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Rank-one inversion round trip at random points.
    InvertK1 {
        #[arg(long, default_value = "R")]
        field: FieldTag,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long = "kprime", default_value_t = 2)]
        kprime: usize,
        #[arg(long, default_value_t = 200_000)]
        samples: u64,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long = "grid", default_value_t = 24)]
        grid: usize,
        #[arg(long = "fit-degree", default_value_t = 12)]
        fit_degree: usize,
        #[arg(long)]
        m: Option<usize>,
        /// Pass threshold on the relative L2 error.
        #[arg(long, default_value_t = 0.05)]
        tol: f64,
        /// Test function: `trace` for tr(A P) or `constant` for 1.
        #[arg(long, default_value = "trace")]
        function: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Gindikin Gamma (and Beta, with --mu) of the cone.
    Gamma {
        #[arg(long, default_value = "R")]
        field: FieldTag,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        mu: Option<f64>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// List the check ids.
    ListChecks,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct Dims {
    #[arg(long, default_value = "R")]
    pub field: FieldTag,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long = "kprime", default_value_t = 2)]
    pub kprime: usize,
}

/// Per-check overrides; unset values take the check's defaults.
#[derive(Args, Debug, Clone, Default, PartialEq)]
pub struct CheckParams {
    /// Field: R, C or H.
    #[arg(long)]
    pub field: Option<FieldTag>,
    /// Ambient dimension.
    #[arg(long)]
    pub n: Option<usize>,
    /// Subspace rank k (cone rank for cone checks).
    #[arg(long)]
    pub k: Option<usize>,
    /// Larger subspace rank k'.
    #[arg(long = "kprime")]
    pub kprime: Option<usize>,
    /// Gamma, Beta or fractional order.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Second Beta or fractional order.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Delta power for the Monte Carlo semigroup part.
    #[arg(long)]
    pub nu: Option<f64>,
    /// Fractional shift eps.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Second eps for the C3 consistency comparison.
    #[arg(long)]
    pub eps2: Option<f64>,
    /// Scalar point t I.
    #[arg(long)]
    pub t: Option<f64>,
    /// Capelli order, or the number of inversion derivatives (default: smallest integer above d(k' - k)/2).
    #[arg(long)]
    pub m: Option<usize>,
    /// Exponent of the c^(2k zeta) factor in the limit check.
    #[arg(long)]
    pub zeta: Option<f64>,
    /// Number of levels c_j = 1 - 2^-j.
    #[arg(long)]
    pub levels: Option<usize>,
    /// Monte Carlo samples.
    #[arg(long)]
    pub samples: Option<u64>,
    /// Pass threshold on |z|.
    #[arg(long)]
    pub z: Option<f64>,
    /// Tolerance on residuals of exact comparisons.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Evaluation points of the inversion round trip.
    #[arg(long)]
    pub points: Option<usize>,
    /// Profile grid size.
    #[arg(long = "grid")]
    pub grid: Option<usize>,
    /// Degree of the profile fit.
    #[arg(long = "fit-degree")]
    pub fit_degree: Option<usize>,
}

impl CheckParams {
    fn to_spec(&self, seed: u64) -> CheckSpec {
        CheckSpec {
            field: self.field,
            n: self.n,
            k: self.k,
            kp: self.kprime,
            lambda: self.lambda,
            mu: self.mu,
            nu: self.nu,
            eps: self.eps,
            eps2: self.eps2,
            t: self.t,
            m: self.m,
            zeta: self.zeta,
            levels: self.levels,
            samples: self.samples,
            seed: Some(seed),
            z_threshold: self.z,
            tol: self.tol,
            points: self.points,
            grid_size: self.grid,
            fit_degree: self.fit_degree,
        }
    }
}

#[derive(Args, Debug, Clone, Default, PartialEq)]
pub struct OutputOpts {
    /// Seed, decimal or 0x-prefixed hex; defaults to $GRASSMANN_RADON_SEED, then 42.
    #[arg(long)]
    pub seed: Option<String>,
    /// Monte Carlo shards (default: available parallelism); results do not depend on it.
    #[arg(long)]
    pub shards: Option<usize>,
    /// Output file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// json or csv.
    #[arg(long, default_value = "json")]
    pub format: ReportFormat,
}

fn push<T: ToString>(args: &mut Vec<String>, flag: &str, v: Option<T>) {
    if let Some(v) = v {
        args.push(format!("--{flag}"));
        args.push(v.to_string());
    }
}

fn push_path(args: &mut Vec<String>, flag: &str, p: &Option<PathBuf>) {
    push(args, flag, p.as_ref().map(|p| p.display().to_string()));
}

impl OutputOpts {
    fn canonical(&self, seed: u64, args: &mut Vec<String>) {
        push(args, "seed", Some(seed));
        push(args, "shards", self.shards);
        push_path(args, "out", &self.out);
        push(args, "format", Some(format_name(self.format)));
    }
}

fn format_name(f: ReportFormat) -> &'static str {
    match f {
        ReportFormat::Json => "json",
        ReportFormat::Csv => "csv",
    }
}

impl Dims {
    fn canonical(&self, args: &mut Vec<String>) {
        push(args, "field", Some(self.field.symbol()));
        push(args, "n", Some(self.n));
        push(args, "k", Some(self.k));
        push(args, "kprime", Some(self.kprime));
    }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Suite { .. } => "suite",
            Command::RadonEval { .. } => "radon-eval",
            Command::Profile { .. } => "profile",
            Command::InvertK1 { .. } => "invert-k1",
            Command::Gamma { .. } => "gamma",
            Command::ListChecks => "list-checks",
        }
    }

    /// Explicit arguments that reproduce this run, with the seed resolved.
    pub fn canonical_args(&self, seed: u64) -> Vec<String> {
        let mut a = vec![self.name().to_string()];
        match self {
            Command::Check { id, params: p, out } => {
                a.push(id.clone());
                push(&mut a, "field", p.field.map(FieldTag::symbol));
                push(&mut a, "n", p.n);
                push(&mut a, "k", p.k);
                push(&mut a, "kprime", p.kprime);
                push(&mut a, "lambda", p.lambda);
                push(&mut a, "mu", p.mu);
                push(&mut a, "nu", p.nu);
                push(&mut a, "eps", p.eps);
                push(&mut a, "eps2", p.eps2);
                push(&mut a, "t", p.t);
                push(&mut a, "m", p.m);
                push(&mut a, "zeta", p.zeta);
                push(&mut a, "levels", p.levels);
                push(&mut a, "samples", p.samples);
                push(&mut a, "z", p.z);
                push(&mut a, "tol", p.tol);
                push(&mut a, "points", p.points);
                push(&mut a, "grid", p.grid);
                push(&mut a, "fit-degree", p.fit_degree);
                out.canonical(seed, &mut a);
            }
            Command::Suite { manifest, samples, z, out } => {
                if let Some(m) = manifest {
                    a.push(m.display().to_string());
                }
                push(&mut a, "samples", *samples);
                push(&mut a, "z", *z);
                out.canonical(seed, &mut a);
            }
            Command::RadonEval { dims, samples, z, out } => {
                dims.canonical(&mut a);
                push(&mut a, "samples", Some(samples));
                push(&mut a, "z", Some(z));
                out.canonical(seed, &mut a);
            }
            Command::Profile { dims, samples, grid, out } => {
                dims.canonical(&mut a);
                push(&mut a, "samples", Some(samples));
                push(&mut a, "grid", Some(grid));
                out.canonical(seed, &mut a);
            }
            Command::InvertK1 { field, n, kprime, samples, points, grid, fit_degree, m, tol, function, out } => {
                push(&mut a, "field", Some(field.symbol()));
                push(&mut a, "n", Some(n));
                push(&mut a, "kprime", Some(kprime));
                push(&mut a, "samples", Some(samples));
                push(&mut a, "points", Some(points));
                push(&mut a, "grid", Some(grid));
                push(&mut a, "fit-degree", Some(fit_degree));
                push(&mut a, "m", *m);
                push(&mut a, "tol", Some(tol));
                push(&mut a, "function", Some(function));
                out.canonical(seed, &mut a);
            }
            Command::Gamma { field, k, lambda, mu, out } => {
                push(&mut a, "field", Some(field.symbol()));
                push(&mut a, "k", Some(k));
                push(&mut a, "lambda", Some(lambda));
                push(&mut a, "mu", *mu);
                out.canonical(seed, &mut a);
            }
            Command::ListChecks => {}
        }
        a
    }

    fn output(&self) -> Option<&OutputOpts> {
        match self {
            Command::Check { out, .. }
            | Command::Suite { out, .. }
            | Command::RadonEval { out, .. }
            | Command::Profile { out, .. }
            | Command::InvertK1 { out, .. }
            | Command::Gamma { out, .. } => Some(out),
            Command::ListChecks => None,
        }
    }
}

/// Parse, run, and map the outcome to an exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match execute(&cli.command) {
        Ok(passed) => {
            if passed {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            eprintln!("{BIN}: {e}");
            EXIT_USAGE
        }
    }
}

/// Run a parsed command; `Ok(false)` means it ran and a check failed.
pub fn execute(cmd: &Command) -> Result<bool> {
    let seed = match cmd.output() {
        Some(o) => resolve_seed(o.seed.as_deref())?,
        None => 0,
    };
    let command_line = format!("{BIN} {}", cmd.canonical_args(seed).join(" "));
    let start = Instant::now();
    match cmd {
        Command::ListChecks => {
            let mut out = std::io::stdout().lock();
            for id in CheckId::ALL {
                writeln!(out, "{:<16} {}", id.as_str(), id.summary())?;
            }
            Ok(true)
        }
        Command::Check { id, params, out } => {
            let id: CheckId = id.parse()?;
            let spec = params.to_spec(seed);
            let cfg = resolve(id, &spec)?;
            let header = ReportHeader::new(command_line, seed, to_json(&cfg)?);
            let report = run_check_sharded(id, &spec, out.shards)?;
            let doc = ReportDocument::new(header, vec![report], vec![], elapsed_ms(start));
            emit_report(&doc, out.format, out.out.as_deref())?;
            Ok(doc.all_passed())
        }
        Command::Suite { manifest, samples, z, out } => {
            let mut m = match manifest {
                Some(p) => Manifest::load(p)?,
                None => default_manifest(),
            };
            // Entries keep their own seed; the run seed fills in the rest.
            for e in &mut m.entries {
                e.spec.seed = e.spec.seed.or(Some(seed));
                e.spec.samples = e.spec.samples.or(*samples);
                e.spec.z_threshold = e.spec.z_threshold.or(*z);
            }
            let header = ReportHeader::new(command_line, seed, manifest_json(&m)?);
            let (reports, errors) = run_suite(&m, out.shards)?;
            let doc = ReportDocument::new(header, reports, errors, elapsed_ms(start));
            emit_report(&doc, out.format, out.out.as_deref())?;
            if doc.summary.errored > 0 {
                for e in &doc.errors {
                    eprintln!("{BIN}: entry {} ({}): {}", e.index, e.check_id, e.error);
                }
                return Err(Error::Config(format!("{} manifest entries could not run", doc.summary.errored)));
            }
            Ok(doc.all_passed())
        }
        Command::RadonEval { dims, samples, z, out } => {
            let res = crate::dispatch_field!(dims.field, S => radon_eval::<S>(dims, *samples, *z, seed, out.shards))?;
            let pass = res.pass;
            write_result(&command_line, seed, dims, &[res], out)?;
            Ok(pass)
        }
        Command::Profile { dims, samples, grid, out } => {
            let rows = crate::dispatch_field!(dims.field, S => profile_rows::<S>(dims, *samples, *grid, seed, out.shards))?;
            write_result(&command_line, seed, dims, &rows, out)?;
            Ok(true)
        }
        Command::InvertK1 { field, n, kprime, samples, points, grid, fit_degree, m, tol, function, out } => {
            let function = match function.as_str() {
                "trace" => TestFunction::TraceProjection,
                "constant" => TestFunction::Constant,
                o => return Err(Error::Config(format!("unknown test function `{o}` (expected trace or constant)"))),
            };
            let cfg = RoundTripConfig {
                function,
                points: *points,
                samples: *samples,
                seed,
                grid_size: *grid,
                inversion: InversionOptions { m: *m, fit_degree: *fit_degree, ..InversionOptions::default() },
                ..RoundTripConfig::new(*field, *n, *kprime)
            };
            let report = round_trip_k1(&cfg)?;
            let pass = report.rel_l2_error <= *tol;
            let config = serde_json::json!({
                "field": field, "n": n, "k": 1, "kp": kprime, "samples": samples, "points": points,
                "grid_size": grid, "fit_degree": fit_degree, "m": report.m, "tol": tol, "seed": seed,
                "function": format!("{function:?}"),
            });
            let header = ReportHeader::new(command_line, seed, config);
            match out.format {
                ReportFormat::Json => {
                    let body = serde_json::json!({
                        "header": header,
                        "rows": report.rows,
                        "rel_l2_error": report.rel_l2_error,
                        "m": report.m,
                        "c3": report.c3,
                        "pass": pass,
                        "trailer": { "runtime_ms": report.runtime_ms },
                    });
                    write_bytes(&json_bytes(&body)?, out.out.as_deref())?;
                }
                ReportFormat::Csv => write_bytes(&csv_bytes(&report.rows)?, out.out.as_deref())?,
            }
            Ok(pass)
        }
        Command::Gamma { field, k, lambda, mu, out } => {
            #[derive(Serialize)]
            struct GammaRow {
                field: &'static str,
                k: usize,
                lambda: f64,
                gamma: f64,
                ln_gamma: f64,
                mu: Option<f64>,
                beta: Option<f64>,
            }
            let row = GammaRow {
                field: field.symbol(),
                k: *k,
                lambda: *lambda,
                gamma: gamma_cone(*field, *k, *lambda)?,
                ln_gamma: ln_gamma_cone(*field, *k, *lambda)?,
                mu: *mu,
                beta: mu.map(|m| beta_cone(*field, *k, *lambda, m)).transpose()?,
            };
            let config = serde_json::json!({ "field": field, "k": k, "lambda": lambda, "mu": mu });
            let header = ReportHeader::new(command_line, seed, config);
            emit_rows(&header, &[row], out)?;
            Ok(true)
        }
    }
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn to_json<T: Serialize>(v: &T) -> Result<serde_json::Value> {
    serde_json::to_value(v).map_err(|e| Error::Serde(e.to_string()))
}

fn manifest_json(m: &Manifest) -> Result<serde_json::Value> {
    #[derive(Serialize)]
    struct Entry<'a> {
        id: &'a str,
        #[serde(flatten)]
        spec: &'a CheckSpec,
    }
    to_json(&m.entries.iter().map(|e| Entry { id: e.id.as_str(), spec: &e.spec }).collect::<Vec<_>>())
}

fn json_bytes<T: Serialize>(v: &T) -> Result<Vec<u8>> {
    let mut b = serde_json::to_vec_pretty(v).map_err(|e| Error::Serde(e.to_string()))?;
    b.push(b'\n');
    Ok(b)
}

fn csv_bytes<T: Serialize>(rows: &[T]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Serde(e.to_string()))?;
    }
    w.into_inner().map_err(|e| Error::Serde(e.to_string()))
}

fn write_bytes(bytes: &[u8], path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn emit_rows<T: Serialize>(header: &ReportHeader, rows: &[T], out: &OutputOpts) -> Result<()> {
    let bytes = match out.format {
        ReportFormat::Json => json_bytes(&serde_json::json!({ "header": header, "rows": rows }))?,
        ReportFormat::Csv => csv_bytes(rows)?,
    };
    write_bytes(&bytes, out.out.as_deref())
}

fn write_result<T: Serialize>(command_line: &str, seed: u64, dims: &Dims, rows: &[T], out: &OutputOpts) -> Result<()> {
    let config = serde_json::json!({ "field": dims.field, "n": dims.n, "k": dims.k, "kp": dims.kprime, "seed": seed });
    emit_rows(&ReportHeader::new(command_line, seed, config), rows, out)
}

fn check_dims(d: &Dims) -> Result<()> {
    if d.k == 0 {
        return Err(Error::Infeasible("k >= 1 required".into()));
    }
    if d.k > d.kprime {
        return Err(Error::Infeasible(format!("k <= k' required (k={}, k'={})", d.k, d.kprime)));
    }
    if d.k + d.kprime > d.n {
        return Err(Error::Infeasible(format!("k + k' <= n required (k={}, k'={}, n={})", d.k, d.kprime, d.n)));
    }
    Ok(())
}

fn fixture(seed: u64, tag: u64) -> McRng {
    McRng::seed_from_u64(derive_seed(seed, tag))
}

fn mc(samples: u64, seed: u64, shards: Option<usize>) -> McConfig {
    let c = McConfig::new(samples, seed);
    match shards {
        Some(s) => c.with_shards(s),
        None => c,
    }
}

#[derive(Serialize)]
struct RadonEvalRow {
    field: &'static str,
    n: usize,
    k: usize,
    kp: usize,
    samples: u64,
    seed: u64,
    estimate: f64,
    stderr: f64,
    closed_form: f64,
    z: f64,
    pass: bool,
}

/// `𝓡[tr(A P_ξ)](η) = (k/k') tr(A P_η)` at a seeded frame `η`.
fn radon_eval<S: Scalar>(d: &Dims, samples: u64, z_max: f64, seed: u64, shards: Option<usize>) -> Result<RadonEvalRow> {
    check_dims(d)?;
    let a = test_matrix::<S>(d.n, seed);
    let f = InvariantFunction::trace_projection(a.clone(), d.k)?;
    let y = sample_haar_stiefel::<S, _>(d.n, d.kprime, &mut fixture(seed, 1));
    let est = radon(&f, &y, &mc(samples, derive_seed(seed, 2), shards))?;
    let closed = d.k as f64 / d.kprime as f64 * y.adjoint_mul(&(a.as_mat() * &y)).trace_re();
    let z = est.z_score(closed);
    Ok(RadonEvalRow {
        field: d.field.symbol(),
        n: d.n,
        k: d.k,
        kp: d.kprime,
        samples,
        seed,
        estimate: est.mean,
        stderr: est.stderr,
        closed_form: closed,
        z,
        pass: z.abs() <= z_max,
    })
}

#[derive(Serialize)]
struct ProfileRow {
    s: f64,
    phi: f64,
    phi_stderr: f64,
    t_value: f64,
    t_stderr: f64,
}

fn profile_rows<S: Scalar>(d: &Dims, samples: u64, grid: usize, seed: u64, shards: Option<usize>) -> Result<Vec<ProfileRow>> {
    check_dims(d)?;
    if grid == 0 {
        return Err(Error::Config("profile grid needs at least one point".into()));
    }
    let f = InvariantFunction::trace_projection(test_matrix::<S>(d.n, seed), d.k)?;
    let phi = Radon::new(&f, d.kprime).symmetrized(true);
    let x = sample_haar_stiefel::<S, _>(d.n, d.k, &mut fixture(seed, 1));
    let pts = chebyshev_grid(grid, 0.02, 0.98);
    let mats: Vec<HermMatrix<S>> = pts.iter().map(|&s| HermMatrix::scalar(d.k, s)).collect();
    let p = phi_profile(&phi, &x, &mats, &mc(samples, derive_seed(seed, 2), shards), ProfileOptions::default())?;
    Ok(pts
        .iter()
        .zip(p.values.iter().zip(&p.t_values))
        .map(|(&s, (v, t))| ProfileRow { s, phi: v.mean, phi_stderr: v.stderr, t_value: t.mean, t_stderr: t.stderr })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Command {
        Cli::try_parse_from(std::iter::once(BIN).chain(args.iter().copied())).unwrap().command
    }

    #[test]
    fn canonical_form_round_trips() {
        let cases: [&[&str]; 6] = [
            &["check", "capelli_inverse", "--field", "C", "--k", "2", "--m", "3"],
            &["check", "gamma_integral", "--field", "H", "--lambda", "2.5", "--seed", "0x10", "--format", "csv"],
            &["suite", "--samples", "1000"],
            &["radon-eval", "--field", "C", "--n", "3", "--kprime", "2"],
            &["invert-k1", "--field", "R", "--n", "4", "--kprime", "2", "--samples", "200000", "--seed", "42"],
            &["gamma", "--field", "H", "--k", "2", "--lambda", "7", "--mu", "8"],
        ];
        for c in cases {
            let cmd = parse(c);
            let canon = cmd.canonical_args(7);
            let again = parse(&canon.iter().map(String::as_str).collect::<Vec<_>>());
            assert_eq!(again.canonical_args(7), canon, "{c:?}");
        }
    }

    #[test]
    fn seed_flag_is_parsed_as_hex_or_decimal() {
        let cmd = parse(&["check", "switch", "--seed", "0xff"]);
        let seed = resolve_seed(cmd.output().unwrap().seed.as_deref()).unwrap();
        assert_eq!(seed, 255);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run([BIN, "check", "gamma_integral", "--bogus"]), EXIT_USAGE);
        assert_eq!(run([BIN, "frobnicate"]), EXIT_USAGE);
        assert_eq!(run([BIN, "check", "no_such_check"]), EXIT_USAGE);
    }
}
