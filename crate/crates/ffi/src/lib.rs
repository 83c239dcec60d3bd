//! C interface to the grassmann-radon toolkit.
//!
//! Every function returns a [`GrStatus`]. On failure the message is kept
//! per thread and read back with [`gr_last_error_message`]. Results come
//! back through out-pointers; handles and strings returned by the library
//! are released with the matching `_free` function.

// Entry points are called from C: pointers are null-checked, and validity
// beyond that is the caller's contract stated in the header.
#![allow(clippy::not_unsafe_ptr_arg_deref)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use grassmann_radon::radon::roundtrip::test_matrix;
use grassmann_radon::radon::{radon, round_trip_k1, InvariantFunction, RoundTripConfig, TestFunction};
use grassmann_radon::random::{derive_seed, sample_haar_stiefel, stream_rng, McConfig};
use grassmann_radon::suite::report::render_report;
use grassmann_radon::suite::{
    default_manifest, run_check, run_suite, CheckId, CheckSpec, Manifest, ReportDocument, ReportFormat, ReportHeader,
};
use grassmann_radon::{cone, Error, FieldTag, Scalar};

pub const GR_FIELD_REAL: u32 = 1;
pub const GR_FIELD_COMPLEX: u32 = 2;
pub const GR_FIELD_QUATERNION: u32 = 4;

pub const GR_FORMAT_JSON: u32 = 0;
pub const GR_FORMAT_CSV: u32 = 1;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Config = 3,
    Infeasible = 4,
    Domain = 5,
    Numerical = 6,
    Io = 7,
    Panic = 8,
}

/// Opaque list of checks to run.
pub struct GrManifest(Manifest);

/// Opaque result document of a check or suite run.
pub struct GrReport(ReportDocument);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(GrStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Domain(_) => GrStatus::Domain,
            Error::Infeasible(_) => GrStatus::Infeasible,
            Error::Config(_) | Error::UnknownCheck(_) | Error::Serde(_) => GrStatus::Config,
            Error::Io(_) => GrStatus::Io,
            _ => GrStatus::Numerical,
        };
        Failure(status, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(GrStatus::InvalidArgument, msg.into())
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Run `f`, recording any error or panic for `gr_last_error_message`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GrStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal panic: {msg}"));
            GrStatus::Panic
        }
    }
}

fn write<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(GrStatus::NullPointer, "output pointer is null".into()));
    }
    // SAFETY: non-null and, per the API contract, valid for writes.
    unsafe { out.write(v) };
    Ok(())
}

fn read<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    // SAFETY: handles passed in were created by this library and not freed.
    unsafe { p.as_ref() }.ok_or_else(|| Failure(GrStatus::NullPointer, format!("{what} is null")))
}

fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(GrStatus::NullPointer, format!("{what} is null")));
    }
    // SAFETY: non-null, NUL-terminated per the API contract.
    unsafe { CStr::from_ptr(p) }.to_str().map_err(|_| invalid(format!("{what} is not valid UTF-8")))
}

fn field(d: u32) -> Result<FieldTag, Failure> {
    FieldTag::from_d(d as usize).ok_or_else(|| invalid(format!("field must be 1 (R), 2 (C) or 4 (H), got {d}")))
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(|_| invalid("output contains a NUL byte"))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Cone Gamma function `Gamma_Omega(lambda)` of rank `k`.
#[no_mangle]
pub extern "C" fn gr_gamma_cone(field_d: u32, k: usize, lambda: f64, out: *mut f64) -> GrStatus {
    guard(|| write(out, cone::gamma_cone(field(field_d)?, k, lambda)?))
}

/// Cone Beta function `B_Omega(lambda, mu)` of rank `k`.
#[no_mangle]
pub extern "C" fn gr_beta_cone(field_d: u32, k: usize, lambda: f64, mu: f64, out: *mut f64) -> GrStatus {
    guard(|| write(out, cone::beta_cone(field(field_d)?, k, lambda, mu)?))
}

/// Coefficient `c` in `I^lambda Delta^(mu - N/k) = c Delta^(lambda + mu - N/k)`.
#[no_mangle]
pub extern "C" fn gr_frac_integral_power(field_d: u32, k: usize, lambda: f64, mu: f64, out: *mut f64) -> GrStatus {
    guard(|| write(out, cone::frac_integral_power(field(field_d)?, k, lambda, mu)?))
}

/// Monte Carlo Radon transform of `tr(A P)` at a seeded `k'`-frame, with
/// its standard error and the closed form `(k/k') tr(A P_eta)`.
#[no_mangle]
pub extern "C" fn gr_radon_trace_projection(
    field_d: u32,
    n: usize,
    k: usize,
    kp: usize,
    samples: u64,
    seed: u64,
    estimate: *mut f64,
    std_error: *mut f64,
    closed_form: *mut f64,
) -> GrStatus {
    fn eval<S: Scalar>(n: usize, k: usize, kp: usize, samples: u64, seed: u64) -> Result<(f64, f64, f64), Failure> {
        if !(k >= 1 && k <= kp && kp <= n) {
            return Err(Error::Infeasible(format!("1 <= k <= k' <= n required (k={k}, k'={kp}, n={n})")).into());
        }
        let a = test_matrix::<S>(n, seed);
        let f = InvariantFunction::trace_projection(a.clone(), k)?;
        let y = sample_haar_stiefel::<S, _>(n, kp, &mut stream_rng(seed, 1));
        let est = radon(&f, &y, &McConfig::new(samples, derive_seed(seed, 2)))?;
        let closed = k as f64 / kp as f64 * y.adjoint_mul(&(a.as_mat() * &y)).trace_re();
        Ok((est.mean, est.stderr, closed))
    }
    guard(|| {
        let f = field(field_d)?;
        let (m, se, c) = grassmann_radon::dispatch_field!(f, S => eval::<S>(n, k, kp, samples, seed))?;
        write(estimate, m)?;
        write(std_error, se)?;
        write(closed_form, c)
    })
}

/// Rank-one inversion round trip for `tr(A P)` (`constant_function` = 0)
/// or `f = 1` (non-zero); writes the relative L2 error over `points`.
#[no_mangle]
pub extern "C" fn gr_round_trip_k1(
    field_d: u32,
    n: usize,
    kp: usize,
    samples: u64,
    points: usize,
    seed: u64,
    constant_function: bool,
    rel_l2_error: *mut f64,
) -> GrStatus {
    guard(|| {
        let function = if constant_function { TestFunction::Constant } else { TestFunction::TraceProjection };
        let cfg = RoundTripConfig { function, samples, points, seed, ..RoundTripConfig::new(field(field_d)?, n, kp) };
        write(rel_l2_error, round_trip_k1(&cfg)?.rel_l2_error)
    })
}

/// The built-in manifest covering every check.
#[no_mangle]
pub extern "C" fn gr_manifest_default(out: *mut *mut GrManifest) -> GrStatus {
    guard(|| write(out, Box::into_raw(Box::new(GrManifest(default_manifest())))))
}

/// Parse a manifest from TOML text (`[[check]]` tables).
#[no_mangle]
pub extern "C" fn gr_manifest_parse(toml: *const c_char, out: *mut *mut GrManifest) -> GrStatus {
    guard(|| {
        let m = Manifest::parse(text(toml, "manifest text")?)?;
        write(out, Box::into_raw(Box::new(GrManifest(m))))
    })
}

#[no_mangle]
pub extern "C" fn gr_manifest_len(manifest: *const GrManifest, out: *mut usize) -> GrStatus {
    guard(|| write(out, read(manifest, "manifest")?.0.len()))
}

#[no_mangle]
pub extern "C" fn gr_manifest_free(manifest: *mut GrManifest) {
    if !manifest.is_null() {
        // SAFETY: created by Box::into_raw in this library.
        drop(unsafe { Box::from_raw(manifest) });
    }
}

/// Run every manifest entry. Entries without a seed take `seed`; `shards`
/// = 0 uses the default split, which never changes the results.
/// Entries that cannot run are listed in the report, not returned as errors.
#[no_mangle]
pub extern "C" fn gr_suite_run(manifest: *const GrManifest, seed: u64, shards: usize, out: *mut *mut GrReport) -> GrStatus {
    guard(|| {
        let mut m = read(manifest, "manifest")?.0.clone();
        for e in &mut m.entries {
            e.spec.seed = e.spec.seed.or(Some(seed));
        }
        let header = ReportHeader::new("gr_suite_run", seed, serde_json::Value::String(m.to_toml()?));
        let (reports, errors) = run_suite(&m, (shards > 0).then_some(shards))?;
        let doc = ReportDocument::new(header, reports, errors, 0);
        write(out, Box::into_raw(Box::new(GrReport(doc))))
    })
}

/// Run one check. `spec_json` is a JSON object of parameters (field, n, k,
/// kp, lambda, samples, ...) or NULL for the defaults; a seed in it
/// overrides `seed`.
#[no_mangle]
pub extern "C" fn gr_check_run(id: *const c_char, spec_json: *const c_char, seed: u64, out: *mut *mut GrReport) -> GrStatus {
    guard(|| {
        let id: CheckId = text(id, "check id")?.parse()?;
        let mut spec: CheckSpec = if spec_json.is_null() {
            CheckSpec::default()
        } else {
            serde_json::from_str(text(spec_json, "check parameters")?)
                .map_err(|e| Failure(GrStatus::Config, format!("check parameters: {e}")))?
        };
        spec.seed = spec.seed.or(Some(seed));
        let report = run_check(id, &spec)?;
        let config = serde_json::to_value(&report.config).map_err(|e| Failure(GrStatus::Config, e.to_string()))?;
        let doc = ReportDocument::new(ReportHeader::new("gr_check_run", seed, config), vec![report], vec![], 0);
        write(out, Box::into_raw(Box::new(GrReport(doc))))
    })
}

/// Counts of the run: total entries, passed, failed, and entries that
/// could not run.
#[no_mangle]
pub extern "C" fn gr_report_summary(
    report: *const GrReport,
    total: *mut usize,
    passed: *mut usize,
    failed: *mut usize,
    errored: *mut usize,
) -> GrStatus {
    guard(|| {
        let s = read(report, "report")?.0.summary;
        write(total, s.total)?;
        write(passed, s.passed)?;
        write(failed, s.failed)?;
        write(errored, s.errored)
    })
}

#[no_mangle]
pub extern "C" fn gr_report_all_passed(report: *const GrReport, out: *mut bool) -> GrStatus {
    guard(|| write(out, read(report, "report")?.0.all_passed()))
}

/// Serialize a report as JSON or CSV. Release the string with
/// `gr_string_free`.
#[no_mangle]
pub extern "C" fn gr_report_render(report: *const GrReport, format: u32, out: *mut *mut c_char) -> GrStatus {
    guard(|| {
        let format = match format {
            GR_FORMAT_JSON => ReportFormat::Json,
            GR_FORMAT_CSV => ReportFormat::Csv,
            o => return Err(invalid(format!("format must be 0 (JSON) or 1 (CSV), got {o}"))),
        };
        let bytes = render_report(&read(report, "report")?.0, format)?;
        let s = String::from_utf8(bytes).map_err(|_| invalid("report is not UTF-8"))?;
        write(out, into_c_string(s)?)
    })
}

#[no_mangle]
pub extern "C" fn gr_report_free(report: *mut GrReport) {
    if !report.is_null() {
        // SAFETY: created by Box::into_raw in this library.
        drop(unsafe { Box::from_raw(report) });
    }
}

#[no_mangle]
pub extern "C" fn gr_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: created by CString::into_raw in this library.
        drop(unsafe { CString::from_raw(s) });
    }
}
