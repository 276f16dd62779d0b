//! C ABI over the doughslit toolkit.
//!
//! Every fallible function returns a [`DsStatus`]; on failure the message is
//! available from [`ds_last_error_message`] on the same thread. Objects are
//! opaque handles created by `*_new` and released by the matching `*_free`.
//! Output arrays are caller-allocated; their length must match exactly and
//! can be queried first.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use doughslit::analysis::{closeness_centrality, proximity_graph, similarity, PathMetric};
use doughslit::dough::{self, fringe_report, DoughConfig, DoughRun, Mode};
use doughslit::keyvalue::KeyValueConfig;
use doughslit::qsolve::{build_potential, screen_profile, ComplexField2D, CrankNicolson, SimulationConfig};
use doughslit::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// An output buffer length does not match the data.
    BufferSize = 3,
    InvalidParameter = 4,
    UnderResolved = 5,
    SolverFailure = 6,
    Degenerate = 7,
    LengthMismatch = 8,
    TooFewBins = 9,
    SpacingUndefined = 10,
    EmptyProfile = 11,
    Parse = 12,
    Format = 13,
    Io = 14,
    /// A Rust panic was caught at the boundary.
    Internal = 15,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DsDoughMode {
    Interference = 0,
    NoInterference = 1,
}

/// Snapshot of a running simulation.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DsSimulationInfo {
    pub n_x: usize,
    pub n_y: usize,
    pub step: usize,
    pub time: f64,
    pub norm: f64,
}

/// Fringe metrics of a dough histogram. Undefined values are NaN.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DsFringeMetrics {
    pub n_peaks: usize,
    pub spacing_mean: f64,
    pub spacing_cv: f64,
    pub visibility: f64,
    pub fringed: bool,
}

/// Simulation parameters, edited with [`ds_sim_config_set`].
pub struct DsSimConfig(SimulationConfig);

/// A wave packet evolving under the Crank–Nicolson solver.
pub struct DsSimulation {
    config: SimulationConfig,
    solver: CrankNicolson,
    field: ComplexField2D,
    step: usize,
}

/// Dough-model parameters, edited with [`ds_dough_config_set`].
pub struct DsDoughConfig(DoughConfig);

/// A finished dough run.
pub struct DsDoughRun(DoughRun);

struct Failure {
    status: DsStatus,
    message: String,
}

impl Failure {
    fn new(status: DsStatus, message: impl Into<String>) -> Self {
        Self { status, message: message.into() }
    }
}

fn status_of(e: &Error) -> DsStatus {
    match e {
        Error::InvalidParameter(_) => DsStatus::InvalidParameter,
        Error::UnderResolved(_) => DsStatus::UnderResolved,
        Error::SolverFailure { .. } => DsStatus::SolverFailure,
        Error::StepFailed { source, .. } => status_of(source),
        Error::EmptyProfile(_) => DsStatus::EmptyProfile,
        Error::LengthMismatch { .. } => DsStatus::LengthMismatch,
        Error::Degenerate(_) => DsStatus::Degenerate,
        Error::TooFewBins(_) => DsStatus::TooFewBins,
        Error::SpacingUndefined(_) => DsStatus::SpacingUndefined,
        Error::Parse { .. } => DsStatus::Parse,
        Error::Format(_) | Error::Json(_) => DsStatus::Format,
        Error::Io { .. } => DsStatus::Io,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::new(status_of(&e), e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `f`, converting errors and panics into a status and last-error message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DsStatus {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| p.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unknown panic".into());
        Err(Failure::new(DsStatus::Internal, format!("internal error: {msg}")))
    });
    match outcome {
        Ok(()) => {
            set_last_error("");
            DsStatus::Ok
        }
        Err(f) => {
            set_last_error(&f.message);
            f.status
        }
    }
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::new(DsStatus::NullPointer, format!("{what} is null")))
}

unsafe fn get_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| Failure::new(DsStatus::NullPointer, format!("{what} is null")))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(DsStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::new(DsStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn input<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::new(DsStatus::NullPointer, format!("{what} is null")));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn output<'a, T>(p: *mut T, len: usize, expected: usize, what: &str) -> Result<&'a mut [T], Failure> {
    if len != expected {
        return Err(Failure::new(DsStatus::BufferSize, format!("{what} has length {len}, expected {expected}")));
    }
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(Failure::new(DsStatus::NullPointer, format!("{what} is null")));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    let slot = get_mut(out, "out")?;
    *slot = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn release<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

fn apply_setting<C: KeyValueConfig>(cfg: &mut C, key: &str, value: &str) -> Result<(), Failure> {
    cfg.set(key, value).map_err(|m| Failure::new(DsStatus::InvalidParameter, m))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ds_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn ds_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static name of a status code, e.g. `"solver_failure"`.
#[no_mangle]
pub extern "C" fn ds_status_name(status: DsStatus) -> *const c_char {
    let s: &'static str = match status {
        DsStatus::Ok => "ok\0",
        DsStatus::NullPointer => "null_pointer\0",
        DsStatus::InvalidUtf8 => "invalid_utf8\0",
        DsStatus::BufferSize => "buffer_size\0",
        DsStatus::InvalidParameter => "invalid_parameter\0",
        DsStatus::UnderResolved => "under_resolved\0",
        DsStatus::SolverFailure => "solver_failure\0",
        DsStatus::Degenerate => "degenerate\0",
        DsStatus::LengthMismatch => "length_mismatch\0",
        DsStatus::TooFewBins => "too_few_bins\0",
        DsStatus::SpacingUndefined => "spacing_undefined\0",
        DsStatus::EmptyProfile => "empty_profile\0",
        DsStatus::Parse => "parse\0",
        DsStatus::Format => "format\0",
        DsStatus::Io => "io\0",
        DsStatus::Internal => "internal\0",
    };
    s.as_ptr().cast()
}

// ---- simulation ----

/// Default simulation parameters.
#[no_mangle]
pub unsafe extern "C" fn ds_sim_config_new(out: *mut *mut DsSimConfig) -> DsStatus {
    guard(|| store(out, DsSimConfig(SimulationConfig::default())))
}

/// Sets one parameter by its config-file key, e.g. `("dt", "1e-4")`.
#[no_mangle]
pub unsafe extern "C" fn ds_sim_config_set(cfg: *mut DsSimConfig, key: *const c_char, value: *const c_char) -> DsStatus {
    guard(|| {
        let cfg = get_mut(cfg, "cfg")?;
        apply_setting(&mut cfg.0, text(key, "key")?, text(value, "value")?)
    })
}

#[no_mangle]
pub unsafe extern "C" fn ds_sim_config_free(cfg: *mut DsSimConfig) {
    release(cfg)
}

/// Validates `cfg` and prepares the initial packet at step 0.
#[no_mangle]
pub unsafe extern "C" fn ds_simulation_new(cfg: *const DsSimConfig, out: *mut *mut DsSimulation) -> DsStatus {
    guard(|| {
        let config = get(cfg, "cfg")?.0.clone();
        config.validate()?;
        let grid = config.grid()?;
        let potential = build_potential(&grid, &config.geometry)?;
        let solver = CrankNicolson::new(grid, &potential, config.dt, config.solver)?;
        let field = config.initial_field(&potential)?;
        store(out, DsSimulation { config, solver, field, step: 0 })
    })
}

/// Advances by `n_steps` time steps. On failure the state stays at the last
/// completed step.
#[no_mangle]
pub unsafe extern "C" fn ds_simulation_step(sim: *mut DsSimulation, n_steps: usize) -> DsStatus {
    guard(|| {
        let sim = get_mut(sim, "sim")?;
        for _ in 0..n_steps {
            let next = sim.solver.step(&sim.field).map_err(|e| Error::StepFailed {
                step: sim.step + 1,
                source: Box::new(e),
            })?;
            sim.field = next;
            sim.step += 1;
        }
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ds_simulation_info(sim: *const DsSimulation, out: *mut DsSimulationInfo) -> DsStatus {
    guard(|| {
        let sim = get(sim, "sim")?;
        let g = sim.field.grid();
        *get_mut(out, "out")? = DsSimulationInfo {
            n_x: g.n_x(),
            n_y: g.n_y(),
            step: sim.step,
            time: sim.step as f64 * sim.config.dt,
            norm: sim.field.norm(),
        };
        Ok(())
    })
}

/// Copies the complex field, row-major with `y` fastest; `len` must be
/// `n_x * n_y`.
#[no_mangle]
pub unsafe extern "C" fn ds_simulation_field(
    sim: *const DsSimulation,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> DsStatus {
    guard(|| {
        let sim = get(sim, "sim")?;
        let values = sim.field.values();
        let re = output(re, len, values.len(), "re")?;
        let im = output(im, len, values.len(), "im")?;
        for (k, v) in values.iter().enumerate() {
            re[k] = v.re;
            im[k] = v.im;
        }
        Ok(())
    })
}

/// Copies `|psi|`, same layout as [`ds_simulation_field`].
#[no_mangle]
pub unsafe extern "C" fn ds_simulation_modulus(sim: *const DsSimulation, out: *mut f64, len: usize) -> DsStatus {
    guard(|| {
        let sim = get(sim, "sim")?;
        let m = sim.field.modulus();
        output(out, len, m.values().len(), "out")?.copy_from_slice(m.values());
        Ok(())
    })
}

/// Normalized screen intensity at the configured screen column; `len` must be
/// `n_y`.
#[no_mangle]
pub unsafe extern "C" fn ds_simulation_screen_profile(
    sim: *const DsSimulation,
    y: *mut f64,
    probability: *mut f64,
    len: usize,
) -> DsStatus {
    guard(|| {
        let sim = get(sim, "sim")?;
        let p = screen_profile(&sim.field.modulus(), &sim.config.geometry, sim.config.screen_x)?;
        output(y, len, p.y.len(), "y")?.copy_from_slice(&p.y);
        output(probability, len, p.probability.len(), "probability")?.copy_from_slice(&p.probability);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ds_simulation_free(sim: *mut DsSimulation) {
    release(sim)
}

// ---- dough model ----

/// Default dough parameters for `mode`.
#[no_mangle]
pub unsafe extern "C" fn ds_dough_config_new(mode: DsDoughMode, out: *mut *mut DsDoughConfig) -> DsStatus {
    guard(|| {
        let cfg = match mode {
            DsDoughMode::Interference => DoughConfig { mode: Mode::Interference, ..DoughConfig::default() },
            DsDoughMode::NoInterference => DoughConfig::no_interference(),
        };
        store(out, DsDoughConfig(cfg))
    })
}

/// Sets one parameter by its config-file key, e.g. `("trials", "500")`.
#[no_mangle]
pub unsafe extern "C" fn ds_dough_config_set(
    cfg: *mut DsDoughConfig,
    key: *const c_char,
    value: *const c_char,
) -> DsStatus {
    guard(|| {
        let cfg = get_mut(cfg, "cfg")?;
        apply_setting(&mut cfg.0, text(key, "key")?, text(value, "value")?)
    })
}

#[no_mangle]
pub unsafe extern "C" fn ds_dough_config_free(cfg: *mut DsDoughConfig) {
    release(cfg)
}

/// Runs every trial of `cfg`. Deterministic for a given config.
#[no_mangle]
pub unsafe extern "C" fn ds_dough_run_new(cfg: *const DsDoughConfig, out: *mut *mut DsDoughRun) -> DsStatus {
    guard(|| {
        let run = dough::run(&get(cfg, "cfg")?.0)?;
        store(out, DsDoughRun(run))
    })
}

/// Number of recorded trials (and arrivals).
#[no_mangle]
pub unsafe extern "C" fn ds_dough_run_trial_count(run: *const DsDoughRun) -> usize {
    run.as_ref().map_or(0, |r| r.0.trajectories().len())
}

/// Screen arrival position of every trial, in trial order.
#[no_mangle]
pub unsafe extern "C" fn ds_dough_run_arrivals(run: *const DsDoughRun, out: *mut f64, len: usize) -> DsStatus {
    guard(|| {
        let a = get(run, "run")?.0.arrivals();
        output(out, len, a.len(), "out")?.copy_from_slice(&a);
        Ok(())
    })
}

/// Number of bins of the combined screen histogram.
#[no_mangle]
pub unsafe extern "C" fn ds_dough_run_histogram_len(run: *const DsDoughRun) -> usize {
    run.as_ref().map_or(0, |r| r.0.histogram().len())
}

/// Bin centres and counts of the combined screen histogram.
#[no_mangle]
pub unsafe extern "C" fn ds_dough_run_histogram(
    run: *const DsDoughRun,
    centers: *mut f64,
    counts: *mut u64,
    len: usize,
) -> DsStatus {
    guard(|| {
        let h = get(run, "run")?.0.histogram();
        output(centers, len, h.len(), "centers")?.copy_from_slice(&h.centers());
        output(counts, len, h.len(), "counts")?.copy_from_slice(&h.counts);
        Ok(())
    })
}

/// Fringe metrics of the combined histogram under the run's envelope and
/// peak settings.
#[no_mangle]
pub unsafe extern "C" fn ds_dough_run_fringes(run: *const DsDoughRun, out: *mut DsFringeMetrics) -> DsStatus {
    guard(|| {
        let run = &get(run, "run")?.0;
        let m = fringe_report(run.histogram(), run.config())?.metrics;
        *get_mut(out, "out")? = DsFringeMetrics {
            n_peaks: m.n_peaks,
            spacing_mean: m.spacing.map_or(f64::NAN, |s| s.mean),
            spacing_cv: m.spacing.map_or(f64::NAN, |s| s.cv),
            visibility: m.visibility.unwrap_or(f64::NAN),
            fringed: m.fringed,
        };
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ds_dough_run_free(run: *mut DsDoughRun) {
    release(run)
}

// ---- analysis ----

/// Similarity score in `[0, 100]` of two distributions sampled on the same
/// grid.
#[no_mangle]
pub unsafe extern "C" fn ds_similarity(p: *const f64, q: *const f64, len: usize, out: *mut f64) -> DsStatus {
    guard(|| {
        let s = similarity(input(p, len, "p")?, input(q, len, "q")?)?;
        *get_mut(out, "out")? = s;
        Ok(())
    })
}

/// Closeness centrality of the proximity graph over `n` points at `radius`.
/// `weighted` selects Euclidean path lengths instead of hop counts.
#[no_mangle]
pub unsafe extern "C" fn ds_closeness_centrality(
    xs: *const f64,
    ys: *const f64,
    n: usize,
    radius: f64,
    weighted: bool,
    out: *mut f64,
) -> DsStatus {
    guard(|| {
        let (xs, ys) = (input(xs, n, "xs")?, input(ys, n, "ys")?);
        let points: Vec<(f64, f64)> = xs.iter().copied().zip(ys.iter().copied()).collect();
        let g = proximity_graph(&points, radius)?;
        let metric = if weighted { PathMetric::Euclidean } else { PathMetric::Hops };
        let c = closeness_centrality(&g, metric);
        output(out, n, n, "out")?.copy_from_slice(&c.values);
        Ok(())
    })
}

