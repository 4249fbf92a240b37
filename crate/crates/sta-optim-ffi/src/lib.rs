//! C ABI for the state transition algorithm optimizer.
//!
//! Handles are opaque and owned by the caller: everything returned through
//! an out-pointer must be released with the matching `_free` function.
//! All entry points return [`StaStatus`]; out-parameters are only written
//! on `STA_STATUS_OK`. The generated header lives at `include/sta_optim.h`.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sta_optim::benchmarks::{benchmark_ids, make_benchmark, Benchmark};
use sta_optim::{
    algorithms, AlgorithmConfig, PredictiveModel, RandomSource, RunRecord, TerminationReason,
    TerminationSpec, Variant,
};

/// Status code of every FFI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StaStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// No benchmark is registered under the given name.
    UnknownBenchmark = 3,
    /// A numeric argument or configuration violates its contract.
    InvalidArgument = 4,
    /// The provided buffer is too small.
    BufferTooSmall = 5,
    /// The requested value is not available on this object.
    Unavailable = 6,
    /// The optimizer panicked; the handle state is unspecified.
    InternalError = 7,
}

/// Algorithm selector.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StaAlgorithm {
    Standard = 0,
    Esta = 1,
    Exsta = 2,
}

/// Predictive translation model selector.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StaModel {
    First = 0,
    Second = 1,
    Hybrid = 2,
}

/// Why a finished run stopped.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StaTerminationReason {
    DesignedOptimal = 0,
    BudgetExhausted = 1,
    Stalled = 2,
}

/// Opaque benchmark problem handle.
pub struct StaProblem {
    bench: Benchmark,
}

/// Opaque run configuration handle.
pub struct StaConfig {
    config: AlgorithmConfig,
}

/// Opaque result handle for one finished run.
pub struct StaResult {
    record: RunRecord,
    grad_norm: Option<f64>,
    grad_norm_flagged: bool,
}

/// Library version as a static null-terminated string.
#[no_mangle]
pub extern "C" fn sta_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Number of registered benchmarks.
#[no_mangle]
pub extern "C" fn sta_benchmark_count() -> usize {
    benchmark_ids().len()
}

/// Copies the name of benchmark `index` (null-terminated) into `buffer`.
///
/// # Safety
/// `buffer` must point to at least `buffer_len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn sta_benchmark_name(
    index: usize,
    buffer: *mut c_char,
    buffer_len: usize,
) -> StaStatus {
    if buffer.is_null() {
        return StaStatus::NullArgument;
    }
    let ids = benchmark_ids();
    let Some(name) = ids.get(index) else {
        return StaStatus::InvalidArgument;
    };
    if buffer_len < name.len() + 1 {
        return StaStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(name.as_ptr(), buffer.cast(), name.len());
    *buffer.add(name.len()) = 0;
    StaStatus::Ok
}

/// Creates a benchmark problem by registry name (e.g. "sphere" or "f1").
///
/// # Safety
/// `name` must be a valid null-terminated string; `out` must be a valid
/// pointer. The returned handle must be released with [`sta_problem_free`].
#[no_mangle]
pub unsafe extern "C" fn sta_problem_new(
    name: *const c_char,
    dimension: usize,
    out: *mut *mut StaProblem,
) -> StaStatus {
    if name.is_null() || out.is_null() {
        return StaStatus::NullArgument;
    }
    let Ok(name) = CStr::from_ptr(name).to_str() else {
        return StaStatus::InvalidUtf8;
    };
    match make_benchmark(name, dimension) {
        Ok(bench) => {
            *out = Box::into_raw(Box::new(StaProblem { bench }));
            StaStatus::Ok
        }
        Err(sta_optim::Error::UnknownBenchmark(_)) => StaStatus::UnknownBenchmark,
        Err(_) => StaStatus::InvalidArgument,
    }
}

/// Releases a problem handle. Null is ignored.
///
/// # Safety
/// `problem` must have come from [`sta_problem_new`] and not been freed.
#[no_mangle]
pub unsafe extern "C" fn sta_problem_free(problem: *mut StaProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Dimension of the problem, or 0 on null.
///
/// # Safety
/// `problem` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sta_problem_dimension(problem: *const StaProblem) -> usize {
    problem.as_ref().map_or(0, |p| p.bench.dimension())
}

/// Creates a configuration with the library defaults for `algorithm`
/// (designed termination, SE = 30, epsilon = 1e-8, hybrid model).
///
/// # Safety
/// `out` must be a valid pointer. Release with [`sta_config_free`].
#[no_mangle]
pub unsafe extern "C" fn sta_config_new(
    algorithm: StaAlgorithm,
    out: *mut *mut StaConfig,
) -> StaStatus {
    if out.is_null() {
        return StaStatus::NullArgument;
    }
    let variant = match algorithm {
        StaAlgorithm::Standard => Variant::StandardSta,
        StaAlgorithm::Esta => Variant::Esta,
        StaAlgorithm::Exsta => Variant::Exsta,
    };
    let mut config = AlgorithmConfig::new(variant);
    if variant == Variant::StandardSta {
        // the standard loop cannot satisfy the designed stop; default it
        // to the conventional budget rule instead (1e4·n is applied when
        // max_fes is left at 0)
        config.termination = TerminationSpec::MaxFes(u64::MAX);
    }
    *out = Box::into_raw(Box::new(StaConfig { config }));
    StaStatus::Ok
}

/// Releases a configuration handle. Null is ignored.
///
/// # Safety
/// `config` must have come from [`sta_config_new`] and not been freed.
#[no_mangle]
pub unsafe extern "C" fn sta_config_free(config: *mut StaConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

unsafe fn with_config(
    config: *mut StaConfig,
    f: impl FnOnce(&mut AlgorithmConfig) -> StaStatus,
) -> StaStatus {
    match config.as_mut() {
        Some(c) => f(&mut c.config),
        None => StaStatus::NullArgument,
    }
}

/// Sets the per-operator sample size (must be >= 1).
///
/// # Safety
/// `config` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sta_config_set_se(config: *mut StaConfig, se: usize) -> StaStatus {
    with_config(config, |c| {
        if se < 1 {
            return StaStatus::InvalidArgument;
        }
        c.se = se;
        StaStatus::Ok
    })
}

/// Sets the solution accuracy epsilon of the designed termination.
///
/// # Safety
/// `config` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sta_config_set_epsilon(config: *mut StaConfig, epsilon: f64) -> StaStatus {
    with_config(config, |c| {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return StaStatus::InvalidArgument;
        }
        c.epsilon = epsilon;
        StaStatus::Ok
    })
}

/// Selects the designed termination (stop at certified local optimality).
///
/// # Safety
/// `config` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sta_config_set_termination_designed(config: *mut StaConfig) -> StaStatus {
    with_config(config, |c| {
        c.termination = TerminationSpec::Designed;
        StaStatus::Ok
    })
}

/// Caps the run at `max_fes` objective evaluations; 0 selects the
/// conventional 1e4·dimension budget at run time.
///
/// # Safety
/// `config` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sta_config_set_termination_max_fes(
    config: *mut StaConfig,
    max_fes: u64,
) -> StaStatus {
    with_config(config, |c| {
        c.termination = TerminationSpec::MaxFes(if max_fes == 0 { u64::MAX } else { max_fes });
        StaStatus::Ok
    })
}

/// Stops after `max_stalls` consecutive non-improving iterations.
///
/// # Safety
/// `config` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sta_config_set_termination_max_stalls(
    config: *mut StaConfig,
    max_stalls: u32,
) -> StaStatus {
    with_config(config, |c| {
        if max_stalls == 0 {
            return StaStatus::InvalidArgument;
        }
        c.termination = TerminationSpec::MaxStalls(max_stalls);
        StaStatus::Ok
    })
}

/// Selects the predictive translation model.
///
/// # Safety
/// `config` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sta_config_set_model(config: *mut StaConfig, model: StaModel) -> StaStatus {
    with_config(config, |c| {
        c.predictive_model = match model {
            StaModel::First => PredictiveModel::First,
            StaModel::Second => PredictiveModel::Second,
            StaModel::Hybrid => PredictiveModel::Hybrid,
        };
        StaStatus::Ok
    })
}

/// Sets the historical-best archive capacity; 0 restores the automatic
/// dimension-scaled size.
///
/// # Safety
/// `config` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sta_config_set_archive_capacity(
    config: *mut StaConfig,
    capacity: usize,
) -> StaStatus {
    with_config(config, |c| {
        if capacity == 1 {
            return StaStatus::InvalidArgument;
        }
        c.archive_capacity = if capacity == 0 { None } else { Some(capacity) };
        StaStatus::Ok
    })
}

/// Runs the configured algorithm on the problem with the given seed.
/// Identical (problem, config, seed) triples reproduce identical results.
///
/// # Safety
/// `problem` and `config` must be live handles; `out` must be valid.
/// Release the result with [`sta_result_free`].
#[no_mangle]
pub unsafe extern "C" fn sta_run(
    problem: *const StaProblem,
    config: *const StaConfig,
    seed: u64,
    out: *mut *mut StaResult,
) -> StaStatus {
    let (Some(problem), Some(config)) = (problem.as_ref(), config.as_ref()) else {
        return StaStatus::NullArgument;
    };
    if out.is_null() {
        return StaStatus::NullArgument;
    }
    let mut config = config.config.clone();
    if let TerminationSpec::MaxFes(u64::MAX) = config.termination {
        config.termination = TerminationSpec::MaxFes(10_000 * problem.bench.dimension() as u64);
    }
    let outcome = catch_unwind(AssertUnwindSafe(|| {
        let mut rng = RandomSource::new(seed);
        algorithms::run(problem.bench.problem(), &config, &mut rng).map(|record| {
            let report = problem.bench.grad_norm_report(&record.best_point).ok();
            StaResult {
                grad_norm: report.map(|r| r.value),
                grad_norm_flagged: report.is_some_and(|r| r.flagged),
                record,
            }
        })
    }));
    match outcome {
        Ok(Ok(result)) => {
            *out = Box::into_raw(Box::new(result));
            StaStatus::Ok
        }
        Ok(Err(_)) => StaStatus::InvalidArgument,
        Err(_) => StaStatus::InternalError,
    }
}

/// Releases a result handle. Null is ignored.
///
/// # Safety
/// `result` must have come from [`sta_run`] and not been freed.
#[no_mangle]
pub unsafe extern "C" fn sta_result_free(result: *mut StaResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Final objective value (NaN on null).
///
/// # Safety
/// `result` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sta_result_best_value(result: *const StaResult) -> f64 {
    result.as_ref().map_or(f64::NAN, |r| r.record.best_value)
}

/// Objective evaluations consumed (0 on null).
///
/// # Safety
/// `result` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sta_result_evaluations(result: *const StaResult) -> u64 {
    result.as_ref().map_or(0, |r| r.record.evaluations)
}

/// Iterations executed (0 on null).
///
/// # Safety
/// `result` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sta_result_iterations(result: *const StaResult) -> u64 {
    result.as_ref().map_or(0, |r| r.record.iterations)
}

/// Why the run stopped (BudgetExhausted on null).
///
/// # Safety
/// `result` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sta_result_termination(result: *const StaResult) -> StaTerminationReason {
    match result.as_ref().map(|r| r.record.termination_reason) {
        Some(TerminationReason::DesignedOptimal) => StaTerminationReason::DesignedOptimal,
        Some(TerminationReason::Stalled) => StaTerminationReason::Stalled,
        _ => StaTerminationReason::BudgetExhausted,
    }
}

/// Dimension of the stored best point (0 on null).
///
/// # Safety
/// `result` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sta_result_dimension(result: *const StaResult) -> usize {
    result.as_ref().map_or(0, |r| r.record.best_point.dim())
}

/// Copies the best point into `buffer`.
///
/// # Safety
/// `buffer` must point to at least `buffer_len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn sta_result_best_point(
    result: *const StaResult,
    buffer: *mut f64,
    buffer_len: usize,
) -> StaStatus {
    let Some(result) = result.as_ref() else {
        return StaStatus::NullArgument;
    };
    if buffer.is_null() {
        return StaStatus::NullArgument;
    }
    let point = result.record.best_point.as_slice();
    if buffer_len < point.len() {
        return StaStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(point.as_ptr(), buffer, point.len());
    StaStatus::Ok
}

/// Gradient norm at the final point, when the problem has a gradient.
/// `flagged` (optional) is set when a finite-difference substitute stood
/// in for the analytic gradient at a nondifferentiable point.
///
/// # Safety
/// `out` must be valid; `flagged` may be null.
#[no_mangle]
pub unsafe extern "C" fn sta_result_grad_norm(
    result: *const StaResult,
    out: *mut f64,
    flagged: *mut bool,
) -> StaStatus {
    let Some(result) = result.as_ref() else {
        return StaStatus::NullArgument;
    };
    if out.is_null() {
        return StaStatus::NullArgument;
    }
    match result.grad_norm {
        Some(value) => {
            *out = value;
            if !flagged.is_null() {
                *flagged = result.grad_norm_flagged;
            }
            StaStatus::Ok
        }
        None => StaStatus::Unavailable,
    }
}

/// Number of recorded convergence-curve points.
///
/// # Safety
/// `result` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sta_result_curve_len(result: *const StaResult) -> usize {
    result.as_ref().map_or(0, |r| r.record.curve.len())
}

/// Reads one convergence-curve point.
///
/// # Safety
/// `evaluations` and `fbest` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sta_result_curve_point(
    result: *const StaResult,
    index: usize,
    evaluations: *mut u64,
    fbest: *mut f64,
) -> StaStatus {
    let Some(result) = result.as_ref() else {
        return StaStatus::NullArgument;
    };
    if evaluations.is_null() || fbest.is_null() {
        return StaStatus::NullArgument;
    }
    let Some(point) = result.record.curve.get(index) else {
        return StaStatus::InvalidArgument;
    };
    *evaluations = point.evaluations;
    *fbest = point.fbest;
    StaStatus::Ok
}
