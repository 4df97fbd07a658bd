//! C ABI for the verification toolkit: opaque handles for functional pairs
//! and measure spaces, status codes, and a thread-local last-error message.
//! The generated header lands in `include/sublevel.h`.

use std::cell::RefCell;
use std::ffi::c_char;

use sublevel::functionals::{
    eta_expm1, make_canonical_instance, make_jensen_pair, make_two_minima_instance, make_log_family_f,
    make_exp_growth_instance, make_linear_quadratic_instance, FunctionalPair,
};
use sublevel::measure::{verify_identity, Tolerances, Verdict, WeightedMeasureSpace};
use sublevel::scalarize::find_lambda_r;
use sublevel::SearchConfig;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SublevelStatus {
    SublevelOk = 0,
    SublevelNullArgument = 1,
    SublevelInvalidArgument = 2,
    SublevelConstructionFailed = 3,
    SublevelSolverFailed = 4,
}

/// Verdict of an identity verification.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SublevelVerdict {
    SublevelVerdictPass = 0,
    SublevelVerdictFail = 1,
    SublevelVerdictCounterexample = 2,
}

/// Flat view of a verification report.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct SublevelReport {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub verdict: SublevelVerdict,
    /// 1 iff r lies in the admissible range.
    pub admissible: i32,
    /// 1 iff a level-set multiplier was found (then lambda_r is valid).
    pub has_lambda: i32,
    pub lambda_r: f64,
    /// 1 iff a uniqueness failure (level jump) was detected; the jump
    /// bracket is [jump_lo, jump_hi].
    pub has_jump: i32,
    pub jump_lo: f64,
    pub jump_hi: f64,
}

/// Opaque functional pair handle.
pub struct SublevelPair {
    inner: FunctionalPair,
}

/// Opaque measure space handle.
pub struct SublevelSpace {
    inner: WeightedMeasureSpace,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `cap`). Returns the full message length in bytes.
///
/// # Safety
/// `buf` must point to `cap` writable bytes, or be NULL (then only the
/// required length is returned).
#[no_mangle]
pub unsafe extern "C" fn sublevel_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            unsafe {
                std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, n);
                *buf.add(n) = 0;
            }
        }
        bytes.len()
    })
}

fn export_pair(pair: FunctionalPair, out: *mut *mut SublevelPair) -> SublevelStatus {
    if out.is_null() {
        set_error("out pointer is NULL");
        return SublevelStatus::SublevelNullArgument;
    }
    let boxed = Box::new(SublevelPair { inner: pair });
    unsafe { *out = Box::into_raw(boxed) };
    SublevelStatus::SublevelOk
}

unsafe fn slice_arg<'a>(ptr: *const f64, len: usize) -> Option<&'a [f64]> {
    if ptr.is_null() || len == 0 {
        None
    } else {
        Some(unsafe { std::slice::from_raw_parts(ptr, len) })
    }
}

/// φ = −y, ψ = y² on the line.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sublevel_pair_canonical(out: *mut *mut SublevelPair) -> SublevelStatus {
    export_pair(make_canonical_instance(), out)
}

/// The piecewise counterexample pair with two global minima at λ = 1/8.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sublevel_pair_two_minima(out: *mut *mut SublevelPair) -> SublevelStatus {
    export_pair(make_two_minima_instance(), out)
}

/// Linear φ = ⟨c, ·⟩ against ψ = e^{‖y‖^q} − 1.
///
/// # Safety
/// `c` must point to `len` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sublevel_pair_exp_growth(
    c: *const f64,
    len: usize,
    q: f64,
    out: *mut *mut SublevelPair,
) -> SublevelStatus {
    let Some(c) = (unsafe { slice_arg(c, len) }) else {
        set_error("c must be a non-empty array");
        return SublevelStatus::SublevelNullArgument;
    };
    match make_exp_growth_instance(c.to_vec(), eta_expm1(), q) {
        Ok(pair) => export_pair(pair, out),
        Err(e) => {
            set_error(e.to_string());
            SublevelStatus::SublevelConstructionFailed
        }
    }
}

/// Linear φ = ⟨g, ·⟩ against ψ = ‖y‖²/2, multiplier interval ]l, ∞[.
///
/// # Safety
/// `g` must point to `len` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sublevel_pair_linear_quadratic(
    g: *const f64,
    len: usize,
    l: f64,
    out: *mut *mut SublevelPair,
) -> SublevelStatus {
    let Some(g) = (unsafe { slice_arg(g, len) }) else {
        set_error("g must be a non-empty array");
        return SublevelStatus::SublevelNullArgument;
    };
    match make_linear_quadratic_instance(g.to_vec(), l) {
        Ok(pair) => export_pair(pair, out),
        Err(e) => {
            set_error(e.to_string());
            SublevelStatus::SublevelConstructionFailed
        }
    }
}

/// The concave-growth family f = a0·log(1+(y⁺)^p) + Σ aᵢ(y⁺)^{qᵢ}, paired as
/// (−f, |y|^p) with multiplier interval ]δ, ∞[.
///
/// # Safety
/// `coeffs` and `exponents` must each point to `terms` doubles (or both be
/// NULL with `terms` = 0); `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sublevel_pair_log_family(
    a0: f64,
    coeffs: *const f64,
    exponents: *const f64,
    terms: usize,
    p: f64,
    delta: f64,
    out: *mut *mut SublevelPair,
) -> SublevelStatus {
    let (cs, qs): (Vec<f64>, Vec<f64>) = if terms == 0 {
        (Vec::new(), Vec::new())
    } else {
        let (Some(cs), Some(qs)) =
            (unsafe { slice_arg(coeffs, terms) }, unsafe { slice_arg(exponents, terms) })
        else {
            set_error("coeffs/exponents must point to `terms` doubles");
            return SublevelStatus::SublevelNullArgument;
        };
        (cs.to_vec(), qs.to_vec())
    };
    match make_log_family_f(a0, &cs, &qs, p) {
        Ok(f) => export_pair(make_jensen_pair(f, p, delta, "log-family"), out),
        Err(e) => {
            set_error(e.to_string());
            SublevelStatus::SublevelConstructionFailed
        }
    }
}

/// Releases a pair handle. NULL is a no-op.
///
/// # Safety
/// `pair` must be a handle returned by a constructor, released once.
#[no_mangle]
pub unsafe extern "C" fn sublevel_pair_free(pair: *mut SublevelPair) {
    if !pair.is_null() {
        drop(unsafe { Box::from_raw(pair) });
    }
}

/// Atoms with μ = 1 and the given γ weights.
///
/// # Safety
/// `gammas` must point to `len` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sublevel_space_unit_mu(
    gammas: *const f64,
    len: usize,
    out: *mut *mut SublevelSpace,
) -> SublevelStatus {
    let Some(gs) = (unsafe { slice_arg(gammas, len) }) else {
        set_error("gammas must be a non-empty array");
        return SublevelStatus::SublevelNullArgument;
    };
    if out.is_null() {
        set_error("out pointer is NULL");
        return SublevelStatus::SublevelNullArgument;
    }
    match WeightedMeasureSpace::unit_mu(gs) {
        Ok(space) => {
            unsafe { *out = Box::into_raw(Box::new(SublevelSpace { inner: space })) };
            SublevelStatus::SublevelOk
        }
        Err(e) => {
            set_error(e.to_string());
            SublevelStatus::SublevelConstructionFailed
        }
    }
}

/// Uniform interval discretization with γ ≡ 1.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sublevel_space_uniform_interval(
    cells: usize,
    length: f64,
    out: *mut *mut SublevelSpace,
) -> SublevelStatus {
    if out.is_null() {
        set_error("out pointer is NULL");
        return SublevelStatus::SublevelNullArgument;
    }
    match WeightedMeasureSpace::uniform_interval(cells, length) {
        Ok(space) => {
            unsafe { *out = Box::into_raw(Box::new(SublevelSpace { inner: space })) };
            SublevelStatus::SublevelOk
        }
        Err(e) => {
            set_error(e.to_string());
            SublevelStatus::SublevelConstructionFailed
        }
    }
}

/// Releases a space handle. NULL is a no-op.
///
/// # Safety
/// `space` must be a handle returned by a constructor, released once.
#[no_mangle]
pub unsafe extern "C" fn sublevel_space_free(space: *mut SublevelSpace) {
    if !space.is_null() {
        drop(unsafe { Box::from_raw(space) });
    }
}

/// Finds the level-set multiplier λ_r and the level-set infimum of φ.
///
/// # Safety
/// `pair` must be a live handle; `lambda_out`/`level_infimum_out` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn sublevel_find_lambda_r(
    pair: *const SublevelPair,
    r: f64,
    tol: f64,
    seed: u64,
    lambda_out: *mut f64,
    level_infimum_out: *mut f64,
) -> SublevelStatus {
    let Some(pair) = (unsafe { pair.as_ref() }) else {
        set_error("pair handle is NULL");
        return SublevelStatus::SublevelNullArgument;
    };
    if !(tol > 0.0) || !r.is_finite() {
        set_error("need finite r and tol > 0");
        return SublevelStatus::SublevelInvalidArgument;
    }
    let search = SearchConfig { seed, ..SearchConfig::default() };
    match find_lambda_r(&pair.inner, r, tol, &search) {
        Ok(res) => {
            unsafe {
                if !lambda_out.is_null() {
                    *lambda_out = res.lambda_r;
                }
                if !level_infimum_out.is_null() {
                    *level_infimum_out = res.minimum.phi_value;
                }
            }
            SublevelStatus::SublevelOk
        }
        Err(e) => {
            set_error(e.to_string());
            SublevelStatus::SublevelSolverFailed
        }
    }
}

/// Verifies the sub-level identity on a discrete space and fills `report`.
/// A failed identity is still SUBLEVEL_OK with verdict fail/counterexample;
/// only pipeline errors return a non-OK status.
///
/// # Safety
/// `space` and `pair` must be live handles; `report` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sublevel_verify_identity(
    space: *const SublevelSpace,
    pair: *const SublevelPair,
    r: f64,
    seed: u64,
    report: *mut SublevelReport,
) -> SublevelStatus {
    let (Some(space), Some(pair)) = (unsafe { space.as_ref() }, unsafe { pair.as_ref() }) else {
        set_error("space/pair handle is NULL");
        return SublevelStatus::SublevelNullArgument;
    };
    if report.is_null() {
        set_error("report pointer is NULL");
        return SublevelStatus::SublevelNullArgument;
    }
    let search = SearchConfig { seed, ..SearchConfig::default() };
    match verify_identity(&space.inner, &pair.inner, r, &Tolerances::default(), &search) {
        Ok(rep) => {
            let verdict = match rep.verdict {
                Verdict::Pass => SublevelVerdict::SublevelVerdictPass,
                Verdict::Fail => SublevelVerdict::SublevelVerdictFail,
                Verdict::CounterexampleConfirmed => {
                    SublevelVerdict::SublevelVerdictCounterexample
                }
            };
            let (has_jump, jump_lo, jump_hi) = match rep.hypothesis_violation {
                Some((lo, hi)) => (1, lo, hi),
                None => (0, 0.0, 0.0),
            };
            unsafe {
                *report = SublevelReport {
                    lhs: rep.lhs,
                    rhs: rep.rhs,
                    gap: rep.gap,
                    verdict,
                    admissible: rep.admissible as i32,
                    has_lambda: rep.lambda_r.is_some() as i32,
                    lambda_r: rep.lambda_r.unwrap_or(f64::NAN),
                    has_jump,
                    jump_lo,
                    jump_hi,
                };
            }
            SublevelStatus::SublevelOk
        }
        Err(e) => {
            set_error(e.to_string());
            SublevelStatus::SublevelSolverFailed
        }
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sublevel_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
