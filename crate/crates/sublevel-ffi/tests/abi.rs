//! Exercises the exported entry points exactly as a C caller would: raw
//! pointers, status codes, and the last-error message channel.

use std::ffi::c_char;
use std::ptr;
use sublevel_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0u8; 256];
    let n = unsafe { sublevel_last_error_message(buf.as_mut_ptr() as *mut c_char, buf.len()) };
    buf.truncate(n.min(buf.len() - 1));
    String::from_utf8_lossy(&buf).into_owned()
}

#[test]
fn canonical_multiplier_through_abi() {
    let mut pair: *mut SublevelPair = ptr::null_mut();
    let status = unsafe { sublevel_pair_canonical(&mut pair) };
    assert_eq!(status, SublevelStatus::SublevelOk);
    assert!(!pair.is_null());

    let mut lambda = 0.0f64;
    let mut level = 0.0f64;
    let status =
        unsafe { sublevel_find_lambda_r(pair, 4.0, 1e-8, 0, &mut lambda, &mut level) };
    assert_eq!(status, SublevelStatus::SublevelOk);
    assert!((lambda - 0.25).abs() < 1e-4, "lambda = {lambda}");
    assert!((level + 2.0).abs() < 1e-4, "level = {level}");

    unsafe { sublevel_pair_free(pair) };
}

#[test]
fn identity_verification_through_abi() {
    let mut pair: *mut SublevelPair = ptr::null_mut();
    unsafe { sublevel_pair_canonical(&mut pair) };
    let gammas = [0.25f64, 0.5, 0.25];
    let mut space: *mut SublevelSpace = ptr::null_mut();
    let status = unsafe { sublevel_space_unit_mu(gammas.as_ptr(), gammas.len(), &mut space) };
    assert_eq!(status, SublevelStatus::SublevelOk);

    let mut report = SublevelReport {
        lhs: 0.0,
        rhs: 0.0,
        gap: 0.0,
        verdict: SublevelVerdict::SublevelVerdictFail,
        admissible: 0,
        has_lambda: 0,
        lambda_r: 0.0,
        has_jump: 0,
        jump_lo: 0.0,
        jump_hi: 0.0,
    };
    let status = unsafe { sublevel_verify_identity(space, pair, 1.0, 0, &mut report) };
    assert_eq!(status, SublevelStatus::SublevelOk);
    assert_eq!(report.verdict, SublevelVerdict::SublevelVerdictPass);
    assert_eq!(report.admissible, 1);
    assert_eq!(report.has_lambda, 1);
    assert!((report.rhs + 1.0).abs() < 1e-4, "rhs = {}", report.rhs);
    assert!(report.gap.abs() < 1e-4);

    unsafe {
        sublevel_space_free(space);
        sublevel_pair_free(pair);
    }
}

#[test]
fn counterexample_through_abi() {
    let mut pair: *mut SublevelPair = ptr::null_mut();
    unsafe { sublevel_pair_two_minima(&mut pair) };
    let gammas = [1.0f64];
    let mut space: *mut SublevelSpace = ptr::null_mut();
    unsafe { sublevel_space_unit_mu(gammas.as_ptr(), 1, &mut space) };

    let mut report = SublevelReport {
        lhs: 0.0,
        rhs: 0.0,
        gap: 0.0,
        verdict: SublevelVerdict::SublevelVerdictPass,
        admissible: 0,
        has_lambda: 0,
        lambda_r: 0.0,
        has_jump: 0,
        jump_lo: 0.0,
        jump_hi: 0.0,
    };
    let status = unsafe { sublevel_verify_identity(space, pair, 1.0, 0, &mut report) };
    assert_eq!(status, SublevelStatus::SublevelOk);
    assert_eq!(report.verdict, SublevelVerdict::SublevelVerdictCounterexample);
    assert_eq!(report.has_jump, 1);
    assert!(report.jump_lo >= 0.12 && report.jump_hi <= 0.13);

    unsafe {
        sublevel_space_free(space);
        sublevel_pair_free(pair);
    }
}

#[test]
fn error_paths_set_messages() {
    // NULL out pointer
    let status = unsafe { sublevel_pair_canonical(ptr::null_mut()) };
    assert_eq!(status, SublevelStatus::SublevelNullArgument);
    assert!(last_error().contains("NULL"));

    // invalid construction: zero vector
    let zeros = [0.0f64, 0.0];
    let mut pair: *mut SublevelPair = ptr::null_mut();
    let status =
        unsafe { sublevel_pair_linear_quadratic(zeros.as_ptr(), 2, 1.0, &mut pair) };
    assert_eq!(status, SublevelStatus::SublevelConstructionFailed);
    assert!(!last_error().is_empty());

    // invalid exponent for the log family
    let coeffs = [1.0f64];
    let exps = [5.0f64]; // must be < p
    let status = unsafe {
        sublevel_pair_log_family(1.0, coeffs.as_ptr(), exps.as_ptr(), 1, 2.0, 0.0, &mut pair)
    };
    assert_eq!(status, SublevelStatus::SublevelConstructionFailed);

    // inadmissible level: solver error surfaces as status + message
    let mut ok_pair: *mut SublevelPair = ptr::null_mut();
    unsafe { sublevel_pair_canonical(&mut ok_pair) };
    let status = unsafe {
        sublevel_find_lambda_r(ok_pair, -1.0, 1e-8, 0, ptr::null_mut(), ptr::null_mut())
    };
    assert_eq!(status, SublevelStatus::SublevelSolverFailed);
    unsafe { sublevel_pair_free(ok_pair) };

    // free of NULL is a no-op
    unsafe {
        sublevel_pair_free(ptr::null_mut());
        sublevel_space_free(ptr::null_mut());
    }
}

#[test]
fn exp_growth_family_through_abi() {
    let c = [1.2f64, 1.6];
    let mut pair: *mut SublevelPair = ptr::null_mut();
    let status = unsafe { sublevel_pair_exp_growth(c.as_ptr(), 2, 2.0, &mut pair) };
    assert_eq!(status, SublevelStatus::SublevelOk);

    // r = e − 1 so the closed-form level infimum is −‖c‖ = −2
    let mut level = 0.0f64;
    let r = std::f64::consts::E - 1.0;
    let status =
        unsafe { sublevel_find_lambda_r(pair, r, 1e-8, 0, ptr::null_mut(), &mut level) };
    assert_eq!(status, SublevelStatus::SublevelOk);
    assert!((level + 2.0).abs() < 1e-3, "level = {level}");
    unsafe { sublevel_pair_free(pair) };
}

#[test]
fn version_is_a_c_string() {
    let p = sublevel_version();
    assert!(!p.is_null());
    let s = unsafe { std::ffi::CStr::from_ptr(p) }.to_str().unwrap();
    assert!(!s.is_empty());
}
