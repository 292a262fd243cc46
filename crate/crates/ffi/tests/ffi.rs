use std::ffi::{CStr, CString};
use std::ptr;

use rankcrit_ffi::*;

unsafe fn take(r: *mut RcRational) -> String {
    let s = rc_rational_to_string(r);
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    rc_string_free(s);
    rc_rational_free(r);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(rc_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn formulas_through_handles() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(rc_density_3x3(2, &mut r), RcStatus::Ok);
        assert!((rc_rational_to_f64(r) - 192.0 / 788035.0).abs() < 1e-15);
        assert_eq!(take(r), "192/788035");

        assert_eq!(rc_qbinom(4, 2, 2, &mut r), RcStatus::Ok);
        assert_eq!(take(r), "35");
        assert_eq!(rc_mrd_lowerbound_count(3, 2, &mut r), RcStatus::Ok);
        assert_eq!(take(r), "192");
        assert_eq!(rc_rank_count(RcKind::Hermitian, 2, 1, 2, &mut r), RcStatus::Ok);
        assert_eq!(take(r), "5");
        assert_eq!(rc_tensor_ratio(2, 3, 2, &mut r), RcStatus::Ok);
        assert_eq!(take(r), "1241/1116");
        assert_eq!(rc_avg_density(3, 1, 2, 2, &mut r), RcStatus::Ok);
        assert_eq!(take(r), "5/7");
        assert_eq!(rc_lambda(3, 1, 3, 3, 2, &mut r), RcStatus::Ok);
        rc_rational_free(r);
        assert_eq!(rc_avg_density_rank(10, 6, 31, 10, 2, &mut r), RcStatus::Ok);
        assert!((rc_rational_to_f64(r) - 0.13522).abs() < 1e-4);
        rc_rational_free(r);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(rc_density_3x3(1, &mut r), RcStatus::InvalidArgument);
        assert!(last_error().contains("q must be at least 2"));
        assert_eq!(rc_density_3x3(2, ptr::null_mut()), RcStatus::NullPointer);
        assert_eq!(rc_density_bruteforce(RcKind::Full, 3, 3, 3, 3, 2, 1000, &mut r), RcStatus::BudgetExceeded);
        assert_eq!(rc_density_bruteforce(RcKind::Symmetric, 2, 3, 1, 2, 2, 0, &mut r), RcStatus::InvalidArgument);
        let mut f = ptr::null_mut();
        assert_eq!(rc_field_new(6, 1, &mut f), RcStatus::InvalidArgument);
        assert!(f.is_null());
        rc_rational_free(ptr::null_mut());
        rc_field_free(ptr::null_mut());
    }
}

#[test]
fn brute_force_density() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(rc_density_bruteforce(RcKind::Full, 3, 3, 3, 3, 2, 0, &mut r), RcStatus::Ok);
        assert_eq!(take(r), "192/788035");
        assert_eq!(rc_density_bruteforce(RcKind::Symmetric, 2, 2, 1, 2, 3, 0, &mut r), RcStatus::Ok);
        rc_rational_free(r);
    }
}

#[test]
fn field_arithmetic() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(rc_field_new(3, 2, &mut f), RcStatus::Ok);
        assert_eq!(rc_field_order(f), 9);
        let mut x = 0u32;
        for a in 1..9u32 {
            assert_eq!(rc_field_op(f, RcFieldOp::Div, 1, a, &mut x), RcStatus::Ok);
            let mut y = 0u32;
            assert_eq!(rc_field_op(f, RcFieldOp::Mul, a, x, &mut y), RcStatus::Ok);
            assert_eq!(y, 1);
            let (mut n, mut t) = (0u32, 0u32);
            assert_eq!(rc_field_norm_trace(f, a, &mut n, &mut t), RcStatus::Ok);
            assert!(n > 0 && n < 3 && t < 3);
            let mut fr = 0u32;
            assert_eq!(rc_field_frobenius(f, a, 2, &mut fr), RcStatus::Ok);
            assert_eq!(fr, a);
        }
        assert_eq!(rc_field_op(f, RcFieldOp::Div, 1, 0, &mut x), RcStatus::InvalidArgument);
        assert_eq!(rc_field_op(f, RcFieldOp::Add, 9, 0, &mut x), RcStatus::InvalidArgument);
        rc_field_free(f);
        assert_eq!(rc_field_order(ptr::null()), 0);
    }
}

#[test]
fn verify_report() {
    unsafe {
        let suite = CString::new("tensor").unwrap();
        let mut report = ptr::null_mut();
        assert_eq!(rc_verify(suite.as_ptr(), 0, &mut report), RcStatus::Ok);
        let text = CStr::from_ptr(report).to_str().unwrap().to_string();
        rc_string_free(report);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["check"].as_array().unwrap().len(), 3);

        let mut report = ptr::null_mut();
        assert_eq!(rc_verify(suite.as_ptr(), 10, &mut report), RcStatus::Ok);
        assert!(CStr::from_ptr(report).to_str().unwrap().contains("SKIPPED(budget)"));
        rc_string_free(report);

        let bad = CString::new("nope").unwrap();
        let mut report = ptr::null_mut();
        assert_eq!(rc_verify(bad.as_ptr(), 0, &mut report), RcStatus::InvalidArgument);
        assert!(report.is_null());
        assert!(last_error().contains("unknown suite"));
    }
}

#[test]
fn header_lists_every_export() {
    let header = include_str!("../include/rankcrit.h");
    let src = include_str!("../src/lib.rs");
    for line in src.lines().filter(|l| l.contains("extern \"C\" fn rc_")) {
        let name = line.split("fn ").nth(1).unwrap().split('(').next().unwrap();
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
}
