use std::ffi::{c_char, CStr, CString};
use std::ptr;

use padic_gkz_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { gkz_string_free(s) };
    out
}

fn last_error() -> String {
    let e = gkz_last_error();
    assert!(!e.is_null());
    unsafe { CStr::from_ptr(e) }.to_str().unwrap().to_string()
}

fn example1() -> *mut GkzConfig {
    let cols = [3i64, 0, 0, 3, 2, 2];
    let mut cfg = ptr::null_mut();
    assert_eq!(unsafe { gkz_config_new(cols.as_ptr(), 2, 3, &mut cfg) }, GkzStatus::Ok);
    cfg
}

#[test]
fn config_handle() {
    let cfg = example1();
    assert_eq!(unsafe { gkz_config_dim(cfg) }, 2);
    assert_eq!(unsafe { gkz_config_num_columns(cfg) }, 3);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { gkz_relation_lattice_json(cfg, &mut out) }, GkzStatus::Ok);
    assert_eq!(take(out), "[[2,2,-3]]");
    unsafe { gkz_config_free(cfg) };
    assert_eq!(unsafe { gkz_config_dim(ptr::null()) }, 0);
}

#[test]
fn duplicate_columns_rejected() {
    let cols = [1i64, 0, 1, 0];
    let mut cfg = ptr::null_mut();
    let st = unsafe { gkz_config_new(cols.as_ptr(), 2, 2, &mut cfg) };
    assert_eq!(st, GkzStatus::InvalidArgument);
    assert!(cfg.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn weight_and_valuation() {
    let r = CString::new("-1/4, -1/4, -1/8").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { gkz_weight(r.as_ptr(), 3, &mut out) }, GkzStatus::Ok);
    assert_eq!(take(out), "5/2");
    let x = CString::new("-15/32").unwrap();
    assert_eq!(unsafe { gkz_ord_p(x.as_ptr(), 2, &mut out) }, GkzStatus::Ok);
    assert_eq!(take(out), "-5");
    let zero = CString::new("0").unwrap();
    assert_eq!(unsafe { gkz_ord_p(zero.as_ptr(), 5, &mut out) }, GkzStatus::Ok);
    assert_eq!(take(out), "inf");
    assert_eq!(unsafe { gkz_ord_p(zero.as_ptr(), 6, &mut out) }, GkzStatus::NotPrime);
    assert_eq!(unsafe { gkz_ord_p(ptr::null(), 5, &mut out) }, GkzStatus::NullPointer);
    let bad = CString::new("1/0").unwrap();
    assert_eq!(unsafe { gkz_ord_p(bad.as_ptr(), 5, &mut out) }, GkzStatus::Parse);
    assert!(last_error().contains("zero denominator"));
}

#[test]
fn verdict_and_search() {
    let cfg = example1();
    let v = CString::new("0,0,-1/2").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { gkz_verdict_json(cfg, v.as_ptr(), ptr::null(), 3, 3, &mut out) }, GkzStatus::Ok);
    let vd: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(vd["outcome"]["kind"], "integral-up-to");
    assert_eq!(vd["certificate"]["kind"], "certified");
    assert_eq!(vd["w_v"], "1");
    let beta = CString::new("-1,-1").unwrap();
    assert_eq!(unsafe { gkz_search_json(cfg, beta.as_ptr(), 3, &mut out) }, GkzStatus::Ok);
    let s: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(s["w"], "1");
    assert_eq!(s["v"], serde_json::json!(["0", "0", "-1/2"]));
    unsafe { gkz_config_free(cfg) };
}

#[test]
fn classical_and_jobs() {
    let theta = CString::new("5/13, 6/13").unwrap();
    let sigma = CString::new("1/2").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { gkz_classical_json(theta.as_ptr(), sigma.as_ptr(), 3, 200, &mut out) },
        GkzStatus::Ok
    );
    let c: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(c["shifted_domination"], true);
    assert_eq!(c["digit_domination"], false);
    assert_eq!(c["min_valuation"], "0");

    let cmd = CString::new("verdict").unwrap();
    let job = CString::new("preset = \"example1\"\np = 7\nv = [\"-2/3\", \"-2/3\", 0]\n").unwrap();
    let mut exit = 0u8;
    assert_eq!(unsafe { gkz_run_job_json(cmd.as_ptr(), job.as_ptr(), &mut out, &mut exit) }, GkzStatus::Ok);
    assert_eq!(exit, 1);
    let r: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(r["result"]["outcome"]["term"]["valuation"], "-1/3");
}

#[test]
fn header_is_generated() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/padic_gkz.h")).unwrap();
    for name in [
        "gkz_config_new",
        "gkz_config_free",
        "gkz_verdict_json",
        "gkz_search_json",
        "gkz_string_free",
        "gkz_last_error",
        "GKZ_STATUS_CAP_EXCEEDED",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
