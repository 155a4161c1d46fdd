//! Exercises the C ABI through the exported symbols, the way a foreign
//! binding would: opaque handles, status codes, JSON payloads, and string
//! ownership.

use dgatool_capi::*;
use std::ffi::{c_char, CStr, CString};

fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let s = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
    unsafe { dga_string_free(ptr) };
    s
}

fn from_catalog(key: &str) -> *mut DgaModel {
    let key = CString::new(key).unwrap();
    let mut model: *mut DgaModel = std::ptr::null_mut();
    let status = unsafe { dga_model_from_catalog(key.as_ptr(), &mut model) };
    assert_eq!(status, DgaStatus::Ok);
    assert!(!model.is_null());
    model
}

#[test]
fn catalog_handle_reports_dimensions() {
    let model = from_catalog("heis-n1");
    assert_eq!(dga_model_cap(model), 3);
    assert_eq!(dga_model_dim(model, 0), 1);
    assert_eq!(dga_model_dim(model, 1), 3);
    assert_eq!(dga_model_dim(model, 9), 0); // complete model: zero above cap

    let mut betti = [0u64; 4];
    let status = unsafe { dga_betti(model, 3, betti.as_mut_ptr(), betti.len()) };
    assert_eq!(status, DgaStatus::Ok);
    assert_eq!(betti, [1, 2, 2, 1]);
    unsafe { dga_model_free(model) };
}

#[test]
fn json_round_trip_through_the_abi() {
    let model = from_catalog("surface-g2");
    let mut out: *mut c_char = std::ptr::null_mut();
    let status = unsafe { dga_model_to_json(model, &mut out) };
    assert_eq!(status, DgaStatus::Ok);
    let text = take_string(out);
    unsafe { dga_model_free(model) };

    let json = CString::new(text).unwrap();
    let mut reparsed: *mut DgaModel = std::ptr::null_mut();
    let status = unsafe { dga_model_from_json(json.as_ptr(), &mut reparsed) };
    assert_eq!(status, DgaStatus::Ok);
    assert_eq!(dga_model_dim(reparsed, 1), 4);
    unsafe { dga_model_free(reparsed) };
}

#[test]
fn massey_and_regularity_payloads() {
    let model = from_catalog("sp5su5");
    let (a, b, c) = (
        CString::new("x6").unwrap(),
        CString::new("x6").unwrap(),
        CString::new("x10").unwrap(),
    );
    let mut out: *mut c_char = std::ptr::null_mut();
    let status = unsafe {
        dga_massey_triple_json(model, a.as_ptr(), b.as_ptr(), c.as_ptr(), &mut out)
    };
    assert_eq!(status, DgaStatus::Ok);
    let parsed: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(parsed["vanishes"], serde_json::Value::Bool(false));
    unsafe { dga_model_free(model) };

    let base = from_catalog("sp5su5-base");
    let seq: Vec<CString> = ["x6^2", "x10^2", "x6*x10"]
        .iter()
        .map(|s| CString::new(*s).unwrap())
        .collect();
    let ptrs: Vec<*const c_char> = seq.iter().map(|s| s.as_ptr()).collect();
    let mut out: *mut c_char = std::ptr::null_mut();
    let status =
        unsafe { dga_is_q_regular_json(base, ptrs.as_ptr(), ptrs.len(), 19, &mut out) };
    assert_eq!(status, DgaStatus::Ok);
    let parsed: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(parsed["verdict"], serde_json::Value::Bool(true));

    let mut out: *mut c_char = std::ptr::null_mut();
    let status =
        unsafe { dga_formality_json(base, ptrs.as_ptr(), ptrs.len(), 19, &mut out) };
    assert_eq!(status, DgaStatus::Ok);
    let parsed: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(parsed["verified"], serde_json::Value::Bool(true));
    unsafe { dga_model_free(base) };
}

#[test]
fn pd_and_resonance_payloads() {
    let model = from_catalog("link-g2");
    let mut out: *mut c_char = std::ptr::null_mut();
    let status = unsafe { dga_pd_check_json(model, 3, &mut out) };
    assert_eq!(status, DgaStatus::Ok);
    let parsed: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(parsed["isPdCdga"], serde_json::Value::Bool(true));

    let omega = CString::new(
        r#"{ "lie": "abelian1", "coeffs": [["1"],["0"],["0"],["0"],["0"]] }"#,
    )
    .unwrap();
    let mut out: *mut c_char = std::ptr::null_mut();
    let status = unsafe { dga_resonance_dims_json(model, omega.as_ptr(), 3, &mut out) };
    assert_eq!(status, DgaStatus::Ok);
    let parsed: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(parsed["dims"], serde_json::json!([0, 2, 2, 0]));
    unsafe { dga_model_free(model) };
}

#[test]
fn error_paths_set_status_and_message() {
    // unknown key
    let key = CString::new("no-such-entry").unwrap();
    let mut model: *mut DgaModel = std::ptr::null_mut();
    let status = unsafe { dga_model_from_catalog(key.as_ptr(), &mut model) };
    assert_eq!(status, DgaStatus::UnknownKey);
    let mut msg: *mut c_char = std::ptr::null_mut();
    let status = unsafe { dga_last_error_message(&mut msg) };
    assert_eq!(status, DgaStatus::Ok);
    assert!(take_string(msg).contains("no-such-entry"));

    // null arguments
    let status = unsafe { dga_model_from_json(std::ptr::null(), &mut model) };
    assert_eq!(status, DgaStatus::NullArgument);
    assert_eq!(dga_model_cap(std::ptr::null()), -1);

    // non-flat connection
    let model = from_catalog("link-g2");
    let omega = CString::new(
        r#"{ "lie": "sl2",
             "coeffs": [["0","1","0"],["0","0","1"],["0","0","0"],["0","0","0"],["0","0","0"]] }"#,
    )
    .unwrap();
    let mut out: *mut c_char = std::ptr::null_mut();
    let status = unsafe { dga_resonance_dims_json(model, omega.as_ptr(), 1, &mut out) };
    assert_eq!(status, DgaStatus::NotFlat);
    unsafe { dga_model_free(model) };
}

#[test]
fn generated_header_declares_the_surface() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("include")
        .join("dgatool.h");
    let text = std::fs::read_to_string(header).expect("cbindgen header exists");
    for symbol in [
        "dga_model_from_json",
        "dga_model_from_catalog",
        "dga_model_free",
        "dga_betti",
        "dga_massey_triple_json",
        "dga_is_q_regular_json",
        "dga_formality_json",
        "dga_pd_check_json",
        "dga_resonance_dims_json",
        "dga_last_error_message",
        "dga_string_free",
        "typedef struct DgaModel DgaModel",
    ] {
        assert!(text.contains(symbol), "header missing {symbol}");
    }
}
