//! C ABI for the dgatool library.
//!
//! Models are opaque handles created from JSON or from catalog keys and
//! released with [`dga_model_free`]. Functions return a [`DgaStatus`];
//! structured results come back as JSON strings allocated by the library
//! and released with [`dga_string_free`]. The most recent error message is
//! available per thread via [`dga_last_error_message`].

use dgatool::catalog;
use dgatool::cohomology::{cohomology, massey_triple};
use dgatool::dga::{Element, TableDga};
use dgatool::error::DgaError;
use dgatool::io::{model_from_json, model_to_json, OmegaFile};
use dgatool::jumploci::{is_flat, resonance_dims, FlatConnection, LieKind};
use dgatool::pd::pd_check;
use dgatool::regularity::{formality_certificate, is_q_regular};
use serde_json::json;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DgaStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ValidationError = 4,
    CapExceeded = 5,
    NotFlat = 6,
    UnknownKey = 7,
    ComputeError = 8,
}

/// Opaque model handle.
pub struct DgaModel {
    inner: TableDga,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(err: &DgaError) -> DgaStatus {
    set_error(&err.to_string());
    match err {
        DgaError::Parse(_) | DgaError::DegreeMismatch(_) => DgaStatus::ParseError,
        DgaError::AxiomViolation { .. } | DgaError::ShapeMismatch(_) => DgaStatus::ValidationError,
        DgaError::CapExceeded { .. } => DgaStatus::CapExceeded,
        DgaError::NotFlat => DgaStatus::NotFlat,
        DgaError::UnknownCatalogKey(_) => DgaStatus::UnknownKey,
        _ => DgaStatus::ComputeError,
    }
}

/// # Safety
/// `ptr` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, DgaStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(DgaStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        DgaStatus::InvalidUtf8
    })
}

fn write_string(out: *mut *mut c_char, value: String) -> DgaStatus {
    if out.is_null() {
        set_error("null output pointer");
        return DgaStatus::NullArgument;
    }
    match CString::new(value) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            DgaStatus::Ok
        }
        Err(_) => {
            set_error("result contained an interior NUL byte");
            DgaStatus::ComputeError
        }
    }
}

fn model_ref<'a>(model: *const DgaModel) -> Result<&'a TableDga, DgaStatus> {
    if model.is_null() {
        set_error("null model handle");
        return Err(DgaStatus::NullArgument);
    }
    Ok(unsafe { &(*model).inner })
}

fn parse_element(dga: &TableDga, expr: &str) -> Result<Element, DgaStatus> {
    catalog::element_from_expr(dga, expr).map_err(|e| status_of(&e))
}

/// Returns the most recent error message on this thread, or null when none
/// has been recorded. Free with `dga_string_free`.
///
/// # Safety
/// `out` must be a valid pointer to a `char *` slot.
#[no_mangle]
pub unsafe extern "C" fn dga_last_error_message(out: *mut *mut c_char) -> DgaStatus {
    if out.is_null() {
        return DgaStatus::NullArgument;
    }
    let msg = LAST_ERROR.with(|slot| slot.borrow().clone());
    match msg {
        Some(c) => {
            *out = c.into_raw();
            DgaStatus::Ok
        }
        None => {
            *out = std::ptr::null_mut();
            DgaStatus::Ok
        }
    }
}

/// Frees a string previously returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from a dgatool function.
#[no_mangle]
pub unsafe extern "C" fn dga_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a model from JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn dga_model_from_json(
    json: *const c_char,
    out: *mut *mut DgaModel,
) -> DgaStatus {
    let text = match read_str(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    if out.is_null() {
        set_error("null output pointer");
        return DgaStatus::NullArgument;
    }
    match model_from_json(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(DgaModel { inner }));
            DgaStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Builds a named catalog model.
///
/// # Safety
/// `key` must be a NUL-terminated string; `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn dga_model_from_catalog(
    key: *const c_char,
    out: *mut *mut DgaModel,
) -> DgaStatus {
    let key = match read_str(key) {
        Ok(t) => t,
        Err(s) => return s,
    };
    if out.is_null() {
        set_error("null output pointer");
        return DgaStatus::NullArgument;
    }
    match catalog::build(key) {
        Ok(model) => {
            *out = Box::into_raw(Box::new(DgaModel {
                inner: model.dga().clone(),
            }));
            DgaStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a model handle.
///
/// # Safety
/// `model` must be null or a pointer from a dgatool constructor, not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn dga_model_free(model: *mut DgaModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Degree cap of the model, or -1 on a null handle.
#[no_mangle]
pub extern "C" fn dga_model_cap(model: *const DgaModel) -> i64 {
    match model_ref(model) {
        Ok(dga) => dga.cap() as i64,
        Err(_) => -1,
    }
}

/// Dimension of one degree, or -1 when unknown (above the cap of an
/// incomplete model) or on a null handle.
#[no_mangle]
pub extern "C" fn dga_model_dim(model: *const DgaModel, degree: u32) -> i64 {
    match model_ref(model) {
        Ok(dga) => {
            let degree = degree as usize;
            if degree <= dga.cap() {
                dga.dim(degree) as i64
            } else if dga.is_complete() {
                0
            } else {
                -1
            }
        }
        Err(_) => -1,
    }
}

/// Serializes the model back to JSON.
///
/// # Safety
/// `model` must be a live handle; `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn dga_model_to_json(
    model: *const DgaModel,
    out: *mut *mut c_char,
) -> DgaStatus {
    let dga = match model_ref(model) {
        Ok(d) => d,
        Err(s) => return s,
    };
    match model_to_json(dga) {
        Ok(text) => write_string(out, text),
        Err(e) => status_of(&e),
    }
}

/// Betti numbers in degrees `0..=upto`, written into a caller buffer of at
/// least `upto + 1` entries.
///
/// # Safety
/// `model` must be a live handle and `out` must point at `len` writable
/// `uint64_t` slots.
#[no_mangle]
pub unsafe extern "C" fn dga_betti(
    model: *const DgaModel,
    upto: u32,
    out: *mut u64,
    len: usize,
) -> DgaStatus {
    let dga = match model_ref(model) {
        Ok(d) => d,
        Err(s) => return s,
    };
    if out.is_null() {
        set_error("null output pointer");
        return DgaStatus::NullArgument;
    }
    if len < upto as usize + 1 {
        set_error("output buffer too small");
        return DgaStatus::NullArgument;
    }
    match cohomology(dga, upto as usize) {
        Ok(h) => {
            for (i, b) in h.betti.iter().enumerate() {
                *out.add(i) = *b as u64;
            }
            DgaStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Triple Massey product of three cocycle expressions; the result is a
/// JSON object with the representative, indeterminacy dimension, and the
/// vanishing verdict.
///
/// # Safety
/// All strings NUL-terminated; `model` live; `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn dga_massey_triple_json(
    model: *const DgaModel,
    a: *const c_char,
    b: *const c_char,
    c: *const c_char,
    out: *mut *mut c_char,
) -> DgaStatus {
    let dga = match model_ref(model) {
        Ok(d) => d,
        Err(s) => return s,
    };
    let (ea, eb, ec) = match (read_str(a), read_str(b), read_str(c)) {
        (Ok(x), Ok(y), Ok(z)) => (x, y, z),
        (Err(s), _, _) | (_, Err(s), _) | (_, _, Err(s)) => return s,
    };
    let (ea, eb, ec) = match (
        parse_element(dga, ea),
        parse_element(dga, eb),
        parse_element(dga, ec),
    ) {
        (Ok(x), Ok(y), Ok(z)) => (x, y, z),
        (Err(s), _, _) | (_, Err(s), _) | (_, _, Err(s)) => return s,
    };
    match massey_triple(dga, &ea, &eb, &ec) {
        Ok(res) => write_string(
            out,
            json!({
                "degree": res.degree,
                "representative": dga.format_element(&res.representative),
                "indeterminacy_dim": res.indeterminacy.len(),
                "vanishes": res.vanishes,
            })
            .to_string(),
        ),
        Err(e) => status_of(&e),
    }
}

unsafe fn read_sequence(
    dga: &TableDga,
    seq: *const *const c_char,
    seq_len: usize,
) -> Result<Vec<Element>, DgaStatus> {
    if seq.is_null() && seq_len > 0 {
        set_error("null sequence pointer");
        return Err(DgaStatus::NullArgument);
    }
    let mut elems = Vec::with_capacity(seq_len);
    for i in 0..seq_len {
        let s = read_str(*seq.add(i))?;
        elems.push(parse_element(dga, s)?);
    }
    Ok(elems)
}

/// Regular-sequence verdict as JSON (`verdict`, optional `witness`).
///
/// # Safety
/// `model` live; `seq` points at `seq_len` NUL-terminated strings; `out`
/// a valid slot.
#[no_mangle]
pub unsafe extern "C" fn dga_is_q_regular_json(
    model: *const DgaModel,
    seq: *const *const c_char,
    seq_len: usize,
    q: u32,
    out: *mut *mut c_char,
) -> DgaStatus {
    let dga = match model_ref(model) {
        Ok(d) => d,
        Err(s) => return s,
    };
    let elems = match read_sequence(dga, seq, seq_len) {
        Ok(e) => e,
        Err(s) => return s,
    };
    match is_q_regular(dga, &elems, q as usize) {
        Ok(rep) => write_string(
            out,
            json!({
                "q": rep.q,
                "verdict": rep.verdict,
                "witness": rep.failure.as_ref().map(|f| f.witness_label.clone()),
                "failed_index": rep.failure.as_ref().map(|f| f.index),
            })
            .to_string(),
        ),
        Err(e) => status_of(&e),
    }
}

/// Formality certificate as JSON (`regular`, `verified`, `quotient_dims`).
///
/// # Safety
/// Same contract as `dga_is_q_regular_json`.
#[no_mangle]
pub unsafe extern "C" fn dga_formality_json(
    model: *const DgaModel,
    seq: *const *const c_char,
    seq_len: usize,
    q: u32,
    out: *mut *mut c_char,
) -> DgaStatus {
    let dga = match model_ref(model) {
        Ok(d) => d,
        Err(s) => return s,
    };
    let elems = match read_sequence(dga, seq, seq_len) {
        Ok(e) => e,
        Err(s) => return s,
    };
    match formality_certificate(dga, &elems, q as usize) {
        Ok(cert) => write_string(
            out,
            json!({
                "regular": cert.regularity.verdict,
                "verified": cert.verified,
                "quotient_dims": cert.quotient.dims(),
            })
            .to_string(),
        ),
        Err(e) => status_of(&e),
    }
}

/// Poincaré duality certificate as JSON.
///
/// # Safety
/// `model` live; `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn dga_pd_check_json(
    model: *const DgaModel,
    n: u32,
    out: *mut *mut c_char,
) -> DgaStatus {
    let dga = match model_ref(model) {
        Ok(d) => d,
        Err(s) => return s,
    };
    match pd_check(dga, n as usize) {
        Ok(cert) => write_string(
            out,
            json!({
                "n": cert.n,
                "isPd": cert.is_pd,
                "isPdCdga": cert.is_pd_cdga,
                "failure": cert.failure,
            })
            .to_string(),
        ),
        Err(e) => status_of(&e),
    }
}

/// Twisted cohomology dimensions of a flat connection given as an omega
/// JSON document (`{"lie": ..., "coeffs": [[...]]}`).
///
/// # Safety
/// `model` live; `omega_json` NUL-terminated; `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn dga_resonance_dims_json(
    model: *const DgaModel,
    omega_json: *const c_char,
    upto: u32,
    out: *mut *mut c_char,
) -> DgaStatus {
    let dga = match model_ref(model) {
        Ok(d) => d,
        Err(s) => return s,
    };
    let text = match read_str(omega_json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let parsed: OmegaFile = match serde_json::from_str(text) {
        Ok(p) => p,
        Err(e) => {
            set_error(&format!("bad omega JSON: {e}"));
            return DgaStatus::ParseError;
        }
    };
    let kind = match LieKind::parse(&parsed.lie) {
        Ok(k) => k,
        Err(e) => return status_of(&e),
    };
    let coeffs = match parsed.to_matrix() {
        Ok(m) => m,
        Err(e) => return status_of(&e),
    };
    let omega = match FlatConnection::new(dga, kind, coeffs) {
        Ok(o) => o,
        Err(e) => return status_of(&e),
    };
    match is_flat(dga, &omega) {
        Ok(true) => {}
        Ok(false) => {
            set_error("connection is not flat");
            return DgaStatus::NotFlat;
        }
        Err(e) => return status_of(&e),
    }
    match resonance_dims(dga, &omega, upto as usize) {
        Ok(dims) => write_string(out, json!({ "dims": dims }).to_string()),
        Err(e) => status_of(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping_distinguishes_errors() {
        assert_eq!(
            status_of(&DgaError::UnknownCatalogKey("x".into())),
            DgaStatus::UnknownKey
        );
        assert_eq!(
            status_of(&DgaError::CapExceeded { needed: 3, cap: 2 }),
            DgaStatus::CapExceeded
        );
    }
}
