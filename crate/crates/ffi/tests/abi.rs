use std::ffi::{CStr, CString};
use std::ptr;

use seqlab_ffi::*;

fn engine(id: &str) -> *mut SeqlabEngine {
    let id = CString::new(id).unwrap();
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { seqlab_engine_new(id.as_ptr(), &mut e) }, SeqlabStatus::Ok);
    e
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(seqlab_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn norms_through_handles() {
    let day = engine("day");
    let v = seqlab_vector_new();
    unsafe {
        assert_eq!(seqlab_vector_push(v, 1, 1.0), SeqlabStatus::Ok);
        let mut out = 0.0;
        assert_eq!(seqlab_norm(day, v, &mut out), SeqlabStatus::Ok);
        assert!((out - 0.5f64.sqrt()).abs() < 1e-15);

        assert_eq!(seqlab_vector_push(v, 2, 1.0), SeqlabStatus::Ok);
        assert_eq!(seqlab_vector_push(v, 3, 0.0), SeqlabStatus::Ok);
        assert_eq!(seqlab_vector_len(v), 2);
        let nak = engine("nakano:linear");
        assert_eq!(seqlab_norm(nak, v, &mut out), SeqlabStatus::Ok);
        assert!((out - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert_eq!(seqlab_engine_flags(nak), SEQLAB_FLAG_SYMMETRIC | SEQLAB_FLAG_UNCONDITIONAL | SEQLAB_FLAG_LATTICE);
        seqlab_engine_free(nak);

        assert_eq!(seqlab_subset_gap(day, v, 2, &mut out), SeqlabStatus::Ok);
        assert_eq!(out, 0.0);
        assert_eq!(seqlab_subset_sup(day, v, 1, &mut out), SeqlabStatus::Ok);
        assert!((out - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(seqlab_prefix_gap(day, v, 0, &mut out), SeqlabStatus::Ok);
        assert!(out > 0.0);
        seqlab_vector_free(v);
    }
    unsafe { seqlab_engine_free(day) };
}

#[test]
fn summing_envelope_and_name() {
    let e = engine("summing");
    let text = CString::new("1:1\n2:-1 # comment\n").unwrap();
    let mut v = ptr::null_mut();
    unsafe {
        assert_eq!(seqlab_vector_parse(text.as_ptr(), &mut v), SeqlabStatus::Ok);
        let mut out = 0.0;
        assert_eq!(seqlab_norm(e, v, &mut out), SeqlabStatus::Ok);
        assert_eq!(out, 1.0);
        assert_eq!(seqlab_envelope_norm(e, v, &mut out), SeqlabStatus::Ok);
        assert_eq!(out, 2.0);
        assert_eq!(seqlab_engine_flags(e), 0);
        let mut buf = [0 as std::ffi::c_char; 4];
        assert_eq!(seqlab_engine_name(e, buf.as_mut_ptr(), buf.len()), 7);
        assert_eq!(CStr::from_ptr(buf.as_ptr()).to_str().unwrap(), "sum");
        let mut lam = [0.0; 3];
        assert_eq!(seqlab_lambda(e, 3, lam.as_mut_ptr()), SeqlabStatus::BadEngine);
        seqlab_vector_free(v);
        seqlab_engine_free(e);
    }
}

#[test]
fn lambda_for_square() {
    let e = engine("orlicz:square");
    let mut lam = [0.0; 4];
    unsafe {
        assert_eq!(seqlab_lambda(e, 4, lam.as_mut_ptr()), SeqlabStatus::Ok);
        seqlab_engine_free(e);
    }
    for (i, l) in lam.iter().enumerate() {
        assert!((l - ((i + 1) as f64).sqrt()).abs() < 1e-12, "{i}: {l}");
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let id = CString::new("l2").unwrap();
        let mut e = ptr::null_mut();
        assert_eq!(seqlab_engine_new(id.as_ptr(), &mut e), SeqlabStatus::BadEngine);
        assert!(e.is_null());
        assert!(last_error().contains("l2"));

        let v = seqlab_vector_new();
        assert_eq!(seqlab_vector_push(v, 0, 1.0), SeqlabStatus::Parse);
        assert_eq!(seqlab_vector_push(v, 2, f64::NAN), SeqlabStatus::Parse);
        assert_eq!(seqlab_vector_push(v, 2, 1.0), SeqlabStatus::Ok);
        assert_eq!(seqlab_vector_push(v, 2, 1.0), SeqlabStatus::Parse);
        assert!(last_error().contains("more than once"));
        assert_eq!(seqlab_vector_push(v, 1, 1.0), SeqlabStatus::Parse);

        let bad = CString::new("1:1\n2:oops\n").unwrap();
        let mut w = ptr::null_mut();
        assert_eq!(seqlab_vector_parse(bad.as_ptr(), &mut w), SeqlabStatus::Parse);
        assert!(last_error().starts_with("line 2"));

        let summing = engine("summing");
        for i in 3..=20 {
            seqlab_vector_push(v, i, 1.0);
        }
        let mut out = 0.0;
        assert_eq!(seqlab_subset_sup(summing, v, 3, &mut out), SeqlabStatus::SizeLimit);
        assert_eq!(seqlab_norm(summing, ptr::null(), &mut out), SeqlabStatus::NullArgument);
        assert_eq!(seqlab_norm(summing, v, ptr::null_mut()), SeqlabStatus::NullArgument);
        assert_eq!(seqlab_vector_len(ptr::null()), 0);
        seqlab_vector_free(ptr::null_mut());
        seqlab_engine_free(ptr::null_mut());
        seqlab_vector_free(v);
        seqlab_engine_free(summing);
    }
    assert_eq!(unsafe { CStr::from_ptr(seqlab_version()) }.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
