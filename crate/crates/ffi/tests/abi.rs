use std::ffi::{c_char, CStr, CString};
use std::ptr;

use heightlab_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(hl_last_error()) }.to_string_lossy().into_owned()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    hl_string_free(s);
    out
}

unsafe fn curve(coeffs: &str) -> *mut HlCurve {
    let mut c = ptr::null_mut();
    assert_eq!(hl_curve_parse(cs(coeffs).as_ptr(), &mut c), HlStatus::Ok, "{}", last_error());
    c
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(hl_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn j_invariant_and_reduction() {
    unsafe {
        let c = curve("0,0,1,-1,0");
        let mut j = ptr::null_mut();
        assert_eq!(hl_curve_j_invariant(c, &mut j), HlStatus::Ok);
        assert_eq!(take(j), "110592/37");
        let mut info = std::mem::zeroed::<HlReductionInfo>();
        assert_eq!(hl_curve_reduction(c, 37, &mut info), HlStatus::Ok);
        assert_eq!(info.kind, HlReduction::MultNonsplit);
        assert_eq!(info.component_index_n, 1);
        assert_eq!(info.conductor_exponent, 1);
        hl_curve_free(c);
    }
}

#[test]
fn height_of_multiples() {
    unsafe {
        let c = curve("-2,0");
        let mut p = ptr::null_mut();
        assert_eq!(hl_point_parse(c, cs("-1,1").as_ptr(), &mut p), HlStatus::Ok);
        let mut q = ptr::null_mut();
        assert_eq!(hl_point_mul(c, p, 3, &mut q), HlStatus::Ok);
        let (mut h1, mut h3) = (HlReal::default(), HlReal::default());
        assert_eq!(hl_canonical_height(c, p, 1e-9, &mut h1), HlStatus::Ok);
        assert_eq!(hl_canonical_height(c, q, 1e-9, &mut h3), HlStatus::Ok);
        assert!((h3.value - 9.0 * h1.value).abs() <= h3.error + 9.0 * h1.error + 1e-9);
        let mut hf = HlReal::default();
        assert_eq!(hl_lattes_height(c, cs("-1").as_ptr(), 1e-9, &mut hf), HlStatus::Ok);
        assert!((hf.value - 2.0 * h1.value).abs() < 1e-6);
        let mut s = ptr::null_mut();
        assert_eq!(hl_point_to_string(p, &mut s), HlStatus::Ok);
        assert_eq!(take(s), "-1,1");
        hl_point_free(q);
        hl_point_free(p);
        hl_curve_free(c);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(hl_curve_parse(cs("1,2,3").as_ptr(), &mut c), HlStatus::Parse);
        assert!(c.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(hl_curve_parse(cs("0,0").as_ptr(), &mut c), HlStatus::Input);
        assert_eq!(hl_curve_parse(ptr::null(), &mut c), HlStatus::NullArgument);

        let e = curve("0,1");
        let mut p = ptr::null_mut();
        assert_eq!(hl_point_parse(e, cs("1,1").as_ptr(), &mut p), HlStatus::Input);
        assert!(last_error().contains("not on the curve"));
        let mut h = HlReal::default();
        assert_eq!(hl_canonical_height(e, ptr::null(), 1e-6, &mut h), HlStatus::NullArgument);
        let mut b = HlReal::default();
        assert_eq!(hl_bound(e, 5, cs("99").as_ptr(), &mut b), HlStatus::Input);
        let bad = [0xffu8, 0];
        assert_eq!(hl_bound(e, 5, bad.as_ptr().cast(), &mut b), HlStatus::InvalidUtf8);
        hl_curve_free(e);

        let mut s = ptr::null_mut();
        assert_eq!(hl_counterexample_json(2, 1, &mut s), HlStatus::Input);
        // success clears the message
        assert_eq!(hl_curve_parse(cs("1,0").as_ptr(), &mut c), HlStatus::Ok);
        assert_eq!(last_error(), "");
        hl_curve_free(c);
    }
}

#[test]
fn bounds_through_the_abi() {
    unsafe {
        let c = curve("0,1,1,-7,5");
        let (mut b41, mut b42) = (HlReal::default(), HlReal::default());
        assert_eq!(hl_bound(c, 7, cs("41").as_ptr(), &mut b41), HlStatus::Ok);
        assert_eq!(hl_bound(c, 7, cs("42").as_ptr(), &mut b42), HlStatus::Ok);
        assert!(b41.value > 0.0);
        assert!((b41.value / b42.value - 2.0).abs() < 1e-9);
        let mut js = ptr::null_mut();
        assert_eq!(hl_bound_json(c, 7, cs("53").as_ptr(), &mut js), HlStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(js)).unwrap();
        assert_eq!(v["variant"], "Additive53");
        hl_curve_free(c);
    }
}

#[test]
fn counterexample_json() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(hl_counterexample_json(5, 2, &mut s), HlStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        let levels = v["levels"].as_array().unwrap();
        assert_eq!(levels.len(), 3);
        assert_eq!(levels[2]["ratio"], "1/16");
    }
}

#[test]
fn free_accepts_null() {
    unsafe {
        hl_curve_free(ptr::null_mut());
        hl_point_free(ptr::null_mut());
        hl_string_free(ptr::null_mut());
    }
}
