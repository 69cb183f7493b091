//! C ABI over `heightlab`.
//!
//! Curves and points are opaque handles owned by the caller and released with the
//! matching `_free` function. Every fallible call returns an `HlStatus`; on failure
//! `hl_last_error` gives a message for the calling thread. Strings handed out by the
//! library are freed with `hl_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use heightlab::bounds::{bogomolov_bounds, default_twist_set, k_split_degree, BoundInput, Variant};
use heightlab::curves::{reduction_type, CurvePoint, ReductionType, WeierstrassCurve};
use heightlab::heights::canonical_height;
use heightlab::lattes::{lattes_from_curve, lattes_height, small_height_sequence};
use heightlab::numeric::rational::rat_to_string;
use heightlab::numeric::real::RealApprox;
use heightlab::Error;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HlStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Input = 3,
    Parse = 4,
    Domain = 5,
    Precision = 6,
    Precondition = 7,
    SearchExhausted = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HlReduction {
    Good = 0,
    MultSplit = 1,
    MultNonsplit = 2,
    Additive = 3,
}

/// An interval `value ± error`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HlReal {
    pub value: f64,
    pub error: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct HlReductionInfo {
    pub kind: HlReduction,
    pub ord_min_disc: u32,
    pub conductor_exponent: u32,
    pub tamagawa: u32,
    /// `ord_p(1/j)` for multiplicative reduction, 0 otherwise.
    pub component_index_n: u32,
}

/// Opaque curve handle.
pub struct HlCurve(WeierstrassCurve);

/// Opaque point handle. Points carry no reference to their curve.
pub struct HlPoint(CurvePoint);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

struct Fail(HlStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Input(_) => HlStatus::Input,
            Error::Parse(_) => HlStatus::Parse,
            Error::Domain(_) => HlStatus::Domain,
            Error::Precision(_) => HlStatus::Precision,
            Error::Precondition(_) => HlStatus::Precondition,
            Error::SearchExhausted(_) => HlStatus::SearchExhausted,
        };
        Fail(code, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(HlStatus::NullArgument, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            HlStatus::Ok
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            HlStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(HlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, v: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(HlStatus::Panic, "interior NUL in output".into()))?;
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(c.into_raw());
    Ok(())
}

fn real(r: RealApprox) -> HlReal {
    HlReal { value: r.value, error: r.error }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn hl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `"A,B"` (short form) or `"a1,a2,a3,a4,a6"`; entries may be rationals.
///
/// # Safety
/// `coeffs` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hl_curve_parse(coeffs: *const c_char, out: *mut *mut HlCurve) -> HlStatus {
    guard(|| {
        let e = WeierstrassCurve::parse(text(coeffs, "coeffs")?)?;
        write(out, Box::into_raw(Box::new(HlCurve(e))), "out")
    })
}

/// # Safety
/// `c` must be null or a handle from `hl_curve_parse`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hl_curve_free(c: *mut HlCurve) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// j-invariant as `"n/d"`; free with `hl_string_free`.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hl_curve_j_invariant(c: *const HlCurve, out: *mut *mut c_char) -> HlStatus {
    guard(|| {
        let c = deref(c, "curve")?;
        write_string(out, rat_to_string(&c.0.invariants().j))
    })
}

/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hl_curve_reduction(c: *const HlCurve, p: u64, out: *mut HlReductionInfo) -> HlStatus {
    guard(|| {
        let c = deref(c, "curve")?;
        let r = reduction_type(&c.0, p)?;
        let kind = match r.kind {
            ReductionType::Good => HlReduction::Good,
            ReductionType::MultSplit => HlReduction::MultSplit,
            ReductionType::MultNonsplit => HlReduction::MultNonsplit,
            ReductionType::Additive => HlReduction::Additive,
        };
        let info = HlReductionInfo {
            kind,
            ord_min_disc: r.ord_min_disc,
            conductor_exponent: r.conductor_exponent,
            tamagawa: r.tamagawa,
            component_index_n: r.component_index_n.unwrap_or(0),
        };
        write(out, info, "out")
    })
}

/// Parses `"x,y"` and checks the point lies on `c`.
///
/// # Safety
/// `c` must be a live handle, `xy` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hl_point_parse(c: *const HlCurve, xy: *const c_char, out: *mut *mut HlPoint) -> HlStatus {
    guard(|| {
        let c = deref(c, "curve")?;
        let s = text(xy, "xy")?;
        let p = CurvePoint::parse(s)?;
        if !c.0.contains(&p) {
            return Err(Error::Input(format!("{s} is not on the curve")).into());
        }
        write(out, Box::into_raw(Box::new(HlPoint(p))), "out")
    })
}

/// # Safety
/// `p` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hl_point_free(p: *mut HlPoint) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// `[m]P` as a new handle.
///
/// # Safety
/// `c` and `p` must be live handles with `p` on `c`; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hl_point_mul(c: *const HlCurve, p: *const HlPoint, m: i64, out: *mut *mut HlPoint) -> HlStatus {
    guard(|| {
        let c = deref(c, "curve")?;
        let p = deref(p, "point")?;
        let q = c.0.scalar_mul(m, &p.0);
        write(out, Box::into_raw(Box::new(HlPoint(q))), "out")
    })
}

/// Writes `"x,y"`, or `"O"` for the point at infinity.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hl_point_to_string(p: *const HlPoint, out: *mut *mut c_char) -> HlStatus {
    guard(|| {
        let p = deref(p, "point")?;
        let s = match p.0.as_rational() {
            Some((x, y)) => format!("{x},{y}"),
            None if p.0.is_infinity() => "O".to_string(),
            None => return Err(Error::Input("point has irrational coordinates".into()).into()),
        };
        write_string(out, s)
    })
}

/// Néron–Tate height of a rational point, to within `eps`.
///
/// # Safety
/// `c` and `p` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hl_canonical_height(c: *const HlCurve, p: *const HlPoint, eps: f64, out: *mut HlReal) -> HlStatus {
    guard(|| {
        let c = deref(c, "curve")?;
        let p = deref(p, "point")?;
        write(out, real(canonical_height(&c.0, &p.0, eps)?), "out")
    })
}

/// Canonical height of `x` for the Lattès map of the curve's integral short model.
/// `x` is a rational in the coordinates of `c`.
///
/// # Safety
/// `c` must be a live handle, `x` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hl_lattes_height(c: *const HlCurve, x: *const c_char, eps: f64, out: *mut HlReal) -> HlStatus {
    guard(|| {
        let c = deref(c, "curve")?;
        let x = heightlab::numeric::rational::parse_rat(text(x, "x")?)?;
        let (short, iso) = c.0.integral_short_model();
        let f = lattes_from_curve(&short)?;
        write(out, real(lattes_height(&f, Some(&iso.map_x(&x)), eps)?), "out")
    })
}

/// Height lower bound for `variant` (`"41"`, `"42"`, `"51"`, `"52"`, `"53"`, `"25"`, `"26"`)
/// with inputs taken from the curve at `p` and `d = e = 1`.
///
/// # Safety
/// `c` must be a live handle, `variant` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hl_bound(c: *const HlCurve, p: u64, variant: *const c_char, out: *mut HlReal) -> HlStatus {
    guard(|| {
        let c = deref(c, "curve")?;
        let v = Variant::parse(text(variant, "variant")?)?;
        let mut input = BoundInput::from_curve(&c.0, p)?;
        if v == Variant::Inflated51 {
            input.k_split = Some(k_split_degree(&c.0, p, &default_twist_set(p))?.k);
        }
        write(out, real(bogomolov_bounds(&input, v)?.height_bound), "out")
    })
}

/// Full bound report, including the derivation trace, as JSON.
///
/// # Safety
/// As for `hl_bound`, with `out` receiving a string to free with `hl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn hl_bound_json(c: *const HlCurve, p: u64, variant: *const c_char, out: *mut *mut c_char) -> HlStatus {
    guard(|| {
        let c = deref(c, "curve")?;
        let v = Variant::parse(text(variant, "variant")?)?;
        let mut input = BoundInput::from_curve(&c.0, p)?;
        if v == Variant::Inflated51 {
            input.k_split = Some(k_split_degree(&c.0, p, &default_twist_set(p))?.k);
        }
        let report = bogomolov_bounds(&input, v)?;
        write_string(out, serde_json::to_string(&report).expect("serializable"))
    })
}

/// Small-height preimage tower at an odd prime `p`, levels `0..=levels`, as JSON.
///
/// # Safety
/// `out` must be writable; free the result with `hl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn hl_counterexample_json(p: u64, levels: usize, out: *mut *mut c_char) -> HlStatus {
    guard(|| {
        let s = small_height_sequence(p, levels)?;
        write_string(out, serde_json::to_string(&s).expect("serializable"))
    })
}
