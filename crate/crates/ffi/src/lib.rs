//! C ABI for `sortstat`.
//!
//! Objects are opaque handles created by `*_parse` and released by `*_free`.
//! Every fallible call returns a [`SortstatStatus`]; on failure the message is
//! available from [`sortstat_last_error`] until the next call on that thread.
//! Strings returned to the caller must be released with [`sortstat_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sortstat::cli::{self, Context, Family};
use sortstat::verify::{self, Report, VerifyConfig};
use sortstat::{Error, Matching, Permutation, RestrictionSequence, SignedPermutation};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SortstatStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidObject = 4,
    NotInClass = 5,
    TypeMismatch = 6,
    UnknownCheck = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SortstatFamily {
    Perm = 0,
    Sperm = 1,
    Dperm = 2,
    Dyck = 3,
    Matching = 4,
    Bimatching = 5,
}

pub struct SortstatPermutation(Permutation);
pub struct SortstatSignedPermutation(SignedPermutation);
pub struct SortstatMatching(Matching);
pub struct SortstatReport(Report);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SortstatStatus {
    match e {
        Error::Parse(_) => SortstatStatus::Parse,
        Error::NotInClass { .. } => SortstatStatus::NotInClass,
        Error::TypeMismatch(..) | Error::LengthMismatch(..) | Error::BaseNotRed => SortstatStatus::TypeMismatch,
        Error::UnknownCheck(_) => SortstatStatus::UnknownCheck,
        _ => SortstatStatus::InvalidObject,
    }
}

struct Fail(SortstatStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SortstatStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SortstatStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SortstatStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(SortstatStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(SortstatStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn opt_str_arg<'a>(p: *const c_char) -> Result<Option<&'a str>, Fail> {
    if p.is_null() {
        Ok(None)
    } else {
        str_arg(p).map(Some)
    }
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(SortstatStatus::NullPointer, "null handle".into()))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(SortstatStatus::NullPointer, "null output pointer".into()));
    }
    out.write(v);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

unsafe fn restriction(r: *const usize, len: usize) -> Result<RestrictionSequence, Fail> {
    if r.is_null() && len > 0 {
        return Err(Fail(SortstatStatus::NullPointer, "null restriction".into()));
    }
    let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(r, len) };
    Ok(RestrictionSequence::new(slice.to_vec())?)
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next `sortstat_*` call on the thread.
#[no_mangle]
pub extern "C" fn sortstat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn sortstat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---- permutations ----

/// Parses `"6571342"` or `"6,5,7,1,3,4,2"`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sortstat_perm_parse(text: *const c_char, out: *mut *mut SortstatPermutation) -> SortstatStatus {
    guard(|| {
        let p: Permutation = str_arg(text)?.parse()?;
        write_out(out, Box::into_raw(Box::new(SortstatPermutation(p))))
    })
}

/// # Safety
/// `p` must come from `sortstat_perm_parse` or be null.
#[no_mangle]
pub unsafe extern "C" fn sortstat_perm_free(p: *mut SortstatPermutation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sortstat_perm_len(p: *const SortstatPermutation) -> usize {
    p.as_ref().map_or(0, |p| p.0.n())
}

/// Inversions.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sortstat_perm_inv(p: *const SortstatPermutation, out: *mut usize) -> SortstatStatus {
    guard(|| write_out(out, handle(p)?.0.inv()))
}

/// Major index.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sortstat_perm_maj(p: *const SortstatPermutation, out: *mut usize) -> SortstatStatus {
    guard(|| write_out(out, handle(p)?.0.maj()))
}

/// Sorting index (Straight Selection Sort displacement).
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sortstat_perm_sor(p: *const SortstatPermutation, out: *mut usize) -> SortstatStatus {
    guard(|| write_out(out, handle(p)?.0.sor()))
}

/// Number of cycles.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sortstat_perm_cyc(p: *const SortstatPermutation, out: *mut usize) -> SortstatStatus {
    guard(|| write_out(out, handle(p)?.0.cyc()))
}

/// Restricted sorting index of `sigma` toward `sigma0` on the class given by
/// `r[0..r_len]`.
///
/// # Safety
/// Handles must be live, `r` must point to `r_len` values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn sortstat_perm_sor_r(
    sigma: *const SortstatPermutation,
    sigma0: *const SortstatPermutation,
    r: *const usize,
    r_len: usize,
    out: *mut usize,
) -> SortstatStatus {
    guard(|| {
        let r = restriction(r, r_len)?;
        write_out(out, sortstat::perm::sor_r(&handle(sigma)?.0, &handle(sigma0)?.0, &r)?)
    })
}

// ---- signed permutations ----

/// Parses `"-5,1,3,-4,-2"`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sortstat_sperm_parse(
    text: *const c_char,
    out: *mut *mut SortstatSignedPermutation,
) -> SortstatStatus {
    guard(|| {
        let p: SignedPermutation = str_arg(text)?.parse()?;
        write_out(out, Box::into_raw(Box::new(SortstatSignedPermutation(p))))
    })
}

/// # Safety
/// `p` must come from `sortstat_sperm_parse` or be null.
#[no_mangle]
pub unsafe extern "C" fn sortstat_sperm_free(p: *mut SortstatSignedPermutation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sortstat_sperm_inv_b(p: *const SortstatSignedPermutation, out: *mut usize) -> SortstatStatus {
    guard(|| write_out(out, handle(p)?.0.inv_b()))
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sortstat_sperm_sor_b(p: *const SortstatSignedPermutation, out: *mut usize) -> SortstatStatus {
    guard(|| write_out(out, handle(p)?.0.sor_b()))
}

/// Fails with `InvalidObject` when the number of negative entries is odd.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sortstat_sperm_inv_d(p: *const SortstatSignedPermutation, out: *mut usize) -> SortstatStatus {
    guard(|| write_out(out, handle(p)?.0.inv_d()?))
}

/// Fails with `InvalidObject` when the number of negative entries is odd.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sortstat_sperm_sor_d(p: *const SortstatSignedPermutation, out: *mut usize) -> SortstatStatus {
    guard(|| write_out(out, handle(p)?.0.sor_d()?))
}

/// Type-B restricted sorting index; `sigma0` must have a positive window.
///
/// # Safety
/// Handles must be live, `r` must point to `r_len` values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn sortstat_sperm_sor_r(
    sigma: *const SortstatSignedPermutation,
    sigma0: *const SortstatSignedPermutation,
    r: *const usize,
    r_len: usize,
    out: *mut usize,
) -> SortstatStatus {
    guard(|| {
        let r = restriction(r, r_len)?;
        write_out(out, sortstat::signed::sor_r_b(&handle(sigma)?.0, &handle(sigma0)?.0, &r)?)
    })
}

// ---- matchings ----

/// Parses `"1-4,2-3"`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sortstat_matching_parse(text: *const c_char, out: *mut *mut SortstatMatching) -> SortstatStatus {
    guard(|| {
        let m: Matching = str_arg(text)?.parse()?;
        write_out(out, Box::into_raw(Box::new(SortstatMatching(m))))
    })
}

/// # Safety
/// `m` must come from `sortstat_matching_parse` or be null.
#[no_mangle]
pub unsafe extern "C" fn sortstat_matching_free(m: *mut SortstatMatching) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Crossings, nestings and alignments.
///
/// # Safety
/// `m` must be a live handle; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn sortstat_matching_relations(
    m: *const SortstatMatching,
    cr: *mut usize,
    ne: *mut usize,
    al: *mut usize,
) -> SortstatStatus {
    guard(|| {
        let rel = handle(m)?.0.arc_relations();
        write_out(cr, rel.cr)?;
        write_out(ne, rel.ne)?;
        write_out(al, rel.al)
    })
}

/// Sorting index of `m` toward `m0`; both must have the same type.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sortstat_matching_sor(
    m: *const SortstatMatching,
    m0: *const SortstatMatching,
    out: *mut usize,
) -> SortstatStatus {
    guard(|| write_out(out, sortstat::matching::sor(&handle(m)?.0, &handle(m0)?.0)?))
}

// ---- generic statistics ----

/// Any statistic accepted by `sortstat stat`, returned as JSON (a number, an
/// array of indices, or a string). `base` and `r` may be null.
///
/// # Safety
/// String arguments must be nul-terminated or null where allowed; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sortstat_stat_json(
    family: SortstatFamily,
    object: *const c_char,
    statistic: *const c_char,
    base: *const c_char,
    r: *const c_char,
    out: *mut *mut c_char,
) -> SortstatStatus {
    guard(|| {
        let family = match family {
            SortstatFamily::Perm => Family::Perm,
            SortstatFamily::Sperm => Family::Sperm,
            SortstatFamily::Dperm => Family::Dperm,
            SortstatFamily::Dyck => Family::Dyck,
            SortstatFamily::Matching => Family::Matching,
            SortstatFamily::Bimatching => Family::Bimatching,
        };
        let obj = cli::Object::parse(family, str_arg(object)?)?;
        let ctx = Context::new(family, opt_str_arg(base)?, opt_str_arg(r)?)?;
        let value = cli::evaluate(&obj, str_arg(statistic)?, &ctx)?;
        write_out(out, into_c_string(value.json().to_string()))
    })
}

// ---- verification ----

/// Runs the named checks (all when `count` is 0) up to `max_n` (0 keeps each
/// check's default). A failing check is not an error: inspect the report.
///
/// # Safety
/// `ids` must point to `count` nul-terminated strings; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sortstat_verify(
    ids: *const *const c_char,
    count: usize,
    max_n: usize,
    out: *mut *mut SortstatReport,
) -> SortstatStatus {
    guard(|| {
        if ids.is_null() && count > 0 {
            return Err(Fail(SortstatStatus::NullPointer, "null id list".into()));
        }
        let mut names = Vec::with_capacity(count);
        for i in 0..count {
            names.push(str_arg(*ids.add(i))?);
        }
        let cfg = VerifyConfig { max_n: (max_n > 0).then_some(max_n), ..Default::default() };
        let report = verify::run_checks(&names, &cfg)?;
        write_out(out, Box::into_raw(Box::new(SortstatReport(report))))
    })
}

/// 1 if every check passed, 0 otherwise (including a null report).
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sortstat_report_passed(report: *const SortstatReport) -> i32 {
    report.as_ref().map_or(0, |r| i32::from(r.0.passed()))
}

/// The report as JSON; release with `sortstat_string_free`. Null if `report` is null.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sortstat_report_json(report: *const SortstatReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => into_c_string(r.0.to_json()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `report` must come from `sortstat_verify` or be null.
#[no_mangle]
pub unsafe extern "C" fn sortstat_report_free(report: *mut SortstatReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
