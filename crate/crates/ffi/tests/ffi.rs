use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use sortstat_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sortstat_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn permutation_statistics() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(sortstat_perm_parse(c("6571342").as_ptr(), &mut p), SortstatStatus::Ok);
        assert_eq!(sortstat_perm_len(p), 7);
        let mut v = 0;
        assert_eq!(sortstat_perm_sor(p, &mut v), SortstatStatus::Ok);
        assert_eq!(v, 16);
        assert_eq!(sortstat_perm_inv(p, &mut v), SortstatStatus::Ok);
        assert_eq!(v, 15);
        sortstat_perm_free(p);

        let (mut s, mut s0) = (ptr::null_mut(), ptr::null_mut());
        sortstat_perm_parse(c("213").as_ptr(), &mut s);
        sortstat_perm_parse(c("132").as_ptr(), &mut s0);
        let r = [2usize, 3, 3];
        assert_eq!(sortstat_perm_sor_r(s, s0, r.as_ptr(), r.len(), &mut v), SortstatStatus::Ok);
        let bad = [2usize, 2, 3];
        assert_eq!(sortstat_perm_sor_r(s, s0, bad.as_ptr(), bad.len(), &mut v), SortstatStatus::NotInClass);
        assert!(last_error().contains("does not satisfy"));
        sortstat_perm_free(s);
        sortstat_perm_free(s0);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(sortstat_perm_parse(c("1124").as_ptr(), &mut p), SortstatStatus::InvalidObject);
        assert!(p.is_null());
        assert_eq!(sortstat_perm_parse(ptr::null(), &mut p), SortstatStatus::NullPointer);
        let mut v = 0;
        assert_eq!(sortstat_perm_sor(ptr::null(), &mut v), SortstatStatus::NullPointer);
        let bytes = [0xffu8, 0];
        assert_eq!(sortstat_perm_parse(bytes.as_ptr().cast(), &mut p), SortstatStatus::InvalidUtf8);
        let (mut m, mut m0) = (ptr::null_mut(), ptr::null_mut());
        sortstat_matching_parse(c("1-2,3-4").as_ptr(), &mut m);
        sortstat_matching_parse(c("1-4,2-3").as_ptr(), &mut m0);
        assert_eq!(sortstat_matching_sor(m, m0, &mut v), SortstatStatus::TypeMismatch);
        sortstat_matching_free(m);
        sortstat_matching_free(m0);
        let mut report = ptr::null_mut();
        let ids = [c("NOPE")];
        let ptrs: Vec<_> = ids.iter().map(|s| s.as_ptr()).collect();
        assert_eq!(sortstat_verify(ptrs.as_ptr(), 1, 2, &mut report), SortstatStatus::UnknownCheck);
        sortstat_perm_parse(c("21").as_ptr(), &mut p);
        assert_eq!(last_error(), "");
        sortstat_perm_free(p);
    }
}

#[test]
fn signed_and_matching_statistics() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(sortstat_sperm_parse(c("-5,1,3,-4,-2").as_ptr(), &mut s), SortstatStatus::Ok);
        let mut v = 0;
        sortstat_sperm_sor_b(s, &mut v);
        assert_eq!(v, 13);
        assert_eq!(sortstat_sperm_inv_d(s, &mut v), SortstatStatus::InvalidObject);
        sortstat_sperm_free(s);

        let mut m = ptr::null_mut();
        sortstat_matching_parse(c("1-4,2-3").as_ptr(), &mut m);
        let (mut cr, mut ne, mut al) = (9, 9, 9);
        assert_eq!(sortstat_matching_relations(m, &mut cr, &mut ne, &mut al), SortstatStatus::Ok);
        assert_eq!((cr, ne, al), (0, 1, 0));
        sortstat_matching_free(m);
    }
}

#[test]
fn generic_statistics_and_reports() {
    unsafe {
        let mut out = ptr::null_mut();
        let st = sortstat_stat_json(
            SortstatFamily::Sperm,
            c("-3,-9,-5,-7,1,-6,-4,8,2").as_ptr(),
            c("Cyc0").as_ptr(),
            ptr::null(),
            ptr::null(),
            &mut out,
        );
        assert_eq!(st, SortstatStatus::Ok);
        assert_eq!(CStr::from_ptr(out).to_str().unwrap(), "[1,4,8]");
        sortstat_string_free(out);

        let ids = [c("PETD"), c("THM1")];
        let ptrs: Vec<_> = ids.iter().map(|s| s.as_ptr()).collect();
        let mut report = ptr::null_mut();
        assert_eq!(sortstat_verify(ptrs.as_ptr(), ptrs.len(), 3, &mut report), SortstatStatus::Ok);
        assert_eq!(sortstat_report_passed(report), 1);
        let json = sortstat_report_json(report);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["checks"][0]["id"], "THM1");
        sortstat_string_free(json);
        sortstat_report_free(report);
        assert_eq!(sortstat_report_passed(ptr::null()), 0);
    }
}

fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let deps = exe.parent()?;
    [deps.join("../libsortstat_ffi.a"), deps.join("libsortstat_ffi.a")].into_iter().find(|p| p.exists())
}

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = manifest.join("include/sortstat.h");
    assert!(header.exists(), "header not generated");
    let Some(lib) = static_lib() else {
        eprintln!("static library not built alongside tests; skipping link step");
        return;
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-Wall", "-Werror", "-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C smoke test failed to build");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
