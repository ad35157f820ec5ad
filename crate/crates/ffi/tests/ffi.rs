use std::ffi::{c_char, CStr, CString};
use std::ptr;

use qcert_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    qcert_string_free(s);
    out
}

unsafe fn last_error() -> String {
    take(qcert_last_error_message())
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(qcert_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn eval_by_string() {
    unsafe {
        let (mut l, mut r) = (ptr::null_mut(), ptr::null_mut());
        let s = qcert_eval_sides_str(cstr("jackson_8phi7").as_ptr(), cstr("a=3,b=1/2,c=5,d=1/7,q=2,n=3").as_ptr(), &mut l, &mut r);
        assert_eq!(s, QcertStatus::Ok);
        let (l, r) = (take(l), take(r));
        assert_eq!(l, r);
        assert!(l.contains('/'));
    }
}

#[test]
fn eval_with_handle() {
    unsafe {
        let p = qcert_point_new();
        for (k, v) in [("a", "3"), ("b", "1/2"), ("c", "5"), ("d", "1/7"), ("q", "2")] {
            assert_eq!(qcert_point_set_symbol(p, cstr(k).as_ptr(), cstr(v).as_ptr()), QcertStatus::Ok);
        }
        assert_eq!(qcert_point_set_index(p, cstr("n").as_ptr(), 2), QcertStatus::Ok);
        let text = take(qcert_point_to_string(p));
        assert!(text.contains("b=1/2"), "{text}");
        let (mut l, mut r) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(qcert_eval_sides(cstr("jackson_8phi7").as_ptr(), p, &mut l, &mut r), QcertStatus::Ok);
        assert_eq!(take(l), take(r));
        qcert_point_free(p);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let (mut l, mut r) = (ptr::null_mut(), ptr::null_mut());
        let s = qcert_eval_sides_str(cstr("nope").as_ptr(), cstr("q=2").as_ptr(), &mut l, &mut r);
        assert_eq!(s, QcertStatus::UnknownId);
        assert!(last_error().contains("nope"));
        assert!(l.is_null() && r.is_null());

        let s = qcert_eval_sides_str(cstr("jackson_8phi7").as_ptr(), cstr("a=x/y").as_ptr(), &mut l, &mut r);
        assert_eq!(s, QcertStatus::Parse);
        let s = qcert_eval_sides_str(cstr("jackson_8phi7").as_ptr(), cstr("a=1/0").as_ptr(), &mut l, &mut r);
        assert_eq!(s, QcertStatus::Pole);

        let s = qcert_eval_sides_str(cstr("jackson_8phi7").as_ptr(), cstr("a=3,b=1/2,c=5,d=1/7,q=1,n=3").as_ptr(), &mut l, &mut r);
        assert_eq!(s, QcertStatus::Pole);

        let s = qcert_eval_sides_str(cstr("jackson_8phi7").as_ptr(), cstr("a=3,q=2,n=1").as_ptr(), &mut l, &mut r);
        assert_eq!(s, QcertStatus::InvalidArgument);

        assert_eq!(qcert_point_set_index(ptr::null_mut(), cstr("n").as_ptr(), 1), QcertStatus::NullPointer);
        assert_eq!(qcert_verify(ptr::null(), 1, 1, ptr::null_mut()), QcertStatus::NullPointer);
        let mut rep = ptr::null_mut();
        assert_eq!(qcert_verify(ptr::null(), 1, 1, &mut rep), QcertStatus::InvalidArgument);
        assert!(rep.is_null());
        assert_eq!(qcert_series(cstr("ab00").as_ptr(), 100_000, 1, 1, &mut rep), QcertStatus::CostGuard);
    }
}

#[test]
fn runs_produce_reports() {
    unsafe {
        let mut rep = ptr::null_mut();
        assert_eq!(qcert_verify(cstr("jackson_8phi7").as_ptr(), 5, 42, &mut rep), QcertStatus::Ok);
        assert_eq!(qcert_report_passed(rep), 1);
        let json = take(qcert_report_json(rep));
        assert!(json.contains("\"status\": \"PASS\""), "{json}");
        qcert_report_free(rep);

        let mut rep = ptr::null_mut();
        assert_eq!(qcert_certify(cstr("lebesgue").as_ptr(), 2, 7, 4, &mut rep), QcertStatus::Ok);
        qcert_report_free(rep);

        let mut rep = ptr::null_mut();
        assert_eq!(qcert_series(cstr("jacobi_triple").as_ptr(), 30, 2, 3, &mut rep), QcertStatus::Ok);
        assert_eq!(qcert_report_passed(rep), 1);
        qcert_report_free(rep);
        assert_eq!(qcert_report_passed(ptr::null()), 0);
    }
}

#[test]
fn reports_are_deterministic() {
    unsafe {
        let run = || {
            let mut rep = ptr::null_mut();
            qcert_verify(cstr("watson_transform").as_ptr(), 4, 9, &mut rep);
            let j = take(qcert_report_json(rep));
            qcert_report_free(rep);
            j.lines().filter(|l| !l.contains("elapsed_ms")).collect::<Vec<_>>().join("\n")
        };
        assert_eq!(run(), run());
    }
}

#[test]
fn header_declares_every_export() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let header = std::fs::read_to_string(format!("{dir}/include/qcert.h")).unwrap();
    let src = std::fs::read_to_string(format!("{dir}/src/lib.rs")).unwrap();
    let mut count = 0;
    for line in src.lines() {
        if let Some(rest) = line.split("extern \"C\" fn ").nth(1) {
            let name = rest.split('(').next().unwrap();
            assert!(header.contains(&format!("{name}(")), "{name} missing from header");
            count += 1;
        }
    }
    assert!(count >= 15);
}

#[test]
fn header_compiles_as_c() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let Ok(out) = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c"])
        .arg(format!("{dir}/include/qcert.h"))
        .output()
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn c_program_links_and_runs() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let target = std::env::var_os("CARGO_TARGET_DIR").map(std::path::PathBuf::from).unwrap_or_else(|| dir.join("../../target"));
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let lib = target.join(profile).join("libqcert_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let exe = std::env::temp_dir().join(format!("qcert_smoke_{}", std::process::id()));
    let Ok(out) = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror"])
        .arg(format!("-I{}", dir.join("include").display()))
        .arg(dir.join("examples/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = std::process::Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "2664925/637837 2664925/637837");
}
