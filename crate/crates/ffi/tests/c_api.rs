use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use foliahodge_ffi::*;

fn zoo_model(name: &str) -> *mut FhModel {
    let name = CString::new(name).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { fh_model_zoo(name.as_ptr(), &mut m) }, FhStatus::Ok);
    m
}

fn betti(a: *const FhAnalysis, which: FhComplex) -> Vec<usize> {
    let mut buf = [0usize; 16];
    let mut len = 0;
    let s = unsafe { fh_analysis_betti(a, which, buf.as_mut_ptr(), buf.len(), &mut len) };
    assert_eq!(s, FhStatus::Ok);
    buf[..len].to_vec()
}

#[test]
fn heisenberg_through_handles() {
    let m = zoo_model("heisenberg3");
    let mut contact = false;
    let mut n = 0;
    unsafe {
        assert_eq!(fh_model_is_contact(m, &mut contact), FhStatus::Ok);
        assert_eq!(fh_model_half_dim(m, &mut n), FhStatus::Ok);
    }
    assert!(contact);
    assert_eq!(n, 1);
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { fh_analysis_new(m, &mut a) }, FhStatus::Ok);
    assert_eq!(betti(a, FhComplex::Basic), vec![1, 2, 1]);
    assert_eq!(betti(a, FhComplex::DeRham), vec![1, 2, 2, 1]);
    let (mut s, mut c, mut cup) = (0i64, 0i64, 0usize);
    unsafe {
        assert_eq!(fh_analysis_lefschetz_level(a, &mut s), FhStatus::Ok);
        assert_eq!(fh_analysis_contact_level(a, &mut c), FhStatus::Ok);
        assert_eq!(fh_analysis_cup_length(a, &mut cup), FhStatus::Ok);
        fh_analysis_free(a);
        fh_model_free(m);
    }
    assert_eq!((s, c, cup), (0, 0, 2));
}

#[test]
fn error_codes_and_messages() {
    let mut m = ptr::null_mut();
    let bad = CString::new("generators: e1 e2 e3 e4 e5\nd: e4 = e1^e2\nd: e2 = e3^e5\nomega: e1^e3\n").unwrap();
    assert_eq!(unsafe { fh_model_load(bad.as_ptr(), &mut m) }, FhStatus::Validation);
    let msg = unsafe { CStr::from_ptr(fh_last_error()) }.to_str().unwrap();
    assert!(msg.contains("d²"), "{msg}");
    let unknown = CString::new("klein").unwrap();
    assert_eq!(unsafe { fh_model_zoo(unknown.as_ptr(), &mut m) }, FhStatus::UnknownModel);
    assert_eq!(unsafe { fh_model_zoo(ptr::null(), &mut m) }, FhStatus::NullArgument);
    assert!(m.is_null());

    let t4 = zoo_model("torus4");
    let mut a = ptr::null_mut();
    let mut level = 0;
    let mut len = 0;
    unsafe {
        assert_eq!(fh_analysis_new(t4, &mut a), FhStatus::Ok);
        assert_eq!(fh_analysis_contact_level(a, &mut level), FhStatus::Precondition);
        assert_eq!(
            fh_analysis_betti(a, FhComplex::Basic, ptr::null_mut(), 0, &mut len),
            FhStatus::BufferTooSmall
        );
        fh_analysis_free(a);
    }
    assert_eq!(len, 5);

    let name = CString::new("e9").unwrap();
    let mut ext = ptr::null_mut();
    let mut text = ptr::null_mut();
    unsafe {
        assert_eq!(fh_model_boothby_wang(t4, name.as_ptr(), &mut ext), FhStatus::Ok);
        assert_eq!(fh_model_boothby_wang(ext, name.as_ptr(), &mut m), FhStatus::Precondition);
        assert_eq!(fh_model_render(ext, &mut text), FhStatus::Ok);
        let s = CStr::from_ptr(text).to_str().unwrap().to_string();
        fh_string_free(text);
        assert!(s.contains("d: e9 = 1 e1^e2 + 1 e3^e4"), "{s}");
        fh_model_free(ext);
        fh_model_free(t4);
    }
}

#[test]
fn cli_through_the_abi() {
    let args: Vec<CString> = ["lefschetz", "zoo:kodaira_thurston", "--json"]
        .iter()
        .map(|s| CString::new(*s).unwrap())
        .collect();
    let ptrs: Vec<*const std::ffi::c_char> = args.iter().map(|s| s.as_ptr()).collect();
    let mut code = -1;
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { fh_run_cli(ptrs.as_ptr(), ptrs.len(), &mut code, &mut out) }, FhStatus::Ok);
    let json = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    unsafe { fh_string_free(out) };
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["transverse_lefschetz"]["max_s"], 0);
}

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include");
    let lib = target_dir().join("libfoliahodge_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("no C compiler or static library; C smoke test not run");
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "foliahodge.h"
int main(void) {
    FhModel *m = NULL;
    FhAnalysis *a = NULL;
    size_t b[8], len = 0;
    if (fh_model_zoo("kodaira_thurston", &m) != FH_STATUS_OK) return 1;
    if (fh_analysis_new(m, &a) != FH_STATUS_OK) return 2;
    if (fh_analysis_betti(a, FH_COMPLEX_DE_RHAM, b, 8, &len) != FH_STATUS_OK) return 3;
    for (size_t i = 0; i < len; i++) printf("%zu ", b[i]);
    if (fh_model_zoo("nope", &m) != FH_STATUS_UNKNOWN_MODEL) return 4;
    printf("| %s\n", fh_last_error());
    fh_analysis_free(a);
    fh_model_free(m);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = tmp.path().join("smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-I")
        .arg(&header)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("1 3 4 3 1 | unknown model `nope`"), "{text}");
}
