use std::ffi::{CStr, CString};
use std::os::raw::{c_char, c_int};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use nori_kernel_ffi::*;

const TWO_POINTS: &str = r#"{"field": "Q", "vertices": [{"id": "a", "dim": 1}, {"id": "b", "dim": 1}], "edges": []}"#;
const SQUARE: &str = r#"{"field": "Q", "vertices": [{"id": "pt", "dim": 2}], "edges": []}"#;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = nori_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn load(doc: &str) -> *mut NoriRepresentation {
    let mut rep = ptr::null_mut();
    let json = c(doc);
    assert_eq!(unsafe { nori_representation_from_json(json.as_ptr(), ptr::null(), &mut rep) }, NoriStatus::Ok);
    rep
}

#[test]
fn end_of_the_square_is_m2() {
    let rep = load(SQUARE);
    let mut alg = ptr::null_mut();
    let mut dim = 0usize;
    let mut ss: c_int = -2;
    unsafe {
        assert_eq!(nori_end_algebra(rep, &mut alg), NoriStatus::Ok);
        assert_eq!(nori_algebra_dim(alg, &mut dim), NoriStatus::Ok);
        assert_eq!(nori_algebra_is_semisimple(alg, &mut ss), NoriStatus::Ok);
        assert_eq!(nori_endvee_dim(rep, &mut dim), NoriStatus::Ok);
        nori_algebra_free(alg);
        nori_representation_free(rep);
    }
    assert_eq!(dim, 4);
    assert_eq!(ss, 1);
}

#[test]
fn isolated_points_give_a_product() {
    let rep = load(TWO_POINTS);
    let (mut n, mut dim) = (0usize, 0usize);
    unsafe {
        assert_eq!(nori_representation_vertex_count(rep, &mut n), NoriStatus::Ok);
        assert_eq!(nori_endvee_dim(rep, &mut dim), NoriStatus::Ok);
        nori_representation_free(rep);
    }
    assert_eq!((n, dim), (2, 2));
}

#[test]
fn errors_set_status_and_message() {
    let mut rep = ptr::null_mut();
    let bad = c("{\"vertices\": [");
    assert_eq!(
        unsafe { nori_representation_from_json(bad.as_ptr(), ptr::null(), &mut rep) },
        NoriStatus::InputError
    );
    assert!(rep.is_null());
    assert!(last_error().contains("line"), "{}", last_error());

    let doc = c(TWO_POINTS);
    let field = c("Fp:5");
    assert_eq!(
        unsafe { nori_representation_from_json(doc.as_ptr(), field.as_ptr(), &mut rep) },
        NoriStatus::InputError
    );

    let mut dim = 0usize;
    assert_eq!(unsafe { nori_endvee_dim(ptr::null(), &mut dim) }, NoriStatus::NullPointer);
    assert!(last_error().contains("rep"));

    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { nori_representation_from_json(invalid.as_ptr() as *const c_char, ptr::null(), &mut rep) },
        NoriStatus::InvalidUtf8
    );
}

#[test]
fn complex_cohomology() {
    let doc = c(r#"{"field": "Q", "start": -1, "dims": [1, 2, 1], "differentials": [[[1], [0]], [[0, 0]]]}"#);
    let mut cx = ptr::null_mut();
    let mut dims = [9usize; 2];
    let (mut len, mut start) = (0usize, 0i64);
    unsafe {
        assert_eq!(nori_complex_from_json(doc.as_ptr(), ptr::null(), &mut cx), NoriStatus::Ok);
        assert_eq!(nori_complex_start(cx, &mut start), NoriStatus::Ok);
        assert_eq!(nori_complex_cohomology_dims(cx, dims.as_mut_ptr(), dims.len(), &mut len), NoriStatus::Ok);
        nori_complex_free(cx);
    }
    assert_eq!((start, len), (-1, 3));
    assert_eq!(dims, [0, 1]);

    let not_a_complex = c(r#"{"field": "Q", "start": 0, "dims": [1, 1, 1], "differentials": [[[1]], [[1]]]}"#);
    let status = unsafe { nori_complex_from_json(not_a_complex.as_ptr(), ptr::null(), &mut cx) };
    assert_eq!(status, NoriStatus::InputError);
}

#[test]
fn run_returns_exit_codes_and_reports() {
    let args: Vec<CString> = ["check", "reconstruction", "--seed", "3", "--n", "4"].iter().map(|s| c(s)).collect();
    let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let mut report = ptr::null_mut();
    let code = unsafe { nori_run(argv.len() as c_int, argv.as_ptr(), &mut report) };
    assert_eq!(code, 0);
    let text = unsafe { CStr::from_ptr(report) }.to_str().unwrap().to_string();
    unsafe { nori_string_free(report) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["passed"], 4);

    let args = [c("end"), c("--in"), c("/nonexistent.json")];
    let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    assert_eq!(unsafe { nori_run(3, argv.as_ptr(), &mut report) }, 2);
    unsafe { nori_string_free(report) };
    assert_eq!(unsafe { nori_run(0, ptr::null(), ptr::null_mut()) }, -1);
}

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/nori_kernel.h")
}

#[test]
fn header_declares_the_interface() {
    let h = std::fs::read_to_string(header()).unwrap();
    for name in [
        "typedef struct NoriRepresentation NoriRepresentation;",
        "NORI_STATUS_FALSIFIED = 1",
        "int nori_run(int argc, const char *const *argv, char **report);",
        "nori_complex_cohomology_dims",
        "const char *nori_last_error(void);",
    ] {
        assert!(h.contains(name), "missing {name}");
    }
}

/// Compiles a small C program against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let Ok(exe) = std::env::current_exe() else { return };
    let target = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = target.join("libnori_kernel_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let dir = std::env::temp_dir().join(format!("nori-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include "nori_kernel.h"

int main(void) {
    NoriRepresentation *rep = NULL;
    size_t dim = 0;
    if (nori_representation_from_json("{\"vertices\":[{\"id\":\"pt\",\"dim\":2}],\"edges\":[]}", NULL, &rep) != NORI_STATUS_OK)
        return 3;
    if (nori_endvee_dim(rep, &dim) != NORI_STATUS_OK)
        return 4;
    nori_representation_free(rep);
    if (nori_endvee_dim(NULL, &dim) != NORI_STATUS_NULL_POINTER)
        return 5;
    printf("%zu %s\n", dim, nori_last_error());
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "{:?}", out);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "4 rep is null\n");
    let _ = std::fs::remove_dir_all(&dir);
}
