use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use polyprod_ffi::*;
use serde_json::Value;

fn last_error() -> String {
    unsafe { CStr::from_ptr(pp_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

unsafe fn take_json(s: *mut std::ffi::c_char) -> Value {
    let v = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
    pp_string_free(s);
    v
}

unsafe fn square() -> *mut PpComplex {
    let faces = [0b0011u32, 0b0110, 0b1100, 0b1001];
    let mut k = ptr::null_mut();
    assert_eq!(
        pp_complex_from_maximal_faces(4, faces.as_ptr(), faces.len(), &mut k),
        PpStatus::Ok
    );
    k
}

#[test]
fn square_vectors_and_homology() {
    unsafe {
        let k = square();
        let mut m = 0;
        assert_eq!(pp_complex_num_vertices(k, &mut m), PpStatus::Ok);
        assert_eq!(m, 4);

        let mut f = [0u64; 4];
        let mut len = 0;
        assert_eq!(pp_complex_f_vector(k, f.as_mut_ptr(), f.len(), &mut len), PpStatus::Ok);
        assert_eq!(&f[..len], &[4, 4]);
        let mut h = [0i64; 1];
        assert_eq!(
            pp_complex_h_vector(k, h.as_mut_ptr(), h.len(), &mut len),
            PpStatus::BufferTooSmall
        );
        assert_eq!(len, 3);
        let mut h = [0i64; 3];
        assert_eq!(pp_complex_h_vector(k, h.as_mut_ptr(), h.len(), &mut len), PpStatus::Ok);
        assert_eq!(h, [1, 2, 1]);

        let mut pair = ptr::null_mut();
        assert_eq!(pp_pair_disk_sphere(1, &mut pair), PpStatus::Ok);
        let pairs = [pair as *const PpPair];
        let mut out = ptr::null_mut();
        assert_eq!(
            pp_moment_angle_homology_json(k, pairs.as_ptr(), 1, false, &mut out),
            PpStatus::Ok
        );
        let v = take_json(out);
        let betti: Vec<(i64, i64)> = v
            .as_array()
            .unwrap()
            .iter()
            .map(|g| (g["degree"].as_i64().unwrap(), g["betti"].as_i64().unwrap()))
            .collect();
        assert_eq!(betti, vec![(0, 1), (3, 2), (6, 1)]);

        let mut verified = false;
        assert_eq!(pp_split_check(k, pairs.as_ptr(), 1, &mut verified), PpStatus::Ok);
        assert!(verified);

        pp_pair_free(pair);
        pp_complex_free(k);
    }
}

#[test]
fn parsing_and_errors() {
    unsafe {
        let text = CString::new("m 3\nface 1 2\nface 2 3\nface 1 3\n").unwrap();
        let mut k = ptr::null_mut();
        assert_eq!(pp_complex_parse(text.as_ptr(), &mut k), PpStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(pp_hochster_json(k, 1, &mut out), PpStatus::Ok);
        let v = take_json(out);
        assert_eq!(v["total"][0]["degree"], 5);
        assert_eq!(pp_sr_hilbert_json(k, 2, 5, &mut out), PpStatus::Ok);
        assert_eq!(take_json(out)["expansion"], serde_json::json!([1, 0, 3, 0, 6]));

        let mut cone = ptr::null_mut();
        assert_eq!(pp_pair_cone_from_complex(k, 1, &mut cone), PpStatus::Ok);
        let mut based = ptr::null_mut();
        assert_eq!(pp_pair_based_from_complex(k, 9, &mut based), PpStatus::InvalidInput);
        assert!(based.is_null());
        assert!(!last_error().is_empty());
        pp_pair_free(cone);
        pp_complex_free(k);

        let bad = CString::new("m 2\nface 1 3\n").unwrap();
        let mut k2 = ptr::null_mut();
        assert_eq!(pp_complex_parse(bad.as_ptr(), &mut k2), PpStatus::ParseError);
        assert_eq!(last_error(), "line 2: vertex 3 out of range 1..=2");
        assert!(k2.is_null());

        assert_eq!(pp_complex_parse(ptr::null(), &mut k2), PpStatus::NullPointer);
        assert_eq!(
            pp_complex_num_vertices(ptr::null(), ptr::null_mut()),
            PpStatus::NullPointer
        );
        assert_eq!(
            pp_complex_from_maximal_faces(2, [0b100u32].as_ptr(), 1, &mut k2),
            PpStatus::InvalidInput
        );
        pp_complex_free(ptr::null_mut());
        pp_string_free(ptr::null_mut());
    }
}

#[test]
fn budget_is_reported() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(
            pp_complex_from_maximal_faces(16, [(1u32 << 16) - 1].as_ptr(), 1, &mut k),
            PpStatus::Ok
        );
        let mut pair = ptr::null_mut();
        pp_pair_disk_sphere(1, &mut pair);
        let pairs = [pair as *const PpPair];
        let mut out = ptr::null_mut();
        assert_eq!(
            pp_moment_angle_homology_json(k, pairs.as_ptr(), 1, true, &mut out),
            PpStatus::BudgetExceeded
        );
        assert!(last_error().contains("budget"));
        pp_pair_free(pair);
        pp_complex_free(k);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(pp_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_interface() {
    let header_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/polyprod.h");
    let header = std::fs::read_to_string(&header_path).unwrap();
    for name in [
        "typedef struct PpComplex PpComplex;",
        "PP_STATUS_BUFFER_TOO_SMALL = 7",
        "pp_complex_from_maximal_faces",
        "pp_split_check",
        "pp_last_error_message",
        "pp_string_free",
    ] {
        assert!(header.contains(name), "{name}");
    }
    // the header must compile as C when a compiler is around
    if let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header_path)
        .status()
    {
        assert!(status.success());
    }
}
