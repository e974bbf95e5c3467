use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use starlab_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(starlab_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn counts_through_handles() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(starlab_semigroup_new([4u32, 5, 7].as_ptr(), 3, &mut s), StarlabStatus::Ok);
        assert_eq!(starlab_semigroup_frobenius(s), 6);
        assert_eq!(starlab_semigroup_genus(s), 4);
        let mut f = ptr::null_mut();
        assert_eq!(starlab_field_new(3, &mut f), StarlabStatus::Ok);
        let mut e = ptr::null_mut();
        assert_eq!(starlab_engine_new(s, f, &mut e), StarlabStatus::Ok);
        assert_eq!(starlab_engine_ideal_count(e), 32);
        assert_eq!(starlab_engine_orbit_count(e), 14);
        let mut n = 0u64;
        assert_eq!(starlab_engine_count_stars(e, &mut n), StarlabStatus::Ok);
        assert_eq!(n, 67);
        starlab_engine_free(e);
        starlab_field_free(f);
        starlab_semigroup_free(s);
    }
}

#[test]
fn errors_map_to_exit_codes() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(starlab_semigroup_new([4u32, 6].as_ptr(), 2, &mut s), StarlabStatus::BadInput);
        assert!(s.is_null());
        assert!(last_error().contains("gcd"));
        let mut f = ptr::null_mut();
        assert_eq!(starlab_field_new(6, &mut f), StarlabStatus::BadInput);
        assert_eq!(starlab_semigroup_new(ptr::null(), 0, &mut s), StarlabStatus::NullPointer);
        assert_eq!(starlab_engine_ideal_count(ptr::null()), -1);

        let text = CString::new("3,4,5").unwrap();
        assert_eq!(starlab_semigroup_parse(text.as_ptr(), &mut s), StarlabStatus::Ok);
        assert_eq!(last_error(), "");
        assert_eq!(starlab_field_new(2, &mut f), StarlabStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(starlab_kunz_counterexample(s, f, &mut json), StarlabStatus::Gate);
        assert!(json.is_null());
        starlab_semigroup_free(s);
        starlab_field_free(f);
    }
}

#[test]
fn json_reports() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(starlab_field_new(2, &mut f), StarlabStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(starlab_kunz_lower_bound(5, f, &mut json), StarlabStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        starlab_string_free(json);
        assert!(text.starts_with("{\n  \"schema_version\": 1,"));
        assert!(text.contains("\"formula_bound\": \"128\""));

        let mut s = ptr::null_mut();
        assert_eq!(starlab_semigroup_kunz_family(4, &mut s), StarlabStatus::Ok);
        assert_eq!(starlab_kunz_counterexample(s, f, &mut json), StarlabStatus::Failed);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        starlab_string_free(json);
        assert!(text.contains("\"star_r\": 19"));
        starlab_semigroup_free(s);
        starlab_field_free(f);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(starlab_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_api() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/starlab.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["starlab_engine_new", "starlab_last_error", "starlab_string_free", "STARLAB_STATUS_GATE = 4", "typedef struct StarlabEngine StarlabEngine"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    // compile the header when a C compiler is around
    if let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&header).output() {
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}
