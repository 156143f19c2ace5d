use std::ffi::{CStr, CString};
use std::ptr;

use nnscf_ffi::*;

fn last_error() -> String {
    let p = nnscf_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn chain3() -> *mut NnscfPoset {
    let json =
        CString::new(r#"{"elements":["1","2","3"],"covers":[["1","2"],["2","3"]]}"#).unwrap();
    let mut poset = ptr::null_mut();
    assert_eq!(
        unsafe { nnscf_poset_from_json(json.as_ptr(), &mut poset) },
        NnscfStatus::Ok
    );
    poset
}

fn gf(p: u64) -> *mut NnscfField {
    let mut field = ptr::null_mut();
    assert_eq!(
        unsafe { nnscf_field_new(p, 1, ptr::null(), 0, &mut field) },
        NnscfStatus::Ok
    );
    field
}

#[test]
fn counts_and_tables() {
    let poset = chain3();
    let field = gf(2);
    unsafe {
        assert_eq!(nnscf_poset_len(poset), 3);
        assert_eq!(nnscf_field_order(field), 2);
        let mut count = 0;
        assert_eq!(
            nnscf_count_nonnesting(poset, field, &mut count),
            NnscfStatus::Ok
        );
        assert_eq!(count, 5);

        let mut table = ptr::null_mut();
        assert_eq!(
            nnscf_table_new(poset, field, NnscfTheory::Nonnesting, 1 << 20, &mut table),
            NnscfStatus::Ok
        );
        assert_eq!(nnscf_table_len(table), 5);
        let mut text = ptr::null_mut();
        assert_eq!(nnscf_table_to_json(table, &mut text), NnscfStatus::Ok);
        let v: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(text).to_str().unwrap()).unwrap();
        assert_eq!(v["theory"], "nonnesting");
        nnscf_string_free(text);
        nnscf_table_free(table);

        assert_eq!(nnscf_verify_sct(poset, field, 1 << 20), NnscfStatus::Ok);
        nnscf_poset_free(poset);
        nnscf_field_free(field);
    }
}

#[test]
fn extension_field() {
    let modulus = [1u64, 1, 1];
    let mut field = ptr::null_mut();
    unsafe {
        assert_eq!(
            nnscf_field_new(2, 2, modulus.as_ptr(), 3, &mut field),
            NnscfStatus::Ok
        );
        assert_eq!(nnscf_field_order(field), 4);
        nnscf_field_free(field);
        let reducible = [1u64, 0, 1];
        assert_eq!(
            nnscf_field_new(2, 2, reducible.as_ptr(), 3, &mut field),
            NnscfStatus::Invalid
        );
    }
    assert!(!last_error().is_empty());
}

#[test]
fn error_codes() {
    unsafe {
        let mut field = ptr::null_mut();
        assert_eq!(
            nnscf_field_new(4, 1, ptr::null(), 0, &mut field),
            NnscfStatus::Invalid
        );
        assert!(!last_error().is_empty());

        let bad = CString::new("{not json").unwrap();
        let mut poset = ptr::null_mut();
        assert_eq!(
            nnscf_poset_from_json(bad.as_ptr(), &mut poset),
            NnscfStatus::Invalid
        );
        assert_eq!(
            nnscf_poset_from_json(ptr::null(), &mut poset),
            NnscfStatus::NullPointer
        );
        assert_eq!(
            nnscf_count_nonnesting(ptr::null(), ptr::null(), ptr::null_mut()),
            NnscfStatus::NullPointer
        );

        let poset = chain3();
        let field = gf(2);
        assert_eq!(nnscf_verify_sct(poset, field, 4), NnscfStatus::SizeGuard);
        assert!(last_error().contains("limit"));
        let mut table = ptr::null_mut();
        // closed formulas need no group; class sizes are dropped above the limit
        assert_eq!(
            nnscf_table_new(poset, field, NnscfTheory::Algebra, 4, &mut table),
            NnscfStatus::Ok
        );
        let mut text = ptr::null_mut();
        assert_eq!(nnscf_table_to_json(table, &mut text), NnscfStatus::Ok);
        let v: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(text).to_str().unwrap()).unwrap();
        assert!(v["class_sizes"].is_null());
        nnscf_string_free(text);
        nnscf_table_free(table);
        nnscf_poset_free(poset);
        nnscf_field_free(field);

        // success clears the previous message
        let field = gf(3);
        assert!(nnscf_last_error().is_null());
        nnscf_field_free(field);
        nnscf_field_free(ptr::null_mut());
        nnscf_string_free(ptr::null_mut());
        assert_eq!(nnscf_table_len(ptr::null()), 0);
    }
}

#[test]
fn command_line_entry_point() {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("ffi_chain4.json");
    std::fs::write(
        &path,
        r#"{"elements":["1","2","3","4"],"covers":[["1","2"],["2","3"],["3","4"]]}"#,
    )
    .unwrap();
    let args: Vec<CString> = ["enumerate", "--poset", path.to_str().unwrap()]
        .iter()
        .map(|s| CString::new(*s).unwrap())
        .collect();
    let argv: Vec<*const std::ffi::c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(nnscf_run(argv.len(), argv.as_ptr(), &mut out), 0);
        let v: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(out).to_str().unwrap()).unwrap();
        assert_eq!(v["count"], 14);
        nnscf_string_free(out);

        let bad = [CString::new("nope").unwrap()];
        let argv: Vec<*const std::ffi::c_char> = bad.iter().map(|a| a.as_ptr()).collect();
        assert_eq!(nnscf_run(1, argv.as_ptr(), &mut out), 2);
        nnscf_string_free(out);
    }
}

#[test]
fn header_declares_the_interface() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/nnscf.h")).unwrap();
    for name in [
        "nnscf_last_error",
        "nnscf_string_free",
        "nnscf_field_new",
        "nnscf_poset_from_json",
        "nnscf_count_nonnesting",
        "nnscf_table_new",
        "nnscf_table_to_json",
        "nnscf_verify_sct",
        "nnscf_run",
        "typedef struct NnscfTable NnscfTable",
        "NNSCF_STATUS_SIZE_GUARD = 3",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
