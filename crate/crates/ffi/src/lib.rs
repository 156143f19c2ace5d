//! C ABI over `nnscf`.
//!
//! Objects are opaque heap handles released with the matching `_free`.
//! Every fallible call returns an `NnscfStatus`; on failure the message is
//! available from `nnscf_last_error` on the same thread until the next call.
//! Strings handed out by the library are released with `nnscf_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nnscf::arcs::enumerate;
use nnscf::cli::{exit_code, run_from};
use nnscf::json::{poset_from_json, table_to_json, PosetJson};
use nnscf::pattern::PatternGroup;
use nnscf::supercharacters::{verify_sct, SupercharacterTable};
use nnscf::{Error, Field, Poset};

/// Result codes. The nonzero values beyond 4 are specific to the C interface.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NnscfStatus {
    Ok = 0,
    CheckFailed = 1,
    Invalid = 2,
    SizeGuard = 3,
    Internal = 4,
    NullPointer = 5,
    Utf8 = 6,
    Panic = 7,
}

pub struct NnscfField(Field);
pub struct NnscfPoset(Poset);
pub struct NnscfTable(SupercharacterTable);

/// Which supercharacter theory a table describes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NnscfTheory {
    Nonnesting = 0,
    Algebra = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> NnscfStatus {
    match exit_code(e) {
        3 => NnscfStatus::SizeGuard,
        4 => NnscfStatus::Internal,
        _ => NnscfStatus::Invalid,
    }
}

enum Failure {
    Lib(Error),
    Status(NnscfStatus, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> NnscfStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NnscfStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside nnscf".into());
            NnscfStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(NnscfStatus::NullPointer, format!("{what} is null"))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Status(NnscfStatus::Utf8, format!("{what} is not UTF-8")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("no interior nul")
        .into_raw()
}

/// Message for the last failed call on this thread, or NULL. Owned by the library.
#[no_mangle]
pub extern "C" fn nnscf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn nnscf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// GF(p^e). `modulus` holds e+1 coefficients, constant first; it may be NULL when e = 1.
///
/// # Safety
/// `modulus` must point to `modulus_len` values when non-null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nnscf_field_new(
    p: u64,
    e: u32,
    modulus: *const u64,
    modulus_len: usize,
    out: *mut *mut NnscfField,
) -> NnscfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let m = (!modulus.is_null()).then(|| std::slice::from_raw_parts(modulus, modulus_len));
        let field = Field::new(p, e, m)?;
        *out = Box::into_raw(Box::new(NnscfField(field)));
        Ok(())
    })
}

/// # Safety
/// `field` must be NULL or a live handle from `nnscf_field_new`.
#[no_mangle]
pub unsafe extern "C" fn nnscf_field_free(field: *mut NnscfField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Number of elements q, or 0 for NULL.
///
/// # Safety
/// `field` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nnscf_field_order(field: *const NnscfField) -> u64 {
    field.as_ref().map_or(0, |f| u64::from(f.0.q()))
}

/// Poset from JSON `{"elements": [...], "covers": [[a, b], ...]}`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nnscf_poset_from_json(
    json: *const c_char,
    out: *mut *mut NnscfPoset,
) -> NnscfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(json, "json")?;
        let j: PosetJson = serde_json::from_str(text).map_err(Error::from)?;
        *out = Box::into_raw(Box::new(NnscfPoset(poset_from_json(&j)?)));
        Ok(())
    })
}

/// # Safety
/// `poset` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nnscf_poset_free(poset: *mut NnscfPoset) {
    if !poset.is_null() {
        drop(Box::from_raw(poset));
    }
}

/// Number of elements, or 0 for NULL.
///
/// # Safety
/// `poset` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nnscf_poset_len(poset: *const NnscfPoset) -> usize {
    poset.as_ref().map_or(0, |p| p.0.len())
}

/// Number of nonnesting arc diagrams on the poset over the field.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nnscf_count_nonnesting(
    poset: *const NnscfPoset,
    field: *const NnscfField,
    out: *mut u64,
) -> NnscfStatus {
    guard(|| {
        let (p, f) = (borrow(poset, "poset")?, borrow(field, "field")?);
        if out.is_null() {
            return Err(null("out"));
        }
        *out = enumerate(&p.0, &f.0, true).len() as u64;
        Ok(())
    })
}

/// Supercharacter table. `limit` bounds the group order for the algebra theory.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nnscf_table_new(
    poset: *const NnscfPoset,
    field: *const NnscfField,
    theory: NnscfTheory,
    limit: u64,
    out: *mut *mut NnscfTable,
) -> NnscfStatus {
    guard(|| {
        let (p, f) = (borrow(poset, "poset")?, borrow(field, "field")?);
        if out.is_null() {
            return Err(null("out"));
        }
        let table = match theory {
            NnscfTheory::Nonnesting => SupercharacterTable::nonnesting(&p.0, &f.0)?,
            NnscfTheory::Algebra => SupercharacterTable::algebra(&p.0, &f.0, limit)?,
        };
        *out = Box::into_raw(Box::new(NnscfTable(table)));
        Ok(())
    })
}

/// # Safety
/// `table` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nnscf_table_free(table: *mut NnscfTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Number of rows (and columns), or 0 for NULL.
///
/// # Safety
/// `table` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nnscf_table_len(table: *const NnscfTable) -> usize {
    table.as_ref().map_or(0, |t| t.0.len())
}

/// JSON rendering of the table; free the result with `nnscf_string_free`.
///
/// # Safety
/// `table` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nnscf_table_to_json(
    table: *const NnscfTable,
    out: *mut *mut c_char,
) -> NnscfStatus {
    guard(|| {
        let t = borrow(table, "table")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = to_c_string(table_to_json(&t.0).to_string());
        Ok(())
    })
}

/// Run the exhaustive supercharacter theory checks on U_P. Returns `CheckFailed`
/// when a check fails; the first failing check is reported by `nnscf_last_error`.
///
/// # Safety
/// Handles must be live.
#[no_mangle]
pub unsafe extern "C" fn nnscf_verify_sct(
    poset: *const NnscfPoset,
    field: *const NnscfField,
    limit: u64,
) -> NnscfStatus {
    guard(|| {
        let (p, f) = (borrow(poset, "poset")?, borrow(field, "field")?);
        let group = PatternGroup::with_limit(&p.0, &f.0, limit);
        group.checked_order()?;
        let report = verify_sct(&group)?;
        match report.checks.iter().find(|c| !c.passed) {
            None => Ok(()),
            Some(c) => Err(Failure::Status(
                NnscfStatus::CheckFailed,
                format!("{}: {}", c.name, c.witness.as_deref().unwrap_or("")),
            )),
        }
    })
}

/// Run the command line with `argv` (without the program name). The exit code
/// is returned and the output written to `*out`, to be freed with `nnscf_string_free`.
///
/// # Safety
/// `argv` must hold `argc` nul-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nnscf_run(
    argc: usize,
    argv: *const *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    let mut code = 0;
    let status = guard(|| {
        if out.is_null() || (argv.is_null() && argc > 0) {
            return Err(null("argv or out"));
        }
        let mut args = vec!["nnscf".to_string()];
        for k in 0..argc {
            args.push(read_str(*argv.add(k), "argument")?.to_string());
        }
        let outcome = run_from(args);
        code = outcome.code;
        *out = to_c_string(outcome.text);
        Ok(())
    });
    if status == NnscfStatus::Ok {
        code
    } else {
        status as i32
    }
}
