//! C ABI over the `ginzero` library.
//!
//! Ideals are opaque handles created by [`gz_ideal_parse`] and released with
//! [`gz_ideal_free`]. Every fallible call returns a [`GzStatus`]; on failure
//! [`gz_last_error_message`] describes the error. Strings handed out by the
//! library are freed with [`gz_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ginzero::criteria::invariants_via_gin0;
use ginzero::job::{parse_ideal_file, run_command, JobSpec};
use ginzero::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GzStatus {
    Ok = 0,
    Null = 1,
    Utf8 = 2,
    Parse = 3,
    InvalidArg = 4,
    Precondition = 5,
    Certification = 6,
    Internal = 7,
}

/// A parsed job: ring, generators and run options.
pub struct GzIdeal {
    spec: JobSpec,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> GzStatus {
    match e {
        Error::Parse { .. } | Error::Json(_) => GzStatus::Parse,
        Error::InvalidCharacteristic(_)
        | Error::DimensionMismatch { .. }
        | Error::InvalidArgument(_)
        | Error::IndexOutOfRange { .. }
        | Error::UnknownCommand(_)
        | Error::EmptyGenerators => GzStatus::InvalidArg,
        Error::NotHomogeneous(_)
        | Error::UnitIdeal
        | Error::ZeroIdeal
        | Error::NotWeaklyStable(_)
        | Error::NotStable(_)
        | Error::NotSquarefree(_)
        | Error::SingularChange => GzStatus::Precondition,
        Error::Certification { .. } => GzStatus::Certification,
        Error::TheoremViolation(_) | Error::Internal(_) | Error::Io(_) => GzStatus::Internal,
    }
}

fn fail(status: GzStatus, msg: &str) -> GzStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> Result<(), GzStatus>) -> GzStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            GzStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(GzStatus::Internal, &format!("panic: {msg}"))
        }
    }
}

fn lib_err(e: Error) -> GzStatus {
    fail(status_of(&e), &e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, GzStatus> {
    if p.is_null() {
        return Err(fail(GzStatus::Null, &format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|e| fail(GzStatus::Utf8, &format!("{what}: {e}")))
}

unsafe fn handle<'a>(p: *const GzIdeal) -> Result<&'a GzIdeal, GzStatus> {
    p.as_ref().ok_or_else(|| fail(GzStatus::Null, "ideal handle is null"))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), GzStatus> {
    if out.is_null() {
        return Err(fail(GzStatus::Null, "output pointer is null"));
    }
    out.write(v);
    Ok(())
}

fn to_c(s: String) -> Result<*mut c_char, GzStatus> {
    CString::new(s).map(CString::into_raw).map_err(|_| fail(GzStatus::Internal, "string contains NUL"))
}

/// Parses a JSON job (`{"vars": [...], "char": c, "gens": [...]}`).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn gz_ideal_parse(json: *const c_char, out: *mut *mut GzIdeal) -> GzStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(GzStatus::Null, "output pointer is null"));
        }
        out.write(ptr::null_mut());
        let text = read_str(json, "json")?;
        let spec = parse_ideal_file(text).map_err(lib_err)?;
        out.write(Box::into_raw(Box::new(GzIdeal { spec })));
        Ok(())
    })
}

/// # Safety
/// `ideal` must come from [`gz_ideal_parse`] and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn gz_ideal_free(ideal: *mut GzIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gz_ideal_num_vars(ideal: *const GzIdeal, out: *mut usize) -> GzStatus {
    guard(|| put(out, handle(ideal)?.spec.vars.len()))
}

/// Number of nonzero generators after reduction modulo the characteristic.
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gz_ideal_num_gens(ideal: *const GzIdeal, out: *mut usize) -> GzStatus {
    guard(|| put(out, handle(ideal)?.spec.ideal.gens().len()))
}

/// Generator `index` as text; free the result with [`gz_string_free`].
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gz_ideal_generator(ideal: *const GzIdeal, index: usize, out: *mut *mut c_char) -> GzStatus {
    guard(|| {
        let spec = &handle(ideal)?.spec;
        let g = spec.ideal.gens().get(index).ok_or_else(|| {
            fail(GzStatus::InvalidArg, &format!("generator index {index} out of range 0..{}", spec.ideal.gens().len()))
        })?;
        put(out, to_c(g.to_text(&spec.vars))?)
    })
}

/// `dim (A/I)_d`.
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gz_ideal_hilbert_value(ideal: *const GzIdeal, d: i64, out: *mut i64) -> GzStatus {
    guard(|| {
        let hs = handle(ideal)?.spec.ideal.hilbert_series().map_err(lib_err)?;
        put(out, hs.value(d))
    })
}

/// `reg I`, read off the zero-generic initial ideal computed with `seed`.
/// The zero ideal reports `-1`.
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gz_ideal_regularity(ideal: *const GzIdeal, seed: u64, out: *mut i64) -> GzStatus {
    guard(|| {
        let spec = &handle(ideal)?.spec;
        let r = invariants_via_gin0(&spec.ideal, &spec.gin_options().with_seed(seed)).map_err(lib_err)?;
        put(out, r.invariants.reg_ideal.unwrap_or(-1))
    })
}

/// The job as JSON; free the result with [`gz_string_free`].
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gz_ideal_to_json(ideal: *const GzIdeal, out: *mut *mut c_char) -> GzStatus {
    guard(|| put(out, to_c(handle(ideal)?.spec.to_json_string())?))
}

/// Runs a CLI command and returns its JSON report and exit code (0 pass,
/// 2 audit failure). A null `command` runs the command stored in the job.
///
/// # Safety
/// `ideal` must be a live handle, `command` null or NUL-terminated, and
/// `out_json` writable. `out_exit` may be null.
#[no_mangle]
pub unsafe extern "C" fn gz_run_job(
    ideal: *const GzIdeal,
    command: *const c_char,
    out_json: *mut *mut c_char,
    out_exit: *mut i32,
) -> GzStatus {
    guard(|| {
        let spec = &handle(ideal)?.spec;
        let command = if command.is_null() { None } else { Some(read_str(command, "command")?) };
        if out_json.is_null() {
            return Err(fail(GzStatus::Null, "output pointer is null"));
        }
        let report = run_command(spec, command).map_err(lib_err)?;
        out_json.write(to_c(report.to_pretty_string())?);
        if !out_exit.is_null() {
            out_exit.write(report.exit_code());
        }
        Ok(())
    })
}

/// # Safety
/// `s` must be a string returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn gz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, empty after a success.
/// The pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn gz_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
