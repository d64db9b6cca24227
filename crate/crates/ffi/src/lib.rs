//! C ABI for the foliahodge engine.
//!
//! Models and analyses are opaque handles created by `fh_*_new`/`fh_model_*`
//! constructors and released with the matching `*_free`. Every fallible
//! call returns an [`FhStatus`]; on failure the message is available from
//! [`fh_last_error`] until the next call on the same thread. Strings
//! returned through `char **` are owned by the caller and released with
//! [`fh_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use foliahodge::cohomology::Analysis;
use foliahodge::model::{load_model, render_model, zoo, FoliatedModel};
use foliahodge::{contact, Error};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FhStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    UnknownModel = 5,
    Precondition = 6,
    Inconsistency = 7,
    Degree = 8,
    Dimension = 9,
    Io = 10,
    BufferTooSmall = 11,
    Panic = 12,
}

/// Which cohomology a Betti query refers to.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FhComplex {
    Basic = 0,
    DeRham = 1,
    Delta = 2,
}

/// Opaque model handle.
pub struct FhModel {
    inner: FoliatedModel,
}

/// Opaque handle to the cohomology of one model.
pub struct FhAnalysis {
    inner: Analysis,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(text).expect("no interior nul")));
}

fn status_of(e: &Error) -> FhStatus {
    match e {
        Error::Parse { .. } => FhStatus::Parse,
        Error::Validation(_) => FhStatus::Validation,
        Error::UnknownModel(_) => FhStatus::UnknownModel,
        Error::Precondition(_) => FhStatus::Precondition,
        Error::Inconsistency(_) => FhStatus::Inconsistency,
        Error::Degree(_) => FhStatus::Degree,
        Error::Dimension(_) => FhStatus::Dimension,
        Error::Io(_) => FhStatus::Io,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (FhStatus, String)>) -> FhStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FhStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside foliahodge");
            FhStatus::Panic
        }
    }
}

fn engine<T>(r: foliahodge::Result<T>) -> Result<T, (FhStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, (FhStatus, String)> {
    if p.is_null() {
        return Err((FhStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (FhStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, (FhStatus, String)> {
    p.as_ref().ok_or_else(|| (FhStatus::NullArgument, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), (FhStatus, String)> {
    if out.is_null() {
        return Err((FhStatus::NullArgument, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn fh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a model file (text or JSON).
///
/// # Safety
/// `source` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fh_model_load(source: *const c_char, out: *mut *mut FhModel) -> FhStatus {
    guard(|| {
        let m = engine(load_model(text(source, "source")?))?;
        put(out, Box::into_raw(Box::new(FhModel { inner: m })))
    })
}

/// Loads a builtin model by name (without the `zoo:` prefix).
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fh_model_zoo(name: *const c_char, out: *mut *mut FhModel) -> FhStatus {
    guard(|| {
        let m = engine(zoo(text(name, "name")?))?;
        put(out, Box::into_raw(Box::new(FhModel { inner: m })))
    })
}

/// # Safety
/// `model` must come from this library and not have been freed. NULL is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn fh_model_free(model: *mut FhModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Half the number of transverse generators.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fh_model_half_dim(model: *const FhModel, out: *mut usize) -> FhStatus {
    guard(|| put(out, handle(model, "model")?.inner.half_dim()))
}

/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fh_model_is_contact(model: *const FhModel, out: *mut bool) -> FhStatus {
    guard(|| put(out, handle(model, "model")?.inner.is_contact()))
}

/// The model in model-file text form; free with [`fh_string_free`].
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fh_model_render(model: *const FhModel, out: *mut *mut c_char) -> FhStatus {
    guard(|| put(out, owned_string(render_model(&handle(model, "model")?.inner))))
}

/// Boothby–Wang extension by a new generator `generator`.
///
/// # Safety
/// `model` must be a live handle, `generator` a nul-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fh_model_boothby_wang(
    model: *const FhModel,
    generator: *const c_char,
    out: *mut *mut FhModel,
) -> FhStatus {
    guard(|| {
        let m = handle(model, "model")?;
        let ext = engine(m.inner.boothby_wang_extend(text(generator, "generator")?))?;
        put(out, Box::into_raw(Box::new(FhModel { inner: ext })))
    })
}

/// Computes all cohomology of a model.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fh_analysis_new(model: *const FhModel, out: *mut *mut FhAnalysis) -> FhStatus {
    guard(|| {
        let a = engine(Analysis::new(&handle(model, "model")?.inner))?;
        put(out, Box::into_raw(Box::new(FhAnalysis { inner: a })))
    })
}

/// # Safety
/// `analysis` must come from this library and not have been freed. NULL is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn fh_analysis_free(analysis: *mut FhAnalysis) {
    if !analysis.is_null() {
        drop(Box::from_raw(analysis));
    }
}

/// Writes Betti numbers into `buf[0..cap]` and their count into `len`.
/// Returns `BufferTooSmall` (with `len` set) when `cap` is too small.
///
/// # Safety
/// `analysis` must be a live handle, `buf` valid for `cap` writes (or NULL
/// with `cap == 0`), `len` writable.
#[no_mangle]
pub unsafe extern "C" fn fh_analysis_betti(
    analysis: *const FhAnalysis,
    complex: FhComplex,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> FhStatus {
    guard(|| {
        let a = &handle(analysis, "analysis")?.inner;
        let betti = match complex {
            FhComplex::Basic => a.basic_betti(),
            FhComplex::DeRham => a.de_rham_betti(),
            FhComplex::Delta => a.delta_betti(),
        };
        put(len, betti.len())?;
        if cap < betti.len() {
            return Err((FhStatus::BufferTooSmall, format!("need room for {} values", betti.len())));
        }
        if buf.is_null() {
            return Err((FhStatus::NullArgument, "buffer is null".into()));
        }
        ptr::copy_nonoverlapping(betti.as_ptr(), buf, betti.len());
        Ok(())
    })
}

/// Level `s` of the transverse Lefschetz property (`-1` when it fails at
/// `s = 0`).
///
/// # Safety
/// `analysis` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fh_analysis_lefschetz_level(analysis: *const FhAnalysis, out: *mut i64) -> FhStatus {
    guard(|| {
        let r = engine(handle(analysis, "analysis")?.inner.transverse_lefschetz())?;
        put(out, r.max_s)
    })
}

/// Level `s` of the dδ-lemma.
///
/// # Safety
/// `analysis` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fh_analysis_dd_level(analysis: *const FhAnalysis, out: *mut i64) -> FhStatus {
    guard(|| {
        let r = engine(handle(analysis, "analysis")?.inner.dd_lemma())?;
        put(out, r.max_s)
    })
}

/// Level `s` of the contact Lefschetz property; `Precondition` without eta.
///
/// # Safety
/// `analysis` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fh_analysis_contact_level(analysis: *const FhAnalysis, out: *mut i64) -> FhStatus {
    guard(|| {
        let r = engine(contact::contact_lefschetz(&handle(analysis, "analysis")?.inner))?;
        put(out, r.max_s)
    })
}

/// # Safety
/// `analysis` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fh_analysis_cup_length(analysis: *const FhAnalysis, out: *mut usize) -> FhStatus {
    guard(|| {
        let r = engine(contact::cup_length(&handle(analysis, "analysis")?.inner))?;
        put(out, r.cup_length)
    })
}

/// Runs the command line with `argv[0..argc]` (without the program name).
/// Stores the exit code and the standard output; free the output with
/// [`fh_string_free`].
///
/// # Safety
/// `argv` must hold `argc` nul-terminated strings; `exit_code` and
/// `out_stdout` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fh_run_cli(
    argv: *const *const c_char,
    argc: usize,
    exit_code: *mut i32,
    out_stdout: *mut *mut c_char,
) -> FhStatus {
    guard(|| {
        if argv.is_null() && argc > 0 {
            return Err((FhStatus::NullArgument, "argv is null".into()));
        }
        let mut args = vec!["foliahodge".to_string()];
        for i in 0..argc {
            args.push(text(*argv.add(i), "argument")?.to_string());
        }
        let out = foliahodge::cli::run(args);
        if out.code != 0 && !out.stderr.is_empty() {
            set_error(out.stderr.trim_end());
        }
        put(exit_code, out.code)?;
        put(out_stdout, owned_string(out.stdout))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_codes_follow_engine_errors() {
        assert_eq!(status_of(&Error::UnknownModel("x".into())), FhStatus::UnknownModel);
        assert_eq!(status_of(&Error::Inconsistency("x".into())), FhStatus::Inconsistency);
    }

    #[test]
    fn panics_become_status() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, FhStatus::Panic);
        assert!(!fh_last_error().is_null());
    }
}
