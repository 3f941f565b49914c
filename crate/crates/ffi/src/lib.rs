//! C interface to nori-kernel.
//!
//! Objects cross the boundary as opaque handles created by `*_from_json` or
//! derived constructors and released by the matching `*_free`. Every fallible
//! call returns a [`NoriStatus`]; on failure the message is available from
//! [`nori_last_error`] on the same thread until the next failing call.
//! Strings returned through `out` parameters are owned by the caller and must
//! be released with [`nori_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::{c_char, c_int};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use nori_kernel::algebra::FiniteAlgebra;
use nori_kernel::comodule::is_semisimple;
use nori_kernel::diagram::{Representation, Subgraph};
use nori_kernel::endomorphism::{compute_end, compute_endvee};
use nori_kernel::error::Error;
use nori_kernel::homology::Complex;
use nori_kernel::json;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoriStatus {
    Ok = 0,
    /// A mathematical identity failed on the given data.
    Falsified = 1,
    InputError = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    /// Internal error; the message names the panic.
    Panic = 5,
}

pub struct NoriRepresentation {
    inner: Representation,
}

pub struct NoriAlgebra {
    inner: Arc<FiniteAlgebra>,
}

pub struct NoriComplex {
    inner: Complex,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).expect("no interior nul")));
}

fn status_of(e: &Error) -> NoriStatus {
    set_error(e.to_string());
    match e.exit_code() {
        1 => NoriStatus::Falsified,
        _ => NoriStatus::InputError,
    }
}

/// Runs `f`, turning panics and errors into status codes.
fn guard(f: impl FnOnce() -> Result<(), NoriStatus>) -> NoriStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NoriStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            NoriStatus::Panic
        }
    }
}

fn null_error(what: &str) -> NoriStatus {
    set_error(format!("{what} is null"));
    NoriStatus::NullPointer
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, NoriStatus> {
    if s.is_null() {
        return Err(null_error(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        NoriStatus::InvalidUtf8
    })
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, NoriStatus> {
    p.as_ref().ok_or_else(|| null_error(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), NoriStatus> {
    if out.is_null() {
        return Err(null_error(what));
    }
    out.write(value);
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nori_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn nori_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs the command line with `argc` arguments (program name excluded) and
/// stores the report in `*report`. Returns the exit code (0, 1 or 2), or -1
/// if an argument pointer is invalid.
///
/// # Safety
/// `argv` must point to `argc` nul-terminated strings; `report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nori_run(argc: c_int, argv: *const *const c_char, report: *mut *mut c_char) -> c_int {
    let mut code = -1;
    let status = guard(|| {
        if report.is_null() {
            return Err(null_error("report"));
        }
        let n = usize::try_from(argc).map_err(|_| {
            set_error("negative argc");
            NoriStatus::InputError
        })?;
        if n > 0 && argv.is_null() {
            return Err(null_error("argv"));
        }
        let mut args = vec!["nori-kernel".to_string()];
        for i in 0..n {
            args.push(read_str(*argv.add(i), "argument")?.to_string());
        }
        let outcome = nori_kernel::cli::run(args);
        code = outcome.code;
        report.write(to_c_string(outcome.output));
        Ok(())
    });
    if status == NoriStatus::Ok {
        code
    } else {
        -1
    }
}

/// Parses a representation document. `field` may be null to take the field
/// from the document.
///
/// # Safety
/// `json` (and `field` unless null) must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nori_representation_from_json(
    json: *const c_char,
    field: *const c_char,
    out: *mut *mut NoriRepresentation,
) -> NoriStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let field = if field.is_null() {
            None
        } else {
            Some(read_str(field, "field")?.parse().map_err(|e| status_of(&e))?)
        };
        let inner = json::parse_representation(text, field).map_err(|e| status_of(&e))?;
        write_out(out, Box::into_raw(Box::new(NoriRepresentation { inner })), "out")
    })
}

/// # Safety
/// `rep` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn nori_representation_free(rep: *mut NoriRepresentation) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// Number of vertices.
///
/// # Safety
/// `rep` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nori_representation_vertex_count(rep: *const NoriRepresentation, out: *mut usize) -> NoriStatus {
    guard(|| {
        let rep = handle(rep, "rep")?;
        write_out(out, rep.inner.diagram().vertices().len(), "out")
    })
}

/// End(H) over the whole diagram.
///
/// # Safety
/// `rep` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nori_end_algebra(rep: *const NoriRepresentation, out: *mut *mut NoriAlgebra) -> NoriStatus {
    guard(|| {
        let rep = &handle(rep, "rep")?.inner;
        let a = compute_end(rep, &Subgraph::full(rep.diagram())).map_err(|e| status_of(&e))?;
        write_out(out, Box::into_raw(Box::new(NoriAlgebra { inner: Arc::new(a) })), "out")
    })
}

/// Dimension of End^∨(H) after checking both coalgebra axioms.
///
/// # Safety
/// `rep` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nori_endvee_dim(rep: *const NoriRepresentation, out: *mut usize) -> NoriStatus {
    guard(|| {
        let rep = &handle(rep, "rep")?.inner;
        let c = compute_endvee(rep, &Subgraph::full(rep.diagram())).map_err(|e| status_of(&e))?;
        c.check_coassociativity().map_err(|e| status_of(&e))?;
        c.check_counit().map_err(|e| status_of(&e))?;
        write_out(out, c.dim(), "out")
    })
}

/// # Safety
/// `alg` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn nori_algebra_free(alg: *mut NoriAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nori_algebra_dim(alg: *const NoriAlgebra, out: *mut usize) -> NoriStatus {
    guard(|| write_out(out, handle(alg, "alg")?.inner.dim(), "out"))
}

/// Writes 1 if the algebra is semisimple, 0 if not, -1 if undecided.
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nori_algebra_is_semisimple(alg: *const NoriAlgebra, out: *mut c_int) -> NoriStatus {
    guard(|| {
        let v = is_semisimple(&handle(alg, "alg")?.inner);
        write_out(out, v.semisimple.map_or(-1, c_int::from), "out")
    })
}

/// Parses a complex document; d∘d must vanish.
///
/// # Safety
/// `json` (and `field` unless null) must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nori_complex_from_json(
    json: *const c_char,
    field: *const c_char,
    out: *mut *mut NoriComplex,
) -> NoriStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let field = if field.is_null() {
            None
        } else {
            Some(read_str(field, "field")?.parse().map_err(|e| status_of(&e))?)
        };
        let (inner, _) = json::parse_complex(text, field).map_err(|e| status_of(&e))?;
        write_out(out, Box::into_raw(Box::new(NoriComplex { inner })), "out")
    })
}

/// # Safety
/// `c` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn nori_complex_free(c: *mut NoriComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Cohomology dimensions from the first degree on. `*len` receives the number
/// of degrees; at most `cap` values are written to `dims`, which may be null
/// when `cap` is 0.
///
/// # Safety
/// `c` must be a live handle; `dims` must have room for `cap` values; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nori_complex_cohomology_dims(
    c: *const NoriComplex,
    dims: *mut usize,
    cap: usize,
    len: *mut usize,
) -> NoriStatus {
    guard(|| {
        let h = handle(c, "complex")?.inner.cohomology_dims();
        write_out(len, h.len(), "len")?;
        if cap > 0 {
            if dims.is_null() {
                return Err(null_error("dims"));
            }
            for (i, d) in h.iter().take(cap).enumerate() {
                dims.add(i).write(*d);
            }
        }
        Ok(())
    })
}

/// Lowest degree of the complex.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nori_complex_start(c: *const NoriComplex, out: *mut i64) -> NoriStatus {
    guard(|| write_out(out, handle(c, "complex")?.inner.start(), "out"))
}
