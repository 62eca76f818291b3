//! C ABI over the biram library.
//!
//! Bigraphs and analysis reports cross the boundary as opaque handles. Every
//! fallible call returns a [`BiramStatus`]; the message of the most recent
//! failure on the calling thread is available from [`biram_last_error`].
//! Strings returned by this library are owned by the caller and released with
//! [`biram_string_free`].

use biram::bigraph::Bigraph;
use biram::io;
use biram::jobs::{self, ActionKind, ErrorClass, InstanceSpec, JobError, PipelineReport};
use biram::lattice::LatticeKind;
use biram::spectral::SpectrumOptions;
use biram::Budgets;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Result codes. Values 1 to 4 coincide with the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiramStatus {
    Ok = 0,
    Io = 1,
    Config = 2,
    Budget = 3,
    Invariant = 4,
    NullArgument = 5,
    InvalidUtf8 = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiramLattice {
    Eisenstein = 0,
    Gauss = 1,
    Mumford = 2,
}

/// Right G-set of the construction; `Regular` gives the Cayley bigraph.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiramAction {
    Regular = 0,
    ProjectivePlane = 1,
    Isotropic = 2,
}

/// Opaque bigraph handle.
pub struct BiramBigraph(Bigraph);

/// Opaque spectrum-and-verdict handle.
pub struct BiramReport(PipelineReport);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BiramShape {
    pub n_left: usize,
    pub n_right: usize,
    /// K+1
    pub left_degree: usize,
    /// k+1
    pub right_degree: usize,
    pub weighted: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BiramVerdict {
    pub weakly: bool,
    pub adj: bool,
    pub fully: bool,
    pub excessiveness: usize,
    /// NaN when the bigraph is not a biexpander
    pub biexpander_eps: f64,
    pub perron: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: BiramStatus, msg: &str) -> BiramStatus {
    set_error(msg);
    status
}

fn from_job(e: JobError) -> BiramStatus {
    let status = match e.class {
        ErrorClass::Io => BiramStatus::Io,
        ErrorClass::Config => BiramStatus::Config,
        ErrorClass::Budget => BiramStatus::Budget,
        ErrorClass::Invariant => BiramStatus::Invariant,
    };
    fail(status, &e.message)
}

/// Run `f`, mapping panics to [`BiramStatus::Panic`].
fn guard(f: impl FnOnce() -> BiramStatus) -> BiramStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(BiramStatus::Panic, "internal panic"))
}

fn write_string(text: String, out: *mut *mut c_char) -> BiramStatus {
    match CString::new(text) {
        Ok(c) => {
            // SAFETY: callers check `out` for null before reaching here.
            unsafe { *out = c.into_raw() };
            BiramStatus::Ok
        }
        Err(_) => fail(BiramStatus::Invariant, "output contains a NUL byte"),
    }
}

/// Message of the last failed call on this thread, or NULL when there is none.
/// The string is newly allocated; release it with [`biram_string_free`].
#[no_mangle]
pub extern "C" fn biram_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// Static description of a status code. Never NULL; do not free.
#[no_mangle]
pub extern "C" fn biram_status_name(status: BiramStatus) -> *const c_char {
    let s: &'static CStr = match status {
        BiramStatus::Ok => c"ok",
        BiramStatus::Io => c"io error",
        BiramStatus::Config => c"invalid configuration",
        BiramStatus::Budget => c"budget exceeded",
        BiramStatus::Invariant => c"invariant guard failed",
        BiramStatus::NullArgument => c"null argument",
        BiramStatus::InvalidUtf8 => c"invalid utf-8",
        BiramStatus::BufferTooSmall => c"buffer too small",
        BiramStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Build the Cayley (`Regular`) or Schreier bigraph for lattice data (p, q)
/// with default budgets.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle. On
/// success `*out` owns a bigraph that must be released with
/// [`biram_bigraph_free`]; on failure `*out` is left untouched.
#[no_mangle]
pub unsafe extern "C" fn biram_bigraph_construct(
    lattice: BiramLattice,
    p: u32,
    q: u32,
    action: BiramAction,
    out: *mut *mut BiramBigraph,
) -> BiramStatus {
    if out.is_null() {
        return fail(BiramStatus::NullArgument, "out is NULL");
    }
    guard(|| {
        let lattice = match lattice {
            BiramLattice::Eisenstein => LatticeKind::Eisenstein,
            BiramLattice::Gauss => LatticeKind::Gauss,
            BiramLattice::Mumford => LatticeKind::Mumford,
        };
        let action = match action {
            BiramAction::Regular => ActionKind::Regular,
            BiramAction::ProjectivePlane => ActionKind::ProjectivePlane,
            BiramAction::Isotropic => ActionKind::Isotropic,
        };
        match jobs::construct(&InstanceSpec::new(lattice, p, q, action), &Budgets::default()) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(BiramBigraph(g)));
                BiramStatus::Ok
            }
            Err(e) => from_job(e),
        }
    })
}

/// Parse a bigraph JSON document as written by the CLI `construct` command.
///
/// # Safety
/// `json` must be a NUL-terminated string valid for reads. `out` must be a
/// valid pointer to writable storage for one handle; release the result with
/// [`biram_bigraph_free`].
#[no_mangle]
pub unsafe extern "C" fn biram_bigraph_from_json(json: *const c_char, out: *mut *mut BiramBigraph) -> BiramStatus {
    if json.is_null() || out.is_null() {
        return fail(BiramStatus::NullArgument, "json or out is NULL");
    }
    guard(|| {
        let Ok(text) = CStr::from_ptr(json).to_str() else {
            return fail(BiramStatus::InvalidUtf8, "json is not valid UTF-8");
        };
        match io::import_bigraph(text) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(BiramBigraph(g)));
                BiramStatus::Ok
            }
            Err(e) => from_job(e.into()),
        }
    })
}

/// Serialize a bigraph to schema-versioned JSON.
///
/// # Safety
/// `g` must be a live handle from this library. `out` must be a valid pointer
/// to writable storage; release the string with [`biram_string_free`].
#[no_mangle]
pub unsafe extern "C" fn biram_bigraph_to_json(g: *const BiramBigraph, out: *mut *mut c_char) -> BiramStatus {
    if g.is_null() || out.is_null() {
        return fail(BiramStatus::NullArgument, "g or out is NULL");
    }
    guard(|| match io::export_bigraph(&(*g).0) {
        Ok(text) => write_string(text, out),
        Err(e) => from_job(e.into()),
    })
}

/// # Safety
/// `g` must be a live handle from this library and `out` a valid pointer to a
/// writable [`BiramShape`].
#[no_mangle]
pub unsafe extern "C" fn biram_bigraph_shape(g: *const BiramBigraph, out: *mut BiramShape) -> BiramStatus {
    if g.is_null() || out.is_null() {
        return fail(BiramStatus::NullArgument, "g or out is NULL");
    }
    let g = &(*g).0;
    *out = BiramShape {
        n_left: g.n_left,
        n_right: g.n_right,
        left_degree: g.big_k + 1,
        right_degree: g.small_k + 1,
        weighted: g.is_weighted(),
    };
    BiramStatus::Ok
}

/// Release a bigraph. NULL is ignored.
///
/// # Safety
/// `g` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn biram_bigraph_free(g: *mut BiramBigraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Spectrum with exact excessiveness and the Ramanujan verdict at the default
/// tolerance.
///
/// # Safety
/// `g` must be a live bigraph handle and `out` a valid pointer to writable
/// storage for one handle; release the result with [`biram_report_free`].
#[no_mangle]
pub unsafe extern "C" fn biram_analyze(g: *const BiramBigraph, out: *mut *mut BiramReport) -> BiramStatus {
    if g.is_null() || out.is_null() {
        return fail(BiramStatus::NullArgument, "g or out is NULL");
    }
    guard(|| match jobs::analyze(&(*g).0, &SpectrumOptions::default(), None) {
        Ok(r) => {
            *out = Box::into_raw(Box::new(BiramReport(r)));
            BiramStatus::Ok
        }
        Err(e) => from_job(e),
    })
}

/// # Safety
/// `r` must be a live report handle and `out` a valid pointer to a writable
/// [`BiramVerdict`].
#[no_mangle]
pub unsafe extern "C" fn biram_report_verdict(r: *const BiramReport, out: *mut BiramVerdict) -> BiramStatus {
    if r.is_null() || out.is_null() {
        return fail(BiramStatus::NullArgument, "r or out is NULL");
    }
    let rep = &(*r).0;
    *out = BiramVerdict {
        weakly: rep.verdict.weakly,
        adj: rep.verdict.adj,
        fully: rep.verdict.fully,
        excessiveness: rep.spectrum.excessiveness,
        biexpander_eps: rep.verdict.biexpander_eps.unwrap_or(f64::NAN),
        perron: rep.spectrum.pf,
    };
    BiramStatus::Ok
}

/// Copy the positive adjacency eigenvalues (descending, Perron value first)
/// into `buf`. `*len` receives the total count even when `cap` is too small,
/// in which case nothing is copied and `BufferTooSmall` is returned.
///
/// # Safety
/// `r` must be a live report handle, `len` a valid writable pointer, and `buf`
/// valid for `cap` writes of `double` (it may be NULL when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn biram_report_lambdas(
    r: *const BiramReport,
    buf: *mut f64,
    cap: usize,
    len: *mut usize,
) -> BiramStatus {
    if r.is_null() || len.is_null() || (buf.is_null() && cap > 0) {
        return fail(BiramStatus::NullArgument, "r, len or buf is NULL");
    }
    let lambdas = &(*r).0.spectrum.lambdas;
    *len = lambdas.len();
    if cap < lambdas.len() {
        return fail(BiramStatus::BufferTooSmall, "buffer shorter than the eigenvalue count");
    }
    ptr::copy_nonoverlapping(lambdas.as_ptr(), buf, lambdas.len());
    BiramStatus::Ok
}

/// Serialize the combined bigraph summary, spectrum and verdict to JSON
/// (the CLI `pipeline` document).
///
/// # Safety
/// `r` must be a live report handle and `out` a valid pointer to writable
/// storage; release the string with [`biram_string_free`].
#[no_mangle]
pub unsafe extern "C" fn biram_report_to_json(r: *const BiramReport, out: *mut *mut c_char) -> BiramStatus {
    if r.is_null() || out.is_null() {
        return fail(BiramStatus::NullArgument, "r or out is NULL");
    }
    guard(|| match io::to_json("pipeline", &(*r).0) {
        Ok(text) => write_string(text, out),
        Err(e) => from_job(e.into()),
    })
}

/// Release a report. NULL is ignored.
///
/// # Safety
/// `r` must be NULL or a report handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn biram_report_free(r: *mut BiramReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn biram_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
