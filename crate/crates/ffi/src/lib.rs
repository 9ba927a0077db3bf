//! C interface. Objects are opaque handles freed with their `_free` function;
//! strings returned through out-parameters are freed with [`pp_string_free`].
//! Every call returns a [`PpStatus`]; on failure [`pp_last_error_message`] describes it.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use polyprod::format::parse_complex;
use polyprod::sr::sr_hilbert_series;
use polyprod::{
    pair_cone, pair_disk_sphere, pair_space_basepoint, Context, Error, IndexSubset, PairModel, SimplicialComplex,
};

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    ParseError = 3,
    BudgetExceeded = 4,
    VerificationMismatch = 5,
    Internal = 6,
    BufferTooSmall = 7,
}

/// A simplicial complex.
pub struct PpComplex(SimplicialComplex);

/// A CW pair model.
pub struct PpPair(PairModel);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("no interior nul"));
}

fn status_of(e: &Error) -> PpStatus {
    match e {
        Error::Parse { .. } => PpStatus::ParseError,
        Error::BudgetExceeded { .. } => PpStatus::BudgetExceeded,
        _ => PpStatus::InvalidInput,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), (PpStatus, String)>) -> PpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            PpStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            PpStatus::Internal
        }
    }
}

fn lib<T>(r: polyprod::Result<T>) -> Result<T, (PpStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (PpStatus, String) {
    (PpStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (PpStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), (PpStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (PpStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s)
        .map_err(|e| (PpStatus::Internal, e.to_string()))?
        .into_raw();
    Ok(())
}

unsafe fn copy_out<T: Copy>(values: &[T], buf: *mut T, cap: usize, len: *mut usize) -> Result<(), (PpStatus, String)> {
    if len.is_null() {
        return Err(null("len"));
    }
    *len = values.len();
    if values.len() > cap {
        return Err((
            PpStatus::BufferTooSmall,
            format!("need {} entries, have {cap}", values.len()),
        ));
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

unsafe fn collect_pairs(pairs: *const *const PpPair, n: usize) -> Result<Vec<PairModel>, (PpStatus, String)> {
    if n > 0 && pairs.is_null() {
        return Err(null("pairs"));
    }
    (0..n)
        .map(|i| deref(*pairs.add(i), "pair").map(|p| p.0.clone()))
        .collect()
}

/// Builds a complex on `m` vertices from generating faces given as bitmasks
/// (bit `v - 1` set for vertex `v`).
#[no_mangle]
pub unsafe extern "C" fn pp_complex_from_maximal_faces(
    m: usize,
    faces: *const u32,
    n_faces: usize,
    out: *mut *mut PpComplex,
) -> PpStatus {
    guard(|| {
        if n_faces > 0 && faces.is_null() {
            return Err(null("faces"));
        }
        let lists: Vec<Vec<usize>> = (0..n_faces)
            .map(|i| IndexSubset::from_mask(*faces.add(i)).to_vec())
            .collect();
        let k = lib(SimplicialComplex::from_maximal_faces(m, &lists))?;
        put(out, PpComplex(k))
    })
}

/// Parses the text (`m` / `face` lines) or JSON complex format.
#[no_mangle]
pub unsafe extern "C" fn pp_complex_parse(text: *const c_char, out: *mut *mut PpComplex) -> PpStatus {
    guard(|| {
        let text = deref(text, "text")?;
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (PpStatus::ParseError, e.to_string()))?;
        put(out, PpComplex(lib(parse_complex(s))?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn pp_complex_free(complex: *mut PpComplex) {
    if !complex.is_null() {
        drop(Box::from_raw(complex));
    }
}

#[no_mangle]
pub unsafe extern "C" fn pp_complex_num_vertices(complex: *const PpComplex, out: *mut usize) -> PpStatus {
    guard(|| {
        let k = deref(complex, "complex")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = k.0.m();
        Ok(())
    })
}

/// Writes `f_0 .. f_dim` to `buf`. `*len` receives the length even when
/// `cap` is too small.
#[no_mangle]
pub unsafe extern "C" fn pp_complex_f_vector(
    complex: *const PpComplex,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> PpStatus {
    guard(|| copy_out(&deref(complex, "complex")?.0.f_vector(), buf, cap, len))
}

/// Writes `h_0 .. h_(dim+1)`, with the same buffer convention as [`pp_complex_f_vector`].
#[no_mangle]
pub unsafe extern "C" fn pp_complex_h_vector(
    complex: *const PpComplex,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> PpStatus {
    guard(|| copy_out(&deref(complex, "complex")?.0.h_vector(), buf, cap, len))
}

/// `(D^(n+1), S^n)`.
#[no_mangle]
pub unsafe extern "C" fn pp_pair_disk_sphere(n: usize, out: *mut *mut PpPair) -> PpStatus {
    guard(|| put(out, PpPair(pair_disk_sphere(n))))
}

/// `(CA, A)` for a complex `A` based at `vertex`.
#[no_mangle]
pub unsafe extern "C" fn pp_pair_cone_from_complex(
    complex: *const PpComplex,
    vertex: usize,
    out: *mut *mut PpPair,
) -> PpStatus {
    guard(|| {
        let k = deref(complex, "complex")?;
        put(out, PpPair(lib(pair_cone(&k.0, vertex))?))
    })
}

/// `(X, x)` for a complex `X` based at `vertex`.
#[no_mangle]
pub unsafe extern "C" fn pp_pair_based_from_complex(
    complex: *const PpComplex,
    vertex: usize,
    out: *mut *mut PpPair,
) -> PpStatus {
    guard(|| {
        let k = deref(complex, "complex")?;
        put(out, PpPair(lib(pair_space_basepoint(&k.0, vertex))?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn pp_pair_free(pair: *mut PpPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// Homology of the polyhedral product as a JSON array of `{"degree", "betti", "torsion"}`.
/// `n_pairs` is 1 (used for every vertex) or the vertex count.
#[no_mangle]
pub unsafe extern "C" fn pp_moment_angle_homology_json(
    complex: *const PpComplex,
    pairs: *const *const PpPair,
    n_pairs: usize,
    reduced: bool,
    out: *mut *mut c_char,
) -> PpStatus {
    guard(|| {
        let k = &deref(complex, "complex")?.0;
        let pairs = lib(polyprod::polyprod::broadcast_pairs(
            &collect_pairs(pairs, n_pairs)?,
            k.m(),
        ))?;
        let ctx = Context::shared();
        let c = lib(ctx.moment_angle_chain(k, &pairs))?;
        let h = lib(polyprod::homology(&c, reduced))?;
        put_string(out, serde_json::to_string(&h).expect("plain data"))
    })
}

/// Reduced homology of `Z(K;(D^(n+1),S^n))` from full subcomplexes, as JSON
/// `{"total": .., "summands": [..]}`.
#[no_mangle]
pub unsafe extern "C" fn pp_hochster_json(complex: *const PpComplex, n: usize, out: *mut *mut c_char) -> PpStatus {
    guard(|| {
        let k = &deref(complex, "complex")?.0;
        let (total, summands) = lib(Context::shared().hochster_homology(k, n))?;
        let v = serde_json::json!({ "total": total, "summands": summands });
        put_string(out, v.to_string())
    })
}

/// Compares the homology with the sum over full subcomplexes. Returns
/// `PP_STATUS_VERIFICATION_MISMATCH` when they differ; `*verified` is set in both cases.
#[no_mangle]
pub unsafe extern "C" fn pp_split_check(
    complex: *const PpComplex,
    pairs: *const *const PpPair,
    n_pairs: usize,
    verified: *mut bool,
) -> PpStatus {
    guard(|| {
        let k = &deref(complex, "complex")?.0;
        if verified.is_null() {
            return Err(null("verified"));
        }
        let pairs = lib(polyprod::polyprod::broadcast_pairs(
            &collect_pairs(pairs, n_pairs)?,
            k.m(),
        ))?;
        let d = lib(Context::shared().stable_splitting(k, &pairs))?;
        *verified = d.verified;
        if d.verified {
            Ok(())
        } else {
            Err((
                PpStatus::VerificationMismatch,
                format!("sum {} differs from chain model {}", d.total, d.oracle),
            ))
        }
    })
}

/// Stanley–Reisner Hilbert series with generators in `degree`, as JSON
/// `{"num", "den", "expansion"}` with `trunc` expansion terms.
#[no_mangle]
pub unsafe extern "C" fn pp_sr_hilbert_json(
    complex: *const PpComplex,
    degree: usize,
    trunc: usize,
    out: *mut *mut c_char,
) -> PpStatus {
    guard(|| {
        let k = &deref(complex, "complex")?.0;
        let series = lib(sr_hilbert_series(k, degree))?;
        let view = lib(series.view(trunc))?;
        put_string(out, serde_json::to_string(&view).expect("plain data"))
    })
}

#[no_mangle]
pub unsafe extern "C" fn pp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn pp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn pp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
