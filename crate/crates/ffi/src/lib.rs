//! C interface to `residuum`.
//!
//! Objects cross the boundary as opaque handles that the caller releases
//! with the matching `_free` function. Every fallible call returns a
//! [`ResiduumStatus`]; on failure [`residuum_last_error`] describes what went
//! wrong on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;
use residuum::residue::{annihilator, multiplicity_ep, Multiplicity};
use residuum::{Error, ExpVec, MonomialIdeal, MonomialSeq, Weight};

/// Result codes. `Ok` is zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResiduumStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotCofinite = 3,
    Unsupported = 4,
    /// a value does not fit the fixed-width output
    Overflow = 5,
    BufferTooSmall = 6,
    /// a panic was caught at the boundary
    Internal = 7,
}

/// A monomial sequence `z^A`.
pub struct ResiduumSeq(MonomialSeq);

/// A monomial ideal, listed by its minimal generators.
pub struct ResiduumIdeal(MonomialIdeal);

/// `e^p(z^A)` as a fraction. `determined` is false when the facet relations
/// leave the value open; `exact` is true when every coefficient is known
/// without appeal to the relations.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ResiduumMultiplicity {
    pub determined: bool,
    pub exact: bool,
    pub numerator: i64,
    pub denominator: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> ResiduumStatus {
    match err {
        Error::NotCofinite { .. } => ResiduumStatus::NotCofinite,
        Error::Unsupported(_) => ResiduumStatus::Unsupported,
        _ => ResiduumStatus::InvalidArgument,
    }
}

struct Fail(ResiduumStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(ResiduumStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, records its error message and turns panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> ResiduumStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            ResiduumStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error (panic caught at the C boundary)");
            ResiduumStatus::Internal
        }
    }
}

/// # Safety
/// `ptr` must be null or valid for `len` reads.
unsafe fn slice<'a>(ptr: *const u64, len: usize, what: &str) -> Result<&'a [u64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

/// # Safety
/// `weights` must be null (all ones) or valid for `len` reads.
unsafe fn weight(seq: &MonomialSeq, weights: *const u64, len: usize) -> Result<Weight, Fail> {
    if weights.is_null() {
        return Ok(Weight::ones(seq.len()));
    }
    let w = slice(weights, len, "weights")?;
    if w.len() != seq.len() {
        return Err(Fail(
            ResiduumStatus::InvalidArgument,
            format!("weight has {} entries, sequence has {} generators", w.len(), seq.len()),
        ));
    }
    Ok(Weight::new(w.to_vec())?)
}

/// Message of the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next call into this library on the same
/// thread.
#[no_mangle]
pub extern "C" fn residuum_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a sequence from `count` exponent vectors of length `dim`, stored
/// row by row in `exps`.
///
/// # Safety
/// `exps` must be valid for `dim * count` reads and `out` for one write.
#[no_mangle]
pub unsafe extern "C" fn residuum_seq_new(
    dim: usize,
    exps: *const u64,
    count: usize,
    out: *mut *mut ResiduumSeq,
) -> ResiduumStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let total = dim
            .checked_mul(count)
            .ok_or_else(|| Fail(ResiduumStatus::InvalidArgument, "dim * count overflows".into()))?;
        let data = slice(exps, total, "exps")?;
        if dim == 0 || count == 0 {
            return Err(Fail(ResiduumStatus::InvalidArgument, "empty sequence".into()));
        }
        let rows = data.chunks(dim).map(|r| ExpVec::from(r.to_vec())).collect();
        let seq = MonomialSeq::new(dim, rows)?;
        *out = Box::into_raw(Box::new(ResiduumSeq(seq)));
        Ok(())
    })
}

/// # Safety
/// `seq` must be null or a handle from `residuum_seq_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn residuum_seq_free(seq: *mut ResiduumSeq) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// `ann R^p(z^A)`. A null `weights` means `p = (1, ..., 1)`.
///
/// # Safety
/// `seq` must be a live handle, `weights` null or valid for `len` reads and
/// `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn residuum_annihilator(
    seq: *const ResiduumSeq,
    weights: *const u64,
    len: usize,
    out: *mut *mut ResiduumIdeal,
) -> ResiduumStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let seq = &seq.as_ref().ok_or_else(|| null("seq"))?.0;
        let p = weight(seq, weights, len)?;
        let ann = annihilator(seq, &p)?;
        *out = Box::into_raw(Box::new(ResiduumIdeal(ann)));
        Ok(())
    })
}

/// Number of minimal generators, or 0 for a null handle.
///
/// # Safety
/// `ideal` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn residuum_ideal_len(ideal: *const ResiduumIdeal) -> usize {
    ideal.as_ref().map_or(0, |i| i.0.gens().len())
}

/// Number of variables, or 0 for a null handle.
///
/// # Safety
/// `ideal` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn residuum_ideal_dim(ideal: *const ResiduumIdeal) -> usize {
    ideal.as_ref().map_or(0, |i| i.0.dim())
}

/// Copies the generators row by row into `buf`, which must hold
/// `len * dim` entries; `written` receives the number of entries needed.
/// Generators are in lexicographic order.
///
/// # Safety
/// `ideal` must be a live handle, `buf` valid for `cap` writes and
/// `written` null or valid for one write.
#[no_mangle]
pub unsafe extern "C" fn residuum_ideal_gens(
    ideal: *const ResiduumIdeal,
    buf: *mut u64,
    cap: usize,
    written: *mut usize,
) -> ResiduumStatus {
    guard(|| {
        let ideal = &ideal.as_ref().ok_or_else(|| null("ideal"))?.0;
        let need = ideal.gens().len() * ideal.dim();
        if !written.is_null() {
            *written = need;
        }
        if cap < need {
            return Err(Fail(
                ResiduumStatus::BufferTooSmall,
                format!("buffer holds {cap} entries, {need} needed"),
            ));
        }
        if need > 0 && buf.is_null() {
            return Err(null("buf"));
        }
        for (k, c) in ideal.gens().iter().flat_map(|g| g.coords()).enumerate() {
            *buf.add(k) = *c;
        }
        Ok(())
    })
}

/// # Safety
/// `ideal` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn residuum_ideal_free(ideal: *mut ResiduumIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// `e^p(z^A)`. A null `weights` means `p = (1, ..., 1)`. An undetermined
/// value is not an error: `out->determined` is false and the fraction 0/1.
///
/// # Safety
/// `seq` must be a live handle, `weights` null or valid for `len` reads and
/// `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn residuum_multiplicity(
    seq: *const ResiduumSeq,
    weights: *const u64,
    len: usize,
    out: *mut ResiduumMultiplicity,
) -> ResiduumStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let seq = &seq.as_ref().ok_or_else(|| null("seq"))?.0;
        let p = weight(seq, weights, len)?;
        let m = multiplicity_ep(seq, &p)?;
        let mut res = ResiduumMultiplicity {
            determined: false,
            exact: matches!(m, Multiplicity::Exact { .. }),
            numerator: 0,
            denominator: 1,
        };
        if let Some(v) = m.determined() {
            let fit = |x: &num_bigint::BigInt| {
                x.to_i64()
                    .ok_or_else(|| Fail(ResiduumStatus::Overflow, format!("{x} does not fit in 64 bits")))
            };
            res.numerator = fit(v.numer())?;
            res.denominator = fit(v.denom())?;
            res.determined = true;
        }
        *out = res;
        Ok(())
    })
}
