//! C ABI over `qudit-lgt`.
//!
//! Every entry point returns a [`QlStatus`]. On failure the message is kept
//! per thread and can be copied out with [`ql_last_error`]. Handles are
//! opaque, owned by the caller, and released with the matching `_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use qudit_lgt::bosonic::{build_dual, StringForm};
use qudit_lgt::circuits::clifford::qutrit_t_nogo;
use qudit_lgt::dense::{DenseOperator, Operator};
use qudit_lgt::encoding::{build_hamiltonian, Encoding, HamiltonianParams};
use qudit_lgt::gauss_code::{build_code, Boundary, GaussCode, LatticeSpec};
use qudit_lgt::io::{write_json, write_matrix_file, CodeFile};
use qudit_lgt::logical::rewrite_hamiltonian;
use qudit_lgt::stabilizer::PauliKind;
use qudit_lgt::verify::{duality_check, DualityOptions};
use qudit_lgt::Error;

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Capacity = 3,
    GaugeVariant = 4,
    Io = 5,
    BufferTooSmall = 6,
    Internal = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QlBoundary {
    Periodic = 0,
    Open = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QlEncoding {
    Projector = 0,
    Compact = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QlPauliKind {
    X = 0,
    Z = 1,
    Full = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QlForm {
    Bosonic = 0,
    Logical = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QlCouplings {
    pub m: f64,
    pub eps: f64,
    pub lambda_e: f64,
    pub lambda_p: f64,
    pub encoding: QlEncoding,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QlDualityResult {
    pub max_matrix_diff: f64,
    /// NaN when the spectral comparison was skipped.
    pub max_spectrum_diff: f64,
    pub physical_dim: i64,
    pub logical_dim: u64,
    pub gauge_violations: u64,
    pub pass: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QlNogoResult {
    pub total: u64,
    pub txt_clifford: u64,
    pub t_clifford: u64,
    pub consistent: u64,
    pub sum_rule_consistent: u64,
    pub congruent_implies_clifford: bool,
}

/// Gauss-law code on a lattice.
pub struct QlCode(GaussCode);

/// Dense complex matrix, row-major on export.
pub struct QlMatrix(DenseOperator);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

struct Failure(QlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Capacity { .. } | Error::EnumerationLimit { .. } => QlStatus::Capacity,
            Error::GaugeVariant { .. } => QlStatus::GaugeVariant,
            Error::Io(_) => QlStatus::Io,
            Error::Internal(_) => QlStatus::Internal,
            _ => QlStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(QlStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            QlStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            QlStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn path<'a>(p: *const c_char) -> Result<&'a Path, Failure> {
    if p.is_null() {
        return Err(null("path"));
    }
    let s = CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(QlStatus::InvalidArgument, "path is not UTF-8".into()))?;
    Ok(Path::new(s))
}

/// Copies `bytes` plus a NUL into `buf`; `needed` always receives the full size.
unsafe fn copy_out(bytes: &[u8], buf: *mut c_char, len: usize, needed: *mut usize) -> Result<(), Failure> {
    if let Some(n) = needed.as_mut() {
        *n = bytes.len() + 1;
    }
    if buf.is_null() || len < bytes.len() + 1 {
        return Err(Failure(
            QlStatus::BufferTooSmall,
            format!("buffer of {len} bytes, {} needed", bytes.len() + 1),
        ));
    }
    ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast::<u8>(), bytes.len());
    *buf.add(bytes.len()) = 0;
    Ok(())
}

unsafe fn lattice(
    dims: usize,
    extent: *const usize,
    n_extent: usize,
    levels: u32,
    boundary: QlBoundary,
) -> Result<LatticeSpec, Failure> {
    if extent.is_null() {
        return Err(null("extent"));
    }
    let extent = std::slice::from_raw_parts(extent, n_extent).to_vec();
    let boundary = match boundary {
        QlBoundary::Periodic => Boundary::Periodic,
        QlBoundary::Open => Boundary::Open,
    };
    Ok(LatticeSpec::new(dims, extent, boundary, levels)?)
}

fn params(c: &QlCouplings) -> HamiltonianParams {
    HamiltonianParams::new(c.m, c.eps, c.lambda_e)
        .with_plaquette(c.lambda_p)
        .with_encoding(match c.encoding {
            QlEncoding::Projector => Encoding::Projector,
            QlEncoding::Compact => Encoding::Compact,
        })
}

/// Copies the last error of this thread into `buf` (NUL-terminated).
///
/// # Safety
/// `buf` must be valid for `len` bytes or null; `needed` must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn ql_last_error(buf: *mut c_char, len: usize, needed: *mut usize) -> QlStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    match copy_out(msg.as_bytes(), buf, len, needed) {
        Ok(()) => QlStatus::Ok,
        Err(Failure(s, _)) => s,
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ql_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds the Gauss-law code of a `dims`-dimensional lattice.
///
/// # Safety
/// `extent` must point to `n_extent` values; `out_code` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_code_build(
    dims: usize,
    extent: *const usize,
    n_extent: usize,
    levels: u32,
    boundary: QlBoundary,
    out_code: *mut *mut QlCode,
) -> QlStatus {
    guard(|| {
        let slot = out(out_code, "out_code")?;
        *slot = ptr::null_mut();
        let g = build_code(&lattice(dims, extent, n_extent, levels, boundary)?)?;
        *slot = Box::into_raw(Box::new(QlCode(g)));
        Ok(())
    })
}

/// # Safety
/// `code` must come from [`ql_code_build`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ql_code_free(code: *mut QlCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Physical qudits `n` and logical qudits `k`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_code_params(code: *const QlCode, n: *mut usize, k: *mut usize) -> QlStatus {
    guard(|| {
        let c = deref(code, "code")?.0.code();
        *out(n, "n")? = c.n();
        *out(k, "k")? = c.k();
        Ok(())
    })
}

/// Smallest weight `<= max_weight` of a nontrivial logical of `kind`, or -1.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_code_distance(
    code: *const QlCode,
    kind: QlPauliKind,
    max_weight: usize,
    budget: u64,
    distance: *mut i64,
) -> QlStatus {
    guard(|| {
        let c = deref(code, "code")?.0.code();
        let d = out(distance, "distance")?;
        let kind = match kind {
            QlPauliKind::X => PauliKind::X,
            QlPauliKind::Z => PauliKind::Z,
            QlPauliKind::Full => PauliKind::Full,
        };
        *d = c.distance(kind, max_weight, budget as u128)?.map_or(-1, |w| w as i64);
        Ok(())
    })
}

/// Writes the code in the JSON code-file format.
///
/// # Safety
/// `code` must be valid and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ql_code_write_json(code: *const QlCode, path_: *const c_char) -> QlStatus {
    guard(|| {
        let g = &deref(code, "code")?.0;
        write_json(path(path_)?, &CodeFile::from_gauss(g))?;
        Ok(())
    })
}

/// Dense dual (`QlForm::Bosonic`) or rewritten logical Hamiltonian of `code`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_hamiltonian_build(
    code: *const QlCode,
    couplings: *const QlCouplings,
    form: QlForm,
    out_matrix: *mut *mut QlMatrix,
) -> QlStatus {
    guard(|| {
        let slot = out(out_matrix, "out_matrix")?;
        *slot = ptr::null_mut();
        let g = &deref(code, "code")?.0;
        let p = params(deref(couplings, "couplings")?);
        let dense = match form {
            QlForm::Bosonic => build_dual(g, &p, StringForm::Exact)?.to_dense()?,
            QlForm::Logical => rewrite_hamiltonian(g.code(), &build_hamiltonian(g.lattice(), &p)?)?.to_dense()?,
        };
        *slot = Box::into_raw(Box::new(QlMatrix(dense)));
        Ok(())
    })
}

/// # Safety
/// `m` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ql_matrix_free(m: *mut QlMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_matrix_dim(m: *const QlMatrix, dim: *mut usize) -> QlStatus {
    guard(|| {
        *out(dim, "dim")? = deref(m, "matrix")?.0.nrows();
        Ok(())
    })
}

/// Copies entries row-major as interleaved `(re, im)` pairs; `len` counts doubles.
///
/// # Safety
/// `data` must be valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn ql_matrix_copy(m: *const QlMatrix, data: *mut f64, len: usize) -> QlStatus {
    guard(|| {
        let a = &deref(m, "matrix")?.0;
        let need = 2 * a.nrows() * a.ncols();
        if data.is_null() {
            return Err(null("data"));
        }
        if len < need {
            return Err(Failure(
                QlStatus::BufferTooSmall,
                format!("{len} doubles, {need} needed"),
            ));
        }
        let dst = std::slice::from_raw_parts_mut(data, need);
        for r in 0..a.nrows() {
            for c in 0..a.ncols() {
                let v = a[(r, c)];
                let i = 2 * (r * a.ncols() + c);
                dst[i] = v.re;
                dst[i + 1] = v.im;
            }
        }
        Ok(())
    })
}

/// Writes the matrix in the binary matrix format.
///
/// # Safety
/// `m` must be valid and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ql_matrix_write(m: *const QlMatrix, path_: *const c_char) -> QlStatus {
    guard(|| {
        write_matrix_file(path(path_)?, &deref(m, "matrix")?.0)?;
        Ok(())
    })
}

/// Compares the physical, logical and bosonic pictures with default tolerances.
///
/// # Safety
/// `extent` must point to `n_extent` values; the other pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_duality_check(
    dims: usize,
    extent: *const usize,
    n_extent: usize,
    levels: u32,
    couplings: *const QlCouplings,
    result: *mut QlDualityResult,
) -> QlStatus {
    guard(|| {
        let res = out(result, "result")?;
        let l = lattice(dims, extent, n_extent, levels, QlBoundary::Periodic)?;
        let r = duality_check(&l, &params(deref(couplings, "couplings")?), &DualityOptions::default())?;
        *res = QlDualityResult {
            max_matrix_diff: r.max_matrix_diff,
            max_spectrum_diff: r.max_spectrum_diff.unwrap_or(f64::NAN),
            physical_dim: r.sector_dims.physical.map_or(-1, |d| d as i64),
            logical_dim: r.sector_dims.logical as u64,
            gauge_violations: r.gauge_violations as u64,
            pass: r.pass,
        };
        Ok(())
    })
}

/// Exhaustive scan of the qutrit diagonal gates with ninth-root phases.
///
/// # Safety
/// `result` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_nogo_qutrit(result: *mut QlNogoResult) -> QlStatus {
    guard(|| {
        let res = out(result, "result")?;
        let r = qutrit_t_nogo()?;
        *res = QlNogoResult {
            total: r.total as u64,
            txt_clifford: r.txt_clifford as u64,
            t_clifford: r.t_clifford as u64,
            consistent: r.consistent as u64,
            sum_rule_consistent: r.sum_rule_consistent as u64,
            congruent_implies_clifford: r.congruent_implies_clifford,
        };
        Ok(())
    })
}
