//! C ABI over the `uag` library.
//!
//! Objects are opaque heap handles created by `*_load`, `*_parse` or
//! `uag_solve` and released with the matching `*_free`. Every fallible call
//! returns a [`UagStatus`]; on failure a message is kept per thread and can
//! be read with [`uag_last_error`]. Elements are `uint32_t` indices into the
//! algebra's carrier and point lists are row-major.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use uag::budget::DEFAULT_TUPLE_CAP;
use uag::finalg::parse_algebra;
use uag::geometry::{self, SolutionSet};
use uag::{Budget, Elem, Error, FiniteAlgebra, System};

/// A finite algebra.
pub struct UagAlgebra {
    inner: FiniteAlgebra,
}

/// A system of equations in the language of some algebra.
pub struct UagSystem {
    inner: System,
}

/// A solution set together with its algebra.
pub struct UagSolutionSet {
    inner: SolutionSet,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UagStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Malformed algebra, system or parameter.
    InvalidInput = 3,
    /// A tuple, element or table cap was hit; the answer is unknown.
    ResourceLimit = 4,
    /// The caller's buffer is shorter than required.
    BufferTooSmall = 5,
    /// An internal panic was caught at the boundary.
    Internal = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: UagStatus,
    message: String,
}

impl Failure {
    fn new(status: UagStatus, message: impl Into<String>) -> Self {
        Failure { status, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::ResourceLimit { .. } => UagStatus::ResourceLimit,
            _ => UagStatus::InvalidInput,
        };
        Failure::new(status, e.to_string())
    }
}

fn set_error(message: Option<String>) {
    let c = message.map(|m| CString::new(m.replace('\0', " ")).expect("no interior NUL"));
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> UagStatus {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(None);
            UagStatus::Ok
        }
        Ok(Err(fail)) => {
            set_error(Some(fail.message));
            fail.status
        }
        Err(_) => {
            set_error(Some("internal panic".into()));
            UagStatus::Internal
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::new(UagStatus::NullArgument, format!("{what} is null")))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(UagStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::new(UagStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(UagStatus::NullArgument, "output pointer is null"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(UagStatus::NullArgument, "output pointer is null"));
    }
    *out = value;
    Ok(())
}

fn budget(tuple_cap: u64) -> Budget {
    let mut b = Budget::default();
    b.tuple_cap = if tuple_cap == 0 { DEFAULT_TUPLE_CAP } else { tuple_cap };
    b
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn uag_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn uag_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Loads an algebra from a file path or a builtin such as `@Ln(2)`,
/// `@Zn(4)`, `@RBnm(2,2)`, `@Zn_ring1(2)`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn uag_algebra_load(spec: *const c_char, out: *mut *mut UagAlgebra) -> UagStatus {
    guard(|| {
        let a = uag::cli::load_algebra(text(spec, "spec")?)?;
        store(out, UagAlgebra { inner: a })
    })
}

/// Parses an algebra from the text of an algebra file.
///
/// # Safety
/// `source` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn uag_algebra_parse(source: *const c_char, out: *mut *mut UagAlgebra) -> UagStatus {
    guard(|| {
        let a = parse_algebra(text(source, "source")?)?;
        store(out, UagAlgebra { inner: a })
    })
}

/// Carrier size, or 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn uag_algebra_size(alg: *const UagAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.inner.size())
}

/// # Safety
/// `alg` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn uag_algebra_free(alg: *mut UagAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Parses a system (`vars:` and `eq:` lines) in the language of `alg`.
///
/// # Safety
/// Pointers must be valid; `source` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn uag_system_parse(
    alg: *const UagAlgebra,
    source: *const c_char,
    out: *mut *mut UagSystem,
) -> UagStatus {
    guard(|| {
        let a = borrow(alg, "algebra")?;
        let s = uag::parse::parse_system(text(source, "source")?, a.inner.language())?;
        store(out, UagSystem { inner: s })
    })
}

/// Number of declared variables, or 0 for a null handle.
///
/// # Safety
/// `sys` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn uag_system_variable_count(sys: *const UagSystem) -> usize {
    sys.as_ref().map_or(0, |s| s.inner.variables.len())
}

/// # Safety
/// `sys` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn uag_system_free(sys: *mut UagSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Solution set of `sys` over `alg`. A `tuple_cap` of 0 selects the default.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn uag_solve(
    alg: *const UagAlgebra,
    sys: *const UagSystem,
    tuple_cap: u64,
    out: *mut *mut UagSolutionSet,
) -> UagStatus {
    guard(|| {
        let a = borrow(alg, "algebra")?;
        let s = borrow(sys, "system")?;
        let set = geometry::solve(&s.inner, &a.inner, &budget(tuple_cap))?;
        store(out, UagSolutionSet { inner: set })
    })
}

/// Builds a point set from `count` points of dimension `dim`.
///
/// # Safety
/// `points` must hold `count * dim` elements (it may be null when that is 0).
#[no_mangle]
pub unsafe extern "C" fn uag_set_from_points(
    alg: *const UagAlgebra,
    points: *const u32,
    count: usize,
    dim: usize,
    out: *mut *mut UagSolutionSet,
) -> UagStatus {
    guard(|| {
        let a = borrow(alg, "algebra")?;
        let pts = read_points(points, count, dim)?;
        let vars = (1..=dim).map(|i| format!("x{i}")).collect();
        let set = SolutionSet::new(a.inner.clone(), vars, pts)?;
        store(out, UagSolutionSet { inner: set })
    })
}

unsafe fn read_points(points: *const u32, count: usize, dim: usize) -> Result<Vec<Vec<Elem>>, Failure> {
    let n = count
        .checked_mul(dim)
        .ok_or_else(|| Failure::new(UagStatus::InvalidInput, "point buffer size overflows"))?;
    if n == 0 {
        return Ok(vec![Vec::new(); count]);
    }
    if points.is_null() {
        return Err(Failure::new(UagStatus::NullArgument, "points is null"));
    }
    let flat = std::slice::from_raw_parts(points, n);
    Ok(flat.chunks(dim).map(<[u32]>::to_vec).collect())
}

/// Number of points, or 0 for a null handle.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn uag_set_len(set: *const UagSolutionSet) -> usize {
    set.as_ref().map_or(0, |s| s.inner.len())
}

/// Dimension, or 0 for a null handle.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn uag_set_dimension(set: *const UagSolutionSet) -> usize {
    set.as_ref().map_or(0, |s| s.inner.dimension())
}

/// Copies the points, sorted lexicographically, into `buf` (row-major).
/// `buf_len` counts elements and must be at least `len * dimension`.
///
/// # Safety
/// `buf` must be writable for `buf_len` elements.
#[no_mangle]
pub unsafe extern "C" fn uag_set_points(set: *const UagSolutionSet, buf: *mut u32, buf_len: usize) -> UagStatus {
    guard(|| {
        let s = borrow(set, "set")?;
        let need = s.inner.len() * s.inner.dimension();
        if need > buf_len {
            return Err(Failure::new(UagStatus::BufferTooSmall, format!("{need} elements needed")));
        }
        if need == 0 {
            return Ok(());
        }
        if buf.is_null() {
            return Err(Failure::new(UagStatus::NullArgument, "buffer is null"));
        }
        let out = std::slice::from_raw_parts_mut(buf, need);
        for (dst, &v) in out.iter_mut().zip(s.inner.points().iter().flatten()) {
            *dst = v;
        }
        Ok(())
    })
}

/// Whether the set is algebraic over its algebra.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn uag_set_is_algebraic(set: *const UagSolutionSet, tuple_cap: u64, out: *mut bool) -> UagStatus {
    guard(|| {
        let s = &borrow(set, "set")?.inner;
        let v = geometry::is_algebraic(s.points(), s.algebra(), s.dimension(), &budget(tuple_cap))?;
        write(out, v)
    })
}

/// Whether the set is irreducible. The set must be nonempty.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn uag_set_is_irreducible(set: *const UagSolutionSet, tuple_cap: u64, out: *mut bool) -> UagStatus {
    guard(|| {
        let s = borrow(set, "set")?;
        let v = geometry::is_irreducible(&s.inner, &budget(tuple_cap))?.is_some();
        write(out, v)
    })
}

/// Number of irreducible components.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn uag_set_component_count(
    set: *const UagSolutionSet,
    tuple_cap: u64,
    out: *mut usize,
) -> UagStatus {
    guard(|| {
        let s = borrow(set, "set")?;
        let v = geometry::irreducible_components(&s.inner, &budget(tuple_cap))?.len();
        write(out, v)
    })
}

/// Size of the coordinate algebra of the set.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn uag_set_coordinate_size(
    set: *const UagSolutionSet,
    tuple_cap: u64,
    out: *mut usize,
) -> UagStatus {
    guard(|| {
        let s = borrow(set, "set")?;
        let v = geometry::coordinate_algebra(&s.inner, &budget(tuple_cap))?.size();
        write(out, v)
    })
}

/// # Safety
/// `set` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn uag_set_free(set: *mut UagSolutionSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Whether finite unions of algebraic sets over `alg` are algebraic.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn uag_is_equational_domain(alg: *const UagAlgebra, tuple_cap: u64, out: *mut bool) -> UagStatus {
    guard(|| {
        let a = borrow(alg, "algebra")?;
        let v = geometry::is_equational_domain(&a.inner, &budget(tuple_cap))?;
        write(out, v)
    })
}

/// Whether two algebras of the same language have the same algebraic sets.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn uag_geometrically_equivalent(
    a: *const UagAlgebra,
    b: *const UagAlgebra,
    tuple_cap: u64,
    out: *mut bool,
) -> UagStatus {
    guard(|| {
        let (a, b) = (borrow(a, "first algebra")?, borrow(b, "second algebra")?);
        let v = geometry::geometrically_equivalent(&a.inner, &b.inner, &budget(tuple_cap))?;
        write(out, v)
    })
}
