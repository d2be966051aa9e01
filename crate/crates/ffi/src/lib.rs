//! C ABI over `gamma-fourier`.
//!
//! Every fallible function returns a [`GfStatus`] and writes its result
//! through an out-pointer. On failure a message is kept per thread and can be
//! read with [`gf_last_error`]. Exact rationals cross the boundary as
//! NUL-terminated strings like `"-691/2730"`, which the caller releases with
//! [`gf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gamma_fourier::numbers::{self, BernoulliVariant};
use gamma_fourier::oracle::{quad_transform, QuadratureSpec};
use gamma_fourier::partitions::{enumerate_partitions, faa_weight, PartitionVector};
use gamma_fourier::physics::{self, QuantumIndices};
use gamma_fourier::specfun;
use gamma_fourier::transform::{self, TransformParams};
use gamma_fourier::Error;
use num_complex::Complex64;
use num_rational::BigRational;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Pole = 3,
    Divergent = 4,
    Overflow = 5,
    Resource = 6,
    Inconsistent = 7,
    NonConvergence = 8,
    InvalidString = 9,
    OutOfRange = 10,
    Panic = 11,
}

/// Double-precision complex number.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GfComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for GfComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

/// Which Bernoulli partition formula [`gf_bernoulli`] uses.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfBernoulliVariant {
    /// Index m yields B_{m+1}.
    Shifted = 0,
    /// Index m yields B_m.
    Direct = 1,
}

/// Opaque list of the partitions of one integer.
pub struct GfPartitionSet {
    m: u32,
    parts: Vec<PartitionVector>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GfStatus {
    match e {
        Error::Domain(_) => GfStatus::Domain,
        Error::Pole(_) => GfStatus::Pole,
        Error::Divergent(_) => GfStatus::Divergent,
        Error::Overflow(_) => GfStatus::Overflow,
        Error::Resource(_) => GfStatus::Resource,
        Error::Inconsistent(_) => GfStatus::Inconsistent,
        Error::NonConvergence { .. } => GfStatus::NonConvergence,
    }
}

struct Failure(GfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(name: &str) -> Failure {
    Failure(GfStatus::NullPointer, format!("{name} is null"))
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GfStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            GfStatus::Panic
        }
    }
}

/// Writes `value` through `out`.
///
/// # Safety
/// `out` must be null or valid for writes of `T`.
unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_rational(out: *mut *mut c_char, v: &BigRational) -> Result<(), Failure> {
    let s = CString::new(v.to_string()).expect("rationals print without NUL");
    put(out, s.into_raw())
}

unsafe fn read_str<'a>(s: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(GfStatus::InvalidString, format!("{name} is not valid UTF-8")))
}

/// Message describing the most recent failure on this thread, or null. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn gf_status_name(status: GfStatus) -> *const c_char {
    let s: &'static CStr = match status {
        GfStatus::Ok => c"ok",
        GfStatus::NullPointer => c"null pointer",
        GfStatus::Domain => c"domain error",
        GfStatus::Pole => c"pole",
        GfStatus::Divergent => c"divergent",
        GfStatus::Overflow => c"overflow",
        GfStatus::Resource => c"resource limit",
        GfStatus::Inconsistent => c"inconsistent result",
        GfStatus::NonConvergence => c"no convergence",
        GfStatus::InvalidString => c"invalid string",
        GfStatus::OutOfRange => c"index out of range",
        GfStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a pointer previously returned by this library and not
/// yet freed.
#[no_mangle]
pub unsafe extern "C" fn gf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// F_m(λ) for α, β > 0.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gf_transform(alpha: f64, beta: f64, m: u32, lambda: f64, out: *mut GfComplex) -> GfStatus {
    guard(|| {
        let v = transform::eval_transform(&TransformParams::new(alpha, beta, m, lambda)?)?;
        put(out, v.into())
    })
}

/// The α → 0 limit of F_m(λ) at β > 0.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gf_transform_alpha_zero(beta: f64, m: u32, lambda: f64, out: *mut GfComplex) -> GfStatus {
    guard(|| put(out, transform::eval_alpha_zero(beta, m, lambda)?.into()))
}

/// The α, β → 0 limit of F_m(λ), m ≥ 1.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gf_transform_zero_zero(m: u32, lambda: f64, out: *mut GfComplex) -> GfStatus {
    guard(|| put(out, transform::eval_zero_zero(m, lambda)?.into()))
}

/// F_m(λ) by adaptive quadrature of its defining integral. `error` may be
/// null; otherwise it receives the estimated absolute error.
///
/// # Safety
/// `out` must be valid for writes; `error` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gf_transform_quadrature(
    alpha: f64,
    beta: f64,
    m: u32,
    lambda: f64,
    rel_tol: f64,
    out: *mut GfComplex,
    error: *mut f64,
) -> GfStatus {
    guard(|| {
        let spec = QuadratureSpec {
            rel_tol,
            ..Default::default()
        };
        let r = quad_transform(&TransformParams::new(alpha, beta, m, lambda)?, &spec)?;
        put(out, r.value.into())?;
        if !error.is_null() {
            error.write(r.error);
        }
        Ok(())
    })
}

/// Γ(z) for complex z.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gf_complex_gamma(z: GfComplex, out: *mut GfComplex) -> GfStatus {
    guard(|| put(out, specfun::complex_gamma(Complex64::new(z.re, z.im))?.into()))
}

/// K_ν(x) for complex order ν and x > 0.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gf_bessel_k(nu: GfComplex, x: f64, out: *mut GfComplex) -> GfStatus {
    guard(|| put(out, specfun::bessel_k_complex_order(Complex64::new(nu.re, nu.im), x)?.into()))
}

/// ⟨μ^q⟩ for q ∈ {1, 2}.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gf_expectation_mu(q: u32, n: u32, l: f64, out: *mut f64) -> GfStatus {
    guard(|| put(out, physics::expectation_mu(q, n, l)?))
}

/// ⟨π⟩, which is purely imaginary.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gf_expectation_pi(n: u32, l: f64, out: *mut GfComplex) -> GfStatus {
    guard(|| put(out, physics::expectation_pi(n, l)?.into()))
}

/// ⟨π²⟩.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gf_expectation_pi2(n: u32, l: f64, out: *mut f64) -> GfStatus {
    guard(|| put(out, physics::expectation_pi2(n, l)?))
}

/// Δμ·Δπ.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gf_uncertainty_product(n: u32, l: f64, out: *mut f64) -> GfStatus {
    guard(|| put(out, physics::uncertainty_product(n, l)?))
}

/// Wigner function W(x, p) of the state (n, l) at inverse width a.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gf_wigner(n: u32, l: f64, a: f64, x: f64, p: f64, out: *mut f64) -> GfStatus {
    guard(|| put(out, physics::wigner(&QuantumIndices::new(n, l, a)?, x, p)?))
}

/// Bernoulli number as an exact rational string.
///
/// # Safety
/// `out` must be valid for writes; free the result with [`gf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn gf_bernoulli(m: u32, variant: GfBernoulliVariant, out: *mut *mut c_char) -> GfStatus {
    let v = match variant {
        GfBernoulliVariant::Shifted => BernoulliVariant::Shifted,
        GfBernoulliVariant::Direct => BernoulliVariant::Direct,
    };
    guard(|| put_rational(out, &numbers::bernoulli_number(m, v)?))
}

/// Euler number E_m as an exact integer string.
///
/// # Safety
/// `out` must be valid for writes; free the result with [`gf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn gf_euler_number(m: u32, out: *mut *mut c_char) -> GfStatus {
    guard(|| put_rational(out, &numbers::euler_number(m)?))
}

/// Euler polynomial E_m(β) for a rational `beta` written "n/d" in (0, 1).
///
/// # Safety
/// `beta` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gf_euler_polynomial(m: u32, beta: *const c_char, out: *mut *mut c_char) -> GfStatus {
    guard(|| {
        let b = numbers::parse_rational(read_str(beta, "beta")?)?;
        put_rational(out, &numbers::euler_polynomial(m, &b)?)
    })
}

/// Residue of Γ at -m.
///
/// # Safety
/// `out` must be valid for writes; free the result with [`gf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn gf_gamma_residue(m: u32, out: *mut *mut c_char) -> GfStatus {
    guard(|| put_rational(out, &numbers::gamma_residue(m)?))
}

/// Enumerates the partitions of m into a new set.
///
/// # Safety
/// `out` must be valid for writes; release the set with
/// [`gf_partitions_free`].
#[no_mangle]
pub unsafe extern "C" fn gf_partitions_new(m: u32, out: *mut *mut GfPartitionSet) -> GfStatus {
    guard(|| {
        let parts = enumerate_partitions(m)?;
        put(out, Box::into_raw(Box::new(GfPartitionSet { m, parts })))
    })
}

/// Number of partitions in the set, or 0 for null.
///
/// # Safety
/// `set` must be null or a live set.
#[no_mangle]
pub unsafe extern "C" fn gf_partitions_len(set: *const GfPartitionSet) -> usize {
    set.as_ref().map_or(0, |s| s.parts.len())
}

unsafe fn entry<'a>(set: *const GfPartitionSet, index: usize) -> Result<(&'a GfPartitionSet, &'a PartitionVector), Failure> {
    let s = set.as_ref().ok_or_else(|| null("set"))?;
    let p = s.parts.get(index).ok_or_else(|| {
        Failure(
            GfStatus::OutOfRange,
            format!("index {index} out of range for {} partitions", s.parts.len()),
        )
    })?;
    Ok((s, p))
}

/// Copies the multiplicities (i_1, ..., i_m) of one partition into `buf`,
/// which must hold at least m entries, and writes the part count to `parts`.
///
/// # Safety
/// `set` must be a live set; `buf` must be valid for `capacity` writes;
/// `parts` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gf_partitions_get(
    set: *const GfPartitionSet,
    index: usize,
    buf: *mut u32,
    capacity: usize,
    parts: *mut u32,
) -> GfStatus {
    guard(|| {
        let (s, p) = entry(set, index)?;
        let mult = p.multiplicities();
        if capacity < s.m as usize {
            return Err(Failure(
                GfStatus::OutOfRange,
                format!("buffer holds {capacity} entries, need {}", s.m),
            ));
        }
        if !mult.is_empty() {
            if buf.is_null() {
                return Err(null("buf"));
            }
            ptr::copy_nonoverlapping(mult.as_ptr(), buf, mult.len());
        }
        if !parts.is_null() {
            parts.write(p.parts());
        }
        Ok(())
    })
}

/// Faà di Bruno weight 1/∏ i_ν! (ν!)^{i_ν} of one partition as a string.
///
/// # Safety
/// `set` must be a live set; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gf_partitions_weight(set: *const GfPartitionSet, index: usize, out: *mut *mut c_char) -> GfStatus {
    guard(|| {
        let (_, p) = entry(set, index)?;
        put_rational(out, &faa_weight(p))
    })
}

/// Releases a partition set. Null is ignored.
///
/// # Safety
/// `set` must be null or a set from [`gf_partitions_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gf_partitions_free(set: *mut GfPartitionSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}
