//! C ABI over `clifford-duality`.
//!
//! Every object crosses the boundary as an opaque heap handle that the
//! caller releases with the matching `*_free` function. Every fallible call
//! returns a [`CdStatus`] and writes its result through an out-pointer;
//! on failure a human-readable message is available from
//! [`cd_last_error_message`] on the same thread. Strings returned by the
//! library are owned by the caller and released with [`cd_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use clifford_duality::text::ParseErrorKind;
use clifford_duality::tol::EPS_RANK;
use clifford_duality::verify::{run_suite, Suite};
use clifford_duality::{
    expect_subspace, format_multivector, is_positive, norm, parse_multivector, supercommutant,
    Error, Multivector, ParseError, RealVector, SubalgebraBasis, Subspace,
};
use num_complex::Complex64;

/// Result code of every fallible call. `CD_STATUS_OK` is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    DimensionMismatch = 4,
    DimensionTooLarge = 5,
    ZeroDimension = 6,
    InvalidBlade = 7,
    NonUnitVector = 8,
    LinearlyDependent = 9,
    InvalidChain = 10,
    Parse = 11,
    Panic = 12,
}

/// A complex number laid out as two doubles.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for CdComplex {
    fn from(z: Complex64) -> Self {
        CdComplex { re: z.re, im: z.im }
    }
}

impl From<CdComplex> for Complex64 {
    fn from(z: CdComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Element of the complex Clifford algebra over R^n.
pub struct CdMultivector(Multivector);

/// Subspace of R^n held by an orthonormal basis.
pub struct CdSubspace(Subspace);

/// Linearly independent basis of a subalgebra.
pub struct CdSubalgebra(SubalgebraBasis);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(CdStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::DimensionMismatch { .. } => CdStatus::DimensionMismatch,
            Error::DimensionTooLarge { .. } => CdStatus::DimensionTooLarge,
            Error::ZeroDimension => CdStatus::ZeroDimension,
            Error::InvalidBlade { .. } => CdStatus::InvalidBlade,
            Error::NonUnitVector { .. } => CdStatus::NonUnitVector,
            Error::LinearlyDependent { .. } => CdStatus::LinearlyDependent,
            Error::ChainNotAscending { .. } | Error::ChainOutsideSubspace { .. } => {
                CdStatus::InvalidChain
            }
            Error::Parse(ParseError {
                kind: ParseErrorKind::DimensionTooLarge(_),
                ..
            }) => CdStatus::DimensionTooLarge,
            Error::Parse(_) => CdStatus::Parse,
        };
        Failure(status, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(CdStatus::InvalidArgument, msg.into())
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> CdStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            CdStatus::Ok
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
                .unwrap_or_else(|| "internal panic".into());
            set_error(msg);
            CdStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(CdStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(
            CdStatus::NullPointer,
            "output pointer is null".into(),
        ));
    }
    out.write(value);
    Ok(())
}

unsafe fn string<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(CdStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(CdStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(Failure(CdStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

unsafe fn write_mv(out: *mut *mut CdMultivector, mv: Multivector) -> Result<(), Failure> {
    write(out, Box::into_raw(Box::new(CdMultivector(mv))))
}

unsafe fn write_subspace(out: *mut *mut CdSubspace, z: Subspace) -> Result<(), Failure> {
    write(out, Box::into_raw(Box::new(CdSubspace(z))))
}

/// Message for the last failed call on this thread, or null after a
/// successful one. The pointer stays valid until the next library call on
/// this thread.
#[no_mangle]
pub extern "C" fn cd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn cd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------------------
// Multivectors

/// Parses text such as `"1 + 2*e1*e3 - (0,1)*e2"` in dimension `dim`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_multivector_parse(
    text: *const c_char,
    dim: usize,
    out: *mut *mut CdMultivector,
) -> CdStatus {
    guard(|| {
        let text = string(text, "text")?;
        write_mv(out, parse_multivector(text, dim).map_err(Error::from)?)
    })
}

/// Builds a multivector from `len == 2^dim` coefficients indexed by blade
/// bitmask (bit `i-1` set means `e_i` is present).
///
/// # Safety
/// `coeffs` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_multivector_from_dense(
    dim: usize,
    coeffs: *const CdComplex,
    len: usize,
    out: *mut *mut CdMultivector,
) -> CdStatus {
    guard(|| {
        let coeffs = slice(coeffs, len, "coeffs")?;
        if dim >= usize::BITS as usize || len != 1usize << dim {
            return Err(invalid(format!("expected 2^{dim} coefficients, got {len}")));
        }
        let dense: Vec<Complex64> = coeffs.iter().map(|&z| z.into()).collect();
        write_mv(out, Multivector::from_dense(dim, &dense)?)
    })
}

/// Writes the canonical text form, e.g. `"1 + e3"`. Free it with
/// [`cd_string_free`].
///
/// # Safety
/// `mv` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_multivector_format(
    mv: *const CdMultivector,
    out: *mut *mut c_char,
) -> CdStatus {
    guard(|| {
        let mv = deref(mv, "multivector")?;
        write(out, owned_string(format_multivector(&mv.0)))
    })
}

/// # Safety
/// `mv` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_multivector_clone(
    mv: *const CdMultivector,
    out: *mut *mut CdMultivector,
) -> CdStatus {
    guard(|| write_mv(out, deref(mv, "multivector")?.0.clone()))
}

/// Releases a multivector handle. Null is ignored.
///
/// # Safety
/// `mv` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn cd_multivector_free(mv: *mut CdMultivector) {
    if !mv.is_null() {
        drop(Box::from_raw(mv));
    }
}

/// Ambient dimension `n`, or 0 for a null handle.
///
/// # Safety
/// `mv` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cd_multivector_dim(mv: *const CdMultivector) -> usize {
    mv.as_ref().map_or(0, |m| m.0.dim())
}

/// Coefficient of the blade with bitmask `mask`.
///
/// # Safety
/// `mv` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_multivector_coeff(
    mv: *const CdMultivector,
    mask: u32,
    out: *mut CdComplex,
) -> CdStatus {
    guard(|| {
        let mv = deref(mv, "multivector")?;
        if (mask as u64) >> mv.0.dim() != 0 {
            return Err(Error::InvalidBlade {
                mask,
                dim: mv.0.dim(),
            }
            .into());
        }
        write(out, mv.0.coeff(mask).into())
    })
}

unsafe fn binary(
    a: *const CdMultivector,
    b: *const CdMultivector,
    out: *mut *mut CdMultivector,
    op: fn(&Multivector, &Multivector) -> clifford_duality::Result<Multivector>,
) -> CdStatus {
    guard(|| {
        let a = deref(a, "left operand")?;
        let b = deref(b, "right operand")?;
        write_mv(out, op(&a.0, &b.0)?)
    })
}

/// Clifford product `a b`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_multivector_mul(
    a: *const CdMultivector,
    b: *const CdMultivector,
    out: *mut *mut CdMultivector,
) -> CdStatus {
    binary(a, b, out, Multivector::mul)
}

/// Sum `a + b`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_multivector_add(
    a: *const CdMultivector,
    b: *const CdMultivector,
    out: *mut *mut CdMultivector,
) -> CdStatus {
    binary(a, b, out, Multivector::add)
}

/// Complex multiple `lambda * mv`.
///
/// # Safety
/// `mv` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_multivector_scale(
    mv: *const CdMultivector,
    lambda: CdComplex,
    out: *mut *mut CdMultivector,
) -> CdStatus {
    guard(|| write_mv(out, deref(mv, "multivector")?.0.scale(lambda.into())))
}

/// Grading automorphism: negates the odd-grade part.
///
/// # Safety
/// `mv` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_multivector_gamma(
    mv: *const CdMultivector,
    out: *mut *mut CdMultivector,
) -> CdStatus {
    guard(|| write_mv(out, deref(mv, "multivector")?.0.gamma()))
}

/// Star involution: conjugate-linear antiautomorphism fixing real vectors.
///
/// # Safety
/// `mv` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_multivector_star(
    mv: *const CdMultivector,
    out: *mut *mut CdMultivector,
) -> CdStatus {
    guard(|| write_mv(out, deref(mv, "multivector")?.0.star()))
}

/// C* norm.
///
/// # Safety
/// `mv` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_multivector_norm(mv: *const CdMultivector, out: *mut f64) -> CdStatus {
    guard(|| write(out, norm(&deref(mv, "multivector")?.0)?))
}

/// Whether `mv` is positive up to `eps`.
///
/// # Safety
/// `mv` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_multivector_is_positive(
    mv: *const CdMultivector,
    eps: f64,
    out: *mut bool,
) -> CdStatus {
    guard(|| write(out, is_positive(&deref(mv, "multivector")?.0, eps)?))
}

// ---------------------------------------------------------------------------
// Subspaces

/// Span of `count` vectors of length `ambient`, stored row after row in
/// `vectors`. Dependent vectors are dropped.
///
/// # Safety
/// `vectors` must point to `count * ambient` readable doubles; `out` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_subspace_from_spanning(
    ambient: usize,
    vectors: *const f64,
    count: usize,
    out: *mut *mut CdSubspace,
) -> CdStatus {
    guard(|| {
        let total = count
            .checked_mul(ambient)
            .ok_or_else(|| invalid("vector count overflows"))?;
        let data = slice(vectors, total, "vectors")?;
        let vs: Vec<RealVector> = if ambient == 0 {
            Vec::new()
        } else {
            data.chunks(ambient)
                .map(|c| RealVector::new(c.to_vec()))
                .collect()
        };
        write_subspace(out, Subspace::from_spanning(ambient, &vs, EPS_RANK)?)
    })
}

/// Releases a subspace handle. Null is ignored.
///
/// # Safety
/// `z` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn cd_subspace_free(z: *mut CdSubspace) {
    if !z.is_null() {
        drop(Box::from_raw(z));
    }
}

/// Dimension of the subspace, or 0 for a null handle.
///
/// # Safety
/// `z` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cd_subspace_dim(z: *const CdSubspace) -> usize {
    z.as_ref().map_or(0, |z| z.0.dim())
}

/// Dimension of the ambient space, or 0 for a null handle.
///
/// # Safety
/// `z` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cd_subspace_ambient_dim(z: *const CdSubspace) -> usize {
    z.as_ref().map_or(0, |z| z.0.ambient_dim())
}

/// Copies the orthonormal basis, row after row, into `buf`, which must hold
/// `dim * ambient_dim` doubles.
///
/// # Safety
/// `z` must be a live handle; `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn cd_subspace_basis(
    z: *const CdSubspace,
    buf: *mut f64,
    len: usize,
) -> CdStatus {
    guard(|| {
        let z = &deref(z, "subspace")?.0;
        let need = z.dim() * z.ambient_dim();
        if len < need {
            return Err(invalid(format!("buffer holds {len} doubles, need {need}")));
        }
        if need > 0 {
            if buf.is_null() {
                return Err(Failure(CdStatus::NullPointer, "buffer is null".into()));
            }
            let dst = std::slice::from_raw_parts_mut(buf, need);
            for (row, v) in dst.chunks_mut(z.ambient_dim()).zip(z.basis()) {
                row.copy_from_slice(v.components());
            }
        }
        Ok(())
    })
}

/// Orthogonal complement in the ambient space.
///
/// # Safety
/// `z` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_subspace_orthocomplement(
    z: *const CdSubspace,
    out: *mut *mut CdSubspace,
) -> CdStatus {
    guard(|| write_subspace(out, deref(z, "subspace")?.0.orthocomplement()))
}

unsafe fn family(
    members: *const *const CdSubspace,
    count: usize,
) -> Result<Vec<Subspace>, Failure> {
    slice(members, count, "members")?
        .iter()
        .map(|&m| deref(m, "member").map(|m| m.0.clone()))
        .collect()
}

/// Intersection of `count` subspaces of R^`ambient`; the whole space when
/// `count` is 0.
///
/// # Safety
/// `members` must point to `count` live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_subspace_intersect(
    ambient: usize,
    members: *const *const CdSubspace,
    count: usize,
    out: *mut *mut CdSubspace,
) -> CdStatus {
    guard(|| write_subspace(out, Subspace::intersect(ambient, &family(members, count)?)?))
}

/// Closed linear span of `count` subspaces; zero when `count` is 0.
///
/// # Safety
/// `members` must point to `count` live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_subspace_sum(
    ambient: usize,
    members: *const *const CdSubspace,
    count: usize,
    out: *mut *mut CdSubspace,
) -> CdStatus {
    guard(|| write_subspace(out, Subspace::sum(ambient, &family(members, count)?)?))
}

// ---------------------------------------------------------------------------
// Expectations and supercommutants

/// Conditional expectation `E_Z(c)`.
///
/// # Safety
/// `z`, `c` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_expect_subspace(
    z: *const CdSubspace,
    c: *const CdMultivector,
    out: *mut *mut CdMultivector,
) -> CdStatus {
    guard(|| {
        let z = deref(z, "subspace")?;
        let c = deref(c, "multivector")?;
        write_mv(out, expect_subspace(&z.0, &c.0)?)
    })
}

/// Basis of the supercommutant of `C(Z)`.
///
/// # Safety
/// `z` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_supercommutant(
    z: *const CdSubspace,
    out: *mut *mut CdSubalgebra,
) -> CdStatus {
    guard(|| {
        let basis = supercommutant(&deref(z, "subspace")?.0)?;
        write(out, Box::into_raw(Box::new(CdSubalgebra(basis))))
    })
}

/// Number of basis elements, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cd_subalgebra_len(s: *const CdSubalgebra) -> usize {
    s.as_ref().map_or(0, |s| s.0.len())
}

/// Copy of basis element `index` as a new multivector handle.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cd_subalgebra_element(
    s: *const CdSubalgebra,
    index: usize,
    out: *mut *mut CdMultivector,
) -> CdStatus {
    guard(|| {
        let s = deref(s, "subalgebra")?;
        let element =
            s.0.elements()
                .get(index)
                .ok_or_else(|| invalid(format!("index {index} out of range 0..{}", s.0.len())))?;
        write_mv(out, element.clone())
    })
}

/// Releases a subalgebra handle. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn cd_subalgebra_free(s: *mut CdSubalgebra) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

// ---------------------------------------------------------------------------
// Verification

/// Runs a verification suite (`"all"`, `"algebra"`, `"duality"`, ...) and
/// writes the report as JSON. `passed` receives whether every property
/// held. Property failures are not errors: the call still returns
/// `CD_STATUS_OK`.
///
/// # Safety
/// `suite` must be a NUL-terminated string; `json_out` and `passed` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cd_verify(
    suite: *const c_char,
    dim: usize,
    trials: usize,
    seed: u64,
    json_out: *mut *mut c_char,
    passed: *mut bool,
) -> CdStatus {
    guard(|| {
        let suite: Suite = string(suite, "suite")?.parse().map_err(invalid)?;
        if json_out.is_null() || passed.is_null() {
            return Err(Failure(
                CdStatus::NullPointer,
                "output pointer is null".into(),
            ));
        }
        let report = run_suite(suite, dim, trials, seed)?;
        let json = serde_json::to_string(&report).map_err(|e| invalid(e.to_string()))?;
        write(passed, report.passed())?;
        write(json_out, owned_string(json))
    })
}
