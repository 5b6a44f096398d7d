//! C ABI over `susy-ces`.
//!
//! A `SusyCesSystem` handle owns one admissible parameter point. Every call
//! returns a [`SusyCesStatus`] and writes its result through an out pointer;
//! nothing is written when the status is not `Ok`. Handles from
//! [`susy_ces_system_new`] must be released with [`susy_ces_system_free`].

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use susy_ces::families::check_admissibility;
use susy_ces::ladder_algebra::{ladder_coefficient, Direction};
use susy_ces::verify::verify_isospectrality;
use susy_ces::{CesSystem, Error, Family, FamilySpec};

pub const SUSY_CES_FAMILY_LINEAR: i32 = 0;
pub const SUSY_CES_FAMILY_RADIAL_UNBROKEN: i32 = 1;
pub const SUSY_CES_FAMILY_RADIAL_BROKEN: i32 = 2;

pub const SUSY_CES_LOWER: i32 = 0;
pub const SUSY_CES_RAISE: i32 = 1;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SusyCesStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    Inadmissible = 3,
    Domain = 4,
    Singular = 5,
    Numerical = 6,
    Panic = 7,
}

/// Opaque handle to a solved family.
pub struct SusyCesSystem {
    inner: CesSystem,
}

impl From<&Error> for SusyCesStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::GridMismatch(_) => SusyCesStatus::InvalidParameter,
            Error::Inadmissible(_) => SusyCesStatus::Inadmissible,
            Error::Domain { .. } => SusyCesStatus::Domain,
            Error::Singular { .. } | Error::Pole { .. } | Error::NonFinitePotential { .. } => {
                SusyCesStatus::Singular
            }
            Error::NonConvergence { .. } | Error::Eigensolver(_) => SusyCesStatus::Numerical,
        }
    }
}

fn guard(f: impl FnOnce() -> Result<(), SusyCesStatus>) -> SusyCesStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SusyCesStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => SusyCesStatus::Panic,
    }
}

fn spec_from(
    family: i32,
    epsilon: f64,
    gamma: f64,
    beta: f64,
) -> Result<FamilySpec, SusyCesStatus> {
    let family = match family {
        SUSY_CES_FAMILY_LINEAR => Family::LinearUnbroken,
        SUSY_CES_FAMILY_RADIAL_UNBROKEN => Family::RadialUnbroken,
        SUSY_CES_FAMILY_RADIAL_BROKEN => Family::RadialBroken,
        _ => return Err(SusyCesStatus::InvalidParameter),
    };
    FamilySpec::new(family, epsilon, gamma, beta).map_err(|e| (&e).into())
}

unsafe fn system<'a>(handle: *const SusyCesSystem) -> Result<&'a CesSystem, SusyCesStatus> {
    handle
        .as_ref()
        .map(|h| &h.inner)
        .ok_or(SusyCesStatus::NullPointer)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), SusyCesStatus> {
    if out.is_null() {
        return Err(SusyCesStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

fn lift<T>(r: susy_ces::Result<T>) -> Result<T, SusyCesStatus> {
    r.map_err(|e| (&e).into())
}

/// Builds a handle for (family, ε, γ, β). Fails with `Inadmissible` when u
/// is not strictly positive for the parameter point.
///
/// # Safety
/// `out` must be null or valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn susy_ces_system_new(
    family: i32,
    epsilon: f64,
    gamma: f64,
    beta: f64,
    out: *mut *mut SusyCesSystem,
) -> SusyCesStatus {
    guard(|| {
        if out.is_null() {
            return Err(SusyCesStatus::NullPointer);
        }
        let spec = spec_from(family, epsilon, gamma, beta)?;
        let inner = lift(CesSystem::new(spec))?;
        write(out, Box::into_raw(Box::new(SusyCesSystem { inner })))
    })
}

/// # Safety
/// `handle` must be null or a pointer returned by [`susy_ces_system_new`]
/// that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn susy_ces_system_free(handle: *mut SusyCesSystem) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Admissibility of a parameter point and the largest admissible |β|.
///
/// # Safety
/// Out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn susy_ces_check_admissibility(
    family: i32,
    epsilon: f64,
    gamma: f64,
    beta: f64,
    admissible: *mut bool,
    beta_bound: *mut f64,
) -> SusyCesStatus {
    guard(|| {
        if admissible.is_null() || beta_bound.is_null() {
            return Err(SusyCesStatus::NullPointer);
        }
        let verdict = check_admissibility(&spec_from(family, epsilon, gamma, beta)?);
        write(admissible, verdict.admissible)?;
        write(beta_bound, verdict.beta_bound)
    })
}

/// W(x) = Φ(x) + u′(x)/u(x).
///
/// # Safety
/// `handle` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn susy_ces_superpotential(
    handle: *const SusyCesSystem,
    x: f64,
    out: *mut f64,
) -> SusyCesStatus {
    guard(|| {
        let value = lift(system(handle)?.superpotential(x))?;
        write(out, value)
    })
}

/// The shape-invariant partner V₊(x).
///
/// # Safety
/// `handle` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn susy_ces_v_plus(
    handle: *const SusyCesSystem,
    x: f64,
    out: *mut f64,
) -> SusyCesStatus {
    guard(|| {
        let value = lift(system(handle)?.v_plus(x))?;
        write(out, value)
    })
}

/// The conditionally exactly solvable partner V₋(x).
///
/// # Safety
/// `handle` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn susy_ces_v_minus(
    handle: *const SusyCesSystem,
    x: f64,
    out: *mut f64,
) -> SusyCesStatus {
    guard(|| {
        let value = lift(system(handle)?.v_minus(x))?;
        write(out, value)
    })
}

/// Closed-form n-th eigenvalue of H₋.
///
/// # Safety
/// `handle` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn susy_ces_e_minus(
    handle: *const SusyCesSystem,
    n: usize,
    out: *mut f64,
) -> SusyCesStatus {
    guard(|| {
        let e = system(handle)?.e_minus(n);
        write(out, e)
    })
}

/// Normalized n-th eigenfunction of H₋ at x.
///
/// # Safety
/// `handle` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn susy_ces_psi_minus(
    handle: *const SusyCesSystem,
    n: usize,
    x: f64,
    out: *mut f64,
) -> SusyCesStatus {
    guard(|| {
        let value = lift(system(handle)?.psi_minus(n, x))?;
        write(out, value)
    })
}

/// Coefficient c in X ψₙ = c ψₙ₋₁ (`SUSY_CES_LOWER`) or X† ψₙ = c ψₙ₊₁
/// (`SUSY_CES_RAISE`). c is 0 when the image leaves the tower.
///
/// # Safety
/// `handle` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn susy_ces_ladder_coefficient(
    handle: *const SusyCesSystem,
    n: usize,
    direction: i32,
    out: *mut f64,
) -> SusyCesStatus {
    guard(|| {
        let direction = match direction {
            SUSY_CES_LOWER => Direction::Lower,
            SUSY_CES_RAISE => Direction::Raise,
            _ => return Err(SusyCesStatus::InvalidParameter),
        };
        let c = lift(ladder_coefficient(system(handle)?.spec(), n, direction))?;
        write(out, c.value)
    })
}

/// Lowest `count` finite-difference eigenvalues of H₋ on the family's
/// default grid, written to `out[0..count]`.
///
/// # Safety
/// `handle` must be a live handle and `out` valid for `count` writes.
#[no_mangle]
pub unsafe extern "C" fn susy_ces_numeric_spectrum(
    handle: *const SusyCesSystem,
    count: usize,
    out: *mut f64,
) -> SusyCesStatus {
    guard(|| {
        let spec = *system(handle)?.spec();
        if out.is_null() {
            return Err(SusyCesStatus::NullPointer);
        }
        let table = lift(verify_isospectrality(
            &spec,
            count,
            &spec.family.default_grid(),
        ))?;
        for (i, row) in table.rows.iter().enumerate() {
            out.add(i).write(row.e_numeric);
        }
        Ok(())
    })
}

/// Static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn susy_ces_status_message(status: SusyCesStatus) -> *const c_char {
    let text: &'static CStr = match status {
        SusyCesStatus::Ok => c"ok",
        SusyCesStatus::NullPointer => c"null pointer argument",
        SusyCesStatus::InvalidParameter => c"invalid parameter",
        SusyCesStatus::Inadmissible => c"inadmissible parameter point",
        SusyCesStatus::Domain => c"x outside the configuration space",
        SusyCesStatus::Singular => c"u is not positive or a pole was hit",
        SusyCesStatus::Numerical => c"numerical method did not converge",
        SusyCesStatus::Panic => c"internal panic",
    };
    text.as_ptr()
}
