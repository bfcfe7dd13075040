//! C ABI over the core library: opaque group handles, integer status
//! codes, and decimal strings for arbitrary-precision values.
//!
//! Every function returns `OrdsumStatus` and writes results through out
//! pointers. Strings handed out must be released with
//! `ordsum_string_free`, groups with `ordsum_group_free`.

use std::ffi::{c_char, CStr, CString};

use ordsum::corpus::{build_group, parse_spec};
use ordsum::group::EnumeratedGroup;
use ordsum::psi::{criterion_verdict, psi_cyclic, psi_group, Comparison, Conclusion};
use ordsum::Error;

/// Opaque handle to an enumerated finite group.
pub struct OrdsumGroup {
    inner: EnumeratedGroup,
}

/// Call outcome. Values other than `Ok` leave the out parameters
/// untouched.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrdsumStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// The spec string was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The spec string did not parse or had invalid parameters.
    ParseError = 3,
    /// The group order exceeds the enumeration cap.
    CapExceeded = 4,
    /// Any other construction or computation failure.
    Failed = 5,
}

/// Exact comparison of 1617·ψ(G) against 211·ψ(C_n).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrdsumComparison {
    Less = -1,
    Equal = 0,
    Greater = 1,
}

fn status_of(err: &Error) -> OrdsumStatus {
    match err {
        Error::Parse { .. }
        | Error::Arity { .. }
        | Error::Param(_)
        | Error::GcdViolation(_)
        | Error::Validation(_)
        | Error::Format(_) => OrdsumStatus::ParseError,
        Error::CapExceeded { .. } => OrdsumStatus::CapExceeded,
        _ => OrdsumStatus::Failed,
    }
}

/// NUL bytes cannot occur: decimal digits and spec characters only.
fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior NUL").into_raw()
}

/// Builds a group from a spec string such as `"prod(a 5, c 7)"`.
/// `cap` bounds the order; pass 0 for the default (20000).
///
/// # Safety
/// `spec` must point to a NUL-terminated string and `out` to a valid
/// pointer slot. On `Ok` the slot owns a group to be released with
/// `ordsum_group_free`.
#[no_mangle]
pub unsafe extern "C" fn ordsum_group_from_spec(
    spec: *const c_char,
    cap: usize,
    out: *mut *mut OrdsumGroup,
) -> OrdsumStatus {
    if spec.is_null() || out.is_null() {
        return OrdsumStatus::NullArgument;
    }
    let text = match CStr::from_ptr(spec).to_str() {
        Ok(t) => t,
        Err(_) => return OrdsumStatus::InvalidUtf8,
    };
    let cap = if cap == 0 {
        ordsum::group::DEFAULT_CAP
    } else {
        cap
    };
    let built = parse_spec(text).and_then(|s| build_group(&s, cap));
    match built {
        Ok(group) => {
            *out = Box::into_raw(Box::new(OrdsumGroup { inner: group }));
            OrdsumStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a group handle; null is a no-op.
///
/// # Safety
/// `group` must have come from `ordsum_group_from_spec` and not have
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn ordsum_group_free(group: *mut OrdsumGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Writes the group order.
///
/// # Safety
/// `group` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ordsum_group_order(
    group: *const OrdsumGroup,
    out: *mut u64,
) -> OrdsumStatus {
    if group.is_null() || out.is_null() {
        return OrdsumStatus::NullArgument;
    }
    *out = (*group).inner.order() as u64;
    OrdsumStatus::Ok
}

/// Writes ψ(G) as a heap-allocated decimal string.
///
/// # Safety
/// `group` and `out` must be valid pointers; release the string with
/// `ordsum_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ordsum_group_psi(
    group: *const OrdsumGroup,
    out: *mut *mut c_char,
) -> OrdsumStatus {
    if group.is_null() || out.is_null() {
        return OrdsumStatus::NullArgument;
    }
    *out = into_c_string(psi_group(&(*group).inner).to_string());
    OrdsumStatus::Ok
}

/// Writes whether the derived series reaches the trivial group.
///
/// # Safety
/// `group` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ordsum_group_is_solvable(
    group: *const OrdsumGroup,
    out: *mut bool,
) -> OrdsumStatus {
    if group.is_null() || out.is_null() {
        return OrdsumStatus::NullArgument;
    }
    *out = (*group).inner.is_solvable();
    OrdsumStatus::Ok
}

/// Evaluates the criterion: the exact comparison of 1617·ψ(G) with
/// 211·ψ(C_n), and whether it concludes solvability (strict excess).
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ordsum_group_criterion(
    group: *const OrdsumGroup,
    out_comparison: *mut OrdsumComparison,
    out_solvable_by_criterion: *mut bool,
) -> OrdsumStatus {
    if group.is_null() || out_comparison.is_null() || out_solvable_by_criterion.is_null() {
        return OrdsumStatus::NullArgument;
    }
    let verdict = criterion_verdict(&(*group).inner);
    *out_comparison = match verdict.comparison {
        Comparison::Less => OrdsumComparison::Less,
        Comparison::Equal => OrdsumComparison::Equal,
        Comparison::Greater => OrdsumComparison::Greater,
    };
    *out_solvable_by_criterion = verdict.conclusion == Conclusion::SolvableByCriterion;
    OrdsumStatus::Ok
}

/// Writes ψ(C_n) via the multiplicative formula as a decimal string;
/// no enumeration, n up to 10¹².
///
/// # Safety
/// `out` must be a valid pointer; release the string with
/// `ordsum_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ordsum_psi_cyclic(n: u64, out: *mut *mut c_char) -> OrdsumStatus {
    if out.is_null() {
        return OrdsumStatus::NullArgument;
    }
    match psi_cyclic(n) {
        Ok(value) => {
            *out = into_c_string(value.to_string());
            OrdsumStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a string produced by this library; null is a no-op.
///
/// # Safety
/// `s` must have come from this library and not have been freed
/// already.
#[no_mangle]
pub unsafe extern "C" fn ordsum_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// Handles hold only owned table data, so crossing threads is fine.
const _: fn() = || {
    fn assert_send<T: Send>() {}
    assert_send::<OrdsumGroup>();
};
