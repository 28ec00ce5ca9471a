//! C ABI over `fusioncheck`.
//!
//! Groups and fusion systems are opaque handles owned by the caller and
//! released with `fc_group_free` / `fc_fusion_free`. Every fallible call
//! returns an [`FcStatus`]; on failure `fc_last_error` describes the error
//! for the calling thread. Strings returned through `char **` are freed with
//! `fc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use fusioncheck::classify::{is_p_nilpotent, is_p_supersolvable};
use fusioncheck::fusion::{fusion_system, FusionSystem};
use fusioncheck::verify::{check, load_source, TheoremId};
use fusioncheck::{Error, FiniteGroup, Permutation};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidPermutation = 3,
    ElementCapExceeded = 4,
    EnumerationBoundExceeded = 5,
    NotPrime = 6,
    UnknownSource = 7,
    MalformedInput = 8,
    PreconditionFailed = 9,
    Io = 10,
    Internal = 11,
    Panic = 12,
}

/// A finite permutation group.
pub struct FcGroup(FiniteGroup);

/// The fusion system of a group on one of its Sylow subgroups.
pub struct FcFusion(FusionSystem);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> FcStatus {
    match e {
        Error::InvalidPermutation(_) | Error::DegreeMismatch { .. } | Error::NotAnElement(_) => {
            FcStatus::InvalidPermutation
        }
        Error::ElementCapExceeded { .. } => FcStatus::ElementCapExceeded,
        Error::EnumerationBoundExceeded { .. } => FcStatus::EnumerationBoundExceeded,
        Error::NotPrime(_) => FcStatus::NotPrime,
        Error::UnknownSource(_) | Error::ParameterOutOfRange(_) => FcStatus::UnknownSource,
        Error::MalformedFixture(_) | Error::MalformedManifest(_) => FcStatus::MalformedInput,
        Error::Precondition(_) | Error::HypothesisViolated(_) => FcStatus::PreconditionFailed,
        Error::Io(_) => FcStatus::Io,
        _ => FcStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> Result<(), FcStatus>) -> FcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FcStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            FcStatus::Panic
        }
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, FcStatus>;
}

impl<T> OrStatus<T> for Result<T, Error> {
    fn or_status(self) -> Result<T, FcStatus> {
        self.map_err(|e| {
            set_error(&e.to_string());
            status_of(&e)
        })
    }
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, FcStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null pointer argument");
        FcStatus::NullPointer
    })
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, FcStatus> {
    p.as_mut().ok_or_else(|| {
        set_error("null output pointer");
        FcStatus::NullPointer
    })
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, FcStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(FcStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string is not UTF-8");
        FcStatus::InvalidUtf8
    })
}

fn give_string(s: String, dst: &mut *mut c_char) {
    *dst = CString::new(s)
        .expect("JSON has no interior NUL")
        .into_raw();
}

/// Message for the last failure on this thread; empty if none. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn fc_status_name(status: FcStatus) -> *const c_char {
    let s: &'static CStr = match status {
        FcStatus::Ok => c"ok",
        FcStatus::NullPointer => c"null pointer",
        FcStatus::InvalidUtf8 => c"invalid utf-8",
        FcStatus::InvalidPermutation => c"invalid permutation",
        FcStatus::ElementCapExceeded => c"element cap exceeded",
        FcStatus::EnumerationBoundExceeded => c"enumeration bound exceeded",
        FcStatus::NotPrime => c"not a prime",
        FcStatus::UnknownSource => c"unknown source",
        FcStatus::MalformedInput => c"malformed input",
        FcStatus::PreconditionFailed => c"precondition failed",
        FcStatus::Io => c"i/o error",
        FcStatus::Internal => c"internal error",
        FcStatus::Panic => c"panic",
    };
    s.as_ptr()
}

/// Builds a group from `fixture:<name>` or `builder:<expr>`.
///
/// # Safety
/// `source` must be a NUL-terminated string and `out_group` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fc_group_from_source(
    source: *const c_char,
    out_group: *mut *mut FcGroup,
) -> FcStatus {
    guard(|| {
        let dst = out(out_group)?;
        let g = load_source(text(source)?, None).or_status()?;
        *dst = Box::into_raw(Box::new(FcGroup(g)));
        Ok(())
    })
}

/// Builds the group generated by `n_gens` permutations of `{1..degree}`,
/// given as `n_gens * degree` consecutive 1-based images.
///
/// # Safety
/// `images` must point to `n_gens * degree` readable values.
#[no_mangle]
pub unsafe extern "C" fn fc_group_from_generators(
    degree: usize,
    images: *const u32,
    n_gens: usize,
    out_group: *mut *mut FcGroup,
) -> FcStatus {
    guard(|| {
        let dst = out(out_group)?;
        let flat: &[u32] = if n_gens == 0 || degree == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(deref(images)?, n_gens * degree)
        };
        let gens = flat
            .chunks(degree.max(1))
            .map(|c| Permutation::from_images(&c.iter().map(|&x| x as usize).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>, _>>()
            .or_status()?;
        let g = FiniteGroup::from_generators(degree, &gens, "G").or_status()?;
        *dst = Box::into_raw(Box::new(FcGroup(g)));
        Ok(())
    })
}

/// # Safety
/// `group` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fc_group_free(group: *mut FcGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fc_group_order(group: *const FcGroup, order: *mut usize) -> FcStatus {
    guard(|| {
        *out(order)? = deref(group)?.0.order();
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fc_group_degree(group: *const FcGroup, degree: *mut usize) -> FcStatus {
    guard(|| {
        *out(degree)? = deref(group)?.0.degree();
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fc_is_p_nilpotent(
    group: *const FcGroup,
    p: u64,
    result: *mut bool,
) -> FcStatus {
    guard(|| {
        let dst = out(result)?;
        *dst = is_p_nilpotent(&deref(group)?.0, p).or_status()?;
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fc_is_p_supersolvable(
    group: *const FcGroup,
    p: u64,
    result: *mut bool,
) -> FcStatus {
    guard(|| {
        let dst = out(result)?;
        *dst = is_p_supersolvable(&deref(group)?.0, p).or_status()?;
        Ok(())
    })
}

/// Fusion system of `group` on a Sylow `p`-subgroup.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fc_fusion_new(
    group: *const FcGroup,
    p: u64,
    out_fusion: *mut *mut FcFusion,
) -> FcStatus {
    guard(|| {
        let dst = out(out_fusion)?;
        let f = fusion_system(&deref(group)?.0, p).or_status()?;
        *dst = Box::into_raw(Box::new(FcFusion(f)));
        Ok(())
    })
}

/// # Safety
/// `fusion` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fc_fusion_free(fusion: *mut FcFusion) {
    if !fusion.is_null() {
        drop(Box::from_raw(fusion));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fc_fusion_sylow_order(
    fusion: *const FcFusion,
    order: *mut usize,
) -> FcStatus {
    guard(|| {
        *out(order)? = deref(fusion)?.0.sylow().order();
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fc_fusion_is_supersolvable(
    fusion: *const FcFusion,
    result: *mut bool,
) -> FcStatus {
    guard(|| {
        let dst = out(result)?;
        *dst = deref(fusion)?.0.is_supersolvable().or_status()?.is_some();
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fc_fusion_is_nilpotent(
    fusion: *const FcFusion,
    result: *mut bool,
) -> FcStatus {
    guard(|| {
        let dst = out(result)?;
        *dst = deref(fusion)?.0.is_nilpotent().or_status()?;
        Ok(())
    })
}

/// Order of the largest subgroup of `S` normal in the fusion system.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fc_fusion_o_p_order(
    fusion: *const FcFusion,
    order: *mut usize,
) -> FcStatus {
    guard(|| {
        let dst = out(order)?;
        *dst = deref(fusion)?.0.o_p_fusion().or_status()?.order();
        Ok(())
    })
}

/// Full fusion report as JSON.
///
/// # Safety
/// Pointers must be valid; free the result with `fc_string_free`.
#[no_mangle]
pub unsafe extern "C" fn fc_fusion_report_json(
    fusion: *const FcFusion,
    json: *mut *mut c_char,
) -> FcStatus {
    guard(|| {
        let dst = out(json)?;
        let r = deref(fusion)?.0.report().or_status()?;
        give_string(serde_json::to_string(&r).expect("serializable"), dst);
        Ok(())
    })
}

/// Runs one check (`"A"`, `"B"`, `"C"`, `"D"`, `"pnil-wp"`, `"pnil-pn"`,
/// `"Q1"`, `"Q2"` or `"equiv"`) and returns the report as JSON.
///
/// # Safety
/// Pointers must be valid; free the result with `fc_string_free`.
#[no_mangle]
pub unsafe extern "C" fn fc_check_json(
    group: *const FcGroup,
    theorem: *const c_char,
    p: u64,
    json: *mut *mut c_char,
) -> FcStatus {
    guard(|| {
        let dst = out(json)?;
        let t: TheoremId = text(theorem)?.parse().or_status()?;
        let r = check(t, &deref(group)?.0, p, &[]).or_status()?;
        give_string(serde_json::to_string(&r).expect("serializable"), dst);
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
