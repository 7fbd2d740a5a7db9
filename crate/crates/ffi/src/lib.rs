//! C interface to `weylmittag`.
//!
//! Every fallible function returns a [`WmStatus`]. On failure a description is
//! stored per thread and can be read with [`wm_last_error_message`]. Handles
//! returned through out-pointers are owned by the caller and released with the
//! matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num::ToPrimitive;
use weylmittag::boxspline::{dh_spec, BoxSplineEvaluator};
use weylmittag::cli::DecompositionJson;
use weylmittag::mittag::{decompose, lattice_sum_f64, MLProblem};
use weylmittag::rational::{parse_rational, Q};
use weylmittag::rootsys::{CenterClass, RootSystem, Weight};
use weylmittag::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    RankCap = 3,
    Verification = 4,
    /// A rational result does not fit in 64-bit integers.
    Overflow = 5,
    Panic = 6,
}

/// A root system of rank at most the default Weyl group cap.
pub struct WmRootSystem {
    inner: RootSystem,
}

/// A verified character decomposition.
pub struct WmDecomposition {
    terms: Vec<(Vec<i64>, Q)>,
    leading: Vec<i64>,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(WmStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::RankCap { .. } => WmStatus::RankCap,
            Error::Verification(_) => WmStatus::Verification,
            _ => WmStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> WmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            WmStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            WmStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(WmStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(WmStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn root_system<'a>(rs: *const WmRootSystem) -> Result<&'a RootSystem, Failure> {
    rs.as_ref().map(|r| &r.inner).ok_or_else(|| null("root system"))
}

fn parse_class(rs: &RootSystem, s: Option<&str>) -> Result<CenterClass, Failure> {
    let class = match s.map(str::trim) {
        None | Some("") | Some("trivial") => CenterClass::trivial(rs.rank()),
        Some(s) => CenterClass::new(s.split(',').map(|p| parse_rational(p.trim())).collect::<Result<_, _>>()?),
    };
    rs.validate_class(&class)?;
    Ok(class)
}

fn to_i64_pair(x: &Q) -> Result<(i64, i64), Failure> {
    match (x.numer().to_i64(), x.denom().to_i64()) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(Failure(WmStatus::Overflow, format!("{x} does not fit in 64-bit integers"))),
    }
}

fn check_len(expected: usize, got: usize) -> Result<(), Failure> {
    if expected != got {
        return Err(Error::Dimension { expected, got }.into());
    }
    Ok(())
}

/// Description of the last failure on this thread, or an empty string. The
/// pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn wm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a root system from a type string such as `"A2"` or `"G2"`.
///
/// # Safety
/// `type_name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wm_root_system_new(type_name: *const c_char, out: *mut *mut WmRootSystem) -> WmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let rs = RootSystem::new(str_arg(type_name, "type")?)?;
        if rs.rank() > rs.rank_cap() {
            return Err(Error::RankCap { rank: rs.rank(), cap: rs.rank_cap() }.into());
        }
        *out = Box::into_raw(Box::new(WmRootSystem { inner: rs }));
        Ok(())
    })
}

/// # Safety
/// `rs` must come from [`wm_root_system_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn wm_root_system_free(rs: *mut WmRootSystem) {
    if !rs.is_null() {
        drop(Box::from_raw(rs));
    }
}

/// # Safety
/// `rs` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wm_root_system_rank(rs: *const WmRootSystem, out: *mut usize) -> WmStatus {
    guard(|| {
        let rs = root_system(rs)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = rs.rank();
        Ok(())
    })
}

/// Decomposes `F_{k,xi}` into irreducible characters. `class_m` is a
/// comma-separated m-vector such as `"1/3,2/3"`; null or `"trivial"` selects
/// the trivial class.
///
/// # Safety
/// `rs` must be a live handle, `class_m` null or NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn wm_decompose(
    rs: *const WmRootSystem,
    k: u32,
    class_m: *const c_char,
    out: *mut *mut WmDecomposition,
) -> WmStatus {
    guard(|| {
        let rs = root_system(rs)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let class_str = if class_m.is_null() { None } else { Some(str_arg(class_m, "class")?) };
        let p = MLProblem::new(rs, k, parse_class(rs, class_str)?)?;
        let dec = decompose(&p)?;
        if !dec.verified(rs) {
            return Err(Failure(WmStatus::Verification, "decomposition failed its internal checks".into()));
        }
        let terms = dec
            .combo
            .canonical_order(rs)
            .into_iter()
            .map(|(l, v)| (l.to_ints().expect("integral"), v))
            .collect();
        let json = CString::new(DecompositionJson::new(&p, &dec).to_json()).expect("no NUL in JSON");
        let leading = dec.leading.to_ints().expect("integral");
        *out = Box::into_raw(Box::new(WmDecomposition { terms, leading, json }));
        Ok(())
    })
}

/// # Safety
/// `dec` must come from [`wm_decompose`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn wm_decomposition_free(dec: *mut WmDecomposition) {
    if !dec.is_null() {
        drop(Box::from_raw(dec));
    }
}

/// Number of irreducible characters with nonzero multiplicity.
///
/// # Safety
/// `dec` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wm_decomposition_len(dec: *const WmDecomposition, out: *mut usize) -> WmStatus {
    guard(|| {
        let dec = dec.as_ref().ok_or_else(|| null("decomposition"))?;
        *out.as_mut().ok_or_else(|| null("out"))? = dec.terms.len();
        Ok(())
    })
}

/// Term `index` in canonical order: the highest weight (`rank` entries written
/// to `lambda`) and the multiplicity `num / den` in lowest terms.
///
/// # Safety
/// `dec` must be a live handle, `lambda` must hold `lambda_len` entries, and
/// `num`, `den` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wm_decomposition_term(
    dec: *const WmDecomposition,
    index: usize,
    lambda: *mut i64,
    lambda_len: usize,
    num: *mut i64,
    den: *mut i64,
) -> WmStatus {
    guard(|| {
        let dec = dec.as_ref().ok_or_else(|| null("decomposition"))?;
        let (weight, value) = dec
            .terms
            .get(index)
            .ok_or_else(|| Failure(WmStatus::InvalidArgument, format!("index {index} out of range")))?;
        check_len(weight.len(), lambda_len)?;
        if lambda.is_null() || num.is_null() || den.is_null() {
            return Err(null("output buffer"));
        }
        let (n, d) = to_i64_pair(value)?;
        std::slice::from_raw_parts_mut(lambda, lambda_len).copy_from_slice(weight);
        *num = n;
        *den = d;
        Ok(())
    })
}

/// The dominance-maximal highest weight.
///
/// # Safety
/// `dec` must be a live handle and `lambda` must hold `lambda_len` entries.
#[no_mangle]
pub unsafe extern "C" fn wm_decomposition_leading(
    dec: *const WmDecomposition,
    lambda: *mut i64,
    lambda_len: usize,
) -> WmStatus {
    guard(|| {
        let dec = dec.as_ref().ok_or_else(|| null("decomposition"))?;
        check_len(dec.leading.len(), lambda_len)?;
        if lambda.is_null() {
            return Err(null("output buffer"));
        }
        std::slice::from_raw_parts_mut(lambda, lambda_len).copy_from_slice(&dec.leading);
        Ok(())
    })
}

/// JSON form of the decomposition, identical to `weylmittag decompose`. The
/// string is owned by `dec`. Returns null if `dec` is null.
///
/// # Safety
/// `dec` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wm_decomposition_json(dec: *const WmDecomposition) -> *const c_char {
    dec.as_ref().map_or(ptr::null(), |d| d.json.as_ptr())
}

/// Exact density of the `k`-fold box spline of positive roots at the weight
/// with coordinates `t_num[i] / t_den[i]` (fundamental-weight basis).
///
/// # Safety
/// `rs` must be a live handle, `t_num` and `t_den` must hold `len` entries,
/// `out_num` and `out_den` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wm_boxspline_eval(
    rs: *const WmRootSystem,
    k: u32,
    t_num: *const i64,
    t_den: *const i64,
    len: usize,
    out_num: *mut i64,
    out_den: *mut i64,
) -> WmStatus {
    guard(|| {
        let rs = root_system(rs)?;
        check_len(rs.rank(), len)?;
        let nums = slice_arg(t_num, len, "t_num")?;
        let dens = slice_arg(t_den, len, "t_den")?;
        if out_num.is_null() || out_den.is_null() {
            return Err(null("output"));
        }
        if dens.contains(&0) {
            return Err(Failure(WmStatus::InvalidArgument, "zero denominator".into()));
        }
        let t = Weight::new(nums.iter().zip(dens).map(|(&n, &d)| Q::new(n.into(), d.into())).collect());
        let spec = dh_spec(rs, k)?;
        let value = BoxSplineEvaluator::new(&spec)?.eval(&t)?.value;
        let (n, d) = to_i64_pair(&value)?;
        *out_num = n;
        *out_den = d;
        Ok(())
    })
}

/// Truncated lattice sum `F_{k,xi}(x)` with `x` in coroot coordinates and
/// cutoff `radius` on coroot coordinates of the lattice points.
///
/// # Safety
/// `rs` must be a live handle, `class_m` null or NUL-terminated, `x` must hold
/// `len` entries, `out_re` and `out_im` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wm_lattice_sum(
    rs: *const WmRootSystem,
    k: u32,
    class_m: *const c_char,
    x: *const f64,
    len: usize,
    radius: u64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> WmStatus {
    guard(|| {
        let rs = root_system(rs)?;
        check_len(rs.rank(), len)?;
        let x = slice_arg(x, len, "x")?;
        if out_re.is_null() || out_im.is_null() {
            return Err(null("output"));
        }
        if radius == 0 || x.iter().any(|v| !v.is_finite()) {
            return Err(Failure(WmStatus::InvalidArgument, "radius must be positive and x finite".into()));
        }
        let class_str = if class_m.is_null() { None } else { Some(str_arg(class_m, "class")?) };
        let p = MLProblem::new(rs, k, parse_class(rs, class_str)?)?;
        let v = lattice_sum_f64(&p, x, radius);
        *out_re = v.re;
        *out_im = v.im;
        Ok(())
    })
}
