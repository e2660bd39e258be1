//! C ABI for `padic-gkz`.
//!
//! Every fallible function returns a [`GkzStatus`]; on failure the message is
//! available from [`gkz_last_error`] until the next call on the same thread.
//! Strings returned through `out` parameters are owned by the caller and must
//! be released with [`gkz_string_free`]. Rational inputs are comma-separated
//! strings such as `"0, 0, -1/2"`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use padic_gkz::arith::{ord_p, parse_rational, parse_rational_list};
use padic_gkz::classical::{classical_valuations, dominated, dwork_check, prop_4_7_check, ClassicalParams};
use padic_gkz::cli::{self, Command};
use padic_gkz::gkz::relation_lattice;
use padic_gkz::job::JobSpec;
use padic_gkz::search::theorem_6_1_search;
use padic_gkz::series::integrality_verdict;
use padic_gkz::weight::weight;
use padic_gkz::{Configuration, GkzError, Limits, Prime, Rational};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GkzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    NotPrime = 4,
    NotPIntegral = 5,
    EmptySet = 6,
    DegenerateTerm = 7,
    OutsideCone = 8,
    NotFound = 9,
    CapExceeded = 10,
    DegenerateEmbedding = 11,
    Parse = 12,
    Overflow = 13,
    DivisionByZero = 14,
    Panic = 15,
}

/// Opaque handle to a point configuration.
pub struct GkzConfig {
    inner: Configuration,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &GkzError) -> GkzStatus {
    match e {
        GkzError::InvalidArgument(_) => GkzStatus::InvalidArgument,
        GkzError::NotPrime(_) => GkzStatus::NotPrime,
        GkzError::NotPIntegral { .. } => GkzStatus::NotPIntegral,
        GkzError::DivisionByZero => GkzStatus::DivisionByZero,
        GkzError::EmptySet(_) => GkzStatus::EmptySet,
        GkzError::DegenerateTerm(_) => GkzStatus::DegenerateTerm,
        GkzError::OutsideCone(_) => GkzStatus::OutsideCone,
        GkzError::NotFound(_) => GkzStatus::NotFound,
        GkzError::CapExceeded { .. } => GkzStatus::CapExceeded,
        GkzError::DegenerateEmbedding(_) => GkzStatus::DegenerateEmbedding,
        GkzError::Parse { .. } => GkzStatus::Parse,
        GkzError::Overflow(_) => GkzStatus::Overflow,
    }
}

enum Failure {
    Status(GkzStatus, String),
    Gkz(GkzError),
}

impl From<GkzError> for Failure {
    fn from(e: GkzError) -> Failure {
        Failure::Gkz(e)
    }
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> GkzStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(body)) {
        Ok(Ok(())) => GkzStatus::Ok,
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Ok(Err(Failure::Gkz(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            GkzStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::Status(GkzStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure::Status(GkzStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn read_list(s: *const c_char, name: &str) -> Result<Vec<Rational>, Failure> {
    Ok(parse_rational_list(read_str(s, name)?, name)?)
}

unsafe fn config_ref<'a>(cfg: *const GkzConfig) -> Result<&'a Configuration, Failure> {
    cfg.as_ref()
        .map(|c| &c.inner)
        .ok_or_else(|| Failure::Status(GkzStatus::NullPointer, "config is null".into()))
}

unsafe fn write_out(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Status(GkzStatus::NullPointer, "out is null".into()));
    }
    let c = CString::new(s).map_err(|_| Failure::Status(GkzStatus::Panic, "output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn json<T: serde::Serialize>(x: &T) -> Result<String, Failure> {
    serde_json::to_string(x).map_err(|e| Failure::Status(GkzStatus::Panic, e.to_string()))
}

/// Creates a configuration from `num_columns` columns of length `dim`,
/// stored column after column in `columns`.
///
/// # Safety
/// `columns` must point to `dim * num_columns` integers and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gkz_config_new(
    columns: *const i64,
    dim: usize,
    num_columns: usize,
    out: *mut *mut GkzConfig,
) -> GkzStatus {
    guard(|| {
        if out.is_null() || (columns.is_null() && dim * num_columns > 0) {
            return Err(Failure::Status(GkzStatus::NullPointer, "columns or out is null".into()));
        }
        let flat = if dim * num_columns == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(columns, dim * num_columns)
        };
        let cols: Vec<Vec<i64>> = flat.chunks(dim.max(1)).map(<[i64]>::to_vec).collect();
        let inner = Configuration::new(cols)?;
        *out = Box::into_raw(Box::new(GkzConfig { inner }));
        Ok(())
    })
}

/// # Safety
/// `cfg` must come from [`gkz_config_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gkz_config_free(cfg: *mut GkzConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Dimension `n` of the ambient lattice, or 0 for a null handle.
///
/// # Safety
/// `cfg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gkz_config_dim(cfg: *const GkzConfig) -> usize {
    cfg.as_ref().map_or(0, |c| c.inner.dim())
}

/// Number of columns `N`, or 0 for a null handle.
///
/// # Safety
/// `cfg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gkz_config_num_columns(cfg: *const GkzConfig) -> usize {
    cfg.as_ref().map_or(0, |c| c.inner.num_columns())
}

/// The relation lattice basis as a JSON array of integer arrays.
///
/// # Safety
/// `cfg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gkz_relation_lattice_json(cfg: *const GkzConfig, out: *mut *mut c_char) -> GkzStatus {
    guard(|| {
        let basis = relation_lattice(config_ref(cfg)?)?;
        write_out(out, json(&basis.vectors)?)
    })
}

/// The weight `w(r)` as a rational string.
///
/// # Safety
/// `r` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gkz_weight(r: *const c_char, p: u64, out: *mut *mut c_char) -> GkzStatus {
    guard(|| {
        let r = read_list(r, "r")?;
        let rep = weight(&r, Prime::new(p)?)?;
        write_out(out, rep.w.to_string())
    })
}

/// `ord_p(x)` as a rational string, or `"inf"` for zero.
///
/// # Safety
/// `x` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gkz_ord_p(x: *const c_char, p: u64, out: *mut *mut c_char) -> GkzStatus {
    guard(|| {
        let x = parse_rational(read_str(x, "x")?, "x")?;
        write_out(out, ord_p(&x, Prime::new(p)?).to_string())
    })
}

/// The integrality verdict for `Φ_v` as JSON. `beta` may be null, in which
/// case `Σ v_i a_i` is used.
///
/// # Safety
/// `cfg` must be a live handle, `v` a NUL-terminated string, `beta` null or
/// NUL-terminated, and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gkz_verdict_json(
    cfg: *const GkzConfig,
    v: *const c_char,
    beta: *const c_char,
    p: u64,
    b_max: u32,
    out: *mut *mut c_char,
) -> GkzStatus {
    guard(|| {
        let config = config_ref(cfg)?;
        let v = read_list(v, "v")?;
        if v.len() != config.num_columns() {
            return Err(GkzError::InvalidArgument(format!("v has {} entries, expected {}", v.len(), config.num_columns())).into());
        }
        let beta = if beta.is_null() {
            config.combine(&v)
        } else {
            read_list(beta, "beta")?
        };
        let vd = integrality_verdict(config, &v, &beta, Prime::new(p)?, b_max, &Limits::default())?;
        write_out(out, json(&vd)?)
    })
}

/// The optimal `(γ, b, v)` over `β + ℤ^n` as JSON.
///
/// # Safety
/// `cfg` must be a live handle, `beta` NUL-terminated, and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gkz_search_json(
    cfg: *const GkzConfig,
    beta: *const c_char,
    p: u64,
    out: *mut *mut c_char,
) -> GkzStatus {
    guard(|| {
        let config = config_ref(cfg)?;
        let beta = read_list(beta, "beta")?;
        let rep = theorem_6_1_search(config, &beta, Prime::new(p)?, &Limits::default())?;
        write_out(out, json(&rep)?)
    })
}

/// Domination, the shifted and digit-wise criteria, and the least coefficient
/// valuation for `j ≤ j_max`, as JSON. `theta` may be an empty string.
///
/// # Safety
/// `theta` and `sigma` must be NUL-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gkz_classical_json(
    theta: *const c_char,
    sigma: *const c_char,
    p: u64,
    j_max: u32,
    out: *mut *mut c_char,
) -> GkzStatus {
    guard(|| {
        let params = ClassicalParams::new(read_list(theta, "theta")?, read_list(sigma, "sigma")?)?;
        let p = Prime::new(p)?;
        let vals = classical_valuations(&params, p, j_max)?;
        let min = vals.iter().min().cloned().unwrap_or_default();
        let report = serde_json::json!({
            "dominated": dominated(&params)?.verdict,
            "shifted_domination": prop_4_7_check(&params, p)?.holds,
            "digit_domination": dwork_check(&params, p)?.holds,
            "min_valuation": min.to_string(),
        });
        write_out(out, report.to_string())
    })
}

/// Runs a CLI command (`"verdict"`, `"search"`, ...) on a TOML job and writes
/// the JSON report. `exit` receives the command's exit status.
///
/// # Safety
/// `command` and `job_toml` must be NUL-terminated, `out` and `exit` writable.
#[no_mangle]
pub unsafe extern "C" fn gkz_run_job_json(
    command: *const c_char,
    job_toml: *const c_char,
    out: *mut *mut c_char,
    exit: *mut u8,
) -> GkzStatus {
    guard(|| {
        let command: Command = read_str(command, "command")?.parse()?;
        let job = JobSpec::from_toml(read_str(job_toml, "job")?)?.resolved()?;
        let report = cli::run(command, &job)?;
        if !exit.is_null() {
            *exit = report.exit;
        }
        write_out(out, report.json.to_string())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gkz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message of the last failure on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn gkz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
