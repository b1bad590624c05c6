//! C ABI for the filtration-regularity library.
//!
//! Handles are opaque; every function returns an error code from the
//! `FILTREG_*` family, with allocated strings handed back through out
//! parameters. Strings returned by this library must be released with
//! [`filtreg_string_free`], reports with [`filtreg_report_free`].

use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use filtreg::config::ExperimentConfig;
use filtreg::corpus::run_corpus;
use filtreg::harness::{evaluate_bound_by_id, run_experiment, tally, HarnessError};
use filtreg::report::InvariantReport;

pub const FILTREG_OK: i32 = 0;
pub const FILTREG_ERR_CHECK_FAILED: i32 = 1;
pub const FILTREG_ERR_CONFIG: i32 = 2;
pub const FILTREG_ERR_COMPUTE: i32 = 3;
pub const FILTREG_ERR_NULL_ARGUMENT: i32 = 4;
pub const FILTREG_ERR_BAD_UTF8: i32 = 5;
pub const FILTREG_ERR_BOUND: i32 = 6;

/// Opaque experiment report.
pub struct FiltregReport {
    inner: InvariantReport,
}

fn to_cstring(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, i32> {
    if p.is_null() {
        return Err(FILTREG_ERR_NULL_ARGUMENT);
    }
    CStr::from_ptr(p).to_str().map_err(|_| FILTREG_ERR_BAD_UTF8)
}

fn code_for(err: &HarnessError) -> i32 {
    match err {
        HarnessError::Config(_) => FILTREG_ERR_CONFIG,
        HarnessError::Computation { .. } => FILTREG_ERR_COMPUTE,
    }
}

/// Runs an experiment from configuration text. On success `*out_report`
/// owns the report. On failure, if `out_error` is non-null it receives an
/// allocated message.
///
/// # Safety
/// `config_text` must be a valid NUL-terminated string; `out_report` must
/// be a valid pointer; `out_error` may be null.
#[no_mangle]
pub unsafe extern "C" fn filtreg_run(
    config_text: *const c_char,
    out_report: *mut *mut FiltregReport,
    out_error: *mut *mut c_char,
) -> i32 {
    if out_report.is_null() {
        return FILTREG_ERR_NULL_ARGUMENT;
    }
    *out_report = ptr::null_mut();
    let text = match read_str(config_text) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let cfg = match ExperimentConfig::parse(text) {
        Ok(c) => c,
        Err(m) => {
            if !out_error.is_null() {
                *out_error = to_cstring(m);
            }
            return FILTREG_ERR_CONFIG;
        }
    };
    match run_experiment(&cfg) {
        Ok(report) => {
            *out_report = Box::into_raw(Box::new(FiltregReport { inner: report }));
            FILTREG_OK
        }
        Err(e) => {
            if !out_error.is_null() {
                *out_error = to_cstring(e.to_string());
            }
            code_for(&e)
        }
    }
}

/// JSON serialization of a report; timings are included when
/// `with_timings` is nonzero. Returns null on a null handle.
///
/// # Safety
/// `report` must be a live handle from [`filtreg_run`].
#[no_mangle]
pub unsafe extern "C" fn filtreg_report_json(
    report: *const FiltregReport,
    with_timings: i32,
) -> *mut c_char {
    if report.is_null() {
        return ptr::null_mut();
    }
    to_cstring((*report).inner.to_json(with_timings != 0))
}

/// CSV serialization (one row per check), including the header line.
///
/// # Safety
/// `report` must be a live handle from [`filtreg_run`].
#[no_mangle]
pub unsafe extern "C" fn filtreg_report_csv(report: *const FiltregReport) -> *mut c_char {
    if report.is_null() {
        return ptr::null_mut();
    }
    let mut body = String::from(filtreg::report::CSV_HEADER);
    body.push('\n');
    body.push_str(&(*report).inner.to_csv());
    to_cstring(body)
}

/// Number of failed checks in the report.
///
/// # Safety
/// `report` must be a live handle from [`filtreg_run`].
#[no_mangle]
pub unsafe extern "C" fn filtreg_report_failures(report: *const FiltregReport) -> u32 {
    if report.is_null() {
        return 0;
    }
    (*report).inner.failures() as u32
}

/// Releases a report handle. Null is a no-op.
///
/// # Safety
/// `report` must come from [`filtreg_run`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn filtreg_report_free(report: *mut FiltregReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Releases a string allocated by this library. Null is a no-op.
///
/// # Safety
/// `s` must come from a `filtreg_*` call and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn filtreg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Evaluates a bound formula by registry identifier, e.g. id `"A3"` with
/// args `"d=2,D=1,r=0"`. The value is written to `*out_value` as a decimal
/// string (arbitrary precision).
///
/// # Safety
/// `id` must be a valid NUL-terminated string; `args` may be null;
/// `out_value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn filtreg_bound(
    id: *const c_char,
    args: *const c_char,
    out_value: *mut *mut c_char,
) -> i32 {
    if out_value.is_null() {
        return FILTREG_ERR_NULL_ARGUMENT;
    }
    *out_value = ptr::null_mut();
    let id = match read_str(id) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let mut map: BTreeMap<String, i64> = BTreeMap::new();
    if !args.is_null() {
        let spec = match read_str(args) {
            Ok(t) => t,
            Err(code) => return code,
        };
        for pair in spec.split(',').filter(|p| !p.trim().is_empty()) {
            let Some((k, v)) = pair.split_once('=') else {
                return FILTREG_ERR_CONFIG;
            };
            let Ok(v) = v.trim().parse::<i64>() else {
                return FILTREG_ERR_CONFIG;
            };
            map.insert(k.trim().to_string(), v);
        }
    }
    match evaluate_bound_by_id(id, &map) {
        Ok(v) => {
            *out_value = to_cstring(v.to_string());
            FILTREG_OK
        }
        Err(_) => FILTREG_ERR_BOUND,
    }
}

/// Runs the built-in corpus. Pass a null `filter` for everything. The
/// pass/fail/skip tallies are written to the out parameters when non-null.
/// Returns `FILTREG_OK` when every check passes, `FILTREG_ERR_CHECK_FAILED`
/// on failures and `FILTREG_ERR_COMPUTE` on instance errors.
///
/// # Safety
/// `filter` may be null or a valid NUL-terminated string; out pointers may
/// be null.
#[no_mangle]
pub unsafe extern "C" fn filtreg_corpus(
    filter: *const c_char,
    seed: u64,
    jobs: u32,
    out_pass: *mut u32,
    out_fail: *mut u32,
    out_skip: *mut u32,
) -> i32 {
    let filter = if filter.is_null() {
        None
    } else {
        match read_str(filter) {
            Ok(t) => Some(t),
            Err(code) => return code,
        }
    };
    let (results, summary) = run_corpus(filter, seed, jobs.max(1) as usize);
    let _ = results;
    if !out_pass.is_null() {
        *out_pass = summary.pass as u32;
    }
    if !out_fail.is_null() {
        *out_fail = summary.fail as u32;
    }
    if !out_skip.is_null() {
        *out_skip = summary.skip as u32;
    }
    if !summary.errors.is_empty() {
        FILTREG_ERR_COMPUTE
    } else if summary.fail > 0 {
        FILTREG_ERR_CHECK_FAILED
    } else {
        FILTREG_OK
    }
}

/// Tallies of a report's checks: pass, fail, skip.
///
/// # Safety
/// `report` must be a live handle; out pointers may be null.
#[no_mangle]
pub unsafe extern "C" fn filtreg_report_tally(
    report: *const FiltregReport,
    out_pass: *mut u32,
    out_fail: *mut u32,
    out_skip: *mut u32,
) -> i32 {
    if report.is_null() {
        return FILTREG_ERR_NULL_ARGUMENT;
    }
    let (p, f, s) = tally(&(*report).inner.checks);
    if !out_pass.is_null() {
        *out_pass = p as u32;
    }
    if !out_fail.is_null() {
        *out_fail = f as u32;
    }
    if !out_skip.is_null() {
        *out_skip = s as u32;
    }
    FILTREG_OK
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    const CONFIG: &str = "name = capi\nvariables = [x, y]\nJ = [\"x^2\", \"x*y\"]\nI = [\"x\", \"y\"]\nfiltration = adic\nseed = 7\n";

    #[test]
    fn run_and_serialize_roundtrip() {
        let cfg = CString::new(CONFIG).unwrap();
        let mut report: *mut FiltregReport = ptr::null_mut();
        let mut err: *mut c_char = ptr::null_mut();
        let code = unsafe { filtreg_run(cfg.as_ptr(), &mut report, &mut err) };
        assert_eq!(code, FILTREG_OK);
        assert!(err.is_null());
        assert!(!report.is_null());
        unsafe {
            assert_eq!(filtreg_report_failures(report), 0);
            let json = filtreg_report_json(report, 0);
            let text = CStr::from_ptr(json).to_str().unwrap().to_string();
            assert!(text.contains("\"name\":\"capi\""));
            filtreg_string_free(json);
            let csv = filtreg_report_csv(report);
            assert!(CStr::from_ptr(csv)
                .to_str()
                .unwrap()
                .starts_with("instance,"));
            filtreg_string_free(csv);
            let (mut p, mut f, mut s) = (0u32, 0u32, 0u32);
            assert_eq!(
                filtreg_report_tally(report, &mut p, &mut f, &mut s),
                FILTREG_OK
            );
            assert!(p > 0 && f == 0);
            filtreg_report_free(report);
        }
    }

    #[test]
    fn config_errors_are_reported() {
        let cfg = CString::new("variables = [x]\n").unwrap();
        let mut report: *mut FiltregReport = ptr::null_mut();
        let mut err: *mut c_char = ptr::null_mut();
        let code = unsafe { filtreg_run(cfg.as_ptr(), &mut report, &mut err) };
        assert_eq!(code, FILTREG_ERR_CONFIG);
        assert!(report.is_null());
        assert!(!err.is_null());
        unsafe { filtreg_string_free(err) };
        let code = unsafe { filtreg_run(ptr::null(), &mut report, ptr::null_mut()) };
        assert_eq!(code, FILTREG_ERR_NULL_ARGUMENT);
    }

    #[test]
    fn bound_evaluation() {
        let id = CString::new("F4").unwrap();
        let args = CString::new("d=2,D=4").unwrap();
        let mut value: *mut c_char = ptr::null_mut();
        let code = unsafe { filtreg_bound(id.as_ptr(), args.as_ptr(), &mut value) };
        assert_eq!(code, FILTREG_OK);
        let text = unsafe { CStr::from_ptr(value).to_str().unwrap().to_string() };
        assert_eq!(text, "49");
        unsafe { filtreg_string_free(value) };

        let bad = CString::new("Nope").unwrap();
        let code = unsafe { filtreg_bound(bad.as_ptr(), args.as_ptr(), &mut value) };
        assert_eq!(code, FILTREG_ERR_BOUND);
    }

    #[test]
    fn corpus_smoke() {
        let filter = CString::new("structural").unwrap();
        let (mut p, mut f, mut s) = (0u32, 0u32, 0u32);
        let code = unsafe { filtreg_corpus(filter.as_ptr(), 42, 4, &mut p, &mut f, &mut s) };
        assert_eq!(code, FILTREG_OK);
        assert!(p > 0);
        assert_eq!(f, 0);
        let _ = s;
    }
}
