//! C ABI over the `pvp` command runner.
//!
//! A caller creates a [`PvpSession`], adjusts its limits, and runs commands
//! by name with a JSON input string. Every command yields the same JSON
//! report the `pvp` binary prints. Strings returned by the library must be
//! released with [`pvp_string_free`]. No function unwinds across the
//! boundary: a panic becomes [`PvpStatus::Panic`].

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pvp_core::cli::io::Status;
use pvp_core::cli::{run, Command, RunOptions};

/// Result codes. Values 0 to 3 match the CLI exit codes and come with a
/// report; the others mean no report was produced.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PvpStatus {
    Ok = 0,
    CheckFailed = 1,
    InvalidInput = 2,
    BudgetExceeded = 3,
    NullArgument = 10,
    InvalidUtf8 = 11,
    UnknownCommand = 12,
    Panic = 13,
}

impl From<Status> for PvpStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Ok => PvpStatus::Ok,
            Status::CheckFailed => PvpStatus::CheckFailed,
            Status::InvalidInput => PvpStatus::InvalidInput,
            Status::BudgetExceeded => PvpStatus::BudgetExceeded,
        }
    }
}

/// Opaque run configuration plus the last error message.
pub struct PvpSession {
    options: RunOptions,
    last_error: Option<CString>,
}

impl PvpSession {
    fn fail(&mut self, status: PvpStatus, message: impl Into<String>) -> PvpStatus {
        let text = message.into().replace('\0', " ");
        self.last_error = CString::new(text).ok();
        status
    }
}

fn to_c_string(text: String) -> *mut c_char {
    CString::new(text.replace('\0', " "))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

fn panic_message(payload: &(dyn std::any::Any + Send)) -> String {
    payload
        .downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| payload.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown panic".into())
}

/// Creates a session with default limits, seed 0 and one worker.
#[no_mangle]
pub extern "C" fn pvp_session_new() -> *mut PvpSession {
    Box::into_raw(Box::new(PvpSession {
        options: RunOptions::default(),
        last_error: None,
    }))
}

/// # Safety
/// `session` must come from [`pvp_session_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pvp_session_free(session: *mut PvpSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// # Safety
/// `session` must be null or a live session.
unsafe fn configure(session: *mut PvpSession, set: impl FnOnce(&mut RunOptions)) -> PvpStatus {
    match session.as_mut() {
        Some(s) => {
            set(&mut s.options);
            PvpStatus::Ok
        }
        None => PvpStatus::NullArgument,
    }
}

/// # Safety
/// `session` must be null or a live session.
#[no_mangle]
pub unsafe extern "C" fn pvp_session_set_seed(session: *mut PvpSession, seed: u64) -> PvpStatus {
    configure(session, |o| o.seed = seed)
}

/// Worker threads for `selftest`; 0 uses one per core.
///
/// # Safety
/// `session` must be null or a live session.
#[no_mangle]
pub unsafe extern "C" fn pvp_session_set_jobs(session: *mut PvpSession, jobs: usize) -> PvpStatus {
    configure(session, |o| o.jobs = jobs)
}

/// # Safety
/// `session` must be null or a live session.
#[no_mangle]
pub unsafe extern "C" fn pvp_session_set_max_order(session: *mut PvpSession, max_order: usize) -> PvpStatus {
    configure(session, |o| o.limits.max_order = max_order)
}

/// # Safety
/// `session` must be null or a live session.
#[no_mangle]
pub unsafe extern "C" fn pvp_session_set_budget(session: *mut PvpSession, budget: usize) -> PvpStatus {
    configure(session, |o| o.limits.groebner_budget = budget)
}

/// # Safety
/// `session` must be null or a live session.
#[no_mangle]
pub unsafe extern "C" fn pvp_session_set_max_group_order(
    session: *mut PvpSession,
    max_group_order: usize,
) -> PvpStatus {
    configure(session, |o| o.limits.max_group_order = max_group_order)
}

/// Runs `command` (a CLI subcommand name such as `"prolong"`) on `input`.
///
/// `input` may be null for `selftest`. On statuses 0 to 3, `*report` receives
/// the JSON report, to be released with [`pvp_string_free`]; otherwise it is
/// set to null and [`pvp_last_error`] describes the failure.
///
/// # Safety
/// `session` must be a live session, `command` and a non-null `input` must be
/// NUL-terminated strings, and `report` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn pvp_run(
    session: *mut PvpSession,
    command: *const c_char,
    input: *const c_char,
    report: *mut *mut c_char,
) -> PvpStatus {
    let Some(session) = session.as_mut() else {
        return PvpStatus::NullArgument;
    };
    if report.is_null() {
        return session.fail(PvpStatus::NullArgument, "report pointer is null");
    }
    *report = ptr::null_mut();
    session.last_error = None;
    if command.is_null() {
        return session.fail(PvpStatus::NullArgument, "command is null");
    }
    let Ok(name) = CStr::from_ptr(command).to_str() else {
        return session.fail(PvpStatus::InvalidUtf8, "command is not UTF-8");
    };
    let command: Command = match name.parse() {
        Ok(c) => c,
        Err(e) => return session.fail(PvpStatus::UnknownCommand, format!("{e}")),
    };
    let input = if input.is_null() {
        None
    } else {
        match CStr::from_ptr(input).to_str() {
            Ok(text) => Some(text),
            Err(_) => return session.fail(PvpStatus::InvalidUtf8, "input is not UTF-8"),
        }
    };
    if input.is_none() && command.needs_input() {
        return session.fail(PvpStatus::NullArgument, format!("{name} needs an input document"));
    }

    let options = session.options;
    match catch_unwind(AssertUnwindSafe(|| run(command, input, &options))) {
        Ok(outcome) => {
            *report = to_c_string(outcome.to_json());
            PvpStatus::from(outcome.status)
        }
        Err(payload) => session.fail(PvpStatus::Panic, panic_message(payload.as_ref())),
    }
}

/// Message for the last failed call on `session`, or null. Valid until the
/// next call on the same session.
///
/// # Safety
/// `session` must be null or a live session.
#[no_mangle]
pub unsafe extern "C" fn pvp_last_error(session: *const PvpSession) -> *const c_char {
    session
        .as_ref()
        .and_then(|s| s.last_error.as_ref())
        .map_or(ptr::null(), |e| e.as_ptr())
}

/// # Safety
/// `text` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn pvp_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn pvp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
