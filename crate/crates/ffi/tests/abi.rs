use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use pvp::*;
use serde_json::Value;

struct Session(*mut PvpSession);

impl Session {
    fn new() -> Self {
        Session(pvp_session_new())
    }

    fn run(&self, command: &str, input: Option<&str>) -> (PvpStatus, Option<Value>) {
        let command = CString::new(command).unwrap();
        let input = input.map(|s| CString::new(s).unwrap());
        let mut report: *mut c_char = ptr::null_mut();
        let status = unsafe {
            pvp_run(
                self.0,
                command.as_ptr(),
                input.as_ref().map_or(ptr::null(), |s| s.as_ptr()),
                &mut report,
            )
        };
        if report.is_null() {
            return (status, None);
        }
        let text = unsafe { CStr::from_ptr(report) }.to_str().unwrap().to_owned();
        unsafe { pvp_string_free(report) };
        (status, Some(serde_json::from_str(&text).unwrap()))
    }

    fn last_error(&self) -> Option<String> {
        let e = unsafe { pvp_last_error(self.0) };
        (!e.is_null()).then(|| unsafe { CStr::from_ptr(e) }.to_string_lossy().into_owned())
    }
}

impl Drop for Session {
    fn drop(&mut self) {
        unsafe { pvp_session_free(self.0) };
    }
}

#[test]
fn runs_commands_and_maps_status() {
    let s = Session::new();
    let (status, report) = s.run("prolong", Some(r#"{"A": [["x"]], "n": 1}"#));
    assert_eq!(status, PvpStatus::Ok);
    assert_eq!(
        report.unwrap()["result"]["matrix"],
        serde_json::json!([["x", "0"], ["1", "x"]])
    );

    let (status, report) = s.run("check-invariance", Some(r#"{"order": 0, "m": 2, "generators": ["Y12", "Y21"], "jet": {"order": 0, "terms": [[["0", "1"], ["1", "0"]]]}}"#));
    assert_eq!(status, PvpStatus::CheckFailed);
    assert_eq!(report.unwrap()["result"]["invariant"], false);

    let (status, report) = s.run("components", Some("{broken"));
    assert_eq!(status, PvpStatus::InvalidInput);
    assert_eq!(report.unwrap()["status"], "invalid_input");
}

#[test]
fn session_limits_apply() {
    let s = Session::new();
    assert_eq!(unsafe { pvp_session_set_max_order(s.0, 1) }, PvpStatus::Ok);
    let (status, _) = s.run("prolong", Some(r#"{"A": [["x"]], "n": 2}"#));
    assert_eq!(status, PvpStatus::BudgetExceeded);

    unsafe {
        pvp_session_set_max_order(s.0, 4);
        pvp_session_set_seed(s.0, 5);
        pvp_session_set_jobs(s.0, 2);
    }
    let (status, first) = s.run("selftest", None);
    assert_eq!(status, PvpStatus::Ok);
    assert_eq!(first.as_ref().unwrap()["inputs_echo"]["seed"], 5);
    assert_eq!(s.run("selftest", None).1, first);
}

#[test]
fn argument_errors_leave_no_report() {
    let s = Session::new();
    let (status, report) = s.run("nonsense", Some("{}"));
    assert_eq!((status, report), (PvpStatus::UnknownCommand, None));
    assert!(s.last_error().unwrap().contains("nonsense"));

    let (status, _) = s.run("prolong", None);
    assert_eq!(status, PvpStatus::NullArgument);

    let bad = [0xffu8, 0];
    let mut report: *mut c_char = ptr::null_mut();
    let status = unsafe { pvp_run(s.0, bad.as_ptr().cast(), ptr::null(), &mut report) };
    assert_eq!(status, PvpStatus::InvalidUtf8);
    assert!(report.is_null());

    assert_eq!(
        unsafe { pvp_session_set_seed(ptr::null_mut(), 1) },
        PvpStatus::NullArgument
    );
    assert!(unsafe { pvp_last_error(ptr::null()) }.is_null());
    unsafe { pvp_string_free(ptr::null_mut()) };
}

#[test]
fn version_matches_package() {
    let v = unsafe { CStr::from_ptr(pvp_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

fn artifact_dir() -> PathBuf {
    // target/<profile>/deps/abi-<hash> -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib_dir = artifact_dir();
    assert!(
        lib_dir.join("libpvp.a").exists(),
        "static library missing in {}",
        lib_dir.display()
    );
    let out = tempfile::tempdir().unwrap();
    let exe = out.path().join("smoke");
    let compiled = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(lib_dir.join("libpvp.a"))
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler is available");
    assert!(compiled.success());
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), env!("CARGO_PKG_VERSION"));
}
