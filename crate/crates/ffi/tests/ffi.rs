use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use zerogen_ffi::*;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/fixtures").join(name)
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(zg_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn decide_codes() {
    let mut v = ZgVerdict::BudgetExceeded;
    for (h, want) in [
        (vec![2u64, 3, 7], ZgVerdict::Generating),
        (vec![9, 9, 9, 9, 10], ZgVerdict::NotGenerating),
        (vec![0, 5], ZgVerdict::NotGenerating),
    ] {
        let s = unsafe { zg_decide(h.as_ptr(), h.len(), 0, 0, &mut v) };
        assert_eq!(s, ZgStatus::Ok);
        assert_eq!(v, want, "{h:?}");
    }
    let h = [19u64; 6];
    let s = unsafe { zg_decide(h.as_ptr(), 6, 1000, 0, &mut v) };
    assert_eq!(s, ZgStatus::Ok);
    assert_eq!(v, ZgVerdict::BudgetExceeded);
}

#[test]
fn errors_are_reported() {
    let mut v = ZgVerdict::Generating;
    assert_eq!(unsafe { zg_decide(ptr::null(), 3, 0, 0, &mut v) }, ZgStatus::NullPointer);
    assert!(last_error().contains("entries"));
    let h = [1u64; 9];
    assert_eq!(unsafe { zg_decide(h.as_ptr(), 9, 0, 0, &mut v) }, ZgStatus::Domain);
    assert!(!last_error().is_empty());
    let mut c = ptr::null_mut();
    let bad = CString::new("{\"type\": \"const_witness\", \"n\": 2}").unwrap();
    assert_eq!(unsafe { zg_cert_from_json(bad.as_ptr(), &mut c) }, ZgStatus::Schema);
    assert!(last_error().contains("hbar") || last_error().contains("steps"), "{}", last_error());
    assert!(c.is_null());
    let mut w = 0.0;
    assert_eq!(unsafe { zg_lambert_w(-1.0, &mut w) }, ZgStatus::Domain);
}

#[test]
fn certificates_round_trip() {
    let path = CString::new(fixture("table_11.json").to_str().unwrap()).unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { zg_cert_load(path.as_ptr(), &mut c) }, ZgStatus::Ok, "{}", last_error());
    let (mut passed, mut gen) = (0, 0);
    assert_eq!(unsafe { zg_cert_verify(c, &mut passed, &mut gen) }, ZgStatus::Ok);
    assert_eq!((passed, gen), (1, 1));
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { zg_cert_to_json(c, &mut json) }, ZgStatus::Ok);
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { zg_cert_from_json(json, &mut again) }, ZgStatus::Ok);
    assert_eq!(unsafe { zg_cert_dim(again) }, 3);
    unsafe {
        zg_string_free(json);
        zg_cert_free(c);
        zg_cert_free(again);
    }

    let bad = CString::new(fixture("table_14.json").to_str().unwrap()).unwrap();
    assert_eq!(unsafe { zg_cert_load(bad.as_ptr(), &mut c) }, ZgStatus::Ok);
    assert_eq!(unsafe { zg_cert_verify(c, &mut passed, ptr::null_mut()) }, ZgStatus::Ok);
    assert_eq!(passed, 0);
    assert!(last_error().contains("FAIL"));
    unsafe { zg_cert_free(c) };
}

#[test]
fn certified_decision() {
    let h = [3u64, 3, 3];
    let mut v = ZgVerdict::Generating;
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { zg_decide_certified(h.as_ptr(), 3, 0, 0, &mut v, &mut c) }, ZgStatus::Ok);
    assert_eq!(v, ZgVerdict::NotGenerating);
    let (mut passed, mut gen) = (0, 1);
    assert_eq!(unsafe { zg_cert_verify(c, &mut passed, &mut gen) }, ZgStatus::Ok);
    assert_eq!((passed, gen), (1, 0));
    unsafe { zg_cert_free(c) };
}

#[test]
fn analysis_values() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { zg_varphi(9, &mut s) }, ZgStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(s) }.to_str().unwrap(), "364");
    unsafe { zg_string_free(s) };
    let (mut v, mut x) = (0.0, 0.0);
    assert_eq!(unsafe { zg_phi_real(8, &mut v, &mut x) }, ZgStatus::Ok);
    assert_eq!(v.floor() as u64 + 1, 122);
    assert!(x > 3.0 && x < 3.1);
}

/// Compile the C smoke test against the generated header and the static library.
#[test]
fn c_header_compiles_and_links() {
    let Ok(cc) = std::env::var("CC").or_else(|_| which("cc")) else {
        eprintln!("no C compiler found; skipped");
        return;
    };
    let here = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libzerogen_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipped", lib.display());
        return;
    }
    let out = std::env::temp_dir().join(format!("zerogen_smoke_{}", std::process::id()));
    let status = Command::new(&cc)
        .arg(here.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(here.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&out).arg(fixture("table_11.json")).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}

fn which(name: &str) -> Result<String, ()> {
    let out = Command::new("sh").args(["-c", &format!("command -v {name}")]).output().map_err(|_| ())?;
    if out.status.success() {
        Ok(String::from_utf8_lossy(&out.stdout).trim().to_string())
    } else {
        Err(())
    }
}
