use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use qsuff_ffi::*;

const RHO: &str = r#"{"kind":"state","dim":2,"matrix":[[[0.75,0],[0,0]],[[0,0],[0.25,0]]]}"#;
const SIGMA: &str = r#"{"kind":"state","dim":2,"matrix":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]}"#;
const IDENTITY: &str =
    r#"{"kind":"channel","dim_in":2,"dim_out":2,"kraus":[[[[1,0],[0,0]],[[0,0],[1,0]]]]}"#;
const DEPOLARIZE: &str = r#"{"kind":"channel","dim_in":2,"dim_out":2,"choi":[
  [[0.75,0],[0,0],[0,0],[0.5,0]],
  [[0,0],[0.25,0],[0,0],[0,0]],
  [[0,0],[0,0],[0.25,0],[0,0]],
  [[0.5,0],[0,0],[0,0],[0.75,0]]]}"#;

fn state(json: &str) -> *mut QsuffState {
    let c = CString::new(json).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { qsuff_state_from_json(c.as_ptr(), &mut out) },
        QsuffStatus::Ok
    );
    out
}

fn channel(json: &str) -> *mut QsuffChannel {
    let c = CString::new(json).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { qsuff_channel_from_json(c.as_ptr(), &mut out) },
        QsuffStatus::Ok
    );
    out
}

fn last_error() -> String {
    let p = qsuff_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn relative_entropy_of_diagonal_pair() {
    let (rho, sigma) = (state(RHO), state(SIGMA));
    let oracle = 0.75 * 1.5f64.ln() + 0.25 * 0.5f64.ln();
    let mut d = 0.0;
    unsafe {
        assert_eq!(qsuff_relative_entropy(rho, sigma, &mut d), QsuffStatus::Ok);
        assert!((d - oracle).abs() < 1e-12);
        assert_eq!(
            qsuff_relative_entropy_integral(rho, sigma, 1e-8, 200_000, &mut d),
            QsuffStatus::Ok
        );
        assert!((d - oracle).abs() < 1e-6);
        assert_eq!(
            qsuff_relative_entropy(sigma, sigma, &mut d),
            QsuffStatus::Ok
        );
        assert!(d.abs() < 1e-14);
        assert_eq!(qsuff_state_dim(rho), 2);
        qsuff_state_free(rho);
        qsuff_state_free(sigma);
    }
}

#[test]
fn raw_array_constructor_and_json_round_trip() {
    let re = [0.5, 0.2, 0.2, 0.5];
    let im = [0.0, 0.1, -0.1, 0.0];
    let mut s = ptr::null_mut();
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(
            qsuff_state_new(2, re.as_ptr(), im.as_ptr(), &mut s),
            QsuffStatus::Ok
        );
        assert_eq!(qsuff_state_to_json(s, &mut json), QsuffStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        assert!(text.contains("\"kind\": \"state\""));
        let again = state(&text);
        let mut d = 1.0;
        assert_eq!(qsuff_relative_entropy(s, again, &mut d), QsuffStatus::Ok);
        assert!(d.abs() < 1e-12);
        qsuff_string_free(json);
        qsuff_state_free(s);
        qsuff_state_free(again);
    }
}

#[test]
fn errors_set_status_and_message() {
    let mut out = ptr::null_mut();
    let bad =
        CString::new(r#"{"kind":"state","dim":2,"matrix":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#).unwrap();
    unsafe {
        assert_eq!(
            qsuff_state_from_json(bad.as_ptr(), &mut out),
            QsuffStatus::Validation
        );
        assert!(last_error().contains("state"));
        let garbage = CString::new("{").unwrap();
        assert_eq!(
            qsuff_state_from_json(garbage.as_ptr(), &mut out),
            QsuffStatus::Parse
        );
        assert_eq!(
            qsuff_state_from_json(ptr::null(), &mut out),
            QsuffStatus::NullPointer
        );
        assert!(out.is_null());

        let (rho, sigma) = (state(RHO), state(SIGMA));
        let mut pe = 0.0;
        assert_eq!(
            qsuff_optimal_bayes_error(rho, sigma, 2.0, &mut pe),
            QsuffStatus::Validation
        );
        assert_eq!(
            qsuff_optimal_bayes_error(rho, sigma, 0.5, ptr::null_mut()),
            QsuffStatus::NullPointer
        );
        assert_eq!(
            qsuff_optimal_bayes_error(rho, sigma, 0.5, &mut pe),
            QsuffStatus::Ok
        );
        assert!(qsuff_last_error().is_null());
        assert!((pe - 0.5 * (1.0 - 0.5 * 0.5)).abs() < 1e-12);
        let mut d = 0.0;
        assert_eq!(
            qsuff_relative_entropy_integral(rho, sigma, 0.0, 1000, &mut d),
            QsuffStatus::Validation
        );
        qsuff_state_free(rho);
        qsuff_state_free(sigma);
    }
}

#[test]
fn recovery_channels_return_sigma() {
    let (rho, sigma, phi) = (state(RHO), state(SIGMA), channel(DEPOLARIZE));
    unsafe {
        let mut image = ptr::null_mut();
        assert_eq!(qsuff_apply_channel(phi, sigma, &mut image), QsuffStatus::Ok);
        for make in [
            |phi, sigma, out| qsuff_petz_recovery(phi, sigma, 0.0, out),
            |phi, sigma, out| qsuff_petz_recovery(phi, sigma, 0.3, out),
            |phi, sigma, out| qsuff_universal_recovery(phi, sigma, 4.0, 801, out),
        ] {
            let mut rec = ptr::null_mut();
            assert_eq!(make(phi, sigma, &mut rec), QsuffStatus::Ok);
            let mut back = ptr::null_mut();
            assert_eq!(qsuff_apply_channel(rec, image, &mut back), QsuffStatus::Ok);
            let mut d = 1.0;
            assert_eq!(qsuff_relative_entropy(back, sigma, &mut d), QsuffStatus::Ok);
            assert!(d.abs() < 1e-12);
            qsuff_state_free(back);
            qsuff_channel_free(rec);
        }
        let mut json = ptr::null_mut();
        assert_eq!(
            qsuff_universal_recovery_json(phi, sigma, 4.0, 802, &mut json),
            QsuffStatus::Validation
        );
        assert_eq!(
            qsuff_universal_recovery_json(phi, sigma, 4.0, 801, &mut json),
            QsuffStatus::Ok
        );
        assert!(CStr::from_ptr(json).to_str().unwrap().contains("\"choi\""));
        qsuff_string_free(json);

        let mut verdict = QsuffVerdict::Sufficient;
        let mut worst = 0.0;
        assert_eq!(
            qsuff_sufficiency(rho, sigma, phi, 1e-6, &mut verdict, &mut worst),
            QsuffStatus::Ok
        );
        assert_eq!(verdict, QsuffVerdict::NotSufficient);
        assert!(worst > 1e-3);
        let id = channel(IDENTITY);
        assert_eq!(
            qsuff_sufficiency(rho, sigma, id, 1e-6, &mut verdict, &mut worst),
            QsuffStatus::Ok
        );
        assert_eq!(verdict, QsuffVerdict::Sufficient);
        assert!(worst < 1e-9);

        let mut text = ptr::null_mut();
        assert_eq!(qsuff_channel_to_json(id, &mut text), QsuffStatus::Ok);
        let round = channel(CStr::from_ptr(text).to_str().unwrap());
        qsuff_string_free(text);
        qsuff_channel_free(round);
        qsuff_channel_free(id);
        qsuff_state_free(image);
        qsuff_channel_free(phi);
        qsuff_state_free(rho);
        qsuff_state_free(sigma);
    }
}

#[test]
fn version_is_a_c_string() {
    let v = unsafe { CStr::from_ptr(qsuff_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn generated_header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/qsuff.h");
    let text = std::fs::read_to_string(&header).expect("header generated by build script");
    for name in [
        "qsuff_state_from_json",
        "qsuff_universal_recovery",
        "qsuff_last_error",
        "typedef struct QsuffState QsuffState",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", "-std=c99", "-Wall", "-Werror"])
        .arg(&header)
        .status()
    else {
        return;
    };
    assert!(status.success());
}
