use std::ffi::{CStr, CString};
use std::ptr;

use jcm_negativity_ffi::*;

fn last_error() -> String {
    let msg = jcm_last_error_message();
    assert!(!msg.is_null());
    unsafe { CStr::from_ptr(msg) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn model_lifecycle() {
    unsafe {
        let mut model = ptr::null_mut();
        let status = jcm_model_new(1.0, 1.0, 0.0, 0.5, 5f64.sqrt(), 0.0, 1e-12, 5, &mut model);
        assert_eq!(status, JcmStatus::JcmOk);
        assert!(!model.is_null());
        assert_eq!(jcm_model_n_max(model), 32);

        let mut rec = JcmMeasureRecord::default();
        assert_eq!(jcm_model_measure(model, 0.0, &mut rec), JcmStatus::JcmOk);
        assert!(rec.negativity.abs() < 1e-10 && rec.mutual_entropy.abs() < 1e-10);
        assert_eq!(jcm_model_measure(model, 4.0, &mut rec), JcmStatus::JcmOk);
        assert!(rec.negativity > 0.0 && rec.joint_rank <= 2);

        let dim = 2 * (jcm_model_n_max(model) + 1);
        let mut buf = vec![0.0; 2 * dim * dim];
        assert_eq!(
            jcm_model_joint_density(model, 4.0, buf.as_mut_ptr(), buf.len()),
            JcmStatus::JcmOk
        );
        let trace: f64 = (0..dim).map(|i| buf[2 * (i * dim + i)]).sum();
        assert!((trace - 1.0).abs() < 1e-10);
        assert_eq!(
            jcm_model_joint_density(model, 4.0, buf.as_mut_ptr(), buf.len() - 1),
            JcmStatus::JcmErrBufferTooSmall
        );
        jcm_model_free(model);
    }
}

#[test]
fn preset_model_matches_explicit_parameters() {
    unsafe {
        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        assert_eq!(
            jcm_model_from_preset(JcmPreset::JcmPresetFig3, &mut a),
            JcmStatus::JcmOk
        );
        assert_eq!(
            jcm_model_new(1.0, 1.0, 5.0, 0.5, 5f64.sqrt(), 0.0, 1e-12, 5, &mut b),
            JcmStatus::JcmOk
        );
        let (mut ra, mut rb) = (JcmMeasureRecord::default(), JcmMeasureRecord::default());
        jcm_model_measure(a, 7.5, &mut ra);
        jcm_model_measure(b, 7.5, &mut rb);
        assert_eq!(ra, rb);
        jcm_model_free(a);
        jcm_model_free(b);
    }
}

#[test]
fn invalid_parameters_report_codes_and_messages() {
    unsafe {
        let mut model = ptr::null_mut();
        let status = jcm_model_new(1.0, 1.0, 0.0, 1.5, 1.0, 0.0, 1e-12, 5, &mut model);
        assert_eq!(status, JcmStatus::JcmErrInvalidParameter);
        assert!(model.is_null());
        assert!(last_error().contains("atom_ground_weight"));

        let status = jcm_model_new(1.0, 1.0, 0.0, 0.5, 1.0, 0.0, 1e-12, 5, ptr::null_mut());
        assert_eq!(status, JcmStatus::JcmErrNullPointer);

        let mut rec = JcmMeasureRecord::default();
        assert_eq!(
            jcm_model_measure(ptr::null(), 1.0, &mut rec),
            JcmStatus::JcmErrNullPointer
        );

        let mut model = ptr::null_mut();
        jcm_model_from_preset(JcmPreset::JcmPresetFig1, &mut model);
        assert_eq!(
            jcm_model_measure(model, -1.0, &mut rec),
            JcmStatus::JcmErrInvalidParameter
        );
        assert_eq!(
            jcm_model_measure(model, 1.0, ptr::null_mut()),
            JcmStatus::JcmErrNullPointer
        );
        jcm_model_free(model);

        // freeing null is a no-op
        jcm_model_free(ptr::null_mut());
        jcm_sweep_free(ptr::null_mut());
        assert_eq!(jcm_model_n_max(ptr::null()), 0);
        assert_eq!(jcm_sweep_len(ptr::null()), 0);
    }
}

#[test]
fn sweep_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    unsafe {
        let mut sweep = ptr::null_mut();
        let status = jcm_sweep_run_preset(JcmPreset::JcmPresetFig2, 5.0, 51, true, &mut sweep);
        assert_eq!(status, JcmStatus::JcmOk, "{}", last_error());
        assert_eq!(jcm_sweep_len(sweep), 51);

        let mut last = JcmMeasureRecord::default();
        assert_eq!(jcm_sweep_get(sweep, 50, &mut last), JcmStatus::JcmOk);
        assert_eq!(last.t, 5.0);
        assert_eq!(
            jcm_sweep_get(sweep, 51, &mut last),
            JcmStatus::JcmErrInvalidInput
        );

        let path = CString::new(dir.path().join("s.csv").to_str().unwrap()).unwrap();
        assert_eq!(jcm_sweep_write_csv(sweep, path.as_ptr()), JcmStatus::JcmOk);
        let text = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
        assert_eq!(text.lines().count(), 52);

        let bad = CString::new(dir.path().join("missing/s.csv").to_str().unwrap()).unwrap();
        assert_eq!(
            jcm_sweep_write_csv(sweep, bad.as_ptr()),
            JcmStatus::JcmErrIo
        );
        jcm_sweep_free(sweep);

        let mut sweep = ptr::null_mut();
        assert_eq!(
            jcm_sweep_run_preset(JcmPreset::JcmPresetFig2, 5.0, 1, false, &mut sweep),
            JcmStatus::JcmErrConfig
        );
        assert!(sweep.is_null());
    }
}

#[test]
fn sweep_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "preset = fig4\nt-end = 2\nn-points = 11\n").unwrap();
    unsafe {
        let path = CString::new(cfg.to_str().unwrap()).unwrap();
        let mut sweep = ptr::null_mut();
        assert_eq!(
            jcm_sweep_run_config_file(path.as_ptr(), &mut sweep),
            JcmStatus::JcmOk
        );
        assert_eq!(jcm_sweep_len(sweep), 11);
        jcm_sweep_free(sweep);

        let missing = CString::new(dir.path().join("nope.cfg").to_str().unwrap()).unwrap();
        assert_eq!(
            jcm_sweep_run_config_file(missing.as_ptr(), &mut sweep),
            JcmStatus::JcmErrIo
        );
        assert_eq!(
            jcm_sweep_run_config_file(ptr::null(), &mut sweep),
            JcmStatus::JcmErrNullPointer
        );
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/include/jcm_negativity.h"
    ))
    .unwrap();
    for name in [
        "JCM_NEGATIVITY_H",
        "typedef struct JcmModel JcmModel",
        "typedef struct JcmSweep JcmSweep",
        "jcm_last_error_message",
        "jcm_model_new",
        "jcm_model_from_preset",
        "jcm_model_measure",
        "jcm_model_joint_density",
        "jcm_model_free",
        "jcm_sweep_run_preset",
        "jcm_sweep_run_config_file",
        "jcm_sweep_get",
        "jcm_sweep_write_csv",
        "jcm_sweep_free",
        "JCM_ERR_ORACLE_MISMATCH = 5",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
