use std::ffi::{CStr, CString};
use std::ptr;

use neuroalign_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(na_last_error()).to_string_lossy().into_owned() }
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(na_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn trainer_lifecycle() {
    let cfg = CString::new(
        r#"{"m":0.99,"tau":0.07,"batch_size":4,"queue_capacity":8,"embed_dim":3,"hidden_dims":[5],
            "learning_rate":0.001,"seed":7}"#,
    )
    .unwrap();
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(na_trainer_new(cfg.as_ptr(), 2, 3, &mut t), NaStatus::Ok);
        let images: Vec<f64> = (0..8).map(|i| (i as f64 * 0.7).sin()).collect();
        let texts: Vec<f64> = (0..12).map(|i| (i as f64 * 0.3).cos()).collect();
        let mut loss = NaLoss::default();
        for _ in 0..3 {
            assert_eq!(
                na_trainer_step(t, images.as_ptr(), texts.as_ptr(), 4, &mut loss),
                NaStatus::Ok
            );
        }
        assert!(loss.total > 0.0);
        assert_eq!(loss.total, loss.i2t + loss.t2i);
        let mut steps = 0;
        assert_eq!(na_trainer_step_count(t, &mut steps), NaStatus::Ok);
        assert_eq!(steps, 3);

        let mut emb = vec![0.0; 12];
        assert_eq!(
            na_trainer_embed(t, NaModality::Image, images.as_ptr(), 4, emb.as_mut_ptr(), 12),
            NaStatus::Ok
        );
        for row in emb.chunks(3) {
            assert!((row.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-12);
        }
        assert_eq!(
            na_trainer_embed(t, NaModality::Image, images.as_ptr(), 4, emb.as_mut_ptr(), 11),
            NaStatus::BufferTooSmall
        );

        let dir = tempfile::tempdir().unwrap();
        let path = CString::new(dir.path().join("ck.json").to_str().unwrap()).unwrap();
        assert_eq!(na_trainer_save(t, path.as_ptr()), NaStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(na_trainer_load(path.as_ptr(), &mut back), NaStatus::Ok);
        let mut again = vec![0.0; 12];
        na_trainer_embed(back, NaModality::Image, images.as_ptr(), 4, again.as_mut_ptr(), 12);
        assert_eq!(emb, again);
        na_trainer_free(back);
        na_trainer_free(t);
    }
}

#[test]
fn error_codes_and_messages() {
    let mut t = ptr::null_mut();
    unsafe {
        let bad = CString::new(r#"{"tau": 1}"#).unwrap();
        assert_eq!(na_trainer_new(bad.as_ptr(), 2, 2, &mut t), NaStatus::Config);
        assert!(t.is_null());
        assert_eq!(na_trainer_new(ptr::null(), 0, 2, &mut t), NaStatus::Shape);
        assert!(!last_error().is_empty());
        assert_eq!(
            na_trainer_new(ptr::null(), 2, 2, ptr::null_mut()),
            NaStatus::NullPointer
        );
        assert_eq!(
            na_trainer_step(ptr::null_mut(), ptr::null(), ptr::null(), 0, ptr::null_mut()),
            NaStatus::NullPointer
        );
        na_trainer_free(ptr::null_mut());
        na_ridge_free(ptr::null_mut());
    }
}

#[test]
fn ridge_fit_and_predict() {
    // x = [I_2 | I_2] stacked twice; y = first column of x
    let x = [
        1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 1.0,
    ];
    let y = [1.0, 0.0, 1.0, 0.0];
    let dims = [2usize, 2];
    let lambdas = [1.0, 1.0];
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(
            na_ridge_fit(x.as_ptr(), 4, dims.as_ptr(), 2, y.as_ptr(), 1, lambdas.as_ptr(), &mut m),
            NaStatus::Ok
        );
        let mut pred = [0.0; 4];
        assert_eq!(na_ridge_predict(m, x.as_ptr(), 4, pred.as_mut_ptr(), 4), NaStatus::Ok);
        // Gram per coordinate is 2 per band copy: w = 2 / (4 + 1) each, prediction 2w
        assert!((pred[0] - 0.8).abs() < 1e-12 && pred[1].abs() < 1e-12);
        na_ridge_free(m);
        let zero = [0.0, 1.0];
        assert_eq!(
            na_ridge_fit(x.as_ptr(), 4, dims.as_ptr(), 2, y.as_ptr(), 1, zero.as_ptr(), &mut m),
            NaStatus::Argument
        );
    }
}

#[test]
fn retrieval_metrics_identity() {
    let n = 12;
    let scores: Vec<f64> = (0..n * n).map(|k| if k / n == k % n { 1.0 } else { 0.0 }).collect();
    let truth: Vec<usize> = (0..n).collect();
    let mut out = NaRetrievalMetrics::default();
    unsafe {
        assert_eq!(
            na_retrieval_metrics(scores.as_ptr(), n, n, truth.as_ptr(), &mut out),
            NaStatus::Ok
        );
        assert_eq!((out.recall_at_1, out.medr), (1.0, 1.0));
        assert_eq!(
            na_retrieval_metrics(scores.as_ptr(), 2, 6, truth.as_ptr(), &mut out),
            NaStatus::Argument
        );
    }
}
