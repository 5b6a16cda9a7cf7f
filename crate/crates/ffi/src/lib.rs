//! C ABI over the neuroalign library.
//!
//! Objects cross the boundary as opaque handles created by `*_new`/`*_fit`/
//! `*_load` and released by the matching `*_free`. Every fallible call
//! returns an `NaStatus`; on failure, `na_last_error` gives a message for
//! the calling thread. Matrices are row-major `double` buffers.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use nalgebra::DMatrix;
use neuroalign::contrastive::{ContrastiveConfig, TrainerState};
use neuroalign::io::{read_checkpoint, write_checkpoint};
use neuroalign::retrieval::SimilarityMatrix;
use neuroalign::ridge::{fit_banded, BandedRidgeModel, FeatureBands};
use neuroalign::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Config = 3,
    Shape = 4,
    Argument = 5,
    Numeric = 6,
    Singular = 7,
    DegenerateVoxel = 8,
    UndefinedStatistic = 9,
    Parse = 10,
    Io = 11,
    BufferTooSmall = 12,
    Panic = 13,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NaModality {
    Image = 0,
    Text = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NaLoss {
    pub total: f64,
    pub i2t: f64,
    pub t2i: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NaRetrievalMetrics {
    pub recall_at_1: f64,
    pub recall_at_5: f64,
    pub recall_at_10: f64,
    pub medr: f64,
}

/// Opaque contrastive trainer.
pub struct NaTrainer {
    state: TrainerState,
}

/// Opaque fitted banded-ridge model.
pub struct NaRidgeModel {
    model: BandedRidgeModel,
    band_dims: Vec<usize>,
}

struct Failure(NaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Shape(_) => NaStatus::Shape,
            Error::Argument(_) => NaStatus::Argument,
            Error::Numeric(_) => NaStatus::Numeric,
            Error::Singular(_) => NaStatus::Singular,
            Error::DegenerateVoxel { .. } => NaStatus::DegenerateVoxel,
            Error::UndefinedStatistic(_) => NaStatus::UndefinedStatistic,
            Error::Config(_) => NaStatus::Config,
            Error::Parse { .. } => NaStatus::Parse,
            Error::Io { .. } => NaStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

type FfiResult<T> = Result<T, Failure>;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> FfiResult<()>) -> NaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NaStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            NaStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(NaStatus::NullPointer, format!("{what} is null"))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> FfiResult<&'a [T]> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn slice_mut<'a, T>(p: *mut T, len: usize, what: &str) -> FfiResult<&'a mut [T]> {
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

unsafe fn string<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(NaStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn handle_mut<'a, T>(p: *mut T, what: &str) -> FfiResult<&'a mut T> {
    p.as_mut().ok_or_else(|| null(what))
}

fn checked_len(a: usize, b: usize) -> FfiResult<usize> {
    a.checked_mul(b)
        .ok_or_else(|| Failure(NaStatus::Argument, "buffer size overflows".into()))
}

fn rows(data: &[f64], n: usize, dim: usize) -> Vec<Vec<f64>> {
    if dim == 0 {
        return vec![Vec::new(); n];
    }
    data.chunks_exact(dim).map(<[f64]>::to_vec).collect()
}

fn store<T>(out: *mut *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(null("out"));
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn na_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn na_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a trainer from a JSON contrastive config. A null config uses
/// the desk preset.
///
/// # Safety
/// `config_json` is null or a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn na_trainer_new(
    config_json: *const c_char,
    image_dim: usize,
    text_dim: usize,
    out: *mut *mut NaTrainer,
) -> NaStatus {
    guard(|| {
        let config = if config_json.is_null() {
            ContrastiveConfig::desk()
        } else {
            serde_json::from_str(string(config_json, "config_json")?)
                .map_err(|e| Failure(NaStatus::Config, e.to_string()))?
        };
        let state = TrainerState::new(config, image_dim, text_dim)?;
        store(out, NaTrainer { state })
    })
}

/// # Safety
/// `trainer` is null or came from this library and is not used again.
#[no_mangle]
pub unsafe extern "C" fn na_trainer_free(trainer: *mut NaTrainer) {
    if !trainer.is_null() {
        drop(Box::from_raw(trainer));
    }
}

/// One optimization step on a batch of `batch` pairs. `images` holds
/// `batch x image_dim` values, `texts` `batch x text_dim`.
///
/// # Safety
/// Buffers hold the stated number of values; `loss` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn na_trainer_step(
    trainer: *mut NaTrainer,
    images: *const f64,
    texts: *const f64,
    batch: usize,
    loss: *mut NaLoss,
) -> NaStatus {
    guard(|| {
        let t = handle_mut(trainer, "trainer")?;
        let (di, dt) = (t.state.image_dim(), t.state.text_dim());
        let im = slice(images, checked_len(batch, di)?, "images")?;
        let tx = slice(texts, checked_len(batch, dt)?, "texts")?;
        let r = t.state.train_step(&rows(im, batch, di), &rows(tx, batch, dt))?;
        if let Some(l) = loss.as_mut() {
            *l = NaLoss {
                total: r.loss.total,
                i2t: r.loss.i2t,
                t2i: r.loss.t2i,
            };
        }
        Ok(())
    })
}

/// # Safety
/// `trainer` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn na_trainer_step_count(trainer: *const NaTrainer, out: *mut u64) -> NaStatus {
    guard(|| {
        let t = handle(trainer, "trainer")?;
        *handle_mut(out, "out")? = t.state.step;
        Ok(())
    })
}

/// # Safety
/// `trainer` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn na_trainer_embed_dim(trainer: *const NaTrainer, out: *mut usize) -> NaStatus {
    guard(|| {
        let t = handle(trainer, "trainer")?;
        *handle_mut(out, "out")? = t.state.config.embed_dim;
        Ok(())
    })
}

/// Embeds `n` inputs with the online tower of `modality`, writing
/// `n x embed_dim` unit-norm rows to `out` (capacity `out_len`).
///
/// # Safety
/// `inputs` holds `n x input_dim` values; `out` holds `out_len` values.
#[no_mangle]
pub unsafe extern "C" fn na_trainer_embed(
    trainer: *const NaTrainer,
    modality: NaModality,
    inputs: *const f64,
    n: usize,
    out: *mut f64,
    out_len: usize,
) -> NaStatus {
    guard(|| {
        let t = handle(trainer, "trainer")?;
        let dim = match modality {
            NaModality::Image => t.state.image_dim(),
            NaModality::Text => t.state.text_dim(),
        };
        let need = checked_len(n, t.state.config.embed_dim)?;
        if out_len < need {
            return Err(Failure(
                NaStatus::BufferTooSmall,
                format!("output needs {need} values, capacity is {out_len}"),
            ));
        }
        let x = rows(slice(inputs, checked_len(n, dim)?, "inputs")?, n, dim);
        let emb = match modality {
            NaModality::Image => t.state.embed_images(&x)?,
            NaModality::Text => t.state.embed_texts(&x)?,
        };
        let dst = slice_mut(out, need, "out")?;
        for (chunk, e) in dst.chunks_exact_mut(t.state.config.embed_dim.max(1)).zip(&emb) {
            chunk.copy_from_slice(e.as_slice());
        }
        Ok(())
    })
}

/// # Safety
/// `trainer` is a live handle; `path` is a NUL-terminated UTF-8 string.
#[no_mangle]
pub unsafe extern "C" fn na_trainer_save(trainer: *const NaTrainer, path: *const c_char) -> NaStatus {
    guard(|| {
        let t = handle(trainer, "trainer")?;
        write_checkpoint(Path::new(string(path, "path")?), &t.state)?;
        Ok(())
    })
}

/// # Safety
/// `path` is a NUL-terminated UTF-8 string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn na_trainer_load(path: *const c_char, out: *mut *mut NaTrainer) -> NaStatus {
    guard(|| {
        let state = read_checkpoint(Path::new(string(path, "path")?))?;
        store(out, NaTrainer { state })
    })
}

/// Fits banded ridge with one penalty per band. `x` is `n_rows x sum(band_dims)`
/// with bands in column order, `y` is `n_rows x n_voxels`.
///
/// # Safety
/// Buffers hold the stated number of values; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn na_ridge_fit(
    x: *const f64,
    n_rows: usize,
    band_dims: *const usize,
    n_bands: usize,
    y: *const f64,
    n_voxels: usize,
    lambdas: *const f64,
    out: *mut *mut NaRidgeModel,
) -> NaStatus {
    guard(|| {
        let dims = slice(band_dims, n_bands, "band_dims")?.to_vec();
        let total = dims
            .iter()
            .try_fold(0usize, |a, &d| a.checked_add(d))
            .ok_or_else(|| Failure(NaStatus::Argument, "band dims overflow".into()))?;
        let xs = DMatrix::from_row_slice(n_rows, total, slice(x, checked_len(n_rows, total)?, "x")?);
        let ys = DMatrix::from_row_slice(n_rows, n_voxels, slice(y, checked_len(n_rows, n_voxels)?, "y")?);
        let bands = split_bands(&xs, &dims)?;
        let model = fit_banded(&bands, &ys, slice(lambdas, n_bands, "lambdas")?)?;
        store(out, NaRidgeModel { model, band_dims: dims })
    })
}

fn split_bands(x: &DMatrix<f64>, dims: &[usize]) -> FfiResult<FeatureBands> {
    let mut start = 0;
    let mut bands = Vec::with_capacity(dims.len());
    for &d in dims {
        bands.push(x.columns(start, d).into_owned());
        start += d;
    }
    Ok(FeatureBands::new(bands)?)
}

/// Joint prediction, `n_rows x n_voxels` into `out` (capacity `out_len`).
///
/// # Safety
/// `x` holds `n_rows x sum(band_dims)` values; `out` holds `out_len`.
#[no_mangle]
pub unsafe extern "C" fn na_ridge_predict(
    model: *const NaRidgeModel,
    x: *const f64,
    n_rows: usize,
    out: *mut f64,
    out_len: usize,
) -> NaStatus {
    guard(|| {
        let m = handle(model, "model")?;
        let total: usize = m.band_dims.iter().sum();
        let n_voxels = m.model.n_voxels();
        let need = checked_len(n_rows, n_voxels)?;
        if out_len < need {
            return Err(Failure(
                NaStatus::BufferTooSmall,
                format!("output needs {need} values, capacity is {out_len}"),
            ));
        }
        let xs = DMatrix::from_row_slice(n_rows, total, slice(x, checked_len(n_rows, total)?, "x")?);
        let pred = m.model.predict(&split_bands(&xs, &m.band_dims)?)?;
        let dst = slice_mut(out, need, "out")?;
        for i in 0..n_rows {
            for v in 0..n_voxels {
                dst[i * n_voxels + v] = pred.joint[(i, v)];
            }
        }
        Ok(())
    })
}

/// # Safety
/// `model` is null or came from this library and is not used again.
#[no_mangle]
pub unsafe extern "C" fn na_ridge_free(model: *mut NaRidgeModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Recall@{1,5,10} and median rank of a row-major score matrix with one
/// true candidate per query. Needs at least 10 candidates.
///
/// # Safety
/// `scores` holds `n_queries x n_candidates` values, `truth` `n_queries`.
#[no_mangle]
pub unsafe extern "C" fn na_retrieval_metrics(
    scores: *const f64,
    n_queries: usize,
    n_candidates: usize,
    truth: *const usize,
    out: *mut NaRetrievalMetrics,
) -> NaStatus {
    guard(|| {
        let s = slice(scores, checked_len(n_queries, n_candidates)?, "scores")?;
        let truth = slice(truth, n_queries, "truth")?;
        let m = SimilarityMatrix::with_single_truth(DMatrix::from_row_slice(n_queries, n_candidates, s), truth)?;
        let r = m.report()?;
        *handle_mut(out, "out")? = NaRetrievalMetrics {
            recall_at_1: r.recall_at_1,
            recall_at_5: r.recall_at_5,
            recall_at_10: r.recall_at_10,
            medr: r.medr,
        };
        Ok(())
    })
}
