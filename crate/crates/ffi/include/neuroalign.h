#ifndef NEUROALIGN_H
#define NEUROALIGN_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NaModality {
  NA_MODALITY_IMAGE = 0,
  NA_MODALITY_TEXT = 1,
} NaModality;

typedef enum NaStatus {
  NA_STATUS_OK = 0,
  NA_STATUS_NULL_POINTER = 1,
  NA_STATUS_INVALID_UTF8 = 2,
  NA_STATUS_CONFIG = 3,
  NA_STATUS_SHAPE = 4,
  NA_STATUS_ARGUMENT = 5,
  NA_STATUS_NUMERIC = 6,
  NA_STATUS_SINGULAR = 7,
  NA_STATUS_DEGENERATE_VOXEL = 8,
  NA_STATUS_UNDEFINED_STATISTIC = 9,
  NA_STATUS_PARSE = 10,
  NA_STATUS_IO = 11,
  NA_STATUS_BUFFER_TOO_SMALL = 12,
  NA_STATUS_PANIC = 13,
} NaStatus;

/**
 * Opaque fitted banded-ridge model.
 */
typedef struct NaRidgeModel NaRidgeModel;

/**
 * Opaque contrastive trainer.
 */
typedef struct NaTrainer NaTrainer;

typedef struct NaLoss {
  double total;
  double i2t;
  double t2i;
} NaLoss;

typedef struct NaRetrievalMetrics {
  double recall_at_1;
  double recall_at_5;
  double recall_at_10;
  double medr;
} NaRetrievalMetrics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *na_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *na_version(void);

/**
 * Creates a trainer from a JSON contrastive config. A null config uses
 * the desk preset.
 *
 * # Safety
 * `config_json` is null or a NUL-terminated string; `out` is writable.
 */
enum NaStatus na_trainer_new(const char *config_json,
                             size_t image_dim,
                             size_t text_dim,
                             struct NaTrainer **out);

/**
 * # Safety
 * `trainer` is null or came from this library and is not used again.
 */
void na_trainer_free(struct NaTrainer *trainer);

/**
 * One optimization step on a batch of `batch` pairs. `images` holds
 * `batch x image_dim` values, `texts` `batch x text_dim`.
 *
 * # Safety
 * Buffers hold the stated number of values; `loss` is null or writable.
 */
enum NaStatus na_trainer_step(struct NaTrainer *trainer,
                              const double *images,
                              const double *texts,
                              size_t batch,
                              struct NaLoss *loss);

/**
 * # Safety
 * `trainer` is a live handle; `out` is writable.
 */
enum NaStatus na_trainer_step_count(const struct NaTrainer *trainer, uint64_t *out);

/**
 * # Safety
 * `trainer` is a live handle; `out` is writable.
 */
enum NaStatus na_trainer_embed_dim(const struct NaTrainer *trainer, size_t *out);

/**
 * Embeds `n` inputs with the online tower of `modality`, writing
 * `n x embed_dim` unit-norm rows to `out` (capacity `out_len`).
 *
 * # Safety
 * `inputs` holds `n x input_dim` values; `out` holds `out_len` values.
 */
enum NaStatus na_trainer_embed(const struct NaTrainer *trainer,
                               enum NaModality modality,
                               const double *inputs,
                               size_t n,
                               double *out,
                               size_t out_len);

/**
 * # Safety
 * `trainer` is a live handle; `path` is a NUL-terminated UTF-8 string.
 */
enum NaStatus na_trainer_save(const struct NaTrainer *trainer, const char *path);

/**
 * # Safety
 * `path` is a NUL-terminated UTF-8 string; `out` is writable.
 */
enum NaStatus na_trainer_load(const char *path, struct NaTrainer **out);

/**
 * Fits banded ridge with one penalty per band. `x` is `n_rows x sum(band_dims)`
 * with bands in column order, `y` is `n_rows x n_voxels`.
 *
 * # Safety
 * Buffers hold the stated number of values; `out` is writable.
 */
enum NaStatus na_ridge_fit(const double *x,
                           size_t n_rows,
                           const size_t *band_dims,
                           size_t n_bands,
                           const double *y,
                           size_t n_voxels,
                           const double *lambdas,
                           struct NaRidgeModel **out);

/**
 * Joint prediction, `n_rows x n_voxels` into `out` (capacity `out_len`).
 *
 * # Safety
 * `x` holds `n_rows x sum(band_dims)` values; `out` holds `out_len`.
 */
enum NaStatus na_ridge_predict(const struct NaRidgeModel *model,
                               const double *x,
                               size_t n_rows,
                               double *out,
                               size_t out_len);

/**
 * # Safety
 * `model` is null or came from this library and is not used again.
 */
void na_ridge_free(struct NaRidgeModel *model);

/**
 * Recall@{1,5,10} and median rank of a row-major score matrix with one
 * true candidate per query. Needs at least 10 candidates.
 *
 * # Safety
 * `scores` holds `n_queries x n_candidates` values, `truth` `n_queries`.
 */
enum NaStatus na_retrieval_metrics(const double *scores,
                                   size_t n_queries,
                                   size_t n_candidates,
                                   const size_t *truth,
                                   struct NaRetrievalMetrics *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NEUROALIGN_H */
