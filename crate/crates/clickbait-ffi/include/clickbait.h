/* C interface for the clickbait detection pipeline. */

#ifndef CLICKBAIT_H
#define CLICKBAIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum CbStatus {
  CB_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  CB_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  CB_INVALID_UTF8 = 2,
  /**
   * File could not be read or written.
   */
  CB_IO_ERROR = 3,
  /**
   * Input file or JSON config failed to parse.
   */
  CB_PARSE_ERROR = 4,
  /**
   * Arguments were structurally valid but semantically rejected.
   */
  CB_INVALID_ARGUMENT = 5,
  /**
   * Training or evaluation failed.
   */
  CB_MODEL_ERROR = 6,
} CbStatus;

/**
 * Opaque handle for a loaded (optionally labeled) instance collection.
 */
typedef struct CbDataset CbDataset;

/**
 * Opaque feature-matrix handle.
 */
typedef struct CbMatrix CbMatrix;

/**
 * Opaque trained-model handle.
 */
typedef struct CbModel CbModel;

/**
 * Opaque dictionary handle for formal/informal word features.
 */
typedef struct CbWordList CbWordList;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. The pointer stays
 * valid until the next failing call on the same thread. Never NULL.
 */
const char *cb_last_error(void);

/**
 * Release a string previously returned through a `char **` out-pointer.
 * NULL is accepted and ignored.
 */
void cb_string_free(char *s);

/**
 * Open the dictionary bundled into the library.
 */
enum CbStatus cb_wordlist_bundled(struct CbWordList **out);

/**
 * Open a dictionary file (one lowercase word per line, `#` comments).
 */
enum CbStatus cb_wordlist_open(const char *path, struct CbWordList **out);

void cb_wordlist_free(struct CbWordList *wordlist);

/**
 * Load instances (JSONL) plus optional truth labels and schema remapping.
 * `truth_path`, `schema_path`, and `wordlist` may be NULL; a NULL wordlist
 * selects the bundled dictionary. The wordlist is copied into the handle.
 */
enum CbStatus cb_dataset_load(const char *instances_path,
                              const char *truth_path,
                              const char *schema_path,
                              const struct CbWordList *wordlist,
                              struct CbDataset **out);

/**
 * Number of instances in the dataset. NULL yields 0.
 */
size_t cb_dataset_len(const struct CbDataset *dataset);

void cb_dataset_free(struct CbDataset *dataset);

/**
 * Extract the full 188-feature matrix from a dataset.
 */
enum CbStatus cb_matrix_extract(const struct CbDataset *dataset, struct CbMatrix **out);

/**
 * Read a feature-matrix CSV produced by this library.
 */
enum CbStatus cb_matrix_read_csv(const char *path, struct CbMatrix **out);

/**
 * Write the matrix in the canonical CSV form.
 */
enum CbStatus cb_matrix_write_csv(const struct CbMatrix *matrix, const char *path);

/**
 * Number of instance rows. NULL yields 0.
 */
size_t cb_matrix_rows(const struct CbMatrix *matrix);

/**
 * Number of feature columns. NULL yields 0.
 */
size_t cb_matrix_features(const struct CbMatrix *matrix);

void cb_matrix_free(struct CbMatrix *matrix);

/**
 * Rank features by information gain. Writes a JSON array of
 * `{"feature": name, "gain": value}` objects, best first.
 */
enum CbStatus cb_rank_features_json(const struct CbMatrix *matrix, size_t bins, char **out_json);

/**
 * Train a model on a labeled matrix. `config_json` example:
 * `{"algorithm":"gradient_boosting","n_trees":50,"seed":7}`.
 */
enum CbStatus cb_train(const struct CbMatrix *matrix,
                       const char *config_json,
                       struct CbModel **out);

/**
 * Serialize a model to the versioned JSON format.
 */
enum CbStatus cb_model_save(const struct CbModel *model, const char *path);

/**
 * Load a model saved by [`cb_model_save`]; rejects corrupt files and
 * unsupported format versions.
 */
enum CbStatus cb_model_load(const char *path, struct CbModel **out);

/**
 * Score every row of the matrix into `out_scores`, which must have room
 * for `cb_matrix_rows(matrix)` doubles. Scores are in [0, 1].
 */
enum CbStatus cb_predict(const struct CbModel *model,
                         const struct CbMatrix *matrix,
                         double *out_scores,
                         size_t out_scores_len);

void cb_model_free(struct CbModel *model);

/**
 * Stratified k-fold cross-validation. Writes the full evaluation report
 * (per-fold, fold-mean, and pooled metrics) as a JSON object.
 */
enum CbStatus cb_cross_validate_json(const struct CbMatrix *matrix,
                                     const char *config_json,
                                     size_t k_folds,
                                     double threshold,
                                     uint8_t positive_class,
                                     char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CLICKBAIT_H */
