//! C ABI surface for the clickbait detection pipeline.
//!
//! Conventions:
//! - every fallible call returns a `CbStatus` code and writes results through
//!   out-pointers; `CB_OK` (0) means success
//! - on failure the thread-local message retrieved by [`cb_last_error`]
//!   describes what went wrong
//! - handles (`CbWordList`, `CbDataset`, `CbMatrix`, `CbModel`) are opaque;
//!   free them with the matching `*_free` function exactly once
//! - strings returned through out-pointers are NUL-terminated, UTF-8, and
//!   owned by the caller; release them with [`cb_string_free`]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::ptr;

use clickbait::corpus::{self, Dataset, Schema};
use clickbait::eval;
use clickbait::features;
use clickbait::models::{self, Algorithm, EnsembleModel, FeatureSubset, TrainConfig};
use clickbait::selection::{self, FeatureMatrix};
use clickbait::textstats::WordList;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CbStatus {
    CbOk = 0,
    /// A required pointer argument was NULL.
    CbNullArgument = 1,
    /// A string argument was not valid UTF-8.
    CbInvalidUtf8 = 2,
    /// File could not be read or written.
    CbIoError = 3,
    /// Input file or JSON config failed to parse.
    CbParseError = 4,
    /// Arguments were structurally valid but semantically rejected.
    CbInvalidArgument = 5,
    /// Training or evaluation failed.
    CbModelError = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("NULs stripped");
    });
}

fn fail(status: CbStatus, message: impl AsRef<str>) -> CbStatus {
    set_error(message.as_ref());
    status
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread. Never NULL.
#[no_mangle]
pub extern "C" fn cb_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Release a string previously returned through a `char **` out-pointer.
/// NULL is accepted and ignored.
#[no_mangle]
pub unsafe extern "C" fn cb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Opaque dictionary handle for formal/informal word features.
pub struct CbWordList(WordList);
/// Opaque handle for a loaded (optionally labeled) instance collection.
pub struct CbDataset {
    dataset: Dataset,
    wordlist: WordList,
}
/// Opaque feature-matrix handle.
pub struct CbMatrix(FeatureMatrix);
/// Opaque trained-model handle.
pub struct CbModel(EnsembleModel);

unsafe fn utf8_arg<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, CbStatus> {
    if ptr.is_null() {
        return Err(fail(CbStatus::CbNullArgument, format!("{name} is NULL")));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(CbStatus::CbInvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn out_arg<'a, T>(ptr: *mut T, name: &str) -> Result<&'a mut T, CbStatus> {
    if ptr.is_null() {
        return Err(fail(CbStatus::CbNullArgument, format!("{name} is NULL")));
    }
    Ok(&mut *ptr)
}

unsafe fn handle_arg<'a, T>(ptr: *const T, name: &str) -> Result<&'a T, CbStatus> {
    if ptr.is_null() {
        return Err(fail(CbStatus::CbNullArgument, format!("{name} is NULL")));
    }
    Ok(&*ptr)
}

fn string_out(text: String, out: &mut *mut c_char) -> CbStatus {
    match CString::new(text) {
        Ok(c) => {
            *out = c.into_raw();
            CbStatus::CbOk
        }
        Err(_) => fail(CbStatus::CbInvalidArgument, "output contains NUL byte"),
    }
}

macro_rules! ffi_try {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

// ---------------------------------------------------------------------------
// word lists

/// Open the dictionary bundled into the library.
#[no_mangle]
pub unsafe extern "C" fn cb_wordlist_bundled(out: *mut *mut CbWordList) -> CbStatus {
    let out = ffi_try!(out_arg(out, "out"));
    *out = Box::into_raw(Box::new(CbWordList(WordList::bundled())));
    CbStatus::CbOk
}

/// Open a dictionary file (one lowercase word per line, `#` comments).
#[no_mangle]
pub unsafe extern "C" fn cb_wordlist_open(
    path: *const c_char,
    out: *mut *mut CbWordList,
) -> CbStatus {
    let path = ffi_try!(utf8_arg(path, "path"));
    let out = ffi_try!(out_arg(out, "out"));
    match WordList::from_path(Path::new(path)) {
        Ok(wl) => {
            *out = Box::into_raw(Box::new(CbWordList(wl)));
            CbStatus::CbOk
        }
        Err(e) => fail(CbStatus::CbIoError, format!("{e}")),
    }
}

#[no_mangle]
pub unsafe extern "C" fn cb_wordlist_free(wordlist: *mut CbWordList) {
    if !wordlist.is_null() {
        drop(Box::from_raw(wordlist));
    }
}

// ---------------------------------------------------------------------------
// datasets

/// Load instances (JSONL) plus optional truth labels and schema remapping.
/// `truth_path`, `schema_path`, and `wordlist` may be NULL; a NULL wordlist
/// selects the bundled dictionary. The wordlist is copied into the handle.
#[no_mangle]
pub unsafe extern "C" fn cb_dataset_load(
    instances_path: *const c_char,
    truth_path: *const c_char,
    schema_path: *const c_char,
    wordlist: *const CbWordList,
    out: *mut *mut CbDataset,
) -> CbStatus {
    let instances_path = ffi_try!(utf8_arg(instances_path, "instances_path"));
    let out = ffi_try!(out_arg(out, "out"));

    let schema = if schema_path.is_null() {
        Schema::default()
    } else {
        let p = ffi_try!(utf8_arg(schema_path, "schema_path"));
        match Schema::from_path(Path::new(p)) {
            Ok(s) => s,
            Err(e) => return fail(CbStatus::CbParseError, format!("{e}")),
        }
    };
    let mut dataset = match corpus::load_instances(Path::new(instances_path), &schema) {
        Ok(d) => d,
        Err(e) => return fail(CbStatus::CbParseError, format!("{e}")),
    };
    if !truth_path.is_null() {
        let p = ffi_try!(utf8_arg(truth_path, "truth_path"));
        let labels = match corpus::load_truth(Path::new(p)) {
            Ok(l) => l,
            Err(e) => return fail(CbStatus::CbParseError, format!("{e}")),
        };
        dataset = match corpus::join(dataset, &labels) {
            Ok(d) => d,
            Err(e) => return fail(CbStatus::CbInvalidArgument, format!("{e}")),
        };
    }
    let wordlist = if wordlist.is_null() {
        WordList::bundled()
    } else {
        (*wordlist).0.clone()
    };
    *out = Box::into_raw(Box::new(CbDataset { dataset, wordlist }));
    CbStatus::CbOk
}

/// Number of instances in the dataset. NULL yields 0.
#[no_mangle]
pub unsafe extern "C" fn cb_dataset_len(dataset: *const CbDataset) -> usize {
    if dataset.is_null() {
        0
    } else {
        (*dataset).dataset.instances.len()
    }
}

#[no_mangle]
pub unsafe extern "C" fn cb_dataset_free(dataset: *mut CbDataset) {
    if !dataset.is_null() {
        drop(Box::from_raw(dataset));
    }
}

// ---------------------------------------------------------------------------
// feature matrices

/// Extract the full 188-feature matrix from a dataset.
#[no_mangle]
pub unsafe extern "C" fn cb_matrix_extract(
    dataset: *const CbDataset,
    out: *mut *mut CbMatrix,
) -> CbStatus {
    let handle = ffi_try!(handle_arg(dataset, "dataset"));
    let out = ffi_try!(out_arg(out, "out"));
    let vectors = features::extract_dataset(&handle.dataset, &handle.wordlist);
    let labels = handle
        .dataset
        .labels
        .as_ref()
        .map(|ls| ls.iter().map(|l| l.label).collect());
    let matrix = FeatureMatrix::from_vectors(&vectors, labels);
    *out = Box::into_raw(Box::new(CbMatrix(matrix)));
    CbStatus::CbOk
}

/// Read a feature-matrix CSV produced by this library.
#[no_mangle]
pub unsafe extern "C" fn cb_matrix_read_csv(
    path: *const c_char,
    out: *mut *mut CbMatrix,
) -> CbStatus {
    let path = ffi_try!(utf8_arg(path, "path"));
    let out = ffi_try!(out_arg(out, "out"));
    match FeatureMatrix::read_csv_path(Path::new(path)) {
        Ok(m) => {
            *out = Box::into_raw(Box::new(CbMatrix(m)));
            CbStatus::CbOk
        }
        Err(e) => fail(CbStatus::CbParseError, format!("{e}")),
    }
}

/// Write the matrix in the canonical CSV form.
#[no_mangle]
pub unsafe extern "C" fn cb_matrix_write_csv(
    matrix: *const CbMatrix,
    path: *const c_char,
) -> CbStatus {
    let matrix = ffi_try!(handle_arg(matrix, "matrix"));
    let path = ffi_try!(utf8_arg(path, "path"));
    let mut body = Vec::new();
    if let Err(e) = matrix.0.write_csv(&mut body) {
        return fail(CbStatus::CbIoError, format!("{e}"));
    }
    match std::fs::write(path, body) {
        Ok(()) => CbStatus::CbOk,
        Err(e) => fail(CbStatus::CbIoError, format!("cannot write {path}: {e}")),
    }
}

/// Number of instance rows. NULL yields 0.
#[no_mangle]
pub unsafe extern "C" fn cb_matrix_rows(matrix: *const CbMatrix) -> usize {
    if matrix.is_null() {
        0
    } else {
        (*matrix).0.n_instances()
    }
}

/// Number of feature columns. NULL yields 0.
#[no_mangle]
pub unsafe extern "C" fn cb_matrix_features(matrix: *const CbMatrix) -> usize {
    if matrix.is_null() {
        0
    } else {
        (*matrix).0.n_features()
    }
}

#[no_mangle]
pub unsafe extern "C" fn cb_matrix_free(matrix: *mut CbMatrix) {
    if !matrix.is_null() {
        drop(Box::from_raw(matrix));
    }
}

/// Rank features by information gain. Writes a JSON array of
/// `{"feature": name, "gain": value}` objects, best first.
#[no_mangle]
pub unsafe extern "C" fn cb_rank_features_json(
    matrix: *const CbMatrix,
    bins: usize,
    out_json: *mut *mut c_char,
) -> CbStatus {
    let matrix = ffi_try!(handle_arg(matrix, "matrix"));
    let out_json = ffi_try!(out_arg(out_json, "out_json"));
    let ranking = match selection::rank_features(&matrix.0, bins) {
        Ok(r) => r,
        Err(e) => return fail(CbStatus::CbInvalidArgument, format!("{e}")),
    };
    let entries: Vec<serde_json::Value> = ranking
        .entries
        .iter()
        .map(|(name, gain)| serde_json::json!({"feature": name, "gain": gain}))
        .collect();
    string_out(serde_json::to_string(&entries).expect("serializable"), out_json)
}

// ---------------------------------------------------------------------------
// models

/// Partial JSON training config; unspecified fields take the per-algorithm
/// defaults. `features` is an array of feature names, or absent for all.
#[derive(serde::Deserialize)]
struct ConfigOverride {
    algorithm: Algorithm,
    features: Option<Vec<String>>,
    seed: Option<u64>,
    n_trees: Option<usize>,
    tree_depth_max: Option<usize>,
    learning_rate: Option<f64>,
    min_leaf: Option<usize>,
    feature_fraction: Option<f64>,
    bootstrap: Option<bool>,
}

fn parse_config(json: &str) -> Result<TrainConfig, CbStatus> {
    let ov: ConfigOverride = serde_json::from_str(json)
        .map_err(|e| fail(CbStatus::CbParseError, format!("config: {e}")))?;
    let defaults = TrainConfig::for_algorithm(ov.algorithm);
    Ok(TrainConfig {
        algorithm: ov.algorithm,
        feature_subset: match ov.features {
            Some(names) => FeatureSubset::Names(names),
            None => FeatureSubset::All,
        },
        seed: ov.seed.unwrap_or(defaults.seed),
        n_trees: ov.n_trees.unwrap_or(defaults.n_trees),
        tree_depth_max: ov.tree_depth_max.unwrap_or(defaults.tree_depth_max),
        learning_rate: ov.learning_rate.unwrap_or(defaults.learning_rate),
        min_leaf: ov.min_leaf.unwrap_or(defaults.min_leaf),
        feature_fraction: ov.feature_fraction.unwrap_or(defaults.feature_fraction),
        bootstrap: ov.bootstrap.unwrap_or(defaults.bootstrap),
    })
}

/// Train a model on a labeled matrix. `config_json` example:
/// `{"algorithm":"gradient_boosting","n_trees":50,"seed":7}`.
#[no_mangle]
pub unsafe extern "C" fn cb_train(
    matrix: *const CbMatrix,
    config_json: *const c_char,
    out: *mut *mut CbModel,
) -> CbStatus {
    let matrix = ffi_try!(handle_arg(matrix, "matrix"));
    let config_json = ffi_try!(utf8_arg(config_json, "config_json"));
    let out = ffi_try!(out_arg(out, "out"));
    let config = ffi_try!(parse_config(config_json));
    match models::train(&matrix.0, &config) {
        Ok(model) => {
            *out = Box::into_raw(Box::new(CbModel(model)));
            CbStatus::CbOk
        }
        Err(e) => fail(CbStatus::CbModelError, format!("{e}")),
    }
}

/// Serialize a model to the versioned JSON format.
#[no_mangle]
pub unsafe extern "C" fn cb_model_save(model: *const CbModel, path: *const c_char) -> CbStatus {
    let model = ffi_try!(handle_arg(model, "model"));
    let path = ffi_try!(utf8_arg(path, "path"));
    match models::save_model(&model.0, Path::new(path)) {
        Ok(()) => CbStatus::CbOk,
        Err(e) => fail(CbStatus::CbIoError, format!("{e}")),
    }
}

/// Load a model saved by [`cb_model_save`]; rejects corrupt files and
/// unsupported format versions.
#[no_mangle]
pub unsafe extern "C" fn cb_model_load(path: *const c_char, out: *mut *mut CbModel) -> CbStatus {
    let path = ffi_try!(utf8_arg(path, "path"));
    let out = ffi_try!(out_arg(out, "out"));
    match models::load_model(Path::new(path)) {
        Ok(model) => {
            *out = Box::into_raw(Box::new(CbModel(model)));
            CbStatus::CbOk
        }
        Err(e) => fail(CbStatus::CbParseError, format!("{e}")),
    }
}

/// Score every row of the matrix into `out_scores`, which must have room
/// for `cb_matrix_rows(matrix)` doubles. Scores are in [0, 1].
#[no_mangle]
pub unsafe extern "C" fn cb_predict(
    model: *const CbModel,
    matrix: *const CbMatrix,
    out_scores: *mut f64,
    out_scores_len: usize,
) -> CbStatus {
    let model = ffi_try!(handle_arg(model, "model"));
    let matrix = ffi_try!(handle_arg(matrix, "matrix"));
    if out_scores.is_null() {
        return fail(CbStatus::CbNullArgument, "out_scores is NULL");
    }
    if out_scores_len < matrix.0.n_instances() {
        return fail(
            CbStatus::CbInvalidArgument,
            format!(
                "out_scores holds {out_scores_len} values, need {}",
                matrix.0.n_instances()
            ),
        );
    }
    match model.0.predict_matrix(&matrix.0) {
        Ok(scores) => {
            ptr::copy_nonoverlapping(scores.as_ptr(), out_scores, scores.len());
            CbStatus::CbOk
        }
        Err(e) => fail(CbStatus::CbModelError, format!("{e}")),
    }
}

#[no_mangle]
pub unsafe extern "C" fn cb_model_free(model: *mut CbModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

// ---------------------------------------------------------------------------
// evaluation

/// Stratified k-fold cross-validation. Writes the full evaluation report
/// (per-fold, fold-mean, and pooled metrics) as a JSON object.
#[no_mangle]
pub unsafe extern "C" fn cb_cross_validate_json(
    matrix: *const CbMatrix,
    config_json: *const c_char,
    k_folds: usize,
    threshold: f64,
    positive_class: u8,
    out_json: *mut *mut c_char,
) -> CbStatus {
    let matrix = ffi_try!(handle_arg(matrix, "matrix"));
    let config_json = ffi_try!(utf8_arg(config_json, "config_json"));
    let out_json = ffi_try!(out_arg(out_json, "out_json"));
    let config = ffi_try!(parse_config(config_json));
    match eval::cross_validate(
        &matrix.0,
        &config,
        k_folds,
        config.seed,
        threshold,
        positive_class,
        "ffi",
    ) {
        Ok(report) => string_out(
            serde_json::to_string(&report).expect("serializable"),
            out_json,
        ),
        Err(e) => fail(CbStatus::CbModelError, format!("{e}")),
    }
}
