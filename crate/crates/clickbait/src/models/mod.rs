//! Tree-ensemble classifiers: single CART tree, bagged random forest,
//! AdaBoost over stumps, and gradient-boosted trees with logistic loss.
//! All algorithms are deterministic for a fixed `(matrix, config)` pair and
//! produce probability scores in `[0, 1]`.

mod adaboost;
mod forest;
mod gbm;
mod tree;

pub use tree::{TreeData, TreeNode, TreeParams};

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::features::{FeatureCatalog, FeatureVector};
use crate::selection::{resolve_columns, FeatureMatrix};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("matrix has no labels; training needs a labeled matrix")]
    Unlabeled,
    #[error("training set contains a single class")]
    SingleClass,
    #[error("feature subset is empty")]
    EmptyFeatureSubset,
    #[error("unknown feature {0:?}")]
    UnknownFeature(String),
    #[error("input is missing feature {0:?} required by the model")]
    MissingFeature(String),
    #[error("invalid hyperparameter: {0}")]
    InvalidConfig(String),
    #[error("boosting produced no usable round")]
    NoUsableRound,
    #[error("cannot access model file {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("model file {path} is corrupt: {message}")]
    Corrupt { path: String, message: String },
    #[error("model file {path} has format version {found}, expected {expected}")]
    VersionMismatch {
        path: String,
        found: u32,
        expected: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    DecisionTree,
    RandomForest,
    Adaboost,
    GradientBoosting,
}

impl std::str::FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Algorithm, String> {
        match s {
            "decision_tree" => Ok(Algorithm::DecisionTree),
            "random_forest" => Ok(Algorithm::RandomForest),
            "adaboost" => Ok(Algorithm::Adaboost),
            "gradient_boosting" => Ok(Algorithm::GradientBoosting),
            other => Err(format!(
                "unknown algorithm {other:?} (expected decision_tree, random_forest, adaboost, or gradient_boosting)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureSubset {
    All,
    Names(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub algorithm: Algorithm,
    pub feature_subset: FeatureSubset,
    pub seed: u64,
    pub tree_depth_max: usize,
    pub n_trees: usize,
    /// Shrinkage; boosting only.
    pub learning_rate: f64,
    pub min_leaf: usize,
    /// Features considered per split; forest only.
    pub feature_fraction: f64,
    /// Bagging on/off; forest only.
    pub bootstrap: bool,
}

impl TrainConfig {
    /// Declared defaults per algorithm; the reference experiments never
    /// published hyperparameters.
    pub fn for_algorithm(algorithm: Algorithm) -> TrainConfig {
        let base = TrainConfig {
            algorithm,
            feature_subset: FeatureSubset::All,
            seed: 42,
            tree_depth_max: 10,
            n_trees: 1,
            learning_rate: 0.1,
            min_leaf: 5,
            feature_fraction: 1.0,
            bootstrap: false,
        };
        match algorithm {
            Algorithm::DecisionTree => base,
            Algorithm::RandomForest => TrainConfig {
                n_trees: 100,
                feature_fraction: 0.3,
                bootstrap: true,
                ..base
            },
            Algorithm::Adaboost => TrainConfig {
                n_trees: 100,
                tree_depth_max: 1,
                min_leaf: 1,
                ..base
            },
            Algorithm::GradientBoosting => TrainConfig {
                n_trees: 200,
                tree_depth_max: 3,
                ..base
            },
        }
    }

    fn validate(&self) -> Result<(), ModelError> {
        if self.tree_depth_max < 1 {
            return Err(ModelError::InvalidConfig("tree_depth_max must be >= 1".into()));
        }
        if self.n_trees < 1 {
            return Err(ModelError::InvalidConfig("n_trees must be >= 1".into()));
        }
        if self.learning_rate <= 0.0 {
            return Err(ModelError::InvalidConfig("learning_rate must be > 0".into()));
        }
        if self.min_leaf < 1 {
            return Err(ModelError::InvalidConfig("min_leaf must be >= 1".into()));
        }
        if !(self.feature_fraction > 0.0 && self.feature_fraction <= 1.0) {
            return Err(ModelError::InvalidConfig(
                "feature_fraction must be in (0, 1]".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedTree {
    pub tree: TreeNode,
    pub weight: f64,
}

const MODEL_FORMAT_VERSION: u32 = 1;

/// A trained, immutable ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleModel {
    pub format_version: u32,
    pub algorithm: Algorithm,
    /// Active feature subset, in the order tree feature indices refer to.
    pub feature_names: Vec<String>,
    pub trees: Vec<WeightedTree>,
    pub base_score: f64,
    pub config: TrainConfig,
    /// Per-round training logistic loss (gradient boosting only).
    pub train_losses: Vec<f64>,
}

pub(crate) fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Train an ensemble per the config. Deterministic for fixed inputs.
pub fn train(matrix: &FeatureMatrix, config: &TrainConfig) -> Result<EnsembleModel, ModelError> {
    config.validate()?;
    let labels = matrix.labels.as_ref().ok_or(ModelError::Unlabeled)?;
    let pos = labels.iter().filter(|&&l| l == 1).count();
    if pos == 0 || pos == labels.len() {
        return Err(ModelError::SingleClass);
    }

    let feature_names: Vec<String> = match &config.feature_subset {
        FeatureSubset::All => matrix.feature_names.clone(),
        FeatureSubset::Names(names) => names.clone(),
    };
    if feature_names.is_empty() {
        return Err(ModelError::EmptyFeatureSubset);
    }
    let column_idx =
        resolve_columns(matrix, &feature_names).map_err(ModelError::UnknownFeature)?;
    let columns: Vec<Vec<f64>> = column_idx
        .iter()
        .map(|&i| matrix.columns[i].clone())
        .collect();
    let data = TreeData::new(columns);
    let targets: Vec<f64> = labels.iter().map(|&l| f64::from(l)).collect();

    let (trees, base_score, train_losses) = match config.algorithm {
        Algorithm::DecisionTree => {
            let trees = forest::fit_single_tree(&data, &targets, config);
            (trees, 0.0, Vec::new())
        }
        Algorithm::RandomForest => {
            let trees = forest::fit_forest(&data, &targets, config);
            (trees, 0.0, Vec::new())
        }
        Algorithm::Adaboost => {
            let trees = adaboost::fit(&data, &targets, config)?;
            (trees, 0.0, Vec::new())
        }
        Algorithm::GradientBoosting => gbm::fit(&data, &targets, config),
    };

    Ok(EnsembleModel {
        format_version: MODEL_FORMAT_VERSION,
        algorithm: config.algorithm,
        feature_names,
        trees,
        base_score,
        config: config.clone(),
        train_losses,
    })
}

impl EnsembleModel {
    /// Score one row whose values are in active-subset order.
    pub fn predict_row(&self, row: &[f64]) -> f64 {
        debug_assert_eq!(row.len(), self.feature_names.len());
        match self.algorithm {
            Algorithm::DecisionTree => self.trees[0].tree.predict(row).clamp(0.0, 1.0),
            Algorithm::RandomForest => {
                let sum: f64 = self.trees.iter().map(|t| t.tree.predict(row)).sum();
                (sum / self.trees.len() as f64).clamp(0.0, 1.0)
            }
            Algorithm::Adaboost => {
                // logistic-squashed weighted vote margin
                let margin: f64 = self
                    .trees
                    .iter()
                    .map(|t| {
                        let vote = if t.tree.predict(row) >= 0.5 { 1.0 } else { -1.0 };
                        t.weight * vote
                    })
                    .sum();
                sigmoid(margin)
            }
            Algorithm::GradientBoosting => {
                let margin: f64 = self.base_score
                    + self
                        .trees
                        .iter()
                        .map(|t| t.weight * t.tree.predict(row))
                        .sum::<f64>();
                sigmoid(margin)
            }
        }
    }

    /// Score a full catalog feature vector.
    pub fn predict_proba(&self, vector: &FeatureVector) -> Result<f64, ModelError> {
        let catalog = FeatureCatalog::get();
        let row: Vec<f64> = self
            .feature_names
            .iter()
            .map(|name| {
                catalog
                    .index_of(name)
                    .map(|i| vector.values[i])
                    .ok_or_else(|| ModelError::MissingFeature(name.clone()))
            })
            .collect::<Result<_, _>>()?;
        Ok(self.predict_row(&row))
    }

    /// Score every row of a matrix; the matrix must carry every model
    /// feature (extra columns are ignored).
    pub fn predict_matrix(&self, matrix: &FeatureMatrix) -> Result<Vec<f64>, ModelError> {
        let idx = resolve_columns(matrix, &self.feature_names)
            .map_err(ModelError::MissingFeature)?;
        let mut scores = Vec::with_capacity(matrix.n_instances());
        let mut row = vec![0.0; idx.len()];
        for i in 0..matrix.n_instances() {
            for (slot, &col) in row.iter_mut().zip(&idx) {
                *slot = matrix.columns[col][i];
            }
            scores.push(self.predict_row(&row));
        }
        Ok(scores)
    }
}

/// Write the model as a versioned JSON container.
pub fn save_model(model: &EnsembleModel, path: &Path) -> Result<(), ModelError> {
    let body = serde_json::to_string(model).expect("model serializes");
    std::fs::write(path, body).map_err(|source| ModelError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_model(path: &Path) -> Result<EnsembleModel, ModelError> {
    let display = path.display().to_string();
    let body = std::fs::read_to_string(path).map_err(|source| ModelError::Io {
        path: display.clone(),
        source,
    })?;
    // check the version before full deserialization so a mismatch is not
    // reported as corruption
    let probe: serde_json::Value =
        serde_json::from_str(&body).map_err(|e| ModelError::Corrupt {
            path: display.clone(),
            message: e.to_string(),
        })?;
    let found = probe
        .get("format_version")
        .and_then(serde_json::Value::as_u64)
        .ok_or_else(|| ModelError::Corrupt {
            path: display.clone(),
            message: "missing format_version".to_string(),
        })? as u32;
    if found != MODEL_FORMAT_VERSION {
        return Err(ModelError::VersionMismatch {
            path: display,
            found,
            expected: MODEL_FORMAT_VERSION,
        });
    }
    serde_json::from_str(&body).map_err(|e| ModelError::Corrupt {
        path: display,
        message: e.to_string(),
    })
}
