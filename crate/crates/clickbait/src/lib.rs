//! Clickbait-post detection pipeline: corpus ingestion, hand-crafted
//! feature extraction, information-gain feature ranking, tree-ensemble
//! classifiers, and cross-validated evaluation.
//!
//! The crate is organized as a set of independent stages that communicate
//! through documented file formats, so each stage can be driven from the
//! library API, the `clickbait` CLI, or the C bindings.

pub mod corpus;
pub mod eval;
pub mod features;
pub mod models;
pub mod selection;
pub mod textstats;

pub use corpus::{Dataset, PostInstance, Schema, TruthLabel};
pub use features::{FeatureCatalog, FeatureVector};
pub use models::{Algorithm, EnsembleModel, TrainConfig};
pub use selection::{FeatureMatrix, GainRanking};
pub use textstats::{ContentField, ContentValue, WordList};
