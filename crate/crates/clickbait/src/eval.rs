//! Evaluation: stratified k-fold cross-validation, rank-based AUC,
//! threshold metrics, title-length statistics per class, and two-sample
//! significance tests (Welch's t and Mann-Whitney U).

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal, StudentsT};
use thiserror::Error;

use crate::corpus::Dataset;
use crate::models::{self, ModelError, TrainConfig};
use crate::selection::FeatureMatrix;
use crate::textstats::{self, ContentValue};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("k = {k} exceeds instance count {n}")]
    KTooLarge { k: usize, n: usize },
    #[error("k must be at least 2, got {0}")]
    KTooSmall(usize),
    #[error("labels contain a single class")]
    SingleClass,
    #[error("scores and labels have different lengths ({scores} vs {labels})")]
    LengthMismatch { scores: usize, labels: usize },
    #[error("labels are empty")]
    Empty,
    #[error("dataset is unlabeled")]
    Unlabeled,
    #[error("class {0} has no instances with a post title")]
    NoTitledInstances(u8),
    #[error("degenerate samples for the {0} branch")]
    DegenerateSamples(&'static str),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Fold assignment for every instance; stratified and seed-deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldPlan {
    pub assignments: Vec<usize>,
    pub k: usize,
    pub seed: u64,
}

impl FoldPlan {
    pub fn fold_indices(&self, fold: usize) -> (Vec<usize>, Vec<usize>) {
        let mut train = Vec::new();
        let mut test = Vec::new();
        for (i, &f) in self.assignments.iter().enumerate() {
            if f == fold {
                test.push(i);
            } else {
                train.push(i);
            }
        }
        (train, test)
    }
}

/// Stratified fold assignment: each class is shuffled with the seed and
/// dealt round-robin; the negative stream starts where the positive one
/// ended so total fold sizes stay within one of each other.
pub fn make_folds(labels: &[u8], k: usize, seed: u64) -> Result<FoldPlan, EvalError> {
    let n = labels.len();
    if k < 2 {
        return Err(EvalError::KTooSmall(k));
    }
    if k > n {
        return Err(EvalError::KTooLarge { k, n });
    }
    let mut pos: Vec<usize> = (0..n).filter(|&i| labels[i] == 1).collect();
    let mut neg: Vec<usize> = (0..n).filter(|&i| labels[i] != 1).collect();
    if pos.is_empty() || neg.is_empty() {
        return Err(EvalError::SingleClass);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pos.shuffle(&mut rng);
    neg.shuffle(&mut rng);
    let mut assignments = vec![0usize; n];
    for (j, &i) in pos.iter().enumerate() {
        assignments[i] = j % k;
    }
    let offset = pos.len();
    for (j, &i) in neg.iter().enumerate() {
        assignments[i] = (offset + j) % k;
    }
    Ok(FoldPlan {
        assignments,
        k,
        seed,
    })
}

/// Rank-based (Mann-Whitney) AUC; tied scores contribute 1/2.
pub fn auc(scores: &[f64], labels: &[u8]) -> Result<f64, EvalError> {
    if scores.len() != labels.len() {
        return Err(EvalError::LengthMismatch {
            scores: scores.len(),
            labels: labels.len(),
        });
    }
    let n_pos = labels.iter().filter(|&&l| l == 1).count();
    let n_neg = labels.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(EvalError::SingleClass);
    }
    let ranks = average_ranks(scores);
    let rank_sum_pos: f64 = ranks
        .iter()
        .zip(labels)
        .filter(|(_, &l)| l == 1)
        .map(|(&r, _)| r)
        .sum();
    let u = rank_sum_pos - (n_pos as f64 * (n_pos as f64 + 1.0)) / 2.0;
    Ok(u / (n_pos as f64 * n_neg as f64))
}

/// 1-based ranks with ties assigned the average rank of their run.
fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite scores"));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let avg = (i + j + 2) as f64 / 2.0; // mean of 1-based ranks i+1..=j+1
        for &idx in &order[i..=j] {
            ranks[idx] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Accuracy, precision, and recall at a score threshold for the declared
/// positive class. An empty denominator yields 0 with its `defined` flag
/// cleared.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdMetrics {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub precision_defined: bool,
    pub recall_defined: bool,
}

pub fn threshold_metrics(
    scores: &[f64],
    labels: &[u8],
    threshold: f64,
    positive_class: u8,
) -> Result<ThresholdMetrics, EvalError> {
    if scores.is_empty() || scores.len() != labels.len() {
        return Err(EvalError::LengthMismatch {
            scores: scores.len(),
            labels: labels.len(),
        });
    }
    let (mut tp, mut fp, mut fne, mut tn) = (0usize, 0usize, 0usize, 0usize);
    for (&score, &label) in scores.iter().zip(labels) {
        // scores rate class 1; for positive_class = 0 the prediction flips
        let predicted_positive = if positive_class == 1 {
            score >= threshold
        } else {
            score < threshold
        };
        let actually_positive = label == positive_class;
        match (predicted_positive, actually_positive) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, true) => fne += 1,
            (false, false) => tn += 1,
        }
    }
    let n = scores.len() as f64;
    let precision_defined = tp + fp > 0;
    let recall_defined = tp + fne > 0;
    Ok(ThresholdMetrics {
        accuracy: (tp + tn) as f64 / n,
        precision: if precision_defined {
            tp as f64 / (tp + fp) as f64
        } else {
            0.0
        },
        recall: if recall_defined {
            tp as f64 / (tp + fne) as f64
        } else {
            0.0
        },
        precision_defined,
        recall_defined,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSet {
    pub auc: f64,
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
}

/// Cross-validation outcome: per-fold metrics, their mean, and the metrics
/// of the pooled out-of-fold predictions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub per_fold: Vec<MetricSet>,
    pub aggregate: MetricSet,
    pub pooled: MetricSet,
    pub config: TrainConfig,
    pub k: usize,
    pub seed: u64,
    pub threshold: f64,
    pub positive_class: u8,
    pub dataset_id: String,
}

fn metric_set(
    scores: &[f64],
    labels: &[u8],
    threshold: f64,
    positive_class: u8,
) -> Result<MetricSet, EvalError> {
    let tm = threshold_metrics(scores, labels, threshold, positive_class)?;
    Ok(MetricSet {
        auc: auc(scores, labels)?,
        accuracy: tm.accuracy,
        precision: tm.precision,
        recall: tm.recall,
    })
}

/// Train on k-1 folds and score the held-out fold, for every fold.
pub fn cross_validate(
    matrix: &FeatureMatrix,
    train_config: &TrainConfig,
    k: usize,
    seed: u64,
    threshold: f64,
    positive_class: u8,
    dataset_id: &str,
) -> Result<EvaluationReport, EvalError> {
    let labels = matrix.labels.as_ref().ok_or(EvalError::Unlabeled)?;
    let plan = make_folds(labels, k, seed)?;
    let mut per_fold = Vec::with_capacity(k);
    let mut pooled_scores = vec![0.0; labels.len()];
    for fold in 0..k {
        let (train_idx, test_idx) = plan.fold_indices(fold);
        let train_matrix = matrix.subset_rows(&train_idx);
        let model = models::train(&train_matrix, train_config)?;
        let test_matrix = matrix.subset_rows(&test_idx);
        let scores = model.predict_matrix(&test_matrix)?;
        let test_labels: Vec<u8> = test_idx.iter().map(|&i| labels[i]).collect();
        per_fold.push(metric_set(&scores, &test_labels, threshold, positive_class)?);
        for (&i, &s) in test_idx.iter().zip(&scores) {
            pooled_scores[i] = s;
        }
    }
    let kf = k as f64;
    let aggregate = MetricSet {
        auc: per_fold.iter().map(|m| m.auc).sum::<f64>() / kf,
        accuracy: per_fold.iter().map(|m| m.accuracy).sum::<f64>() / kf,
        precision: per_fold.iter().map(|m| m.precision).sum::<f64>() / kf,
        recall: per_fold.iter().map(|m| m.recall).sum::<f64>() / kf,
    };
    let pooled = metric_set(&pooled_scores, labels, threshold, positive_class)?;
    Ok(EvaluationReport {
        per_fold,
        aggregate,
        pooled,
        config: train_config.clone(),
        k,
        seed,
        threshold,
        positive_class,
        dataset_id: dataset_id.to_string(),
    })
}

/// Mean post-title character and word counts per class (clickbait = 1,
/// legitimate = 0); instances without a title are excluded from the means.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TitleLengthStats {
    pub clickbait_char_mean: f64,
    pub legitimate_char_mean: f64,
    pub clickbait_word_mean: f64,
    pub legitimate_word_mean: f64,
    pub clickbait_titled: usize,
    pub legitimate_titled: usize,
}

pub fn title_length_stats(dataset: &Dataset) -> Result<TitleLengthStats, EvalError> {
    let labels = dataset.labels.as_ref().ok_or(EvalError::Unlabeled)?;
    let mut sums = [[0.0f64; 2]; 2]; // [class][chars, words]
    let mut counts = [0usize; 2];
    for (instance, label) in dataset.instances.iter().zip(labels) {
        let Some(title) = &instance.post_title else {
            continue;
        };
        let class = usize::from(label.label == 1);
        sums[class][0] += textstats::len_characters(ContentValue::Scalar(title));
        sums[class][1] += textstats::len_words(ContentValue::Scalar(title));
        counts[class] += 1;
    }
    for class in [1u8, 0u8] {
        if counts[usize::from(class == 1)] == 0 {
            return Err(EvalError::NoTitledInstances(class));
        }
    }
    Ok(TitleLengthStats {
        clickbait_char_mean: sums[1][0] / counts[1] as f64,
        legitimate_char_mean: sums[0][0] / counts[0] as f64,
        clickbait_word_mean: sums[1][1] / counts[1] as f64,
        legitimate_word_mean: sums[0][1] / counts[0] as f64,
        clickbait_titled: counts[1],
        legitimate_titled: counts[0],
    })
}

/// Per-class title length samples, for significance testing.
pub fn title_length_samples(dataset: &Dataset, words: bool) -> Result<(Vec<f64>, Vec<f64>), EvalError> {
    let labels = dataset.labels.as_ref().ok_or(EvalError::Unlabeled)?;
    let mut clickbait = Vec::new();
    let mut legitimate = Vec::new();
    for (instance, label) in dataset.instances.iter().zip(labels) {
        let Some(title) = &instance.post_title else {
            continue;
        };
        let value = if words {
            textstats::len_words(ContentValue::Scalar(title))
        } else {
            textstats::len_characters(ContentValue::Scalar(title))
        };
        if label.label == 1 {
            clickbait.push(value);
        } else {
            legitimate.push(value);
        }
    }
    Ok((clickbait, legitimate))
}

fn mean_var(sample: &[f64]) -> (f64, f64) {
    let n = sample.len() as f64;
    let mean = sample.iter().sum::<f64>() / n;
    let var = sample.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

/// Two-sided Welch's t-test and Mann-Whitney U test (normal approximation
/// with tie correction) p-values for two samples.
pub fn significance_test(
    sample_a: &[f64],
    sample_b: &[f64],
) -> Result<(f64, f64), EvalError> {
    if sample_a.len() < 2 || sample_b.len() < 2 {
        return Err(EvalError::DegenerateSamples("t-test"));
    }
    let (mean_a, var_a) = mean_var(sample_a);
    let (mean_b, var_b) = mean_var(sample_b);
    if var_a == 0.0 && var_b == 0.0 {
        return Err(EvalError::DegenerateSamples("t-test"));
    }
    let na = sample_a.len() as f64;
    let nb = sample_b.len() as f64;
    let se2 = var_a / na + var_b / nb;
    let t = (mean_a - mean_b) / se2.sqrt();
    // Welch-Satterthwaite degrees of freedom
    let df = se2 * se2
        / ((var_a / na).powi(2) / (na - 1.0) + (var_b / nb).powi(2) / (nb - 1.0));
    let t_dist = StudentsT::new(0.0, 1.0, df).expect("valid t distribution");
    let t_p = (2.0 * (1.0 - t_dist.cdf(t.abs()))).clamp(0.0, 1.0);

    let u_p = mann_whitney_p(sample_a, sample_b)?;
    Ok((t_p, u_p))
}

fn mann_whitney_p(sample_a: &[f64], sample_b: &[f64]) -> Result<f64, EvalError> {
    let na = sample_a.len() as f64;
    let nb = sample_b.len() as f64;
    let mut all: Vec<f64> = Vec::with_capacity(sample_a.len() + sample_b.len());
    all.extend_from_slice(sample_a);
    all.extend_from_slice(sample_b);
    let ranks = average_ranks(&all);
    let rank_sum_a: f64 = ranks[..sample_a.len()].iter().sum();
    let u = rank_sum_a - na * (na + 1.0) / 2.0;
    let n = na + nb;
    // tie correction over runs of equal values
    let mut sorted = all.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
            j += 1;
        }
        let t = (j - i + 1) as f64;
        tie_term += t * t * t - t;
        i = j + 1;
    }
    let variance = na * nb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if variance <= 0.0 {
        return Err(EvalError::DegenerateSamples("mann-whitney"));
    }
    let mean_u = na * nb / 2.0;
    let z = (u - mean_u) / variance.sqrt();
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    Ok((2.0 * (1.0 - normal.cdf(z.abs()))).clamp(0.0, 1.0))
}
