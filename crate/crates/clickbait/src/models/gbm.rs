//! Gradient-boosted trees with logistic loss and shrinkage. Each round fits
//! a regression tree to the current residuals `y - p`; the base score is
//! the log-odds of the training prior, which also handles class imbalance.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::tree::{build_tree, TreeData, TreeParams};
use super::{sigmoid, TrainConfig, WeightedTree};

fn logistic_loss(margins: &[f64], targets: &[f64]) -> f64 {
    margins
        .iter()
        .zip(targets)
        .map(|(&m, &y)| {
            let p = sigmoid(m).clamp(1e-15, 1.0 - 1e-15);
            -(y * p.ln() + (1.0 - y) * (1.0 - p).ln())
        })
        .sum::<f64>()
        / targets.len() as f64
}

pub fn fit(
    data: &TreeData,
    targets: &[f64],
    config: &TrainConfig,
) -> (Vec<WeightedTree>, f64, Vec<f64>) {
    let n = data.n_rows();
    let pos: f64 = targets.iter().sum();
    let prior = (pos / n as f64).clamp(1e-9, 1.0 - 1e-9);
    let base_score = (prior / (1.0 - prior)).ln();

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let params = TreeParams {
        max_depth: config.tree_depth_max,
        min_leaf: config.min_leaf,
        feature_fraction: 1.0,
    };
    let weights = vec![1.0; n];
    let mut margins = vec![base_score; n];
    let mut residuals = vec![0.0; n];
    let mut trees = Vec::with_capacity(config.n_trees);
    let mut losses = Vec::with_capacity(config.n_trees);
    for _ in 0..config.n_trees {
        for i in 0..n {
            residuals[i] = targets[i] - sigmoid(margins[i]);
        }
        let tree = build_tree(data, &residuals, &weights, params, &mut rng);
        for (i, margin) in margins.iter_mut().enumerate() {
            let row: Vec<f64> = data.columns.iter().map(|c| c[i]).collect();
            *margin += config.learning_rate * tree.predict(&row);
        }
        trees.push(WeightedTree {
            tree,
            weight: config.learning_rate,
        });
        losses.push(logistic_loss(&margins, targets));
    }
    (trees, base_score, losses)
}
