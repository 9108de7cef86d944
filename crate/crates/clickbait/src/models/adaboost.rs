//! AdaBoost (SAMME, binary) over shallow weighted trees, depth-1 stumps by
//! default.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::tree::{build_tree, TreeData, TreeParams};
use super::{ModelError, TrainConfig, WeightedTree};

const ERR_FLOOR: f64 = 1e-10;

pub fn fit(
    data: &TreeData,
    targets: &[f64],
    config: &TrainConfig,
) -> Result<Vec<WeightedTree>, ModelError> {
    let n = data.n_rows();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut weights = vec![1.0 / n as f64; n];
    let params = TreeParams {
        max_depth: config.tree_depth_max,
        min_leaf: config.min_leaf,
        feature_fraction: 1.0,
    };
    let mut trees = Vec::with_capacity(config.n_trees);
    for _ in 0..config.n_trees {
        let tree = build_tree(data, targets, &weights, params, &mut rng);
        // stump prediction: leaf positive fraction >= 0.5 means class 1
        let predictions: Vec<bool> = (0..n)
            .map(|i| {
                let row: Vec<f64> = data.columns.iter().map(|c| c[i]).collect();
                tree.predict(&row) >= 0.5
            })
            .collect();
        let total: f64 = weights.iter().sum();
        let err: f64 = weights
            .iter()
            .zip(&predictions)
            .zip(targets)
            .filter(|((_, &pred), &y)| pred != (y == 1.0))
            .map(|((w, _), _)| w)
            .sum::<f64>()
            / total;
        // a round no better than chance halts boosting
        if err >= 0.5 {
            break;
        }
        let bounded = err.clamp(ERR_FLOOR, 1.0 - ERR_FLOOR);
        let alpha = ((1.0 - bounded) / bounded).ln();
        for ((w, &pred), &y) in weights.iter_mut().zip(&predictions).zip(targets) {
            if pred != (y == 1.0) {
                *w *= alpha.exp();
            }
        }
        let norm: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= norm;
        }
        let stop = err <= ERR_FLOOR;
        trees.push(WeightedTree {
            tree,
            weight: alpha,
        });
        if stop {
            break;
        }
    }
    if trees.is_empty() {
        return Err(ModelError::NoUsableRound);
    }
    Ok(trees)
}
