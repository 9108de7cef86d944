//! Single CART tree and bagged random forest.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::tree::{build_tree, TreeData, TreeParams};
use super::{TrainConfig, WeightedTree};

fn params(config: &TrainConfig, feature_fraction: f64) -> TreeParams {
    TreeParams {
        max_depth: config.tree_depth_max,
        min_leaf: config.min_leaf,
        feature_fraction,
    }
}

/// One unweighted CART tree over all rows; leaves hold the positive-class
/// fraction.
pub fn fit_single_tree(
    data: &TreeData,
    targets: &[f64],
    config: &TrainConfig,
) -> Vec<WeightedTree> {
    let weights = vec![1.0; data.n_rows()];
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let tree = build_tree(data, targets, &weights, params(config, 1.0), &mut rng);
    vec![WeightedTree { tree, weight: 1.0 }]
}

/// Bagged trees with per-split feature subsampling. Per-tree seeds are
/// drawn up front so parallel training stays deterministic.
pub fn fit_forest(data: &TreeData, targets: &[f64], config: &TrainConfig) -> Vec<WeightedTree> {
    let n = data.n_rows();
    let mut seed_rng = ChaCha8Rng::seed_from_u64(config.seed);
    let seeds: Vec<u64> = (0..config.n_trees).map(|_| seed_rng.gen()).collect();
    seeds
        .into_par_iter()
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let weights = if config.bootstrap {
                let mut counts = vec![0.0f64; n];
                for _ in 0..n {
                    counts[rng.gen_range(0..n)] += 1.0;
                }
                counts
            } else {
                vec![1.0; n]
            };
            let tree = build_tree(
                data,
                targets,
                &weights,
                params(config, config.feature_fraction),
                &mut rng,
            );
            WeightedTree { tree, weight: 1.0 }
        })
        .collect()
}
