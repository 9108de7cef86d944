//! Weighted CART-style regression/classification trees.
//!
//! A single builder serves all four ensemble algorithms: splits minimize the
//! weighted sum of squared deviations of the targets, which for 0/1 targets
//! has the same argmin as the Gini impurity. Leaves hold the weighted mean
//! target. Thresholds are midpoints between consecutive distinct values and
//! ties prefer the lowest feature index, then the lowest threshold.

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A trained tree node. Feature indices refer to the model's active
/// feature subset, in order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TreeNode {
    Split {
        feature: usize,
        threshold: f64,
        left: Box<TreeNode>,
        right: Box<TreeNode>,
    },
    Leaf {
        score: f64,
    },
}

impl TreeNode {
    /// Route a row (values in active-subset order) to its leaf score.
    /// The -1 sentinel is an ordinary numeric value here.
    pub fn predict(&self, row: &[f64]) -> f64 {
        match self {
            TreeNode::Leaf { score } => *score,
            TreeNode::Split {
                feature,
                threshold,
                left,
                right,
            } => {
                if row[*feature] <= *threshold {
                    left.predict(row)
                } else {
                    right.predict(row)
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Split { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }
}

/// Column-major training view with per-column sorted row orders, shared by
/// every tree grown on the same data.
pub struct TreeData {
    pub columns: Vec<Vec<f64>>,
    sorted: Vec<Vec<u32>>,
}

impl TreeData {
    pub fn new(columns: Vec<Vec<f64>>) -> TreeData {
        let sorted = columns
            .iter()
            .map(|col| {
                let mut idx: Vec<u32> = (0..col.len() as u32).collect();
                idx.sort_by(|&a, &b| {
                    col[a as usize]
                        .partial_cmp(&col[b as usize])
                        .expect("finite feature values")
                        .then(a.cmp(&b))
                });
                idx
            })
            .collect();
        TreeData { columns, sorted }
    }

    pub fn n_rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct TreeParams {
    pub max_depth: usize,
    pub min_leaf: usize,
    /// Fraction of features considered at each split (random forests).
    pub feature_fraction: f64,
}

struct Builder<'a> {
    data: &'a TreeData,
    targets: &'a [f64],
    weights: &'a [f64],
    params: TreeParams,
    in_node: Vec<bool>,
}

struct BestSplit {
    feature: usize,
    threshold: f64,
    gain: f64,
}

const MIN_GAIN: f64 = 1e-12;

impl<'a> Builder<'a> {
    /// Weighted (count, sum w, sum w*y, sum w*y^2) of the node rows.
    fn node_moments(&self, rows: &[u32]) -> (usize, f64, f64, f64) {
        let mut n = 0;
        let (mut w, mut wy, mut wyy) = (0.0, 0.0, 0.0);
        for &r in rows {
            let r = r as usize;
            let weight = self.weights[r];
            if weight == 0.0 {
                continue;
            }
            n += 1;
            let y = self.targets[r];
            w += weight;
            wy += weight * y;
            wyy += weight * y * y;
        }
        (n, w, wy, wyy)
    }

    fn best_split(&self, rows: &[u32], rng: &mut ChaCha8Rng) -> Option<BestSplit> {
        let n_features = self.data.columns.len();
        let features: Vec<usize> = if self.params.feature_fraction < 1.0 {
            let count = ((n_features as f64 * self.params.feature_fraction).ceil() as usize)
                .clamp(1, n_features);
            let mut all: Vec<usize> = (0..n_features).collect();
            all.shuffle(rng);
            let mut chosen = all[..count].to_vec();
            chosen.sort_unstable();
            chosen
        } else {
            (0..n_features).collect()
        };

        let (_, w_total, wy_total, wyy_total) = self.node_moments(rows);
        if w_total <= 0.0 {
            return None;
        }
        let parent_sse = wyy_total - wy_total * wy_total / w_total;
        // pure node: nothing to gain
        if parent_sse <= MIN_GAIN {
            return None;
        }

        let mut best: Option<BestSplit> = None;
        for feature in features {
            let col = &self.data.columns[feature];
            let order = &self.data.sorted[feature];
            let mut n_left = 0usize;
            let (mut w_left, mut wy_left, mut wyy_left) = (0.0, 0.0, 0.0);
            let n_node = rows.len();
            let mut seen = 0usize;
            let mut prev_value = f64::NAN;
            for &r in order {
                let r = r as usize;
                if !self.in_node[r] || self.weights[r] == 0.0 {
                    continue;
                }
                let value = col[r];
                // candidate boundary between prev_value and value
                if seen > 0 && value > prev_value {
                    let n_right = n_node - n_left;
                    if n_left >= self.params.min_leaf && n_right >= self.params.min_leaf {
                        let w_right = w_total - w_left;
                        if w_left > 0.0 && w_right > 0.0 {
                            let sse_left = wyy_left - wy_left * wy_left / w_left;
                            let wy_right = wy_total - wy_left;
                            let wyy_right = wyy_total - wyy_left;
                            let sse_right = wyy_right - wy_right * wy_right / w_right;
                            let gain = parent_sse - sse_left - sse_right;
                            // zero-gain splits are admissible on impure
                            // nodes so structure like XOR stays reachable
                            let better = match &best {
                                None => gain >= -MIN_GAIN,
                                Some(b) => gain > b.gain + MIN_GAIN,
                            };
                            if better {
                                best = Some(BestSplit {
                                    feature,
                                    threshold: 0.5 * (prev_value + value),
                                    gain,
                                });
                            }
                        }
                    }
                }
                let weight = self.weights[r];
                n_left += 1;
                seen += 1;
                w_left += weight;
                wy_left += weight * self.targets[r];
                wyy_left += weight * self.targets[r] * self.targets[r];
                prev_value = value;
            }
        }
        best
    }

    fn build(&mut self, rows: Vec<u32>, depth: usize, rng: &mut ChaCha8Rng) -> TreeNode {
        let (n, w, wy, _) = self.node_moments(&rows);
        let score = if w > 0.0 { wy / w } else { 0.0 };
        if depth >= self.params.max_depth || n < 2 * self.params.min_leaf {
            return TreeNode::Leaf { score };
        }
        for &r in &rows {
            self.in_node[r as usize] = true;
        }
        let split = self.best_split(&rows, rng);
        for &r in &rows {
            self.in_node[r as usize] = false;
        }
        let Some(split) = split else {
            return TreeNode::Leaf { score };
        };
        let col = &self.data.columns[split.feature];
        let (left_rows, right_rows): (Vec<u32>, Vec<u32>) = rows
            .into_iter()
            .partition(|&r| col[r as usize] <= split.threshold);
        let left = self.build(left_rows, depth + 1, rng);
        let right = self.build(right_rows, depth + 1, rng);
        TreeNode::Split {
            feature: split.feature,
            threshold: split.threshold,
            left: Box::new(left),
            right: Box::new(right),
        }
    }
}

/// Grow one tree on the weighted rows (weight 0 excludes a row).
pub fn build_tree(
    data: &TreeData,
    targets: &[f64],
    weights: &[f64],
    params: TreeParams,
    rng: &mut ChaCha8Rng,
) -> TreeNode {
    assert_eq!(targets.len(), data.n_rows());
    assert_eq!(weights.len(), data.n_rows());
    let rows: Vec<u32> = (0..data.n_rows() as u32)
        .filter(|&r| weights[r as usize] > 0.0)
        .collect();
    let mut builder = Builder {
        data,
        targets,
        weights,
        params,
        in_node: vec![false; data.n_rows()],
    };
    builder.build(rows, 0, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    fn params(depth: usize) -> TreeParams {
        TreeParams {
            max_depth: depth,
            min_leaf: 1,
            feature_fraction: 1.0,
        }
    }

    #[test]
    fn separable_feature_yields_depth_one_tree() {
        let data = TreeData::new(vec![vec![0.0, 0.0, 1.0, 1.0]]);
        let targets = [0.0, 0.0, 1.0, 1.0];
        let weights = [1.0; 4];
        let tree = build_tree(&data, &targets, &weights, params(4), &mut rng());
        assert_eq!(tree.depth(), 1);
        assert_eq!(tree.predict(&[0.0]), 0.0);
        assert_eq!(tree.predict(&[1.0]), 1.0);
    }

    #[test]
    fn constant_feature_yields_base_rate_leaf() {
        let data = TreeData::new(vec![vec![3.0; 4]]);
        let targets = [1.0, 0.0, 0.0, 0.0];
        let weights = [1.0; 4];
        let tree = build_tree(&data, &targets, &weights, params(4), &mut rng());
        assert_eq!(tree, TreeNode::Leaf { score: 0.25 });
    }

    #[test]
    fn threshold_is_midpoint() {
        let data = TreeData::new(vec![vec![1.0, 3.0]]);
        let targets = [0.0, 1.0];
        let weights = [1.0; 2];
        let tree = build_tree(&data, &targets, &weights, params(2), &mut rng());
        match tree {
            TreeNode::Split { threshold, .. } => assert_eq!(threshold, 2.0),
            other => panic!("expected split, got {other:?}"),
        }
    }

    #[test]
    fn tie_break_prefers_lower_feature_index() {
        // both features split perfectly
        let data = TreeData::new(vec![vec![0.0, 1.0], vec![0.0, 1.0]]);
        let targets = [0.0, 1.0];
        let weights = [1.0; 2];
        let tree = build_tree(&data, &targets, &weights, params(1), &mut rng());
        match tree {
            TreeNode::Split { feature, .. } => assert_eq!(feature, 0),
            other => panic!("expected split, got {other:?}"),
        }
    }

    #[test]
    fn min_leaf_blocks_small_splits() {
        let data = TreeData::new(vec![vec![0.0, 1.0, 2.0, 3.0]]);
        let targets = [0.0, 0.0, 0.0, 1.0];
        let weights = [1.0; 4];
        let p = TreeParams {
            max_depth: 3,
            min_leaf: 2,
            feature_fraction: 1.0,
        };
        let tree = build_tree(&data, &targets, &weights, p, &mut rng());
        // only the 2/2 boundary is admissible
        match tree {
            TreeNode::Split { threshold, .. } => assert_eq!(threshold, 1.5),
            TreeNode::Leaf { .. } => panic!("expected a split"),
        }
    }

    #[test]
    fn zero_weight_rows_are_ignored() {
        let data = TreeData::new(vec![vec![0.0, 1.0, 2.0]]);
        let targets = [0.0, 1.0, 0.0];
        let weights = [1.0, 1.0, 0.0];
        let tree = build_tree(&data, &targets, &weights, params(3), &mut rng());
        assert_eq!(tree.predict(&[0.0]), 0.0);
        assert_eq!(tree.predict(&[1.0]), 1.0);
        // excluded row follows the learned structure, not its own label
        assert_eq!(tree.predict(&[2.0]), 1.0);
    }

    #[test]
    fn sentinel_routes_like_any_number() {
        let data = TreeData::new(vec![vec![-1.0, -1.0, 5.0, 6.0]]);
        let targets = [0.0, 0.0, 1.0, 1.0];
        let weights = [1.0; 4];
        let tree = build_tree(&data, &targets, &weights, params(2), &mut rng());
        assert_eq!(tree.predict(&[-1.0]), 0.0);
        assert_eq!(tree.predict(&[5.5]), 1.0);
    }
}
