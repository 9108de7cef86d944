//! Information-gain feature ranking over a labeled feature matrix.
//!
//! Columns are discretized before scoring: the `-1` missing sentinel gets a
//! bin of its own and the remaining values are split into equal-frequency
//! bins with duplicate boundaries merged.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use rayon::prelude::*;
use thiserror::Error;

use crate::features::{FeatureCatalog, FeatureVector};
use crate::textstats::MISSING;

#[derive(Debug, Error)]
pub enum SelectionError {
    #[error("labels are empty")]
    EmptyLabels,
    #[error("column length {column} does not match label length {labels}")]
    LengthMismatch { column: usize, labels: usize },
    #[error("matrix has no labels; ranking needs a labeled matrix")]
    Unlabeled,
    #[error("k = {k} is out of range 1..={max}")]
    KOutOfRange { k: usize, max: usize },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
}

/// Column-major feature matrix with optional aligned labels.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    pub feature_names: Vec<String>,
    pub ids: Vec<String>,
    /// One column per feature name, each of length `ids.len()`.
    pub columns: Vec<Vec<f64>>,
    pub labels: Option<Vec<u8>>,
}

impl FeatureMatrix {
    pub fn n_instances(&self) -> usize {
        self.ids.len()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.feature_names
            .iter()
            .position(|n| n == name)
            .map(|i| self.columns[i].as_slice())
    }

    /// Assemble a matrix from per-instance vectors in catalog order.
    pub fn from_vectors(vectors: &[FeatureVector], labels: Option<Vec<u8>>) -> FeatureMatrix {
        let catalog = FeatureCatalog::get();
        let n = vectors.len();
        let mut columns = vec![Vec::with_capacity(n); catalog.len()];
        for v in vectors {
            assert_eq!(v.values.len(), catalog.len());
            for (col, &val) in columns.iter_mut().zip(&v.values) {
                col.push(val);
            }
        }
        FeatureMatrix {
            feature_names: catalog.names().to_vec(),
            ids: vectors.iter().map(|v| v.instance_id.clone()).collect(),
            columns,
            labels,
        }
    }

    /// One instance's values across all columns.
    pub fn row(&self, idx: usize) -> Vec<f64> {
        self.columns.iter().map(|c| c[idx]).collect()
    }

    /// Sub-matrix restricted to the given instance indices.
    pub fn subset_rows(&self, indices: &[usize]) -> FeatureMatrix {
        FeatureMatrix {
            feature_names: self.feature_names.clone(),
            ids: indices.iter().map(|&i| self.ids[i].clone()).collect(),
            columns: self
                .columns
                .iter()
                .map(|c| indices.iter().map(|&i| c[i]).collect())
                .collect(),
            labels: self
                .labels
                .as_ref()
                .map(|l| indices.iter().map(|&i| l[i]).collect()),
        }
    }

    /// Write the comma-separated export: header then one row per instance,
    /// `-1` sentinels verbatim. Feature names contain no commas.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        let mut header = String::from("id");
        if self.labels.is_some() {
            header.push_str(",label");
        }
        for name in &self.feature_names {
            debug_assert!(!name.contains(','));
            header.push(',');
            header.push_str(name);
        }
        writeln!(out, "{header}")?;
        for i in 0..self.n_instances() {
            let mut line = self.ids[i].clone();
            if let Some(labels) = &self.labels {
                line.push(',');
                line.push_str(&labels[i].to_string());
            }
            for col in &self.columns {
                line.push(',');
                line.push_str(&col[i].to_string());
            }
            writeln!(out, "{line}")?;
        }
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R, source: &str) -> Result<FeatureMatrix, SelectionError> {
        let mut lines = BufReader::new(reader).lines().enumerate();
        let header = loop {
            match lines.next() {
                Some((idx, line)) => {
                    let line = line.map_err(|e| SelectionError::Io {
                        path: source.to_string(),
                        source: e,
                    })?;
                    // leading comment lines carry the run config
                    if line.starts_with('#') || line.trim().is_empty() {
                        continue;
                    }
                    break (idx, line);
                }
                None => {
                    return Err(SelectionError::Parse {
                        path: source.to_string(),
                        line: 0,
                        message: "empty matrix file".to_string(),
                    })
                }
            }
        };
        let (_, header_line) = header;
        let mut fields = header_line.split(',');
        let first = fields.next().unwrap_or_default();
        if first != "id" {
            return Err(SelectionError::Parse {
                path: source.to_string(),
                line: 1,
                message: format!("expected header to start with `id`, got {first:?}"),
            });
        }
        let rest: Vec<&str> = fields.collect();
        let labeled = rest.first() == Some(&"label");
        let feature_names: Vec<String> = rest
            .iter()
            .skip(usize::from(labeled))
            .map(|s| s.to_string())
            .collect();

        let mut ids = Vec::new();
        let mut labels: Option<Vec<u8>> = labeled.then(Vec::new);
        let mut columns = vec![Vec::new(); feature_names.len()];
        for (idx, line) in lines {
            let line = line.map_err(|e| SelectionError::Io {
                path: source.to_string(),
                source: e,
            })?;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split(',');
            ids.push(
                parts
                    .next()
                    .ok_or_else(|| parse_err(source, idx + 1, "missing id"))?
                    .to_string(),
            );
            if let Some(labels) = labels.as_mut() {
                let raw = parts
                    .next()
                    .ok_or_else(|| parse_err(source, idx + 1, "missing label"))?;
                labels.push(raw.parse::<u8>().map_err(|_| {
                    parse_err(source, idx + 1, &format!("bad label {raw:?}"))
                })?);
            }
            let mut count = 0;
            for (col, raw) in columns.iter_mut().zip(parts) {
                col.push(raw.parse::<f64>().map_err(|_| {
                    parse_err(source, idx + 1, &format!("bad value {raw:?}"))
                })?);
                count += 1;
            }
            if count != feature_names.len() {
                return Err(parse_err(
                    source,
                    idx + 1,
                    &format!("expected {} values, found {count}", feature_names.len()),
                ));
            }
        }
        Ok(FeatureMatrix {
            feature_names,
            ids,
            columns,
            labels,
        })
    }

    pub fn read_csv_path(path: &Path) -> Result<FeatureMatrix, SelectionError> {
        let display = path.display().to_string();
        let file = std::fs::File::open(path).map_err(|source| SelectionError::Io {
            path: display.clone(),
            source,
        })?;
        FeatureMatrix::read_csv(file, &display)
    }
}

fn parse_err(path: &str, line: usize, message: &str) -> SelectionError {
    SelectionError::Parse {
        path: path.to_string(),
        line,
        message: message.to_string(),
    }
}

/// Shannon entropy of a binary label vector, in bits.
pub fn entropy(labels: &[u8]) -> Result<f64, SelectionError> {
    if labels.is_empty() {
        return Err(SelectionError::EmptyLabels);
    }
    let n = labels.len() as f64;
    let pos = labels.iter().filter(|&&l| l == 1).count() as f64;
    let mut h = 0.0;
    for count in [pos, n - pos] {
        if count > 0.0 {
            let p = count / n;
            h -= p * p.log2();
        }
    }
    Ok(h)
}

/// Bin assignment for one column: the sentinel gets bin 0, remaining values
/// get equal-frequency bins with duplicate boundaries merged.
pub fn discretize(column: &[f64], bins: usize) -> Vec<u32> {
    let mut present: Vec<f64> = column.iter().copied().filter(|&v| v != MISSING).collect();
    present.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let n = present.len();
    let mut edges: Vec<f64> = Vec::new();
    if n > 0 && bins > 1 {
        for b in 1..bins {
            let idx = (b * n) / bins;
            if idx == 0 || idx >= n {
                continue;
            }
            edges.push(present[idx - 1]);
        }
        edges.dedup_by(|a, b| a == b);
    }
    column
        .iter()
        .map(|&v| {
            if v == MISSING {
                0
            } else {
                // first edge >= v determines the bin
                let bin = edges.partition_point(|&e| e < v);
                bin as u32 + 1
            }
        })
        .collect()
}

/// Information gain of a discretized column against the labels.
pub fn information_gain(
    column: &[f64],
    labels: &[u8],
    bins: usize,
) -> Result<f64, SelectionError> {
    if column.len() != labels.len() {
        return Err(SelectionError::LengthMismatch {
            column: column.len(),
            labels: labels.len(),
        });
    }
    let base = entropy(labels)?;
    let assignment = discretize(column, bins);
    let max_bin = assignment.iter().copied().max().unwrap_or(0) as usize;
    // per-bin (total, positives)
    let mut counts = vec![(0usize, 0usize); max_bin + 1];
    for (&bin, &label) in assignment.iter().zip(labels) {
        let entry = &mut counts[bin as usize];
        entry.0 += 1;
        entry.1 += usize::from(label == 1);
    }
    let n = labels.len() as f64;
    let mut conditional = 0.0;
    for (total, pos) in counts {
        if total == 0 {
            continue;
        }
        let t = total as f64;
        let mut h = 0.0;
        for count in [pos as f64, t - pos as f64] {
            if count > 0.0 {
                let p = count / t;
                h -= p * p.log2();
            }
        }
        conditional += (t / n) * h;
    }
    Ok((base - conditional).max(0.0))
}

/// Feature names with gains, descending, ties broken by catalog order.
#[derive(Debug, Clone, PartialEq)]
pub struct GainRanking {
    pub entries: Vec<(String, f64)>,
}

impl GainRanking {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Two-column export: feature name, tab, gain with 6 decimals.
    pub fn write<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        for (name, gain) in &self.entries {
            writeln!(out, "{name}\t{gain:.6}")?;
        }
        Ok(())
    }

    pub fn read<R: Read>(reader: R, source: &str) -> Result<GainRanking, SelectionError> {
        let mut entries = Vec::new();
        for (idx, line) in BufReader::new(reader).lines().enumerate() {
            let line = line.map_err(|e| SelectionError::Io {
                path: source.to_string(),
                source: e,
            })?;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, gain) = line
                .rsplit_once('\t')
                .ok_or_else(|| parse_err(source, idx + 1, "expected `name<TAB>gain`"))?;
            let gain: f64 = gain
                .trim()
                .parse()
                .map_err(|_| parse_err(source, idx + 1, &format!("bad gain {gain:?}")))?;
            entries.push((name.to_string(), gain));
        }
        Ok(GainRanking { entries })
    }
}

/// Rank every column of a labeled matrix by information gain.
pub fn rank_features(matrix: &FeatureMatrix, bins: usize) -> Result<GainRanking, SelectionError> {
    let labels = matrix.labels.as_ref().ok_or(SelectionError::Unlabeled)?;
    let gains: Vec<f64> = matrix
        .columns
        .par_iter()
        .map(|col| information_gain(col, labels, bins))
        .collect::<Result<_, _>>()?;
    let mut order: Vec<usize> = (0..gains.len()).collect();
    order.sort_by(|&a, &b| {
        gains[b]
            .partial_cmp(&gains[a])
            .expect("finite gains")
            .then(a.cmp(&b))
    });
    Ok(GainRanking {
        entries: order
            .into_iter()
            .map(|i| (matrix.feature_names[i].clone(), gains[i]))
            .collect(),
    })
}

/// First `k` feature names of the ranking.
pub fn top_k(ranking: &GainRanking, k: usize) -> Result<Vec<String>, SelectionError> {
    if k == 0 || k > ranking.len() {
        return Err(SelectionError::KOutOfRange {
            k,
            max: ranking.len(),
        });
    }
    Ok(ranking.entries[..k]
        .iter()
        .map(|(name, _)| name.clone())
        .collect())
}

/// Map feature names to column indices of `matrix`, reporting the first
/// missing name.
pub fn resolve_columns(
    matrix: &FeatureMatrix,
    names: &[String],
) -> Result<Vec<usize>, String> {
    let index: HashMap<&str, usize> = matrix
        .feature_names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    names
        .iter()
        .map(|n| index.get(n.as_str()).copied().ok_or_else(|| n.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn entropy_pure_and_balanced() {
        assert_eq!(entropy(&[1, 1, 1]).unwrap(), 0.0);
        assert_eq!(entropy(&[0, 0]).unwrap(), 0.0);
        assert_relative_eq!(entropy(&[0, 1, 0, 1]).unwrap(), 1.0);
    }

    #[test]
    fn entropy_class_prior() {
        // 762 positives out of 2,459
        let mut labels = vec![1u8; 762];
        labels.extend(vec![0u8; 1697]);
        let h = entropy(&labels).unwrap();
        let p: f64 = 762.0 / 2459.0;
        let expect = -(p * p.log2() + (1.0 - p) * (1.0 - p).log2());
        assert_relative_eq!(h, expect, max_relative = 1e-12);
        assert_relative_eq!(h, 0.8930, max_relative = 1e-3);
    }

    #[test]
    fn entropy_empty_is_error() {
        assert!(matches!(entropy(&[]), Err(SelectionError::EmptyLabels)));
    }

    #[test]
    fn gain_perfect_predictor() {
        let labels = [1, 1, 0, 0];
        let column = [1.0, 1.0, 0.0, 0.0];
        let gain = information_gain(&column, &labels, 10).unwrap();
        assert_relative_eq!(gain, entropy(&labels).unwrap(), max_relative = 1e-12);
    }

    #[test]
    fn gain_constant_column_is_zero() {
        let labels = [1, 0, 1, 0];
        let column = [5.0; 4];
        assert_eq!(information_gain(&column, &labels, 10).unwrap(), 0.0);
    }

    #[test]
    fn gain_two_bins_hand_case() {
        let column = [1.0, 1.0, 2.0, 2.0];
        let labels = [1, 1, 0, 0];
        assert_relative_eq!(
            information_gain(&column, &labels, 2).unwrap(),
            1.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn gain_length_mismatch() {
        assert!(matches!(
            information_gain(&[1.0], &[1, 0], 2),
            Err(SelectionError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn sentinel_gets_own_bin() {
        let column = [-1.0, -1.0, 3.0, 4.0];
        let assignment = discretize(&column, 10);
        assert_eq!(assignment[0], 0);
        assert_eq!(assignment[1], 0);
        assert!(assignment[2] > 0 && assignment[3] > 0);
    }

    fn toy_matrix() -> FeatureMatrix {
        FeatureMatrix {
            feature_names: vec!["perfect".into(), "constant".into()],
            ids: (0..4).map(|i| i.to_string()).collect(),
            columns: vec![vec![1.0, 1.0, 0.0, 0.0], vec![7.0; 4]],
            labels: Some(vec![1, 1, 0, 0]),
        }
    }

    #[test]
    fn ranking_orders_by_gain() {
        let ranking = rank_features(&toy_matrix(), 4).unwrap();
        assert_eq!(ranking.entries[0].0, "perfect");
        assert_eq!(ranking.entries[1].0, "constant");
        assert_eq!(ranking.entries[1].1, 0.0);
    }

    #[test]
    fn ranking_is_order_invariant_in_instances() {
        let m = toy_matrix();
        let permuted = m.subset_rows(&[3, 1, 0, 2]);
        assert_eq!(rank_features(&m, 4).unwrap(), rank_features(&permuted, 4).unwrap());
    }

    #[test]
    fn duplicated_column_same_gain() {
        let m = toy_matrix();
        let labels = m.labels.as_ref().unwrap();
        let g1 = information_gain(&m.columns[0], labels, 4).unwrap();
        let dup = m.columns[0].clone();
        let g2 = information_gain(&dup, labels, 4).unwrap();
        assert_eq!(g1, g2);
    }

    #[test]
    fn top_k_bounds() {
        let ranking = rank_features(&toy_matrix(), 4).unwrap();
        assert_eq!(top_k(&ranking, 2).unwrap().len(), 2);
        assert!(matches!(top_k(&ranking, 0), Err(SelectionError::KOutOfRange { .. })));
        assert!(matches!(top_k(&ranking, 3), Err(SelectionError::KOutOfRange { .. })));
    }

    #[test]
    fn csv_roundtrip() {
        let m = toy_matrix();
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        let re = FeatureMatrix::read_csv(buf.as_slice(), "mem").unwrap();
        assert_eq!(m, re);
    }

    #[test]
    fn csv_sentinel_verbatim() {
        let m = FeatureMatrix {
            feature_names: vec!["f".into()],
            ids: vec!["x".into()],
            columns: vec![vec![-1.0]],
            labels: None,
        };
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("x,-1\n"), "got {text:?}");
    }

    #[test]
    fn ranking_roundtrip() {
        let ranking = rank_features(&toy_matrix(), 4).unwrap();
        let mut buf = Vec::new();
        ranking.write(&mut buf).unwrap();
        let re = GainRanking::read(buf.as_slice(), "mem").unwrap();
        assert_eq!(re.entries[0].0, "perfect");
        assert_relative_eq!(re.entries[0].1, ranking.entries[0].1, max_relative = 1e-5);
    }
}
