//! Acceptance gate: one test per release criterion, each ending in a single
//! PASS line (visible with `--nocapture`). The dataset-replication criteria
//! need the real corpora on disk; point `CLICKBAIT17_DIR` at a directory
//! holding `train/` and `validation/` subdirectories (or the official
//! `clickbait17-train-170331` / `clickbait17-train-170630` names), each with
//! `instances.jsonl` and `truth.jsonl`. Without it those tests skip.

use std::collections::BTreeSet;
use std::path::PathBuf;

use clickbait::corpus::{self, Dataset, PostInstance, Schema, TruthLabel};
use clickbait::eval;
use clickbait::features::{self, FeatureCatalog};
use clickbait::models::{Algorithm, TrainConfig};
use clickbait::selection::{self, FeatureMatrix};
use clickbait::textstats::{self, ContentField, WordList, MISSING};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------------------
// criterion 1: feature-catalog property suite

/// Deterministic synthetic instance; `mask` bits select which of the seven
/// content fields are present, extra bits vary image/timestamp presence.
fn synth_instance(i: usize) -> PostInstance {
    let mask = i % 128;
    let present = |bit: usize| mask >> bit & 1 == 1;
    let filler = |tag: &str| {
        format!(
            "{tag} sample text number {i} with some, punctuation? and a #tag @user rt ... extra"
        )
    };
    let list = |tag: &str, n: usize| -> Vec<String> {
        (0..n).map(|j| filler(&format!("{tag}{j}"))).collect()
    };
    PostInstance {
        id: format!("syn{i}"),
        post_title: present(0).then(|| filler("title")),
        post_timestamp: (i % 3 != 0).then(|| {
            chrono::DateTime::parse_from_rfc3339("2017-01-01T08:00:00Z")
                .unwrap()
                .with_timezone(&chrono::Utc)
                + chrono::Duration::minutes(i as i64)
        }),
        image_ref: (i % 5 != 0).then(|| format!("img{i}.png")),
        image_text: present(1).then(|| filler("ocr")),
        article_title: present(2).then(|| filler("headline")),
        article_description: present(3).then(|| filler("desc")),
        article_keywords: present(4).then(|| {
            vec!["sample".to_string(), format!("keyword{i}"), "text".to_string()]
        }),
        article_captions: present(5).then(|| list("cap", 1 + i % 3)),
        article_paragraphs: present(6).then(|| list("para", 1 + i % 4)),
    }
}

fn check_invariants(p: &PostInstance, dict: &WordList) {
    let v = features::extract_all(p, dict, None);
    assert_eq!(v.values.len(), 188);
    assert!(v.values.iter().all(|x| x.is_finite()));

    let get = |name: &str| v.get(name).unwrap_or_else(|| panic!("no feature {name}"));
    let fields = ContentField::ALL;

    // per-field sentinel discipline for character counts
    let counts: Vec<f64> = fields
        .iter()
        .map(|f| get(&format!("num of characters in {}", f.display_name())))
        .collect();
    let word_counts: Vec<f64> = fields
        .iter()
        .map(|f| get(&format!("num of words in {}", f.display_name())))
        .collect();
    for (f, &c) in fields.iter().zip(&counts) {
        match p.content(*f) {
            v if v.is_absent() => {
                assert_eq!(c, MISSING, "{} should be sentinel", f.display_name())
            }
            // an empty list has no mean length; it also yields the sentinel
            clickbait::textstats::ContentValue::List(items) if items.is_empty() => {
                assert_eq!(c, MISSING)
            }
            _ => assert!(c >= 0.0),
        }
    }

    // pairwise diff symmetry and ratio reciprocity over both count modes
    for (mode, counts) in [("characters", &counts), ("words", &word_counts)] {
        for (xi, x) in fields.iter().enumerate() {
            for (yi, y) in fields.iter().enumerate().skip(xi + 1) {
                let diff = get(&format!(
                    "diff num of {mode} {} & {}",
                    x.display_name(),
                    y.display_name()
                ));
                let ratio = get(&format!(
                    "num of {mode} ratio {} & {}",
                    x.display_name(),
                    y.display_name()
                ));
                let (cx, cy) = (counts[xi], counts[yi]);
                if cx < 0.0 || cy < 0.0 {
                    assert_eq!(diff, MISSING);
                } else {
                    assert_eq!(diff, (cx - cy).abs());
                    assert_eq!(diff, (cy - cx).abs(), "diff must be symmetric");
                }
                if cx < 0.0 || cy <= 0.0 {
                    assert_eq!(ratio, MISSING);
                } else {
                    assert_eq!(ratio, cx / cy);
                    if cx > 0.0 {
                        // forward and reverse ratios are reciprocal
                        assert!((ratio * (cy / cx) - 1.0).abs() < 1e-12);
                    }
                }
            }
        }
    }

    // formal/informal counts partition the distinct-word set
    for f in &fields {
        let name = f.display_name();
        let formal = get(&format!("num of formal words in {name}"));
        let informal = get(&format!("num of informal words in {name}"));
        let pf = get(&format!("percent of formal words in {name}"));
        let pi = get(&format!("percent of informal words in {name}"));
        let word_set = textstats::words(p.content(*f));
        if p.content(*f).is_absent() || word_set.is_empty() {
            assert!([formal, informal, pf, pi].iter().all(|&x| x == MISSING));
        } else {
            let total = word_set.len() as f64;
            assert_eq!(formal + informal, total, "partition must cover all words");
            assert!(formal >= 0.0 && informal >= 0.0);
            assert!((pf + pi - 1.0).abs() < 1e-12);
            assert!((pf - formal / total).abs() < 1e-12);
        }
    }
}

#[test]
fn criterion_1_feature_catalog_properties() {
    let dict = WordList::bundled();
    assert_eq!(FeatureCatalog::get().len(), 188);
    let instances: Vec<PostInstance> = (0..200).map(synth_instance).collect();
    // every 7-field absence pattern appears at least once in 200 instances
    let patterns: BTreeSet<usize> = (0..200).map(|i| i % 128).collect();
    assert_eq!(patterns.len(), 128);
    for p in &instances {
        check_invariants(p, &dict);
    }

    // randomized text still satisfies every invariant
    let mut runner = proptest::test_runner::TestRunner::new(proptest::test_runner::Config {
        cases: 64,
        ..Default::default()
    });
    let text = || proptest::string::string_regex("[ -~\\u{e9}\\u{2026}]{0,60}").unwrap();
    let strategy = (
        proptest::option::of(text()),
        proptest::option::of(text()),
        proptest::option::of(proptest::collection::vec(text(), 0..4)),
    );
    runner
        .run(&strategy, |(title, desc, paragraphs)| {
            let p = PostInstance {
                id: "prop".into(),
                post_title: title,
                article_description: desc,
                article_paragraphs: paragraphs,
                ..PostInstance::default()
            };
            check_invariants(&p, &dict);
            Ok(())
        })
        .unwrap();
    println!("ACCEPTANCE 1 feature-catalog property suite: PASS");
}

// ---------------------------------------------------------------------------
// criterion 2: information-gain oracle

fn entropy_oracle(labels: &[u8]) -> f64 {
    let n = labels.len() as f64;
    let pos = labels.iter().filter(|&&l| l == 1).count() as f64;
    let mut h = 0.0;
    for c in [pos, n - pos] {
        if c > 0.0 {
            h -= (c / n) * (c / n).log2();
        }
    }
    h
}

/// Independent re-derivation: enumerate the equal-frequency bin partition
/// explicitly, then accumulate conditional entropy bin by bin.
fn info_gain_oracle(column: &[f64], labels: &[u8], bins: usize) -> f64 {
    let mut present: Vec<f64> = column.iter().copied().filter(|&v| v != -1.0).collect();
    present.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut edges = Vec::new();
    for b in 1..bins {
        let idx = b * present.len() / bins;
        if idx >= 1 && idx <= present.len() - 1 {
            let e = present[idx - 1];
            if edges.last() != Some(&e) {
                edges.push(e);
            }
        }
    }
    let assign: Vec<usize> = column
        .iter()
        .map(|&v| {
            if v == -1.0 {
                0
            } else {
                let mut bin = 1;
                for &e in &edges {
                    if v > e {
                        bin += 1;
                    }
                }
                bin
            }
        })
        .collect();
    let n = labels.len() as f64;
    let mut conditional = 0.0;
    for bin in 0..=bins {
        let members: Vec<u8> = assign
            .iter()
            .zip(labels)
            .filter(|(&a, _)| a == bin)
            .map(|(_, &l)| l)
            .collect();
        if !members.is_empty() {
            conditional += members.len() as f64 / n * entropy_oracle(&members);
        }
    }
    (entropy_oracle(labels) - conditional).max(0.0)
}

#[test]
fn criterion_2_information_gain_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2001);
    for trial in 0..50 {
        let n = 30;
        let labels: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        let bins = rng.gen_range(2..=6);
        for feature in 0..5 {
            // discrete values with repeats and sentinels to stress tie handling
            let column: Vec<f64> = (0..n)
                .map(|_| {
                    if rng.gen_bool(0.2) {
                        -1.0
                    } else {
                        rng.gen_range(0..6) as f64 * 0.5
                    }
                })
                .collect();
            let got = selection::information_gain(&column, &labels, bins).unwrap();
            let want = info_gain_oracle(&column, &labels, bins);
            assert!(
                (got - want).abs() < 1e-9,
                "trial {trial} feature {feature}: {got} vs oracle {want}"
            );
        }
    }
    println!("ACCEPTANCE 2 information-gain oracle equivalence: PASS");
}

// ---------------------------------------------------------------------------
// criterion 3: AUC oracle

fn auc_oracle(scores: &[f64], labels: &[u8]) -> f64 {
    let mut wins = 0.0;
    let mut pairs = 0.0;
    for (sp, _) in scores.iter().zip(labels).filter(|(_, &l)| l == 1) {
        for (sn, _) in scores.iter().zip(labels).filter(|(_, &l)| l == 0) {
            pairs += 1.0;
            if sp > sn {
                wins += 1.0;
            } else if sp == sn {
                wins += 0.5;
            }
        }
    }
    wins / pairs
}

#[test]
fn criterion_3_auc_matches_pairwise_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3001);
    let mut done = 0;
    while done < 100 {
        let n = rng.gen_range(2..=50);
        let labels: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        if !labels.contains(&0) || !labels.contains(&1) {
            continue;
        }
        // quantized scores so ties actually occur
        let scores: Vec<f64> = (0..n).map(|_| rng.gen_range(0..10) as f64 / 10.0).collect();
        let got = eval::auc(&scores, &labels).unwrap();
        let want = auc_oracle(&scores, &labels);
        assert!((got - want).abs() < 1e-12, "{got} vs oracle {want}");
        done += 1;
    }
    println!("ACCEPTANCE 3 AUC oracle equivalence: PASS");
}

// ---------------------------------------------------------------------------
// criterion 4: classifier sanity

fn matrix_from_columns(columns: Vec<Vec<f64>>, labels: Vec<u8>) -> FeatureMatrix {
    let n = labels.len();
    FeatureMatrix {
        feature_names: (0..columns.len()).map(|i| format!("f{i}")).collect(),
        ids: (0..n).map(|i| i.to_string()).collect(),
        columns,
        labels: Some(labels),
    }
}

#[test]
fn criterion_4_classifier_sanity() {
    // XOR: four corners, five copies each
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut labels = Vec::new();
    for &(a, b) in &[(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)] {
        for _ in 0..5 {
            xs.push(a);
            ys.push(b);
            labels.push(u8::from(a != b));
        }
    }
    let matrix = matrix_from_columns(vec![xs, ys], labels.clone());
    let config = TrainConfig {
        n_trees: 50,
        tree_depth_max: 3,
        min_leaf: 1,
        ..TrainConfig::for_algorithm(Algorithm::GradientBoosting)
    };
    let model = clickbait::models::train(&matrix, &config).unwrap();
    assert!(model.trees.len() <= 50);
    let scores = model.predict_matrix(&matrix).unwrap();
    let correct = scores
        .iter()
        .zip(&labels)
        .filter(|(s, &l)| u8::from(**s >= 0.5) == l)
        .count();
    assert_eq!(correct, labels.len(), "XOR training accuracy must be 1.0");

    // degenerate forest == decision tree, exactly, on 20 random fixtures
    let mut rng = ChaCha8Rng::seed_from_u64(4001);
    for trial in 0..20 {
        let n = 40;
        let columns: Vec<Vec<f64>> = (0..6)
            .map(|_| (0..n).map(|_| rng.gen_range(0..8) as f64).collect())
            .collect();
        let labels: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        if !labels.contains(&0) || !labels.contains(&1) {
            continue;
        }
        let m = matrix_from_columns(columns, labels);
        let tree_cfg = TrainConfig::for_algorithm(Algorithm::DecisionTree);
        let forest_cfg = TrainConfig {
            n_trees: 1,
            bootstrap: false,
            feature_fraction: 1.0,
            ..TrainConfig::for_algorithm(Algorithm::RandomForest)
        };
        let tree = clickbait::models::train(&m, &tree_cfg).unwrap();
        let forest = clickbait::models::train(&m, &forest_cfg).unwrap();
        assert_eq!(
            tree.predict_matrix(&m).unwrap(),
            forest.predict_matrix(&m).unwrap(),
            "trial {trial}: degenerate forest must equal the single tree"
        );
    }
    println!("ACCEPTANCE 4 classifier sanity (XOR + degenerate forest): PASS");
}

// ---------------------------------------------------------------------------
// criteria 5-7: dataset replication (skipped without the corpora)

fn corpus_dir(role: &str) -> Option<PathBuf> {
    let root = PathBuf::from(std::env::var_os("CLICKBAIT17_DIR")?);
    let candidates: &[&str] = match role {
        "train" => &["train", "clickbait17-train-170331"],
        _ => &["validation", "clickbait17-train-170630", "clickbait17-validation-170630"],
    };
    candidates
        .iter()
        .map(|c| root.join(c))
        .find(|d| d.join("instances.jsonl").is_file() && d.join("truth.jsonl").is_file())
}

fn load_corpus(dir: &PathBuf) -> Dataset {
    let schema = Schema::default();
    let dataset = corpus::load_instances(&dir.join("instances.jsonl"), &schema).unwrap();
    let labels = corpus::load_truth(&dir.join("truth.jsonl")).unwrap();
    corpus::join(dataset, &labels).unwrap()
}

#[test]
fn criterion_5_title_length_replication() {
    let (Some(train_dir), Some(valid_dir)) = (corpus_dir("train"), corpus_dir("validation"))
    else {
        println!("ACCEPTANCE 5 title-length replication: SKIP (set CLICKBAIT17_DIR)");
        return;
    };
    // (corpus, expected clickbait/legitimate char means, word means)
    let cases = [
        (load_corpus(&train_dir), [71.83, 81.746], [11.787, 12.877]),
        (load_corpus(&valid_dir), [59.288, 74.69], [10.012, 11.898]),
    ];
    for (dataset, chars, words) in &cases {
        let stats = eval::title_length_stats(dataset).unwrap();
        assert!((stats.clickbait_char_mean - chars[0]).abs() <= 2.0, "{stats:?}");
        assert!((stats.legitimate_char_mean - chars[1]).abs() <= 2.0, "{stats:?}");
        assert!((stats.clickbait_word_mean - words[0]).abs() <= 0.8, "{stats:?}");
        assert!((stats.legitimate_word_mean - words[1]).abs() <= 0.8, "{stats:?}");
        for words_mode in [false, true] {
            let (cb, leg) = eval::title_length_samples(dataset, words_mode).unwrap();
            let (t_p, u_p) = eval::significance_test(&cb, &leg).unwrap();
            assert!(t_p < 0.05 && u_p < 0.05, "t={t_p} u={u_p}");
        }
    }
    println!("ACCEPTANCE 5 title-length replication: PASS");
}

fn corpus_matrix(dir: &PathBuf) -> FeatureMatrix {
    let dataset = load_corpus(dir);
    let vectors = features::extract_dataset(&dataset, &WordList::bundled());
    let labels: Vec<u8> = dataset
        .labels
        .as_ref()
        .unwrap()
        .iter()
        .map(|l: &TruthLabel| l.label)
        .collect();
    FeatureMatrix::from_vectors(&vectors, Some(labels))
}

#[test]
fn criterion_6_cross_validation_auc() {
    let (Some(train_dir), Some(valid_dir)) = (corpus_dir("train"), corpus_dir("validation"))
    else {
        println!("ACCEPTANCE 6 cross-validation AUC: SKIP (set CLICKBAIT17_DIR)");
        return;
    };
    let started = std::time::Instant::now();
    let config = TrainConfig::for_algorithm(Algorithm::GradientBoosting);
    for (dir, floor, tag) in [(valid_dir, 0.75, "validation"), (train_dir, 0.67, "train")] {
        let matrix = corpus_matrix(&dir);
        let report =
            eval::cross_validate(&matrix, &config, 10, config.seed, 0.5, 1, tag).unwrap();
        assert!(
            report.aggregate.auc >= floor,
            "{tag}: aggregate AUC {} below {floor}",
            report.aggregate.auc
        );
        println!("  {tag}: aggregate AUC {:.4}", report.aggregate.auc);
    }
    assert!(started.elapsed().as_secs() < 1800, "end-to-end budget exceeded");
    println!("ACCEPTANCE 6 cross-validation AUC: PASS");
}

#[test]
fn criterion_7_ranking_shape() {
    let Some(valid_dir) = corpus_dir("validation") else {
        println!("ACCEPTANCE 7 ranking shape: SKIP (set CLICKBAIT17_DIR)");
        return;
    };
    // reference validation-corpus top-12, in this catalog's pair orientation
    let reference = [
        "num of characters in post title",
        "num of characters ratio post title & post image text",
        "diff num of characters post title & article keywords",
        "diff num of characters post title & post image text",
        "num of words ratio post title & post image text",
        "num of words in post title",
        "num of formal words in post title",
        "num of words ratio post title & article description",
        "num of characters ratio post title & article description",
        "num of characters ratio post title & article title",
        "num of words ratio post title & article title",
        "diff num of words post title & article keywords",
    ];
    let catalog = FeatureCatalog::get();
    for name in &reference {
        assert!(catalog.index_of(name).is_some(), "unknown reference feature {name}");
    }
    let matrix = corpus_matrix(&valid_dir);
    let ranking = selection::rank_features(&matrix, 10).unwrap();
    let top20: BTreeSet<&str> = ranking
        .entries
        .iter()
        .take(20)
        .map(|(n, _)| n.as_str())
        .collect();
    let hits = reference.iter().filter(|n| top20.contains(**n)).count();
    assert!(hits >= 6, "only {hits} of 12 reference features in the top 20");
    println!("ACCEPTANCE 7 ranking shape: PASS ({hits}/12 reference features in top 20)");
}

// ---------------------------------------------------------------------------
// criterion 8: determinism

#[test]
fn criterion_8_pipeline_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let mut inst = String::new();
    let mut truth = String::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8001);
    for i in 0..80 {
        let cls = i % 2;
        let extra = rng.gen_range(0..6);
        let word = if cls == 1 { "unbelievable" } else { "municipal" };
        let title: String = std::iter::repeat(word)
            .take(4 + extra)
            .collect::<Vec<_>>()
            .join(" ");
        inst.push_str(&format!(
            "{{\"id\":\"{i}\",\"postText\":[\"{title} {i}\"],\"targetTitle\":\"{title}\"}}\n"
        ));
        let label = if cls == 1 { "clickbait" } else { "no-clickbait" };
        truth.push_str(&format!("{{\"id\":\"{i}\",\"truthClass\":\"{label}\"}}\n"));
    }
    // identical relative paths in separate directories, so the embedded
    // config headers match byte for byte
    let run = |tag: &str| -> Vec<Vec<u8>> {
        let workdir = dir.path().join(tag);
        std::fs::create_dir_all(&workdir).unwrap();
        std::fs::write(workdir.join("inst.jsonl"), &inst).unwrap();
        std::fs::write(workdir.join("truth.jsonl"), &truth).unwrap();
        let bin = env!("CARGO_BIN_EXE_clickbait");
        let ok = |args: &[&str]| {
            let status = std::process::Command::new(bin)
                .args(args)
                .current_dir(&workdir)
                .status()
                .unwrap();
            assert!(status.success(), "clickbait {args:?} failed");
        };
        ok(&[
            "extract", "--instances", "inst.jsonl", "--truth", "truth.jsonl",
            "--out", "matrix.csv",
        ]);
        ok(&["rank", "--matrix", "matrix.csv", "--out", "ranking.tsv"]);
        ok(&[
            "train", "--matrix", "matrix.csv", "--algorithm", "random_forest",
            "--n-trees", "20", "--out", "model.json",
        ]);
        ok(&[
            "evaluate", "--matrix", "matrix.csv", "--algorithm", "gradient_boosting",
            "--n-trees", "20", "--k-folds", "5", "--out", "eval",
        ]);
        ok(&[
            "predict", "--model", "model.json", "--matrix", "matrix.csv",
            "--out", "scores.csv",
        ]);
        [
            "matrix.csv",
            "ranking.tsv",
            "model.json",
            "eval/report.jsonl",
            "eval/report.txt",
            "scores.csv",
        ]
        .iter()
        .map(|f| std::fs::read(workdir.join(f)).unwrap())
        .collect()
    };

    let first = run("a");
    let second = run("b");
    for (i, (a, b)) in first.iter().zip(&second).enumerate() {
        assert_eq!(a, b, "artifact {i} differs between identical runs");
    }
    println!("ACCEPTANCE 8 determinism (byte-identical reruns): PASS");
}
