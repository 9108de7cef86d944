//! Command-line pipeline driver. Stages communicate through documented
//! files: instance/truth JSONL in, feature-matrix CSV, ranking TSV, model
//! JSON, report JSONL/text out. Every artifact embeds the resolved run
//! configuration so identical configs reproduce byte-identical outputs.

use std::error::Error;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use clickbait::corpus::{self, Dataset, Schema};
use clickbait::eval::{self, EvaluationReport};
use clickbait::features;
use clickbait::models::{self, Algorithm, FeatureSubset, TrainConfig};
use clickbait::selection::{self, FeatureMatrix};
use clickbait::textstats::WordList;

#[derive(Parser)]
#[command(
    name = "clickbait",
    about = "Clickbait-post detection pipeline: feature extraction, ranking, training, evaluation"
)]
struct Cli {
    /// TOML config file supplying any flag; explicit flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for intra-stage parallelism (0 = all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract the 188-feature matrix from an instance file.
    Extract(ExtractArgs),
    /// Rank matrix features by information gain.
    Rank(RankArgs),
    /// Train a classifier on a labeled matrix.
    Train(TrainArgs),
    /// 10-fold cross-validate a classifier configuration.
    Evaluate(EvaluateArgs),
    /// Score instances with a trained model.
    Predict(PredictArgs),
    /// Title-length statistics per class with significance tests.
    Stats(StatsArgs),
    /// Re-serialize a dataset in canonical wire form.
    Dump(DumpArgs),
}

#[derive(Args, Serialize)]
struct ExtractArgs {
    #[arg(long)]
    instances: Option<PathBuf>,
    #[arg(long)]
    truth: Option<PathBuf>,
    #[arg(long)]
    schema: Option<PathBuf>,
    #[arg(long)]
    wordlist: Option<PathBuf>,
    /// Fail instead of producing an unlabeled matrix when truth is absent.
    #[arg(long)]
    require_labels: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct RankArgs {
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long)]
    bins: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize, Clone)]
struct ModelOpts {
    #[arg(long)]
    algorithm: Option<Algorithm>,
    /// all | top:K | list:FILE
    #[arg(long)]
    features: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    n_trees: Option<usize>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    learning_rate: Option<f64>,
    #[arg(long)]
    min_leaf: Option<usize>,
    #[arg(long)]
    feature_fraction: Option<f64>,
    #[arg(long)]
    no_bootstrap: bool,
    /// Discretization bins when resolving top:K subsets.
    #[arg(long)]
    bins: Option<usize>,
}

#[derive(Args, Serialize)]
struct TrainArgs {
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[command(flatten)]
    model: ModelOpts,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct EvaluateArgs {
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[command(flatten)]
    model: ModelOpts,
    #[arg(long)]
    k_folds: Option<usize>,
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long)]
    positive_class: Option<u8>,
    /// Output directory for report.txt and report.jsonl.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct PredictArgs {
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct StatsArgs {
    #[arg(long)]
    instances: Option<PathBuf>,
    #[arg(long)]
    truth: Option<PathBuf>,
    #[arg(long)]
    schema: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct DumpArgs {
    #[arg(long)]
    instances: Option<PathBuf>,
    #[arg(long)]
    schema: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

type CliError = Box<dyn Error>;

/// Flat key/value view of the optional TOML config file.
struct FileConfig {
    table: toml::Table,
}

impl FileConfig {
    fn load(path: Option<&Path>) -> Result<FileConfig, CliError> {
        let table = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| format!("cannot read config {}: {e}", p.display()))?;
                text.parse::<toml::Table>()
                    .map_err(|e| format!("config {}: {e}", p.display()))?
            }
            None => toml::Table::new(),
        };
        Ok(FileConfig { table })
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.table.get(key)?.as_str().map(PathBuf::from)
    }

    fn string(&self, key: &str) -> Option<String> {
        self.table.get(key)?.as_str().map(str::to_string)
    }

    fn integer(&self, key: &str) -> Option<i64> {
        self.table.get(key)?.as_integer()
    }

    fn float(&self, key: &str) -> Option<f64> {
        let v = self.table.get(key)?;
        v.as_float().or_else(|| v.as_integer().map(|i| i as f64))
    }

    fn boolean(&self, key: &str) -> Option<bool> {
        self.table.get(key)?.as_bool()
    }
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| format!("missing --{flag} (flag or config key)").into())
}

fn load_schema(path: Option<&Path>) -> Result<Schema, CliError> {
    match path {
        Some(p) => Ok(Schema::from_path(p)?),
        None => Ok(Schema::default()),
    }
}

fn load_wordlist(path: Option<&Path>) -> Result<WordList, CliError> {
    match path {
        Some(p) => Ok(WordList::from_path(p)?),
        None => Ok(WordList::bundled()),
    }
}

fn load_labeled_dataset(
    instances: &Path,
    truth: Option<&Path>,
    schema: &Schema,
) -> Result<Dataset, CliError> {
    let dataset = corpus::load_instances(instances, schema)?;
    match truth {
        Some(t) => {
            let labels = corpus::load_truth(t)?;
            Ok(corpus::join(dataset, &labels)?)
        }
        None => Ok(dataset),
    }
}

/// `# config: {...}` header embedded in every text artifact.
fn config_header<T: Serialize>(stage: &str, resolved: &T) -> String {
    let body = serde_json::to_string(resolved).expect("config serializes");
    format!("# config: {{\"stage\":\"{stage}\",\"options\":{body}}}\n")
}

#[derive(Serialize)]
struct ResolvedModelOpts {
    algorithm: String,
    features: String,
    seed: u64,
    n_trees: usize,
    tree_depth_max: usize,
    learning_rate: f64,
    min_leaf: usize,
    feature_fraction: f64,
    bootstrap: bool,
    bins: usize,
}

fn resolve_train_config(
    opts: &ModelOpts,
    cfg: &FileConfig,
    matrix: &FeatureMatrix,
) -> Result<(TrainConfig, ResolvedModelOpts), CliError> {
    let algorithm = match &opts.algorithm {
        Some(a) => *a,
        None => {
            let name = cfg
                .string("algorithm")
                .ok_or("missing --algorithm (flag or config key)")?;
            name.parse::<Algorithm>()?
        }
    };
    let defaults = TrainConfig::for_algorithm(algorithm);
    let bins = opts
        .bins
        .or_else(|| cfg.integer("bins").map(|i| i as usize))
        .unwrap_or(10);
    let features_spec = opts
        .features
        .clone()
        .or_else(|| cfg.string("features"))
        .unwrap_or_else(|| "all".to_string());
    let feature_subset = parse_feature_subset(&features_spec, matrix, bins)?;
    let config = TrainConfig {
        algorithm,
        feature_subset,
        seed: opts.seed.or_else(|| cfg.integer("seed").map(|i| i as u64)).unwrap_or(42),
        tree_depth_max: opts
            .depth
            .or_else(|| cfg.integer("depth").map(|i| i as usize))
            .unwrap_or(defaults.tree_depth_max),
        n_trees: opts
            .n_trees
            .or_else(|| cfg.integer("n_trees").map(|i| i as usize))
            .unwrap_or(defaults.n_trees),
        learning_rate: opts
            .learning_rate
            .or_else(|| cfg.float("learning_rate"))
            .unwrap_or(defaults.learning_rate),
        min_leaf: opts
            .min_leaf
            .or_else(|| cfg.integer("min_leaf").map(|i| i as usize))
            .unwrap_or(defaults.min_leaf),
        feature_fraction: opts
            .feature_fraction
            .or_else(|| cfg.float("feature_fraction"))
            .unwrap_or(defaults.feature_fraction),
        bootstrap: if opts.no_bootstrap {
            false
        } else {
            cfg.boolean("bootstrap").unwrap_or(defaults.bootstrap)
        },
    };
    let resolved = ResolvedModelOpts {
        algorithm: format!("{algorithm:?}"),
        features: features_spec,
        seed: config.seed,
        n_trees: config.n_trees,
        tree_depth_max: config.tree_depth_max,
        learning_rate: config.learning_rate,
        min_leaf: config.min_leaf,
        feature_fraction: config.feature_fraction,
        bootstrap: config.bootstrap,
        bins,
    };
    Ok((config, resolved))
}

/// `all`, `top:K` (information-gain top K of this matrix), or `list:FILE`
/// (one feature name per line; a trailing tab-separated gain is allowed).
fn parse_feature_subset(
    spec: &str,
    matrix: &FeatureMatrix,
    bins: usize,
) -> Result<FeatureSubset, CliError> {
    if spec == "all" {
        return Ok(FeatureSubset::All);
    }
    if let Some(k) = spec.strip_prefix("top:") {
        let k: usize = k.parse().map_err(|_| format!("bad subset spec {spec:?}"))?;
        let ranking = selection::rank_features(matrix, bins)?;
        return Ok(FeatureSubset::Names(selection::top_k(&ranking, k)?));
    }
    if let Some(file) = spec.strip_prefix("list:") {
        let text = std::fs::read_to_string(file)
            .map_err(|e| format!("cannot read feature list {file}: {e}"))?;
        let names: Vec<String> = text
            .lines()
            .map(|l| l.split('\t').next().unwrap_or(l).trim())
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_string)
            .collect();
        return Ok(FeatureSubset::Names(names));
    }
    Err(format!("bad --features value {spec:?} (expected all, top:K, or list:FILE)").into())
}

fn write_artifact(path: &Path, header: &str, body: &[u8]) -> Result<(), CliError> {
    let mut out = Vec::with_capacity(header.len() + body.len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(body);
    std::fs::write(path, out).map_err(|e| format!("cannot write {}: {e}", path.display()).into())
}

fn cmd_extract(args: ExtractArgs, cfg: &FileConfig) -> Result<(), CliError> {
    let instances = required(args.instances.or_else(|| cfg.path("instances")), "instances")?;
    let truth = args.truth.or_else(|| cfg.path("truth"));
    let schema_path = args.schema.or_else(|| cfg.path("schema"));
    let wordlist_path = args.wordlist.or_else(|| cfg.path("wordlist"));
    let out = required(args.out.or_else(|| cfg.path("out")), "out")?;
    let require_labels = args.require_labels || cfg.boolean("require_labels").unwrap_or(false);

    if require_labels && truth.is_none() {
        return Err("--require-labels set but no --truth given".into());
    }
    let schema = load_schema(schema_path.as_deref())?;
    let wordlist = load_wordlist(wordlist_path.as_deref())?;
    let dataset = load_labeled_dataset(&instances, truth.as_deref(), &schema)?;
    if dataset.is_empty() {
        eprintln!("warning: {} contains no instances", instances.display());
    }
    let vectors = features::extract_dataset(&dataset, &wordlist);
    let labels = dataset
        .labels
        .as_ref()
        .map(|ls| ls.iter().map(|l| l.label).collect());
    let matrix = FeatureMatrix::from_vectors(&vectors, labels);

    #[derive(Serialize)]
    struct Resolved<'a> {
        instances: &'a Path,
        truth: Option<&'a Path>,
        schema: Option<&'a Path>,
        wordlist: &'a str,
        require_labels: bool,
    }
    let header = config_header(
        "extract",
        &Resolved {
            instances: &instances,
            truth: truth.as_deref(),
            schema: schema_path.as_deref(),
            wordlist: wordlist.source_name(),
            require_labels,
        },
    );
    let mut body = Vec::new();
    matrix.write_csv(&mut body)?;
    write_artifact(&out, &header, &body)?;
    eprintln!(
        "extracted {} instances x {} features -> {}",
        matrix.n_instances(),
        matrix.n_features(),
        out.display()
    );
    Ok(())
}

fn cmd_rank(args: RankArgs, cfg: &FileConfig) -> Result<(), CliError> {
    let matrix_path = required(args.matrix.or_else(|| cfg.path("matrix")), "matrix")?;
    let bins = args
        .bins
        .or_else(|| cfg.integer("bins").map(|i| i as usize))
        .unwrap_or(10);
    let out = required(args.out.or_else(|| cfg.path("out")), "out")?;

    if bins < 2 {
        eprintln!("warning: bins={bins} makes every gain 0 (single-bin degeneracy)");
    }
    let matrix = FeatureMatrix::read_csv_path(&matrix_path)?;
    let ranking = selection::rank_features(&matrix, bins)?;

    #[derive(Serialize)]
    struct Resolved<'a> {
        matrix: &'a Path,
        bins: usize,
    }
    let header = config_header("rank", &Resolved { matrix: &matrix_path, bins });
    let mut body = Vec::new();
    ranking.write(&mut body)?;
    write_artifact(&out, &header, &body)?;

    let mut stdout = std::io::stdout().lock();
    writeln!(stdout, "rank  gain      feature")?;
    for (i, (name, gain)) in ranking.entries.iter().take(12).enumerate() {
        writeln!(stdout, "{:>4}  {gain:.6}  {name}", i + 1)?;
    }
    Ok(())
}

fn cmd_train(args: TrainArgs, cfg: &FileConfig) -> Result<(), CliError> {
    let matrix_path = required(args.matrix.or_else(|| cfg.path("matrix")), "matrix")?;
    let out = required(args.out.or_else(|| cfg.path("out")), "out")?;
    let matrix = FeatureMatrix::read_csv_path(&matrix_path)?;
    let (config, _) = resolve_train_config(&args.model, cfg, &matrix)?;
    let model = models::train(&matrix, &config)?;
    models::save_model(&model, &out)?;
    eprintln!(
        "trained {:?} on {} instances ({} trees) -> {}",
        config.algorithm,
        matrix.n_instances(),
        model.trees.len(),
        out.display()
    );
    Ok(())
}

fn render_report(report: &EvaluationReport) -> String {
    let mut text = String::new();
    text.push_str("fold  auc     accuracy precision recall\n");
    for (i, m) in report.per_fold.iter().enumerate() {
        text.push_str(&format!(
            "{:>4}  {:.4}  {:.4}   {:.4}    {:.4}\n",
            i, m.auc, m.accuracy, m.precision, m.recall
        ));
    }
    for (tag, m) in [("mean", &report.aggregate), ("pool", &report.pooled)] {
        text.push_str(&format!(
            "{tag}  {:.4}  {:.4}   {:.4}    {:.4}\n",
            m.auc, m.accuracy, m.precision, m.recall
        ));
    }
    text
}

fn cmd_evaluate(args: EvaluateArgs, cfg: &FileConfig) -> Result<(), CliError> {
    let matrix_path = required(args.matrix.or_else(|| cfg.path("matrix")), "matrix")?;
    let out_dir = required(args.out.or_else(|| cfg.path("out")), "out")?;
    let k = args
        .k_folds
        .or_else(|| cfg.integer("k_folds").map(|i| i as usize))
        .unwrap_or(10);
    let threshold = args
        .threshold
        .or_else(|| cfg.float("threshold"))
        .unwrap_or(0.5);
    let positive_class = args
        .positive_class
        .or_else(|| cfg.integer("positive_class").map(|i| i as u8))
        .unwrap_or(1);

    let matrix = FeatureMatrix::read_csv_path(&matrix_path)?;
    let (config, resolved) = resolve_train_config(&args.model, cfg, &matrix)?;
    let dataset_id = matrix_path
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_default();
    let report = eval::cross_validate(
        &matrix,
        &config,
        k,
        config.seed,
        threshold,
        positive_class,
        &dataset_id,
    )?;
    // the opposite orientation is reported alongside, since the reference
    // results leave the scored class ambiguous
    let flipped = eval::cross_validate(
        &matrix,
        &config,
        k,
        config.seed,
        threshold,
        1 - positive_class,
        &dataset_id,
    )?;

    std::fs::create_dir_all(&out_dir)
        .map_err(|e| format!("cannot create {}: {e}", out_dir.display()))?;

    #[derive(Serialize)]
    struct Resolved<'a> {
        matrix: &'a Path,
        k_folds: usize,
        threshold: f64,
        positive_class: u8,
        #[serde(flatten)]
        model: &'a ResolvedModelOpts,
    }
    let header = config_header(
        "evaluate",
        &Resolved {
            matrix: &matrix_path,
            k_folds: k,
            threshold,
            positive_class,
            model: &resolved,
        },
    );

    let mut jsonl = String::new();
    for (i, m) in report.per_fold.iter().enumerate() {
        let mut line = serde_json::to_value(m).unwrap();
        line["fold"] = i.into();
        jsonl.push_str(&serde_json::to_string(&line).unwrap());
        jsonl.push('\n');
    }
    for (tag, m) in [("aggregate", &report.aggregate), ("pooled", &report.pooled)] {
        let mut line = serde_json::to_value(m).unwrap();
        line["kind"] = tag.into();
        jsonl.push_str(&serde_json::to_string(&line).unwrap());
        jsonl.push('\n');
    }
    jsonl.push_str(&serde_json::to_string(&report)?);
    jsonl.push('\n');
    write_artifact(&out_dir.join("report.jsonl"), &header, jsonl.as_bytes())?;

    let mut text = format!("positive class {positive_class}\n");
    text.push_str(&render_report(&report));
    text.push_str(&format!("\npositive class {}\n", 1 - positive_class));
    text.push_str(&render_report(&flipped));
    write_artifact(&out_dir.join("report.txt"), &header, text.as_bytes())?;

    println!(
        "aggregate: auc {:.4} accuracy {:.4} precision {:.4} recall {:.4}",
        report.aggregate.auc,
        report.aggregate.accuracy,
        report.aggregate.precision,
        report.aggregate.recall
    );
    Ok(())
}

fn cmd_predict(args: PredictArgs, cfg: &FileConfig) -> Result<(), CliError> {
    let model_path = required(args.model.or_else(|| cfg.path("model")), "model")?;
    let matrix_path = required(args.matrix.or_else(|| cfg.path("matrix")), "matrix")?;
    let out = required(args.out.or_else(|| cfg.path("out")), "out")?;
    let threshold = args
        .threshold
        .or_else(|| cfg.float("threshold"))
        .unwrap_or(0.5);

    let model = models::load_model(&model_path)?;
    let matrix = FeatureMatrix::read_csv_path(&matrix_path)?;
    let scores = model.predict_matrix(&matrix)?;

    #[derive(Serialize)]
    struct Resolved<'a> {
        model: &'a Path,
        matrix: &'a Path,
        threshold: f64,
        seed: u64,
    }
    let header = config_header(
        "predict",
        &Resolved {
            model: &model_path,
            matrix: &matrix_path,
            threshold,
            seed: model.config.seed,
        },
    );
    let mut body = String::from("id,score,predicted_class\n");
    for (id, score) in matrix.ids.iter().zip(&scores) {
        let class = u8::from(*score >= threshold);
        body.push_str(&format!("{id},{score},{class}\n"));
    }
    write_artifact(&out, &header, body.as_bytes())?;
    eprintln!("scored {} instances -> {}", scores.len(), out.display());
    Ok(())
}

fn cmd_stats(args: StatsArgs, cfg: &FileConfig) -> Result<(), CliError> {
    let instances = required(args.instances.or_else(|| cfg.path("instances")), "instances")?;
    let truth = required(args.truth.or_else(|| cfg.path("truth")), "truth")?;
    let schema_path = args.schema.or_else(|| cfg.path("schema"));
    let out = args.out.or_else(|| cfg.path("out"));

    let schema = load_schema(schema_path.as_deref())?;
    let dataset = load_labeled_dataset(&instances, Some(&truth), &schema)?;
    let stats = eval::title_length_stats(&dataset)?;
    let (char_cb, char_leg) = eval::title_length_samples(&dataset, false)?;
    let (word_cb, word_leg) = eval::title_length_samples(&dataset, true)?;
    let (char_t_p, char_u_p) = eval::significance_test(&char_cb, &char_leg)?;
    let (word_t_p, word_u_p) = eval::significance_test(&word_cb, &word_leg)?;

    #[derive(Serialize)]
    struct Resolved<'a> {
        instances: &'a Path,
        truth: &'a Path,
        schema: Option<&'a Path>,
    }
    let header = config_header(
        "stats",
        &Resolved {
            instances: &instances,
            truth: &truth,
            schema: schema_path.as_deref(),
        },
    );
    let body = format!(
        "measure                      clickbait   legitimate\n\
         num of chars in post title   {:<11.3} {:<11.3}\n\
         num of words in post title   {:<11.3} {:<11.3}\n\
         \n\
         significance (two-sided p-values)\n\
         chars: welch t {:.6}  mann-whitney u {:.6}\n\
         words: welch t {:.6}  mann-whitney u {:.6}\n\
         titled instances: {} clickbait, {} legitimate\n",
        stats.clickbait_char_mean,
        stats.legitimate_char_mean,
        stats.clickbait_word_mean,
        stats.legitimate_word_mean,
        char_t_p,
        char_u_p,
        word_t_p,
        word_u_p,
        stats.clickbait_titled,
        stats.legitimate_titled,
    );
    match out {
        Some(path) => write_artifact(&path, &header, body.as_bytes())?,
        None => print!("{body}"),
    }
    Ok(())
}

fn cmd_dump(args: DumpArgs, cfg: &FileConfig) -> Result<(), CliError> {
    let instances = required(args.instances.or_else(|| cfg.path("instances")), "instances")?;
    let schema_path = args.schema.or_else(|| cfg.path("schema"));
    let out = required(args.out.or_else(|| cfg.path("out")), "out")?;
    let schema = load_schema(schema_path.as_deref())?;
    let dataset = corpus::load_instances(&instances, &schema)?;
    let mut body = Vec::new();
    corpus::dump_instances(&dataset, &schema, &mut body)?;
    std::fs::write(&out, body).map_err(|e| format!("cannot write {}: {e}", out.display()))?;
    Ok(())
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    let cfg = FileConfig::load(cli.config.as_deref())?;
    let threads = cli
        .threads
        .or_else(|| cfg.integer("threads").map(|i| i as usize))
        .unwrap_or(0);
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| format!("thread pool: {e}"))?;
    }
    match cli.command {
        Command::Extract(args) => cmd_extract(args, &cfg),
        Command::Rank(args) => cmd_rank(args, &cfg),
        Command::Train(args) => cmd_train(args, &cfg),
        Command::Evaluate(args) => cmd_evaluate(args, &cfg),
        Command::Predict(args) => cmd_predict(args, &cfg),
        Command::Stats(args) => cmd_stats(args, &cfg),
        Command::Dump(args) => cmd_dump(args, &cfg),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
