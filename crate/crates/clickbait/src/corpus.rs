//! Corpus ingestion: parse line-delimited instance and truth files, validate
//! them, and join them into labeled in-memory datasets.
//!
//! Wire keys are configurable through [`Schema`]; the defaults target the
//! Clickbait Challenge 2017 layout (`postText`, `targetTitle`, ...).

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use serde_json::Value;
use thiserror::Error;

use crate::textstats::{ContentField, ContentValue};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}: malformed record: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("duplicate instance id {id:?}")]
    DuplicateId { id: String },
    #[error("{count} instance(s) missing a truth label; first missing ids: {sample:?}")]
    UnlabeledInstances { count: usize, sample: Vec<String> },
    #[error("{count} orphan truth label(s) with no instance; first orphan ids: {sample:?}")]
    OrphanLabels { count: usize, sample: Vec<String> },
    #[error("truth label for id {id:?} appears more than once")]
    DuplicateLabel { id: String },
}

/// One social-media post plus its targeted article's text fields.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PostInstance {
    pub id: String,
    pub post_title: Option<String>,
    pub post_timestamp: Option<DateTime<Utc>>,
    pub image_ref: Option<String>,
    /// Pre-extracted OCR text for the attached image, when a sidecar exists.
    pub image_text: Option<String>,
    pub article_title: Option<String>,
    pub article_description: Option<String>,
    pub article_keywords: Option<Vec<String>>,
    pub article_paragraphs: Option<Vec<String>>,
    pub article_captions: Option<Vec<String>>,
}

impl PostInstance {
    /// View one of the seven content fields as a [`ContentValue`].
    pub fn content(&self, field: ContentField) -> ContentValue<'_> {
        fn scalar(v: &Option<String>) -> ContentValue<'_> {
            match v {
                Some(s) => ContentValue::Scalar(s),
                None => ContentValue::Absent,
            }
        }
        fn list(v: &Option<Vec<String>>) -> ContentValue<'_> {
            match v {
                Some(items) => ContentValue::List(items),
                None => ContentValue::Absent,
            }
        }
        match field {
            ContentField::PostTitle => scalar(&self.post_title),
            ContentField::PostImageText => scalar(&self.image_text),
            ContentField::ArticleTitle => scalar(&self.article_title),
            ContentField::ArticleDescription => scalar(&self.article_description),
            ContentField::ArticleKeywords => list(&self.article_keywords),
            ContentField::ArticleCaptions => list(&self.article_captions),
            ContentField::ArticleParagraphs => list(&self.article_paragraphs),
        }
    }
}

/// Binary truth label: clickbait = 1, legitimate = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthLabel {
    pub id: String,
    pub label: u8,
}

/// Record-key mapping from [`PostInstance`] fields to wire keys.
#[derive(Debug, Clone)]
pub struct Schema {
    pub id: String,
    pub post_title: String,
    pub post_timestamp: String,
    pub image_ref: String,
    pub article_title: String,
    pub article_description: String,
    pub article_keywords: String,
    pub article_paragraphs: String,
    pub article_captions: String,
}

impl Default for Schema {
    fn default() -> Schema {
        Schema {
            id: "id".into(),
            post_title: "postText".into(),
            post_timestamp: "postTimestamp".into(),
            image_ref: "postMedia".into(),
            article_title: "targetTitle".into(),
            article_description: "targetDescription".into(),
            article_keywords: "targetKeywords".into(),
            article_paragraphs: "targetParagraphs".into(),
            article_captions: "targetCaptions".into(),
        }
    }
}

impl Schema {
    /// Load a schema mapping from a `field = key` text file. Unknown field
    /// names are rejected; omitted fields keep their defaults.
    pub fn from_path(path: &Path) -> Result<Schema, CorpusError> {
        let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut schema = Schema::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (field, key) = line.split_once('=').ok_or_else(|| CorpusError::Parse {
                path: path.display().to_string(),
                line: idx + 1,
                message: format!("expected `field = key`, got {line:?}"),
            })?;
            let key = key.trim().to_string();
            match field.trim() {
                "id" => schema.id = key,
                "post_title" => schema.post_title = key,
                "post_timestamp" => schema.post_timestamp = key,
                "image_ref" => schema.image_ref = key,
                "article_title" => schema.article_title = key,
                "article_description" => schema.article_description = key,
                "article_keywords" => schema.article_keywords = key,
                "article_paragraphs" => schema.article_paragraphs = key,
                "article_captions" => schema.article_captions = key,
                other => {
                    return Err(CorpusError::Parse {
                        path: path.display().to_string(),
                        line: idx + 1,
                        message: format!("unknown schema field {other:?}"),
                    })
                }
            }
        }
        Ok(schema)
    }
}

/// An ordered post collection, optionally joined with truth labels.
#[derive(Debug, Clone, Default)]
pub struct Dataset {
    pub instances: Vec<PostInstance>,
    /// When present, aligned pairwise with `instances`.
    pub labels: Option<Vec<TruthLabel>>,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    /// (positives, negatives) of the joined labels.
    pub fn class_counts(&self) -> Option<(usize, usize)> {
        self.labels.as_ref().map(|labels| {
            let pos = labels.iter().filter(|l| l.label == 1).count();
            (pos, labels.len() - pos)
        })
    }
}

fn string_of(value: &Value) -> Option<String> {
    match value {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

/// A text field that may arrive as a string or an array of strings; arrays
/// are joined with single spaces.
fn joined_text(value: &Value) -> Option<String> {
    match value {
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().filter_map(string_of).collect();
            Some(parts.join(" "))
        }
        _ => None,
    }
}

fn text_list(value: &Value) -> Option<Vec<String>> {
    match value {
        Value::Array(items) => Some(items.iter().filter_map(string_of).collect()),
        Value::String(s) => Some(vec![s.clone()]),
        _ => None,
    }
}

/// Comma-separated keyword string split into trimmed keywords; empty
/// segments are dropped, so `""` becomes an empty (present) list.
fn keyword_list(value: &Value) -> Option<Vec<String>> {
    let items = text_list(value)?;
    Some(
        items
            .iter()
            .flat_map(|s| s.split(','))
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect(),
    )
}

/// Challenge layout uses "EEE MMM dd HH:mm:ss Z yyyy"; ISO-8601 is accepted
/// as well. Unparseable timestamps become absent.
fn parse_timestamp(raw: &str) -> Option<DateTime<Utc>> {
    if let Ok(dt) = DateTime::parse_from_str(raw, "%a %b %d %H:%M:%S %z %Y") {
        return Some(dt.with_timezone(&Utc));
    }
    if let Ok(dt) = DateTime::parse_from_rfc3339(raw) {
        return Some(dt.with_timezone(&Utc));
    }
    None
}

/// First non-empty media path of the record, if any.
fn media_ref(value: &Value) -> Option<String> {
    match value {
        Value::String(s) if !s.is_empty() => Some(s.clone()),
        Value::Array(items) => items
            .iter()
            .filter_map(string_of)
            .find(|s| !s.is_empty()),
        _ => None,
    }
}

fn instance_from_record(
    record: &Value,
    schema: &Schema,
    base_dir: &Path,
    path: &str,
    line: usize,
) -> Result<PostInstance, CorpusError> {
    let obj = record.as_object().ok_or_else(|| CorpusError::Parse {
        path: path.to_string(),
        line,
        message: "record is not an object".to_string(),
    })?;
    let id = obj
        .get(&schema.id)
        .and_then(string_of)
        .filter(|s| !s.is_empty())
        .ok_or_else(|| CorpusError::Parse {
            path: path.to_string(),
            line,
            message: format!("missing or empty id key {:?}", schema.id),
        })?;

    let image_ref = obj.get(&schema.image_ref).and_then(media_ref);
    // OCR text arrives as an optional sidecar file next to the image.
    let image_text = image_ref.as_deref().and_then(|r| {
        let sidecar = base_dir.join(format!("{r}.txt"));
        std::fs::read_to_string(sidecar).ok()
    });

    Ok(PostInstance {
        id,
        post_title: obj.get(&schema.post_title).and_then(joined_text),
        post_timestamp: obj
            .get(&schema.post_timestamp)
            .and_then(string_of)
            .and_then(|s| parse_timestamp(&s)),
        image_ref,
        image_text,
        article_title: obj.get(&schema.article_title).and_then(string_of),
        article_description: obj.get(&schema.article_description).and_then(string_of),
        article_keywords: obj.get(&schema.article_keywords).and_then(keyword_list),
        article_paragraphs: obj.get(&schema.article_paragraphs).and_then(text_list),
        article_captions: obj.get(&schema.article_captions).and_then(text_list),
    })
}

/// Load one post per input line, preserving file order.
pub fn load_instances(path: &Path, schema: &Schema) -> Result<Dataset, CorpusError> {
    let display = path.display().to_string();
    let file = std::fs::File::open(path).map_err(|source| CorpusError::Io {
        path: display.clone(),
        source,
    })?;
    let base_dir = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    let mut instances = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|source| CorpusError::Io {
            path: display.clone(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let record: Value =
            serde_json::from_str(&line).map_err(|e| CorpusError::Parse {
                path: display.clone(),
                line: idx + 1,
                message: e.to_string(),
            })?;
        let instance = instance_from_record(&record, schema, &base_dir, &display, idx + 1)?;
        if !seen.insert(instance.id.clone()) {
            return Err(CorpusError::DuplicateId { id: instance.id });
        }
        instances.push(instance);
    }
    Ok(Dataset {
        instances,
        labels: None,
    })
}

/// Parse a truth file: one record per line with an id and a class string.
/// The clickbait designation maps to 1, anything else to 0.
pub fn load_truth(path: &Path) -> Result<Vec<TruthLabel>, CorpusError> {
    let display = path.display().to_string();
    let file = std::fs::File::open(path).map_err(|source| CorpusError::Io {
        path: display.clone(),
        source,
    })?;
    let mut labels = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|source| CorpusError::Io {
            path: display.clone(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let record: Value = serde_json::from_str(&line).map_err(|e| CorpusError::Parse {
            path: display.clone(),
            line: idx + 1,
            message: e.to_string(),
        })?;
        let obj = record.as_object().ok_or_else(|| CorpusError::Parse {
            path: display.clone(),
            line: idx + 1,
            message: "record is not an object".to_string(),
        })?;
        let id = obj
            .get("id")
            .and_then(string_of)
            .ok_or_else(|| CorpusError::Parse {
                path: display.clone(),
                line: idx + 1,
                message: "missing id".to_string(),
            })?;
        let class = obj
            .get("truthClass")
            .and_then(string_of)
            .ok_or_else(|| CorpusError::Parse {
                path: display.clone(),
                line: idx + 1,
                message: "missing truthClass".to_string(),
            })?;
        let label = match class.as_str() {
            "clickbait" => 1,
            "no-clickbait" | "legitimate" => 0,
            other => {
                return Err(CorpusError::Parse {
                    path: display.clone(),
                    line: idx + 1,
                    message: format!("unknown truth class {other:?}"),
                })
            }
        };
        labels.push(TruthLabel { id, label });
    }
    Ok(labels)
}

/// Align truth labels with a dataset; instance order is unchanged and the
/// label order in the truth file is irrelevant.
pub fn join(dataset: Dataset, labels: &[TruthLabel]) -> Result<Dataset, CorpusError> {
    let mut by_id: HashMap<&str, &TruthLabel> = HashMap::with_capacity(labels.len());
    for label in labels {
        if by_id.insert(label.id.as_str(), label).is_some() {
            return Err(CorpusError::DuplicateLabel {
                id: label.id.clone(),
            });
        }
    }
    let missing: Vec<String> = dataset
        .instances
        .iter()
        .filter(|i| !by_id.contains_key(i.id.as_str()))
        .map(|i| i.id.clone())
        .collect();
    if !missing.is_empty() {
        return Err(CorpusError::UnlabeledInstances {
            count: missing.len(),
            sample: missing.into_iter().take(10).collect(),
        });
    }
    let instance_ids: HashSet<&str> = dataset.instances.iter().map(|i| i.id.as_str()).collect();
    let orphans: Vec<String> = labels
        .iter()
        .filter(|l| !instance_ids.contains(l.id.as_str()))
        .map(|l| l.id.clone())
        .collect();
    if !orphans.is_empty() {
        return Err(CorpusError::OrphanLabels {
            count: orphans.len(),
            sample: orphans.into_iter().take(10).collect(),
        });
    }
    let aligned = dataset
        .instances
        .iter()
        .map(|i| (*by_id[i.id.as_str()]).clone())
        .collect();
    Ok(Dataset {
        instances: dataset.instances,
        labels: Some(aligned),
    })
}

/// Serialize a dataset back to the line-delimited wire form under `schema`.
pub fn dump_instances<W: Write>(
    dataset: &Dataset,
    schema: &Schema,
    out: &mut W,
) -> std::io::Result<()> {
    for instance in &dataset.instances {
        let mut obj = serde_json::Map::new();
        obj.insert(schema.id.clone(), Value::String(instance.id.clone()));
        if let Some(t) = &instance.post_title {
            obj.insert(
                schema.post_title.clone(),
                Value::Array(vec![Value::String(t.clone())]),
            );
        }
        if let Some(ts) = &instance.post_timestamp {
            obj.insert(
                schema.post_timestamp.clone(),
                Value::String(ts.to_rfc3339()),
            );
        }
        if let Some(r) = &instance.image_ref {
            obj.insert(
                schema.image_ref.clone(),
                Value::Array(vec![Value::String(r.clone())]),
            );
        }
        if let Some(t) = &instance.article_title {
            obj.insert(schema.article_title.clone(), Value::String(t.clone()));
        }
        if let Some(t) = &instance.article_description {
            obj.insert(schema.article_description.clone(), Value::String(t.clone()));
        }
        if let Some(k) = &instance.article_keywords {
            obj.insert(schema.article_keywords.clone(), Value::String(k.join(", ")));
        }
        if let Some(p) = &instance.article_paragraphs {
            obj.insert(
                schema.article_paragraphs.clone(),
                Value::Array(p.iter().map(|s| Value::String(s.clone())).collect()),
            );
        }
        if let Some(c) = &instance.article_captions {
            obj.insert(
                schema.article_captions.clone(),
                Value::Array(c.iter().map(|s| Value::String(s.clone())).collect()),
            );
        }
        let mut line = serde_json::to_string(&Value::Object(obj)).expect("serializable");
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}

/// Path of the OCR sidecar that `load_instances` reads for an image.
pub fn sidecar_path(instances_path: &Path, image_ref: &str) -> PathBuf {
    let base = instances_path.parent().unwrap_or(Path::new("."));
    base.join(format!("{image_ref}.txt"))
}

/// Render the truth labels in the wire form of the truth file.
pub fn dump_truth(labels: &[TruthLabel]) -> String {
    let mut out = String::new();
    for l in labels {
        let class = if l.label == 1 { "clickbait" } else { "no-clickbait" };
        let _ = writeln!(
            out,
            "{}",
            serde_json::json!({"id": l.id, "truthClass": class})
        );
    }
    out
}
