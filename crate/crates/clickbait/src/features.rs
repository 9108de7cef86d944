//! The hand-crafted feature catalog: image presence, character/word counts
//! with pairwise differences and ratios over the seven content fields,
//! keyword overlap, formal/informal word statistics, behavior counters, and
//! article properties. 188 features per instance, fixed order.
//!
//! Absent content is reported as the `-1` sentinel throughout; a feature is
//! never NaN or infinite.

use std::collections::HashMap;
use std::sync::OnceLock;

use chrono::{DateTime, Timelike, Utc};
use rayon::prelude::*;

use crate::corpus::{Dataset, PostInstance};
use crate::textstats::{
    self, ContentField, ContentValue, WordList, MISSING,
};

/// Feature family tags, mirroring the catalog layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Image,
    CharCount,
    CharDiff,
    CharRatio,
    WordCount,
    WordDiff,
    WordRatio,
    KeywordOverlap,
    FormalInformal,
    Behavior,
    ArticleProperty,
}

/// The fixed, ordered list of feature names shared by every run.
#[derive(Debug)]
pub struct FeatureCatalog {
    names: Vec<String>,
    families: Vec<Family>,
    index: HashMap<String, usize>,
}

/// Unordered content-field pairs in canonical order (earlier field first).
pub fn field_pairs() -> Vec<(ContentField, ContentField)> {
    let mut pairs = Vec::with_capacity(21);
    for (i, &x) in ContentField::ALL.iter().enumerate() {
        for &y in &ContentField::ALL[i + 1..] {
            pairs.push((x, y));
        }
    }
    pairs
}

const BEHAVIOR_COUNTERS: [&str; 7] = [
    "@ signs",
    "hashtags",
    "retweets",
    "question marks",
    "commas",
    "colons",
    "ellipses",
];

fn build_catalog() -> FeatureCatalog {
    let mut names = Vec::with_capacity(188);
    let mut families = Vec::with_capacity(188);
    let push = |name: String, family: Family, names: &mut Vec<String>, families: &mut Vec<Family>| {
        names.push(name);
        families.push(family);
    };

    push("image presence".into(), Family::Image, &mut names, &mut families);
    push("text in image".into(), Family::Image, &mut names, &mut families);

    for f in ContentField::ALL {
        push(format!("num of characters in {f}"), Family::CharCount, &mut names, &mut families);
    }
    for (x, y) in field_pairs() {
        push(format!("diff num of characters {x} & {y}"), Family::CharDiff, &mut names, &mut families);
    }
    for (x, y) in field_pairs() {
        push(format!("num of characters ratio {x} & {y}"), Family::CharRatio, &mut names, &mut families);
    }
    for f in ContentField::ALL {
        push(format!("num of words in {f}"), Family::WordCount, &mut names, &mut families);
    }
    for (x, y) in field_pairs() {
        push(format!("diff num of words {x} & {y}"), Family::WordDiff, &mut names, &mut families);
    }
    for (x, y) in field_pairs() {
        push(format!("num of words ratio {x} & {y}"), Family::WordRatio, &mut names, &mut families);
    }
    for f in ContentField::ALL {
        if f != ContentField::ArticleKeywords {
            push(
                format!("num of common words article keywords & {f}"),
                Family::KeywordOverlap,
                &mut names,
                &mut families,
            );
        }
    }
    for f in ContentField::ALL {
        push(format!("num of formal words in {f}"), Family::FormalInformal, &mut names, &mut families);
        push(format!("num of informal words in {f}"), Family::FormalInformal, &mut names, &mut families);
        push(format!("percent of formal words in {f}"), Family::FormalInformal, &mut names, &mut families);
        push(format!("percent of informal words in {f}"), Family::FormalInformal, &mut names, &mut families);
    }
    for f in ContentField::ALL {
        for counter in BEHAVIOR_COUNTERS {
            push(format!("num of {counter} in {f}"), Family::Behavior, &mut names, &mut families);
        }
    }
    push("post creation hour".into(), Family::Behavior, &mut names, &mut families);
    push("post longevity".into(), Family::Behavior, &mut names, &mut families);

    push("num of article keywords".into(), Family::ArticleProperty, &mut names, &mut families);
    push("num of article paragraphs".into(), Family::ArticleProperty, &mut names, &mut families);
    push("num of article captions".into(), Family::ArticleProperty, &mut names, &mut families);

    debug_assert_eq!(names.len(), 188);
    let index = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), i))
        .collect();
    FeatureCatalog {
        names,
        families,
        index,
    }
}

impl FeatureCatalog {
    pub fn get() -> &'static FeatureCatalog {
        static CATALOG: OnceLock<FeatureCatalog> = OnceLock::new();
        CATALOG.get_or_init(build_catalog)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn family(&self, idx: usize) -> Family {
        self.families[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn family_size(&self, family: Family) -> usize {
        self.families.iter().filter(|&&f| f == family).count()
    }
}

/// One instance's feature values, aligned with [`FeatureCatalog`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub instance_id: String,
    pub values: Vec<f64>,
}

impl FeatureVector {
    pub fn get(&self, name: &str) -> Option<f64> {
        FeatureCatalog::get()
            .index_of(name)
            .map(|i| self.values[i])
    }
}

/// 1 iff the post carries an image reference.
pub fn image_presence(p: &PostInstance) -> f64 {
    if p.image_ref.is_some() {
        1.0
    } else {
        0.0
    }
}

/// 1 iff the post carries an image and its extracted text is non-empty.
pub fn text_in_image(p: &PostInstance) -> f64 {
    let has_text = p
        .image_text
        .as_deref()
        .is_some_and(|t| !t.trim().is_empty());
    if p.image_ref.is_some() && has_text {
        1.0
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    Characters,
    Words,
}

fn content_count(p: &PostInstance, field: ContentField, mode: CountMode) -> f64 {
    let content = p.content(field);
    match mode {
        CountMode::Characters => textstats::len_characters(content),
        CountMode::Words => textstats::len_words(content),
    }
}

/// Character counts of the seven content fields in canonical order.
pub fn char_count_features(p: &PostInstance) -> Vec<f64> {
    ContentField::ALL
        .iter()
        .map(|&f| content_count(p, f, CountMode::Characters))
        .collect()
}

/// Word counts of the seven content fields in canonical order.
pub fn word_count_features(p: &PostInstance) -> Vec<f64> {
    ContentField::ALL
        .iter()
        .map(|&f| content_count(p, f, CountMode::Words))
        .collect()
}

/// Absolute count differences over the 21 field pairs. Either side missing
/// propagates the sentinel rather than fabricating |5 - (-1)|.
pub fn pairwise_diff_features(p: &PostInstance, mode: CountMode) -> Vec<f64> {
    field_pairs()
        .into_iter()
        .map(|(x, y)| {
            let cx = content_count(p, x, mode);
            let cy = content_count(p, y, mode);
            if cx < 0.0 || cy < 0.0 {
                MISSING
            } else {
                (cx - cy).abs()
            }
        })
        .collect()
}

/// Count ratios over the 21 field pairs, numerator being the field earlier
/// in canonical order. Missing side or zero denominator yields the sentinel.
pub fn pairwise_ratio_features(p: &PostInstance, mode: CountMode) -> Vec<f64> {
    field_pairs()
        .into_iter()
        .map(|(x, y)| {
            let cx = content_count(p, x, mode);
            let cy = content_count(p, y, mode);
            if cx < 0.0 || cy <= 0.0 {
                MISSING
            } else {
                cx / cy
            }
        })
        .collect()
}

/// Overlap between the tokenized article keyword set and each of the other
/// six content fields' word sets.
pub fn keyword_overlap_features(p: &PostInstance) -> Vec<f64> {
    let keywords = p.content(ContentField::ArticleKeywords);
    let keyword_set = textstats::words(keywords);
    let keywords_absent = keywords.is_absent();
    ContentField::ALL
        .iter()
        .filter(|&&f| f != ContentField::ArticleKeywords)
        .map(|&f| {
            let content = p.content(f);
            if keywords_absent || content.is_absent() {
                return MISSING;
            }
            let field_words = textstats::words(content);
            keyword_set.intersection(&field_words).count() as f64
        })
        .collect()
}

/// Per field: formal count, informal count, formal ratio, informal ratio.
/// Absent field or zero tokens yields four sentinels.
pub fn formal_informal_features(p: &PostInstance, dict: &WordList) -> Vec<f64> {
    let mut out = Vec::with_capacity(28);
    for &f in &ContentField::ALL {
        let content = p.content(f);
        let tokens = textstats::words(content);
        if content.is_absent() || tokens.is_empty() {
            out.extend([MISSING; 4]);
            continue;
        }
        let formal = textstats::formal_words(&tokens, dict).len() as f64;
        let total = tokens.len() as f64;
        let informal = total - formal;
        out.extend([formal, informal, formal / total, informal / total]);
    }
    out
}

fn count_ellipses(text: &str) -> usize {
    let mut count = text.chars().filter(|&c| c == '\u{2026}').count();
    let mut rest = text;
    while let Some(pos) = rest.find("...") {
        count += 1;
        rest = &rest[pos + 3..];
    }
    count
}

fn behavior_counts(text: &str) -> [f64; 7] {
    let at = text.chars().filter(|&c| c == '@').count();
    let hash = text.chars().filter(|&c| c == '#').count();
    let retweets = textstats::tokenize(text)
        .iter()
        .filter(|t| t.as_str() == "rt")
        .count();
    let questions = text.chars().filter(|&c| c == '?').count();
    let commas = text.chars().filter(|&c| c == ',').count();
    let colons = text.chars().filter(|&c| c == ':').count();
    let ellipses = count_ellipses(text);
    [
        at as f64,
        hash as f64,
        retweets as f64,
        questions as f64,
        commas as f64,
        colons as f64,
        ellipses as f64,
    ]
}

/// Abuser-detection counters per content field plus post creation hour and
/// post longevity relative to `reference_time`.
pub fn behavior_features(p: &PostInstance, reference_time: Option<DateTime<Utc>>) -> Vec<f64> {
    let mut out = Vec::with_capacity(51);
    for &f in &ContentField::ALL {
        match p.content(f) {
            ContentValue::Absent => out.extend([MISSING; 7]),
            ContentValue::Scalar(s) => out.extend(behavior_counts(s)),
            ContentValue::List(items) => {
                let mut totals = [0.0; 7];
                for item in items {
                    let counts = behavior_counts(item);
                    for (t, c) in totals.iter_mut().zip(counts) {
                        *t += c;
                    }
                }
                out.extend(totals);
            }
        }
    }
    match p.post_timestamp {
        Some(ts) => {
            out.push(ts.hour() as f64);
            match reference_time {
                Some(anchor) => out.push((anchor - ts).num_seconds() as f64),
                None => out.push(MISSING),
            }
        }
        None => {
            out.push(MISSING);
            out.push(MISSING);
        }
    }
    out
}

/// List lengths of keywords, paragraphs, and captions.
pub fn article_property_features(p: &PostInstance) -> Vec<f64> {
    [
        &p.article_keywords,
        &p.article_paragraphs,
        &p.article_captions,
    ]
    .into_iter()
    .map(|l| match l {
        Some(items) => items.len() as f64,
        None => MISSING,
    })
    .collect()
}

/// Compute the full 188-feature catalog for one instance.
pub fn extract_all(
    p: &PostInstance,
    dict: &WordList,
    reference_time: Option<DateTime<Utc>>,
) -> FeatureVector {
    let mut values = Vec::with_capacity(188);
    values.push(image_presence(p));
    values.push(text_in_image(p));
    values.extend(char_count_features(p));
    values.extend(pairwise_diff_features(p, CountMode::Characters));
    values.extend(pairwise_ratio_features(p, CountMode::Characters));
    values.extend(word_count_features(p));
    values.extend(pairwise_diff_features(p, CountMode::Words));
    values.extend(pairwise_ratio_features(p, CountMode::Words));
    values.extend(keyword_overlap_features(p));
    values.extend(formal_informal_features(p, dict));
    values.extend(behavior_features(p, reference_time));
    values.extend(article_property_features(p));
    assert_eq!(values.len(), FeatureCatalog::get().len());
    debug_assert!(values.iter().all(|v| v.is_finite()));
    FeatureVector {
        instance_id: p.id.clone(),
        values,
    }
}

/// Anchor for post longevity: the latest timestamp in the dataset.
pub fn default_reference_time(dataset: &Dataset) -> Option<DateTime<Utc>> {
    dataset
        .instances
        .iter()
        .filter_map(|i| i.post_timestamp)
        .max()
}

/// Extract all instances in parallel; output order matches input order.
pub fn extract_dataset(dataset: &Dataset, dict: &WordList) -> Vec<FeatureVector> {
    let anchor = default_reference_time(dataset);
    dataset
        .instances
        .par_iter()
        .map(|p| extract_all(p, dict, anchor))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::TimeZone;

    fn dict() -> WordList {
        WordList::from_reader("cat\nfacts\nwow\n".as_bytes(), "test").unwrap()
    }

    fn empty_instance() -> PostInstance {
        PostInstance {
            id: "t".into(),
            ..PostInstance::default()
        }
    }

    #[test]
    fn catalog_family_sizes() {
        let c = FeatureCatalog::get();
        assert_eq!(c.len(), 188);
        assert_eq!(c.family_size(Family::Image), 2);
        assert_eq!(c.family_size(Family::CharCount), 7);
        assert_eq!(c.family_size(Family::CharDiff), 21);
        assert_eq!(c.family_size(Family::CharRatio), 21);
        assert_eq!(c.family_size(Family::WordCount), 7);
        assert_eq!(c.family_size(Family::WordDiff), 21);
        assert_eq!(c.family_size(Family::WordRatio), 21);
        assert_eq!(c.family_size(Family::KeywordOverlap), 6);
        assert_eq!(c.family_size(Family::FormalInformal), 28);
        assert_eq!(c.family_size(Family::Behavior), 51);
        assert_eq!(c.family_size(Family::ArticleProperty), 3);
    }

    #[test]
    fn catalog_names_unique() {
        let c = FeatureCatalog::get();
        let mut names: Vec<&str> = c.names().iter().map(String::as_str).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), 188);
    }

    #[test]
    fn image_features() {
        let mut p = empty_instance();
        assert_eq!(image_presence(&p), 0.0);
        assert_eq!(text_in_image(&p), 0.0);

        p.image_ref = Some("img.png".into());
        assert_eq!(image_presence(&p), 1.0);
        // presence ignores OCR text
        assert_eq!(text_in_image(&p), 0.0);

        p.image_text = Some("  ".into());
        assert_eq!(text_in_image(&p), 0.0);
        p.image_text = Some("BUY NOW".into());
        assert_eq!(text_in_image(&p), 1.0);

        // stray sidecar without an image does not count
        p.image_ref = None;
        assert_eq!(text_in_image(&p), 0.0);
        assert_eq!(image_presence(&p), 0.0);
    }

    #[test]
    fn char_counts_with_sentinels() {
        let mut p = empty_instance();
        p.post_title = Some("abc".into());
        let counts = char_count_features(&p);
        assert_eq!(counts, [3.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0]);

        let all_absent = char_count_features(&empty_instance());
        assert!(all_absent.iter().all(|&v| v == -1.0));
    }

    #[test]
    fn char_counts_average_plural() {
        let mut p = empty_instance();
        p.article_paragraphs = Some(vec!["ab".into(), "abcd".into()]);
        let counts = char_count_features(&p);
        assert_eq!(counts[6], 3.0); // paragraph slot
    }

    #[test]
    fn word_counts() {
        let mut p = empty_instance();
        p.post_title = Some("a b c".into());
        p.article_keywords = Some(vec!["breaking news".into(), "trump".into()]);
        let counts = word_count_features(&p);
        assert_eq!(counts[0], 3.0);
        assert_eq!(counts[4], 1.5); // keyword slot: mean of 2 and 1
    }

    #[test]
    fn diff_absolute_and_sentinel() {
        let mut p = empty_instance();
        p.post_title = Some("abcde".into()); // 5 chars
        p.article_title = Some("abcdefgh".into()); // 8 chars
        let diffs = pairwise_diff_features(&p, CountMode::Characters);
        // pair (PostTitle, ArticleTitle) is the second pair
        assert_eq!(diffs[1], 3.0);
        // pair (PostTitle, PostImageText): image text absent
        assert_eq!(diffs[0], -1.0);
    }

    #[test]
    fn diff_identical_fields_is_zero() {
        let mut p = empty_instance();
        p.post_title = Some("same".into());
        p.article_title = Some("same".into());
        let diffs = pairwise_diff_features(&p, CountMode::Characters);
        assert_eq!(diffs[1], 0.0);
    }

    #[test]
    fn ratio_orientation_and_guards() {
        let mut p = empty_instance();
        p.post_title = Some("abcdef".into()); // 6
        p.article_title = Some("abc".into()); // 3
        let ratios = pairwise_ratio_features(&p, CountMode::Characters);
        assert_eq!(ratios[1], 2.0);
        // absent side
        assert_eq!(ratios[0], -1.0);
        // zero denominator
        p.article_title = Some("".into());
        let ratios = pairwise_ratio_features(&p, CountMode::Characters);
        assert_eq!(ratios[1], -1.0);
    }

    #[test]
    fn keyword_overlap() {
        let mut p = empty_instance();
        p.article_keywords = Some(vec!["tesla".into(), "cars".into()]);
        p.post_title = Some("tesla cars you didn't know".into());
        let overlap = keyword_overlap_features(&p);
        assert_eq!(overlap[0], 2.0); // post title slot
        assert_eq!(overlap[1], -1.0); // image text absent

        p.article_keywords = None;
        let overlap = keyword_overlap_features(&p);
        assert!(overlap.iter().all(|&v| v == -1.0));
    }

    #[test]
    fn keyword_overlap_disjoint_is_zero() {
        let mut p = empty_instance();
        p.article_keywords = Some(vec!["quantum".into()]);
        p.post_title = Some("cat pictures".into());
        assert_eq!(keyword_overlap_features(&p)[0], 0.0);
    }

    #[test]
    fn formal_informal_split() {
        let mut p = empty_instance();
        p.post_title = Some("cat zzxq".into());
        let vals = formal_informal_features(&p, &dict());
        assert_eq!(&vals[0..4], [1.0, 1.0, 0.5, 0.5]);
        // absent fields produce sentinels
        assert_eq!(&vals[4..8], [-1.0, -1.0, -1.0, -1.0]);
    }

    #[test]
    fn all_formal_has_zero_informal_ratio() {
        let mut p = empty_instance();
        p.post_title = Some("cat facts".into());
        let vals = formal_informal_features(&p, &dict());
        assert_eq!(vals[3], 0.0);
    }

    #[test]
    fn behavior_counters_hand_counted() {
        let mut p = empty_instance();
        p.post_title = Some("RT @user: wow...".into());
        let vals = behavior_features(&p, None);
        // post title slots: [@, #, rt, ?, ',', ':', ellipses]
        assert_eq!(&vals[0..7], [1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0]);
    }

    #[test]
    fn behavior_question_marks() {
        let mut p = empty_instance();
        p.post_title = Some("What? Really?".into());
        let vals = behavior_features(&p, None);
        assert_eq!(vals[3], 2.0);
    }

    #[test]
    fn behavior_timestamp_slots() {
        let mut p = empty_instance();
        let vals = behavior_features(&p, None);
        assert_eq!(vals[49], -1.0); // hour
        assert_eq!(vals[50], -1.0); // longevity

        let ts = Utc.with_ymd_and_hms(2017, 1, 4, 9, 30, 0).unwrap();
        let anchor = Utc.with_ymd_and_hms(2017, 1, 4, 10, 0, 0).unwrap();
        p.post_timestamp = Some(ts);
        let vals = behavior_features(&p, Some(anchor));
        assert_eq!(vals[49], 9.0);
        assert_eq!(vals[50], 1800.0);
    }

    #[test]
    fn unicode_ellipsis_counted() {
        assert_eq!(count_ellipses("wait\u{2026} what..."), 2);
        assert_eq!(count_ellipses("...."), 1);
        assert_eq!(count_ellipses("......"), 2);
    }

    #[test]
    fn article_properties() {
        let mut p = empty_instance();
        p.article_keywords = Some(vec!["a".into(); 5]);
        p.article_paragraphs = Some(vec!["p".into(); 12]);
        p.article_captions = Some(vec![]);
        assert_eq!(article_property_features(&p), [5.0, 12.0, 0.0]);
        assert_eq!(article_property_features(&empty_instance()), [-1.0, -1.0, -1.0]);
    }

    #[test]
    fn extract_all_degenerate_instance() {
        let v = extract_all(&empty_instance(), &dict(), None);
        assert_eq!(v.values.len(), 188);
        assert_eq!(&v.values[0..2], [0.0, 0.0]);
        assert!(v.values[2..].iter().all(|&x| x == -1.0));
    }

    #[test]
    fn extract_all_deterministic() {
        let mut p = empty_instance();
        p.post_title = Some("15 surprising facts!".into());
        p.article_keywords = Some(vec!["facts".into()]);
        let d = dict();
        assert_eq!(extract_all(&p, &d, None), extract_all(&p, &d, None));
    }

    #[test]
    fn extract_dataset_preserves_order() {
        let mk = |id: &str, title: &str| PostInstance {
            id: id.into(),
            post_title: Some(title.into()),
            ..PostInstance::default()
        };
        let ds = Dataset {
            instances: vec![mk("a", "one"), mk("b", "two two"), mk("c", "three")],
            labels: None,
        };
        let vectors = extract_dataset(&ds, &dict());
        let ids: Vec<&str> = vectors.iter().map(|v| v.instance_id.as_str()).collect();
        assert_eq!(ids, ["a", "b", "c"]);
    }
}
