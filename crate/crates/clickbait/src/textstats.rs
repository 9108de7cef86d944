//! Base content functions: character/word lengths, word sets, and
//! formal/informal word classification against a bundled English word list.
//!
//! Content that is unavailable is reported through the `-1.0` sentinel so
//! downstream feature code can distinguish "absent" from "short".

use std::collections::BTreeSet;
use std::fmt;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use thiserror::Error;

/// Sentinel value for absent or undefined content.
pub const MISSING: f64 = -1.0;

/// The seven text sources of a post/article pair, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ContentField {
    PostTitle,
    PostImageText,
    ArticleTitle,
    ArticleDescription,
    ArticleKeywords,
    ArticleCaptions,
    ArticleParagraphs,
}

impl ContentField {
    pub const ALL: [ContentField; 7] = [
        ContentField::PostTitle,
        ContentField::PostImageText,
        ContentField::ArticleTitle,
        ContentField::ArticleDescription,
        ContentField::ArticleKeywords,
        ContentField::ArticleCaptions,
        ContentField::ArticleParagraphs,
    ];

    /// Human-readable name used in feature names and reports.
    pub fn display_name(self) -> &'static str {
        match self {
            ContentField::PostTitle => "post title",
            ContentField::PostImageText => "post image text",
            ContentField::ArticleTitle => "article title",
            ContentField::ArticleDescription => "article description",
            ContentField::ArticleKeywords => "article keywords",
            ContentField::ArticleCaptions => "article captions",
            ContentField::ArticleParagraphs => "article paragraphs",
        }
    }

    /// True for fields that hold a list of text items rather than one string.
    pub fn is_plural(self) -> bool {
        matches!(
            self,
            ContentField::ArticleKeywords
                | ContentField::ArticleCaptions
                | ContentField::ArticleParagraphs
        )
    }
}

impl fmt::Display for ContentField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.display_name())
    }
}

/// A borrowed view of one content field's value.
#[derive(Debug, Clone, Copy)]
pub enum ContentValue<'a> {
    Absent,
    Scalar(&'a str),
    List(&'a [String]),
}

impl<'a> ContentValue<'a> {
    pub fn is_absent(&self) -> bool {
        matches!(self, ContentValue::Absent)
    }
}

/// Mean codepoint count of the content, or -1 when absent.
///
/// Plural content averages over its items; an empty list counts as absent.
pub fn len_characters(content: ContentValue<'_>) -> f64 {
    match content {
        ContentValue::Absent => MISSING,
        ContentValue::Scalar(s) => s.chars().count() as f64,
        ContentValue::List(items) => {
            if items.is_empty() {
                MISSING
            } else {
                let total: usize = items.iter().map(|s| s.chars().count()).sum();
                total as f64 / items.len() as f64
            }
        }
    }
}

/// Mean token count of the content, or -1 when absent.
pub fn len_words(content: ContentValue<'_>) -> f64 {
    match content {
        ContentValue::Absent => MISSING,
        ContentValue::Scalar(s) => tokenize(s).len() as f64,
        ContentValue::List(items) => {
            if items.is_empty() {
                MISSING
            } else {
                let total: usize = items.iter().map(|s| tokenize(s).len()).sum();
                total as f64 / items.len() as f64
            }
        }
    }
}

/// Split on Unicode whitespace, strip leading/trailing punctuation from each
/// token (keeping a single leading `#` or `@`), and lowercase.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace()
        .filter_map(|raw| {
            let lower = raw.to_lowercase();
            let (prefix, rest) = match lower.chars().next() {
                Some(c @ ('#' | '@')) => (Some(c), &lower[c.len_utf8()..]),
                _ => (None, lower.as_str()),
            };
            let trimmed = rest.trim_matches(|c: char| !c.is_alphanumeric());
            if trimmed.is_empty() {
                return None;
            }
            Some(match prefix {
                Some(p) => format!("{p}{trimmed}"),
                None => trimmed.to_string(),
            })
        })
        .collect()
}

/// Distinct tokens of the content. Absent content yields the empty set;
/// the caller decides sentinel semantics.
pub fn words(content: ContentValue<'_>) -> BTreeSet<String> {
    let mut set = BTreeSet::new();
    match content {
        ContentValue::Absent => {}
        ContentValue::Scalar(s) => set.extend(tokenize(s)),
        ContentValue::List(items) => {
            for item in items {
                set.extend(tokenize(item));
            }
        }
    }
    set
}

#[derive(Debug, Error)]
pub enum WordListError {
    #[error("cannot read word list {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("word list {0} is empty")]
    Empty(String),
    #[error("word list {path} line {line}: entry {entry:?} contains whitespace")]
    BadEntry {
        path: String,
        line: usize,
        entry: String,
    },
}

/// A reference set of formal English words.
///
/// File format: UTF-8, one word per line, `#` lines ignored. Entries are
/// stored lowercase.
#[derive(Debug, Clone)]
pub struct WordList {
    entries: BTreeSet<String>,
    source_name: String,
}

/// Word list bundled with the crate (~50k common English lemmas).
const BUNDLED_WORDS: &str = include_str!("../data/wordlist.txt");

impl WordList {
    pub fn bundled() -> WordList {
        WordList::from_reader(BUNDLED_WORDS.as_bytes(), "bundled")
            .expect("bundled word list is valid")
    }

    pub fn from_path(path: &Path) -> Result<WordList, WordListError> {
        let name = path.display().to_string();
        let file = std::fs::File::open(path).map_err(|source| WordListError::Io {
            path: name.clone(),
            source,
        })?;
        WordList::from_reader(file, &name)
    }

    pub fn from_reader<R: Read>(reader: R, source_name: &str) -> Result<WordList, WordListError> {
        let mut entries = BTreeSet::new();
        for (idx, line) in BufReader::new(reader).lines().enumerate() {
            let line = line.map_err(|source| WordListError::Io {
                path: source_name.to_string(),
                source,
            })?;
            let word = line.trim();
            if word.is_empty() || word.starts_with('#') {
                continue;
            }
            if word.chars().any(char::is_whitespace) {
                return Err(WordListError::BadEntry {
                    path: source_name.to_string(),
                    line: idx + 1,
                    entry: word.to_string(),
                });
            }
            entries.insert(word.to_lowercase());
        }
        if entries.is_empty() {
            return Err(WordListError::Empty(source_name.to_string()));
        }
        Ok(WordList {
            entries,
            source_name: source_name.to_string(),
        })
    }

    pub fn source_name(&self) -> &str {
        &self.source_name
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Membership test; `#`/`@` prefixes are stripped before lookup.
    pub fn contains(&self, token: &str) -> bool {
        let bare = token.trim_start_matches(['#', '@']);
        self.entries.contains(bare)
    }
}

/// Subset of `tokens` found in the word list.
pub fn formal_words<'a>(
    tokens: &'a BTreeSet<String>,
    dict: &WordList,
) -> BTreeSet<&'a str> {
    tokens
        .iter()
        .filter(|t| dict.contains(t))
        .map(String::as_str)
        .collect()
}

/// Complement of [`formal_words`] within `tokens`.
pub fn informal_words<'a>(
    tokens: &'a BTreeSet<String>,
    dict: &WordList,
) -> BTreeSet<&'a str> {
    tokens
        .iter()
        .filter(|t| !dict.contains(t))
        .map(String::as_str)
        .collect()
}
