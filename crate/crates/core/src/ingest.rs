//! From documents on disk to one word-length series per category.
//!
//! A word is a maximal run of alphabetic code points. Runs of letters and
//! digits are scanned together so that a token such as `2008` or `mp3` can be
//! dropped as a whole instead of leaving letter fragments behind. Text is put
//! in NFC before scanning, so a decomposed accent never counts as an extra
//! code point.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::ops::Range;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use unicode_normalization::{is_nfc_quick, IsNormalized, UnicodeNormalization};

use crate::{Category, Error, Result, Symbol};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LetterPolicy {
    /// Only alphabetic code points form words; everything else separates.
    #[default]
    UnicodeLetters,
    /// As above, but an apostrophe with a letter on both sides stays inside
    /// the word (`don't` is one word of length 5).
    UnicodeLettersPlusInternalApostrophe,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthUnit {
    #[default]
    Codepoints,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(default)]
pub struct TokenizerConfig {
    pub letter_policy: LetterPolicy,
    pub length_unit: LengthUnit,
    /// Shorter words are dropped.
    pub min_word_length: usize,
    /// Longer words are dropped, not clamped.
    pub max_word_length: usize,
}

impl Default for TokenizerConfig {
    fn default() -> Self {
        Self {
            letter_policy: LetterPolicy::UnicodeLetters,
            length_unit: LengthUnit::Codepoints,
            min_word_length: 1,
            max_word_length: 40,
        }
    }
}

impl TokenizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_word_length < 1 {
            return Err(Error::Config("min_word_length must be at least 1".into()));
        }
        if self.max_word_length < self.min_word_length {
            return Err(Error::Config(format!(
                "max_word_length {} is below min_word_length {}",
                self.max_word_length, self.min_word_length
            )));
        }
        if self.max_word_length > Symbol::MAX as usize {
            return Err(Error::Config(format!(
                "max_word_length {} does not fit a 16-bit length",
                self.max_word_length
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub language: String,
    pub genre: String,
    pub text: String,
}

impl Document {
    pub fn new(
        id: impl Into<String>,
        language: impl Into<String>,
        genre: impl Into<String>,
        text: impl Into<String>,
    ) -> Self {
        Self {
            id: id.into(),
            language: language.into(),
            genre: genre.into(),
            text: text.into(),
        }
    }

    /// Decodes raw bytes, reporting the first invalid UTF-8 byte offset.
    pub fn from_bytes(
        id: impl Into<String>,
        language: impl Into<String>,
        genre: impl Into<String>,
        bytes: Vec<u8>,
    ) -> Result<Self> {
        let id = id.into();
        let text = String::from_utf8(bytes).map_err(|e| Error::InvalidUtf8 {
            offset: e.utf8_error().valid_up_to(),
            id: id.clone(),
        })?;
        Ok(Self {
            id,
            language: language.into(),
            genre: genre.into(),
            text,
        })
    }

    pub fn category(&self) -> Category {
        Category::new(&self.language, &self.genre)
    }
}

/// Tokens removed by the tokenizer, by reason.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DropCounts {
    /// Tokens containing a numeric code point.
    pub numeric: u64,
    pub too_short: u64,
    pub too_long: u64,
}

impl DropCounts {
    pub fn total(&self) -> u64 {
        self.numeric + self.too_short + self.too_long
    }

    pub fn add(&mut self, other: &DropCounts) {
        self.numeric += other.numeric;
        self.too_short += other.too_short;
        self.too_long += other.too_long;
    }
}

fn is_apostrophe(c: char) -> bool {
    matches!(c, '\'' | '\u{2019}')
}

fn normalized(text: &str) -> std::borrow::Cow<'_, str> {
    if is_nfc_quick(text.chars()) == IsNormalized::Yes {
        std::borrow::Cow::Borrowed(text)
    } else {
        std::borrow::Cow::Owned(text.nfc().collect())
    }
}

/// Walks the NFC text and hands every kept word to `emit`.
fn scan<'a>(text: &'a str, config: &TokenizerConfig, drops: &mut DropCounts, mut emit: impl FnMut(&'a str, usize)) {
    let keep_apostrophe = config.letter_policy == LetterPolicy::UnicodeLettersPlusInternalApostrophe;
    let mut chars = text.char_indices().peekable();
    while let Some((start, c)) = chars.next() {
        if !(c.is_alphabetic() || c.is_numeric()) {
            continue;
        }
        let mut end = start + c.len_utf8();
        let mut len = 1usize;
        let mut numeric = c.is_numeric();
        let mut prev = c;
        while let Some(&(i, d)) = chars.peek() {
            let inside = if d.is_alphabetic() || d.is_numeric() {
                true
            } else if keep_apostrophe && is_apostrophe(d) && prev.is_alphabetic() {
                let mut ahead = text[i + d.len_utf8()..].chars();
                matches!(ahead.next(), Some(n) if n.is_alphabetic())
            } else {
                false
            };
            if !inside {
                break;
            }
            numeric |= d.is_numeric();
            prev = d;
            len += 1;
            end = i + d.len_utf8();
            chars.next();
        }
        if numeric {
            drops.numeric += 1;
        } else if len < config.min_word_length {
            drops.too_short += 1;
        } else if len > config.max_word_length {
            drops.too_long += 1;
        } else {
            emit(&text[start..end], len);
        }
    }
}

/// Splits text into words, in document order.
pub fn tokenize(text: &str, config: &TokenizerConfig) -> Vec<String> {
    tokenize_with_drops(text, config).0
}

pub fn tokenize_with_drops(text: &str, config: &TokenizerConfig) -> (Vec<String>, DropCounts) {
    let text = normalized(text);
    let mut drops = DropCounts::default();
    let mut words = Vec::new();
    scan(&text, config, &mut drops, |w, _| words.push(w.to_owned()));
    (words, drops)
}

/// Length of each word in the configured unit.
pub fn word_lengths<S: AsRef<str>>(words: &[S], config: &TokenizerConfig) -> Vec<Symbol> {
    match config.length_unit {
        LengthUnit::Codepoints => words
            .iter()
            .map(|w| w.as_ref().chars().count().min(Symbol::MAX as usize) as Symbol)
            .collect(),
    }
}

/// `word_lengths(tokenize(text))` without materializing the words.
pub fn text_lengths(text: &str, config: &TokenizerConfig) -> (Vec<Symbol>, DropCounts) {
    let text = normalized(text);
    let mut drops = DropCounts::default();
    let mut lengths = Vec::with_capacity(text.len() / 5);
    scan(&text, config, &mut drops, |_, len| lengths.push(len as Symbol));
    (lengths, drops)
}

/// Where one document sits inside a concatenated series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceRange {
    pub id: String,
    pub start: usize,
    pub end: usize,
    #[serde(default)]
    pub drops: DropCounts,
}

impl SourceRange {
    pub fn range(&self) -> Range<usize> {
        self.start..self.end
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordLengthSeries {
    pub category: Category,
    pub lengths: Vec<Symbol>,
    pub sources: Vec<SourceRange>,
}

impl WordLengthSeries {
    /// A series with a single synthetic source covering all of `lengths`.
    pub fn from_lengths(category: Category, lengths: Vec<Symbol>) -> Self {
        let sources = vec![SourceRange {
            id: category.to_string(),
            start: 0,
            end: lengths.len(),
            drops: DropCounts::default(),
        }];
        Self {
            category,
            lengths,
            sources,
        }
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn drops(&self) -> DropCounts {
        let mut total = DropCounts::default();
        for s in &self.sources {
            total.add(&s.drops);
        }
        total
    }

    /// The lengths contributed by one document.
    pub fn document(&self, id: &str) -> Option<&[Symbol]> {
        self.sources
            .iter()
            .find(|s| s.id == id)
            .map(|s| &self.lengths[s.range()])
    }
}

#[derive(Debug, Clone, Default)]
pub struct CategorySeries {
    pub series: Vec<WordLengthSeries>,
    pub warnings: Vec<String>,
}

/// Concatenates documents into one series per category.
///
/// Categories come out sorted; documents keep their input order inside a
/// category. When `declared` is given, every document must belong to it and
/// declared categories without words are reported as warnings.
pub fn build_category_series(
    docs: &[Document],
    config: &TokenizerConfig,
    declared: Option<&BTreeSet<Category>>,
) -> Result<CategorySeries> {
    config.validate()?;
    let mut seen = HashSet::new();
    for d in docs {
        if d.id.is_empty() {
            return Err(Error::Config("document id must not be empty".into()));
        }
        if !seen.insert(d.id.as_str()) {
            return Err(Error::DuplicateId(d.id.clone()));
        }
        if let Some(set) = declared {
            if !set.contains(&d.category()) {
                return Err(Error::UndeclaredCategory {
                    id: d.id.clone(),
                    category: d.category(),
                });
            }
        }
    }

    let per_doc: Vec<(Vec<Symbol>, DropCounts)> =
        docs.par_iter().map(|d| text_lengths(&d.text, config)).collect();

    let mut grouped: BTreeMap<Category, WordLengthSeries> = BTreeMap::new();
    if let Some(set) = declared {
        for c in set {
            grouped.insert(
                c.clone(),
                WordLengthSeries {
                    category: c.clone(),
                    lengths: Vec::new(),
                    sources: Vec::new(),
                },
            );
        }
    }
    for (doc, (lengths, drops)) in docs.iter().zip(per_doc) {
        let cat = doc.category();
        let series = grouped.entry(cat.clone()).or_insert_with(|| WordLengthSeries {
            category: cat,
            lengths: Vec::new(),
            sources: Vec::new(),
        });
        let start = series.lengths.len();
        series.lengths.extend_from_slice(&lengths);
        series.sources.push(SourceRange {
            id: doc.id.clone(),
            start,
            end: series.lengths.len(),
            drops,
        });
    }

    let mut out = CategorySeries::default();
    for (cat, series) in grouped {
        if series.sources.is_empty() {
            out.warnings.push(format!("category {cat} has no documents; omitted"));
        } else if series.lengths.is_empty() {
            out.warnings.push(format!("category {cat} has no words; omitted"));
        } else {
            out.series.push(series);
        }
    }
    Ok(out)
}

/// One line of a manifest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub path: PathBuf,
    pub language: String,
    pub genre: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
}

impl ManifestEntry {
    pub fn id(&self) -> String {
        self.id
            .clone()
            .unwrap_or_else(|| self.path.to_string_lossy().into_owned())
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonManifest {
    List(Vec<ManifestEntry>),
    Wrapped { documents: Vec<ManifestEntry> },
}

/// Reads a JSON or CSV manifest. Relative paths are resolved against the
/// manifest's directory.
pub fn read_manifest(path: &Path) -> Result<Vec<ManifestEntry>> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let malformed = |reason: String| Error::Manifest {
        path: path.to_path_buf(),
        reason,
    };
    let is_csv = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let mut entries: Vec<ManifestEntry> = if is_csv {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(&bytes[..]);
        rdr.deserialize()
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| malformed(e.to_string()))?
    } else {
        match serde_json::from_slice(&bytes).map_err(|e| malformed(e.to_string()))? {
            JsonManifest::List(v) => v,
            JsonManifest::Wrapped { documents } => documents,
        }
    };
    let base = path.parent().unwrap_or(Path::new(""));
    for e in &mut entries {
        if e.language.is_empty() || e.genre.is_empty() {
            return Err(malformed(format!(
                "entry `{}` needs both language and genre",
                e.path.display()
            )));
        }
        if e.id.is_none() {
            e.id = Some(e.path.to_string_lossy().into_owned());
        }
        if e.path.is_relative() {
            e.path = base.join(&e.path);
        }
    }
    Ok(entries)
}

/// Lists `<root>/<language>/<genre>/*.txt` in path order.
pub fn scan_corpus_root(root: &Path) -> Result<Vec<ManifestEntry>> {
    let sorted_dirs = |dir: &Path| -> Result<Vec<PathBuf>> {
        let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(|e| Error::io(dir, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .collect();
        v.sort();
        Ok(v)
    };
    let name = |p: &Path| p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let mut entries = Vec::new();
    for lang_dir in sorted_dirs(root)?.into_iter().filter(|p| p.is_dir()) {
        for genre_dir in sorted_dirs(&lang_dir)?.into_iter().filter(|p| p.is_dir()) {
            for file in sorted_dirs(&genre_dir)? {
                if file.is_file() && file.extension().is_some_and(|e| e == "txt") {
                    let rel = file.strip_prefix(root).unwrap_or(&file);
                    entries.push(ManifestEntry {
                        id: Some(rel.to_string_lossy().into_owned()),
                        language: name(&lang_dir),
                        genre: name(&genre_dir),
                        path: file.clone(),
                    });
                }
            }
        }
    }
    Ok(entries)
}

/// Reads every manifest entry. All failures are collected so each bad
/// document gets its own diagnostic.
pub fn load_documents(entries: &[ManifestEntry]) -> std::result::Result<Vec<Document>, Vec<Error>> {
    if entries.is_empty() {
        return Err(vec![Error::NoDocuments]);
    }
    let results: Vec<Result<Document>> = entries
        .par_iter()
        .map(|e| {
            let bytes = std::fs::read(&e.path).map_err(|err| Error::io(&e.path, err))?;
            Document::from_bytes(e.id(), &e.language, &e.genre, bytes)
        })
        .collect();
    let (ok, errs): (Vec<_>, Vec<_>) = results.into_iter().partition(|r| r.is_ok());
    if errs.is_empty() {
        Ok(ok.into_iter().map(|r| r.unwrap()).collect())
    } else {
        Err(errs.into_iter().map(|r| r.unwrap_err()).collect())
    }
}
