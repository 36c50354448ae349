//! Corpus loading, lexicons and descriptive statistics.

use std::collections::{BTreeSet, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::{csv_writer, finish_csv, to_json_pretty};
use crate::textprep::tokenize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_path: Option<PathBuf>,
}

impl Document {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        Document {
            id: id.into(),
            text: text.into(),
            source_path: None,
        }
    }
}

/// Loads a corpus from a directory of `*.txt` files (one document per file,
/// id = file stem) or from a JSONL file with one `{"id", "text"}` object per
/// line. Documents come back sorted by id.
pub fn load_corpus(root: impl AsRef<Path>) -> Result<Vec<Document>> {
    let root = root.as_ref();
    let meta = fs::metadata(root).map_err(|e| Error::io(root, e))?;
    let mut docs = if meta.is_dir() {
        load_dir(root)?
    } else {
        load_jsonl(root)?
    };
    docs.sort_by(|a, b| a.id.cmp(&b.id));
    check_ids(&docs)?;
    Ok(docs)
}

fn load_dir(root: &Path) -> Result<Vec<Document>> {
    let mut docs = Vec::new();
    for entry in fs::read_dir(root).map_err(|e| Error::io(root, e))? {
        let path = entry.map_err(|e| Error::io(root, e))?.path();
        if !path.is_file() || path.extension().and_then(|e| e.to_str()) != Some("txt") {
            continue;
        }
        let id = path
            .file_stem()
            .and_then(|s| s.to_str())
            .ok_or_else(|| {
                Error::validation(format!("file name is not valid UTF-8: {}", path.display()))
            })?
            .to_string();
        let bytes = fs::read(&path).map_err(|e| Error::io(&path, e))?;
        let text = decode_utf8(bytes, &path)?;
        docs.push(Document {
            id,
            text,
            source_path: Some(path),
        });
    }
    Ok(docs)
}

#[derive(Deserialize)]
struct JsonlRecord {
    id: String,
    text: String,
}

fn load_jsonl(path: &Path) -> Result<Vec<Document>> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let content = decode_utf8(bytes, path)?;
    let mut docs = Vec::new();
    for (lineno, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec: JsonlRecord = serde_json::from_str(line).map_err(|e| {
            Error::validation(format!("{}:{}: {e}", path.display(), lineno + 1))
        })?;
        docs.push(Document {
            id: rec.id,
            text: rec.text,
            source_path: Some(path.to_path_buf()),
        });
    }
    Ok(docs)
}

fn decode_utf8(bytes: Vec<u8>, path: &Path) -> Result<String> {
    String::from_utf8(bytes).map_err(|e| {
        Error::validation(format!(
            "{}: invalid UTF-8 at byte offset {}",
            path.display(),
            e.utf8_error().valid_up_to()
        ))
    })
}

fn check_ids(docs: &[Document]) -> Result<()> {
    let mut seen = HashSet::with_capacity(docs.len());
    for d in docs {
        if d.id.is_empty() {
            return Err(Error::validation("document with empty id"));
        }
        if !seen.insert(d.id.as_str()) {
            return Err(Error::validation(format!("duplicate document id `{}`", d.id)));
        }
    }
    Ok(())
}

/// A named set of lowercase words without internal whitespace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lexicon {
    pub name: String,
    words: BTreeSet<String>,
}

impl Lexicon {
    /// Builds a lexicon, lowercasing and deduplicating `words`. Words that are
    /// empty or contain whitespace are rejected.
    pub fn new<I, S>(name: impl Into<String>, words: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let name = name.into();
        let mut set = BTreeSet::new();
        for w in words {
            let w = w.as_ref().trim();
            if w.is_empty() || w.chars().any(char::is_whitespace) {
                return Err(Error::validation(format!(
                    "lexicon `{name}`: invalid entry `{w}`"
                )));
            }
            set.insert(w.to_lowercase());
        }
        Ok(Lexicon { name, words: set })
    }

    pub fn empty(name: impl Into<String>) -> Self {
        Lexicon {
            name: name.into(),
            words: BTreeSet::new(),
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

/// Reads a lexicon file: one word per line, `#` comments and blank lines
/// skipped. An empty result is an error.
pub fn load_lexicon(path: impl AsRef<Path>, name: &str) -> Result<Lexicon> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let content = decode_utf8(bytes, path)?;
    let words = content
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let lex = Lexicon::new(name, words)?;
    if lex.is_empty() {
        return Err(Error::validation(format!(
            "lexicon `{name}` from {} has no entries",
            path.display()
        )));
    }
    Ok(lex)
}

#[derive(Debug, Clone)]
pub struct EmotionLexicons {
    pub positive: Lexicon,
    pub negative: Lexicon,
}

/// Corpus-level descriptive statistics on raw tokens (lowercased, punctuation
/// stripped, before stop-word removal and stemming).
///
/// Standard deviations use the population formula; multiply by
/// `sqrt(n / (n - 1))` for the sample estimate. Empty documents count toward
/// the token and type means but are excluded from the TTR mean.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusStats {
    pub n_docs: usize,
    pub tokens_mean: f64,
    pub tokens_sd: f64,
    pub types_mean: f64,
    pub types_sd: f64,
    pub ttr_mean: f64,
    pub ttr_sd: f64,
    pub six_letter_ratio: f64,
    pub positive_count: Option<u64>,
    pub negative_count: Option<u64>,
    /// `positive_count / negative_count - 1`; `None` without lexicons or when
    /// there are no negative matches.
    pub pos_neg_excess: Option<f64>,
}

#[derive(Debug, Default, Clone, Copy)]
struct DocCounts {
    tokens: u64,
    types: u64,
    long_words: u64,
    positive: u64,
    negative: u64,
}

fn count_document(text: &str, keep_digits: bool, emotions: Option<&EmotionLexicons>) -> DocCounts {
    let tokens = tokenize(text, keep_digits);
    let types: HashSet<&str> = tokens.iter().map(String::as_str).collect();
    let mut c = DocCounts {
        tokens: tokens.len() as u64,
        types: types.len() as u64,
        ..DocCounts::default()
    };
    for t in &tokens {
        if t.chars().filter(|ch| ch.is_alphabetic()).count() >= 6 {
            c.long_words += 1;
        }
        if let Some(lex) = emotions {
            c.positive += u64::from(lex.positive.contains(t));
            c.negative += u64::from(lex.negative.contains(t));
        }
    }
    c
}

fn mean_sd(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

pub fn corpus_stats(
    docs: &[Document],
    emotions: Option<&EmotionLexicons>,
    keep_digits: bool,
) -> Result<CorpusStats> {
    if docs.is_empty() {
        return Err(Error::validation("corpus statistics need at least one document"));
    }
    let counts: Vec<DocCounts> = docs
        .par_iter()
        .map(|d| count_document(&d.text, keep_digits, emotions))
        .collect();

    let tokens: Vec<f64> = counts.iter().map(|c| c.tokens as f64).collect();
    let types: Vec<f64> = counts.iter().map(|c| c.types as f64).collect();
    let ttr: Vec<f64> = counts
        .iter()
        .filter(|c| c.tokens > 0)
        .map(|c| c.types as f64 / c.tokens as f64)
        .collect();
    if ttr.is_empty() {
        return Err(Error::validation(
            "every document is empty; type/token ratio is undefined",
        ));
    }

    let (tokens_mean, tokens_sd) = mean_sd(&tokens);
    let (types_mean, types_sd) = mean_sd(&types);
    let (ttr_mean, ttr_sd) = mean_sd(&ttr);
    let total_tokens: u64 = counts.iter().map(|c| c.tokens).sum();
    let long_words: u64 = counts.iter().map(|c| c.long_words).sum();

    let (positive_count, negative_count, pos_neg_excess) = match emotions {
        Some(_) => {
            let pos: u64 = counts.iter().map(|c| c.positive).sum();
            let neg: u64 = counts.iter().map(|c| c.negative).sum();
            let excess = (neg > 0).then(|| pos as f64 / neg as f64 - 1.0);
            (Some(pos), Some(neg), excess)
        }
        None => (None, None, None),
    };

    Ok(CorpusStats {
        n_docs: docs.len(),
        tokens_mean,
        tokens_sd,
        types_mean,
        types_sd,
        ttr_mean,
        ttr_sd,
        six_letter_ratio: long_words as f64 / total_tokens as f64,
        positive_count,
        negative_count,
        pos_neg_excess,
    })
}

impl CorpusStats {
    pub fn to_json(&self) -> Result<String> {
        to_json_pretty(self)
    }

    /// Two-column `measure,value` CSV; undefined values are left empty.
    /// Reals are printed in shortest round-trip form.
    pub fn to_csv(&self) -> Result<String> {
        let opt_u = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        let rows = [
            ("n_docs", self.n_docs.to_string()),
            ("tokens_mean", self.tokens_mean.to_string()),
            ("tokens_sd", self.tokens_sd.to_string()),
            ("types_mean", self.types_mean.to_string()),
            ("types_sd", self.types_sd.to_string()),
            ("ttr_mean", self.ttr_mean.to_string()),
            ("ttr_sd", self.ttr_sd.to_string()),
            ("six_letter_ratio", self.six_letter_ratio.to_string()),
            ("positive_count", opt_u(self.positive_count)),
            ("negative_count", opt_u(self.negative_count)),
            (
                "pos_neg_excess",
                self.pos_neg_excess.map(|x| x.to_string()).unwrap_or_default(),
            ),
        ];
        let mut wtr = csv_writer();
        wtr.write_record(["measure", "value"])?;
        for (k, v) in rows {
            wtr.write_record([k, v.as_str()])?;
        }
        finish_csv(wtr)
    }
}
