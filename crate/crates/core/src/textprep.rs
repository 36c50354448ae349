//! Text normalization: tokenization, stop-word removal and Snowball stemming.
//!
//! The pipeline order is fixed: tokenize (lowercased letter runs), drop
//! stop-words by exact match on the surface form, then stem every survivor.
//! Stop-words are matched before stemming, so a stop list must contain the
//! inflected forms it wants removed.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rust_stemmers::{Algorithm, Stemmer};
use serde::{Deserialize, Serialize};

use crate::corpus::{Document, Lexicon};
use crate::error::{Error, Result};

/// Languages with a Snowball stemmer available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    Arabic,
    Danish,
    Dutch,
    English,
    Finnish,
    French,
    German,
    Greek,
    Hungarian,
    Italian,
    Norwegian,
    Portuguese,
    Romanian,
    Russian,
    Spanish,
    Swedish,
    Tamil,
    Turkish,
}

impl Language {
    pub const ALL: [Language; 18] = [
        Language::Arabic,
        Language::Danish,
        Language::Dutch,
        Language::English,
        Language::Finnish,
        Language::French,
        Language::German,
        Language::Greek,
        Language::Hungarian,
        Language::Italian,
        Language::Norwegian,
        Language::Portuguese,
        Language::Romanian,
        Language::Russian,
        Language::Spanish,
        Language::Swedish,
        Language::Tamil,
        Language::Turkish,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Language::Arabic => "arabic",
            Language::Danish => "danish",
            Language::Dutch => "dutch",
            Language::English => "english",
            Language::Finnish => "finnish",
            Language::French => "french",
            Language::German => "german",
            Language::Greek => "greek",
            Language::Hungarian => "hungarian",
            Language::Italian => "italian",
            Language::Norwegian => "norwegian",
            Language::Portuguese => "portuguese",
            Language::Romanian => "romanian",
            Language::Russian => "russian",
            Language::Spanish => "spanish",
            Language::Swedish => "swedish",
            Language::Tamil => "tamil",
            Language::Turkish => "turkish",
        }
    }

    fn algorithm(self) -> Algorithm {
        match self {
            Language::Arabic => Algorithm::Arabic,
            Language::Danish => Algorithm::Danish,
            Language::Dutch => Algorithm::Dutch,
            Language::English => Algorithm::English,
            Language::Finnish => Algorithm::Finnish,
            Language::French => Algorithm::French,
            Language::German => Algorithm::German,
            Language::Greek => Algorithm::Greek,
            Language::Hungarian => Algorithm::Hungarian,
            Language::Italian => Algorithm::Italian,
            Language::Norwegian => Algorithm::Norwegian,
            Language::Portuguese => Algorithm::Portuguese,
            Language::Romanian => Algorithm::Romanian,
            Language::Russian => Algorithm::Russian,
            Language::Spanish => Algorithm::Spanish,
            Language::Swedish => Algorithm::Swedish,
            Language::Tamil => Algorithm::Tamil,
            Language::Turkish => Algorithm::Turkish,
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Language {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_lowercase();
        Language::ALL
            .iter()
            .copied()
            .find(|l| l.name() == wanted)
            .ok_or_else(|| {
                let names: Vec<_> = Language::ALL.iter().map(|l| l.name()).collect();
                Error::Config(format!(
                    "unsupported language `{s}` (supported: {})",
                    names.join(", ")
                ))
            })
    }
}

/// Splits `text` into lowercase tokens.
///
/// A token is a maximal run of Unicode letters (plus numeric characters when
/// `keep_digits` is set); every other character separates tokens, so hyphens
/// and apostrophes split words.
pub fn tokenize(text: &str, keep_digits: bool) -> Vec<String> {
    let is_token_char = |c: char| c.is_alphabetic() || (keep_digits && c.is_numeric());
    text.split(|c: char| !is_token_char(c))
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

/// Stems a single lowercase word with the Snowball algorithm for `language`.
///
/// Stemming is not idempotent in general: stemming a stem may shorten it
/// further. An empty word stems to the empty string.
pub fn stem_word(word: &str, language: Language) -> String {
    Stemmer::create(language.algorithm()).stem(word).into_owned()
}

#[derive(Debug, Clone)]
pub struct PrepConfig {
    pub language: Language,
    pub stopwords: Lexicon,
    pub keep_digits: bool,
}

impl PrepConfig {
    pub fn new(language: Language, stopwords: Lexicon) -> Self {
        PrepConfig {
            language,
            stopwords,
            keep_digits: false,
        }
    }

    /// Stems one surface word the same way `preprocess` would, or returns
    /// `None` when the word is a stop-word. The word must be a single token.
    pub fn stem_surface(&self, word: &str) -> Result<Option<String>> {
        let tokens = tokenize(word, self.keep_digits);
        let [token] = tokens.as_slice() else {
            return Err(Error::validation(format!(
                "`{word}` is not a single token (got {} tokens)",
                tokens.len()
            )));
        };
        if self.stopwords.contains(token) {
            return Ok(None);
        }
        Ok(Some(stem_word(token, self.language)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProcessedDocument {
    pub doc_id: String,
    /// Lowercased tokens before stop-word removal and stemming.
    pub raw_tokens: Vec<String>,
    pub stems: Vec<String>,
    /// `stem_of[k]` is the index in `raw_tokens` that produced `stems[k]`.
    pub stem_of: Vec<usize>,
}

pub fn preprocess(doc: &Document, cfg: &PrepConfig) -> ProcessedDocument {
    let stemmer = Stemmer::create(cfg.language.algorithm());
    let raw_tokens = tokenize(&doc.text, cfg.keep_digits);
    let mut stems = Vec::with_capacity(raw_tokens.len());
    let mut stem_of = Vec::with_capacity(raw_tokens.len());
    for (pos, token) in raw_tokens.iter().enumerate() {
        if cfg.stopwords.contains(token) {
            continue;
        }
        let stem = stemmer.stem(token);
        // Snowball never empties a nonempty word, but keep the invariant local.
        let stem = if stem.is_empty() {
            token.clone()
        } else {
            stem.into_owned()
        };
        stems.push(stem);
        stem_of.push(pos);
    }
    ProcessedDocument {
        doc_id: doc.id.clone(),
        raw_tokens,
        stems,
        stem_of,
    }
}

/// Preprocesses every document, in parallel, preserving input order.
pub fn preprocess_all(docs: &[Document], cfg: &PrepConfig) -> Vec<ProcessedDocument> {
    docs.par_iter().map(|d| preprocess(d, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(text: &str) -> Document {
        Document::new("d", text)
    }

    fn cfg(lang: Language, stop: &[&str]) -> PrepConfig {
        PrepConfig::new(lang, Lexicon::new("stop", stop.iter().copied()).unwrap())
    }

    #[test]
    fn tokenize_examples() {
        assert_eq!(tokenize("Mi piace, davvero!", false), ["mi", "piace", "davvero"]);
        assert!(tokenize("", false).is_empty());
        assert_eq!(tokenize("e-mail 2021", false), ["e", "mail"]);
        assert_eq!(tokenize("e-mail 2021", true), ["e", "mail", "2021"]);
    }

    #[test]
    fn tokenize_unicode() {
        assert_eq!(tokenize("PERCHÉ l'Università?", false), ["perché", "l", "università"]);
        assert_eq!(tokenize("  \t\n ", false), Vec::<String>::new());
    }

    #[test]
    fn stem_word_examples() {
        assert_eq!(stem_word("abbandonata", Language::Italian), "abbandon");
        assert_eq!(stem_word("a", Language::English), "a");
        assert_eq!(stem_word("cats", Language::English), "cat");
    }

    #[test]
    fn preprocess_italian() {
        let p = preprocess(&doc("il gatto corre"), &cfg(Language::Italian, &["il"]));
        assert_eq!(p.stems, ["gatt", "corr"]);
        assert_eq!(p.stem_of, [1, 2]);
        assert_eq!(p.raw_tokens, ["il", "gatto", "corre"]);
    }

    #[test]
    fn preprocess_all_stopwords() {
        let p = preprocess(&doc("and and and"), &cfg(Language::English, &["and"]));
        assert!(p.stems.is_empty());
        assert_eq!(p.raw_tokens.len(), 3);
    }

    #[test]
    fn preprocess_english_no_stopwords() {
        let p = preprocess(&doc("running runner"), &cfg(Language::English, &[]));
        assert_eq!(p.stems, ["run", "runner"]);
    }

    #[test]
    fn stopwords_match_surface_not_stem() {
        // "gatti" stems to "gatt" but only the exact surface "gatto" is listed.
        let p = preprocess(&doc("gatto gatti"), &cfg(Language::Italian, &["gatto"]));
        assert_eq!(p.stems, ["gatt"]);
        assert_eq!(p.stem_of, [1]);
    }

    #[test]
    fn language_parsing() {
        assert_eq!("Italian".parse::<Language>().unwrap(), Language::Italian);
        let err = "klingon".parse::<Language>().unwrap_err();
        assert!(matches!(err, Error::Config(ref m) if m.contains("klingon")));
    }

    #[test]
    fn stem_surface_rejects_multi_token() {
        let c = cfg(Language::Italian, &["il"]);
        assert_eq!(c.stem_surface("Prezzo").unwrap().as_deref(), Some("prezz"));
        assert_eq!(c.stem_surface("il").unwrap(), None);
        assert!(c.stem_surface("me/io").is_err());
        assert!(c.stem_surface("").is_err());
    }
}
