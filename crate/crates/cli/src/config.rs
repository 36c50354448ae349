//! Run configuration: a JSON object validated field by field.
//!
//! Relative paths are resolved against the directory holding the config
//! file. Unknown fields are rejected with a suggestion for the closest known
//! field name.

use std::fs;
use std::path::{Path, PathBuf};

use sbs_core::metrics::DiversityMode;
use sbs_core::network::NetworkParams;
use sbs_core::textprep::Language;
use serde_json::{Map, Value};

use crate::CliError;

pub const DEFAULT_WINDOW: usize = 5;
pub const DEFAULT_MIN_WEIGHT: u64 = 2;
pub const DEFAULT_TOP_N: usize = 20;

pub const KNOWN_FIELDS: [&str; 14] = [
    "corpus_path",
    "language",
    "stopwords_path",
    "positive_lexicon_path",
    "negative_lexicon_path",
    "clusters_path",
    "window",
    "min_weight",
    "diversity_mode",
    "focal_terms",
    "use_clusters",
    "top_n",
    "keep_digits",
    "output_dir",
];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub corpus_path: PathBuf,
    pub language: Language,
    pub stopwords_path: PathBuf,
    pub positive_lexicon_path: Option<PathBuf>,
    pub negative_lexicon_path: Option<PathBuf>,
    pub clusters_path: Option<PathBuf>,
    pub window: usize,
    pub min_weight: u64,
    pub diversity_mode: DiversityMode,
    pub focal_terms: Vec<String>,
    pub use_clusters: bool,
    pub top_n: usize,
    pub keep_digits: bool,
    pub output_dir: PathBuf,
    /// The config object exactly as read, for the run manifest.
    pub declared: Map<String, Value>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Overrides {
    pub window: Option<usize>,
    pub min_weight: Option<u64>,
    pub top_n: Option<usize>,
}

impl Overrides {
    pub fn is_empty(&self) -> bool {
        *self == Overrides::default()
    }
}

impl RunConfig {
    pub fn network_params(&self) -> NetworkParams {
        NetworkParams {
            window: self.window,
            min_weight: self.min_weight,
        }
    }

    pub fn apply_overrides(&mut self, o: Overrides) -> Result<(), CliError> {
        let mut problems = Vec::new();
        if let Some(w) = o.window {
            check_min(&mut problems, "window", w as u64, 2);
            self.window = w;
        }
        if let Some(m) = o.min_weight {
            check_min(&mut problems, "min_weight", m, 1);
            self.min_weight = m;
        }
        if let Some(t) = o.top_n {
            check_min(&mut problems, "top_n", t as u64, 1);
            self.top_n = t;
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(CliError::Config(problems))
        }
    }
}

fn check_min(problems: &mut Vec<String>, field: &str, value: u64, min: u64) {
    if value < min {
        problems.push(format!("`{field}` must be >= {min}, got {value}"));
    }
}

/// Reads, validates and defaults a config file.
pub fn validate_config(path: impl AsRef<Path>) -> Result<RunConfig, CliError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| {
        CliError::Config(vec![format!("cannot read config {}: {e}", path.display())])
    })?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    parse_config(&text, base)
}

/// Validates config text, resolving relative paths against `base`.
pub fn parse_config(text: &str, base: &Path) -> Result<RunConfig, CliError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Config(vec![format!("config is not valid JSON: {e}")]))?;
    let Value::Object(obj) = value else {
        return Err(CliError::Config(vec!["config must be a JSON object".into()]));
    };

    let mut v = Validator {
        obj: &obj,
        base,
        problems: Vec::new(),
    };
    v.reject_unknown();

    let corpus_path = v.existing_path("corpus_path", true).flatten();
    let language = v.string("language", true).and_then(|s| match s.parse::<Language>() {
        Ok(l) => Some(l),
        Err(e) => {
            v.problems.push(format!("`language`: {e}"));
            None
        }
    });
    let stopwords_path = v.existing_path("stopwords_path", true).flatten();
    let positive_lexicon_path = v.existing_path("positive_lexicon_path", false).flatten();
    let negative_lexicon_path = v.existing_path("negative_lexicon_path", false).flatten();
    let clusters_path = v.existing_path("clusters_path", false).flatten();
    let window = v.integer("window", DEFAULT_WINDOW as u64, 2);
    let min_weight = v.integer("min_weight", DEFAULT_MIN_WEIGHT, 1);
    let top_n = v.integer("top_n", DEFAULT_TOP_N as u64, 1);
    let diversity_mode = match v.string("diversity_mode", false) {
        None => Some(DiversityMode::default()),
        Some(s) => match s.parse::<DiversityMode>() {
            Ok(m) => Some(m),
            Err(e) => {
                v.problems.push(format!("`diversity_mode`: {e}"));
                None
            }
        },
    };
    let focal_terms = v.string_list("focal_terms");
    let use_clusters = v.boolean("use_clusters");
    let keep_digits = v.boolean("keep_digits");
    let output_dir = v.string("output_dir", true).map(|s| base.join(s));

    if let Some(dir) = &output_dir {
        if dir.exists() && !dir.is_dir() {
            v.problems
                .push(format!("`output_dir`: {} exists and is not a directory", dir.display()));
        }
    }
    if obj.contains_key("positive_lexicon_path") != obj.contains_key("negative_lexicon_path") {
        v.problems.push(
            "`positive_lexicon_path` and `negative_lexicon_path` must be given together".into(),
        );
    }
    if use_clusters && !obj.contains_key("clusters_path") {
        v.problems
            .push("`use_clusters` is true but `clusters_path` is missing".into());
    }

    let problems = v.problems;
    match (corpus_path, language, stopwords_path, output_dir, diversity_mode) {
        (Some(corpus_path), Some(language), Some(stopwords_path), Some(output_dir), Some(mode))
            if problems.is_empty() =>
        {
            Ok(RunConfig {
                corpus_path,
                language,
                stopwords_path,
                positive_lexicon_path,
                negative_lexicon_path,
                clusters_path,
                window: window as usize,
                min_weight,
                diversity_mode: mode,
                focal_terms,
                use_clusters,
                top_n: top_n as usize,
                keep_digits,
                output_dir,
                declared: obj,
            })
        }
        _ => Err(CliError::Config(problems)),
    }
}

struct Validator<'a> {
    obj: &'a Map<String, Value>,
    base: &'a Path,
    problems: Vec<String>,
}

impl Validator<'_> {
    fn reject_unknown(&mut self) {
        for key in self.obj.keys() {
            if KNOWN_FIELDS.contains(&key.as_str()) {
                continue;
            }
            let closest = KNOWN_FIELDS
                .iter()
                .map(|k| (strsim::levenshtein(key, k), *k))
                .min()
                .filter(|(d, _)| *d <= 3);
            self.problems.push(match closest {
                Some((_, k)) => format!("unknown field `{key}` (did you mean `{k}`?)"),
                None => format!("unknown field `{key}`"),
            });
        }
    }

    fn string(&mut self, field: &str, required: bool) -> Option<String> {
        match self.obj.get(field) {
            None if required => {
                self.problems.push(format!("`{field}` is required"));
                None
            }
            None => None,
            Some(Value::String(s)) if !s.trim().is_empty() => Some(s.clone()),
            Some(_) => {
                self.problems.push(format!("`{field}` must be a nonempty string"));
                None
            }
        }
    }

    /// `None` on error; `Some(None)` when an optional path is absent.
    fn existing_path(&mut self, field: &str, required: bool) -> Option<Option<PathBuf>> {
        if !required && !self.obj.contains_key(field) {
            return Some(None);
        }
        let p = self.base.join(self.string(field, required)?);
        if p.exists() {
            Some(Some(p))
        } else {
            self.problems
                .push(format!("`{field}`: {} does not exist", p.display()));
            None
        }
    }

    fn integer(&mut self, field: &str, default: u64, min: u64) -> u64 {
        match self.obj.get(field) {
            None => default,
            Some(v) => match v.as_u64() {
                Some(n) if n >= min => n,
                _ => {
                    self.problems
                        .push(format!("`{field}` must be an integer >= {min}, got {v}"));
                    default
                }
            },
        }
    }

    fn boolean(&mut self, field: &str) -> bool {
        match self.obj.get(field) {
            None => false,
            Some(Value::Bool(b)) => *b,
            Some(v) => {
                self.problems.push(format!("`{field}` must be true or false, got {v}"));
                false
            }
        }
    }

    fn string_list(&mut self, field: &str) -> Vec<String> {
        match self.obj.get(field) {
            None => Vec::new(),
            Some(Value::Array(items)) if items.iter().all(Value::is_string) => items
                .iter()
                .filter_map(|x| x.as_str().map(str::to_string))
                .collect(),
            Some(_) => {
                self.problems
                    .push(format!("`{field}` must be an array of strings"));
                Vec::new()
            }
        }
    }
}
