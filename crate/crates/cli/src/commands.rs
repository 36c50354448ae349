use std::collections::BTreeSet;

use sbs_core::corpus::{self, CorpusStats, EmotionLexicons};
use sbs_core::metrics::{self, SbsReport};
use sbs_core::network::{self, ConceptCluster, CooccurrenceNetwork};
use sbs_core::semantics;
use sbs_core::textprep::{self, PrepConfig};
use serde_json::{json, Value};

use crate::config::{Overrides, RunConfig};
use crate::output::{file_sha256, sha256_hex, write_atomic};
use crate::{CliError, StageExt, TOOL_NAME, TOOL_VERSION};

pub const STATS_OUTPUTS: [&str; 2] = ["stats.json", "stats.csv"];

pub const ANALYZE_OUTPUTS: [&str; 8] = [
    "network.graphml",
    "network.dot",
    "sbs.csv",
    "sbs.json",
    "associations.json",
    "distances.csv",
    "embedding.csv",
    "run_manifest.json",
];

/// The only manifest key whose value changes between identical runs.
pub const MANIFEST_TIMESTAMP_KEY: &str = "generated_at";

#[derive(Debug, Clone)]
pub struct StatsSummary {
    pub stats: CorpusStats,
}

#[derive(Debug, Clone)]
pub struct AnalyzeSummary {
    pub nodes: usize,
    pub edges: usize,
    pub focal: Vec<String>,
    pub reports: Vec<SbsReport>,
}

fn load_emotions(cfg: &RunConfig) -> Result<Option<EmotionLexicons>, CliError> {
    match (&cfg.positive_lexicon_path, &cfg.negative_lexicon_path) {
        (Some(p), Some(n)) => Ok(Some(EmotionLexicons {
            positive: corpus::load_lexicon(p, "positive").stage("corpus")?,
            negative: corpus::load_lexicon(n, "negative").stage("corpus")?,
        })),
        _ => Ok(None),
    }
}

/// Writes `stats.json` and `stats.csv` for the configured corpus.
pub fn cmd_stats(cfg: &RunConfig) -> Result<StatsSummary, CliError> {
    let docs = corpus::load_corpus(&cfg.corpus_path).stage("corpus")?;
    let emotions = load_emotions(cfg)?;
    let stats = corpus::corpus_stats(&docs, emotions.as_ref(), cfg.keep_digits).stage("corpus")?;
    write_atomic(&cfg.output_dir, "stats.json", stats.to_json().stage("corpus")?.as_bytes())?;
    write_atomic(&cfg.output_dir, "stats.csv", stats.to_csv().stage("corpus")?.as_bytes())?;
    Ok(StatsSummary { stats })
}

/// Runs the full pipeline and writes every file in [`ANALYZE_OUTPUTS`].
pub fn cmd_analyze(cfg: &RunConfig, overrides: Overrides) -> Result<AnalyzeSummary, CliError> {
    let mut cfg = cfg.clone();
    cfg.apply_overrides(overrides)?;

    let docs = corpus::load_corpus(&cfg.corpus_path).stage("corpus")?;
    let stopwords = corpus::load_lexicon(&cfg.stopwords_path, "stopwords").stage("corpus")?;
    let prep = PrepConfig {
        language: cfg.language,
        stopwords,
        keep_digits: cfg.keep_digits,
    };
    let processed = textprep::preprocess_all(&docs, &prep);
    log::info!("preprocessed {} documents", processed.len());

    let raw_net = network::build_network(&processed, cfg.network_params()).stage("network")?;
    let clusters = match &cfg.clusters_path {
        Some(p) => network::load_clusters(p, &prep).stage("network")?,
        None => Vec::new(),
    };
    let net = if clusters.is_empty() {
        raw_net
    } else {
        network::merge_clusters(&raw_net, &clusters).stage("network")?
    };
    log::info!("network: {} nodes, {} edges", net.node_count(), net.edge_count());

    let focal = resolve_focal(&cfg, &prep, &clusters, &net)?;
    let reports = metrics::sbs(&net, &focal, cfg.diversity_mode).stage("metrics")?;
    let assoc = focal
        .iter()
        .map(|f| semantics::associations(&net, f, cfg.top_n))
        .collect::<sbs_core::Result<Vec<_>>>()
        .stage("semantics")?;
    let distances = semantics::concept_distances(&net, &focal).stage("semantics")?;
    let embedding = semantics::embed_mds(&distances).stage("semantics")?;

    let files: [(&str, String); 7] = [
        ("network.graphml", net.to_graphml()),
        ("network.dot", net.to_dot()),
        ("sbs.csv", metrics::reports_to_csv(&reports).stage("metrics")?),
        ("sbs.json", metrics::reports_to_json(&reports).stage("metrics")?),
        ("associations.json", semantics::associations_to_json(&assoc).stage("semantics")?),
        ("distances.csv", distances.to_csv().stage("semantics")?),
        ("embedding.csv", embedding.to_csv().stage("semantics")?),
    ];
    for (name, body) in &files {
        write_atomic(&cfg.output_dir, name, body.as_bytes())?;
    }

    let manifest = run_manifest(&cfg, overrides, &docs, &prep, &clusters, &net, &focal, &files)?;
    write_atomic(&cfg.output_dir, "run_manifest.json", manifest.as_bytes())?;

    Ok(AnalyzeSummary {
        nodes: net.node_count(),
        edges: net.edge_count(),
        focal,
        reports,
    })
}

/// Maps configured focal words to network nodes: cluster labels pass through,
/// other words are stemmed and, when the stem belongs to a cluster, replaced
/// by its label.
fn resolve_focal(
    cfg: &RunConfig,
    prep: &PrepConfig,
    clusters: &[ConceptCluster],
    net: &CooccurrenceNetwork,
) -> Result<Vec<String>, CliError> {
    let mut wanted: Vec<String> = Vec::new();
    if cfg.use_clusters {
        wanted.extend(clusters.iter().map(|c| c.label.clone()));
    }
    let mut missing = Vec::new();
    for word in &cfg.focal_terms {
        if clusters.iter().any(|c| &c.label == word) {
            wanted.push(word.clone());
            continue;
        }
        match prep.stem_surface(word) {
            Ok(Some(stem)) => {
                let label = clusters.iter().find(|c| c.members.contains(&stem));
                wanted.push(label.map_or(stem, |c| c.label.clone()));
            }
            Ok(None) => missing.push(format!("{word} (stop-word)")),
            Err(e) => return Err(CliError::Stage { stage: "textprep", source: e }),
        }
    }
    let mut seen = BTreeSet::new();
    wanted.retain(|t| seen.insert(t.clone()));

    for t in &wanted {
        if !net.contains(t) {
            let near = nearest_by_prefix(net, t);
            missing.push(if near.is_empty() {
                t.clone()
            } else {
                format!("{t} (nearest: {})", near.join(", "))
            });
        }
    }
    if !missing.is_empty() {
        return Err(CliError::Focal(format!(
            "focal terms not in the network: {}",
            missing.join("; ")
        )));
    }
    if wanted.is_empty() {
        return Err(CliError::Focal(
            "no focal terms: set `focal_terms` or `use_clusters`".into(),
        ));
    }
    Ok(wanted)
}

/// Up to five nodes sharing the longest common prefix with `term`.
fn nearest_by_prefix(net: &CooccurrenceNetwork, term: &str) -> Vec<String> {
    let lcp = |node: &str| {
        term.chars()
            .zip(node.chars())
            .take_while(|(a, b)| a == b)
            .count()
    };
    let best = net.terms().iter().map(|n| lcp(n)).max().unwrap_or(0);
    if best == 0 {
        return Vec::new();
    }
    net.terms()
        .iter()
        .filter(|n| lcp(n) == best)
        .take(5)
        .cloned()
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn run_manifest(
    cfg: &RunConfig,
    overrides: Overrides,
    docs: &[corpus::Document],
    prep: &PrepConfig,
    clusters: &[ConceptCluster],
    net: &CooccurrenceNetwork,
    focal: &[String],
    files: &[(&str, String)],
) -> Result<String, CliError> {
    let optional_digest = |p: &Option<std::path::PathBuf>| -> Result<Value, CliError> {
        Ok(match p {
            Some(p) => json!(file_sha256(p)?),
            None => Value::Null,
        })
    };
    let documents: Vec<Value> = docs
        .iter()
        .map(|d| json!({"id": d.id, "sha256": sha256_hex(d.text.as_bytes())}))
        .collect();
    let outputs: serde_json::Map<String, Value> = files
        .iter()
        .map(|(name, body)| (name.to_string(), json!(sha256_hex(body.as_bytes()))))
        .collect();
    let manifest = json!({
        "tool": TOOL_NAME,
        "version": TOOL_VERSION,
        "command": "analyze",
        "config": Value::Object(cfg.declared.clone()),
        "overrides": {
            "window": overrides.window,
            "min_weight": overrides.min_weight,
            "top_n": overrides.top_n,
        },
        "parameters": {
            "language": prep.language.name(),
            "keep_digits": prep.keep_digits,
            "stopword_count": prep.stopwords.len(),
            "window": cfg.window,
            "min_weight": cfg.min_weight,
            "diversity_mode": cfg.diversity_mode.to_string(),
            "top_n": cfg.top_n,
            "use_clusters": cfg.use_clusters,
            "focal_terms": cfg.focal_terms,
            "resolved_focal": focal,
            "clusters": clusters,
        },
        "inputs": {
            "documents": documents,
            "stopwords_sha256": file_sha256(&cfg.stopwords_path)?,
            "clusters_sha256": optional_digest(&cfg.clusters_path)?,
            "positive_lexicon_sha256": optional_digest(&cfg.positive_lexicon_path)?,
            "negative_lexicon_sha256": optional_digest(&cfg.negative_lexicon_path)?,
        },
        "network": {
            "nodes": net.node_count(),
            "edges": net.edge_count(),
            "total_weight": net.total_weight(),
        },
        "outputs": outputs,
        MANIFEST_TIMESTAMP_KEY: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
    });
    let mut s = serde_json::to_string_pretty(&manifest).expect("manifest is plain JSON");
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use sbs_core::network::NetworkParams;

    #[test]
    fn nearest_nodes_share_the_longest_prefix() {
        let net = CooccurrenceNetwork::from_parts(
            NetworkParams::default(),
            [("prezz", 1), ("prezzi", 1), ("pres", 1), ("zaino", 1)],
            std::iter::empty::<(&str, &str, u64)>(),
        )
        .unwrap();
        assert_eq!(nearest_by_prefix(&net, "prezzar"), ["prezz", "prezzi"]);
        assert_eq!(nearest_by_prefix(&net, "pro"), ["pres", "prezz", "prezzi"]);
        assert!(nearest_by_prefix(&net, "xyz").is_empty());
    }
}
