//! Semantic Brand Score components and their standardized sum.
//!
//! - prevalence: term frequency in the preprocessed corpus
//! - diversity: distinct-neighbor count, or a distinctiveness-weighted sum
//!   that discounts neighbors connected to many other terms
//! - connectivity: weighted betweenness centrality
//!
//! Each component is z-scored over every node of the network (population
//! standard deviation) and the SBS is the sum of the three z-scores.

mod betweenness;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::{csv_writer, finish_csv, real6, to_json_pretty};
use crate::network::CooccurrenceNetwork;

pub use betweenness::{weighted_betweenness, EXACT_NODE_LIMIT, TIE_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiversityMode {
    /// Number of distinct neighbors.
    Degree,
    /// Sum over neighbors `u` of `log10((n - 1) / deg(u))`, with `n` the node
    /// count of the network.
    #[default]
    Distinctiveness,
}

impl fmt::Display for DiversityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiversityMode::Degree => "degree",
            DiversityMode::Distinctiveness => "distinctiveness",
        })
    }
}

impl FromStr for DiversityMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degree" => Ok(DiversityMode::Degree),
            "distinctiveness" => Ok(DiversityMode::Distinctiveness),
            other => Err(Error::Config(format!(
                "unknown diversity mode `{other}` (expected degree or distinctiveness)"
            ))),
        }
    }
}

pub fn prevalence(net: &CooccurrenceNetwork, term: &str) -> Result<u64> {
    net.term_freq(term)
}

pub fn diversity(net: &CooccurrenceNetwork, term: &str, mode: DiversityMode) -> Result<f64> {
    let i = net.node_index(term)?;
    Ok(diversity_all(net, mode)?[i])
}

/// Diversity of every node, indexed like `net.terms()`.
pub fn diversity_all(net: &CooccurrenceNetwork, mode: DiversityMode) -> Result<Vec<f64>> {
    let adj = net.adjacency();
    match mode {
        DiversityMode::Degree => Ok(adj.iter().map(|l| l.len() as f64).collect()),
        DiversityMode::Distinctiveness => {
            let n = net.node_count();
            if n < 2 {
                return Err(Error::validation(format!(
                    "distinctiveness diversity needs at least 2 nodes, network has {n}"
                )));
            }
            let others = (n - 1) as f64;
            Ok(adj
                .iter()
                .map(|list| {
                    list.iter()
                        .map(|&(u, _)| (others / adj[u].len() as f64).log10())
                        .sum()
                })
                .collect())
        }
    }
}

/// Weighted betweenness of each requested term.
pub fn connectivity<S: AsRef<str>>(
    net: &CooccurrenceNetwork,
    terms: &[S],
) -> Result<BTreeMap<String, f64>> {
    let idx = terms
        .iter()
        .map(|t| net.node_index(t.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    let bc = weighted_betweenness(net);
    Ok(terms
        .iter()
        .zip(idx)
        .map(|(t, i)| (t.as_ref().to_string(), bc[i]))
        .collect())
}

/// z-scores with the population standard deviation; a constant input maps to
/// all zeros.
pub fn standardize(values: &[f64]) -> Vec<f64> {
    let Some(first) = values.first() else {
        return Vec::new();
    };
    if values.iter().all(|v| v == first) {
        return vec![0.0; values.len()];
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let sd = (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
    values.iter().map(|v| (v - mean) / sd).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SbsReport {
    pub term: String,
    pub prevalence: u64,
    pub diversity: f64,
    pub connectivity: f64,
    pub z_prevalence: f64,
    pub z_diversity: f64,
    pub z_connectivity: f64,
    pub sbs: f64,
}

/// Scores `focal_terms`, standardizing every component over all nodes.
/// Reports are sorted by SBS descending, then by term.
pub fn sbs<S: AsRef<str>>(
    net: &CooccurrenceNetwork,
    focal_terms: &[S],
    mode: DiversityMode,
) -> Result<Vec<SbsReport>> {
    let focal: BTreeSet<usize> = focal_terms
        .iter()
        .map(|t| net.node_index(t.as_ref()))
        .collect::<Result<_>>()?;
    let n = net.node_count();
    if n < 2 {
        return Err(Error::validation(format!(
            "SBS needs a network with at least 2 nodes, got {n}"
        )));
    }

    let prev: Vec<f64> = net.frequencies().iter().map(|&f| f as f64).collect();
    let div = diversity_all(net, mode)?;
    let conn = weighted_betweenness(net);
    let (zp, zd, zc) = (standardize(&prev), standardize(&div), standardize(&conn));

    let mut reports: Vec<SbsReport> = focal
        .into_iter()
        .map(|i| SbsReport {
            term: net.terms()[i].clone(),
            prevalence: net.frequencies()[i],
            diversity: div[i],
            connectivity: conn[i],
            z_prevalence: zp[i],
            z_diversity: zd[i],
            z_connectivity: zc[i],
            sbs: zp[i] + zd[i] + zc[i],
        })
        .collect();
    reports.sort_by(|a, b| b.sbs.total_cmp(&a.sbs).then_with(|| a.term.cmp(&b.term)));
    Ok(reports)
}

pub const SBS_CSV_HEADER: [&str; 8] = [
    "term",
    "prevalence",
    "diversity",
    "connectivity",
    "z_prevalence",
    "z_diversity",
    "z_connectivity",
    "sbs",
];

/// CSV rows of `reports` in their given order, reals to six decimals.
pub fn reports_to_csv(reports: &[SbsReport]) -> Result<String> {
    let mut wtr = csv_writer();
    wtr.write_record(SBS_CSV_HEADER)?;
    for r in reports {
        wtr.write_record([
            r.term.clone(),
            r.prevalence.to_string(),
            real6(r.diversity),
            real6(r.connectivity),
            real6(r.z_prevalence),
            real6(r.z_diversity),
            real6(r.z_connectivity),
            real6(r.sbs),
        ])?;
    }
    finish_csv(wtr)
}

pub fn reports_to_json(reports: &[SbsReport]) -> Result<String> {
    to_json_pretty(&reports)
}

/// Per-component table for `terms` as CSV, ranked like [`sbs`].
pub fn component_table<S: AsRef<str>>(
    net: &CooccurrenceNetwork,
    terms: &[S],
    mode: DiversityMode,
) -> Result<String> {
    reports_to_csv(&sbs(net, terms, mode)?)
}
