//! Undirected weighted co-occurrence networks over stems.
//!
//! Two stems co-occur when their positions in one document differ by at most
//! `window - 1`. Each qualifying index pair adds 1 to the weight of the
//! unordered stem pair; pairs of identical stems are dropped. Windows never
//! cross document boundaries. After accumulating over the corpus, edges
//! lighter than `min_weight` are removed. Nodes are kept even when all of
//! their edges are filtered away.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::textprep::{PrepConfig, ProcessedDocument};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NetworkParams {
    pub window: usize,
    pub min_weight: u64,
}

impl NetworkParams {
    pub fn new(window: usize, min_weight: u64) -> Result<Self> {
        if window < 2 {
            return Err(Error::validation(format!("window must be >= 2, got {window}")));
        }
        if min_weight < 1 {
            return Err(Error::validation("min_weight must be >= 1, got 0"));
        }
        Ok(NetworkParams { window, min_weight })
    }
}

impl Default for NetworkParams {
    fn default() -> Self {
        NetworkParams {
            window: 5,
            min_weight: 2,
        }
    }
}

/// Node indices follow the lexicographic order of the terms, and edge keys
/// are `(lo, hi)` index pairs, so every iteration order is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CooccurrenceNetwork {
    terms: Vec<String>,
    index: HashMap<String, usize>,
    freq: Vec<u64>,
    edges: BTreeMap<(usize, usize), u64>,
    params: NetworkParams,
}

impl CooccurrenceNetwork {
    /// Assembles a network from explicit parts. Every edge endpoint must be
    /// listed in `term_freq`; edges must be unique, loop-free and at least
    /// `params.min_weight` heavy.
    pub fn from_parts<T, E, S>(params: NetworkParams, term_freq: T, edges: E) -> Result<Self>
    where
        T: IntoIterator<Item = (S, u64)>,
        E: IntoIterator<Item = (S, S, u64)>,
        S: Into<String>,
    {
        let freq_map: BTreeMap<String, u64> =
            term_freq.into_iter().map(|(t, f)| (t.into(), f)).collect();
        let terms: Vec<String> = freq_map.keys().cloned().collect();
        let freq: Vec<u64> = freq_map.values().copied().collect();
        let index = index_of(&terms);

        let mut edge_map = BTreeMap::new();
        for (u, v, w) in edges {
            let (u, v) = (u.into(), v.into());
            let lookup = |t: &str| {
                index
                    .get(t)
                    .copied()
                    .ok_or_else(|| Error::validation(format!("edge endpoint `{t}` is not a node")))
            };
            let (a, b) = (lookup(&u)?, lookup(&v)?);
            if a == b {
                return Err(Error::validation(format!("self-loop on `{u}`")));
            }
            if w < params.min_weight {
                return Err(Error::validation(format!(
                    "edge {u}-{v} weight {w} is below min_weight {}",
                    params.min_weight
                )));
            }
            if edge_map.insert(ordered(a, b), w).is_some() {
                return Err(Error::validation(format!("duplicate edge {u}-{v}")));
            }
        }
        Ok(CooccurrenceNetwork {
            terms,
            index,
            freq,
            edges: edge_map,
            params,
        })
    }

    pub fn params(&self) -> NetworkParams {
        self.params
    }

    pub fn node_count(&self) -> usize {
        self.terms.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Terms in node-index (lexicographic) order.
    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn contains(&self, term: &str) -> bool {
        self.index.contains_key(term)
    }

    pub fn node_index(&self, term: &str) -> Result<usize> {
        self.index
            .get(term)
            .copied()
            .ok_or_else(|| Error::UnknownTerm(term.to_string()))
    }

    pub fn term_freq(&self, term: &str) -> Result<u64> {
        Ok(self.freq[self.node_index(term)?])
    }

    pub fn frequencies(&self) -> &[u64] {
        &self.freq
    }

    /// Weight of the edge between `u` and `v`, 0 when absent or unknown.
    pub fn weight(&self, u: &str, v: &str) -> u64 {
        match (self.index.get(u), self.index.get(v)) {
            (Some(&a), Some(&b)) if a != b => self.edges.get(&ordered(a, b)).copied().unwrap_or(0),
            _ => 0,
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, u64)> + '_ {
        self.edges
            .iter()
            .map(|(&(a, b), &w)| (self.terms[a].as_str(), self.terms[b].as_str(), w))
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.values().sum()
    }

    /// Neighbor lists by node index, each sorted by neighbor index.
    pub fn adjacency(&self) -> Vec<Vec<(usize, u64)>> {
        let mut adj = vec![Vec::new(); self.terms.len()];
        for (&(a, b), &w) in &self.edges {
            adj[a].push((b, w));
            adj[b].push((a, w));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Neighbors of `term` with edge weights, in lexicographic term order.
    pub fn neighbors(&self, term: &str) -> Result<Vec<(&str, u64)>> {
        let i = self.node_index(term)?;
        let mut out: Vec<(&str, u64)> = self
            .edges
            .iter()
            .filter_map(|(&(a, b), &w)| match (a == i, b == i) {
                (true, _) => Some((self.terms[b].as_str(), w)),
                (_, true) => Some((self.terms[a].as_str(), w)),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// GraphML export with node attributes `term` and `frequency` and edge
    /// attribute `weight`.
    pub fn to_graphml(&self) -> String {
        let mut s = String::new();
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        s.push_str(
            "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" \
             xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" \
             xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns \
             http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n",
        );
        s.push_str("  <key id=\"window\" for=\"graph\" attr.name=\"window\" attr.type=\"int\"/>\n");
        s.push_str(
            "  <key id=\"min_weight\" for=\"graph\" attr.name=\"min_weight\" attr.type=\"long\"/>\n",
        );
        s.push_str("  <key id=\"term\" for=\"node\" attr.name=\"term\" attr.type=\"string\"/>\n");
        s.push_str(
            "  <key id=\"frequency\" for=\"node\" attr.name=\"frequency\" attr.type=\"long\"/>\n",
        );
        s.push_str("  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n");
        s.push_str("  <graph id=\"cooccurrence\" edgedefault=\"undirected\">\n");
        let _ = writeln!(s, "    <data key=\"window\">{}</data>", self.params.window);
        let _ = writeln!(s, "    <data key=\"min_weight\">{}</data>", self.params.min_weight);
        for (i, term) in self.terms.iter().enumerate() {
            let _ = writeln!(
                s,
                "    <node id=\"n{i}\"><data key=\"term\">{}</data><data key=\"frequency\">{}</data></node>",
                xml_escape(term),
                self.freq[i]
            );
        }
        for (k, (&(a, b), &w)) in self.edges.iter().enumerate() {
            let _ = writeln!(
                s,
                "    <edge id=\"e{k}\" source=\"n{a}\" target=\"n{b}\"><data key=\"weight\">{w}</data></edge>"
            );
        }
        s.push_str("  </graph>\n</graphml>\n");
        s
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph cooccurrence {\n");
        let _ = writeln!(
            s,
            "  graph [window={}, min_weight={}];",
            self.params.window, self.params.min_weight
        );
        for (i, term) in self.terms.iter().enumerate() {
            let _ = writeln!(s, "  \"{}\" [frequency={}];", dot_escape(term), self.freq[i]);
        }
        for (u, v, w) in self.edges() {
            let _ = writeln!(
                s,
                "  \"{}\" -- \"{}\" [weight={w}];",
                dot_escape(u),
                dot_escape(v)
            );
        }
        s.push_str("}\n");
        s
    }
}

fn merge_counts(
    a: HashMap<(u32, u32), u64>,
    b: HashMap<(u32, u32), u64>,
) -> HashMap<(u32, u32), u64> {
    let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    for (k, w) in small {
        *big.entry(k).or_insert(0) += w;
    }
    big
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn index_of(terms: &[String]) -> HashMap<String, usize> {
    terms.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect()
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn build_network(docs: &[ProcessedDocument], params: NetworkParams) -> Result<CooccurrenceNetwork> {
    if docs.is_empty() {
        return Err(Error::validation("network construction needs at least one document"));
    }
    build_from_sequences(docs.iter().map(|d| d.stems.as_slice()), params)
}

/// Builds a network directly from stem sequences, one per document.
pub fn build_from_sequences<'a, I>(seqs: I, params: NetworkParams) -> Result<CooccurrenceNetwork>
where
    I: IntoIterator<Item = &'a [String]>,
{
    NetworkParams::new(params.window, params.min_weight)?;
    let seqs: Vec<&[String]> = seqs.into_iter().collect();

    let vocab: BTreeSet<&str> = seqs.iter().flat_map(|s| s.iter().map(String::as_str)).collect();
    let terms: Vec<String> = vocab.iter().map(|t| t.to_string()).collect();
    let ids: HashMap<&str, u32> = vocab.iter().enumerate().map(|(i, &t)| (t, i as u32)).collect();

    let encoded: Vec<Vec<u32>> = seqs
        .iter()
        .map(|s| s.iter().map(|t| ids[t.as_str()]).collect())
        .collect();
    let mut freq = vec![0u64; terms.len()];
    for &id in encoded.iter().flatten() {
        freq[id as usize] += 1;
    }

    let span = params.window - 1;
    let counts = encoded
        .par_iter()
        .fold(HashMap::<(u32, u32), u64>::new, |mut acc, seq| {
            for (i, &a) in seq.iter().enumerate() {
                for &b in seq.iter().skip(i + 1).take(span) {
                    if a != b {
                        *acc.entry(if a < b { (a, b) } else { (b, a) }).or_insert(0) += 1;
                    }
                }
            }
            acc
        })
        .reduce(HashMap::new, merge_counts);

    let edges: BTreeMap<(usize, usize), u64> = counts
        .into_iter()
        .filter(|&(_, w)| w >= params.min_weight)
        .map(|((a, b), w)| ((a as usize, b as usize), w))
        .collect();

    Ok(CooccurrenceNetwork {
        index: index_of(&terms),
        terms,
        freq,
        edges,
        params,
    })
}

/// A named concept made of one or more member stems.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConceptCluster {
    pub label: String,
    pub members: BTreeSet<String>,
}

impl ConceptCluster {
    pub fn new<I, S>(label: impl Into<String>, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let label = label.into();
        let members: BTreeSet<String> = members.into_iter().map(Into::into).collect();
        if label.is_empty() {
            return Err(Error::validation("cluster label is empty"));
        }
        if members.is_empty() || members.iter().any(String::is_empty) {
            return Err(Error::validation(format!("cluster `{label}` has no usable members")));
        }
        Ok(ConceptCluster { label, members })
    }

    /// Builds a cluster from surface words, stemming each with `prep`.
    /// Stop-words are skipped with a warning since they never reach the network.
    pub fn from_surface<S: AsRef<str>>(label: &str, words: &[S], prep: &PrepConfig) -> Result<Self> {
        let mut stems = Vec::new();
        for w in words {
            match prep.stem_surface(w.as_ref())? {
                Some(stem) => stems.push(stem),
                None => log::warn!(
                    "cluster `{label}`: member `{}` is a stop-word and is ignored",
                    w.as_ref()
                ),
            }
        }
        ConceptCluster::new(label, stems)
    }
}

/// Reads a JSON object mapping cluster label to an array of surface words.
/// Clusters come back sorted by label.
pub fn load_clusters(path: impl AsRef<Path>, prep: &PrepConfig) -> Result<Vec<ConceptCluster>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let raw: BTreeMap<String, Vec<String>> = serde_json::from_str(&text)
        .map_err(|e| Error::validation(format!("{}: {e}", path.display())))?;
    raw.iter()
        .map(|(label, words)| ConceptCluster::from_surface(label, words, prep))
        .collect()
}

/// Collapses each cluster's member nodes into one node named by its label.
///
/// Parallel edges are summed and intra-cluster edges are dropped; the
/// min-weight filter is not re-applied. A label whose members are all absent
/// becomes an isolate with frequency 0.
pub fn merge_clusters(
    net: &CooccurrenceNetwork,
    clusters: &[ConceptCluster],
) -> Result<CooccurrenceNetwork> {
    let mut owner: HashMap<&str, &str> = HashMap::new();
    let mut labels = BTreeSet::new();
    for c in clusters {
        if !labels.insert(c.label.as_str()) {
            return Err(Error::validation(format!("duplicate cluster label `{}`", c.label)));
        }
        for m in &c.members {
            if let Some(prev) = owner.insert(m.as_str(), c.label.as_str()) {
                return Err(Error::validation(format!(
                    "stem `{m}` belongs to both `{prev}` and `{}`",
                    c.label
                )));
            }
        }
    }
    for c in clusters {
        if let Some(other) = owner.get(c.label.as_str()) {
            if *other != c.label {
                return Err(Error::validation(format!(
                    "cluster label `{}` is a member of cluster `{other}`",
                    c.label
                )));
            }
        }
        if net.contains(&c.label) && !c.members.contains(&c.label) {
            return Err(Error::validation(format!(
                "cluster label `{}` collides with an existing non-member node",
                c.label
            )));
        }
    }

    let mapped: Vec<&str> = net
        .terms
        .iter()
        .map(|t| owner.get(t.as_str()).copied().unwrap_or(t.as_str()))
        .collect();
    let new_terms: BTreeSet<&str> = mapped.iter().copied().chain(labels.iter().copied()).collect();
    let terms: Vec<String> = new_terms.iter().map(|t| t.to_string()).collect();
    let index = index_of(&terms);

    let mut freq = vec![0u64; terms.len()];
    for (old, &name) in mapped.iter().enumerate() {
        freq[index[name]] += net.freq[old];
    }
    let mut edges = BTreeMap::new();
    for (&(a, b), &w) in &net.edges {
        let (na, nb) = (index[mapped[a]], index[mapped[b]]);
        if na != nb {
            *edges.entry(ordered(na, nb)).or_insert(0) += w;
        }
    }
    Ok(CooccurrenceNetwork {
        terms,
        index,
        freq,
        edges,
        params: net.params,
    })
}
