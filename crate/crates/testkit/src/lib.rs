//! Brute-force reference implementations and seeded random fixtures.
//!
//! Nothing here depends on `sbs-core`: the oracles work on plain vectors so
//! they stay independent of the code they check.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type EdgeMap = BTreeMap<(String, String), u64>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn key(a: &str, b: &str) -> (String, String) {
    if a < b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Co-occurrence edges by enumerating every index pair of every document.
pub fn cooccurrence_oracle(docs: &[Vec<String>], window: usize, min_weight: u64) -> EdgeMap {
    let raw = cooccurrence_unfiltered(docs, window);
    raw.into_iter().filter(|(_, w)| *w >= min_weight).collect()
}

pub fn cooccurrence_unfiltered(docs: &[Vec<String>], window: usize) -> EdgeMap {
    let mut out = EdgeMap::new();
    for doc in docs {
        for i in 0..doc.len() {
            for j in 0..doc.len() {
                if i < j && j - i < window && doc[i] != doc[j] {
                    *out.entry(key(&doc[i], &doc[j])).or_insert(0) += 1;
                }
            }
        }
    }
    out
}

/// Term counts over all documents.
pub fn frequency_oracle(docs: &[Vec<String>]) -> BTreeMap<String, u64> {
    let mut out = BTreeMap::new();
    for t in docs.iter().flatten() {
        *out.entry(t.clone()).or_insert(0) += 1;
    }
    out
}

/// Random corpus: up to `max_docs` documents of up to `max_len` tokens drawn
/// from a vocabulary of `vocab` one-letter-prefixed words.
pub fn random_corpus(rng: &mut impl Rng, max_docs: usize, max_len: usize, vocab: usize) -> Vec<Vec<String>> {
    let n_docs = rng.random_range(1..=max_docs);
    (0..n_docs)
        .map(|_| {
            let len = rng.random_range(0..=max_len);
            (0..len)
                .map(|_| format!("w{}", rng.random_range(0..vocab)))
                .collect()
        })
        .collect()
}

/// Random connected undirected graph on `n` nodes with integer weights in
/// `1..=max_weight`: a random spanning tree plus extra edges with
/// probability `p_extra`.
pub fn random_connected_graph(
    rng: &mut impl Rng,
    n: usize,
    max_weight: u64,
    p_extra: f64,
) -> Vec<(usize, usize, u64)> {
    let mut edges = BTreeMap::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        edges.insert((u, v), rng.random_range(1..=max_weight));
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if !edges.contains_key(&(a, b)) && rng.random_bool(p_extra) {
                edges.insert((a, b), rng.random_range(1..=max_weight));
            }
        }
    }
    edges.into_iter().map(|((a, b), w)| (a, b, w)).collect()
}

/// Weighted betweenness by enumerating every simple path between every
/// unordered pair, with edge length `1 / weight`. Paths within `tol` of the
/// shortest length count as shortest.
pub fn betweenness_oracle(n: usize, edges: &[(usize, usize, u64)], tol: f64) -> Vec<f64> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b, w) in edges {
        adj[a].push((b, 1.0 / w as f64));
        adj[b].push((a, 1.0 / w as f64));
    }
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for t in (s + 1)..n {
            let mut paths: Vec<(f64, Vec<usize>)> = Vec::new();
            let mut visited = vec![false; n];
            visited[s] = true;
            let mut stack = vec![s];
            simple_paths(&adj, t, 0.0, &mut visited, &mut stack, &mut paths);
            let Some(best) = paths.iter().map(|p| p.0).reduce(f64::min) else {
                continue;
            };
            let shortest: Vec<&Vec<usize>> = paths
                .iter()
                .filter(|p| p.0 - best <= tol)
                .map(|p| &p.1)
                .collect();
            let total = shortest.len() as f64;
            for path in &shortest {
                for &v in &path[1..path.len() - 1] {
                    bc[v] += 1.0 / total;
                }
            }
        }
    }
    bc
}

fn simple_paths(
    adj: &[Vec<(usize, f64)>],
    target: usize,
    len: f64,
    visited: &mut [bool],
    stack: &mut Vec<usize>,
    out: &mut Vec<(f64, Vec<usize>)>,
) {
    let v = *stack.last().expect("nonempty path");
    if v == target {
        // path length summed in path order, independent of any search order
        let total = stack
            .windows(2)
            .map(|e| adj[e[0]].iter().find(|(u, _)| *u == e[1]).expect("edge").1)
            .sum::<f64>();
        debug_assert!((total - len).abs() < 1e-9);
        out.push((total, stack.clone()));
        return;
    }
    for &(w, c) in &adj[v] {
        if !visited[w] {
            visited[w] = true;
            stack.push(w);
            simple_paths(adj, target, len + c, visited, stack, out);
            stack.pop();
            visited[w] = false;
        }
    }
}

const SYLLABLES: &[&str] = &[
    "ba", "ce", "di", "fo", "gu", "la", "me", "ni", "po", "ra", "se", "ti", "vo", "za", "chi",
    "gna", "sca", "tro", "pre", "ste",
];

/// Pseudo-word for vocabulary rank `k`: distinct ranks give distinct words.
pub fn pseudo_word(mut k: usize) -> String {
    let mut w = String::new();
    loop {
        w.push_str(SYLLABLES[k % SYLLABLES.len()]);
        k /= SYLLABLES.len();
        if k == 0 {
            break;
        }
        k -= 1;
    }
    w.push_str(["o", "a", "e", "i"][w.len() % 4]);
    w
}

/// `n_docs` whitespace-separated texts whose lengths are uniform in
/// `len_range`, drawing words with a roughly Zipfian rank distribution over a
/// vocabulary of `vocab` pseudo-words.
pub fn synthetic_texts(
    rng: &mut impl Rng,
    n_docs: usize,
    len_range: std::ops::RangeInclusive<usize>,
    vocab: usize,
) -> Vec<String> {
    let ln_v = (vocab as f64).ln();
    (0..n_docs)
        .map(|_| {
            let len = rng.random_range(len_range.clone());
            let words: Vec<String> = (0..len)
                .map(|_| {
                    let rank = (rng.random::<f64>() * ln_v).exp() as usize - 1;
                    pseudo_word(rank.min(vocab - 1))
                })
                .collect();
            words.join(" ")
        })
        .collect()
}

/// Node labels `n0..n{k}` for graphs built from index edges.
pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("n{i}")).collect()
}

/// Distinct terms of a corpus, sorted.
pub fn vocabulary(docs: &[Vec<String>]) -> BTreeSet<String> {
    docs.iter().flatten().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn oracle_on_hand_example() {
        let e = cooccurrence_oracle(&[doc("a b a c")], 5, 2);
        let expect: EdgeMap = [(key("a", "b"), 2), (key("a", "c"), 2)].into_iter().collect();
        assert_eq!(e, expect);
    }

    #[test]
    fn betweenness_oracle_path_and_star() {
        assert_eq!(betweenness_oracle(3, &[(0, 1, 1), (1, 2, 1)], 1e-12), [0.0, 1.0, 0.0]);
        let star: Vec<_> = (1..5).map(|l| (0, l, 1)).collect();
        assert_eq!(betweenness_oracle(5, &star, 1e-12)[0], 6.0);
    }

    #[test]
    fn pseudo_words_are_distinct() {
        let words: BTreeSet<String> = (0..5000).map(pseudo_word).collect();
        assert_eq!(words.len(), 5000);
    }

    #[test]
    fn random_graph_is_connected() {
        let mut r = rng(7);
        for _ in 0..20 {
            let n = r.random_range(2..=8);
            let edges = random_connected_graph(&mut r, n, 5, 0.3);
            assert!(edges.len() >= n - 1);
            let bc = betweenness_oracle(n, &edges, 1e-12);
            assert_eq!(bc.len(), n);
        }
    }
}
