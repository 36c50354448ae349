//! Weighted betweenness centrality (Brandes' algorithm with Dijkstra).
//!
//! Edge length is `1 / weight`, so frequent co-occurrences are short hops.
//! Path lengths closer than [`TIE_TOLERANCE`] are treated as equal when
//! counting shortest paths. Scores are unnormalized and count each unordered
//! pair of endpoints once.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use rayon::prelude::*;

use crate::network::CooccurrenceNetwork;

pub const TIE_TOLERANCE: f64 = 1e-12;

/// Above this many nodes, only the largest connected component is scored.
pub const EXACT_NODE_LIMIT: usize = 20_000;

/// Sources per parallel work unit is at least this many; the unit count is
/// capped at `MAX_UNITS` so partial-sum memory stays bounded.
const MIN_CHUNK: usize = 16;
const MAX_UNITS: usize = 64;

/// Betweenness of every node, indexed like `net.terms()`.
pub fn weighted_betweenness(net: &CooccurrenceNetwork) -> Vec<f64> {
    let adj = cost_adjacency(net);
    let n = adj.len();
    let sources: Vec<usize> = if n > EXACT_NODE_LIMIT {
        let lcc = largest_component(&adj);
        log::warn!(
            "network has {n} nodes (> {EXACT_NODE_LIMIT}); betweenness restricted to the largest \
             connected component ({} nodes), other nodes score 0",
            lcc.len()
        );
        lcc
    } else {
        (0..n).collect()
    };
    brandes(&adj, &sources)
}

pub(crate) fn cost_adjacency(net: &CooccurrenceNetwork) -> Vec<Vec<(usize, f64)>> {
    net.adjacency()
        .into_iter()
        .map(|list| list.into_iter().map(|(j, w)| (j, 1.0 / w as f64)).collect())
        .collect()
}

/// Accumulates single-source dependencies from `sources`, visited in the given
/// order. Sources are split into fixed-size chunks whose partial sums are
/// added in chunk order, so the result does not depend on the thread count.
pub(crate) fn brandes(adj: &[Vec<(usize, f64)>], sources: &[usize]) -> Vec<f64> {
    let n = adj.len();
    let mut bc = vec![0.0; n];
    if sources.is_empty() {
        return bc;
    }
    let graph = Csr::new(adj);
    let chunk = MIN_CHUNK.max(sources.len().div_ceil(MAX_UNITS));
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(chunk)
        .map(|chunk| {
            let mut ws = Workspace::new(n);
            let mut acc = vec![0.0; n];
            for &s in chunk {
                ws.accumulate(&graph, s, &mut acc);
            }
            acc
        })
        .collect();
    for p in partials {
        for (b, x) in bc.iter_mut().zip(p) {
            *b += x;
        }
    }
    // every unordered pair was visited from both endpoints
    for b in &mut bc {
        *b /= 2.0;
    }
    bc
}

/// Compressed adjacency: neighbors of `v` are `target[offset[v]..offset[v + 1]]`.
struct Csr {
    offset: Vec<usize>,
    target: Vec<u32>,
    cost: Vec<f64>,
}

impl Csr {
    fn new(adj: &[Vec<(usize, f64)>]) -> Self {
        let mut offset = Vec::with_capacity(adj.len() + 1);
        let mut target = Vec::new();
        let mut cost = Vec::new();
        offset.push(0);
        for list in adj {
            for &(w, c) in list {
                target.push(w as u32);
                cost.push(c);
            }
            offset.push(target.len());
        }
        Csr { offset, target, cost }
    }

    #[inline]
    fn range(&self, v: usize) -> std::ops::Range<usize> {
        self.offset[v]..self.offset[v + 1]
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    dist: f64,
    node: usize,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    // reversed: BinaryHeap pops the nearest, lowest-index node first
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

struct Workspace {
    dist: Vec<f64>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    settled: Vec<bool>,
    order: Vec<usize>,
    /// Predecessors of `order[k]` are `preds[pred_end[k - 1]..pred_end[k]]`.
    preds: Vec<u32>,
    pred_end: Vec<usize>,
    heap: BinaryHeap<Candidate>,
}

impl Workspace {
    fn new(n: usize) -> Self {
        Workspace {
            dist: vec![f64::INFINITY; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            settled: vec![false; n],
            order: Vec::new(),
            preds: Vec::new(),
            pred_end: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    fn accumulate(&mut self, g: &Csr, s: usize, acc: &mut [f64]) {
        self.dist[s] = 0.0;
        self.heap.push(Candidate { dist: 0.0, node: s });
        while let Some(Candidate { dist, node: v }) = self.heap.pop() {
            if self.settled[v] || dist > self.dist[v] {
                continue;
            }
            // Edge costs are positive, so every predecessor of `v` is
            // already settled and its path count is final.
            self.settled[v] = true;
            let mut paths = if v == s { 1.0 } else { 0.0 };
            for e in g.range(v) {
                let w = g.target[e] as usize;
                let cost = g.cost[e];
                if self.settled[w] {
                    if (self.dist[w] + cost - dist).abs() <= TIE_TOLERANCE {
                        paths += self.sigma[w];
                        self.preds.push(w as u32);
                    }
                    continue;
                }
                let d = dist + cost;
                if d < self.dist[w] - TIE_TOLERANCE {
                    self.dist[w] = d;
                    self.heap.push(Candidate { dist: d, node: w });
                }
            }
            self.sigma[v] = paths;
            self.order.push(v);
            self.pred_end.push(self.preds.len());
        }

        for k in (0..self.order.len()).rev() {
            let v = self.order[k];
            let coeff = (1.0 + self.delta[v]) / self.sigma[v];
            let first = if k == 0 { 0 } else { self.pred_end[k - 1] };
            for &u in &self.preds[first..self.pred_end[k]] {
                let u = u as usize;
                self.delta[u] += self.sigma[u] * coeff;
            }
            if v != s {
                acc[v] += self.delta[v];
            }
        }

        for &v in &self.order {
            self.dist[v] = f64::INFINITY;
            self.sigma[v] = 0.0;
            self.delta[v] = 0.0;
            self.settled[v] = false;
        }
        self.order.clear();
        self.preds.clear();
        self.pred_end.clear();
        self.heap.clear();
    }
}

/// Node indices of the largest connected component, ascending. Ties go to the
/// component containing the smallest node index.
pub(crate) fn largest_component(adj: &[Vec<(usize, f64)>]) -> Vec<usize> {
    let n = adj.len();
    let mut comp = vec![usize::MAX; n];
    let mut best: (usize, usize) = (0, 0); // (size, id)
    let mut queue = VecDeque::new();
    let mut next_id = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = next_id;
        next_id += 1;
        comp[start] = id;
        queue.push_back(start);
        let mut size = 0;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &(w, _) in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    queue.push_back(w);
                }
            }
        }
        if size > best.0 {
            best = (size, id);
        }
    }
    (0..n).filter(|&v| comp[v] == best.1).collect()
}
