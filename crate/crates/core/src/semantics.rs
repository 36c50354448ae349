//! Derived views over a network: association lists, concept distances and a
//! 2-D map of those distances.

use std::collections::{BTreeSet, HashMap};

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{csv_writer, finish_csv, real6, to_json_pretty};
use crate::network::CooccurrenceNetwork;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssociationList {
    pub focal: String,
    /// Neighbors by weight descending, ties by term.
    pub entries: Vec<(String, u64)>,
}

pub fn associations(net: &CooccurrenceNetwork, focal: &str, top_n: usize) -> Result<AssociationList> {
    if top_n < 1 {
        return Err(Error::validation("top_n must be >= 1"));
    }
    let mut entries: Vec<(String, u64)> = net
        .neighbors(focal)?
        .into_iter()
        .map(|(t, w)| (t.to_string(), w))
        .collect();
    entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    entries.truncate(top_n);
    Ok(AssociationList {
        focal: focal.to_string(),
        entries,
    })
}

/// `{"focal": [["term", weight], ...], ...}` with keys sorted.
pub fn associations_to_json(lists: &[AssociationList]) -> Result<String> {
    let map: serde_json::Map<String, serde_json::Value> = lists
        .iter()
        .map(|l| (l.focal.clone(), serde_json::to_value(&l.entries).expect("plain data")))
        .collect();
    to_json_pretty(&map)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceMatrix {
    pub terms: Vec<String>,
    pub d: Vec<Vec<f64>>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Square CSV: a `term` header followed by the terms, one row per term.
    pub fn to_csv(&self) -> Result<String> {
        let mut wtr = csv_writer();
        let mut header = vec!["term".to_string()];
        header.extend(self.terms.iter().cloned());
        wtr.write_record(&header)?;
        for (t, row) in self.terms.iter().zip(&self.d) {
            let mut rec = vec![t.clone()];
            rec.extend(row.iter().map(|&x| real6(x)));
            wtr.write_record(&rec)?;
        }
        finish_csv(wtr)
    }
}

/// Cosine distance between co-occurrence profiles.
///
/// Each term is its vector of edge weights over all nodes. When comparing `u`
/// and `v`, the `u` and `v` dimensions are zeroed in both vectors, so their
/// direct link does not count toward their similarity. A pair where either
/// masked vector is zero has distance 1.
pub fn concept_distances<S: AsRef<str>>(net: &CooccurrenceNetwork, terms: &[S]) -> Result<DistanceMatrix> {
    if terms.len() < 2 {
        return Err(Error::validation(format!(
            "concept distances need at least 2 terms, got {}",
            terms.len()
        )));
    }
    let mut seen = BTreeSet::new();
    let mut profiles = Vec::with_capacity(terms.len());
    for t in terms {
        let t = t.as_ref();
        if !seen.insert(t) {
            return Err(Error::validation(format!("duplicate term `{t}`")));
        }
        let profile: HashMap<&str, f64> = net
            .neighbors(t)?
            .into_iter()
            .map(|(k, w)| (k, w as f64))
            .collect();
        profiles.push(profile);
    }

    let k = terms.len();
    let mut d = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in (i + 1)..k {
            let (u, v) = (terms[i].as_ref(), terms[j].as_ref());
            let dist = masked_cosine_distance(&profiles[i], &profiles[j], u, v);
            d[i][j] = dist;
            d[j][i] = dist;
        }
    }
    Ok(DistanceMatrix {
        terms: terms.iter().map(|t| t.as_ref().to_string()).collect(),
        d,
    })
}

fn masked_cosine_distance(pu: &HashMap<&str, f64>, pv: &HashMap<&str, f64>, u: &str, v: &str) -> f64 {
    let masked = |k: &str| k == u || k == v;
    let sq = |p: &HashMap<&str, f64>| -> f64 {
        let mut items: Vec<(&str, f64)> = p.iter().filter(|(k, _)| !masked(k)).map(|(k, w)| (*k, *w)).collect();
        items.sort_unstable_by(|a, b| a.0.cmp(b.0));
        items.iter().map(|(_, w)| w * w).sum()
    };
    let (nu, nv) = (sq(pu), sq(pv));
    if nu == 0.0 || nv == 0.0 {
        return 1.0;
    }
    let mut shared: Vec<(&str, f64)> = pu
        .iter()
        .filter(|(k, _)| !masked(k))
        .filter_map(|(k, w)| pv.get(k).map(|x| (*k, w * x)))
        .collect();
    shared.sort_unstable_by(|a, b| a.0.cmp(b.0));
    let dot: f64 = shared.iter().map(|(_, p)| p).sum();
    (1.0 - dot / (nu.sqrt() * nv.sqrt())).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Embedding2D {
    pub terms: Vec<String>,
    pub coords: Vec<(f64, f64)>,
}

impl Embedding2D {
    pub fn to_csv(&self) -> Result<String> {
        let mut wtr = csv_writer();
        wtr.write_record(["term", "x", "y"])?;
        for (t, &(x, y)) in self.terms.iter().zip(&self.coords) {
            wtr.write_record([t.clone(), real6(x), real6(y)])?;
        }
        finish_csv(wtr)
    }
}

fn check_distance_matrix(dm: &DistanceMatrix) -> Result<()> {
    let n = dm.len();
    if dm.d.len() != n || dm.d.iter().any(|row| row.len() != n) {
        return Err(Error::validation(format!("distance matrix is not {n}x{n}")));
    }
    for i in 0..n {
        if dm.d[i][i] != 0.0 {
            return Err(Error::validation(format!("nonzero diagonal at `{}`", dm.terms[i])));
        }
        for j in 0..n {
            let x = dm.d[i][j];
            if !x.is_finite() || x < 0.0 || (x - dm.d[j][i]).abs() > 1e-12 {
                return Err(Error::validation(format!(
                    "distance {}-{} must be finite, nonnegative and symmetric",
                    dm.terms[i], dm.terms[j]
                )));
            }
        }
    }
    Ok(())
}

/// Eigenvalues above `-EIGEN_RTOL * max|eigenvalue|` count as nonnegative.
const EIGEN_RTOL: f64 = 1e-9;

/// Classical (Torgerson) MDS into two dimensions.
///
/// `B = -1/2 J D² J` is eigendecomposed and the two largest eigenpairs give
/// the axes, scaled by the square roots of their eigenvalues. Negative
/// eigenvalues (non-Euclidean input) are dropped with a warning. Each axis is
/// flipped so its first nonzero coordinate is positive.
pub fn embed_mds(dm: &DistanceMatrix) -> Result<Embedding2D> {
    let n = dm.len();
    if n < 3 {
        return Err(Error::validation(format!("MDS needs at least 3 terms, got {n}")));
    }
    check_distance_matrix(dm)?;
    let d2 = DMatrix::from_fn(n, n, |i, j| dm.d[i][j] * dm.d[i][j]);
    let row_means: Vec<f64> = (0..n).map(|i| d2.row(i).sum() / n as f64).collect();
    let grand = row_means.iter().sum::<f64>() / n as f64;
    // D² is symmetric, so column means equal row means.
    let b = DMatrix::from_fn(n, n, |i, j| -0.5 * (d2[(i, j)] - row_means[i] - row_means[j] + grand));

    let eig = SymmetricEigen::new(b);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));
    let sorted: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let scale = sorted.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let floor = -EIGEN_RTOL * scale;

    if sorted[1] < floor {
        return Err(Error::DegenerateEmbedding(sorted));
    }
    if let Some(&worst) = sorted.last().filter(|&&x| x < floor) {
        log::warn!("distance matrix is not Euclidean; clamping negative eigenvalues (min {worst:.3e}) to zero");
    }

    let mut axes = [vec![0.0; n], vec![0.0; n]];
    for (axis, &col) in axes.iter_mut().zip(&order[..2]) {
        let lambda = eig.eigenvalues[col].max(0.0);
        let root = lambda.sqrt();
        for (i, c) in axis.iter_mut().enumerate() {
            *c = eig.eigenvectors[(i, col)] * root;
        }
        let mean = axis.iter().sum::<f64>() / n as f64;
        axis.iter_mut().for_each(|c| *c -= mean);
        let tiny = 1e-12 * axis.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if axis.iter().find(|c| c.abs() > tiny).is_some_and(|&c| c < 0.0) {
            axis.iter_mut().for_each(|c| *c = -*c);
        }
    }
    Ok(Embedding2D {
        terms: dm.terms.clone(),
        coords: axes[0].iter().copied().zip(axes[1].iter().copied()).collect(),
    })
}
