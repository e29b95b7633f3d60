//! Proximity-graph baseline: users as frequency vectors, a kNN graph with
//! Gaussian edge weights, and PageRank over it. Nodes the random walk
//! rarely visits sit in sparse regions and are reported first.
//!
//! [`knn_distance_outliers`] ranks the same points by distance to their
//! kth nearest neighbor using exhaustive pairwise distances. It shares no
//! code with the graph path and is used to cross-check it.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::wat::{TrainedWat, UserProfile};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GraphError {
    #[error("k = {k} is invalid for {n} points (need 1 <= k < n)")]
    InvalidK { k: usize, n: usize },
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("{labels} labels for {vectors} vectors")]
    LabelCountMismatch { labels: usize, vectors: usize },
    #[error("vector {index} has dimension {got}, expected {expected}")]
    DimensionMismatch { index: usize, got: usize, expected: usize },
    #[error("point coordinates must be finite")]
    NonFinitePoint,
    #[error("kernel bandwidth must be positive and finite, got {0}")]
    InvalidBandwidth(f64),
    #[error("edge ({0}, {1}) is out of range or has a non-positive weight")]
    InvalidEdge(usize, usize),
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("damping must lie in (0, 1), got {0}")]
    InvalidDamping(f64),
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("max_iter must be at least 1")]
    InvalidMaxIter,
    #[error("teleport vector must have one non-negative entry per node and sum to 1")]
    InvalidTeleport,
    #[error("power iteration did not converge within {} iterations", .0.iterations)]
    NotConverged(ScoreVector),
}

/// Labeled points of a common dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet<L> {
    labels: Vec<L>,
    vectors: Vec<Vec<f64>>,
}

impl<L> PointSet<L> {
    pub fn new(labels: Vec<L>, vectors: Vec<Vec<f64>>) -> Result<Self, GraphError> {
        if labels.len() != vectors.len() {
            return Err(GraphError::LabelCountMismatch {
                labels: labels.len(),
                vectors: vectors.len(),
            });
        }
        let expected = vectors.first().ok_or(GraphError::EmptyPointSet)?.len();
        for (index, v) in vectors.iter().enumerate() {
            if v.len() != expected || expected == 0 {
                return Err(GraphError::DimensionMismatch {
                    index,
                    got: v.len(),
                    expected: expected.max(1),
                });
            }
            if !v.iter().all(|x| x.is_finite()) {
                return Err(GraphError::NonFinitePoint);
            }
        }
        Ok(PointSet { labels, vectors })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vectors[0].len()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    fn distance(&self, i: usize, j: usize) -> f64 {
        let sq: f64 = self.vectors[i]
            .iter()
            .zip(&self.vectors[j])
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        libm::sqrt(sq)
    }

    /// The `k` nearest other points of `i` as `(distance, index)`, closest
    /// first, ties by index.
    fn nearest(&self, i: usize, k: usize) -> Vec<(f64, usize)> {
        let mut d: Vec<(f64, usize)> = (0..self.len())
            .filter(|&j| j != i)
            .map(|j| (self.distance(i, j), j))
            .collect();
        let cmp = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
        if k < d.len() {
            d.select_nth_unstable_by(k - 1, cmp);
            d.truncate(k);
        }
        d.sort_by(cmp);
        d
    }
}

/// Frequencies of a user over the `dim` highest-ranked trained URIs,
/// normalized by the user's own request count. Zero-padded when the table
/// has fewer than `dim` entries.
pub fn user_feature_vector(profile: &UserProfile, wat: &TrainedWat, dim: usize) -> Vec<f64> {
    let mut v = vec![0.0; dim];
    if profile.total == 0 {
        return v;
    }
    for (slot, entry) in v.iter_mut().zip(wat.ranked()) {
        *slot = profile.hits(&entry.uri) as f64 / profile.total as f64;
    }
    v
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bandwidth {
    Fixed(f64),
    /// Median of all kNN distances; falls back to the mean positive kNN
    /// distance when the median is 0, and to 1 when every point coincides.
    MedianKnn,
}

/// Weighted graph stored as per-node adjacency lists sorted by neighbor.
#[derive(Debug, Clone, PartialEq)]
pub struct ProximityGraph {
    adj: Vec<Vec<(usize, f64)>>,
    k: Option<usize>,
    sigma: Option<f64>,
}

impl ProximityGraph {
    /// Builds a graph from explicit weighted edges. Undirected edges are
    /// stored in both directions; repeated edges keep the last weight.
    pub fn from_edges(
        n: usize,
        edges: &[(usize, usize, f64)],
        directed: bool,
    ) -> Result<Self, GraphError> {
        let mut lists: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); n];
        for &(a, b, w) in edges {
            if a >= n || b >= n || a == b || !(w > 0.0 && w.is_finite()) {
                return Err(GraphError::InvalidEdge(a, b));
            }
            lists[a].insert(b, w);
            if !directed {
                lists[b].insert(a, w);
            }
        }
        Ok(ProximityGraph {
            adj: lists.into_iter().map(|m| m.into_iter().collect()).collect(),
            k: None,
            sigma: None,
        })
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    /// Neighbors-per-node used for construction, if built from points.
    pub fn k(&self) -> Option<usize> {
        self.k
    }

    pub fn sigma(&self) -> Option<f64> {
        self.sigma
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<f64> {
        self.adj[i]
            .binary_search_by_key(&j, |&(n, _)| n)
            .ok()
            .map(|p| self.adj[i][p].1)
    }

    pub fn is_symmetric(&self) -> bool {
        self.adj
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().all(|&(j, w)| self.weight(j, i) == Some(w)))
    }

    /// All arcs `(src, dst, weight)` in node order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |&(j, w)| (i, j, w)))
    }
}

/// Union-symmetrized kNN graph under Euclidean distance with weights
/// `exp(-d² / 2σ²)`, floored at the smallest positive normal `f64` so that
/// every edge keeps a positive weight.
pub fn build_proximity_graph<L>(
    points: &PointSet<L>,
    k: usize,
    bandwidth: Bandwidth,
) -> Result<ProximityGraph, GraphError> {
    let n = points.len();
    if k < 1 || k >= n {
        return Err(GraphError::InvalidK { k, n });
    }
    let knn: Vec<Vec<(f64, usize)>> = (0..n).map(|i| points.nearest(i, k)).collect();

    let sigma = match bandwidth {
        Bandwidth::Fixed(s) if s > 0.0 && s.is_finite() => s,
        Bandwidth::Fixed(s) => return Err(GraphError::InvalidBandwidth(s)),
        Bandwidth::MedianKnn => median_bandwidth(knn.iter().flatten().map(|&(d, _)| d).collect()),
    };

    let mut edges: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for (i, row) in knn.iter().enumerate() {
        for &(d, j) in row {
            edges.insert((i.min(j), i.max(j)), d);
        }
    }
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (&(a, b), &d) in &edges {
        let w = libm::exp(-(d * d) / (2.0 * sigma * sigma)).max(f64::MIN_POSITIVE);
        adj[a].push((b, w));
        adj[b].push((a, w));
    }
    for row in &mut adj {
        row.sort_by_key(|&(j, _)| j);
    }
    Ok(ProximityGraph {
        adj,
        k: Some(k),
        sigma: Some(sigma),
    })
}

fn median_bandwidth(mut d: Vec<f64>) -> f64 {
    d.sort_by(f64::total_cmp);
    let m = d.len();
    let median = if m % 2 == 1 {
        d[m / 2]
    } else {
        (d[m / 2 - 1] + d[m / 2]) / 2.0
    };
    if median > 0.0 {
        return median;
    }
    let positive: Vec<f64> = d.into_iter().filter(|&x| x > 0.0).collect();
    if positive.is_empty() {
        1.0
    } else {
        positive.iter().sum::<f64>() / positive.len() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageRankParams {
    pub damping: f64,
    /// Stop once the L1 change between iterates drops below this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PageRankParams {
    fn default() -> Self {
        PageRankParams {
            damping: 0.85,
            tol: 1e-10,
            max_iter: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector {
    pub scores: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Stationary distribution of the damped random walk on `g` with uniform
/// teleport.
pub fn pagerank(g: &ProximityGraph, params: &PageRankParams) -> Result<ScoreVector, GraphError> {
    pagerank_with_teleport(g, params, None)
}

/// Power iteration on the row-normalized weighted adjacency. Mass on nodes
/// without out-edges is spread uniformly; the remaining `1 - damping` goes
/// to `teleport` (uniform when `None`).
///
/// On hitting `max_iter` the last iterate is returned inside
/// [`GraphError::NotConverged`].
pub fn pagerank_with_teleport(
    g: &ProximityGraph,
    params: &PageRankParams,
    teleport: Option<&[f64]>,
) -> Result<ScoreVector, GraphError> {
    let n = g.len();
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let alpha = params.damping;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(GraphError::InvalidDamping(alpha));
    }
    if !(params.tol > 0.0) {
        return Err(GraphError::InvalidTolerance(params.tol));
    }
    if params.max_iter == 0 {
        return Err(GraphError::InvalidMaxIter);
    }
    let uniform = 1.0 / n as f64;
    if let Some(t) = teleport {
        let sum: f64 = t.iter().sum();
        if t.len() != n || t.iter().any(|&x| !(x >= 0.0)) || libm::fabs(sum - 1.0) > 1e-9 {
            return Err(GraphError::InvalidTeleport);
        }
    }

    let out_weight: Vec<f64> = g.adj.iter().map(|row| row.iter().map(|e| e.1).sum()).collect();
    let mut x = vec![uniform; n];
    let mut next = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;

    while iterations < params.max_iter {
        iterations += 1;
        let dangling: f64 = x
            .iter()
            .zip(&out_weight)
            .filter(|(_, &w)| w == 0.0)
            .map(|(xi, _)| xi)
            .sum();
        let spread = alpha * dangling * uniform;
        for (j, slot) in next.iter_mut().enumerate() {
            let t = teleport.map_or(uniform, |t| t[j]);
            *slot = (1.0 - alpha) * t + spread;
        }
        for (i, row) in g.adj.iter().enumerate() {
            if out_weight[i] > 0.0 {
                let share = alpha * x[i] / out_weight[i];
                for &(j, w) in row {
                    next[j] += share * w;
                }
            }
        }
        let delta: f64 = x.iter().zip(&next).map(|(a, b)| libm::fabs(a - b)).sum();
        core::mem::swap(&mut x, &mut next);
        if delta < params.tol {
            converged = true;
            break;
        }
    }

    let total: f64 = x.iter().sum();
    for v in &mut x {
        *v /= total;
    }
    let scores = ScoreVector {
        scores: x,
        iterations,
        converged,
    };
    if converged {
        Ok(scores)
    } else {
        Err(GraphError::NotConverged(scores))
    }
}

/// Labels ordered from most to least anomalous: ascending score, ties by
/// label.
pub fn anomaly_ranking<L: Ord + Clone>(s: &ScoreVector, labels: &[L]) -> Vec<(L, f64)> {
    assert_eq!(s.scores.len(), labels.len(), "one label per score");
    let mut out: Vec<(L, f64)> = labels.iter().cloned().zip(s.scores.iter().copied()).collect();
    out.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    out
}

/// The `n_out` points farthest from their kth nearest neighbor, descending
/// by that distance, ties by label.
pub fn knn_distance_outliers<L: Ord + Clone>(
    points: &PointSet<L>,
    k: usize,
    n_out: usize,
) -> Result<Vec<(L, f64)>, GraphError> {
    let n = points.len();
    if k < 1 || k >= n {
        return Err(GraphError::InvalidK { k, n });
    }
    let mut ranked: Vec<(L, f64)> = (0..n)
        .map(|i| {
            let mut d: Vec<f64> = (0..n).filter(|&j| j != i).map(|j| points.distance(i, j)).collect();
            d.sort_by(f64::total_cmp);
            (points.labels[i].clone(), d[k - 1])
        })
        .collect();
    ranked.sort_by(|a, b| match b.1.total_cmp(&a.1) {
        Ordering::Equal => a.0.cmp(&b.0),
        o => o,
    });
    ranked.truncate(n_out);
    Ok(ranked)
}
