//! Classical centrality and snapshot statistics on footprints.

use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::community;
use crate::tvg::{Footprint, NodeId, Window};

/// Sources handled per parallel task. Fixed so that the reduction order, and
/// therefore every floating-point sum, is independent of the thread count.
pub(crate) const SOURCE_CHUNK: usize = 16;

/// Per-node scores for one metric.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralityVector {
    pub metric: String,
    pub window: Option<Window>,
    pub adjusted: bool,
    pub scores: BTreeMap<NodeId, f64>,
}

impl CentralityVector {
    pub fn new(metric: impl Into<String>, scores: BTreeMap<NodeId, f64>) -> Self {
        CentralityVector {
            metric: metric.into(),
            window: None,
            adjusted: false,
            scores,
        }
    }

    pub(crate) fn from_dense(metric: &str, ids: &[NodeId], values: Vec<f64>) -> Self {
        Self::new(metric, ids.iter().cloned().zip(values).collect())
    }

    pub fn get(&self, id: &NodeId) -> Option<f64> {
        self.scores.get(id).copied()
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn mean(&self) -> f64 {
        if self.scores.is_empty() {
            0.0
        } else {
            self.scores.values().sum::<f64>() / self.scores.len() as f64
        }
    }

    pub fn ranks(&self) -> BTreeMap<NodeId, usize> {
        rank(self)
    }
}

/// Ranks nodes by descending score, 1 being the highest. Exactly equal
/// scores are ordered by ascending node id, so every node gets a distinct
/// rank.
pub fn rank(v: &CentralityVector) -> BTreeMap<NodeId, usize> {
    let mut order: Vec<(&NodeId, f64)> = v.scores.iter().map(|(k, &s)| (k, s)).collect();
    order.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    order
        .into_iter()
        .enumerate()
        .map(|(i, (id, _))| (id.clone(), i + 1))
        .collect()
}

/// Multiplies each score by `n(v) / n`.
pub(crate) fn apply_adjustment(f: &Footprint, values: &mut [f64]) {
    let n = f.node_count() as f64;
    for (i, x) in values.iter_mut().enumerate() {
        *x *= f.component_size_of(i) as f64 / n;
    }
}

/// Brandes dependency accumulation from one source, added into `acc`.
#[allow(clippy::too_many_arguments)]
fn brandes_source(
    f: &Footprint,
    s: usize,
    acc: &mut [f64],
    dist: &mut [i64],
    sigma: &mut [f64],
    delta: &mut [f64],
    order: &mut Vec<usize>,
    queue: &mut VecDeque<usize>,
) {
    dist.fill(-1);
    sigma.fill(0.0);
    delta.fill(0.0);
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in f.neighbors(v) {
            if dist[w] < 0 {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
            }
        }
    }
    for &w in order.iter().rev() {
        for &v in f.neighbors(w) {
            if dist[v] == dist[w] - 1 {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
        }
        if w != s {
            acc[w] += delta[w];
        }
    }
}

/// Shortest-path betweenness summed over unordered pairs. With `adjusted`
/// each score is scaled by the share of nodes in its component.
pub fn static_betweenness(f: &Footprint, adjusted: bool) -> CentralityVector {
    let n = f.node_count();
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(SOURCE_CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; n];
            let mut dist = vec![0i64; n];
            let mut sigma = vec![0.0; n];
            let mut delta = vec![0.0; n];
            let mut order = Vec::with_capacity(n);
            let mut queue = VecDeque::new();
            for &s in chunk {
                brandes_source(
                    f, s, &mut acc, &mut dist, &mut sigma, &mut delta, &mut order, &mut queue,
                );
            }
            acc
        })
        .collect();
    let mut values = vec![0.0; n];
    for p in partials {
        for (x, y) in values.iter_mut().zip(p) {
            *x += y;
        }
    }
    // ordered-pair accumulation counts each unordered pair twice
    for x in &mut values {
        *x /= 2.0;
    }
    if adjusted {
        apply_adjustment(f, &mut values);
    }
    let mut cv = CentralityVector::from_dense("static-betweenness", f.ids(), values);
    cv.adjusted = adjusted;
    cv
}

/// BFS hop distances from `s`; unreachable nodes are `None`.
pub fn bfs_distances(f: &Footprint, s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; f.node_count()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap_or(0);
        for &w in f.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Closeness normalised inside the component: `(n(v) - 1) / sum of
/// distances`. Isolated nodes score 0.
pub fn closeness(f: &Footprint) -> CentralityVector {
    let values = (0..f.node_count())
        .into_par_iter()
        .map(|s| {
            let total: usize = bfs_distances(f, s).into_iter().flatten().sum();
            if total == 0 {
                0.0
            } else {
                (f.component_size_of(s) - 1) as f64 / total as f64
            }
        })
        .collect();
    CentralityVector::from_dense("closeness", f.ids(), values)
}

/// Eccentricity inside the component.
pub fn eccentricity(f: &Footprint) -> CentralityVector {
    let values = (0..f.node_count())
        .into_par_iter()
        .map(|s| bfs_distances(f, s).into_iter().flatten().max().unwrap_or(0) as f64)
        .collect();
    CentralityVector::from_dense("eccentricity", f.ids(), values)
}

/// Local clustering coefficient; nodes with degree below 2 score 0.
pub fn clustering(f: &Footprint) -> CentralityVector {
    let values = (0..f.node_count())
        .map(|v| {
            let ns = f.neighbors(v);
            let k = ns.len();
            if k < 2 {
                return 0.0;
            }
            let mut links = 0usize;
            for (i, &a) in ns.iter().enumerate() {
                for &b in &ns[i + 1..] {
                    if f.neighbors(a).binary_search(&b).is_ok() {
                        links += 1;
                    }
                }
            }
            2.0 * links as f64 / (k * (k - 1)) as f64
        })
        .collect();
    CentralityVector::from_dense("clustering", f.ids(), values)
}

/// PageRank normalised to sum 1. Isolated nodes spread their mass uniformly.
pub fn pagerank(f: &Footprint, damping: f64, tolerance: f64, max_iter: usize) -> CentralityVector {
    let n = f.node_count();
    if n == 0 {
        return CentralityVector::new("pagerank", BTreeMap::new());
    }
    let nf = n as f64;
    let mut rank = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    for _ in 0..max_iter {
        let dangling: f64 = (0..n).filter(|&v| f.degree(v) == 0).map(|v| rank[v]).sum();
        let base = (1.0 - damping) / nf + damping * dangling / nf;
        next.fill(base);
        for (v, &r) in rank.iter().enumerate() {
            let d = f.degree(v);
            if d > 0 {
                let share = damping * r / d as f64;
                for &w in f.neighbors(v) {
                    next[w] += share;
                }
            }
        }
        let total: f64 = next.iter().sum();
        for x in &mut next {
            *x /= total;
        }
        let diff: f64 = rank.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut rank, &mut next);
        if diff < tolerance {
            break;
        }
    }
    CentralityVector::from_dense("pagerank", f.ids(), rank)
}

/// Eigenvector centrality of the largest component, scaled so the maximum is
/// 1; nodes outside that component score 0. Iterates on `A + I`, which has
/// the same leading eigenvector as `A` and avoids oscillation on bipartite
/// components.
pub fn eigenvector(f: &Footprint, tolerance: f64, max_iter: usize) -> CentralityVector {
    let n = f.node_count();
    let mut x = vec![0.0; n];
    let Some(lc) = f.largest_component() else {
        return CentralityVector::from_dense("eigenvector", f.ids(), x);
    };
    let members: Vec<usize> = (0..n).filter(|&v| f.component_of(v) == lc).collect();
    if members.len() < 2 {
        return CentralityVector::from_dense("eigenvector", f.ids(), x);
    }
    for &v in &members {
        x[v] = 1.0;
    }
    let mut next = vec![0.0; n];
    for _ in 0..max_iter {
        for &v in &members {
            next[v] = x[v] + f.neighbors(v).iter().map(|&w| x[w]).sum::<f64>();
        }
        let max = members.iter().map(|&v| next[v]).fold(0.0, f64::max);
        let mut diff: f64 = 0.0;
        for &v in &members {
            next[v] /= max;
            diff = diff.max((next[v] - x[v]).abs());
        }
        std::mem::swap(&mut x, &mut next);
        if diff < tolerance {
            break;
        }
    }
    CentralityVector::from_dense("eigenvector", f.ids(), x)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnapshotConfig {
    pub pagerank_damping: f64,
    pub pagerank_tolerance: f64,
    pub eigenvector_tolerance: f64,
    pub max_iterations: usize,
}

impl Default for SnapshotConfig {
    fn default() -> Self {
        SnapshotConfig {
            pagerank_damping: 0.85,
            pagerank_tolerance: 1e-12,
            eigenvector_tolerance: 1e-12,
            max_iterations: 100_000,
        }
    }
}

/// Whole-graph statistics of one static snapshot.
#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct SnapshotReport {
    pub nodes: usize,
    pub edges: usize,
    pub avg_degree: f64,
    pub diameter: usize,
    pub density: f64,
    pub community_count: usize,
    pub modularity: f64,
    pub avg_clustering: f64,
    pub avg_path_length: f64,
    pub avg_normalized_closeness: f64,
    pub avg_eccentricity: f64,
    pub avg_betweenness: f64,
    pub avg_normalized_betweenness: f64,
    pub avg_pagerank: f64,
    pub avg_eigenvector: f64,
}

impl SnapshotReport {
    /// `(row name, value)` pairs in report order.
    pub fn rows(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("nodes", self.nodes as f64),
            ("edges", self.edges as f64),
            ("avg_degree", self.avg_degree),
            ("diameter", self.diameter as f64),
            ("density", self.density),
            ("community_count", self.community_count as f64),
            ("modularity", self.modularity),
            ("avg_clustering", self.avg_clustering),
            ("avg_path_length", self.avg_path_length),
            ("avg_normalized_closeness", self.avg_normalized_closeness),
            ("avg_eccentricity", self.avg_eccentricity),
            ("avg_betweenness", self.avg_betweenness),
            (
                "avg_normalized_betweenness",
                self.avg_normalized_betweenness,
            ),
            ("avg_pagerank", self.avg_pagerank),
            ("avg_eigenvector", self.avg_eigenvector),
        ]
    }
}

pub fn snapshot_report(f: &Footprint, cfg: &SnapshotConfig) -> SnapshotReport {
    let n = f.node_count();
    let m = f.edge_count();
    let mut report = SnapshotReport {
        nodes: n,
        edges: m,
        ..Default::default()
    };
    if n < 2 {
        return report;
    }
    let nf = n as f64;
    report.avg_degree = 2.0 * m as f64 / nf;
    report.density = 2.0 * m as f64 / (nf * (nf - 1.0));

    let lc = f.largest_component();
    let per_source: Vec<(usize, usize, usize)> = (0..n)
        .into_par_iter()
        .map(|s| {
            let d = bfs_distances(f, s);
            // (sum of distances to later nodes, number of such pairs, eccentricity)
            let later = d[s + 1..].iter().flatten();
            let (sum, pairs) = later.fold((0, 0), |(a, c), &x| (a + x, c + 1));
            let ecc = d.iter().flatten().copied().max().unwrap_or(0);
            (sum, pairs, ecc)
        })
        .collect();
    let (dist_sum, pairs) = per_source
        .iter()
        .fold((0usize, 0usize), |(a, c), &(s, p, _)| (a + s, c + p));
    report.avg_path_length = if pairs > 0 {
        dist_sum as f64 / pairs as f64
    } else {
        0.0
    };
    report.diameter = (0..n)
        .filter(|&v| Some(f.component_of(v)) == lc)
        .map(|v| per_source[v].2)
        .max()
        .unwrap_or(0);
    report.avg_eccentricity = per_source.iter().map(|p| p.2 as f64).sum::<f64>() / nf;

    let partition = community::detect_communities(f);
    report.community_count = partition.community_count;
    report.modularity = partition.modularity;

    report.avg_clustering = clustering(f).mean();
    report.avg_normalized_closeness = closeness(f).mean();
    let bc = static_betweenness(f, false);
    report.avg_betweenness = bc.mean();
    report.avg_normalized_betweenness = if n > 2 {
        report.avg_betweenness / ((nf - 1.0) * (nf - 2.0) / 2.0)
    } else {
        0.0
    };
    report.avg_pagerank = pagerank(
        f,
        cfg.pagerank_damping,
        cfg.pagerank_tolerance,
        cfg.max_iterations,
    )
    .mean();
    report.avg_eigenvector = eigenvector(f, cfg.eigenvector_tolerance, cfg.max_iterations).mean();
    report
}
