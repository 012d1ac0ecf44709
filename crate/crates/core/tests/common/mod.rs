//! Brute-force reference implementations and random graph builders shared by
//! the integration tests. Everything here works on dense indices `0..n`
//! and node ids `v00, v01, ...` so that id order equals index order.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tempus_core::tvg::{Footprint, Lifetime, NodeId, TemporalEdge, Time, TimeVaryingGraph};

pub fn id(i: usize) -> String {
    format!("v{i:02}")
}

pub fn ids(n: usize) -> Vec<NodeId> {
    (0..n).map(|i| NodeId::from(id(i))).collect()
}

/// Erdos-Renyi edge list.
pub fn random_edges(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// Random edges with births drawn uniformly from `births`.
pub fn random_timed_edges(
    rng: &mut ChaCha8Rng,
    n: usize,
    p: f64,
    births: std::ops::RangeInclusive<Time>,
) -> Vec<(usize, usize, Time)> {
    random_edges(rng, n, p)
        .into_iter()
        .map(|(a, b)| (a, b, rng.gen_range(births.clone())))
        .collect()
}

/// Growing graph on the given timed edges; nodes appear through their
/// edges only.
pub fn tvg(edges: &[(usize, usize, Time)], lifetime: Lifetime) -> TimeVaryingGraph {
    TimeVaryingGraph::build(
        vec![],
        edges
            .iter()
            .map(|&(a, b, t)| TemporalEdge::new(id(a), id(b), t))
            .collect(),
        lifetime,
    )
    .expect("valid random graph")
}

pub fn footprint(n: usize, edges: &[(usize, usize)]) -> Footprint {
    Footprint::from_edges(ids(n), edges)
}

fn adjacency(n: usize, edges: &[(usize, usize, Time)]) -> Vec<Vec<(usize, Time)>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b, t) in edges {
        adj[a].push((b, t));
        adj[b].push((a, t));
    }
    adj
}

/// Every simple path from `s` to `t` with the birth of each edge.
pub fn simple_paths(
    n: usize,
    edges: &[(usize, usize, Time)],
    s: usize,
    t: usize,
) -> Vec<(Vec<usize>, Vec<Time>)> {
    fn go(
        adj: &[Vec<(usize, Time)>],
        t: usize,
        path: &mut Vec<usize>,
        births: &mut Vec<Time>,
        seen: &mut [bool],
        out: &mut Vec<(Vec<usize>, Vec<Time>)>,
    ) {
        let u = *path.last().unwrap();
        if u == t {
            out.push((path.clone(), births.clone()));
            return;
        }
        for &(v, b) in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                path.push(v);
                births.push(b);
                go(adj, t, path, births, seen, out);
                births.pop();
                path.pop();
                seen[v] = false;
            }
        }
    }
    let adj = adjacency(n, edges);
    let mut seen = vec![false; n];
    seen[s] = true;
    let mut out = Vec::new();
    go(&adj, t, &mut vec![s], &mut Vec::new(), &mut seen, &mut out);
    out
}

fn untimed(edges: &[(usize, usize)]) -> Vec<(usize, usize, Time)> {
    edges.iter().map(|&(a, b)| (a, b, 0)).collect()
}

/// Sum over unordered pairs of the share of shortest paths through each
/// interior node, with shortest paths found by listing all simple paths.
pub fn brute_static_betweenness(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let e = untimed(edges);
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            let paths = simple_paths(n, &e, s, t);
            let Some(len) = paths.iter().map(|p| p.0.len()).min() else {
                continue;
            };
            let shortest: Vec<_> = paths.iter().filter(|p| p.0.len() == len).collect();
            for (p, _) in &shortest {
                for &v in &p[1..p.len() - 1] {
                    bc[v] += 1.0 / shortest.len() as f64;
                }
            }
        }
    }
    bc
}

/// Sum over unordered pairs of the share of all simple paths through each
/// interior node.
pub fn all_simple_paths_betweenness(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let e = untimed(edges);
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            let paths = simple_paths(n, &e, s, t);
            for (p, _) in &paths {
                for &v in &p[1..p.len() - 1] {
                    bc[v] += 1.0 / paths.len() as f64;
                }
            }
        }
    }
    bc
}

/// Component size of every node.
pub fn component_sizes(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for &(a, b) in edges {
            let m = label[a].min(label[b]);
            if label[a] != m || label[b] != m {
                label[a] = m;
                label[b] = m;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (0..n)
        .map(|v| label.iter().filter(|&&l| l == label[v]).count())
        .collect()
}

/// Exact foremost route statistics of one ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrutePair {
    pub arrival: Time,
    pub total: u64,
    pub through: BTreeMap<usize, u64>,
}

/// Lists every simple path, keeps those with non-decreasing births, and
/// keeps the ones whose last birth is the smallest.
pub fn brute_pair(
    n: usize,
    edges: &[(usize, usize, Time)],
    s: usize,
    t: usize,
) -> Option<BrutePair> {
    let increasing: Vec<(Vec<usize>, Vec<Time>)> = simple_paths(n, edges, s, t)
        .into_iter()
        .filter(|(_, b)| b.windows(2).all(|w| w[0] <= w[1]))
        .collect();
    let arrival = increasing.iter().map(|(_, b)| *b.last().unwrap()).min()?;
    let mut pair = BrutePair {
        arrival,
        total: 0,
        through: BTreeMap::new(),
    };
    for (p, b) in &increasing {
        if *b.last().unwrap() == arrival {
            pair.total += 1;
            for &v in &p[1..p.len() - 1] {
                *pair.through.entry(v).or_default() += 1;
            }
        }
    }
    Some(pair)
}

/// Unadjusted foremost increasing betweenness over ordered pairs `s < t`
/// (or every ordered pair when `both`), with the per-pair statistics.
pub fn brute_temporal(
    n: usize,
    edges: &[(usize, usize, Time)],
    both: bool,
) -> (Vec<f64>, BTreeMap<(usize, usize), BrutePair>) {
    let mut bc = vec![0.0; n];
    let mut pairs = BTreeMap::new();
    for s in 0..n {
        for t in 0..n {
            if s == t || (!both && t < s) {
                continue;
            }
            if let Some(p) = brute_pair(n, edges, s, t) {
                for (&v, &c) in &p.through {
                    bc[v] += c as f64 / p.total as f64;
                }
                pairs.insert((s, t), p);
            }
        }
    }
    (bc, pairs)
}

/// Earliest arrival from `s` over routes with non-decreasing births, for
/// every node; the source gets `start`.
pub fn brute_increasing_arrival(
    n: usize,
    edges: &[(usize, usize, Time)],
    s: usize,
    start: Time,
) -> Vec<Option<Time>> {
    (0..n)
        .map(|t| {
            if t == s {
                Some(start)
            } else {
                brute_pair(n, edges, s, t).map(|p| p.arrival)
            }
        })
        .collect()
}

/// Newman modularity straight from its definition.
pub fn brute_modularity(n: usize, edges: &[(usize, usize)], labels: &[usize]) -> f64 {
    let m = edges.len() as f64;
    if m == 0.0 {
        return 0.0;
    }
    let mut a = vec![vec![0.0; n]; n];
    let mut k = vec![0.0; n];
    for &(x, y) in edges {
        a[x][y] += 1.0;
        a[y][x] += 1.0;
        k[x] += 1.0;
        k[y] += 1.0;
    }
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                q += a[i][j] - k[i] * k[j] / (2.0 * m);
            }
        }
    }
    q / (2.0 * m)
}

/// Directed weighted modularity straight from its definition.
pub fn brute_directed_modularity(n: usize, arcs: &[(usize, usize, f64)], labels: &[usize]) -> f64 {
    let m: f64 = arcs.iter().map(|a| a.2).sum();
    if m == 0.0 {
        return 0.0;
    }
    let mut w = vec![vec![0.0; n]; n];
    let (mut kout, mut kin) = (vec![0.0; n], vec![0.0; n]);
    for &(x, y, c) in arcs {
        w[x][y] += c;
        kout[x] += c;
        kin[y] += c;
    }
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                q += w[i][j] - kout[i] * kin[j] / m;
            }
        }
    }
    q / m
}
