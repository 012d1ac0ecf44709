//! Modularity communities on footprints, and focus-centred temporal
//! communities on a projection of foremost journeys.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::journey::{increasing_arrivals, JourneyError};
use crate::tvg::{Footprint, NodeId, Time, TimeVaryingGraph, Window};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CommunityError {
    #[error("focus node {0} is not present in the window")]
    UnknownFocus(NodeId),
    #[error(transparent)]
    Journey(#[from] JourneyError),
}

const GAIN_EPS: f64 = 1e-12;

/// Assignment of nodes to dense community ids.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Partition {
    pub assignment: BTreeMap<NodeId, usize>,
    pub community_count: usize,
    pub modularity: f64,
}

impl Partition {
    pub fn empty() -> Self {
        Partition {
            assignment: BTreeMap::new(),
            community_count: 0,
            modularity: 0.0,
        }
    }

    /// Members of each community, ids ascending.
    pub fn communities(&self) -> Vec<Vec<NodeId>> {
        let mut out = vec![Vec::new(); self.community_count];
        for (id, &c) in &self.assignment {
            out[c].push(id.clone());
        }
        out
    }
}

/// Renumbers labels densely in order of first appearance.
fn densify(labels: &[usize]) -> (Vec<usize>, usize) {
    let mut map: BTreeMap<usize, usize> = BTreeMap::new();
    let dense = labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect();
    (dense, map.len())
}

/// Newman modularity of an undirected unweighted graph for the given labels.
pub fn modularity(f: &Footprint, labels: &[usize]) -> f64 {
    let m = f.edge_count() as f64;
    if m == 0.0 {
        return 0.0;
    }
    let k = labels.iter().copied().max().map_or(0, |x| x + 1);
    let mut internal = vec![0.0; k];
    let mut degree = vec![0.0; k];
    for v in 0..f.node_count() {
        degree[labels[v]] += f.degree(v) as f64;
    }
    for (u, v) in f.edge_list() {
        if labels[u] == labels[v] {
            internal[labels[u]] += 1.0;
        }
    }
    internal
        .iter()
        .zip(&degree)
        .map(|(&l, &d)| l / m - (d / (2.0 * m)).powi(2))
        .sum()
}

/// Weighted undirected graph used by the Louvain levels. `loops[i]` is the
/// weight of edges folded inside super-node `i`.
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    loops: Vec<f64>,
}

impl Level {
    fn strength(&self, i: usize) -> f64 {
        self.adj[i].iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * self.loops[i]
    }

    /// One local-moving phase. Returns community labels and whether any
    /// node moved.
    fn local_moves(&self, m: f64) -> (Vec<usize>, bool) {
        let n = self.adj.len();
        let k: Vec<f64> = (0..n).map(|i| self.strength(i)).collect();
        let mut comm: Vec<usize> = (0..n).collect();
        let mut tot = k.clone();
        let mut moved_any = false;
        let mut links: BTreeMap<usize, f64> = BTreeMap::new();
        loop {
            let mut moved = false;
            for i in 0..n {
                let own = comm[i];
                links.clear();
                for &(j, w) in &self.adj[i] {
                    *links.entry(comm[j]).or_insert(0.0) += w;
                }
                tot[own] -= k[i];
                let gain = |c: usize, l: f64| l / m - tot[c] * k[i] / (2.0 * m * m);
                let mut best = own;
                let mut best_gain = gain(own, links.get(&own).copied().unwrap_or(0.0));
                for (&c, &l) in &links {
                    let g = gain(c, l);
                    if g > best_gain + GAIN_EPS {
                        best = c;
                        best_gain = g;
                    }
                }
                tot[best] += k[i];
                if best != own {
                    comm[i] = best;
                    moved = true;
                    moved_any = true;
                }
            }
            if !moved {
                break;
            }
        }
        (comm, moved_any)
    }

    fn aggregate(&self, labels: &[usize], count: usize) -> Level {
        let mut loops = vec![0.0; count];
        let mut maps: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); count];
        for (i, list) in self.adj.iter().enumerate() {
            let ci = labels[i];
            loops[ci] += self.loops[i];
            for &(j, w) in list {
                let cj = labels[j];
                if ci == cj {
                    // each internal edge is seen from both ends
                    loops[ci] += w / 2.0;
                } else {
                    *maps[ci].entry(cj).or_insert(0.0) += w;
                }
            }
        }
        Level {
            adj: maps.into_iter().map(|m| m.into_iter().collect()).collect(),
            loops,
        }
    }
}

/// Multi-level greedy modularity optimisation (Louvain) on the footprint.
/// Nodes are visited in id order and equal gains go to the lower community
/// label, so the result is deterministic. Community ids are numbered in the
/// order of each community's smallest node id.
pub fn detect_communities(f: &Footprint) -> Partition {
    let n = f.node_count();
    if n == 0 {
        return Partition::empty();
    }
    let m = f.edge_count() as f64;
    let mut labels: Vec<usize> = (0..n).collect();
    if m > 0.0 {
        let mut level = Level {
            adj: (0..n)
                .map(|v| f.neighbors(v).iter().map(|&w| (w, 1.0)).collect())
                .collect(),
            loops: vec![0.0; n],
        };
        loop {
            let (comm, moved) = level.local_moves(m);
            if !moved {
                break;
            }
            let (dense, count) = densify(&comm);
            for l in labels.iter_mut() {
                *l = dense[*l];
            }
            level = level.aggregate(&dense, count);
        }
    }
    let (labels, count) = densify(&labels);
    Partition {
        modularity: modularity(f, &labels),
        assignment: f.ids().iter().cloned().zip(labels).collect(),
        community_count: count,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectedEdge {
    pub from: NodeId,
    pub to: NodeId,
    pub arrival: Time,
    pub weight: f64,
}

/// Directed weighted graph linking a focus node to every node it reaches, or
/// is reached from, by a foremost increasing journey.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectedDigraph {
    pub focus: NodeId,
    pub window: Window,
    pub edges: Vec<ProjectedEdge>,
}

impl ProjectedDigraph {
    /// Focus first, then the other endpoints in id order. Empty when there
    /// are no edges.
    pub fn nodes(&self) -> Vec<NodeId> {
        if self.edges.is_empty() {
            return Vec::new();
        }
        let others: BTreeSet<&NodeId> = self
            .edges
            .iter()
            .flat_map(|e| [&e.from, &e.to])
            .filter(|&v| v != &self.focus)
            .collect();
        std::iter::once(self.focus.clone())
            .chain(others.into_iter().cloned())
            .collect()
    }
}

/// Weight of a projected journey edge: `1 / (1 + arrival - window start)`.
pub fn journey_weight(arrival: Time, window_start: Time) -> f64 {
    1.0 / (1.0 + (arrival - window_start) as f64)
}

/// Replaces each foremost increasing journey leaving or entering `focus` by
/// one weighted edge (focus -> v for journeys leaving, v -> focus for
/// journeys arriving). Interior nodes of the journeys are not represented.
pub fn project_temporal_neighborhood(
    g: &TimeVaryingGraph,
    focus: &NodeId,
) -> Result<ProjectedDigraph, CommunityError> {
    let s = g
        .index_of(focus)
        .ok_or_else(|| CommunityError::UnknownFocus(focus.clone()))?;
    let start = g.lifetime().start;
    let mut edges = Vec::new();
    let forward = increasing_arrivals(g, s);
    for v in (0..g.node_count()).filter(|&v| v != s) {
        if let Some(t) = forward[v] {
            edges.push(ProjectedEdge {
                from: focus.clone(),
                to: g.id_at(v).clone(),
                arrival: t,
                weight: journey_weight(t, start),
            });
        }
    }
    for v in (0..g.node_count()).filter(|&v| v != s) {
        if let Some(t) = increasing_arrivals(g, v)[s] {
            edges.push(ProjectedEdge {
                from: g.id_at(v).clone(),
                to: focus.clone(),
                arrival: t,
                weight: journey_weight(t, start),
            });
        }
    }
    Ok(ProjectedDigraph {
        focus: focus.clone(),
        window: g.lifetime(),
        edges,
    })
}

/// Dense weighted digraph: `(from, to, weight)` over `n` nodes.
pub struct WeightedDigraph {
    pub n: usize,
    pub arcs: Vec<(usize, usize, f64)>,
}

/// Leicht–Newman directed modularity:
/// `Q = (1/m) * sum_ij [A_ij - k_i^out k_j^in / m] delta(c_i, c_j)`.
pub fn directed_modularity(g: &WeightedDigraph, labels: &[usize]) -> f64 {
    let m: f64 = g.arcs.iter().map(|a| a.2).sum();
    if m == 0.0 {
        return 0.0;
    }
    let k = labels.iter().copied().max().map_or(0, |x| x + 1);
    let mut inside = vec![0.0; k];
    let mut out = vec![0.0; k];
    let mut inn = vec![0.0; k];
    for &(u, v, w) in &g.arcs {
        out[labels[u]] += w;
        inn[labels[v]] += w;
        if labels[u] == labels[v] {
            inside[labels[u]] += w;
        }
    }
    (0..k)
        .map(|c| inside[c] / m - out[c] * inn[c] / (m * m))
        .sum()
}

/// Greedy agglomeration: starting from singletons, repeatedly merge the pair
/// of communities with the largest positive modularity gain. Ties go to the
/// pair with the smallest community indices.
pub fn greedy_directed_communities(g: &WeightedDigraph) -> Vec<usize> {
    let n = g.n;
    let m: f64 = g.arcs.iter().map(|a| a.2).sum();
    let mut labels: Vec<usize> = (0..n).collect();
    if m == 0.0 {
        return labels;
    }
    let mut out = vec![0.0; n];
    let mut inn = vec![0.0; n];
    // between[a][b]: weight of arcs from community a to community b
    let mut between: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); n];
    for &(u, v, w) in &g.arcs {
        out[u] += w;
        inn[v] += w;
        if u != v {
            *between[u].entry(v).or_insert(0.0) += w;
        }
    }
    let mut alive: Vec<bool> = vec![true; n];
    loop {
        let mut best: Option<(f64, usize, usize)> = None;
        for a in (0..n).filter(|&a| alive[a]) {
            for b in (a + 1..n).filter(|&b| alive[b]) {
                let w_ab = between[a].get(&b).copied().unwrap_or(0.0);
                let w_ba = between[b].get(&a).copied().unwrap_or(0.0);
                let gain = (w_ab + w_ba) / m - (out[a] * inn[b] + out[b] * inn[a]) / (m * m);
                if gain > GAIN_EPS && best.is_none_or(|(g0, _, _)| gain > g0 + GAIN_EPS) {
                    best = Some((gain, a, b));
                }
            }
        }
        let Some((_, a, b)) = best else { break };
        // fold b into a
        alive[b] = false;
        out[a] += out[b];
        inn[a] += inn[b];
        let from_b = std::mem::take(&mut between[b]);
        for (c, w) in from_b {
            if c != a {
                *between[a].entry(c).or_insert(0.0) += w;
            }
        }
        for (c, row) in between.iter_mut().enumerate() {
            if let Some(w) = row.remove(&b) {
                if c != a {
                    *row.entry(a).or_insert(0.0) += w;
                }
            }
        }
        between[a].remove(&a);
        for l in labels.iter_mut() {
            if *l == b {
                *l = a;
            }
        }
    }
    densify(&labels).0
}

/// Communities around `focus` from directed modularity on its projection.
/// Nodes outside the projection are left unassigned.
pub fn detect_temporal_communities(
    g: &TimeVaryingGraph,
    focus: &NodeId,
) -> Result<Partition, CommunityError> {
    let projection = project_temporal_neighborhood(g, focus)?;
    let nodes = projection.nodes();
    if nodes.is_empty() {
        return Ok(Partition::empty());
    }
    let index: BTreeMap<&NodeId, usize> = nodes.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let digraph = WeightedDigraph {
        n: nodes.len(),
        arcs: projection
            .edges
            .iter()
            .map(|e| (index[&e.from], index[&e.to], e.weight))
            .collect(),
    };
    let labels = greedy_directed_communities(&digraph);
    let count = labels.iter().copied().max().map_or(0, |x| x + 1);
    Ok(Partition {
        modularity: directed_modularity(&digraph, &labels),
        assignment: nodes.into_iter().zip(labels).collect(),
        community_count: count,
    })
}
