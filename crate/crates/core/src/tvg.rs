//! Time-varying graph data model.
//!
//! The graphs handled here belong to the growing subclass: a node or an edge
//! exists from its birth until the end of the lifetime, and crossing an edge
//! normally takes no time. Time is an integer tick (a year for archival
//! collaboration data).

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Integer time tick.
pub type Time = i64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("{record} has birth {birth} outside lifetime {lifetime}")]
    BirthOutsideLifetime {
        record: String,
        birth: Time,
        lifetime: Lifetime,
    },
    #[error("edge {edge} born {birth} predates endpoint {node} born {node_birth}")]
    EdgeBeforeEndpoint {
        edge: String,
        birth: Time,
        node: NodeId,
        node_birth: Time,
    },
    #[error("node {0} declared twice")]
    DuplicateNode(NodeId),
    #[error("negative latency on edge {0}")]
    NegativeLatency(String),
    #[error("invalid interval [{start}, {end}]: start is after end")]
    InvalidInterval { start: Time, end: Time },
    #[error("window {window} is not contained in lifetime {lifetime}")]
    WindowOutsideLifetime {
        window: Lifetime,
        lifetime: Lifetime,
    },
}

/// Stable node identifier. Ordering is plain string ordering and is used for
/// every deterministic tie-break in the crate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(id: impl Into<String>) -> Self {
        NodeId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        NodeId(s.to_owned())
    }
}

impl From<String> for NodeId {
    fn from(s: String) -> Self {
        NodeId(s)
    }
}

/// Broad actor class of a knowledge-mobilization network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ActorClass {
    /// Human individual actor.
    Hia,
    /// Non-human individual actor.
    Nhia,
    /// Non-human mobilization actor (posters, projects, journals, campaigns...).
    Nhma,
    /// Organizational actor.
    Oa,
    Unknown,
}

impl ActorClass {
    pub const ALL: [ActorClass; 5] = [
        ActorClass::Hia,
        ActorClass::Nhia,
        ActorClass::Nhma,
        ActorClass::Oa,
        ActorClass::Unknown,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ActorClass::Hia => "HIA",
            ActorClass::Nhia => "NHIA",
            ActorClass::Nhma => "NHMA",
            ActorClass::Oa => "OA",
            ActorClass::Unknown => "UNKNOWN",
        }
    }

    pub fn parse(s: &str) -> Option<ActorClass> {
        ActorClass::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
    }
}

/// Actor class plus an optional free-text subtype such as `poster`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ActorType {
    pub class: ActorClass,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub subtype: Option<String>,
}

impl ActorType {
    pub fn new(class: ActorClass) -> Self {
        ActorType {
            class,
            subtype: None,
        }
    }

    pub fn with_subtype(class: ActorClass, subtype: impl Into<String>) -> Self {
        ActorType {
            class,
            subtype: Some(subtype.into()),
        }
    }

    pub fn unknown() -> Self {
        ActorType::new(ActorClass::Unknown)
    }
}

impl Default for ActorType {
    fn default() -> Self {
        ActorType::unknown()
    }
}

impl fmt::Display for ActorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.subtype {
            Some(sub) => write!(f, "{}:{}", self.class.as_str(), sub),
            None => f.write_str(self.class.as_str()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemporalNode {
    pub id: NodeId,
    pub actor_type: ActorType,
    pub birth: Time,
}

impl TemporalNode {
    pub fn new(id: impl Into<NodeId>, actor_type: ActorType, birth: Time) -> Self {
        TemporalNode {
            id: id.into(),
            actor_type,
            birth,
        }
    }
}

/// Undirected edge. Endpoints are stored in ascending id order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TemporalEdge {
    a: NodeId,
    b: NodeId,
    pub birth: Time,
    pub latency: Time,
}

impl TemporalEdge {
    pub fn new(u: impl Into<NodeId>, v: impl Into<NodeId>, birth: Time) -> Self {
        TemporalEdge::with_latency(u, v, birth, 0)
    }

    pub fn with_latency(
        u: impl Into<NodeId>,
        v: impl Into<NodeId>,
        birth: Time,
        latency: Time,
    ) -> Self {
        let (u, v) = (u.into(), v.into());
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        TemporalEdge {
            a,
            b,
            birth,
            latency,
        }
    }

    pub fn endpoints(&self) -> (&NodeId, &NodeId) {
        (&self.a, &self.b)
    }

    pub fn touches(&self, v: &NodeId) -> bool {
        &self.a == v || &self.b == v
    }

    /// The endpoint opposite `v`, if `v` is an endpoint.
    pub fn other(&self, v: &NodeId) -> Option<&NodeId> {
        if &self.a == v {
            Some(&self.b)
        } else if &self.b == v {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Edge presence: available from birth onwards.
    pub fn is_present(&self, t: Time) -> bool {
        presence(self, t)
    }
}

impl fmt::Display for TemporalEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}@{}", self.a, self.b, self.birth)
    }
}

/// Closed time interval `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Lifetime {
    pub start: Time,
    pub end: Time,
}

/// Analysis window; same shape as a lifetime.
pub type Window = Lifetime;

impl Lifetime {
    pub fn new(start: Time, end: Time) -> Result<Self, GraphError> {
        if start > end {
            return Err(GraphError::InvalidInterval { start, end });
        }
        Ok(Lifetime { start, end })
    }

    pub fn contains(&self, t: Time) -> bool {
        self.start <= t && t <= self.end
    }

    pub fn contains_interval(&self, other: &Lifetime) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

impl fmt::Display for Lifetime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.start, self.end)
    }
}

/// Presence function of the growing subclass: an edge is available at every
/// tick from its birth on.
pub fn presence(edge: &TemporalEdge, t: Time) -> bool {
    t >= edge.birth
}

/// Non-fatal issue raised while building a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildWarning {
    /// An edge referenced a node that was not declared.
    AutoCreatedNode { node: NodeId, birth: Time },
    /// A second edge between the same endpoints was dropped.
    DuplicateEdge {
        kept: TemporalEdge,
        dropped: TemporalEdge,
    },
}

impl fmt::Display for BuildWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildWarning::AutoCreatedNode { node, birth } => {
                write!(f, "node {node} referenced by an edge but not declared; created with birth {birth}")
            }
            BuildWarning::DuplicateEdge { kept, dropped } => {
                write!(f, "duplicate edge {dropped} dropped in favour of {kept}")
            }
        }
    }
}

/// Adjacency entry; `node` and `edge` are dense indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Adj {
    pub node: usize,
    pub birth: Time,
    pub edge: usize,
}

/// Immutable time-varying graph.
///
/// Nodes are kept sorted by id, so dense indices follow id order. Edges are
/// sorted by `(birth, a, b)` and adjacency lists by `(birth, neighbour id)`.
#[derive(Debug, Clone)]
pub struct TimeVaryingGraph {
    nodes: Vec<TemporalNode>,
    edges: Vec<TemporalEdge>,
    lifetime: Lifetime,
    index: HashMap<NodeId, usize>,
    ends: Vec<(usize, usize)>,
    adj: Vec<Vec<Adj>>,
}

impl PartialEq for TimeVaryingGraph {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.edges == other.edges && self.lifetime == other.lifetime
    }
}

impl TimeVaryingGraph {
    /// Validates and assembles a graph. Warnings go to the log.
    pub fn build(
        nodes: Vec<TemporalNode>,
        edges: Vec<TemporalEdge>,
        lifetime: Lifetime,
    ) -> Result<Self, GraphError> {
        let (g, warnings) = Self::build_with_warnings(nodes, edges, lifetime)?;
        for w in &warnings {
            log::warn!("{w}");
        }
        Ok(g)
    }

    pub fn build_with_warnings(
        nodes: Vec<TemporalNode>,
        edges: Vec<TemporalEdge>,
        lifetime: Lifetime,
    ) -> Result<(Self, Vec<BuildWarning>), GraphError> {
        Lifetime::new(lifetime.start, lifetime.end)?;
        let mut warnings = Vec::new();

        let mut by_id: BTreeMap<NodeId, TemporalNode> = BTreeMap::new();
        for node in nodes {
            if !lifetime.contains(node.birth) {
                return Err(GraphError::BirthOutsideLifetime {
                    record: format!("node {}", node.id),
                    birth: node.birth,
                    lifetime,
                });
            }
            if by_id.contains_key(&node.id) {
                return Err(GraphError::DuplicateNode(node.id));
            }
            by_id.insert(node.id.clone(), node);
        }

        // Earliest birth wins among duplicates; ties keep the first seen.
        let mut unique: BTreeMap<(NodeId, NodeId), TemporalEdge> = BTreeMap::new();
        for edge in edges {
            if edge.a == edge.b {
                return Err(GraphError::SelfLoop(edge.a));
            }
            if !lifetime.contains(edge.birth) {
                return Err(GraphError::BirthOutsideLifetime {
                    record: format!("edge {edge}"),
                    birth: edge.birth,
                    lifetime,
                });
            }
            if edge.latency < 0 {
                return Err(GraphError::NegativeLatency(edge.to_string()));
            }
            let key = (edge.a.clone(), edge.b.clone());
            match unique.get_mut(&key) {
                Some(kept) if edge.birth < kept.birth => {
                    let dropped = std::mem::replace(kept, edge);
                    warnings.push(BuildWarning::DuplicateEdge {
                        kept: kept.clone(),
                        dropped,
                    });
                }
                Some(kept) => warnings.push(BuildWarning::DuplicateEdge {
                    kept: kept.clone(),
                    dropped: edge,
                }),
                None => {
                    unique.insert(key, edge);
                }
            }
        }

        // Auto-create missing endpoints with the birth of their earliest edge.
        let mut missing: BTreeMap<NodeId, Time> = BTreeMap::new();
        for edge in unique.values() {
            for end in [&edge.a, &edge.b] {
                if !by_id.contains_key(end) {
                    let b = missing.entry(end.clone()).or_insert(edge.birth);
                    *b = (*b).min(edge.birth);
                }
            }
        }
        for (id, birth) in missing {
            warnings.push(BuildWarning::AutoCreatedNode {
                node: id.clone(),
                birth,
            });
            by_id.insert(
                id.clone(),
                TemporalNode::new(id, ActorType::unknown(), birth),
            );
        }

        for edge in unique.values() {
            for end in [&edge.a, &edge.b] {
                let nb = by_id[end].birth;
                if edge.birth < nb {
                    return Err(GraphError::EdgeBeforeEndpoint {
                        edge: edge.to_string(),
                        birth: edge.birth,
                        node: end.clone(),
                        node_birth: nb,
                    });
                }
            }
        }

        let nodes: Vec<TemporalNode> = by_id.into_values().collect();
        let edges: Vec<TemporalEdge> = unique.into_values().collect();
        Ok((Self::assemble(nodes, edges, lifetime), warnings))
    }

    /// Builds indices. Inputs must already be validated and sorted by id.
    fn assemble(
        nodes: Vec<TemporalNode>,
        mut edges: Vec<TemporalEdge>,
        lifetime: Lifetime,
    ) -> Self {
        edges.sort_by(|x, y| (x.birth, &x.a, &x.b).cmp(&(y.birth, &y.a, &y.b)));
        let index: HashMap<NodeId, usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.id.clone(), i))
            .collect();
        let mut adj = vec![Vec::new(); nodes.len()];
        let mut ends = Vec::with_capacity(edges.len());
        for (ei, e) in edges.iter().enumerate() {
            let (a, b) = (index[&e.a], index[&e.b]);
            ends.push((a, b));
            adj[a].push(Adj {
                node: b,
                birth: e.birth,
                edge: ei,
            });
            adj[b].push(Adj {
                node: a,
                birth: e.birth,
                edge: ei,
            });
        }
        for list in &mut adj {
            list.sort_by_key(|x| (x.birth, x.node));
        }
        TimeVaryingGraph {
            nodes,
            edges,
            lifetime,
            index,
            ends,
            adj,
        }
    }

    pub fn empty(lifetime: Lifetime) -> Self {
        Self::assemble(Vec::new(), Vec::new(), lifetime)
    }

    pub fn nodes(&self) -> &[TemporalNode] {
        &self.nodes
    }

    /// Edges sorted by `(birth, a, b)`.
    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn lifetime(&self) -> Lifetime {
        self.lifetime
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node(&self, id: &NodeId) -> Option<&TemporalNode> {
        self.index.get(id).map(|&i| &self.nodes[i])
    }

    pub fn contains_node(&self, id: &NodeId) -> bool {
        self.index.contains_key(id)
    }

    /// The edge between `u` and `v`, if any.
    pub fn edge_between(&self, u: &NodeId, v: &NodeId) -> Option<&TemporalEdge> {
        let (iu, iv) = (self.index_of(u)?, self.index_of(v)?);
        self.adj[iu]
            .iter()
            .find(|a| a.node == iv)
            .map(|a| &self.edges[a.edge])
    }

    /// Every distinct birth tick of a node or an edge, ascending.
    pub fn birth_dates(&self) -> Vec<Time> {
        let mut births: Vec<Time> = self
            .nodes
            .iter()
            .map(|n| n.birth)
            .chain(self.edges.iter().map(|e| e.birth))
            .collect();
        births.sort_unstable();
        births.dedup();
        births
    }

    pub fn is_zero_latency(&self) -> bool {
        self.edges.iter().all(|e| e.latency == 0)
    }

    pub(crate) fn index_of(&self, id: &NodeId) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub(crate) fn id_at(&self, i: usize) -> &NodeId {
        &self.nodes[i].id
    }

    pub(crate) fn adjacency(&self, i: usize) -> &[Adj] {
        &self.adj[i]
    }

    pub(crate) fn edge_ends(&self, ei: usize) -> (usize, usize) {
        self.ends[ei]
    }

    /// Keeps only edges born inside `window`, and the nodes touching them.
    ///
    /// Surviving nodes born before the window start get their birth moved up
    /// to it; the lifetime becomes the window.
    pub fn restrict_window(&self, window: Window) -> Result<Self, GraphError> {
        let window = Lifetime::new(window.start, window.end)?;
        if !self.lifetime.contains_interval(&window) {
            return Err(GraphError::WindowOutsideLifetime {
                window,
                lifetime: self.lifetime,
            });
        }
        let edges: Vec<TemporalEdge> = self
            .edges
            .iter()
            .filter(|e| window.contains(e.birth))
            .cloned()
            .collect();
        let mut keep = vec![false; self.nodes.len()];
        for e in &edges {
            keep[self.index[&e.a]] = true;
            keep[self.index[&e.b]] = true;
        }
        let nodes = self
            .nodes
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(n, _)| TemporalNode {
                birth: n.birth.max(window.start),
                ..n.clone()
            })
            .collect();
        Ok(Self::assemble(nodes, edges, window))
    }

    /// Cumulative snapshot at tick `t`: every node and edge born at or before
    /// `t`, isolated nodes included. The lifetime becomes `[start, t]`.
    pub fn snapshot(&self, t: Time) -> Result<Self, GraphError> {
        let upto = Lifetime::new(self.lifetime.start, t)?;
        if !self.lifetime.contains_interval(&upto) {
            return Err(GraphError::WindowOutsideLifetime {
                window: upto,
                lifetime: self.lifetime,
            });
        }
        let nodes = self
            .nodes
            .iter()
            .filter(|n| n.birth <= t)
            .cloned()
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| e.birth <= t)
            .cloned()
            .collect();
        Ok(Self::assemble(nodes, edges, upto))
    }

    /// Static union of all nodes and edges, with births erased.
    pub fn footprint(&self) -> Footprint {
        let adj = self
            .adj
            .iter()
            .map(|list| {
                let mut ns: Vec<usize> = list.iter().map(|a| a.node).collect();
                ns.sort_unstable();
                ns
            })
            .collect();
        Footprint::from_adjacency(self.nodes.iter().map(|n| n.id.clone()).collect(), adj)
    }
}

/// Static undirected graph with connected-component labelling.
///
/// Node indices follow ascending id order.
#[derive(Debug, Clone, PartialEq)]
pub struct Footprint {
    ids: Vec<NodeId>,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    component: Vec<usize>,
    component_sizes: Vec<usize>,
}

impl Footprint {
    /// Builds a footprint from ids and an undirected edge list. Duplicate
    /// edges and self-loops are ignored.
    pub fn from_edges(ids: Vec<NodeId>, edges: &[(usize, usize)]) -> Self {
        let mut order: Vec<usize> = (0..ids.len()).collect();
        order.sort_by(|&x, &y| ids[x].cmp(&ids[y]));
        let mut remap = vec![0; ids.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let sorted_ids: Vec<NodeId> = order.iter().map(|&o| ids[o].clone()).collect();
        let mut adj = vec![Vec::new(); ids.len()];
        for &(u, v) in edges {
            if u == v {
                continue;
            }
            let (u, v) = (remap[u], remap[v]);
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Self::from_adjacency(sorted_ids, adj)
    }

    fn from_adjacency(ids: Vec<NodeId>, adj: Vec<Vec<usize>>) -> Self {
        let n = ids.len();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let mut component = vec![usize::MAX; n];
        let mut component_sizes = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if component[s] != usize::MAX {
                continue;
            }
            let c = component_sizes.len();
            component[s] = c;
            queue.push_back(s);
            let mut size = 0;
            while let Some(u) = queue.pop_front() {
                size += 1;
                for &v in &adj[u] {
                    if component[v] == usize::MAX {
                        component[v] = c;
                        queue.push_back(v);
                    }
                }
            }
            component_sizes.push(size);
        }
        Footprint {
            ids,
            adj,
            edge_count,
            component,
            component_sizes,
        }
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn ids(&self) -> &[NodeId] {
        &self.ids
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn index_of(&self, id: &NodeId) -> Option<usize> {
        self.ids.binary_search(id).ok()
    }

    pub fn component_count(&self) -> usize {
        self.component_sizes.len()
    }

    pub fn component_of(&self, i: usize) -> usize {
        self.component[i]
    }

    pub fn component_sizes(&self) -> &[usize] {
        &self.component_sizes
    }

    /// `n(v)`: size of the component holding node `i`.
    pub fn component_size_of(&self, i: usize) -> usize {
        self.component_sizes[self.component[i]]
    }

    /// Canonical `(u, v)` pairs with `u < v`, sorted.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Index of the largest component; ties go to the component found first
    /// (the one holding the smallest node id).
    pub fn largest_component(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (c, &s) in self.component_sizes.iter().enumerate() {
            if best.is_none_or(|b| s > self.component_sizes[b]) {
                best = Some(c);
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lt(a: Time, b: Time) -> Lifetime {
        Lifetime::new(a, b).unwrap()
    }

    fn n(id: &str, birth: Time) -> TemporalNode {
        TemporalNode::new(id, ActorType::unknown(), birth)
    }

    fn path_graph() -> TimeVaryingGraph {
        TimeVaryingGraph::build(
            vec![n("a", 2006), n("b", 2006), n("c", 2009)],
            vec![
                TemporalEdge::new("a", "b", 2006),
                TemporalEdge::new("b", "c", 2009),
            ],
            lt(2005, 2011),
        )
        .unwrap()
    }

    #[test]
    fn builds_ten_node_fourteen_edge_graph() {
        let nodes: Vec<_> = (0..10).map(|i| n(&format!("v{i}"), 2005)).collect();
        let mut edges = Vec::new();
        for i in 0..10 {
            edges.push(TemporalEdge::new(
                format!("v{i}"),
                format!("v{}", (i + 1) % 10),
                2005,
            ));
        }
        for i in 0..4 {
            edges.push(TemporalEdge::new(
                format!("v{i}"),
                format!("v{}", i + 5),
                2005,
            ));
        }
        let g = TimeVaryingGraph::build(nodes, edges, lt(2005, 2011)).unwrap();
        assert_eq!(g.node_count(), 10);
        assert_eq!(g.edge_count(), 14);
    }

    #[test]
    fn empty_graph_is_valid() {
        let g = TimeVaryingGraph::build(vec![], vec![], lt(2005, 2011)).unwrap();
        assert_eq!(g.node_count(), 0);
        assert_eq!(g.footprint().component_count(), 0);
    }

    #[test]
    fn duplicate_edge_keeps_earliest_birth() {
        let (g, warnings) = TimeVaryingGraph::build_with_warnings(
            vec![n("a", 2005), n("b", 2005)],
            vec![
                TemporalEdge::new("b", "a", 2008),
                TemporalEdge::new("a", "b", 2006),
            ],
            lt(2005, 2011),
        )
        .unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges()[0].birth, 2006);
        assert!(matches!(warnings[0], BuildWarning::DuplicateEdge { .. }));
    }

    #[test]
    fn rejects_self_loop_and_out_of_lifetime_births() {
        let err = TimeVaryingGraph::build(
            vec![],
            vec![TemporalEdge::new("a", "a", 2006)],
            lt(2005, 2011),
        );
        assert_eq!(err.unwrap_err(), GraphError::SelfLoop("a".into()));

        let err = TimeVaryingGraph::build(vec![n("a", 2004)], vec![], lt(2005, 2011)).unwrap_err();
        assert!(matches!(
            err,
            GraphError::BirthOutsideLifetime { birth: 2004, .. }
        ));

        let err = TimeVaryingGraph::build(
            vec![],
            vec![TemporalEdge::new("a", "b", 2012)],
            lt(2005, 2011),
        )
        .unwrap_err();
        assert!(err.to_string().contains("a-b@2012"));
    }

    #[test]
    fn rejects_edge_older_than_endpoint() {
        let err = TimeVaryingGraph::build(
            vec![n("a", 2008), n("b", 2005)],
            vec![TemporalEdge::new("a", "b", 2006)],
            lt(2005, 2011),
        )
        .unwrap_err();
        assert!(matches!(err, GraphError::EdgeBeforeEndpoint { .. }));
    }

    #[test]
    fn auto_creates_missing_endpoint() {
        let (g, warnings) = TimeVaryingGraph::build_with_warnings(
            vec![n("a", 2005)],
            vec![
                TemporalEdge::new("a", "z", 2009),
                TemporalEdge::new("z", "y", 2007),
            ],
            lt(2005, 2011),
        )
        .unwrap();
        let z = g.node(&"z".into()).unwrap();
        assert_eq!(z.birth, 2007);
        assert_eq!(z.actor_type.class, ActorClass::Unknown);
        assert_eq!(warnings.len(), 2);
    }

    #[test]
    fn full_window_is_identity() {
        let g = path_graph();
        assert_eq!(g.restrict_window(g.lifetime()).unwrap().edges(), g.edges());
        // node births in [2006, 2009] are already inside the window
        assert_eq!(g.restrict_window(g.lifetime()).unwrap(), g);
    }

    #[test]
    fn window_keeps_only_edges_born_inside() {
        let g = TimeVaryingGraph::build(
            vec![],
            vec![
                TemporalEdge::new("a", "b", 2006),
                TemporalEdge::new("c", "d", 2008),
                TemporalEdge::new("e", "f", 2010),
            ],
            lt(2005, 2011),
        )
        .unwrap();
        let w = g.restrict_window(lt(2008, 2011)).unwrap();
        let births: Vec<_> = w.edges().iter().map(|e| e.birth).collect();
        assert_eq!(births, vec![2008, 2010]);
        assert_eq!(w.node_count(), 4);
    }

    #[test]
    fn window_drops_isolated_and_clamps_births() {
        let g = path_graph();
        let w = g.restrict_window(lt(2007, 2011)).unwrap();
        let ids: Vec<_> = w.nodes().iter().map(|n| n.id.as_str()).collect();
        assert_eq!(ids, vec!["b", "c"]);
        assert_eq!(w.edge_count(), 1);
        assert_eq!(w.node(&"b".into()).unwrap().birth, 2007);
        assert_eq!(w.lifetime(), lt(2007, 2011));
    }

    #[test]
    fn window_errors() {
        let g = path_graph();
        assert!(matches!(
            g.restrict_window(Lifetime {
                start: 2010,
                end: 2008
            }),
            Err(GraphError::InvalidInterval { .. })
        ));
        assert!(matches!(
            g.restrict_window(Lifetime {
                start: 2004,
                end: 2011
            }),
            Err(GraphError::WindowOutsideLifetime { .. })
        ));
    }

    #[test]
    fn footprint_of_two_triangles() {
        let g = TimeVaryingGraph::build(
            vec![],
            vec![
                TemporalEdge::new("a", "b", 1),
                TemporalEdge::new("b", "c", 1),
                TemporalEdge::new("a", "c", 1),
                TemporalEdge::new("x", "y", 2),
                TemporalEdge::new("y", "z", 2),
                TemporalEdge::new("x", "z", 2),
            ],
            lt(0, 3),
        )
        .unwrap();
        let f = g.footprint();
        assert_eq!(f.component_count(), 2);
        assert_eq!(f.component_sizes(), &[3, 3]);
        assert_eq!(f.edge_count(), 6);
    }

    #[test]
    fn presence_is_birth_onwards() {
        let e = TemporalEdge::new("a", "b", 2006);
        assert!(!presence(&e, 2005));
        assert!(presence(&e, 2006));
        assert!(presence(&e, 2011));
    }

    #[test]
    fn snapshot_keeps_isolated_nodes() {
        let g = TimeVaryingGraph::build(
            vec![n("a", 2005), n("b", 2005), n("c", 2006), n("lonely", 2005)],
            vec![
                TemporalEdge::new("a", "b", 2005),
                TemporalEdge::new("b", "c", 2006),
            ],
            lt(2005, 2011),
        )
        .unwrap();
        let s = g.snapshot(2005).unwrap();
        assert_eq!(s.node_count(), 3);
        assert_eq!(s.edge_count(), 1);
        assert_eq!(s.footprint().component_count(), 2);
    }
}
