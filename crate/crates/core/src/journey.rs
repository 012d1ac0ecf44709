//! Journeys, earliest arrivals and foremost increasing route counting.
//!
//! A route is *increasing* when the births of its edges never decrease along
//! the walk. With zero latency and edges that persist once born, the arrival
//! of an increasing route is the birth of its last edge, so the foremost
//! increasing arrival at `w` is the smallest last-edge birth over all
//! increasing routes ending at `w`. Routes are simple paths.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::tvg::{presence, NodeId, TemporalEdge, Time, TimeVaryingGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JourneyError {
    #[error("node {0} is not in the graph")]
    UnknownNode(NodeId),
    #[error("source and target are the same node {0}")]
    SameEndpoints(NodeId),
    #[error("more than {limit} foremost routes from {from} to {target}")]
    RouteLimitExceeded {
        from: NodeId,
        target: NodeId,
        limit: u64,
    },
    #[error("route counting requires zero-latency edges")]
    NonZeroLatency,
}

/// One traversal: cross `edge` at time `time`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JourneyStep {
    pub edge: TemporalEdge,
    pub time: Time,
}

/// Temporal walk.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Journey {
    pub steps: Vec<JourneyStep>,
}

impl Journey {
    pub fn new(steps: impl IntoIterator<Item = (TemporalEdge, Time)>) -> Self {
        Journey {
            steps: steps
                .into_iter()
                .map(|(edge, time)| JourneyStep { edge, time })
                .collect(),
        }
    }

    pub fn departure(&self) -> Option<Time> {
        self.steps.first().map(|s| s.time)
    }

    pub fn arrival(&self) -> Option<Time> {
        self.steps.last().map(|s| s.time + s.edge.latency)
    }
}

/// Vertex sequence of a walk.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Route(pub Vec<NodeId>);

impl Route {
    pub fn from_ids<I, S>(ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<NodeId>,
    {
        Route(ids.into_iter().map(Into::into).collect())
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.0
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Births of the edges along the route, or `None` if two consecutive
    /// nodes are not adjacent in `g`.
    pub fn births(&self, g: &TimeVaryingGraph) -> Option<Vec<Time>> {
        self.0
            .windows(2)
            .map(|p| g.edge_between(&p[0], &p[1]).map(|e| e.birth))
            .collect()
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, id) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("->")?;
            }
            write!(f, "{id}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArrivalLabel {
    /// `None` when the node cannot be reached.
    pub earliest_arrival: Option<Time>,
}

impl ArrivalLabel {
    pub fn is_reachable(&self) -> bool {
        self.earliest_arrival.is_some()
    }
}

/// Exact, unbounded count of journey routes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RouteCount(BigUint);

impl RouteCount {
    pub fn zero() -> Self {
        RouteCount(BigUint::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }

    /// `self / denominator` with a single rounding where both fit in `u64`.
    pub fn ratio(&self, denominator: &RouteCount) -> f64 {
        match (self.0.to_u64(), denominator.0.to_u64()) {
            (Some(a), Some(b)) => a as f64 / b as f64,
            _ => self.to_f64() / denominator.to_f64(),
        }
    }
}

impl From<u64> for RouteCount {
    fn from(v: u64) -> Self {
        RouteCount(BigUint::from(v))
    }
}

impl std::ops::AddAssign<&RouteCount> for RouteCount {
    fn add_assign(&mut self, rhs: &RouteCount) {
        self.0 += &rhs.0;
    }
}

impl fmt::Display for RouteCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for RouteCount {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

/// Checks every journey constraint against `g`: edges exist with the stated
/// birth and latency, each crossing time is inside the lifetime with the edge
/// present, `t[i+1] >= t[i] + latency[i]`, and the edges form a walk.
pub fn is_valid_journey(g: &TimeVaryingGraph, j: &Journey) -> bool {
    if j.steps.is_empty() {
        return false;
    }
    for step in &j.steps {
        let (a, b) = step.edge.endpoints();
        match g.edge_between(a, b) {
            Some(e) if e == &step.edge => {}
            _ => return false,
        }
        if !g.lifetime().contains(step.time) || !presence(&step.edge, step.time) {
            return false;
        }
    }
    if j.steps
        .windows(2)
        .any(|p| p[1].time < p[0].time + p[0].edge.latency)
    {
        return false;
    }
    let (a, b) = j.steps[0].edge.endpoints();
    [a, b].into_iter().any(|start| {
        let mut at = start;
        j.steps.iter().all(|s| match s.edge.other(at) {
            Some(next) => {
                at = next;
                true
            }
            None => false,
        })
    })
}

/// True when edge births along `route` never decrease. Single-node routes are
/// vacuously increasing; non-adjacent consecutive nodes make it false.
pub fn is_increasing_route(g: &TimeVaryingGraph, route: &Route) -> bool {
    match route.births(g) {
        Some(births) => births.windows(2).all(|p| p[0] <= p[1]),
        None => false,
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Foremost increasing arrivals from `source`, by dense index.
///
/// Edges are consumed one birth group at a time. Inside a group every edge
/// has the same birth `b`, so a component of the group's edges is entered at
/// `b` as soon as one of its nodes already holds a label (all earlier labels
/// are `<= b`).
pub(crate) fn increasing_arrivals(g: &TimeVaryingGraph, source: usize) -> Vec<Option<Time>> {
    let n = g.node_count();
    let mut label = vec![None; n];
    label[source] = Some(g.lifetime().start);
    let mut dsu = Dsu::new(n);
    let mut touched: Vec<usize> = Vec::new();
    let edges = g.edges();
    let mut i = 0;
    while i < edges.len() {
        let b = edges[i].birth;
        let mut j = i;
        while j < edges.len() && edges[j].birth == b {
            let (x, y) = g.edge_ends(j);
            dsu.union(x, y);
            touched.push(x);
            touched.push(y);
            j += 1;
        }
        let mut entered: Vec<usize> = touched
            .iter()
            .filter(|&&v| label[v].is_some())
            .map(|&v| dsu.find(v))
            .collect();
        entered.sort_unstable();
        entered.dedup();
        for &v in &touched {
            if label[v].is_none() && entered.binary_search(&dsu.find(v)).is_ok() {
                label[v] = Some(b);
            }
        }
        for &v in &touched {
            dsu.parent[v] = v;
        }
        touched.clear();
        i = j;
    }
    label
}

/// Foremost arrivals over all journeys (no increase constraint), by dense
/// index: the smallest tick at which `source` and the node share a component
/// of the edges born so far.
pub(crate) fn unrestricted_arrivals(g: &TimeVaryingGraph, source: usize) -> Vec<Option<Time>> {
    let n = g.node_count();
    let mut label = vec![None; n];
    label[source] = Some(g.lifetime().start);
    let mut dsu = Dsu::new(n);
    let edges = g.edges();
    let mut i = 0;
    while i < edges.len() {
        let b = edges[i].birth;
        while i < edges.len() && edges[i].birth == b {
            let (x, y) = g.edge_ends(i);
            dsu.union(x, y);
            i += 1;
        }
        let root = dsu.find(source);
        for (v, l) in label.iter_mut().enumerate() {
            if l.is_none() && dsu.find(v) == root {
                *l = Some(b);
            }
        }
    }
    label
}

fn labels_by_id(g: &TimeVaryingGraph, labels: Vec<Option<Time>>) -> BTreeMap<NodeId, ArrivalLabel> {
    labels
        .into_iter()
        .enumerate()
        .map(|(i, a)| {
            (
                g.id_at(i).clone(),
                ArrivalLabel {
                    earliest_arrival: a,
                },
            )
        })
        .collect()
}

fn require(g: &TimeVaryingGraph, id: &NodeId) -> Result<usize, JourneyError> {
    g.index_of(id)
        .ok_or_else(|| JourneyError::UnknownNode(id.clone()))
}

/// Earliest arrival at every node over increasing routes from `source`. The
/// source itself is labelled with the lifetime start.
pub fn earliest_increasing_arrival(
    g: &TimeVaryingGraph,
    source: &NodeId,
) -> Result<BTreeMap<NodeId, ArrivalLabel>, JourneyError> {
    let s = require(g, source)?;
    Ok(labels_by_id(g, increasing_arrivals(g, s)))
}

/// Earliest arrival at every node over all journeys from `source`.
pub fn earliest_arrival(
    g: &TimeVaryingGraph,
    source: &NodeId,
) -> Result<BTreeMap<NodeId, ArrivalLabel>, JourneyError> {
    let s = require(g, source)?;
    Ok(labels_by_id(g, unrestricted_arrivals(g, s)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountOptions {
    /// Abort once a pair has more routes than this.
    pub route_ceiling: Option<u64>,
    /// Skip branches from which the target is unreachable through edges born
    /// in `[current birth, target arrival]` avoiding the current prefix.
    pub prune_unreachable: bool,
}

pub const DEFAULT_ROUTE_CEILING: u64 = 10_000_000;

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            route_ceiling: Some(DEFAULT_ROUTE_CEILING),
            prune_unreachable: true,
        }
    }
}

/// Foremost increasing routes for one ordered pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCount {
    pub arrival: Option<Time>,
    pub total: RouteCount,
    /// Routes through each interior node; nodes with zero routes are absent.
    pub per_intermediate: BTreeMap<NodeId, RouteCount>,
}

/// Counts the simple increasing routes from `u` to `w` whose arrival equals
/// the foremost increasing arrival at `w`, and for each interior node how many
/// of them pass through it.
pub fn count_foremost_routes(
    g: &TimeVaryingGraph,
    u: &NodeId,
    w: &NodeId,
    opts: CountOptions,
) -> Result<PairCount, JourneyError> {
    let (s, t) = (require(g, u)?, require(g, w)?);
    if s == t {
        return Err(JourneyError::SameEndpoints(u.clone()));
    }
    if !g.is_zero_latency() {
        return Err(JourneyError::NonZeroLatency);
    }
    let arrival = increasing_arrivals(g, s)[t];
    let Some(target) = arrival else {
        return Ok(PairCount {
            arrival: None,
            total: RouteCount::zero(),
            per_intermediate: BTreeMap::new(),
        });
    };
    let (total, per) = PairCounter::new(g, s, t, target, opts).run()?;
    let per_intermediate = per
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c > 0)
        .map(|(v, c)| (g.id_at(v).clone(), RouteCount::from(c)))
        .collect();
    Ok(PairCount {
        arrival,
        total: RouteCount::from(total),
        per_intermediate,
    })
}

struct PairCounter<'g> {
    g: &'g TimeVaryingGraph,
    source: usize,
    target: usize,
    arrival: Time,
    opts: CountOptions,
    on_path: Vec<bool>,
    seen: Vec<u32>,
    stamp: u32,
    queue: Vec<usize>,
}

impl<'g> PairCounter<'g> {
    fn new(
        g: &'g TimeVaryingGraph,
        source: usize,
        target: usize,
        arrival: Time,
        opts: CountOptions,
    ) -> Self {
        let n = g.node_count();
        PairCounter {
            g,
            source,
            target,
            arrival,
            opts,
            on_path: vec![false; n],
            seen: vec![0; n],
            stamp: 0,
            queue: Vec::new(),
        }
    }

    /// Whether the target is reachable from `from` using edges born in
    /// `[from_birth, arrival]` and nodes off the current path.
    fn target_reachable(&mut self, from: usize, from_birth: Time) -> bool {
        self.stamp += 1;
        let stamp = self.stamp;
        self.queue.clear();
        self.queue.push(from);
        self.seen[from] = stamp;
        while let Some(x) = self.queue.pop() {
            for a in self.g.adjacency(x) {
                if a.birth < from_birth {
                    continue;
                }
                if a.birth > self.arrival {
                    break;
                }
                if a.node == self.target {
                    return true;
                }
                if !self.on_path[a.node] && self.seen[a.node] != stamp {
                    self.seen[a.node] = stamp;
                    self.queue.push(a.node);
                }
            }
        }
        false
    }

    fn run(mut self) -> Result<(u64, Vec<u64>), JourneyError> {
        let g = self.g;
        let mut total: u64 = 0;
        let mut per = vec![0u64; g.node_count()];
        // (node, birth of the edge used to enter it, next adjacency position)
        let mut stack: Vec<(usize, Time, usize)> = vec![(self.source, g.lifetime().start, 0)];
        self.on_path[self.source] = true;
        while let Some(top) = stack.last_mut() {
            let (x, last, pos) = *top;
            let adj = g.adjacency(x);
            if pos >= adj.len() || adj[pos].birth > self.arrival {
                self.on_path[x] = false;
                stack.pop();
                continue;
            }
            top.2 += 1;
            let a = adj[pos];
            if a.birth < last || self.on_path[a.node] {
                continue;
            }
            if a.node == self.target {
                total += 1;
                if let Some(limit) = self.opts.route_ceiling {
                    if total > limit {
                        return Err(JourneyError::RouteLimitExceeded {
                            from: g.id_at(self.source).clone(),
                            target: g.id_at(self.target).clone(),
                            limit,
                        });
                    }
                }
                for &(v, _, _) in &stack[1..] {
                    per[v] += 1;
                }
                continue;
            }
            if self.opts.prune_unreachable && !self.target_reachable(a.node, a.birth) {
                continue;
            }
            self.on_path[a.node] = true;
            stack.push((a.node, a.birth, 0));
        }
        Ok((total, per))
    }
}

/// Foremost increasing route counts from one source to many targets.
pub(crate) struct SourceCounts {
    /// Foremost increasing arrival per node.
    pub arrival: Vec<Option<Time>>,
    /// `(target, total routes, routes through each node)` for every counted
    /// target with at least one route, ascending by target.
    pub pairs: Vec<(usize, u64, Vec<u64>)>,
}

/// Enumerates, in one depth-first sweep, every simple increasing route from
/// `source` and records those that are foremost for their end node. Only end
/// nodes accepted by `is_target` are counted.
pub(crate) fn count_from_source(
    g: &TimeVaryingGraph,
    source: usize,
    is_target: impl Fn(usize) -> bool,
    route_ceiling: Option<u64>,
) -> Result<SourceCounts, JourneyError> {
    let n = g.node_count();
    let arrival = increasing_arrivals(g, source);
    let targets: Vec<bool> = (0..n)
        .map(|v| v != source && arrival[v].is_some() && is_target(v))
        .collect();
    let Some(horizon) = (0..n)
        .filter(|&v| targets[v])
        .filter_map(|v| arrival[v])
        .max()
    else {
        return Ok(SourceCounts {
            arrival,
            pairs: Vec::new(),
        });
    };

    let mut slot = vec![usize::MAX; n];
    let mut totals: Vec<u64> = Vec::new();
    let mut through: Vec<Vec<u64>> = Vec::new();
    for v in (0..n).filter(|&v| targets[v]) {
        slot[v] = totals.len();
        totals.push(0);
        through.push(vec![0; n]);
    }

    let mut on_path = vec![false; n];
    on_path[source] = true;
    let mut stack: Vec<(usize, Time, usize)> = vec![(source, g.lifetime().start, 0)];
    while let Some(top) = stack.last_mut() {
        let (x, last, pos) = *top;
        let adj = g.adjacency(x);
        if pos >= adj.len() || adj[pos].birth > horizon {
            on_path[x] = false;
            stack.pop();
            continue;
        }
        top.2 += 1;
        let a = adj[pos];
        if a.birth < last || on_path[a.node] {
            continue;
        }
        let y = a.node;
        if targets[y] && arrival[y] == Some(a.birth) {
            let k = slot[y];
            totals[k] += 1;
            if let Some(limit) = route_ceiling {
                if totals[k] > limit {
                    return Err(JourneyError::RouteLimitExceeded {
                        from: g.id_at(source).clone(),
                        target: g.id_at(y).clone(),
                        limit,
                    });
                }
            }
            for &(v, _, _) in &stack[1..] {
                through[k][v] += 1;
            }
        }
        on_path[y] = true;
        stack.push((y, a.birth, 0));
    }

    let pairs = (0..n)
        .filter(|&v| targets[v])
        .map(|v| {
            let k = slot[v];
            (v, totals[k], std::mem::take(&mut through[k]))
        })
        .filter(|(_, total, _)| *total > 0)
        .collect();
    Ok(SourceCounts { arrival, pairs })
}

/// Result of [`enumerate_foremost_routes`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RouteEnumeration {
    pub routes: Vec<Route>,
    pub truncated: bool,
}

/// Lists the foremost increasing routes from `u` to `w`, shortest first and
/// lexicographically by node id within a length, stopping after `limit`.
pub fn enumerate_foremost_routes(
    g: &TimeVaryingGraph,
    u: &NodeId,
    w: &NodeId,
    limit: usize,
) -> Result<RouteEnumeration, JourneyError> {
    let (s, t) = (require(g, u)?, require(g, w)?);
    if s == t {
        return Err(JourneyError::SameEndpoints(u.clone()));
    }
    let mut out = RouteEnumeration {
        routes: Vec::new(),
        truncated: false,
    };
    if limit == 0 {
        return Ok(out);
    }
    let Some(arrival) = increasing_arrivals(g, s)[t] else {
        return Ok(out);
    };

    // Neighbours in id order (dense indices follow id order).
    let by_id: Vec<Vec<(usize, Time)>> = (0..g.node_count())
        .map(|x| {
            let mut v: Vec<(usize, Time)> = g
                .adjacency(x)
                .iter()
                .filter(|a| a.birth <= arrival)
                .map(|a| (a.node, a.birth))
                .collect();
            v.sort_unstable();
            v
        })
        .collect();

    // Iterative deepening on edge count yields shortest-first order.
    let mut path = vec![s];
    let mut on_path = vec![false; g.node_count()];
    on_path[s] = true;
    for depth in 1..g.node_count() {
        let mut found: Vec<Route> = Vec::new();
        let mut frontier_alive = false;
        enumerate_depth(
            g,
            &by_id,
            t,
            depth,
            g.lifetime().start,
            &mut path,
            &mut on_path,
            &mut found,
            limit.saturating_add(1) - out.routes.len(),
            &mut frontier_alive,
        );
        out.routes.extend(found);
        if out.routes.len() > limit {
            out.routes.truncate(limit);
            out.truncated = true;
            return Ok(out);
        }
        if !frontier_alive {
            break;
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_depth(
    g: &TimeVaryingGraph,
    by_id: &[Vec<(usize, Time)>],
    target: usize,
    remaining: usize,
    last: Time,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    found: &mut Vec<Route>,
    want: usize,
    frontier_alive: &mut bool,
) {
    let x = *path.last().expect("path holds the source");
    for &(y, birth) in &by_id[x] {
        if found.len() >= want {
            return;
        }
        if birth < last || on_path[y] {
            continue;
        }
        if remaining == 1 {
            if y == target {
                let mut r: Vec<NodeId> = path.iter().map(|&i| g.id_at(i).clone()).collect();
                r.push(g.id_at(y).clone());
                found.push(Route(r));
            } else {
                *frontier_alive = true;
            }
            continue;
        }
        if y == target {
            continue;
        }
        path.push(y);
        on_path[y] = true;
        enumerate_depth(
            g,
            by_id,
            target,
            remaining - 1,
            birth,
            path,
            on_path,
            found,
            want,
            frontier_alive,
        );
        on_path[y] = false;
        path.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tvg::{ActorType, Lifetime, TemporalNode};

    fn graph(edges: &[(&str, &str, Time)]) -> TimeVaryingGraph {
        TimeVaryingGraph::build(
            vec![],
            edges
                .iter()
                .map(|&(a, b, t)| TemporalEdge::new(a, b, t))
                .collect(),
            Lifetime::new(2005, 2011).unwrap(),
        )
        .unwrap()
    }

    fn id(s: &str) -> NodeId {
        NodeId::from(s)
    }

    fn arrival(g: &TimeVaryingGraph, s: &str, t: &str) -> Option<Time> {
        earliest_increasing_arrival(g, &id(s)).unwrap()[&id(t)].earliest_arrival
    }

    /// Brute force: all simple routes from `s`, keep increasing ones.
    fn oracle_min_arrival(g: &TimeVaryingGraph, s: &str, t: &str) -> Option<Time> {
        fn walk(g: &TimeVaryingGraph, path: &mut Vec<NodeId>, t: &NodeId, best: &mut Option<Time>) {
            let last = path.last().unwrap().clone();
            for n in g.nodes() {
                if path.contains(&n.id) || g.edge_between(&last, &n.id).is_none() {
                    continue;
                }
                path.push(n.id.clone());
                let r = Route(path.clone());
                if is_increasing_route(g, &r) {
                    if &n.id == t {
                        let b = *r.births(g).unwrap().last().unwrap();
                        *best = Some(best.map_or(b, |x: Time| x.min(b)));
                    } else {
                        walk(g, path, t, best);
                    }
                }
                path.pop();
            }
        }
        let mut best = None;
        walk(g, &mut vec![id(s)], &id(t), &mut best);
        best
    }

    #[test]
    fn journey_validity() {
        let g = graph(&[("a", "b", 2005), ("b", "c", 2007)]);
        let ab = TemporalEdge::new("a", "b", 2005);
        let bc = TemporalEdge::new("b", "c", 2007);
        assert!(is_valid_journey(
            &g,
            &Journey::new([(ab.clone(), 2005), (bc.clone(), 2007)])
        ));
        assert!(!is_valid_journey(
            &g,
            &Journey::new([(ab.clone(), 2007), (bc.clone(), 2006)])
        ));
        // crossing before the edge exists
        assert!(!is_valid_journey(&g, &Journey::new([(bc.clone(), 2006)])));
        // reversed walk c -> b -> a is a walk but time goes backwards
        assert!(!is_valid_journey(
            &g,
            &Journey::new([(bc.clone(), 2007), (ab.clone(), 2005)])
        ));
        assert!(is_valid_journey(
            &g,
            &Journey::new([(bc, 2007), (ab, 2008)])
        ));
        assert!(!is_valid_journey(&g, &Journey::default()));
    }

    #[test]
    fn journey_honours_latency() {
        let g = TimeVaryingGraph::build(
            vec![],
            vec![
                TemporalEdge::with_latency("a", "b", 2005, 1),
                TemporalEdge::new("b", "c", 2005),
            ],
            Lifetime::new(2005, 2011).unwrap(),
        )
        .unwrap();
        let ab = g.edge_between(&id("a"), &id("b")).unwrap().clone();
        let bc = g.edge_between(&id("b"), &id("c")).unwrap().clone();
        let same_tick = Journey::new([(ab.clone(), 2006), (bc.clone(), 2006)]);
        let next_tick = Journey::new([(ab, 2006), (bc, 2007)]);
        assert!(!is_valid_journey(&g, &same_tick));
        assert!(is_valid_journey(&g, &next_tick));
        assert_eq!(next_tick.departure(), Some(2006));
        assert_eq!(next_tick.arrival(), Some(2007));
    }

    #[test]
    fn journey_must_be_a_walk() {
        let g = graph(&[("a", "b", 2005), ("c", "d", 2005)]);
        let j = Journey::new([
            (TemporalEdge::new("a", "b", 2005), 2005),
            (TemporalEdge::new("c", "d", 2005), 2005),
        ]);
        assert!(!is_valid_journey(&g, &j));
    }

    #[test]
    fn increasing_route_checks() {
        let g = graph(&[
            ("a", "b", 2006),
            ("b", "c", 2006),
            ("c", "d", 2009),
            ("d", "e", 2007),
        ]);
        assert!(is_increasing_route(
            &g,
            &Route::from_ids(["a", "b", "c", "d"])
        ));
        assert!(!is_increasing_route(&g, &Route::from_ids(["c", "d", "e"])));
        assert!(is_increasing_route(&g, &Route::from_ids(["a"])));
        assert!(!is_increasing_route(&g, &Route::from_ids(["a", "c"])));
    }

    #[test]
    fn arrival_examples() {
        let g = graph(&[("u", "w", 2006)]);
        assert_eq!(arrival(&g, "u", "w"), Some(2006));
        assert_eq!(arrival(&g, "u", "u"), Some(2005));

        let g = graph(&[("u", "a", 2007), ("a", "w", 2006)]);
        assert_eq!(arrival(&g, "u", "w"), None);
        assert_eq!(oracle_min_arrival(&g, "u", "w"), None);
        // the unrestricted foremost journey does reach w
        let all = earliest_arrival(&g, &id("u")).unwrap();
        assert_eq!(all[&id("w")].earliest_arrival, Some(2007));

        let g = graph(&[("u", "a", 2006), ("a", "w", 2008), ("u", "w", 2009)]);
        assert_eq!(arrival(&g, "u", "w"), Some(2008));
        assert_eq!(oracle_min_arrival(&g, "u", "w"), Some(2008));
    }

    #[test]
    fn same_birth_chains_propagate_within_a_group() {
        // edges sorted (a,b) before (c,d) before (b,c): all born 2006
        let g = graph(&[("c", "d", 2006), ("b", "c", 2006), ("a", "b", 2006)]);
        assert_eq!(arrival(&g, "a", "d"), Some(2006));
        assert_eq!(arrival(&g, "d", "a"), Some(2006));
    }

    #[test]
    fn counts_triangle_routes() {
        let g = graph(&[("u", "v", 2006), ("v", "w", 2006), ("u", "w", 2006)]);
        let c = count_foremost_routes(&g, &id("u"), &id("w"), CountOptions::default()).unwrap();
        assert_eq!(c.total, RouteCount::from(2));
        assert_eq!(c.per_intermediate[&id("v")], RouteCount::from(1));
        assert_eq!(c.arrival, Some(2006));
    }

    #[test]
    fn counts_path_and_disconnected() {
        let g = graph(&[("u", "v", 2006), ("v", "w", 2007), ("x", "y", 2006)]);
        let c = count_foremost_routes(&g, &id("u"), &id("w"), CountOptions::default()).unwrap();
        assert_eq!(c.total, RouteCount::from(1));
        assert_eq!(c.per_intermediate[&id("v")], RouteCount::from(1));

        let c = count_foremost_routes(&g, &id("u"), &id("x"), CountOptions::default()).unwrap();
        assert!(c.total.is_zero());
        assert!(c.per_intermediate.is_empty());
        assert_eq!(c.arrival, None);

        assert_eq!(
            count_foremost_routes(&g, &id("u"), &id("u"), CountOptions::default()),
            Err(JourneyError::SameEndpoints(id("u")))
        );
    }

    #[test]
    fn route_ceiling_aborts() {
        // K5 with uniform births: 16 simple paths between any two nodes
        let names = ["a", "b", "c", "d", "e"];
        let mut edges = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                edges.push((names[i], names[j], 2006));
            }
        }
        let g = graph(&edges);
        let opts = CountOptions {
            route_ceiling: Some(10),
            prune_unreachable: false,
        };
        let err = count_foremost_routes(&g, &id("a"), &id("e"), opts).unwrap_err();
        assert!(matches!(
            err,
            JourneyError::RouteLimitExceeded { limit: 10, .. }
        ));
        let ok = count_foremost_routes(&g, &id("a"), &id("e"), CountOptions::default()).unwrap();
        assert_eq!(ok.total, RouteCount::from(16));
    }

    #[test]
    fn rejects_latency() {
        let g = TimeVaryingGraph::build(
            vec![],
            vec![TemporalEdge::with_latency("a", "b", 2005, 1)],
            Lifetime::new(2005, 2011).unwrap(),
        )
        .unwrap();
        assert_eq!(
            count_foremost_routes(&g, &id("a"), &id("b"), CountOptions::default()),
            Err(JourneyError::NonZeroLatency)
        );
    }

    #[test]
    fn enumeration_order_and_truncation() {
        let g = graph(&[("u", "v", 2006), ("v", "w", 2006), ("u", "w", 2006)]);
        let e = enumerate_foremost_routes(&g, &id("u"), &id("w"), 10).unwrap();
        assert_eq!(
            e.routes,
            vec![
                Route::from_ids(["u", "w"]),
                Route::from_ids(["u", "v", "w"])
            ]
        );
        assert!(!e.truncated);

        let e = enumerate_foremost_routes(&g, &id("u"), &id("w"), 1).unwrap();
        assert_eq!(e.routes, vec![Route::from_ids(["u", "w"])]);
        assert!(e.truncated);

        let g = graph(&[("u", "v", 2006), ("x", "w", 2006)]);
        let e = enumerate_foremost_routes(&g, &id("u"), &id("w"), 10).unwrap();
        assert!(e.routes.is_empty());
        assert!(!e.truncated);
    }

    #[test]
    fn enumeration_excludes_late_routes() {
        // u-w direct at 2009 is not foremost; u-a-w arrives 2008
        let g = graph(&[("u", "a", 2006), ("a", "w", 2008), ("u", "w", 2009)]);
        let e = enumerate_foremost_routes(&g, &id("u"), &id("w"), 10).unwrap();
        assert_eq!(e.routes, vec![Route::from_ids(["u", "a", "w"])]);
    }

    #[test]
    fn source_sweep_matches_pair_counts() {
        let g = graph(&[
            ("a", "b", 2006),
            ("b", "c", 2006),
            ("a", "c", 2007),
            ("c", "d", 2007),
            ("b", "d", 2008),
            ("d", "e", 2008),
            ("a", "e", 2009),
        ]);
        let n = g.node_count();
        for s in 0..n {
            let counts = count_from_source(&g, s, |_| true, None).unwrap();
            for t in (0..n).filter(|&t| t != s) {
                let pair =
                    count_foremost_routes(&g, g.id_at(s), g.id_at(t), CountOptions::default())
                        .unwrap();
                let swept = counts.pairs.iter().find(|p| p.0 == t);
                match swept {
                    None => assert!(pair.total.is_zero()),
                    Some((_, total, through)) => {
                        assert_eq!(RouteCount::from(*total), pair.total);
                        for (v, &c) in through.iter().enumerate() {
                            let expect = pair
                                .per_intermediate
                                .get(g.id_at(v))
                                .cloned()
                                .unwrap_or_default();
                            assert_eq!(RouteCount::from(c), expect);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn node_births_do_not_matter_for_labels() {
        let g = TimeVaryingGraph::build(
            vec![TemporalNode::new("u", ActorType::unknown(), 2005)],
            vec![TemporalEdge::new("u", "v", 2008)],
            Lifetime::new(2005, 2011).unwrap(),
        )
        .unwrap();
        assert_eq!(arrival(&g, "u", "v"), Some(2008));
    }
}
