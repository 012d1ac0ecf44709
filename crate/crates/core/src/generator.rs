//! Synthetic knowledge-mobilization networks with a yearly growth profile.
//!
//! Every year adds the nodes needed to reach the cumulative per-class
//! targets. Each new node is anchored to one existing node chosen with
//! probability proportional to `degree + 1` (times `hub_bias` for hubs). The
//! remaining edges of the year link a random node to a hub it is not yet
//! adjacent to. Hubs are the first `hubs` nodes ever created: the founding
//! lab `L1` and the founding human `H1`. Keeping extra edges on a small hub
//! set bounds the number of simple routes between any two nodes, which
//! keeps exact route counting tractable.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::io::{conventional_name, type_for_letter, DataError};
use crate::tvg::{
    ActorClass, ActorType, Lifetime, TemporalEdge, TemporalNode, Time, TimeVaryingGraph,
};

/// Cumulative targets at the end of one year.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct YearTarget {
    pub year: Time,
    pub hia: usize,
    pub nhia: usize,
    pub nhma: usize,
    pub oa: usize,
    pub edges: usize,
}

impl YearTarget {
    pub fn nodes(&self) -> usize {
        self.hia + self.nhia + self.nhma + self.oa
    }

    fn count(&self, class: ActorClass) -> usize {
        match class {
            ActorClass::Hia => self.hia,
            ActorClass::Nhia => self.nhia,
            ActorClass::Nhma => self.nhma,
            ActorClass::Oa => self.oa,
            ActorClass::Unknown => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub years: Vec<YearTarget>,
    /// Multiplier on the attachment weight of hub nodes.
    pub hub_bias: f64,
    pub hubs: usize,
    pub seed: u64,
}

const fn year(
    year: Time,
    hia: usize,
    nhia: usize,
    nhma: usize,
    oa: usize,
    edges: usize,
) -> YearTarget {
    YearTarget {
        year,
        hia,
        nhia,
        nhma,
        oa,
        edges,
    }
}

/// Seven-year profile: 10 nodes and 14 edges in the first year growing to
/// 366 nodes and 750 edges. Intermediate edge totals follow an edges/nodes
/// ratio of 1.32, 1.63, 1.84, 1.98 and 2.02.
pub const DEFAULT_YEARS: [YearTarget; 7] = [
    year(2005, 3, 0, 7, 0, 14),
    year(2006, 22, 3, 25, 5, 73),
    year(2007, 27, 6, 43, 5, 132),
    year(2008, 46, 9, 87, 9, 278),
    year(2009, 51, 9, 132, 9, 398),
    year(2010, 76, 9, 194, 9, 582),
    year(2011, 94, 15, 248, 9, 750),
];

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            years: DEFAULT_YEARS.to_vec(),
            hub_bias: 1.0,
            hubs: 2,
            seed: 2014,
        }
    }
}

impl GeneratorConfig {
    pub fn with_seed(seed: u64) -> Self {
        GeneratorConfig {
            seed,
            ..Default::default()
        }
    }

    pub fn lifetime(&self) -> Option<Lifetime> {
        Some(Lifetime {
            start: self.years.first()?.year,
            end: self.years.last()?.year,
        })
    }

    pub fn validate(&self) -> Result<(), DataError> {
        let bad = |m: String| Err(DataError::Infeasible(m));
        if self.years.is_empty() {
            return bad("no years".into());
        }
        if self.hub_bias.is_nan() || self.hub_bias <= 0.0 {
            return bad(format!("hub bias {} must be positive", self.hub_bias));
        }
        let mut prev: Option<&YearTarget> = None;
        for y in &self.years {
            if let Some(p) = prev {
                if y.year <= p.year {
                    return bad(format!("year {} does not follow {}", y.year, p.year));
                }
                for class in [
                    ActorClass::Hia,
                    ActorClass::Nhia,
                    ActorClass::Nhma,
                    ActorClass::Oa,
                ] {
                    if y.count(class) < p.count(class) {
                        return bad(format!("{} count decreases in {}", class.as_str(), y.year));
                    }
                }
                if y.edges < p.edges {
                    return bad(format!("edge count decreases in {}", y.year));
                }
            }
            let (before_nodes, before_edges) = prev.map_or((0, 0), |p| (p.nodes(), p.edges));
            let anchors =
                y.nodes() - before_nodes - usize::from(before_nodes == 0 && y.nodes() > 0);
            if y.edges - before_edges < anchors {
                return bad(format!(
                    "{} new edges cannot connect {} new nodes in {}",
                    y.edges - before_edges,
                    anchors,
                    y.year
                ));
            }
            prev = Some(y);
        }
        let first = &self.years[0];
        if first.nodes() < self.hubs {
            return bad(format!(
                "{} hubs but only {} initial nodes",
                self.hubs,
                first.nodes()
            ));
        }
        Ok(())
    }
}

const MOBILIZATION_LETTERS: [&str; 7] = ["A", "C", "J", "P", "S", "I", "O"];

struct Builder {
    rng: ChaCha8Rng,
    nodes: Vec<TemporalNode>,
    degree: Vec<usize>,
    adjacent: HashSet<(usize, usize)>,
    edges: Vec<TemporalEdge>,
    letters: BTreeMap<&'static str, u32>,
    mobilization_seen: usize,
    hubs: usize,
    hub_bias: f64,
}

impl Builder {
    fn letter_for(&mut self, class: ActorClass) -> &'static str {
        match class {
            ActorClass::Hia => "H",
            ActorClass::Nhia => "N",
            ActorClass::Oa => "G",
            ActorClass::Unknown => "U",
            ActorClass::Nhma => {
                let k = self.mobilization_seen;
                self.mobilization_seen += 1;
                if k == 0 {
                    "L"
                } else {
                    MOBILIZATION_LETTERS[(k - 1) % MOBILIZATION_LETTERS.len()]
                }
            }
        }
    }

    fn add_node(&mut self, class: ActorClass, birth: Time) -> usize {
        let letter = self.letter_for(class);
        let index = self.letters.entry(letter).or_insert(0);
        *index += 1;
        let id = conventional_name(letter, *index, birth);
        let actor_type = type_for_letter(letter).unwrap_or_else(|| ActorType::new(class));
        self.nodes.push(TemporalNode::new(id, actor_type, birth));
        self.degree.push(0);
        self.nodes.len() - 1
    }

    fn connected(&self, u: usize, v: usize) -> bool {
        self.adjacent.contains(&(u.min(v), u.max(v)))
    }

    fn connect(&mut self, u: usize, v: usize, birth: Time) {
        self.adjacent.insert((u.min(v), u.max(v)));
        self.degree[u] += 1;
        self.degree[v] += 1;
        self.edges.push(TemporalEdge::new(
            self.nodes[u].id.clone(),
            self.nodes[v].id.clone(),
            birth,
        ));
    }

    /// Preferential choice among nodes `0..limit`.
    fn pick_anchor(&mut self, limit: usize) -> usize {
        let weights: Vec<f64> = (0..limit)
            .map(|v| {
                let w = (self.degree[v] + 1) as f64;
                if v < self.hubs {
                    w * self.hub_bias
                } else {
                    w
                }
            })
            .collect();
        let total: f64 = weights.iter().sum();
        let mut x = self.rng.gen::<f64>() * total;
        for (v, w) in weights.iter().enumerate() {
            if x < *w {
                return v;
            }
            x -= w;
        }
        limit - 1
    }

    fn add_hub_edge(&mut self, birth: Time, fresh_from: usize) -> Result<(), DataError> {
        let n = self.nodes.len();
        let hubs = self.hubs.min(n);
        for _ in 0..64 {
            // half of the extra edges start at a node born this year
            let u = if fresh_from < n && self.rng.gen_bool(0.5) {
                self.rng.gen_range(fresh_from..n)
            } else {
                self.rng.gen_range(0..n)
            };
            let free: Vec<usize> = (0..hubs)
                .filter(|&h| h != u && !self.connected(u, h))
                .collect();
            if let Some(&h) = free.choose(&mut self.rng) {
                self.connect(u, h, birth);
                return Ok(());
            }
        }
        for u in 0..n {
            for h in 0..hubs {
                if h != u && !self.connected(u, h) {
                    self.connect(u, h, birth);
                    return Ok(());
                }
            }
        }
        Err(DataError::Infeasible(format!(
            "no room for another hub edge in {birth} with {n} nodes and {hubs} hubs"
        )))
    }
}

/// Deterministic for a given configuration, seed included.
pub fn generate_synthetic(cfg: &GeneratorConfig) -> Result<TimeVaryingGraph, DataError> {
    cfg.validate()?;
    let mut b = Builder {
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        nodes: Vec::new(),
        degree: Vec::new(),
        adjacent: HashSet::new(),
        edges: Vec::new(),
        letters: BTreeMap::new(),
        mobilization_seen: 0,
        hubs: cfg.hubs,
        hub_bias: cfg.hub_bias,
    };
    let classes = [
        ActorClass::Nhma,
        ActorClass::Hia,
        ActorClass::Nhia,
        ActorClass::Oa,
    ];
    let mut have = [0usize; 4];
    for (yi, target) in cfg.years.iter().enumerate() {
        let mut fresh: Vec<ActorClass> = Vec::new();
        for (k, &class) in classes.iter().enumerate() {
            let want = target.count(class);
            fresh.extend(std::iter::repeat_n(class, want - have[k]));
            have[k] = want;
        }
        fresh.shuffle(&mut b.rng);
        if yi == 0 {
            // the founding lab and human come first so they become the hubs
            for (slot, class) in [ActorClass::Nhma, ActorClass::Hia].into_iter().enumerate() {
                if let Some(pos) = fresh[slot..].iter().position(|&c| c == class) {
                    fresh.swap(slot, slot + pos);
                }
            }
        }
        let fresh_from = b.nodes.len();
        for class in fresh {
            let v = b.add_node(class, target.year);
            if v > 0 {
                let anchor = b.pick_anchor(v);
                b.connect(v, anchor, target.year);
            }
        }
        while b.edges.len() < target.edges {
            b.add_hub_edge(target.year, fresh_from)?;
        }
    }
    let lifetime = cfg.lifetime().expect("validated config has years");
    Ok(TimeVaryingGraph::build(b.nodes, b.edges, lifetime)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_profile_totals() {
        let totals: Vec<usize> = DEFAULT_YEARS.iter().map(|y| y.nodes()).collect();
        assert_eq!(totals, vec![10, 55, 81, 151, 201, 288, 366]);
    }

    #[test]
    fn default_graph_shape() {
        let g = generate_synthetic(&GeneratorConfig::default()).unwrap();
        assert_eq!(g.node_count(), 366);
        assert_eq!(g.edge_count(), 750);
        let first = g.snapshot(2005).unwrap();
        assert_eq!(first.node_count(), 10);
        assert_eq!(first.edge_count(), 14);
        assert!(g.node(&"L1(05)".into()).is_some());
        assert!(g.node(&"H1(05)".into()).is_some());
    }

    #[test]
    fn same_seed_same_graph() {
        let a = generate_synthetic(&GeneratorConfig::with_seed(7)).unwrap();
        let b = generate_synthetic(&GeneratorConfig::with_seed(7)).unwrap();
        let c = generate_synthetic(&GeneratorConfig::with_seed(8)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.edges(), c.edges());
    }

    #[test]
    fn infeasible_configs_rejected() {
        let mut cfg = GeneratorConfig::default();
        cfg.years[1].edges = 20; // 45 new nodes, 6 new edges
        assert!(matches!(
            generate_synthetic(&cfg),
            Err(DataError::Infeasible(_))
        ));

        let mut cfg = GeneratorConfig::default();
        cfg.years[6].oa = 2;
        assert!(matches!(
            generate_synthetic(&cfg),
            Err(DataError::Infeasible(_))
        ));

        let cfg = GeneratorConfig {
            years: vec![year(2005, 2, 0, 2, 0, 100)],
            ..Default::default()
        };
        assert!(matches!(
            generate_synthetic(&cfg),
            Err(DataError::Infeasible(_))
        ));
    }
}
