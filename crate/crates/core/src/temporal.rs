//! Foremost increasing betweenness.
//!
//! For a pair `(u, w)` let `F(u, w)` be the simple increasing routes from `u`
//! to `w` that arrive at the foremost increasing arrival time of `w`. A node
//! `v` collects `|F(u, w, v)| / |F(u, w)|` from every pair where it is an
//! interior node. Counts are exact integers; each pair costs one division.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::journey::{count_from_source, JourneyError, RouteCount, DEFAULT_ROUTE_CEILING};
use crate::static_metrics::{apply_adjustment, CentralityVector, SOURCE_CHUNK};
use crate::tvg::{GraphError, NodeId, Time, TimeVaryingGraph, Window};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TemporalError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Journey(#[from] JourneyError),
}

/// Which ordered pairs contribute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairOrientation {
    /// Each unordered pair once, travelling from the smaller node id to the
    /// larger one.
    #[default]
    Ascending,
    /// Both directions of every pair.
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TemporalOptions {
    pub adjusted: bool,
    pub orientation: PairOrientation,
    pub route_ceiling: Option<u64>,
    pub keep_pair_stats: bool,
}

impl Default for TemporalOptions {
    fn default() -> Self {
        TemporalOptions {
            adjusted: true,
            orientation: PairOrientation::Ascending,
            route_ceiling: Some(DEFAULT_ROUTE_CEILING),
            keep_pair_stats: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairStat {
    pub source: NodeId,
    pub target: NodeId,
    pub arrival: Time,
    pub total: RouteCount,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TemporalBetweennessResult {
    pub window: Window,
    pub scores: CentralityVector,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair_stats: Option<Vec<PairStat>>,
}

/// Unadjusted scores by dense index of an already windowed graph.
pub(crate) fn raw_scores(
    g: &TimeVaryingGraph,
    opts: &TemporalOptions,
) -> Result<(Vec<f64>, Vec<PairStat>), TemporalError> {
    if !g.is_zero_latency() {
        return Err(JourneyError::NonZeroLatency.into());
    }
    let n = g.node_count();
    let sources: Vec<usize> = (0..n).collect();
    let orientation = opts.orientation;
    let keep = opts.keep_pair_stats;
    type Partial = Result<(Vec<f64>, Vec<PairStat>), JourneyError>;
    let partials: Vec<Partial> = sources
        .par_chunks(SOURCE_CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; n];
            let mut stats = Vec::new();
            for &s in chunk {
                let counts = match orientation {
                    PairOrientation::Ascending => {
                        count_from_source(g, s, |t| t > s, opts.route_ceiling)?
                    }
                    PairOrientation::Both => count_from_source(g, s, |_| true, opts.route_ceiling)?,
                };
                for (t, total, through) in counts.pairs {
                    let denom = total as f64;
                    for (v, &c) in through.iter().enumerate() {
                        if c > 0 {
                            acc[v] += c as f64 / denom;
                        }
                    }
                    if keep {
                        stats.push(PairStat {
                            source: g.id_at(s).clone(),
                            target: g.id_at(t).clone(),
                            arrival: counts.arrival[t].expect("counted targets are reachable"),
                            total: RouteCount::from(total),
                        });
                    }
                }
            }
            Ok((acc, stats))
        })
        .collect();
    let mut values = vec![0.0; n];
    let mut stats = Vec::new();
    for p in partials {
        let (acc, s) = p?;
        for (x, y) in values.iter_mut().zip(acc) {
            *x += y;
        }
        stats.extend(s);
    }
    Ok((values, stats))
}

/// Foremost increasing betweenness of every node of `g` restricted to
/// `window`.
pub fn foremost_betweenness(
    g: &TimeVaryingGraph,
    window: Window,
    opts: &TemporalOptions,
) -> Result<TemporalBetweennessResult, TemporalError> {
    let wg = g.restrict_window(window)?;
    let (mut values, stats) = raw_scores(&wg, opts)?;
    let fp = wg.footprint();
    if opts.adjusted {
        apply_adjustment(&fp, &mut values);
    }
    let mut scores = CentralityVector::from_dense("foremost-betweenness", fp.ids(), values);
    scores.window = Some(wg.lifetime());
    scores.adjusted = opts.adjusted;
    Ok(TemporalBetweennessResult {
        window: wg.lifetime(),
        scores,
        pair_stats: opts.keep_pair_stats.then_some(stats),
    })
}

/// Window starts for a sweep: the given birth dates, or every distinct birth
/// in the graph. Each window runs to the end of the lifetime.
pub fn sweep_windows(
    g: &TimeVaryingGraph,
    birthdates: Option<&[Time]>,
) -> Result<Vec<Window>, GraphError> {
    let lifetime = g.lifetime();
    let mut starts: Vec<Time> = match birthdates {
        Some(b) => b.to_vec(),
        None => g.birth_dates(),
    };
    starts.sort_unstable();
    starts.dedup();
    starts
        .into_iter()
        .map(|x| {
            let w = Window::new(x, lifetime.end)?;
            if !lifetime.contains(x) {
                return Err(GraphError::WindowOutsideLifetime {
                    window: w,
                    lifetime,
                });
            }
            Ok(w)
        })
        .collect()
}

/// One result per window `[x, lifetime end]`.
pub fn foremost_betweenness_sweep(
    g: &TimeVaryingGraph,
    birthdates: Option<&[Time]>,
    opts: &TemporalOptions,
) -> Result<Vec<TemporalBetweennessResult>, TemporalError> {
    sweep_windows(g, birthdates)?
        .into_iter()
        .map(|w| foremost_betweenness(g, w, opts))
        .collect()
}
