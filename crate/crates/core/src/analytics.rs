//! Static versus temporal rank comparison and rapid/brook classification.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::static_metrics::{apply_adjustment, rank, static_betweenness, CentralityVector};
use crate::temporal::{raw_scores, sweep_windows, TemporalError, TemporalOptions};
use crate::tvg::{GraphError, NodeId, Time, TimeVaryingGraph, Window};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalyticsError {
    #[error("top threshold {top} must be at least 1 and below low threshold {low}")]
    InvalidThresholds { top: usize, low: usize },
    #[error(transparent)]
    Temporal(#[from] TemporalError),
}

impl From<GraphError> for AnalyticsError {
    fn from(e: GraphError) -> Self {
        AnalyticsError::Temporal(e.into())
    }
}

/// Nodes whose temporal and static scores are both below this are left out
/// of comparison tables.
pub const DEFAULT_SIGNIFICANCE_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareOptions {
    pub temporal: TemporalOptions,
    pub significance_floor: f64,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions {
            temporal: TemporalOptions::default(),
            significance_floor: DEFAULT_SIGNIFICANCE_FLOOR,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankRow {
    pub node: NodeId,
    pub temporal_rank: usize,
    pub static_rank: usize,
    pub temporal_score: f64,
    pub static_score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankComparison {
    pub window: Window,
    pub adjusted: bool,
    /// Sorted by temporal rank.
    pub rows: Vec<RankRow>,
}

/// Computes foremost and static betweenness on the same window, ranks both
/// over every node of the window, and keeps the nodes where at least one of
/// the two scores is significant.
pub fn compare_ranks(
    g: &TimeVaryingGraph,
    window: Window,
    opts: &CompareOptions,
) -> Result<RankComparison, AnalyticsError> {
    let wg = g.restrict_window(window)?;
    let fp = wg.footprint();
    let (mut temporal, _) = raw_scores(&wg, &opts.temporal)?;
    if opts.temporal.adjusted {
        apply_adjustment(&fp, &mut temporal);
    }
    let temporal = CentralityVector::from_dense("foremost-betweenness", fp.ids(), temporal);
    let stat = static_betweenness(&fp, opts.temporal.adjusted);
    let (t_rank, s_rank) = (rank(&temporal), rank(&stat));
    let mut rows: Vec<RankRow> = fp
        .ids()
        .iter()
        .filter_map(|id| {
            let (ts, ss) = (temporal.scores[id], stat.scores[id]);
            (ts >= opts.significance_floor || ss >= opts.significance_floor).then(|| RankRow {
                node: id.clone(),
                temporal_rank: t_rank[id],
                static_rank: s_rank[id],
                temporal_score: ts,
                static_score: ss,
            })
        })
        .collect();
    rows.sort_by_key(|r| r.temporal_rank);
    Ok(RankComparison {
        window: wg.lifetime(),
        adjusted: opts.temporal.adjusted,
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowLabel {
    Rapid,
    Brook,
    InvisibleRapid,
    InvisibleBrook,
    Neutral,
}

impl FlowLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            FlowLabel::Rapid => "rapid",
            FlowLabel::Brook => "brook",
            FlowLabel::InvisibleRapid => "invisible_rapid",
            FlowLabel::InvisibleBrook => "invisible_brook",
            FlowLabel::Neutral => "neutral",
        }
    }

    pub fn is_rapid(self) -> bool {
        matches!(self, FlowLabel::Rapid | FlowLabel::InvisibleRapid)
    }

    pub fn is_brook(self) -> bool {
        matches!(self, FlowLabel::Brook | FlowLabel::InvisibleBrook)
    }
}

impl fmt::Display for FlowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Rank thresholds: a rank at or above `top` (numerically `<= top`) is high,
/// a rank at or below `low` (numerically `>= low`) is insignificant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassifierConfig {
    pub top: usize,
    pub low: usize,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig { top: 20, low: 100 }
    }
}

impl ClassifierConfig {
    pub fn new(top: usize, low: usize) -> Result<Self, AnalyticsError> {
        let cfg = ClassifierConfig { top, low };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), AnalyticsError> {
        if self.top == 0 || self.top >= self.low {
            return Err(AnalyticsError::InvalidThresholds {
                top: self.top,
                low: self.low,
            });
        }
        Ok(())
    }
}

/// Label from a pair of ranks. The invisible variants take precedence over
/// the plain ones they imply.
pub fn classify_ranks(
    temporal_rank: usize,
    static_rank: usize,
    cfg: &ClassifierConfig,
) -> FlowLabel {
    let rapid = temporal_rank <= cfg.top;
    let brook = temporal_rank >= cfg.low;
    if rapid && static_rank >= cfg.low {
        FlowLabel::InvisibleRapid
    } else if brook && static_rank <= cfg.top {
        FlowLabel::InvisibleBrook
    } else if rapid {
        FlowLabel::Rapid
    } else if brook {
        FlowLabel::Brook
    } else {
        FlowLabel::Neutral
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlowClassification {
    pub node: NodeId,
    pub window: Window,
    pub label: FlowLabel,
    pub temporal_rank: usize,
    pub static_rank: usize,
}

pub fn classify_flows(
    rc: &RankComparison,
    cfg: &ClassifierConfig,
) -> Result<Vec<FlowClassification>, AnalyticsError> {
    cfg.validate()?;
    Ok(rc
        .rows
        .iter()
        .map(|r| FlowClassification {
            node: r.node.clone(),
            window: rc.window,
            label: classify_ranks(r.temporal_rank, r.static_rank, cfg),
            temporal_rank: r.temporal_rank,
            static_rank: r.static_rank,
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowReport {
    pub comparison: RankComparison,
    pub classifications: Vec<FlowClassification>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub window_start: Time,
    pub temporal_rank: usize,
    pub static_rank: usize,
    pub temporal_score: f64,
    pub static_score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub windows: Vec<WindowReport>,
    /// Per node, its ranks in every window where it appears in the table.
    pub trajectories: BTreeMap<NodeId, Vec<TrajectoryPoint>>,
}

/// Comparison and classification for every window `[x, lifetime end]`.
pub fn sweep_report(
    g: &TimeVaryingGraph,
    birthdates: Option<&[Time]>,
    opts: &CompareOptions,
    cfg: &ClassifierConfig,
) -> Result<SweepReport, AnalyticsError> {
    cfg.validate()?;
    let mut windows = Vec::new();
    let mut trajectories: BTreeMap<NodeId, Vec<TrajectoryPoint>> = BTreeMap::new();
    for w in sweep_windows(g, birthdates)? {
        let comparison = compare_ranks(g, w, opts)?;
        let classifications = classify_flows(&comparison, cfg)?;
        for r in &comparison.rows {
            trajectories
                .entry(r.node.clone())
                .or_default()
                .push(TrajectoryPoint {
                    window_start: w.start,
                    temporal_rank: r.temporal_rank,
                    static_rank: r.static_rank,
                    temporal_score: r.temporal_score,
                    static_score: r.static_score,
                });
        }
        windows.push(WindowReport {
            comparison,
            classifications,
        });
    }
    Ok(SweepReport {
        windows,
        trajectories,
    })
}
