//! Temporal graph analytics for growing networks: foremost increasing
//! betweenness, static centralities over lifetime windows, and
//! classification of nodes whose temporal importance diverges from their
//! static one.

pub mod analytics;
pub mod cli;
pub mod community;
pub mod generator;
pub mod io;
pub mod journey;
pub mod static_metrics;
pub mod temporal;
pub mod tvg;

use thiserror::Error;

pub use analytics::{
    classify_flows, classify_ranks, compare_ranks, sweep_report, AnalyticsError, ClassifierConfig,
    CompareOptions, FlowClassification, FlowLabel, RankComparison, RankRow,
};
pub use community::{
    detect_communities, detect_temporal_communities, modularity, CommunityError, Partition,
};
pub use generator::{generate_synthetic, GeneratorConfig};
pub use io::{load_graph, save_graph, DataError};
pub use journey::{
    count_foremost_routes, earliest_arrival, earliest_increasing_arrival,
    enumerate_foremost_routes, JourneyError, Route, RouteCount,
};
pub use static_metrics::{
    rank, snapshot_report, static_betweenness, CentralityVector, SnapshotReport,
};
pub use temporal::{
    foremost_betweenness, foremost_betweenness_sweep, PairOrientation, TemporalError,
    TemporalOptions,
};
pub use tvg::{
    ActorClass, ActorType, Footprint, GraphError, Lifetime, NodeId, TemporalEdge, TemporalNode,
    Time, TimeVaryingGraph, Window,
};

/// Any failure of the library, for callers that do not care which stage
/// produced it.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Journey(#[from] JourneyError),
    #[error(transparent)]
    Temporal(#[from] TemporalError),
    #[error(transparent)]
    Analytics(#[from] AnalyticsError),
    #[error(transparent)]
    Community(#[from] CommunityError),
}

impl Error {
    /// True when a computation hit an internal limit rather than bad input.
    pub fn is_limit(&self) -> bool {
        let journey = match self {
            Error::Journey(e) => e,
            Error::Temporal(TemporalError::Journey(e)) => e,
            Error::Analytics(AnalyticsError::Temporal(TemporalError::Journey(e))) => e,
            Error::Community(CommunityError::Journey(e)) => e,
            _ => return false,
        };
        matches!(journey, JourneyError::RouteLimitExceeded { .. })
    }

    /// Process exit status: 2 for internal limits, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        if self.is_limit() {
            2
        } else {
            1
        }
    }
}
