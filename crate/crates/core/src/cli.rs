//! The `tempus` command line.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::analytics::{
    classify_flows, compare_ranks, sweep_report, ClassifierConfig, CompareOptions, FlowLabel,
};
use crate::community::{detect_communities, detect_temporal_communities, Partition};
use crate::generator::{generate_synthetic, GeneratorConfig};
use crate::io::{load_graph, save_graph};
use crate::journey::DEFAULT_ROUTE_CEILING;
use crate::static_metrics::{
    rank, snapshot_report, static_betweenness, CentralityVector, SnapshotConfig, SnapshotReport,
};
use crate::temporal::{foremost_betweenness, PairOrientation, TemporalOptions};
use crate::tvg::{Lifetime, NodeId, Time, TimeVaryingGraph, Window};

#[derive(Debug, Parser)]
#[command(
    name = "tempus",
    version,
    about = "Temporal betweenness analytics for growing networks"
)]
pub struct Cli {
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true, env = "TEMPUS_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Whole-graph statistics of cumulative snapshots.
    Stats {
        #[command(flatten)]
        graph: GraphArgs,
        /// Snapshot time; defaults to every birth date.
        #[arg(long)]
        at: Option<Time>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Static betweenness of a window's footprint.
    StaticBc {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        scoring: ScoringArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Foremost increasing betweenness of a window.
    TemporalBc {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        scoring: ScoringArgs,
        #[command(flatten)]
        routes: RouteArgs,
        /// Emit per-pair arrival times and route counts instead of scores.
        #[arg(long)]
        pairs: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Ranks and labels for every window `[x, end]`.
    Sweep {
        #[command(flatten)]
        graph: GraphArgs,
        /// Window starts, comma separated; defaults to every birth date.
        #[arg(long, value_delimiter = ',')]
        births: Option<Vec<Time>>,
        #[command(flatten)]
        scoring: ScoringArgs,
        #[command(flatten)]
        routes: RouteArgs,
        #[command(flatten)]
        thresholds: ThresholdArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Rank comparison and labels for one window.
    Classify {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        scoring: ScoringArgs,
        #[command(flatten)]
        routes: RouteArgs,
        #[command(flatten)]
        thresholds: ThresholdArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Static communities, or temporal ones around `--focus`.
    Communities {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_parser = parse_window)]
        window: Option<(Time, Time)>,
        #[arg(long)]
        focus: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Writes a synthetic network as nodes and edges CSV files.
    Generate {
        #[arg(long, default_value_t = GeneratorConfig::default().seed)]
        seed: u64,
        /// Stop the growth profile after this year.
        #[arg(long)]
        until: Option<Time>,
        #[arg(long)]
        nodes: PathBuf,
        #[arg(long)]
        edges: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[arg(long)]
    pub nodes: Option<PathBuf>,
    #[arg(long)]
    pub edges: PathBuf,
    /// Graph lifetime `start:end`; inferred from the data when absent.
    #[arg(long, value_parser = parse_window)]
    pub lifetime: Option<(Time, Time)>,
}

#[derive(Debug, Args)]
pub struct ScoringArgs {
    /// Window `start:end`; the whole lifetime when absent.
    #[arg(long, value_parser = parse_window)]
    pub window: Option<(Time, Time)>,
    /// Scale scores by component size over node count (default).
    #[arg(long, overrides_with = "raw")]
    pub adjusted: bool,
    /// Unscaled scores.
    #[arg(long, overrides_with = "adjusted")]
    pub raw: bool,
}

#[derive(Debug, Args)]
pub struct RouteArgs {
    #[arg(long, value_enum, default_value_t = Orientation::Ascending)]
    pub orientation: Orientation,
    /// Per-pair route limit; 0 disables it.
    #[arg(long, default_value_t = DEFAULT_ROUTE_CEILING)]
    pub max_routes: u64,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[arg(long, default_value_t = ClassifierConfig::default().top)]
    pub top: usize,
    #[arg(long, default_value_t = ClassifierConfig::default().low)]
    pub low: usize,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to a file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Orientation {
    Ascending,
    Both,
}

fn parse_window(s: &str) -> Result<(Time, Time), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected start:end, got `{s}`"))?;
    let parse = |x: &str| x.trim().parse::<Time>().map_err(|e| format!("`{x}`: {e}"));
    Ok((parse(a)?, parse(b)?))
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] crate::Error),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => e.exit_code(),
            _ => 1,
        }
    }
}

macro_rules! core_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Core(e.into())
            }
        }
    )*};
}
core_from!(
    crate::tvg::GraphError,
    crate::io::DataError,
    crate::temporal::TemporalError,
    crate::analytics::AnalyticsError,
    crate::community::CommunityError
);

/// Rounds to 12 significant digits so printed values do not depend on the
/// last bits of floating point summation.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn format_float(x: f64) -> String {
    format!("{}", round_sig(x))
}

/// A rounded number for output; integral values are written without a
/// fractional part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(f64);

impl From<f64> for Num {
    fn from(x: f64) -> Self {
        Num(round_sig(x))
    }
}

impl Serialize for Num {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.fract() == 0.0 && self.0.abs() < 1e15 {
            s.serialize_i64(self.0 as i64)
        } else {
            s.serialize_f64(self.0)
        }
    }
}

fn window_or_lifetime(g: &TimeVaryingGraph, w: Option<(Time, Time)>) -> Result<Window, CliError> {
    Ok(match w {
        Some((a, b)) => Window::new(a, b)?,
        None => g.lifetime(),
    })
}

fn load(args: &GraphArgs) -> Result<TimeVaryingGraph, CliError> {
    let lifetime = args
        .lifetime
        .map(|(a, b)| Lifetime::new(a, b))
        .transpose()?;
    Ok(load_graph(args.nodes.as_deref(), &args.edges, lifetime)?)
}

impl ScoringArgs {
    fn adjusted(&self) -> bool {
        !self.raw
    }
}

impl RouteArgs {
    fn options(&self, adjusted: bool) -> TemporalOptions {
        TemporalOptions {
            adjusted,
            orientation: match self.orientation {
                Orientation::Ascending => PairOrientation::Ascending,
                Orientation::Both => PairOrientation::Both,
            },
            route_ceiling: (self.max_routes > 0).then_some(self.max_routes),
            keep_pair_stats: false,
        }
    }
}

struct Sink {
    format: Format,
    out: Box<dyn Write>,
}

impl Sink {
    fn open(args: &OutputArgs) -> Result<Self, CliError> {
        let out: Box<dyn Write> = match &args.output {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Sink {
            format: args.format,
            out,
        })
    }

    /// Rows as CSV with a header, or as a JSON array.
    fn rows<T: Serialize>(mut self, rows: &[T]) -> Result<(), CliError> {
        match self.format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut self.out);
                for r in rows {
                    w.serialize(r)?;
                }
                w.flush()?;
            }
            Format::Json => {
                serde_json::to_writer_pretty(&mut self.out, rows)?;
                writeln!(self.out)?;
            }
        }
        self.out.flush()?;
        Ok(())
    }

    /// A plain CSV table.
    fn table(mut self, header: &[String], records: &[Vec<String>]) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(&mut self.out);
        w.write_record(header)?;
        for r in records {
            w.write_record(r)?;
        }
        w.flush()?;
        drop(w);
        self.out.flush()?;
        Ok(())
    }

    /// CSV rows, or one JSON document.
    fn rows_or_doc<T: Serialize, D: Serialize>(
        mut self,
        rows: &[T],
        doc: &D,
    ) -> Result<(), CliError> {
        if self.format == Format::Csv {
            return self.rows(rows);
        }
        serde_json::to_writer_pretty(&mut self.out, doc)?;
        writeln!(self.out)?;
        self.out.flush()?;
        Ok(())
    }
}

#[derive(Serialize)]
struct ScoreRow<'a> {
    node: &'a str,
    score: Num,
    rank: usize,
}

fn score_rows(v: &CentralityVector) -> Vec<ScoreRow<'_>> {
    let ranks = rank(v);
    let mut rows: Vec<ScoreRow> = v
        .scores
        .iter()
        .map(|(id, &s)| ScoreRow {
            node: id.as_str(),
            score: Num::from(s),
            rank: ranks[id],
        })
        .collect();
    rows.sort_by_key(|r| r.rank);
    rows
}

#[derive(Serialize)]
struct StatsRow {
    time: Time,
    nodes: usize,
    edges: usize,
    avg_degree: Num,
    diameter: usize,
    density: Num,
    community_count: usize,
    modularity: Num,
    avg_clustering: Num,
    avg_path_length: Num,
    avg_normalized_closeness: Num,
    avg_eccentricity: Num,
    avg_betweenness: Num,
    avg_normalized_betweenness: Num,
    avg_pagerank: Num,
    avg_eigenvector: Num,
}

impl StatsRow {
    fn new(time: Time, r: &SnapshotReport) -> Self {
        StatsRow {
            time,
            nodes: r.nodes,
            edges: r.edges,
            avg_degree: Num::from(r.avg_degree),
            diameter: r.diameter,
            density: Num::from(r.density),
            community_count: r.community_count,
            modularity: Num::from(r.modularity),
            avg_clustering: Num::from(r.avg_clustering),
            avg_path_length: Num::from(r.avg_path_length),
            avg_normalized_closeness: Num::from(r.avg_normalized_closeness),
            avg_eccentricity: Num::from(r.avg_eccentricity),
            avg_betweenness: Num::from(r.avg_betweenness),
            avg_normalized_betweenness: Num::from(r.avg_normalized_betweenness),
            avg_pagerank: Num::from(r.avg_pagerank),
            avg_eigenvector: Num::from(r.avg_eigenvector),
        }
    }
}

#[derive(Serialize)]
struct LabelRow<'a> {
    window_start: Time,
    window_end: Time,
    node: &'a str,
    temporal_rank: usize,
    static_rank: usize,
    temporal_score: Num,
    static_score: Num,
    label: FlowLabel,
}

#[derive(Serialize)]
struct PairRow<'a> {
    source: &'a str,
    target: &'a str,
    arrival: Time,
    routes: String,
}

#[derive(Serialize)]
struct CommunityRow<'a> {
    node: &'a str,
    community: usize,
}

#[derive(Serialize)]
struct CommunityDoc<'a> {
    focus: Option<&'a str>,
    window: Window,
    community_count: usize,
    modularity: Num,
    assignment: Vec<CommunityRow<'a>>,
}

fn community_rows(p: &Partition) -> Vec<CommunityRow<'_>> {
    p.assignment
        .iter()
        .map(|(id, &c)| CommunityRow {
            node: id.as_str(),
            community: c,
        })
        .collect()
}

fn label_rows<'a>(
    rc: &'a crate::analytics::RankComparison,
    cfg: &ClassifierConfig,
) -> Result<Vec<LabelRow<'a>>, CliError> {
    let labels = classify_flows(rc, cfg)?;
    Ok(rc
        .rows
        .iter()
        .zip(labels)
        .map(|(r, c)| LabelRow {
            window_start: rc.window.start,
            window_end: rc.window.end,
            node: r.node.as_str(),
            temporal_rank: r.temporal_rank,
            static_rank: r.static_rank,
            temporal_score: Num::from(r.temporal_score),
            static_score: Num::from(r.static_score),
            label: c.label,
        })
        .collect())
}

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Stats { graph, at, out } => {
            let g = load(&graph)?;
            let times = match at {
                Some(t) => vec![t],
                None => g.birth_dates(),
            };
            let cfg = SnapshotConfig::default();
            let mut reports = Vec::new();
            for t in times {
                reports.push((t, snapshot_report(&g.snapshot(t)?.footprint(), &cfg)));
            }
            let sink = Sink::open(&out)?;
            if sink.format == Format::Json {
                let rows: Vec<StatsRow> =
                    reports.iter().map(|(t, r)| StatsRow::new(*t, r)).collect();
                return sink.rows(&rows);
            }
            // one row per metric, one column per snapshot
            let mut header = vec!["metric".to_owned()];
            header.extend(reports.iter().map(|(t, _)| t.to_string()));
            let columns: Vec<Vec<(&str, f64)>> = reports.iter().map(|(_, r)| r.rows()).collect();
            let names: Vec<&str> = SnapshotReport::default()
                .rows()
                .iter()
                .map(|r| r.0)
                .collect();
            let records: Vec<Vec<String>> = names
                .iter()
                .enumerate()
                .map(|(i, name)| {
                    std::iter::once(name.to_string())
                        .chain(columns.iter().map(|c| format_float(c[i].1)))
                        .collect()
                })
                .collect();
            sink.table(&header, &records)
        }
        Command::StaticBc {
            graph,
            scoring,
            out,
        } => {
            let g = load(&graph)?;
            let w = window_or_lifetime(&g, scoring.window)?;
            let v = static_betweenness(&g.restrict_window(w)?.footprint(), scoring.adjusted());
            Sink::open(&out)?.rows(&score_rows(&v))
        }
        Command::TemporalBc {
            graph,
            scoring,
            routes,
            pairs,
            out,
        } => {
            let g = load(&graph)?;
            let w = window_or_lifetime(&g, scoring.window)?;
            let mut opts = routes.options(scoring.adjusted());
            opts.keep_pair_stats = pairs;
            let r = foremost_betweenness(&g, w, &opts)?;
            if pairs {
                let stats = r.pair_stats.as_deref().unwrap_or_default();
                let rows: Vec<PairRow> = stats
                    .iter()
                    .map(|p| PairRow {
                        source: p.source.as_str(),
                        target: p.target.as_str(),
                        arrival: p.arrival,
                        routes: p.total.to_string(),
                    })
                    .collect();
                Sink::open(&out)?.rows(&rows)
            } else {
                Sink::open(&out)?.rows(&score_rows(&r.scores))
            }
        }
        Command::Sweep {
            graph,
            births,
            scoring,
            routes,
            thresholds,
            out,
        } => {
            let g = load(&graph)?;
            let cfg = ClassifierConfig::new(thresholds.top, thresholds.low)?;
            let opts = CompareOptions {
                temporal: routes.options(scoring.adjusted()),
                ..Default::default()
            };
            let report = sweep_report(&g, births.as_deref(), &opts, &cfg)?;
            let mut rows = Vec::new();
            for w in &report.windows {
                rows.extend(label_rows(&w.comparison, &cfg)?);
            }
            Sink::open(&out)?.rows(&rows)
        }
        Command::Classify {
            graph,
            scoring,
            routes,
            thresholds,
            out,
        } => {
            let g = load(&graph)?;
            let w = window_or_lifetime(&g, scoring.window)?;
            let cfg = ClassifierConfig::new(thresholds.top, thresholds.low)?;
            let opts = CompareOptions {
                temporal: routes.options(scoring.adjusted()),
                ..Default::default()
            };
            let rc = compare_ranks(&g, w, &opts)?;
            Sink::open(&out)?.rows(&label_rows(&rc, &cfg)?)
        }
        Command::Communities {
            graph,
            window,
            focus,
            out,
        } => {
            let g = load(&graph)?;
            let w = window_or_lifetime(&g, window)?;
            let wg = g.restrict_window(w)?;
            let p = match &focus {
                Some(f) => detect_temporal_communities(&wg, &NodeId::from(f.as_str()))?,
                None => detect_communities(&wg.footprint()),
            };
            let rows = community_rows(&p);
            let doc = CommunityDoc {
                focus: focus.as_deref(),
                window: wg.lifetime(),
                community_count: p.community_count,
                modularity: Num::from(p.modularity),
                assignment: community_rows(&p),
            };
            Sink::open(&out)?.rows_or_doc(&rows, &doc)
        }
        Command::Generate {
            seed,
            until,
            nodes,
            edges,
        } => {
            let mut cfg = GeneratorConfig::with_seed(seed);
            if let Some(last) = until {
                cfg.years.retain(|y| y.year <= last);
            }
            let g = generate_synthetic(&cfg)?;
            save_graph(&g, &nodes, &edges)?;
            Ok(())
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build()?;
            pool.install(|| execute(cli.command))
        }
        None => execute(cli.command),
    }
}

/// Parses arguments and runs; returns the process exit status. Usage errors
/// exit with 1, internal limits with 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
