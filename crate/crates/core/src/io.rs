//! CSV ingestion and export of time-varying graphs.
//!
//! Nodes file: header plus rows `id,type,birth`. Edges file: header plus
//! rows `src,dst,birth`. `type` is a class name (`HIA`, `NHIA`, `NHMA`, `OA`,
//! `UNKNOWN`) optionally followed by `:subtype`. When `type` or `birth` is
//! blank and the id follows the `Xi(yy)` convention (type letter, index, two
//! digit year) the missing fields are derived from the id.

use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::tvg::{
    ActorClass, ActorType, GraphError, Lifetime, TemporalEdge, TemporalNode, Time, TimeVaryingGraph,
};

#[derive(Debug, Error)]
pub enum DataError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{file}:{line}: {message}")]
    Malformed {
        file: String,
        line: u64,
        message: String,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("infeasible generator configuration: {0}")]
    Infeasible(String),
}

/// Century used for two-digit years in conventional names.
pub const NAME_CENTURY: Time = 2000;

/// Actor type for a conventional type letter.
pub fn type_for_letter(letter: &str) -> Option<ActorType> {
    let (class, sub) = match letter {
        "H" => (ActorClass::Hia, "human"),
        "N" => (ActorClass::Nhia, "material"),
        "G" => (ActorClass::Oa, "organization"),
        "L" => (ActorClass::Nhma, "lab"),
        "A" => (ActorClass::Nhma, "article"),
        "C" => (ActorClass::Nhma, "citing publication"),
        "J" => (ActorClass::Nhma, "journal"),
        "P" => (ActorClass::Nhma, "project"),
        "S" => (ActorClass::Nhma, "poster"),
        "I" => (ActorClass::Nhma, "invited oral"),
        "O" => (ActorClass::Nhma, "oral"),
        _ => return None,
    };
    Some(ActorType::with_subtype(class, sub))
}

/// Splits an `Xi(yy)` id into `(letters, index, birth)`.
pub fn parse_conventional_name(id: &str) -> Option<(&str, u32, Time)> {
    let open = id.find('(')?;
    let inner = id[open + 1..].strip_suffix(')')?;
    if inner.len() != 2 || !inner.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let head = &id[..open];
    let split = head.find(|c: char| c.is_ascii_digit())?;
    let (letters, index) = head.split_at(split);
    if letters.is_empty() || !letters.chars().all(|c| c.is_ascii_alphabetic()) {
        return None;
    }
    let index = index.parse().ok()?;
    Some((letters, index, NAME_CENTURY + inner.parse::<Time>().ok()?))
}

pub fn conventional_name(letter: &str, index: u32, birth: Time) -> String {
    format!("{letter}{index}({:02})", birth.rem_euclid(100))
}

fn parse_type(field: &str) -> (ActorType, Option<String>) {
    let (class, sub) = match field.split_once(':') {
        Some((c, s)) => (c, Some(s.to_owned())),
        None => (field, None),
    };
    match ActorClass::parse(class) {
        Some(class) => (
            ActorType {
                class,
                subtype: sub,
            },
            None,
        ),
        None => (
            ActorType::with_subtype(ActorClass::Unknown, field.trim()),
            Some(format!("unknown actor type {field:?}; using UNKNOWN")),
        ),
    }
}

fn reader<R: Read>(r: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(r)
}

fn malformed(file: &str, line: u64, message: impl Into<String>) -> DataError {
    DataError::Malformed {
        file: file.to_owned(),
        line,
        message: message.into(),
    }
}

fn parse_birth(file: &str, line: u64, s: &str) -> Result<Time, DataError> {
    s.parse()
        .map_err(|_| malformed(file, line, format!("birth {s:?} is not an integer")))
}

/// Parses a nodes table. Warnings are appended to `warnings`.
pub fn read_nodes<R: Read>(
    input: R,
    file: &str,
    warnings: &mut Vec<String>,
) -> Result<Vec<TemporalNode>, DataError> {
    let mut out = Vec::new();
    for rec in reader(input).records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            malformed(file, line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        let id = rec.get(0).unwrap_or("");
        if id.is_empty() {
            return Err(malformed(file, line, "missing node id"));
        }
        if rec.len() > 3 {
            return Err(malformed(
                file,
                line,
                format!("expected 3 fields, found {}", rec.len()),
            ));
        }
        let conventional = parse_conventional_name(id);
        let type_field = rec.get(1).unwrap_or("");
        let actor_type = if type_field.is_empty() {
            match conventional.and_then(|(l, _, _)| type_for_letter(l)) {
                Some(t) => t,
                None => {
                    warnings.push(format!("{file}:{line}: no type for {id}; using UNKNOWN"));
                    ActorType::unknown()
                }
            }
        } else {
            let (t, warn) = parse_type(type_field);
            if let Some(w) = warn {
                warnings.push(format!("{file}:{line}: {w}"));
            }
            t
        };
        let birth_field = rec.get(2).unwrap_or("");
        let birth = if birth_field.is_empty() {
            conventional
                .map(|(_, _, b)| b)
                .ok_or_else(|| malformed(file, line, format!("no birth for {id}")))?
        } else {
            parse_birth(file, line, birth_field)?
        };
        out.push(TemporalNode::new(id, actor_type, birth));
    }
    Ok(out)
}

pub fn read_edges<R: Read>(input: R, file: &str) -> Result<Vec<TemporalEdge>, DataError> {
    let mut out = Vec::new();
    for rec in reader(input).records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            malformed(file, line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != 3 {
            return Err(malformed(
                file,
                line,
                format!("expected 3 fields, found {}", rec.len()),
            ));
        }
        let (src, dst) = (&rec[0], &rec[1]);
        if src.is_empty() || dst.is_empty() {
            return Err(malformed(file, line, "missing endpoint"));
        }
        out.push(TemporalEdge::new(
            src,
            dst,
            parse_birth(file, line, &rec[2])?,
        ));
    }
    Ok(out)
}

/// `[min birth, max birth]`, or `[0, 0]` when there is nothing.
pub fn infer_lifetime(nodes: &[TemporalNode], edges: &[TemporalEdge]) -> Lifetime {
    let births = nodes
        .iter()
        .map(|n| n.birth)
        .chain(edges.iter().map(|e| e.birth));
    let (lo, hi) = births.fold((Time::MAX, Time::MIN), |(lo, hi), b| (lo.min(b), hi.max(b)));
    if lo > hi {
        Lifetime { start: 0, end: 0 }
    } else {
        Lifetime { start: lo, end: hi }
    }
}

/// Builds a graph from CSV readers; `file` labels are used in messages.
pub fn read_graph<N: Read, E: Read>(
    nodes: Option<(N, &str)>,
    edges: (E, &str),
    lifetime: Option<Lifetime>,
) -> Result<(TimeVaryingGraph, Vec<String>), DataError> {
    let mut warnings = Vec::new();
    let nodes = match nodes {
        Some((r, name)) => read_nodes(r, name, &mut warnings)?,
        None => Vec::new(),
    };
    let edges = read_edges(edges.0, edges.1)?;
    let lifetime = lifetime.unwrap_or_else(|| infer_lifetime(&nodes, &edges));
    let (g, build_warnings) = TimeVaryingGraph::build_with_warnings(nodes, edges, lifetime)?;
    warnings.extend(build_warnings.into_iter().map(|w| w.to_string()));
    Ok((g, warnings))
}

fn open(path: &Path) -> Result<File, DataError> {
    File::open(path).map_err(|source| DataError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Loads a graph from CSV files and logs any warnings.
pub fn load_graph(
    nodes_path: Option<&Path>,
    edges_path: &Path,
    lifetime: Option<Lifetime>,
) -> Result<TimeVaryingGraph, DataError> {
    let (g, warnings) = load_graph_with_warnings(nodes_path, edges_path, lifetime)?;
    for w in warnings {
        log::warn!("{w}");
    }
    Ok(g)
}

pub fn load_graph_with_warnings(
    nodes_path: Option<&Path>,
    edges_path: &Path,
    lifetime: Option<Lifetime>,
) -> Result<(TimeVaryingGraph, Vec<String>), DataError> {
    let nodes = match nodes_path {
        Some(p) => Some((open(p)?, p.display().to_string())),
        None => None,
    };
    let edges_name = edges_path.display().to_string();
    let edges = open(edges_path)?;
    read_graph(
        nodes.as_ref().map(|(f, n)| (f, n.as_str())),
        (edges, &edges_name),
        lifetime,
    )
}

pub fn write_nodes<W: Write>(g: &TimeVaryingGraph, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["id", "type", "birth"])?;
    for n in g.nodes() {
        w.write_record([
            n.id.as_str(),
            &n.actor_type.to_string(),
            &n.birth.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Edges in `(birth, src, dst)` order.
pub fn write_edges<W: Write>(g: &TimeVaryingGraph, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["src", "dst", "birth"])?;
    for e in g.edges() {
        let (a, b) = e.endpoints();
        w.write_record([a.as_str(), b.as_str(), &e.birth.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

fn create(path: &Path) -> Result<File, DataError> {
    File::create(path).map_err(|source| DataError::Io {
        path: path.to_owned(),
        source,
    })
}

fn csv_io(path: &Path, e: csv::Error) -> DataError {
    DataError::Io {
        path: path.to_owned(),
        source: e.into(),
    }
}

pub fn save_graph(
    g: &TimeVaryingGraph,
    nodes_path: &Path,
    edges_path: &Path,
) -> Result<(), DataError> {
    write_nodes(g, create(nodes_path)?).map_err(|e| csv_io(nodes_path, e))?;
    write_edges(g, create(edges_path)?).map_err(|e| csv_io(edges_path, e))?;
    Ok(())
}
