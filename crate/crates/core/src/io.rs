//! JSON loaders for designs and hypergraphs.
//!
//! Designs are `{"v": 7, "n": 3, "t": 2, "blocks": [[1,2,3], ...]}` and
//! hypergraphs are `{"vertices": 7, "edges": [[1,2,3], ...]}`. Anywhere a
//! path is accepted, `builtin:fano`, `builtin:sts7` and `builtin:sqs8` name
//! the bundled designs.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{
    builtin_fano, builtin_sqs8, builtin_sts7, DesignError, Hypergraph, HypergraphError, SteinerSystem,
};

pub const BUILTINS: [&str; 3] = ["fano", "sts7", "sqs8"];

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("unknown builtin {0:?} (expected one of fano, sts7, sqs8)")]
    UnknownBuiltin(String),
    #[error("{path}: vertex {vertex} outside 1..={max}")]
    VertexOutOfRange { path: String, vertex: usize, max: usize },
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignFile {
    pub v: usize,
    pub n: usize,
    pub t: usize,
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphFile {
    pub vertices: usize,
    pub edges: Vec<Vec<usize>>,
}

impl From<&SteinerSystem> for DesignFile {
    fn from(s: &SteinerSystem) -> Self {
        DesignFile { v: s.v(), n: s.n(), t: s.t(), blocks: s.block_lists() }
    }
}

impl From<&Hypergraph> for HypergraphFile {
    fn from(h: &Hypergraph) -> Self {
        HypergraphFile { vertices: h.vertex_count(), edges: h.edges().iter().map(|e| e.to_vec()).collect() }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AnyFile {
    Design(DesignFile),
    Hypergraph(HypergraphFile),
}

pub fn builtin(name: &str) -> Option<SteinerSystem> {
    match name {
        "fano" => Some(builtin_fano()),
        "sts7" => Some(builtin_sts7()),
        "sqs8" => Some(builtin_sqs8()),
        _ => None,
    }
}

fn read(path: &str) -> Result<String, LoadError> {
    fs::read_to_string(Path::new(path)).map_err(|source| LoadError::Io { path: path.to_string(), source })
}

fn check_range(path: &str, lists: &[Vec<usize>], max: usize) -> Result<(), LoadError> {
    match lists.iter().flatten().find(|&&x| x == 0 || x > max) {
        Some(&vertex) => Err(LoadError::VertexOutOfRange { path: path.to_string(), vertex, max }),
        None => Ok(()),
    }
}

/// Parses and validates a design from JSON text. `origin` only labels errors.
pub fn parse_design(text: &str, origin: &str) -> Result<SteinerSystem, LoadError> {
    let file: DesignFile =
        serde_json::from_str(text).map_err(|source| LoadError::Json { path: origin.to_string(), source })?;
    check_range(origin, &file.blocks, file.v)?;
    Ok(SteinerSystem::validate(file.v, file.n, file.t, file.blocks)?)
}

/// Parses a hypergraph, accepting either file shape.
pub fn parse_hypergraph(text: &str, origin: &str) -> Result<Hypergraph, LoadError> {
    let any: AnyFile =
        serde_json::from_str(text).map_err(|source| LoadError::Json { path: origin.to_string(), source })?;
    let (vertices, edges) = match any {
        AnyFile::Design(d) => (d.v, d.blocks),
        AnyFile::Hypergraph(h) => (h.vertices, h.edges),
    };
    check_range(origin, &edges, vertices)?;
    Ok(Hypergraph::from_edge_lists(vertices, &edges)?)
}

/// Loads a design from a path or `builtin:<name>`.
pub fn load_design(source: &str) -> Result<SteinerSystem, LoadError> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return builtin(name).ok_or_else(|| LoadError::UnknownBuiltin(name.to_string()));
    }
    parse_design(&read(source)?, source)
}

/// Loads a design file without checking the design axioms, for validation
/// reports that want to show the failure.
pub fn load_design_file(source: &str) -> Result<DesignFile, LoadError> {
    if let Some(name) = source.strip_prefix("builtin:") {
        let s = builtin(name).ok_or_else(|| LoadError::UnknownBuiltin(name.to_string()))?;
        return Ok(DesignFile::from(&s));
    }
    let file: DesignFile = serde_json::from_str(&read(source)?)
        .map_err(|source_err| LoadError::Json { path: source.to_string(), source: source_err })?;
    check_range(source, &file.blocks, file.v)?;
    Ok(file)
}

/// Loads a hypergraph from a path or `builtin:<name>` (the design's blocks).
pub fn load_hypergraph(source: &str) -> Result<Hypergraph, LoadError> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return builtin(name).map(|s| s.hypergraph()).ok_or_else(|| LoadError::UnknownBuiltin(name.to_string()));
    }
    parse_hypergraph(&read(source)?, source)
}

pub fn design_to_json(s: &SteinerSystem) -> String {
    serde_json::to_string(&DesignFile::from(s)).expect("design serializes")
}

pub fn hypergraph_to_json(h: &Hypergraph) -> String {
    serde_json::to_string(&HypergraphFile::from(h)).expect("hypergraph serializes")
}
