//! Edge-list ingestion and crawl-sample assembly.
//!
//! A crawl sample lists, for every queried ("visited") user, the friendship
//! edges returned by the query. The other endpoint of such an edge may be a
//! user that was only discovered, never queried. The dataset used for the
//! analysis is the merge of several samples restricted to edges between
//! visited users.

use std::io::BufRead;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{build_graph, BuiltGraph};

pub type RawEdge = (u64, u64);

/// Parses whitespace-separated `u v` lines. Blank lines and lines whose first
/// non-blank character is `#` are skipped; anything after the second field is
/// rejected.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Vec<RawEdge>> {
    let mut edges = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let content = line.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut fields = content.split_whitespace();
        let u = parse_id(fields.next(), lineno)?;
        let v = parse_id(fields.next(), lineno)?;
        if let Some(extra) = fields.next() {
            return Err(Error::Parse {
                line: lineno,
                message: format!("unexpected trailing field {extra:?}"),
            });
        }
        edges.push((u, v));
    }
    Ok(edges)
}

/// Parses a visited-set file: one decimal id per line, `#` comments allowed.
pub fn parse_id_list<R: BufRead>(reader: R) -> Result<Vec<u64>> {
    let mut ids = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let content = line.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut fields = content.split_whitespace();
        ids.push(parse_id(fields.next(), i + 1)?);
        if fields.next().is_some() {
            return Err(Error::Parse {
                line: i + 1,
                message: "expected a single id".into(),
            });
        }
    }
    Ok(ids)
}

fn parse_id(field: Option<&str>, line: usize) -> Result<u64> {
    let field = field.ok_or_else(|| Error::Parse {
        line,
        message: "expected two ids".into(),
    })?;
    field.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid id {field:?}"),
    })
}

/// Edges of one crawl plus the set of users that were actually queried.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrawlSample {
    edges: Vec<RawEdge>,
    // sorted, unique
    visited: Vec<u64>,
}

impl CrawlSample {
    /// Creates a sample, dropping visited ids that touch no edge. Returns the
    /// sample and the number of ids dropped.
    pub fn new(edges: Vec<RawEdge>, visited: impl IntoIterator<Item = u64>) -> (Self, usize) {
        let mut visited: Vec<u64> = visited.into_iter().collect();
        visited.sort_unstable();
        visited.dedup();
        let mut endpoints: Vec<u64> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        endpoints.sort_unstable();
        endpoints.dedup();
        let before = visited.len();
        visited.retain(|id| endpoints.binary_search(id).is_ok());
        let dropped = before - visited.len();
        (CrawlSample { edges, visited }, dropped)
    }

    /// Infers the visited set from ego-first edge lines: every id that occurs
    /// as the first endpoint of some edge was queried.
    pub fn from_ego_edges(edges: Vec<RawEdge>) -> Self {
        let mut visited: Vec<u64> = edges.iter().map(|&(u, _)| u).collect();
        visited.sort_unstable();
        visited.dedup();
        CrawlSample { edges, visited }
    }

    pub fn edges(&self) -> &[RawEdge] {
        &self.edges
    }

    pub fn visited(&self) -> &[u64] {
        &self.visited
    }

    pub fn is_visited(&self, id: u64) -> bool {
        self.visited.binary_search(&id).is_ok()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MergeReport {
    pub edges: usize,
    pub visited: usize,
    /// Ids visited by both samples.
    pub overlap: usize,
}

/// Union of two samples over a shared id space. Edges are concatenated
/// without deduplication; the graph builder collapses duplicates later.
pub fn merge_samples(a: &CrawlSample, b: &CrawlSample) -> (CrawlSample, MergeReport) {
    let mut edges = Vec::with_capacity(a.edges.len() + b.edges.len());
    edges.extend_from_slice(&a.edges);
    edges.extend_from_slice(&b.edges);

    let (mut i, mut j) = (0, 0);
    let mut visited = Vec::with_capacity(a.visited.len() + b.visited.len());
    let mut overlap = 0;
    while i < a.visited.len() && j < b.visited.len() {
        let (x, y) = (a.visited[i], b.visited[j]);
        if x < y {
            visited.push(x);
            i += 1;
        } else if y < x {
            visited.push(y);
            j += 1;
        } else {
            visited.push(x);
            overlap += 1;
            i += 1;
            j += 1;
        }
    }
    visited.extend_from_slice(&a.visited[i..]);
    visited.extend_from_slice(&b.visited[j..]);

    let report = MergeReport {
        edges: edges.len(),
        visited: visited.len(),
        overlap,
    };
    (CrawlSample { edges, visited }, report)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CoreReport {
    pub raw_edges: usize,
    /// Raw edges with at least one endpoint outside the visited set.
    pub frontier_edges_dropped: usize,
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
    pub visited: usize,
    pub kept_nodes: usize,
    /// Undirected edges, each counted once.
    pub kept_edges: usize,
}

/// Restricts a sample to edges between visited users and builds the graph.
/// Visited users left without any such edge disappear from the result.
pub fn extract_visited_core(sample: &CrawlSample) -> (BuiltGraph, CoreReport) {
    let kept: Vec<RawEdge> = sample
        .edges
        .iter()
        .copied()
        .filter(|&(u, v)| sample.is_visited(u) && sample.is_visited(v))
        .collect();
    let frontier = sample.edges.len() - kept.len();
    let built = build_graph(&kept);
    let report = CoreReport {
        raw_edges: sample.edges.len(),
        frontier_edges_dropped: frontier,
        self_loops_dropped: built.stats.self_loops_dropped,
        duplicates_dropped: built.stats.duplicates_dropped,
        visited: sample.visited.len(),
        kept_nodes: built.graph.node_count(),
        kept_edges: built.graph.edge_count(),
    };
    (built, report)
}
