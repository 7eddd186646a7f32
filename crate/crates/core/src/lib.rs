//! Community structure and strong/weak tie analysis for large undirected
//! friendship graphs.
//!
//! The pipeline runs from crawl samples to statistics:
//!
//! 1. [`ingest`] parses edge lists, merges crawl samples and keeps the
//!    subgraph induced by visited users.
//! 2. [`community`] detects communities with the Louvain method.
//! 3. [`ties`] labels each edge strong (inside a community) or weak (across
//!    communities).
//! 4. [`stats`] computes CCDFs, the weak-tie density map, link fractions and
//!    log-log fits.
//!
//! [`synth`] provides generators with planted ground truth and the uniform
//! and Metropolis-Hastings samplers. The `weakties` binary wraps all of it
//! (see [`cli`]); the crate's `examples/` directory shows each piece in
//! isolation.

pub mod cli;
pub mod community;
pub mod error;
pub mod graph;
pub mod ingest;
pub mod io;
pub mod stats;
pub mod synth;
pub mod ties;

pub use community::{louvain, modularity, Dendrogram, LouvainConfig, Partition};
pub use error::{Error, Result};
pub use graph::{build_graph, BuiltGraph, Graph, VertexId, WeightedGraph};
pub use ties::{classify_ties, Tie, TieLabeling};
