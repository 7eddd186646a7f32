//! Modularity, community aggregation and Louvain detection.

mod louvain;
mod modularity;
mod partition;

pub use louvain::{louvain, LocalMoving, LouvainConfig, SweepStats};
pub use modularity::{
    aggregate, modularity, resolution_limit, resolution_report, resolution_threshold,
    ResolutionReport,
};
pub use partition::{Dendrogram, Level, Partition};
