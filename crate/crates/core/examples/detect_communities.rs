//! Louvain on a planted-partition graph: per-level modularity, recovery
//! against the planted blocks and the resolution-limit report.
//!
//! cargo run --example detect_communities

use weakties::community::{louvain, resolution_report, LouvainConfig};
use weakties::stats::nmi;
use weakties::synth::planted_partition;

fn main() -> weakties::Result<()> {
    let (g, truth) = planted_partition(400, 8, 0.25, 0.01, 7)?;
    println!("{} nodes, {} edges", g.node_count(), g.edge_count());

    let dendrogram = louvain(&g, &LouvainConfig::with_seed(1))?;
    for (k, level) in dendrogram.levels().iter().enumerate() {
        println!(
            "level {k}: {:>3} communities, Q = {:.4}",
            level.partition.community_count(),
            level.modularity
        );
    }

    let top = &dendrogram.top().partition;
    println!("NMI against planted blocks: {:.4}", nmi(top, &truth)?);
    let r = resolution_report(&g, top)?;
    println!(
        "resolution limit {:.1}: {} of {} communities are smaller",
        r.threshold, r.below_threshold, r.community_count
    );
    Ok(())
}
