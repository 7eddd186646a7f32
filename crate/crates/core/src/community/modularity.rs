use crate::error::{Error, Result};
use crate::graph::{Graph, WeightedAdjacency, WeightedGraph};

use super::Partition;

/// Newman-Girvan modularity under the configuration null model
/// `k_i k_j / 2m`, evaluated per community as
/// `sum_c [ L_c / m - (K_c / 2m)^2 ]` where `L_c` is the internal edge weight
/// and `K_c` the summed strength of the members.
pub fn modularity<G: WeightedAdjacency>(g: &G, p: &Partition) -> Result<f64> {
    p.check_covers(g.node_count())?;
    let m = g.total_weight();
    if m <= 0.0 {
        return Err(Error::EdgelessGraph);
    }
    let mut internal = vec![0.0; p.community_count()];
    let mut total = vec![0.0; p.community_count()];
    for v in 0..g.node_count() {
        let c = p.community_of(v);
        total[c] += g.strength(v);
        internal[c] += g.self_loop(v);
        for (w, weight) in g.weighted_neighbors(v) {
            // each internal edge is seen from both ends
            if w > v && p.community_of(w) == c {
                internal[c] += weight;
            }
        }
    }
    let two_m = 2.0 * m;
    Ok(internal
        .iter()
        .zip(&total)
        .map(|(l, k)| l / m - (k / two_m) * (k / two_m))
        .sum())
}

/// Collapses each community into one vertex. Crossing edges are summed into
/// the edge between the two community vertices; internal edges (and existing
/// self-loops) are summed into the community's self-loop. Total weight and
/// modularity are preserved.
pub fn aggregate<G: WeightedAdjacency>(g: &G, p: &Partition) -> Result<WeightedGraph> {
    p.check_covers(g.node_count())?;
    let mut self_loops = vec![0.0; p.community_count()];
    let mut crossing = Vec::new();
    for v in 0..g.node_count() {
        let c = p.community_of(v);
        self_loops[c] += g.self_loop(v);
        for (w, weight) in g.weighted_neighbors(v) {
            if w <= v {
                continue;
            }
            let d = p.community_of(w);
            if c == d {
                self_loops[c] += weight;
            } else {
                crossing.push((c, d, weight));
            }
        }
    }
    WeightedGraph::from_parts(p.community_count(), crossing, self_loops)
}

/// Community size below which modularity maximization may fail to resolve
/// communities: `sqrt(E / 2)`.
pub fn resolution_limit(g: &Graph) -> f64 {
    resolution_threshold(g.edge_count())
}

pub fn resolution_threshold(edge_count: usize) -> f64 {
    (edge_count as f64 / 2.0).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct ResolutionReport {
    pub threshold: f64,
    pub community_count: usize,
    pub below_threshold: usize,
    pub fraction_below: f64,
}

/// Resolution threshold of `g` and how many communities of `p` are smaller.
pub fn resolution_report(g: &Graph, p: &Partition) -> Result<ResolutionReport> {
    p.check_covers(g.node_count())?;
    let threshold = resolution_limit(g);
    let sizes = p.sizes();
    let below = sizes.iter().filter(|&&s| (s as f64) < threshold).count();
    Ok(ResolutionReport {
        threshold,
        community_count: sizes.len(),
        below_threshold: below,
        fraction_below: if sizes.is_empty() {
            0.0
        } else {
            below as f64 / sizes.len() as f64
        },
    })
}
