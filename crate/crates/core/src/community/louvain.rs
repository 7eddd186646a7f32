//! Two-phase Louvain modularity maximization.
//!
//! Phase one moves single vertices between neighboring communities while
//! modularity improves. Phase two collapses the communities into a weighted
//! graph on which phase one runs again. Each round yields one level of the
//! hierarchy.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, WeightedAdjacency, WeightedGraph};

use super::modularity::{aggregate, modularity};
use super::partition::{Dendrogram, Level, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LouvainConfig {
    /// A phase-one pass stops once a full sweep gains less than this.
    pub min_gain: f64,
    pub max_levels: usize,
    /// Seed for the per-level vertex scan order.
    pub vertex_order_seed: u64,
    /// Independent runs with different scan orders; the one with the highest
    /// final modularity is returned.
    pub restarts: usize,
}

impl Default for LouvainConfig {
    fn default() -> Self {
        LouvainConfig {
            min_gain: 1e-7,
            max_levels: 32,
            vertex_order_seed: 0,
            restarts: 1,
        }
    }
}

impl LouvainConfig {
    pub fn with_seed(seed: u64) -> Self {
        LouvainConfig {
            vertex_order_seed: seed,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.min_gain.is_nan() || self.min_gain < 0.0 {
            return Err(Error::invalid("min_gain must be non-negative"));
        }
        if self.max_levels == 0 {
            return Err(Error::invalid("max_levels must be positive"));
        }
        if self.restarts == 0 {
            return Err(Error::invalid("restarts must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SweepStats {
    pub moves: usize,
    pub total_gain: f64,
    /// Smallest gain among accepted moves (infinite when nothing moved).
    pub min_accepted_gain: f64,
}

/// Modularity change for moving a vertex of strength `k_v` out of community
/// `a` (total strength `tot_a`, including the vertex) into community `c`
/// (total `tot_c`), where `k_v_a`/`k_v_c` are the weights from the vertex to
/// the other members of `a` and to `c`. Self-loops of the vertex cancel out.
#[inline]
fn gain(k_v: f64, k_v_a: f64, k_v_c: f64, tot_a: f64, tot_c: f64, m: f64) -> f64 {
    (k_v_c - k_v_a) / m - k_v * (tot_c - tot_a + k_v) / (2.0 * m * m)
}

/// Phase-one working state: a community per vertex plus running per-community
/// sums of member strength and internal weight.
pub struct LocalMoving<'g, G: WeightedAdjacency> {
    graph: &'g G,
    m: f64,
    community: Vec<usize>,
    total: Vec<f64>,
    internal: Vec<f64>,
    // scratch for neighbor-community weights
    link: Vec<f64>,
    marked: Vec<bool>,
    touched: Vec<usize>,
}

impl<'g, G: WeightedAdjacency> LocalMoving<'g, G> {
    /// Every vertex in its own community; community id = vertex id.
    pub fn new(graph: &'g G) -> Result<Self> {
        Self::from_partition(graph, &Partition::singletons(graph.node_count()))
    }

    pub fn from_partition(graph: &'g G, p: &Partition) -> Result<Self> {
        p.check_covers(graph.node_count())?;
        let m = graph.total_weight();
        if m <= 0.0 {
            return Err(Error::EdgelessGraph);
        }
        let n = graph.node_count();
        let slots = n.max(p.community_count());
        let mut total = vec![0.0; slots];
        let mut internal = vec![0.0; slots];
        for v in 0..n {
            let c = p.community_of(v);
            total[c] += graph.strength(v);
            internal[c] += graph.self_loop(v);
            for (w, weight) in graph.weighted_neighbors(v) {
                if w > v && p.community_of(w) == c {
                    internal[c] += weight;
                }
            }
        }
        Ok(LocalMoving {
            graph,
            m,
            community: p.assignment().to_vec(),
            total,
            internal,
            link: vec![0.0; slots],
            marked: vec![false; slots],
            touched: Vec::new(),
        })
    }

    pub fn community_of(&self, v: VertexId) -> usize {
        self.community[v]
    }

    /// Number of community slots; valid targets for [`Self::move_gain`].
    pub fn slot_count(&self) -> usize {
        self.total.len()
    }

    /// Modularity of the current assignment from the running sums.
    pub fn modularity(&self) -> f64 {
        let two_m = 2.0 * self.m;
        self.internal
            .iter()
            .zip(&self.total)
            .map(|(l, k)| l / self.m - (k / two_m) * (k / two_m))
            .sum()
    }

    fn weight_to(&self, v: VertexId, c: usize) -> f64 {
        self.graph
            .weighted_neighbors(v)
            .filter(|&(w, _)| self.community[w] == c)
            .map(|(_, weight)| weight)
            .sum()
    }

    /// Modularity change from moving `v` into community `c`; zero when `v`
    /// is already there.
    pub fn move_gain(&self, v: VertexId, c: usize) -> f64 {
        let a = self.community[v];
        if a == c {
            return 0.0;
        }
        gain(
            self.graph.strength(v),
            self.weight_to(v, a),
            self.weight_to(v, c),
            self.total[a],
            self.total[c],
            self.m,
        )
    }

    pub fn move_vertex(&mut self, v: VertexId, c: usize) {
        let a = self.community[v];
        if a == c {
            return;
        }
        let (k_v_a, k_v_c) = (self.weight_to(v, a), self.weight_to(v, c));
        self.apply_move(v, a, c, k_v_a, k_v_c);
    }

    fn apply_move(&mut self, v: VertexId, a: usize, c: usize, k_v_a: f64, k_v_c: f64) {
        let k_v = self.graph.strength(v);
        let s_v = self.graph.self_loop(v);
        self.total[a] -= k_v;
        self.internal[a] -= k_v_a + s_v;
        self.total[c] += k_v;
        self.internal[c] += k_v_c + s_v;
        self.community[v] = c;
    }

    /// One sequential pass over `order`. Each vertex goes to the neighboring
    /// community with the largest strictly positive gain; ties go to the
    /// lowest community id.
    pub fn sweep(&mut self, order: &[VertexId]) -> SweepStats {
        let mut stats = SweepStats {
            min_accepted_gain: f64::INFINITY,
            ..SweepStats::default()
        };
        for &v in order {
            let a = self.community[v];
            for (w, weight) in self.graph.weighted_neighbors(v) {
                let c = self.community[w];
                if !self.marked[c] {
                    self.marked[c] = true;
                    self.touched.push(c);
                }
                self.link[c] += weight;
            }
            let k_v = self.graph.strength(v);
            let k_v_a = self.link[a];
            let tot_a = self.total[a];
            let mut best = (a, 0.0);
            for &c in &self.touched {
                if c == a {
                    continue;
                }
                let g = gain(k_v, k_v_a, self.link[c], tot_a, self.total[c], self.m);
                if g > best.1 || (g == best.1 && best.0 != a && c < best.0) {
                    best = (c, g);
                }
            }
            let (target, target_gain) = best;
            if target != a {
                let k_v_c = self.link[target];
                self.apply_move(v, a, target, k_v_a, k_v_c);
                stats.moves += 1;
                stats.total_gain += target_gain;
                stats.min_accepted_gain = stats.min_accepted_gain.min(target_gain);
            }
            for &c in &self.touched {
                self.link[c] = 0.0;
                self.marked[c] = false;
            }
            self.touched.clear();
        }
        stats
    }

    /// Current assignment, relabeled densely in order of first appearance.
    pub fn partition(&self) -> Partition {
        Partition::from_labels(&self.community)
    }
}

/// Runs phase one to convergence on `g`, returning the resulting partition of
/// `g`'s vertices.
fn local_moving_phase<G: WeightedAdjacency>(
    g: &G,
    cfg: &LouvainConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Partition> {
    let mut state = LocalMoving::new(g)?;
    let mut order: Vec<VertexId> = (0..g.node_count()).collect();
    order.shuffle(rng);
    loop {
        let stats = state.sweep(&order);
        log::trace!(
            "sweep: {} moves, gain {:.3e}",
            stats.moves,
            stats.total_gain
        );
        if stats.moves == 0 || stats.total_gain < cfg.min_gain {
            break;
        }
    }
    Ok(state.partition())
}

/// Louvain community detection on an unweighted graph.
///
/// Level `k` of the result is the partition of the original vertices after
/// `k + 1` rounds of local moving and aggregation. Rounds stop when local
/// moving merges nothing or after `max_levels` levels. A graph on which no
/// move ever helps yields a single level holding the singleton partition.
///
/// With `restarts > 1` the whole procedure repeats on fresh scan orders and
/// the dendrogram with the highest top-level modularity wins (earliest run on
/// ties). The first run always uses `vertex_order_seed` itself.
pub fn louvain(g: &Graph, cfg: &LouvainConfig) -> Result<Dendrogram> {
    cfg.validate()?;
    if g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    let mut best = single_run(g, cfg, cfg.vertex_order_seed)?;
    for r in 1..cfg.restarts as u64 {
        let seed = cfg
            .vertex_order_seed
            .wrapping_add(r.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let run = single_run(g, cfg, seed)?;
        log::debug!("restart {r}: Q = {:.6}", run.top().modularity);
        if run.top().modularity > best.top().modularity {
            best = run;
        }
    }
    Ok(best)
}

fn single_run(g: &Graph, cfg: &LouvainConfig, seed: u64) -> Result<Dendrogram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = WeightedGraph::from(g);
    // original vertex -> vertex of `current`
    let mut membership: Vec<usize> = (0..g.node_count()).collect();
    let mut levels = Vec::new();

    while levels.len() < cfg.max_levels {
        let p = local_moving_phase(&current, cfg, &mut rng)?;
        if p.community_count() == current.node_count() {
            break;
        }
        for m in membership.iter_mut() {
            *m = p.community_of(*m);
        }
        let partition = Partition::from_dense(membership.clone())?;
        let q = modularity(g, &partition)?;
        log::debug!(
            "level {}: {} communities, Q = {q:.6}",
            levels.len(),
            partition.community_count()
        );
        levels.push(Level {
            partition,
            modularity: q,
        });
        current = aggregate(&current, &p)?;
    }

    if levels.is_empty() {
        let partition = Partition::singletons(g.node_count());
        let q = modularity(g, &partition)?;
        levels.push(Level {
            partition,
            modularity: q,
        });
    }
    Ok(Dendrogram::new(levels))
}
