//! Synthetic graph generators and the uniform / Metropolis-Hastings samplers
//! used to emulate crawling.
//!
//! Every generator and sampler is deterministic given its parameters and
//! seed.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::community::Partition;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Number of walk seeds used when none are given.
pub const DEFAULT_MHRW_SEEDS: usize = 28;

fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} = {p} is not a probability")))
    }
}

/// G(n, p): every unordered pair is an edge independently with probability
/// `p`. Uses geometric skipping, so the cost is proportional to the number
/// of edges rather than pairs.
pub fn bernoulli_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    check_probability("p", p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    if p == 1.0 {
        for v in 1..n {
            edges.extend((0..v).map(|w| (w, v)));
        }
    } else if p > 0.0 {
        let log_q = (1.0 - p).ln();
        // pairs (w, v) with w < v, enumerated row by row
        let (mut v, mut w) = (1usize, -1i64);
        while v < n {
            let r: f64 = rng.random();
            w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
            while w >= v as i64 && v < n {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                edges.push((w as usize, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Planted partition: `blocks` equal blocks of consecutive vertices; pairs
/// inside a block are wired with probability `p_in`, pairs across blocks
/// with `p_out`. Returns the graph and the block assignment.
pub fn planted_partition(
    n: usize,
    blocks: usize,
    p_in: f64,
    p_out: f64,
    seed: u64,
) -> Result<(Graph, Partition)> {
    if blocks == 0 || n == 0 || !n.is_multiple_of(blocks) {
        return Err(Error::invalid(format!(
            "{blocks} blocks do not evenly divide {n} vertices"
        )));
    }
    check_probability("p_in", p_in)?;
    check_probability("p_out", p_out)?;
    if p_in <= p_out {
        return Err(Error::invalid(format!(
            "p_in ({p_in}) must exceed p_out ({p_out})"
        )));
    }
    let block_size = n / blocks;
    let block_of = |v: usize| v / block_size;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if block_of(u) == block_of(v) {
                p_in
            } else {
                p_out
            };
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    let truth = Partition::from_dense((0..n).map(block_of).collect())?;
    Ok((Graph::from_edges(n, edges)?, truth))
}

/// Preferential attachment: start from a clique on `m + 1` vertices, then
/// attach each new vertex to `m` distinct existing vertices chosen with
/// probability proportional to degree. Connected, with a heavy-tailed degree
/// distribution.
pub fn preferential_attachment(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if m == 0 || n <= m {
        return Err(Error::invalid(format!(
            "need 1 <= m < n, got m = {m}, n = {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n * m);
    // every endpoint occurrence; uniform picks from it are degree-biased
    let mut endpoints: Vec<VertexId> = Vec::with_capacity(2 * n * m);
    for v in 0..=m {
        for w in 0..v {
            edges.push((w, v));
            endpoints.extend([w, v]);
        }
    }
    let mut targets = Vec::with_capacity(m);
    for v in m + 1..n {
        targets.clear();
        while targets.len() < m {
            let t = endpoints[rng.random_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, v));
            endpoints.extend([t, v]);
        }
    }
    Graph::from_edges(n, edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleMethod {
    UniformRejection,
    Mhrw,
    /// Plain random walk without degree correction; biased toward hubs.
    RandomWalk,
}

/// One draw or one walk step.
///
/// For the uniform sampler `proposed` is a raw id from the id space and
/// `current` is the vertex it names, if any. For walks, `proposed` is the
/// neighbor offered to the walker and `current` its position after the
/// accept/reject decision. The first entry of each walk is its seed vertex,
/// recorded as accepted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub step: usize,
    pub walker: usize,
    pub proposed: u64,
    pub accepted: bool,
    pub current: Option<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleTrace {
    pub method: SampleMethod,
    pub seed: u64,
    /// Accepted vertices in order. For walks this is the position after every
    /// step, so a rejected proposal repeats the previous vertex.
    pub visited: Vec<VertexId>,
    pub steps: Vec<TraceStep>,
}

impl SampleTrace {
    /// Distinct vertices reached, ascending.
    pub fn distinct_visited(&self) -> Vec<VertexId> {
        let mut v = self.visited.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn acceptance_rate(&self) -> f64 {
        if self.steps.is_empty() {
            return 0.0;
        }
        self.steps.iter().filter(|s| s.accepted).count() as f64 / self.steps.len() as f64
    }
}

/// Rejection sampling over a sparse id space: ids are drawn uniformly from
/// `[0, id_space)`; an id names vertex `id` when `id < node_count` and is a
/// hole otherwise. Drawing continues until `count` distinct vertices are
/// accepted.
pub fn uniform_sample(g: &Graph, id_space: u64, count: usize, seed: u64) -> Result<SampleTrace> {
    let n = g.node_count();
    if id_space < n as u64 {
        return Err(Error::invalid(format!(
            "id space {id_space} is smaller than the {n} vertices"
        )));
    }
    if count > n {
        return Err(Error::invalid(format!(
            "cannot draw {count} distinct vertices from {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut taken = vec![false; n];
    let mut visited = Vec::with_capacity(count);
    let mut steps = Vec::new();
    while visited.len() < count {
        let id = rng.random_range(0..id_space);
        let current = (id < n as u64).then_some(id as usize);
        let accepted = match current {
            Some(v) if !taken[v] => {
                taken[v] = true;
                visited.push(v);
                true
            }
            _ => false,
        };
        steps.push(TraceStep {
            step: steps.len(),
            walker: 0,
            proposed: id,
            accepted,
            current,
        });
    }
    Ok(SampleTrace {
        method: SampleMethod::UniformRejection,
        seed,
        visited,
        steps,
    })
}

fn check_walk_seeds(g: &Graph, seeds: &[VertexId]) -> Result<()> {
    if seeds.is_empty() {
        return Err(Error::invalid("at least one walk seed is required"));
    }
    for &s in seeds {
        if g.degree(s)? == 0 {
            return Err(Error::invalid(format!("walk seed {s} has degree 0")));
        }
    }
    Ok(())
}

fn walk(
    g: &Graph,
    start: VertexId,
    steps: usize,
    seed: u64,
    walker: usize,
    corrected: bool,
) -> Vec<TraceStep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(walker as u64);
    let mut trace = Vec::with_capacity(steps + 1);
    trace.push(TraceStep {
        step: 0,
        walker,
        proposed: start as u64,
        accepted: true,
        current: Some(start),
    });
    let mut at = start;
    for _ in 0..steps {
        let nbrs = g.neighbors(at);
        let next = nbrs[rng.random_range(0..nbrs.len())];
        // Metropolis correction toward the uniform distribution:
        // accept with min(1, k_at / k_next)
        let accepted = !corrected || {
            let ratio = nbrs.len() as f64 / g.neighbors(next).len() as f64;
            ratio >= 1.0 || rng.random::<f64>() < ratio
        };
        if accepted {
            at = next;
        }
        trace.push(TraceStep {
            step: 0,
            walker,
            proposed: next as u64,
            accepted,
            current: Some(at),
        });
    }
    trace
}

fn run_walks(
    g: &Graph,
    seeds: &[VertexId],
    steps: usize,
    seed: u64,
    method: SampleMethod,
) -> Result<SampleTrace> {
    check_walk_seeds(g, seeds)?;
    let corrected = method == SampleMethod::Mhrw;
    let walks: Vec<Vec<TraceStep>> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &s)| walk(g, s, steps, seed, i, corrected))
        .collect();
    let mut all: Vec<TraceStep> = walks.into_iter().flatten().collect();
    for (i, s) in all.iter_mut().enumerate() {
        s.step = i;
    }
    let visited = all.iter().filter_map(|s| s.current).collect();
    Ok(SampleTrace {
        method,
        seed,
        visited,
        steps: all,
    })
}

/// Metropolis-Hastings random walks, one per seed vertex, each taking
/// `steps` steps. A proposal from `v` to a uniform neighbor `w` is accepted
/// with probability `min(1, deg(v) / deg(w))`; on rejection the walker stays
/// and the step still counts. Walks run in parallel on independent streams.
pub fn mhrw_sample(g: &Graph, seeds: &[VertexId], steps: usize, seed: u64) -> Result<SampleTrace> {
    run_walks(g, seeds, steps, seed, SampleMethod::Mhrw)
}

/// Simple random walks with no correction, for comparison with
/// [`mhrw_sample`]. Their stationary distribution is proportional to degree.
pub fn random_walk_sample(
    g: &Graph,
    seeds: &[VertexId],
    steps: usize,
    seed: u64,
) -> Result<SampleTrace> {
    run_walks(g, seeds, steps, seed, SampleMethod::RandomWalk)
}

/// `count` distinct vertices of positive degree, chosen uniformly.
pub fn choose_walk_seeds(g: &Graph, count: usize, seed: u64) -> Result<Vec<VertexId>> {
    let candidates: Vec<VertexId> = (0..g.node_count())
        .filter(|&v| !g.neighbors(v).is_empty())
        .collect();
    if count == 0 || count > candidates.len() {
        return Err(Error::invalid(format!(
            "cannot choose {count} walk seeds from {} non-isolated vertices",
            candidates.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<VertexId> = index::sample(&mut rng, candidates.len(), count)
        .into_iter()
        .map(|i| candidates[i])
        .collect();
    picked.sort_unstable();
    Ok(picked)
}

/// What a crawler querying `vertices` would record: one `ego friend` pair
/// for every neighbor of every queried vertex.
pub fn ego_edges(g: &Graph, vertices: &[VertexId]) -> Vec<(VertexId, VertexId)> {
    vertices
        .iter()
        .flat_map(|&v| g.neighbors(v).iter().map(move |&w| (v, w)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BiasReport {
    pub samples: usize,
    pub sample_mean_degree: f64,
    pub population_mean_degree: f64,
    /// `(sample - population) / population`
    pub relative_bias: f64,
}

/// Mean degree over the trace's visited sequence against the population.
pub fn bias_report(g: &Graph, trace: &SampleTrace) -> Result<BiasReport> {
    if trace.visited.is_empty() {
        return Err(Error::Empty("trace visited no vertices"));
    }
    let population = g.mean_degree();
    if population == 0.0 {
        return Err(Error::EdgelessGraph);
    }
    let mut total = 0usize;
    for &v in &trace.visited {
        total += g.degree(v)?;
    }
    let sample = total as f64 / trace.visited.len() as f64;
    Ok(BiasReport {
        samples: trace.visited.len(),
        sample_mean_degree: sample,
        population_mean_degree: population,
        relative_bias: (sample - population) / population,
    })
}
