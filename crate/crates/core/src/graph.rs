//! Compressed adjacency storage for simple undirected graphs and the
//! weighted graphs produced by community aggregation.

use serde::Serialize;

use crate::error::{Error, Result};

pub type VertexId = usize;

/// Immutable simple undirected graph in compressed sparse row form.
///
/// Vertex ids are dense in `[0, node_count)`. Every neighbor list is strictly
/// ascending, so two lists can be merged or intersected without hashing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
    edge_count: usize,
}

impl Graph {
    pub fn empty() -> Self {
        Graph {
            offsets: vec![0],
            targets: Vec::new(),
            edge_count: 0,
        }
    }

    /// Builds a graph over `node_count` dense vertices. Self-loops are dropped
    /// and duplicate pairs (in either orientation) collapse to one edge.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut pairs = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= node_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        node_count,
                    });
                }
            }
            if u != v {
                pairs.push((u.min(v), u.max(v)));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Self::from_canonical(node_count, &pairs))
    }

    /// `pairs` must be sorted, unique, with `u < v < node_count`.
    fn from_canonical(node_count: usize, pairs: &[(VertexId, VertexId)]) -> Self {
        let mut offsets = vec![0usize; node_count + 1];
        for &(u, v) in pairs {
            offsets[u + 1] += 1;
            offsets[v + 1] += 1;
        }
        for i in 0..node_count {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut targets = vec![0; 2 * pairs.len()];
        // Iterating canonical pairs in order fills each list ascending: the
        // lower neighbors of v arrive (as pair (u, v)) before any pair (v, w).
        for &(u, v) in pairs {
            targets[cursor[u]] = v;
            cursor[u] += 1;
            targets[cursor[v]] = u;
            cursor[v] += 1;
        }
        let graph = Graph {
            offsets,
            targets,
            edge_count: pairs.len(),
        };
        debug_assert!(graph.check_invariants().is_ok());
        graph
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.node_count() == 0
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.offsets[v + 1] - self.offsets[v])
    }

    /// Sorted neighbor list of `v`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degrees(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    pub fn mean_degree(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            2.0 * self.edge_count as f64 / self.node_count() as f64
        }
    }

    /// Canonical edge enumeration: every edge once as `(u, v)` with `u < v`,
    /// ordered by `u` then `v`. Per-edge data elsewhere is aligned with it.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            let nbrs = self.neighbors(u);
            let start = nbrs.partition_point(|&w| w <= u);
            nbrs[start..].iter().map(move |&v| (u, v))
        })
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.node_count() && self.neighbors(u).binary_search(&v).is_ok()
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                node_count: self.node_count(),
            })
        }
    }

    /// Verifies simplicity, symmetry, sortedness and the handshake lemma.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.node_count();
        let degree_sum: usize = self.degrees().sum();
        if degree_sum != 2 * self.edge_count {
            return Err(Error::Invariant(format!(
                "degree sum {degree_sum} != 2 x {} edges",
                self.edge_count
            )));
        }
        for u in 0..n {
            let nbrs = self.neighbors(u);
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Invariant(format!(
                    "neighbors of {u} are not strictly ascending"
                )));
            }
            for &v in nbrs {
                if v == u || v >= n {
                    return Err(Error::Invariant(format!("bad neighbor {v} of {u}")));
                }
                if self.neighbors(v).binary_search(&u).is_err() {
                    return Err(Error::Invariant(format!("edge {u}-{v} is not symmetric")));
                }
            }
        }
        Ok(())
    }
}

/// Counts collected while building a graph from raw pairs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BuildStats {
    pub input_pairs: usize,
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
}

/// A graph built from arbitrary integer ids, together with the table mapping
/// each dense vertex back to its original id.
///
/// Dense ids follow ascending original id, so the table is sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuiltGraph {
    pub graph: Graph,
    labels: Vec<u64>,
    pub stats: BuildStats,
}

impl BuiltGraph {
    pub fn label(&self, v: VertexId) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn index_of(&self, label: u64) -> Option<VertexId> {
        self.labels.binary_search(&label).ok()
    }

    /// Edges in canonical order, expressed in original ids.
    pub fn labeled_edges(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.graph
            .edges()
            .map(|(u, v)| (self.labels[u], self.labels[v]))
    }
}

/// Builds a simple graph from raw id pairs.
///
/// Self-loops are dropped (and counted), duplicate edges in either orientation
/// are collapsed, and ids are remapped to `[0, n)` in ascending order. An id
/// that occurs only in self-loops does not become a vertex.
pub fn build_graph(edges: &[(u64, u64)]) -> BuiltGraph {
    let mut pairs: Vec<(u64, u64)> = Vec::with_capacity(edges.len());
    let mut self_loops = 0;
    for &(u, v) in edges {
        if u == v {
            self_loops += 1;
        } else {
            pairs.push((u.min(v), u.max(v)));
        }
    }
    pairs.sort_unstable();
    let before = pairs.len();
    pairs.dedup();
    let duplicates = before - pairs.len();
    if self_loops > 0 {
        log::warn!("dropped {self_loops} self-loop(s)");
    }

    let mut labels: Vec<u64> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
    labels.sort_unstable();
    labels.dedup();

    let index = |x: u64| labels.binary_search(&x).expect("label collected above");
    // Remapping is monotone, so canonical order survives it.
    let dense: Vec<(VertexId, VertexId)> =
        pairs.iter().map(|&(u, v)| (index(u), index(v))).collect();
    let graph = Graph::from_canonical(labels.len(), &dense);

    BuiltGraph {
        graph,
        labels,
        stats: BuildStats {
            input_pairs: edges.len(),
            self_loops_dropped: self_loops,
            duplicates_dropped: duplicates,
        },
    }
}

/// Read access shared by [`Graph`] (unit weights) and [`WeightedGraph`].
///
/// `strength(v)` is the weighted degree, in which a self-loop of weight `w`
/// contributes `2w`; `total_weight` is the edge mass `m` with each edge and
/// each self-loop counted once, so `sum(strength) == 2m`.
pub trait WeightedAdjacency {
    fn node_count(&self) -> usize;
    fn total_weight(&self) -> f64;
    fn strength(&self, v: VertexId) -> f64;
    fn self_loop(&self, v: VertexId) -> f64;
    /// Non-loop neighbors of `v` with edge weights.
    fn weighted_neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, f64)> + '_;
}

impl WeightedAdjacency for Graph {
    fn node_count(&self) -> usize {
        Graph::node_count(self)
    }

    fn total_weight(&self) -> f64 {
        self.edge_count as f64
    }

    fn strength(&self, v: VertexId) -> f64 {
        (self.offsets[v + 1] - self.offsets[v]) as f64
    }

    fn self_loop(&self, _v: VertexId) -> f64 {
        0.0
    }

    fn weighted_neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, f64)> + '_ {
        self.neighbors(v).iter().map(|&w| (w, 1.0))
    }
}

/// Undirected graph with non-negative edge weights and per-vertex self-loop
/// weights, as produced by collapsing communities into single vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
    weights: Vec<f64>,
    self_loops: Vec<f64>,
    strengths: Vec<f64>,
    total_weight: f64,
}

impl WeightedGraph {
    /// Assembles a weighted graph. Parallel entries for the same unordered
    /// pair are summed; `(v, v, w)` entries are added to the self-loop of `v`.
    pub fn from_parts(
        node_count: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId, f64)>,
        mut self_loops: Vec<f64>,
    ) -> Result<Self> {
        if self_loops.len() != node_count {
            return Err(Error::invalid(format!(
                "{} self-loop weights for {node_count} vertices",
                self_loops.len()
            )));
        }
        if let Some(w) = self_loops.iter().find(|w| w.is_nan() || **w < 0.0) {
            return Err(Error::invalid(format!("negative self-loop weight {w}")));
        }
        let mut triples = Vec::new();
        for (u, v, w) in edges {
            if u >= node_count || v >= node_count {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    node_count,
                });
            }
            if w.is_nan() || w < 0.0 {
                return Err(Error::invalid(format!("negative edge weight {w}")));
            }
            if u == v {
                self_loops[u] += w;
            } else {
                triples.push((u.min(v), u.max(v), w));
            }
        }
        triples.sort_unstable_by_key(|&(u, v, _)| (u, v));
        let mut merged: Vec<(VertexId, VertexId, f64)> = Vec::with_capacity(triples.len());
        for (u, v, w) in triples {
            match merged.last_mut() {
                Some(last) if last.0 == u && last.1 == v => last.2 += w,
                _ => merged.push((u, v, w)),
            }
        }
        Ok(Self::from_canonical(node_count, &merged, self_loops))
    }

    fn from_canonical(
        node_count: usize,
        triples: &[(VertexId, VertexId, f64)],
        self_loops: Vec<f64>,
    ) -> Self {
        let mut offsets = vec![0usize; node_count + 1];
        for &(u, v, _) in triples {
            offsets[u + 1] += 1;
            offsets[v + 1] += 1;
        }
        for i in 0..node_count {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut targets = vec![0; 2 * triples.len()];
        let mut weights = vec![0.0; 2 * triples.len()];
        let mut strengths: Vec<f64> = self_loops.iter().map(|w| 2.0 * w).collect();
        let mut total_weight: f64 = self_loops.iter().sum();
        for &(u, v, w) in triples {
            targets[cursor[u]] = v;
            weights[cursor[u]] = w;
            cursor[u] += 1;
            targets[cursor[v]] = u;
            weights[cursor[v]] = w;
            cursor[v] += 1;
            strengths[u] += w;
            strengths[v] += w;
            total_weight += w;
        }
        WeightedGraph {
            offsets,
            targets,
            weights,
            self_loops,
            strengths,
            total_weight,
        }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// Weight of the edge `u`-`v`, or 0 when absent. `weight(v, v)` is the
    /// self-loop weight.
    pub fn weight(&self, u: VertexId, v: VertexId) -> f64 {
        if u == v {
            return self.self_loops[u];
        }
        let range = self.offsets[u]..self.offsets[u + 1];
        match self.targets[range.clone()].binary_search(&v) {
            Ok(i) => self.weights[range.start + i],
            Err(_) => 0.0,
        }
    }

    /// Non-loop edges once each as `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, f64)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.weighted_neighbors(u)
                .filter(move |&(v, _)| v > u)
                .map(move |(v, w)| (u, v, w))
        })
    }
}

impl WeightedAdjacency for WeightedGraph {
    fn node_count(&self) -> usize {
        WeightedGraph::node_count(self)
    }

    fn total_weight(&self) -> f64 {
        self.total_weight
    }

    fn strength(&self, v: VertexId) -> f64 {
        self.strengths[v]
    }

    fn self_loop(&self, v: VertexId) -> f64 {
        self.self_loops[v]
    }

    fn weighted_neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, f64)> + '_ {
        let range = self.offsets[v]..self.offsets[v + 1];
        self.targets[range.clone()]
            .iter()
            .copied()
            .zip(self.weights[range].iter().copied())
    }
}

impl From<&Graph> for WeightedGraph {
    fn from(g: &Graph) -> Self {
        let triples: Vec<_> = g.edges().map(|(u, v)| (u, v, 1.0)).collect();
        WeightedGraph::from_canonical(g.node_count(), &triples, vec![0.0; g.node_count()])
    }
}
