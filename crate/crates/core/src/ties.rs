//! Strong/weak tie classification.
//!
//! An edge is a strong tie when both endpoints share a community and a weak
//! tie otherwise.

use std::fmt;

use serde::Serialize;

use crate::community::Partition;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Tie {
    Strong,
    Weak,
}

impl Tie {
    pub fn symbol(self) -> char {
        match self {
            Tie::Strong => 'S',
            Tie::Weak => 'W',
        }
    }

    pub fn from_symbol(c: &str) -> Option<Self> {
        match c {
            "S" => Some(Tie::Strong),
            "W" => Some(Tie::Weak),
            _ => None,
        }
    }
}

impl fmt::Display for Tie {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// One label per edge, aligned with [`Graph::edges`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TieLabeling {
    labels: Vec<Tie>,
    weak_count: usize,
}

impl TieLabeling {
    pub fn from_labels(labels: Vec<Tie>) -> Self {
        let weak_count = labels.iter().filter(|&&t| t == Tie::Weak).count();
        TieLabeling { labels, weak_count }
    }

    pub fn labels(&self) -> &[Tie] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn weak_count(&self) -> usize {
        self.weak_count
    }

    pub fn strong_count(&self) -> usize {
        self.labels.len() - self.weak_count
    }

    fn check_matches(&self, g: &Graph) -> Result<()> {
        if self.len() == g.edge_count() {
            Ok(())
        } else {
            Err(Error::LabelingMismatch(format!(
                "{} labels for {} edges",
                self.len(),
                g.edge_count()
            )))
        }
    }
}

pub fn classify_ties(g: &Graph, p: &Partition) -> Result<TieLabeling> {
    p.check_covers(g.node_count())?;
    let labels = g
        .edges()
        .map(|(u, v)| {
            if p.community_of(u) == p.community_of(v) {
                Tie::Strong
            } else {
                Tie::Weak
            }
        })
        .collect();
    Ok(TieLabeling::from_labels(labels))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NodeTies {
    pub strong: usize,
    pub weak: usize,
}

impl NodeTies {
    pub fn degree(&self) -> usize {
        self.strong + self.weak
    }
}

pub fn tie_counts_per_node(g: &Graph, t: &TieLabeling) -> Result<Vec<NodeTies>> {
    t.check_matches(g)?;
    let mut counts = vec![NodeTies::default(); g.node_count()];
    for ((u, v), tie) in g.edges().zip(t.labels()) {
        for w in [u, v] {
            match tie {
                Tie::Strong => counts[w].strong += 1,
                Tie::Weak => counts[w].weak += 1,
            }
        }
    }
    Ok(counts)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TieRatio {
    pub weak_fraction: f64,
    pub strong_fraction: f64,
}

pub fn tie_ratio(t: &TieLabeling) -> Result<TieRatio> {
    if t.is_empty() {
        return Err(Error::Empty("tie labeling has no edges"));
    }
    let weak_fraction = t.weak_count() as f64 / t.len() as f64;
    Ok(TieRatio {
        weak_fraction,
        strong_fraction: t.strong_count() as f64 / t.len() as f64,
    })
}

/// How [`tipping_point`] turns per-node counts into a single degree; written
/// into reports next to the value.
pub const TIPPING_POINT_DEFINITION: &str = "smallest degree k such that, over vertices with \
degree > k, the mean weak-tie count exceeds the mean strong-tie count";

/// Smallest degree `k` above which weak ties dominate on average, or `None`
/// when no such `k` exists. See [`TIPPING_POINT_DEFINITION`].
pub fn tipping_point(counts: &[NodeTies]) -> Option<usize> {
    let max_degree = counts.iter().map(NodeTies::degree).max()?;
    let mut strong_at = vec![0usize; max_degree + 1];
    let mut weak_at = vec![0usize; max_degree + 1];
    for c in counts {
        strong_at[c.degree()] += c.strong;
        weak_at[c.degree()] += c.weak;
    }
    // Both means share the vertex count, so comparing sums is enough.
    let (mut strong_above, mut weak_above) = (0usize, 0usize);
    let mut best = None;
    for k in (0..max_degree).rev() {
        strong_above += strong_at[k + 1];
        weak_above += weak_at[k + 1];
        if weak_above > strong_above {
            best = Some(k);
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DegreeBin {
    pub degree: usize,
    pub vertices: usize,
    pub mean_strong: f64,
    pub mean_weak: f64,
}

/// Mean strong and weak counts for each degree that occurs.
pub fn degree_binned_means(counts: &[NodeTies]) -> Vec<DegreeBin> {
    let mut bins: std::collections::BTreeMap<usize, (usize, usize, usize)> = Default::default();
    for c in counts {
        let e = bins.entry(c.degree()).or_default();
        e.0 += 1;
        e.1 += c.strong;
        e.2 += c.weak;
    }
    bins.into_iter()
        .map(|(degree, (n, s, w))| DegreeBin {
            degree,
            vertices: n,
            mean_strong: s as f64 / n as f64,
            mean_weak: w as f64 / n as f64,
        })
        .collect()
}
