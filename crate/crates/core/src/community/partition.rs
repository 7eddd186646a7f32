use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::graph::VertexId;

/// Hard assignment of every vertex to one community, with dense community
/// ids in `[0, community_count)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    assignment: Vec<usize>,
    community_count: usize,
}

impl Partition {
    /// Relabels arbitrary per-vertex labels densely, in order of first
    /// appearance along the vertex ids.
    pub fn from_labels<T: Hash + Eq + Copy>(labels: &[T]) -> Self {
        let mut ids: HashMap<T, usize> = HashMap::new();
        let assignment = labels
            .iter()
            .map(|label| {
                let next = ids.len();
                *ids.entry(*label).or_insert(next)
            })
            .collect();
        Partition {
            assignment,
            community_count: ids.len(),
        }
    }

    /// Wraps an assignment that is already dense.
    pub fn from_dense(assignment: Vec<usize>) -> Result<Self> {
        let community_count = assignment.iter().max().map_or(0, |&c| c + 1);
        let mut used = vec![false; community_count];
        for &c in &assignment {
            used[c] = true;
        }
        if let Some(c) = used.iter().position(|u| !u) {
            return Err(Error::invalid(format!("community id {c} is unused")));
        }
        Ok(Partition {
            assignment,
            community_count,
        })
    }

    pub fn singletons(node_count: usize) -> Self {
        Partition {
            assignment: (0..node_count).collect(),
            community_count: node_count,
        }
    }

    /// Every vertex in one community (no community at all when empty).
    pub fn whole(node_count: usize) -> Self {
        Partition {
            assignment: vec![0; node_count],
            community_count: usize::from(node_count > 0),
        }
    }

    /// Number of vertices covered.
    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn community_count(&self) -> usize {
        self.community_count
    }

    pub fn community_of(&self, v: VertexId) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Size of each community, indexed by community id.
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.community_count];
        for &c in &self.assignment {
            sizes[c] += 1;
        }
        sizes
    }

    pub fn members(&self) -> Vec<Vec<VertexId>> {
        let mut members = vec![Vec::new(); self.community_count];
        for (v, &c) in self.assignment.iter().enumerate() {
            members[c].push(v);
        }
        members
    }

    /// True when every community of `self` lies inside one community of
    /// `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.len() != coarser.len() {
            return false;
        }
        let mut image = vec![usize::MAX; self.community_count];
        for (v, &c) in self.assignment.iter().enumerate() {
            let target = coarser.assignment[v];
            if image[c] == usize::MAX {
                image[c] = target;
            } else if image[c] != target {
                return false;
            }
        }
        true
    }

    pub(crate) fn check_covers(&self, node_count: usize) -> Result<()> {
        if self.len() == node_count {
            Ok(())
        } else {
            Err(Error::PartitionMismatch {
                expected: node_count,
                found: self.len(),
            })
        }
    }
}

/// One level of the Louvain hierarchy, expressed over the original vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Level {
    pub partition: Partition,
    pub modularity: f64,
}

/// Successively coarser partitions; the last level has the highest
/// modularity.
#[derive(Clone, Debug, PartialEq)]
pub struct Dendrogram {
    levels: Vec<Level>,
}

impl Dendrogram {
    pub(crate) fn new(levels: Vec<Level>) -> Self {
        assert!(!levels.is_empty(), "a dendrogram has at least one level");
        Dendrogram { levels }
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> Option<&Level> {
        self.levels.get(k)
    }

    pub fn top(&self) -> &Level {
        self.levels.last().expect("non-empty")
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}
