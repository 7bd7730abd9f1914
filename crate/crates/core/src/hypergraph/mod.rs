//! Hypergraphs, Steiner systems and vertex partitions.
//!
//! Vertices are 1-based. Vertex sets are stored as 64-bit masks, so every
//! structure in this module is limited to [`MAX_VERTICES`] vertices.

mod design;
mod search;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use design::{builtin_fano, builtin_sqs8, builtin_sts7, complement_blocks, DesignError, SteinerSystem};
pub use search::{chromatic_number, is_colourable, is_coverable, ColourError, Colourability, Coverability};

/// Largest vertex count representable by [`VertexSet`].
pub const MAX_VERTICES: usize = 64;

/// A set of 1-based vertices packed into a `u64` (bit `i - 1` is vertex `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The set `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "vertex count {n} exceeds {MAX_VERTICES}");
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    /// Builds a set from 1-based vertex labels. Returns `None` if a label is
    /// zero or larger than [`MAX_VERTICES`].
    pub fn try_from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Option<Self> {
        let mut bits = 0u64;
        for v in vertices {
            if v == 0 || v > MAX_VERTICES {
                return None;
            }
            bits |= 1 << (v - 1);
        }
        Some(VertexSet(bits))
    }

    /// Panicking variant of [`VertexSet::try_from_vertices`], for literals.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        Self::try_from_vertices(vertices).expect("vertex label out of range")
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, vertex: usize) -> bool {
        (1..=MAX_VERTICES).contains(&vertex) && self.0 & (1 << (vertex - 1)) != 0
    }

    pub fn insert(&mut self, vertex: usize) {
        self.0 |= 1 << (vertex - 1);
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest vertex label in the set, or 0 when empty.
    pub fn max_vertex(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Iterates the 1-based vertices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i + 1)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for VertexSet {
    /// Size first, then lexicographic on the sorted vertex lists.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let vertices = Vec::<usize>::deserialize(deserializer)?;
        VertexSet::try_from_vertices(vertices.iter().copied())
            .ok_or_else(|| serde::de::Error::custom(format!("vertex out of range 1..={MAX_VERTICES}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("vertex count must be between 1 and {MAX_VERTICES}, got {0}")]
    VertexCount(usize),
    #[error("edge {0} is empty")]
    EmptyEdge(usize),
    #[error("edge {edge} uses vertex {vertex} outside 1..={vertex_count}")]
    VertexOutOfRange { edge: usize, vertex: usize, vertex_count: usize },
    #[error("duplicate edge {0}")]
    DuplicateEdge(VertexSet),
    #[error("vertex {0} lies in no edge")]
    UncoveredVertex(usize),
}

/// A hypergraph `(V, E)` with `V = {1..vertex_count}`.
///
/// Edges are nonempty, distinct, and their union is all of `V`. They are
/// kept in canonical order (size, then lexicographic).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    vertex_count: usize,
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    pub fn new(vertex_count: usize, edges: Vec<VertexSet>) -> Result<Self, HypergraphError> {
        if vertex_count == 0 || vertex_count > MAX_VERTICES {
            return Err(HypergraphError::VertexCount(vertex_count));
        }
        let full = VertexSet::full(vertex_count);
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        let mut union = VertexSet::EMPTY;
        for (i, &e) in edges.iter().enumerate() {
            if e.is_empty() {
                return Err(HypergraphError::EmptyEdge(i));
            }
            if !e.is_subset(full) {
                return Err(HypergraphError::VertexOutOfRange { edge: i, vertex: e.max_vertex(), vertex_count });
            }
            if !seen.insert(e) {
                return Err(HypergraphError::DuplicateEdge(e));
            }
            union = union.union(e);
        }
        if let Some(v) = (1..=vertex_count).find(|&v| !union.contains(v)) {
            return Err(HypergraphError::UncoveredVertex(v));
        }
        let mut edges = edges;
        edges.sort();
        Ok(Hypergraph { vertex_count, edges })
    }

    /// Builds from 1-based vertex lists, checking ranges before packing.
    pub fn from_edge_lists(vertex_count: usize, edges: &[Vec<usize>]) -> Result<Self, HypergraphError> {
        let mut packed = Vec::with_capacity(edges.len());
        for (i, edge) in edges.iter().enumerate() {
            if let Some(&v) = edge.iter().find(|&&v| v == 0 || v > vertex_count) {
                return Err(HypergraphError::VertexOutOfRange { edge: i, vertex: v, vertex_count });
            }
            packed.push(VertexSet::from_vertices(edge.iter().copied()));
        }
        Hypergraph::new(vertex_count, packed)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count)
    }

    /// Number of edges containing `vertex`.
    pub fn degree(&self, vertex: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(vertex)).count()
    }

    /// Minimum edge cardinality, written τ(H).
    pub fn tau(&self) -> usize {
        self.edges.iter().map(|e| e.len()).min().unwrap_or(0)
    }

    /// Returns a copy without the edge at `index`, if the result is still a
    /// valid hypergraph.
    pub fn without_edge(&self, index: usize) -> Result<Self, HypergraphError> {
        let mut edges = self.edges.clone();
        edges.remove(index);
        Hypergraph::new(self.vertex_count, edges)
    }
}

/// Free-function form of [`Hypergraph::tau`].
pub fn tau(h: &Hypergraph) -> usize {
    h.tau()
}

/// A partition of `{1..vertex_count}` into disjoint nonempty classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    classes: Vec<VertexSet>,
}

impl Partition {
    /// Builds a partition from a class assignment (`assignment[i]` is the
    /// class of vertex `i + 1`). Classes are numbered in first-use order;
    /// unused class numbers are dropped.
    pub fn from_assignment(assignment: &[usize]) -> Self {
        let mut classes: Vec<VertexSet> = Vec::new();
        let mut index_of = std::collections::HashMap::new();
        for (i, &c) in assignment.iter().enumerate() {
            let next = index_of.len();
            let slot = *index_of.entry(c).or_insert(next);
            if slot == classes.len() {
                classes.push(VertexSet::EMPTY);
            }
            classes[slot].insert(i + 1);
        }
        Partition { classes }
    }

    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// True if the classes are disjoint, nonempty and cover `{1..n}`.
    pub fn is_partition_of(&self, vertex_count: usize) -> bool {
        let mut union = VertexSet::EMPTY;
        for &c in &self.classes {
            if c.is_empty() || c.intersects(union) {
                return false;
            }
            union = union.union(c);
        }
        union == VertexSet::full(vertex_count)
    }

    /// Every edge meets every class.
    pub fn covers(&self, h: &Hypergraph) -> bool {
        self.is_partition_of(h.vertex_count())
            && h.edges().iter().all(|&e| self.classes.iter().all(|&c| e.intersects(c)))
    }

    /// No edge lies inside a single class.
    pub fn colours(&self, h: &Hypergraph) -> bool {
        self.is_partition_of(h.vertex_count())
            && h.edges().iter().all(|&e| self.classes.iter().all(|&c| !e.is_subset(c)))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.classes.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_set_basics() {
        let s = VertexSet::from_vertices([3, 1, 7]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_vec(), vec![1, 3, 7]);
        assert!(s.contains(7) && !s.contains(2) && !s.contains(0));
        assert_eq!(s.max_vertex(), 7);
        assert_eq!(VertexSet::full(64).len(), 64);
        assert!(VertexSet::try_from_vertices([0]).is_none());
        assert!(VertexSet::try_from_vertices([65]).is_none());
        assert_eq!(s.to_string(), "{1,3,7}");
    }

    #[test]
    fn canonical_edge_order() {
        let a = VertexSet::from_vertices([1, 2]);
        let b = VertexSet::from_vertices([1, 3]);
        let c = VertexSet::from_vertices([4]);
        let mut v = vec![b, a, c];
        v.sort();
        assert_eq!(v, vec![c, a, b]);
    }

    #[test]
    fn hypergraph_invariants() {
        assert!(matches!(Hypergraph::new(3, vec![]), Err(HypergraphError::UncoveredVertex(1))));
        assert!(matches!(
            Hypergraph::from_edge_lists(3, &[vec![1, 2], vec![4]]),
            Err(HypergraphError::VertexOutOfRange { vertex: 4, .. })
        ));
        assert!(matches!(
            Hypergraph::from_edge_lists(2, &[vec![1, 2], vec![2, 1]]),
            Err(HypergraphError::DuplicateEdge(_))
        ));
        assert!(matches!(Hypergraph::new(2, vec![VertexSet::EMPTY]), Err(HypergraphError::EmptyEdge(0))));
        assert!(matches!(Hypergraph::new(0, vec![]), Err(HypergraphError::VertexCount(0))));
    }

    #[test]
    fn tau_examples() {
        let h = Hypergraph::from_edge_lists(2, &[vec![1], vec![1, 2]]).unwrap();
        assert_eq!(tau(&h), 1);
        assert_eq!(builtin_fano().hypergraph().tau(), 3);
        assert_eq!(builtin_sqs8().hypergraph().tau(), 4);
    }

    #[test]
    fn partition_from_assignment_uses_first_use_order() {
        let p = Partition::from_assignment(&[2, 0, 2, 5]);
        assert_eq!(
            p.classes(),
            &[VertexSet::from_vertices([1, 3]), VertexSet::from_vertices([2]), VertexSet::from_vertices([4])]
        );
        assert!(p.is_partition_of(4));
        assert!(!p.is_partition_of(5));
    }
}
