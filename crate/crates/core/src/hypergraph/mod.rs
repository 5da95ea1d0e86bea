//! Hypergraph representation and derived structures.
//!
//! Vertices are identified by `0..n-1`. Edges are stored as sorted,
//! duplicate-free vertex lists; duplicate *edges* (two edges with the same
//! member set) are legal and kept distinct by index, which is what the
//! induced-sub-hypergraph recursion and the matching reduction rely on.

mod generate;
mod io;
mod lift;

pub use generate::{generate, validate_against, GeneratorConfig};
pub use io::FormatError;
pub use lift::{
    lift_graph_even_rank, lift_graph_k_copies, project_even_rank_mis, project_k_weak_majority, Lift,
};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Vertex identifier; always less than the owning hypergraph's vertex count.
pub type VertexId = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("edge {index} is empty")]
    EmptyEdge { index: usize },
    #[error("edge {index} contains vertex {vertex} outside 0..{n}")]
    VertexOutOfRange {
        index: usize,
        vertex: VertexId,
        n: usize,
    },
    #[error("edge {index} contains vertex {vertex} more than once")]
    RepeatedVertex { index: usize, vertex: VertexId },
    #[error("infeasible generator config: {0}")]
    InfeasibleConfig(String),
    #[error("expected a rank-2 graph but edge {index} has {size} vertices")]
    NotRank2 { index: usize, size: usize },
    #[error("invalid lift parameter: {0}")]
    BadLiftParameter(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// An immutable hypergraph with incidence and adjacency indexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<VertexId>>,
    rank: usize,
    max_degree: usize,
    vertex_to_edges: Vec<Vec<u32>>,
    neighbors: Vec<Vec<VertexId>>,
}

impl Hypergraph {
    /// Build a hypergraph from raw edges. Edges are sorted internally;
    /// empty edges, out-of-range vertices, and repeated vertices within an
    /// edge are rejected.
    pub fn new(n: usize, edges: Vec<Vec<VertexId>>) -> Result<Self, HypergraphError> {
        let mut sorted_edges = edges;
        for (index, edge) in sorted_edges.iter_mut().enumerate() {
            if edge.is_empty() {
                return Err(HypergraphError::EmptyEdge { index });
            }
            edge.sort_unstable();
            for window in edge.windows(2) {
                if window[0] == window[1] {
                    return Err(HypergraphError::RepeatedVertex {
                        index,
                        vertex: window[0],
                    });
                }
            }
            let last = *edge.last().expect("nonempty");
            if (last as usize) >= n {
                return Err(HypergraphError::VertexOutOfRange {
                    index,
                    vertex: last,
                    n,
                });
            }
        }

        let rank = sorted_edges.iter().map(Vec::len).max().unwrap_or(0);
        let mut vertex_to_edges = vec![Vec::new(); n];
        for (index, edge) in sorted_edges.iter().enumerate() {
            for &v in edge {
                vertex_to_edges[v as usize].push(index as u32);
            }
        }
        let max_degree = vertex_to_edges.iter().map(Vec::len).max().unwrap_or(0);

        let mut neighbors = vec![Vec::new(); n];
        for edge in &sorted_edges {
            for &v in edge {
                for &u in edge {
                    if u != v {
                        neighbors[v as usize].push(u);
                    }
                }
            }
        }
        for list in &mut neighbors {
            list.sort_unstable();
            list.dedup();
        }

        Ok(Hypergraph {
            n,
            edges: sorted_edges,
            rank,
            max_degree,
            vertex_to_edges,
            neighbors,
        })
    }

    /// A hypergraph with `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Self {
        Hypergraph::new(n, Vec::new()).expect("edgeless is always valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Maximum edge size actually present (0 for an edgeless hypergraph).
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Maximum number of edges containing any one vertex.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn edges(&self) -> &[Vec<VertexId>] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &[VertexId] {
        &self.edges[index]
    }

    /// Indexes of the edges containing `v`.
    pub fn incident_edges(&self, v: VertexId) -> &[u32] {
        &self.vertex_to_edges[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.vertex_to_edges[v as usize].len()
    }

    /// Vertices sharing at least one edge with `v`, sorted, without `v`.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[v as usize]
    }

    /// Maximum degree of the underlying graph.
    pub fn underlying_max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// True when every edge has size equal to the rank. An edgeless
    /// hypergraph is vacuously uniform.
    pub fn is_uniform(&self) -> bool {
        self.edges.iter().all(|e| e.len() == self.rank)
    }

    /// The rank-2 hypergraph obtained by replacing each edge with a clique
    /// on its members. Pairs are deduplicated; size-1 edges contribute
    /// nothing.
    pub fn underlying_graph(&self) -> Hypergraph {
        let mut pairs: Vec<Vec<VertexId>> = Vec::new();
        for edge in &self.edges {
            for i in 0..edge.len() {
                for j in i + 1..edge.len() {
                    pairs.push(vec![edge[i], edge[j]]);
                }
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        Hypergraph::new(self.n, pairs).expect("pairs are valid edges")
    }

    /// The sub-hypergraph induced by `keep`: vertices outside `keep` are
    /// removed from every edge, and edges left empty are dropped. The
    /// second return value maps each induced edge back to its original
    /// index; duplicate member sets arising from distinct originals are
    /// retained.
    ///
    /// Vertex identifiers are preserved (the result still has `n` vertex
    /// slots), so sets and distances compose across inductions.
    pub fn induced(&self, keep: &VertexSet) -> (Hypergraph, Vec<usize>) {
        assert_eq!(keep.universe(), self.n, "vertex set universe mismatch");
        let mut edges = Vec::new();
        let mut origin = Vec::new();
        for (index, edge) in self.edges.iter().enumerate() {
            let trimmed: Vec<VertexId> =
                edge.iter().copied().filter(|&v| keep.contains(v)).collect();
            if !trimmed.is_empty() {
                edges.push(trimmed);
                origin.push(index);
            }
        }
        let sub = Hypergraph::new(self.n, edges).expect("filtered edges remain valid");
        (sub, origin)
    }

    /// BFS distance between `u` and `v` over the underlying graph.
    /// `None` when no path exists.
    pub fn distance(&self, u: VertexId, v: VertexId) -> Option<usize> {
        assert!(
            (u as usize) < self.n && (v as usize) < self.n,
            "vertex out of range"
        );
        if u == v {
            return Some(0);
        }
        let mut dist = vec![usize::MAX; self.n];
        dist[u as usize] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x as usize];
            for &y in self.neighbors(x) {
                if dist[y as usize] == usize::MAX {
                    if y == v {
                        return Some(d + 1);
                    }
                    dist[y as usize] = d + 1;
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// BFS distance from every vertex to the nearest member of `sources`.
    /// Unreachable vertices get `usize::MAX`.
    pub fn distances_from_set(&self, sources: &VertexSet) -> Vec<usize> {
        assert_eq!(sources.universe(), self.n, "vertex set universe mismatch");
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for v in sources.iter() {
            dist[v as usize] = 0;
            queue.push_back(v);
        }
        while let Some(x) = queue.pop_front() {
            let d = dist[x as usize];
            for &y in self.neighbors(x) {
                if dist[y as usize] == usize::MAX {
                    dist[y as usize] = d + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }
}

/// A set of vertices of a fixed universe `0..n`, with a label recording
/// which algorithm produced it. Equality ignores the label.
#[derive(Debug, Clone)]
pub struct VertexSet {
    n: usize,
    bits: Vec<u64>,
    origin: String,
}

impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bits == other.bits
    }
}
impl Eq for VertexSet {}

impl VertexSet {
    pub fn empty(n: usize, origin: &str) -> Self {
        VertexSet {
            n,
            bits: vec![0; n.div_ceil(64)],
            origin: origin.to_string(),
        }
    }

    pub fn full(n: usize, origin: &str) -> Self {
        let mut set = VertexSet::empty(n, origin);
        for v in 0..n {
            set.insert(v as VertexId);
        }
        set
    }

    pub fn from_members<I: IntoIterator<Item = VertexId>>(
        n: usize,
        members: I,
        origin: &str,
    ) -> Self {
        let mut set = VertexSet::empty(n, origin);
        for v in members {
            set.insert(v);
        }
        set
    }

    /// Build a set from a membership bitmask over `0..n` (test helper for
    /// exhaustive enumeration; requires `n <= 64`).
    pub fn from_bitmask(n: usize, mask: u64, origin: &str) -> Self {
        assert!(n <= 64);
        let mut set = VertexSet::empty(n, origin);
        for v in 0..n {
            if mask >> v & 1 == 1 {
                set.insert(v as VertexId);
            }
        }
        set
    }

    /// Size of the universe this set draws from.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn origin(&self) -> &str {
        &self.origin
    }

    pub fn insert(&mut self, v: VertexId) {
        assert!((v as usize) < self.n, "vertex out of range");
        self.bits[v as usize / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: VertexId) {
        assert!((v as usize) < self.n, "vertex out of range");
        self.bits[v as usize / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: VertexId) -> bool {
        (v as usize) < self.n && self.bits[v as usize / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n as VertexId).filter(|&v| self.contains(v))
    }

    pub fn members(&self) -> Vec<VertexId> {
        self.iter().collect()
    }

    /// Number of members of `edge` in this set.
    pub fn count_in(&self, edge: &[VertexId]) -> usize {
        edge.iter().filter(|&&v| self.contains(v)).count()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("VertexSet", 3)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("members", &self.members())?;
        s.serialize_field("origin", &self.origin)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            members: Vec<VertexId>,
            origin: String,
        }
        let raw = Raw::deserialize(deserializer)?;
        for &v in &raw.members {
            if (v as usize) >= raw.n {
                return Err(serde::de::Error::custom(format!(
                    "member {v} outside universe 0..{}",
                    raw.n
                )));
            }
        }
        Ok(VertexSet::from_members(raw.n, raw.members, &raw.origin))
    }
}
