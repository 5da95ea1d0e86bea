//! Weak independent sets in hypergraphs under the LOCAL model.
//!
//! The crate is organized around five pieces:
//!
//! * [`hypergraph`] — the immutable hypergraph representation, derived
//!   structures (underlying graph, induced sub-hypergraphs, distances),
//!   seeded random generators, and the graph-to-hypergraph lifting
//!   constructions with their projections back.
//! * [`localsim`] — a synchronous round-based message-passing engine:
//!   per-vertex state machines exchange messages with 1-hop neighbors,
//!   and the engine counts rounds and messages.
//! * [`coloring`] — distributed coloring subroutines: iterated palette
//!   reduction, greedy (deg+1) recoloring by color class, and defective
//!   edge coloring.
//! * [`algorithms`] — the independent-set, ruling-set, and matching
//!   algorithms, built as node programs over the simulator.
//! * [`verify`] — exact local-checkability predicates for every output
//!   object, plus exhaustive brute-force search for small instances.
//!
//! Everything is deterministic in the provided 64-bit seeds.

pub mod algorithms;
pub mod coloring;
pub mod hypergraph;
pub mod localsim;
mod par;
pub mod rng;
pub mod verify;

pub use hypergraph::{GeneratorConfig, Hypergraph, VertexId, VertexSet};
