//! Seed-derived random streams.
//!
//! Every source of randomness in the crate is a ChaCha stream whose seed is
//! derived from a base seed, a domain tag, and an index. Per-vertex and
//! per-edge streams are therefore independent of scheduling order.

use rand::SeedableRng;

/// The RNG handed to node programs and drivers.
pub type NodeRng = rand_chacha::ChaCha8Rng;

/// Domain tags keeping derived streams disjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamDomain {
    /// One stream per vertex.
    Vertex,
    /// One stream per edge (used for edge-delegated decisions).
    Edge,
    /// One stream per trial of an experiment sweep.
    Trial,
    /// One stream per recursion level or phase of a composite algorithm.
    Level,
    /// Instance generation.
    Generator,
}

impl StreamDomain {
    fn salt(self) -> u64 {
        match self {
            StreamDomain::Vertex => 0x56_45_52_54,
            StreamDomain::Edge => 0x45_44_47_45,
            StreamDomain::Trial => 0x54_52_49_4c,
            StreamDomain::Level => 0x4c_56_4c_53,
            StreamDomain::Generator => 0x47_45_4e_52,
        }
    }
}

/// SplitMix64 finalizer; a cheap bijective mixer.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Derive the seed of the stream `(base, domain, index)`.
pub fn stream_seed(base: u64, domain: StreamDomain, index: u64) -> u64 {
    splitmix64(splitmix64(base ^ domain.salt()).wrapping_add(index))
}

/// Construct the ChaCha stream for `(base, domain, index)`.
pub fn stream_rng(base: u64, domain: StreamDomain, index: u64) -> NodeRng {
    NodeRng::seed_from_u64(stream_seed(base, domain, index))
}
