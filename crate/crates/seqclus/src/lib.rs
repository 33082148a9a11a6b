//! Order-aware co-clustering of symbolic trajectories.
//!
//! A co-cluster pairs a contiguous element sequence with the set of
//! trajectories containing it. The miner greedily extracts co-clusters
//! whose size outweighs their redundancy, one frequency-seeded candidate
//! at a time, then prunes the result down to the statistically relevant
//! ones. The crate also covers the surrounding plumbing: corpus loading,
//! result serialization, summary metrics, a brute-force reference
//! implementation for validation, and a seeded synthetic-corpus generator.
//!
//! Typical use:
//!
//! ```
//! use seqclus::{mine, Dataset, MinerConfig};
//!
//! let corpus = Dataset::from_sequences([
//!     ["home", "coffee", "office"],
//!     ["home", "coffee", "gym"],
//!     ["park", "coffee", "office"],
//! ])
//! .unwrap();
//! let result = mine(&corpus, &MinerConfig::new(5)).unwrap();
//! for cc in &result.coclusters {
//!     println!("{:?} in {} trajectories", corpus.resolve(&cc.seq), cc.tids.len());
//! }
//! ```

pub mod dataset;
pub mod export;
pub mod index;
pub mod ingest;
pub mod metrics;
pub mod miner;
pub mod oracle;
pub mod synth;

pub use dataset::{intern_corpus, CorpusError, Dataset, ElementId, RawTrajectory, Tid, Trajectory};
pub use export::{
    document, read_coclusters, write_alluvial_flows, write_coclusters, CoClusterDocument,
    CoClusterRecord, CorpusSummary,
};
pub use index::{initialize_data, support_of_contiguous, IndexBundle};
pub use ingest::{load_corpus, CorpusFormat, LoadError};
pub use metrics::{report, ResultReport};
pub use miner::{
    cost, cov, max_overlap, mine, prune, CoCluster, MineResult, MinerConfig, Relevance, Statistic,
    StopReason,
};
pub use synth::{generate_corpus, GenSpec, PlantPosition, PlantSpec, PlantTruth};
