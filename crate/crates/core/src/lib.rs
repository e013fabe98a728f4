//! Streaming balanced graph partitioning on random graphs.
//!
//! Vertices arrive one at a time together with their edges to vertices that
//! arrived earlier, and each one is placed permanently into one of `k`
//! capacity-bounded partitions. The crate provides:
//!
//! * [`graph`]: G(n,p), planted-partition and cycle generators, stream orders
//!   and the one-pass vertex stream.
//! * [`partition`]: the greedy streaming partitioners (arg max, proportional,
//!   power-weighted, load-weighted) and a random hashing baseline.
//! * [`urn`]: finite Polya urn simulation and the coupled
//!   generate-while-partitioning processes.
//! * [`analysis`]: closed-form bounds and thresholds.
//! * [`metrics`]: edge cut, cluster recovery and balance measurements.
//! * [`harness`]: presets and a deterministic CSV experiment runner.

pub mod analysis;
pub mod error;
pub mod graph;
pub mod harness;
pub mod metrics;
pub mod partition;
pub mod rng;
pub mod stats;
pub mod urn;

pub use error::{Error, Result};
pub use graph::{Graph, PlantedParams, StreamEvent, StreamOrder};
pub use partition::{Algorithm, PartitionState, PartitionerConfig};
