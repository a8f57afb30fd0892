//! Lattice networks with shortcuts: a ring of `L` nodes plus long-range
//! edges, with stochastic and deterministic generators, exact distance
//! metrics, local navigation simulators and cost/quality sweeps.

mod error;

pub mod cli;
pub mod deterministic;
pub mod family;
pub mod graph;
pub mod metrics;
pub mod navigation;
pub mod optimize;
pub mod seed;
pub mod stochastic;

pub use error::{Error, Result};
pub use family::GeneratorSpec;
pub use graph::{Network, NetworkBuilder, Node};
pub use metrics::{average_distance, diameter, EnsembleStats, MetricsReport};
pub use navigation::{NavPolicy, TwoLevelMode};
