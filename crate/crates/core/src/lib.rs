//! Streaming MAX-CUT value estimation with noisy vertex-label predictions.
//!
//! A prediction oracle labels each vertex `+` or `-`, agreeing with a fixed
//! optimal cut with probability `1/2 + eps`. The estimators read a graph stream
//! once and report a MAX-CUT estimate:
//!
//! * [`estimators::alg1_run`] counts edges with differently labelled endpoints.
//! * [`estimators::alg2_run`] handles random-order streams with exact counters.
//! * [`estimators::alg3_run`] handles arbitrary order with CountMin and a reservoir.
//! * [`estimators::alg4_run`] handles insertions and deletions with l0-samplers.
//!
//! [`harness::run_experiment`] runs seeded trials against planted instances.

pub mod error;
pub mod estimators;
pub mod graph;
pub mod harness;
pub mod oracle;
pub mod seed;
pub mod sketch;

pub use error::{Error, Result};
pub use estimators::{EstimateReport, EstimatorParams};
pub use graph::{Edge, EdgeEvent, Graph, GraphStream, Label, PlantedInstance, StreamKind, VertexId};
pub use oracle::{NoisyOracle, PredictionOracle};
