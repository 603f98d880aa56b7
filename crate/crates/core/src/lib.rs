//! Joint NOMA and instantly decodable network coding scheduling for a
//! single-cell broadcast downlink.
//!
//! The engine is generic over the float type through [`Scalar`]; the aliases
//! at the crate root fix it to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod error;
pub mod graph;
pub mod harness;
pub mod idnc;
pub mod oracle;
pub mod power;
pub mod scalar;
pub mod scheme;
pub mod search;

pub use error::{Error, Result};
pub use harness::{ExperimentConfig, TrialResult};
pub use idnc::{IdncPacket, SideInfo};
pub use scalar::Scalar;
pub use scheme::Scheme;
pub use search::Heuristic;

pub type Receiver = channel::Receiver<f64>;
pub type Topology = channel::Topology<f64>;
pub type TopologyConfig = channel::TopologyConfig<f64>;
pub type PowerAllocation = channel::PowerAllocation<f64>;
pub type ScheduleLayer = idnc::ScheduleLayer<f64>;
pub type ScheduleDecision = idnc::ScheduleDecision<f64>;
pub type IdncGraph = graph::IdncGraph<f64>;
pub type WeightedGraph = graph::WeightedGraph<f64>;
pub type Bottleneck = power::Bottleneck<f64>;
pub type PowerBounds = power::PowerBounds<f64>;
pub type SchemeParams = scheme::SchemeParams<f64>;
pub type SchemeResult = scheme::SchemeResult<f64>;
