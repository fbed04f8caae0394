//! Seeded random walks on networks and statistics of their trajectories.

mod cuts;
mod excursion;
mod pass_hit;
mod passes;
mod path;
mod walker;

pub use cuts::{cut_record, cut_times, cutpoints, CutRecord};
pub use excursion::{sample_conditioned_excursion, sample_conditioned_excursion_with};
pub use pass_hit::{pass_hit_statistics, PassHitStats};
pub use passes::{
    detect_passes, linking_census, pass_window, passes_in_window, simulate_linking_census, CensusParams, LinkStats, LinkTracker,
    PassRecord,
};
pub use path::{path_subgraph, PathSubgraph};
pub use walker::{simulate_walk, StopCondition, StopReason, WalkTrace, Walker, MAX_STORED_STEPS};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WalkError {
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("stop layer given but the network has no layer labels")]
    NoLayers,
    #[error("lookahead window {window} must be below the horizon {horizon}")]
    WindowTooLarge { window: u64, horizon: u64 },
    #[error("the walk ends where it started; no separation is defined")]
    ClosedTrace,
    #[error("trace vertex sequence was not retained")]
    NoVertexSequence,
    #[error("excursion height must be at least 2, got {0}")]
    ExcursionTooShort(u32),
    #[error("laziness must lie in [0, 1), got {0}")]
    BadLaziness(f64),
    #[error("pass window around {j} with exponent {beta} has a negative lower end")]
    BadWindow { j: u32, beta: f64 },
    #[error("pass window top {top} exceeds the last layer {last}")]
    WindowBeyondGraph { top: u32, last: u32 },
    #[error("need at least one replica")]
    NoReplicas,
    #[error("empty layer range")]
    EmptyRange,
    #[error("marked vertex {0} lies outside the pass window")]
    MarkedOutsideWindow(usize),
}
