//! Closed-form quantities on line networks, random-walk bounds with exact
//! small-chain oracles, running minima of the return probability, and
//! resistance profiles.

mod bounds;
mod line;
mod minima;
mod resistance;
mod srw;

pub use bounds::{conductance_bound, BoundReport, ConductanceBound};
pub use line::{escape_prob, escape_prob_window, return_prob};
pub use minima::{minima_analysis, MinimaRecord, MinimumRecord};
pub use resistance::{layer_boundaries, resistance_profile};
pub use srw::{chernoff_bound, exact_srw_oracle, srw_bounds, visits_bound, SrwBounds, SrwOracle, MAX_ORACLE_A, MAX_ORACLE_T};

use thiserror::Error;

use crate::net::NetError;
use crate::walk::WalkError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("state {j} is outside 0..={len}")]
    OutOfRange { j: usize, len: usize },
    #[error("the visit bound needs an even a >= 2, got {0}")]
    OddA(u32),
    #[error("a must be at least 2, got {0}")]
    SmallA(u32),
    #[error("oracle limits exceeded: a <= {max_a}, t <= {max_t}")]
    OracleTooLarge { max_a: u32, max_t: u64 },
    #[error("laziness must lie in [0, 1), got {0}")]
    BadLaziness(f64),
    #[error("empty trace")]
    EmptyTrace,
    #[error("trace starts at the absorbing end")]
    StartsAbsorbed,
    #[error("degree must be at least 2, got {0}")]
    BadDegree(f64),
    #[error("s must lie strictly between 0 and 1, got {0}")]
    BadS(f64),
    #[error("boundary {0} is empty")]
    EmptyBoundary(usize),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Walk(#[from] WalkError),
}
