//! Graph families: random regular expanders, the layered expander graph,
//! horns in `Z^d`, the `Z^2` disk and one-dimensional line networks.

mod disk;
mod expander;
mod horn;
mod layered;
mod line;

pub use disk::{build_grid_disk, GridDisk};
pub use expander::{gen_regular_expander, lambda_max, second_eigenvalue, RegularExpander, MAX_ATTEMPTS};
pub use horn::{build_horn, horn_profile, Horn, HornSpec, DEFAULT_F_FLOOR};
pub use layered::{build_layered_graph, layer_schedule, LayeredGraph, LayeredGraphSpec, Schedule};
pub use line::{line_network_of, LineNetwork};

use thiserror::Error;

use crate::net::NetError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("n * d must be even (n = {n}, d = {d})")]
    Parity { n: usize, d: usize },
    #[error("need n > d (n = {n}, d = {d})")]
    TooFewVertices { n: usize, d: usize },
    #[error("degree must be at least {min}, got {d}")]
    DegreeTooSmall { d: usize, min: usize },
    #[error("no acceptable sample after {0} attempts")]
    RetriesExhausted(u32),
    #[error("alpha must exceed 1, got {0}")]
    BadAlpha(f64),
    #[error("j_max = {j_max} is below j0 = {j0}")]
    JMaxBelowJ0 { j_max: u32, j0: u32 },
    #[error("instance too large: {0} vertices")]
    TooLarge(u64),
    #[error("dimension must be at least 3, got {0}")]
    BadDimension(usize),
    #[error("truncation length must be at least {min}, got {got}")]
    TooShort { got: u64, min: u64 },
    #[error("line network truncation {l} exceeds j_max = {j_max}")]
    TruncationTooLong { l: u32, j_max: u32 },
    #[error("line network weights must be positive and finite")]
    BadWeights,
    #[error("layer {0} is empty")]
    EmptyLayer(u32),
    #[error(transparent)]
    Net(#[from] NetError),
}
