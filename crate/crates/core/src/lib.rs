//! Random-walk paths on graphs: cutpoints, cut-times and electrical networks.
//!
//! The crate is split into four layers:
//!
//! * [`net`]: weighted multigraphs, exact harmonic solves, effective
//!   conductance and the level-set / subdivision / trace-network transforms.
//! * [`generators`]: random regular expanders, the layered expander graph,
//!   horn subgraphs of `Z^d`, the `Z^2` disk and the induced line networks.
//! * [`walk`]: seeded random walks with path recording, pass and linking
//!   statistics, cut-times and cutpoints.
//! * [`analysis`]: closed-form quantities, exact small-chain oracles, the
//!   return-probability minima machinery and resistance profiles.

pub mod analysis;
pub mod generators;
pub mod net;
pub mod seed;
pub mod walk;

pub use net::{Network, NetError, VoltageSolution};
