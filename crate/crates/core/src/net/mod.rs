//! Weighted networks and electrical machinery.

mod io;
mod network;
mod solve;
mod transforms;

pub use io::{read_ugraph, write_ugraph, UGRAPH_HEADER};
pub use network::{Edge, Incidence, Network};
pub use solve::{effective_conductance, effective_resistance, solve_voltage, VoltageSolution};
pub use transforms::{
    contract, contract_sets, level_index, level_pair_conductance, level_sets,
    subdivide_between_levels, trace_network_exact, LevelSets, SubdividedNetwork, TraceNetwork,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NetError {
    #[error("network must have at least one vertex")]
    Empty,
    #[error("edge {index}: endpoint {vertex} out of range for {n} vertices")]
    EndpointOutOfRange { index: usize, vertex: usize, n: usize },
    #[error("edge {index}: conductance {c} is not positive and finite")]
    BadConductance { index: usize, c: f64 },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("source and sink coincide (vertex {0})")]
    SourceIsSink(usize),
    #[error("vertex {0} is not connected to vertex {1}")]
    Disconnected(usize, usize),
    #[error("terminal sets must be nonempty and disjoint")]
    BadTerminalSets,
    #[error("partition does not cover every vertex exactly once (vertex {0})")]
    BadPartition(usize),
    #[error("solver did not converge: relative residual {residual:e} after {iterations} iterations")]
    NotConverged { residual: f64, iterations: usize },
    #[error("level base d must be at least 2, got {0}")]
    BadLevelBase(usize),
    #[error("level {0} is empty")]
    EmptyLevel(u32),
    #[error("layer labels have length {got}, expected {expected}")]
    BadLabels { got: usize, expected: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for NetError {
    fn from(e: std::io::Error) -> Self {
        NetError::Io(e.to_string())
    }
}
