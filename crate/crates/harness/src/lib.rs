//! Experiment harness: configs, seeded parallel replicas, CSV output and the
//! `cutpath` command line.

pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod output;
pub mod runner;

pub use config::{ExperimentConfig, ExperimentId};
pub use error::{HarnessError, Result};
pub use experiments::{run_experiment, Check, ExperimentReport};
