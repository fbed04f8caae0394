use std::path::PathBuf;

use cutpath_core::analysis::AnalysisError;
use cutpath_core::generators::GenError;
use cutpath_core::walk::WalkError;
use cutpath_core::NetError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config: {0}")]
    Config(String),
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("thread pool: {0}")]
    Pool(String),
    #[error("{0}")]
    Run(String),
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io { path: path.into(), source }
    }

    /// 1 for bad input, 2 for failures while running.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Io { .. } | HarnessError::Csv(_) | HarnessError::Pool(_) | HarnessError::Run(_) => 2,
            HarnessError::Net(NetError::NotConverged { .. } | NetError::Io(_)) => 2,
            HarnessError::Analysis(AnalysisError::Net(NetError::NotConverged { .. })) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
