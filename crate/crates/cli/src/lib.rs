//! Seeded batch experiments over random-matrix persistence statistics.

pub mod config;
pub mod experiments;
pub mod output;
pub mod result;

use thiserror::Error;

pub use config::{ConfigError, Experiment, ExperimentConfig, OutputFormat};
pub use experiments::run;
pub use result::{ExperimentResult, Table, Value};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("configuration error: {0}")]
    Config(#[from] ConfigError),
    #[error("numerical failure: {0}")]
    Numerical(#[from] spectpd::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl RunError {
    /// Process exit status: 2 for configuration problems, 3 for numerical
    /// failures, 1 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Numerical(_) => 3,
            RunError::Io(_) => 1,
        }
    }
}
