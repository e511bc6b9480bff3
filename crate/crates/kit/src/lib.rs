//! File formats, configuration and the command-line front end for
//! `thurston-core`.

pub mod cli;
pub mod config;
pub mod output;
pub mod report;

pub use cli::{run, Cli};
pub use config::Config;

#[derive(Debug, thiserror::Error)]
pub enum KitError {
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Compute(#[from] thurston_core::Error),
    #[error("io: {0}")]
    Io(String),
    #[error("invariants failed: {}", .0.join(", "))]
    Invariants(Vec<String>),
}

impl KitError {
    pub fn exit_code(&self) -> i32 {
        match self {
            KitError::Usage(_) | KitError::Config(_) => 2,
            _ => 1,
        }
    }
}
