//! Command-line surface and parallel sweeps on top of `gascap-core`.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod sweep;

pub use config::{ConfigFile, Normalize, RunConfig, SpeciesChoice, TrapChoice};
pub use error::{CliError, Result};
