use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("solver failed at T={t}: {source}")]
    Numerical {
        t: f64,
        #[source]
        source: gascap_core::Error,
    },
    #[error("{0}")]
    Core(#[from] gascap_core::Error),
    #[error("cannot read config {path}: {source}")]
    ReadConfig {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid config {path}: {source}")]
    ParseConfig {
        path: PathBuf,
        #[source]
        source: Box<toml::de::Error>,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// 0 is success; 1 a numerical or IO failure; 2 a usage error.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::ReadConfig { .. } | CliError::ParseConfig { .. } => 2,
            CliError::Core(gascap_core::Error::InvalidArgument(_)) => 2,
            CliError::Core(_) | CliError::Numerical { .. } | CliError::Write { .. } => 1,
        }
    }

    /// Splits a per-temperature failure out of a core error.
    pub fn from_solve(e: gascap_core::Error) -> Self {
        match e {
            gascap_core::Error::AtTemperature { t, source } => CliError::Numerical { t, source: *source },
            other => CliError::Core(other),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
