use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("fugacity at or above condensation bound")]
    CondensationBound,

    #[error("divergent photonlike partition function (lowest level {lowest} <= 0)")]
    DivergentPhotonlike { lowest: f64 },

    #[error("unreachable N = {requested}: supremum at the fugacity bound is {supremum}")]
    UnreachableN { requested: f64, supremum: f64 },

    #[error("fugacity solve did not converge after {iterations} iterations (relative residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("grid is not uniform")]
    NonUniformGrid,

    #[error("stencil index {index} out of range for {len} samples")]
    StencilOutOfRange { index: usize, len: usize },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("configuration table would have {entries} entries over {sublevels} sublevels")]
    TableTooLarge { sublevels: usize, entries: u128 },

    #[error("solver failed at T = {t}: {source}")]
    AtTemperature {
        t: f64,
        #[source]
        source: alloc::boxed::Box<Error>,
    },
}

impl Error {
    /// Strips any temperature context.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtTemperature { source, .. } => source.root(),
            e => e,
        }
    }
}
