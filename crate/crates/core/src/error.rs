use thiserror::Error;

/// Errors raised by the scheduling engine and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid user-supplied parameters (topology, config file, CLI overrides).
    #[error("configuration error: {0}")]
    Config(String),

    /// A caller broke an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// The exhaustive clique oracle was asked to solve a graph above its size cap.
    #[error("oracle refused: graph has {vertices} vertices, cap is {cap}")]
    OracleRefused { vertices: usize, cap: usize },

    /// A computed result broke an internal invariant.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}

pub(crate) fn config(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

pub(crate) fn invariant(msg: impl Into<String>) -> Error {
    Error::Invariant(msg.into())
}
