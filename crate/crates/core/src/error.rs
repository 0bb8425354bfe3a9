use thiserror::Error;

/// Errors raised by the library.
///
/// The variants mirror how callers are expected to react: `Input` and
/// `Parse` mean the request itself was malformed, `Domain` means the graph
/// is outside the region where the quantity is defined (e.g. disconnected),
/// and `Capacity` means a desk-scale cap was exceeded.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("capacity exceeded: {what} = {value} (cap {cap})")]
    Capacity {
        what: &'static str,
        value: usize,
        cap: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn disconnected() -> Self {
        Error::Domain("graph is disconnected; eccentricity is undefined".into())
    }
}
