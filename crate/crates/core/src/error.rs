use thiserror::Error;

/// Errors raised by the library.
///
/// The CLI maps these onto exit codes, so the split between domain,
/// resource and invariant failures is part of the public contract.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Arguments outside the domain of the operation (bad rank, even `r`
    /// for an odd-only formula, composite field order, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// An enumeration or explicit construction would exceed its size bound.
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    /// Two independent routes disagreed, or a computed object broke an
    /// invariant it is guaranteed to satisfy.
    #[error("invariant violation: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn resource<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Resource(msg.into()))
}
