use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// An enumeration would exceed its configured budget.
    #[error("budget exceeded: {what} is {actual}, limit is {limit}")]
    Budget {
        what: &'static str,
        actual: u128,
        limit: u128,
    },
    /// Two computation routes that must agree did not.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
