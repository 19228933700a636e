use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: bad lengths, out-of-range indices, non-prime moduli.
    #[error("validation error: {0}")]
    Validation(String),
    /// The closure of the given covers is not antisymmetric.
    #[error("not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),
    /// The generators span only the zero vector.
    #[error("zero code: the generators span {{0}}")]
    ZeroCode,
    /// An enumeration would exceed its configured bound.
    #[error("resource bound exceeded: {what} needs {needed}, limit is {limit}")]
    Resource {
        what: String,
        needed: u128,
        limit: u128,
    },
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn resource(what: impl Into<String>, needed: u128, limit: u128) -> Self {
        Error::Resource {
            what: what.into(),
            needed,
            limit,
        }
    }

    /// True for resource/budget errors, false for input errors.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
